//! Prime fields `F_p` with `p < 2^62`, elements stored as reduced `u64`.

use std::fmt;

use super::PolyError;

/// `2^62 - 57`, the largest prime below `2^62`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// The Mersenne prime `2^61 - 1`, used as the customary second prime.
pub const SECONDARY_PRIME: u64 = 2_305_843_009_213_693_951;

/// A prime field `Z/pZ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    /// Exclusive upper bound on the modulus; keeps `2p` and lazy sums inside a `u64`.
    pub const MODULUS_BOUND: u64 = 1 << 62;

    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p >= Self::MODULUS_BOUND {
            return Err(PolyError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in {:?}", self);
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i128) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`, used when printing.
    pub fn signed(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }

    /// Precomputed multiplier for repeated products by the constant `c`.
    #[inline]
    pub fn shoup(&self, c: u64) -> ShoupMul {
        debug_assert!(c < self.p);
        ShoupMul {
            c,
            quot: (((c as u128) << 64) / self.p as u128) as u64,
            p: self.p,
        }
    }

    /// `dst[k] -= c * src[k]` over equal-length slices of reduced elements.
    pub fn sub_scaled(&self, dst: &mut [u64], src: &[u64], c: u64) {
        if c == 0 {
            return;
        }
        let m = self.shoup(c);
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.sub(*d, m.mul(s));
        }
    }

    /// `v[k] *= c` in place.
    pub fn scale_slice(&self, v: &mut [u64], c: u64) {
        let m = self.shoup(c);
        for x in v.iter_mut() {
            *x = m.mul(*x);
        }
    }
}

/// Shoup's precomputed-quotient multiplication by a fixed constant.
#[derive(Clone, Copy, Debug)]
pub struct ShoupMul {
    c: u64,
    quot: u64,
    p: u64,
}

impl ShoupMul {
    #[inline]
    pub fn mul(&self, x: u64) -> u64 {
        let q = ((self.quot as u128 * x as u128) >> 64) as u64;
        let r = self.c.wrapping_mul(x).wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
