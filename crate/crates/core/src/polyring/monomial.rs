use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector `(a_0, …, a_n)` standing for `x_0^a_0 ⋯ x_n^a_n`.
///
/// Ordered graded-lexicographically with `x_0 > x_1 > … > x_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_i` among `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, or `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `C(a, b)`, saturating at `usize::MAX`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All degree-`p` monomials in `x_0..x_n`, in descending graded-lex order.
pub fn enumerate_monomials(n: usize, p: u32) -> Vec<Monomial> {
    let nvars = n + 1;
    let mut out = Vec::with_capacity(binomial(n + p as usize, n));
    let mut current = vec![0u16; nvars];
    fill(&mut current, 0, p, &mut out);
    out
}

fn fill(current: &mut [u16], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining as u16;
        out.push(Monomial(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u16;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// The monomial basis of `S_p` together with its inverse index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: u32) -> Self {
        let monomials = enumerate_monomials(n, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, idx: usize) -> &Monomial {
        &self.monomials[idx]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_enumerations() {
        let m = enumerate_monomials(1, 2);
        let shown: Vec<String> = m.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2"]);
        assert_eq!(enumerate_monomials(3, 4).len(), 35);
        let single = enumerate_monomials(0, 5);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].to_string(), "x0^5");
        let constant = enumerate_monomials(4, 0);
        assert_eq!(constant, vec![Monomial::one(5)]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(24, 4), 10626);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn enumeration_sizes_and_strict_order() {
        for n in 0..=6usize {
            for p in 0..=30u32 {
                let ms = enumerate_monomials(n, p);
                assert_eq!(ms.len(), binomial(n + p as usize, n), "n={n} p={p}");
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
                assert!(ms.iter().all(|m| m.degree() == p));
            }
        }
    }

    proptest! {
        #[test]
        fn grlex_is_multiplicative(a in prop::collection::vec(0u16..6, 4),
                                   b in prop::collection::vec(0u16..6, 4),
                                   c in prop::collection::vec(0u16..6, 4)) {
            let (a, b, c) = (Monomial::new(a), Monomial::new(b), Monomial::new(c));
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        }
    }
}
