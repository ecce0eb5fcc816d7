//! Append-only JSON-lines cache of graded dimensions, keyed by
//! `(form hash, prime, degree)`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::polyring::HomogeneousForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub form: String,
    pub prime: u64,
    pub degree: u32,
    pub dim: usize,
    pub rank: usize,
}

/// SHA-256 of the printed form together with its dimension.
pub fn form_hash(form: &HomogeneousForm) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("n={};d={};{}", form.n(), form.degree(), form).as_bytes());
    format!("{:x}", hasher.finalize())
}

#[derive(Clone, Debug)]
pub struct RankCache {
    path: PathBuf,
}

impl RankCache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        RankCache {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Entries for `hash` and `prime`, indexed by degree. Unreadable lines
    /// are skipped.
    pub fn lookup(&self, hash: &str, prime: u64, top: u32) -> std::io::Result<Vec<Option<CacheEntry>>> {
        let mut found = vec![None; top as usize + 1];
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(found),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        for line in BufReader::new(&file).lines() {
            let Ok(entry) = serde_json::from_str::<CacheEntry>(&line?) else {
                continue;
            };
            if entry.form == hash && entry.prime == prime && entry.degree <= top {
                let slot = &mut found[entry.degree as usize];
                if slot.is_none() {
                    *slot = Some(entry);
                }
            }
        }
        file.unlock()?;
        Ok(found)
    }

    /// Appends entries under an exclusive advisory lock.
    pub fn append(&self, entries: &[CacheEntry]) -> std::io::Result<()> {
        if entries.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        let mut buf = String::new();
        for e in entries {
            buf.push_str(&serde_json::to_string(e).expect("cache entries serialize"));
            buf.push('\n');
        }
        let written = file.write_all(buf.as_bytes()).and_then(|_| file.flush());
        file.unlock()?;
        written
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    #[test]
    fn round_trip_and_garbage_lines() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RankCache::new(dir.path().join("ranks.jsonl"));
        assert!(cache.lookup("h", 7, 3).unwrap().iter().all(Option::is_none));
        let entry = |degree, dim| CacheEntry {
            form: "h".into(),
            prime: 7,
            degree,
            dim,
            rank: 0,
        };
        cache.append(&[entry(0, 1), entry(2, 5)]).unwrap();
        std::fs::OpenOptions::new()
            .append(true)
            .open(cache.path())
            .unwrap()
            .write_all(b"not json\n")
            .unwrap();
        cache.append(&[entry(1, 3)]).unwrap();
        let got = cache.lookup("h", 7, 3).unwrap();
        assert_eq!(got[0].as_ref().unwrap().dim, 1);
        assert_eq!(got[1].as_ref().unwrap().dim, 3);
        assert_eq!(got[2].as_ref().unwrap().dim, 5);
        assert!(got[3].is_none());
        assert!(cache.lookup("h", 11, 3).unwrap().iter().all(Option::is_none));
    }

    #[test]
    fn hash_depends_on_the_form() {
        let f = PrimeField::new(101).unwrap();
        let a = HomogeneousForm::fermat(3, 4, f);
        let b = HomogeneousForm::fermat(2, 4, f);
        assert_ne!(form_hash(&a), form_hash(&b));
        assert_eq!(form_hash(&a), form_hash(&a.clone()));
        assert_eq!(form_hash(&a).len(), 64);
    }

    #[test]
    fn concurrent_appends_keep_lines_whole() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ranks.jsonl");
        std::thread::scope(|s| {
            for t in 0..4u32 {
                let cache = RankCache::new(&path);
                s.spawn(move || {
                    for k in 0..25 {
                        let e = CacheEntry {
                            form: format!("f{t}"),
                            prime: 13,
                            degree: k,
                            dim: k as usize,
                            rank: 0,
                        };
                        cache.append(&[e]).unwrap();
                    }
                });
            }
        });
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 100);
        assert!(text.lines().all(|l| serde_json::from_str::<CacheEntry>(l).is_ok()));
    }
}
