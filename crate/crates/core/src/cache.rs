//! File-backed cache of class numbers and certificates.
//!
//! Class numbers live in an append-only text file, one record per line:
//! `D<TAB>h<TAB>method<TAB>timestamp`. The file is compacted when opened.
//! The cache only saves time: values are never taken from it where they
//! would change an output.

use crate::certify::TriquadraticCertificate;
use crate::quad::{ClassNumberMethod, ClassNumberStore};
use chrono::{SecondsFormat, Utc};
use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Environment variable naming the cache directory; `off` disables caching.
pub const CACHE_ENV: &str = "PRATIONAL_CACHE";
const CLASS_NUMBER_FILE: &str = "classnumbers.tsv";
const CERT_DIR: &str = "certs";

/// `$PRATIONAL_CACHE`, else `$HOME/.cache/prational`; `None` when disabled
/// or no home directory is known.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if v == "off" => None,
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("prational")),
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    h: u64,
    stamp: String,
}

#[derive(Debug, Default)]
struct State {
    entries: BTreeMap<(i64, ClassNumberMethod), Entry>,
    conflicts: BTreeSet<i64>,
    file: Option<File>,
}

#[derive(Debug)]
pub struct ClassNumberCache {
    path: Option<PathBuf>,
    state: Mutex<State>,
}

fn parse_line(line: &str) -> Option<(i64, u64, ClassNumberMethod, String)> {
    let mut it = line.split('\t');
    let d = it.next()?.parse().ok()?;
    let h = it.next()?.parse().ok()?;
    let method = it.next()?.parse().ok()?;
    let stamp = it.next()?.to_string();
    it.next().is_none().then_some((d, h, method, stamp))
}

fn agree(
    entries: &BTreeMap<(i64, ClassNumberMethod), Entry>,
    d: i64,
    h: u64,
    method: ClassNumberMethod,
) -> bool {
    let other = match method {
        ClassNumberMethod::Forms => ClassNumberMethod::Dirichlet,
        ClassNumberMethod::Dirichlet => ClassNumberMethod::Forms,
        ClassNumberMethod::BoundOnly => return true,
    };
    entries.get(&(d, other)).is_none_or(|e| e.h == h)
}

impl ClassNumberCache {
    pub fn in_memory() -> Self {
        Self {
            path: None,
            state: Mutex::new(State::default()),
        }
    }

    /// Opens (creating if needed) `dir/classnumbers.tsv`, drops malformed and
    /// contradictory lines, rewrites the file compacted and keeps it open
    /// for appending.
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(CLASS_NUMBER_FILE);
        let mut state = State::default();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let Some((d, h, method, stamp)) = parse_line(&line?) else {
                    continue;
                };
                if state.conflicts.contains(&d) {
                    continue;
                }
                if !agree(&state.entries, d, h, method)
                    || state.entries.get(&(d, method)).is_some_and(|e| e.h != h)
                {
                    state.conflicts.insert(d);
                    state.entries.retain(|&(k, _), _| k != d);
                    continue;
                }
                state.entries.insert((d, method), Entry { h, stamp });
            }
        }
        let tmp = dir.join(format!("{CLASS_NUMBER_FILE}.tmp"));
        {
            let mut out = io::BufWriter::new(File::create(&tmp)?);
            for ((d, method), e) in &state.entries {
                writeln!(out, "{d}\t{}\t{method}\t{}", e.h, e.stamp)?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, &path)?;
        state.file = Some(OpenOptions::new().append(true).open(&path)?);
        Ok(Self {
            path: Some(path),
            state: Mutex::new(state),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.state.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Discriminants whose `forms` and `dirichlet` records disagreed.
    pub fn conflicts(&self) -> Vec<i64> {
        self.state
            .lock()
            .unwrap()
            .conflicts
            .iter()
            .copied()
            .collect()
    }
}

impl ClassNumberStore for ClassNumberCache {
    fn lookup(&self, discriminant: i64, method: ClassNumberMethod) -> Option<u64> {
        let st = self.state.lock().unwrap();
        if st.conflicts.contains(&discriminant) {
            return None;
        }
        st.entries.get(&(discriminant, method)).map(|e| e.h)
    }

    fn record(&self, discriminant: i64, h: u64, method: ClassNumberMethod) {
        let mut st = self.state.lock().unwrap();
        if st.conflicts.contains(&discriminant) {
            return;
        }
        if let Some(e) = st.entries.get(&(discriminant, method)) {
            if e.h == h {
                return;
            }
        }
        if !agree(&st.entries, discriminant, h, method)
            || st.entries.contains_key(&(discriminant, method))
        {
            st.conflicts.insert(discriminant);
            st.entries.retain(|&(k, _), _| k != discriminant);
            return;
        }
        let stamp = Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true);
        if let Some(f) = st.file.as_mut() {
            // a failed append only loses a cache entry
            let _ = writeln!(f, "{discriminant}\t{h}\t{method}\t{stamp}");
        }
        st.entries
            .insert((discriminant, method), Entry { h, stamp });
    }
}

/// Certificates stored as `certs/cert-<p>.txt` in `cert-v1` form.
#[derive(Debug, Clone)]
pub struct CertificateCache {
    dir: PathBuf,
}

impl CertificateCache {
    pub fn new(root: &Path) -> Self {
        Self {
            dir: root.join(CERT_DIR),
        }
    }

    fn file(&self, p: u64) -> PathBuf {
        self.dir.join(format!("cert-{p}.txt"))
    }

    /// Unreadable or malformed entries count as misses.
    pub fn load(&self, p: u64) -> Option<TriquadraticCertificate> {
        let text = fs::read_to_string(self.file(p)).ok()?;
        TriquadraticCertificate::from_text(&text)
            .ok()
            .filter(|c| c.p == p)
    }

    pub fn store(&self, cert: &TriquadraticCertificate) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("cert-{}.tmp", cert.p));
        fs::write(&tmp, cert.to_text())?;
        fs::rename(tmp, self.file(cert.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::ClassNumberMethod::{Dirichlet, Forms};

    #[test]
    fn persists_and_compacts() {
        let dir = tempfile::tempdir().unwrap();
        {
            let c = ClassNumberCache::open(dir.path()).unwrap();
            c.record(-84, 4, Forms);
            c.record(-84, 4, Forms);
            c.record(-84, 4, Dirichlet);
            c.record(140, 2, Dirichlet);
        }
        let file = dir.path().join(CLASS_NUMBER_FILE);
        assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 3);
        fs::OpenOptions::new()
            .append(true)
            .open(&file)
            .unwrap()
            .write_all(b"garbage line\n140\t2\tdirichlet\t2026-01-01T00:00:00Z\n")
            .unwrap();
        let c = ClassNumberCache::open(dir.path()).unwrap();
        assert_eq!(c.lookup(-84, Forms), Some(4));
        assert_eq!(c.lookup(140, Dirichlet), Some(2));
        assert_eq!(c.lookup(140, Forms), None);
        assert_eq!(fs::read_to_string(&file).unwrap().lines().count(), 3);
    }

    #[test]
    fn disagreement_poisons_key() {
        let c = ClassNumberCache::in_memory();
        c.record(-23, 3, Forms);
        c.record(-23, 5, Dirichlet);
        assert_eq!(c.lookup(-23, Forms), None);
        assert_eq!(c.conflicts(), vec![-23]);
    }

    #[test]
    fn certificate_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cc = CertificateCache::new(dir.path());
        assert!(cc.load(5).is_none());
        let cert = crate::certify::certify_triquadratic(5).unwrap();
        cc.store(&cert).unwrap();
        assert_eq!(cc.load(5), Some(cert));
        assert!(cc.load(7).is_none());
    }
}
