//! OEIS b-files: embedded reference data, an optional cached HTTP client,
//! and prefix comparison with offset alignment.

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::recurrence::SequenceTable;

/// Environment variable that overrides the b-file cache directory.
pub const CACHE_ENV: &str = "TILEWALK_CACHE_DIR";

/// Ids with an embedded fixture.
pub const FIXTURE_IDS: [&str; 4] = ["A000045", "A001629", "A030186", "A054454"];

/// Minimum number of shared indices for [`compare_prefix`].
pub const MIN_OVERLAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("no embedded fixture for {0}")]
    UnknownFixture(String),
    #[error("{id}: line {line}: {message}")]
    Parse { id: String, line: usize, message: String },
    #[error("only {overlap} shared indices, need {required}")]
    InsufficientOverlap { overlap: usize, required: usize },
    #[error("could not obtain {id}: {reason}")]
    FetchFailed { id: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub sequence_id: String,
    /// `(index, value)` with strictly increasing indices.
    pub entries: Vec<(i64, BigInt)>,
    /// Comment lines, without the leading `#`.
    pub comments: Vec<String>,
}

impl BFile {
    pub fn parse(id: &str, text: &str) -> Result<Self, OeisError> {
        let err = |line: usize, message: String| OeisError::Parse { id: id.to_string(), line, message };
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        let mut comments = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.trim_start().to_string());
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(i + 1, format!("expected `index value`, got {line:?}")));
            };
            let idx: i64 = idx.parse().map_err(|_| err(i + 1, format!("bad index {idx:?}")))?;
            let val: BigInt = val.parse().map_err(|_| err(i + 1, format!("bad value {val:?}")))?;
            if entries.last().is_some_and(|(prev, _)| *prev >= idx) {
                return Err(err(i + 1, format!("index {idx} is not increasing")));
            }
            entries.push((idx, val));
        }
        if entries.is_empty() {
            return Err(err(0, "no entries".to_string()));
        }
        Ok(BFile { sequence_id: id.to_string(), entries, comments })
    }

    /// Index of the first entry.
    pub fn offset(&self) -> i64 {
        self.entries.first().map_or(0, |e| e.0)
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        let pos = index.checked_sub(self.offset())?;
        let (i, v) = self.entries.get(usize::try_from(pos).ok()?)?;
        if *i == index {
            Some(v)
        } else {
            self.entries.binary_search_by_key(&index, |e| e.0).ok().map(|k| &self.entries[k].1)
        }
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|e| &e.1)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        for (i, v) in &self.entries {
            let _ = writeln!(out, "{i} {v}");
        }
        out
    }
}

fn fixture_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "A000045" => include_str!("../fixtures/b000045.txt"),
        "A001629" => include_str!("../fixtures/b001629.txt"),
        "A030186" => include_str!("../fixtures/b030186.txt"),
        "A054454" => include_str!("../fixtures/b054454.txt"),
        _ => return None,
    })
}

pub fn load_fixture(id: &str) -> Result<BFile, OeisError> {
    let text = fixture_text(id).ok_or_else(|| OeisError::UnknownFixture(id.to_string()))?;
    BFile::parse(id, text)
}

/// Minimal HTTP GET, so tests can substitute a fake.
pub trait Transport {
    fn get(&self, url: &str) -> Result<String, String>;
}

#[cfg(feature = "net")]
pub struct UreqTransport;

#[cfg(feature = "net")]
impl Transport for UreqTransport {
    fn get(&self, url: &str) -> Result<String, String> {
        let mut resp = ureq::get(url).call().map_err(|e| e.to_string())?;
        resp.body_mut().read_to_string().map_err(|e| e.to_string())
    }
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", id.trim_start_matches(['A', 'a']))
}

/// `$TILEWALK_CACHE_DIR`, else `$XDG_CACHE_HOME/tilewalk`, else
/// `~/.cache/tilewalk`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("tilewalk");
    }
    let home = std::env::var_os("HOME").map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    home.join(".cache").join("tilewalk")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Cache,
    Network,
    Fixture,
}

fn cache_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("b{}.txt", id.trim_start_matches(['A', 'a'])))
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// Cache first, then the network (if a transport is given), then the
/// embedded fixture. A successful download is written to the cache.
pub fn fetch_bfile_with(
    id: &str,
    cache_dir: &Path,
    transport: Option<&dyn Transport>,
) -> Result<(BFile, Source), OeisError> {
    let path = cache_path(cache_dir, id);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(b) = BFile::parse(id, &text) {
            return Ok((b, Source::Cache));
        }
    }
    let mut reason = "network disabled".to_string();
    if let Some(t) = transport {
        match t.get(&bfile_url(id)).map_err(|e| e.to_string()).and_then(|text| {
            let b = BFile::parse(id, &text).map_err(|e| e.to_string())?;
            Ok((b, text))
        }) {
            Ok((b, text)) => {
                // A failed cache write should not lose the download.
                let _ = write_atomic(&path, &text);
                return Ok((b, Source::Network));
            }
            Err(e) => reason = e,
        }
    }
    match load_fixture(id) {
        Ok(b) => Ok((b, Source::Fixture)),
        Err(_) => Err(OeisError::FetchFailed { id: id.to_string(), reason }),
    }
}

/// [`fetch_bfile_with`] over HTTPS.
#[cfg(feature = "net")]
pub fn fetch_bfile(id: &str, cache_dir: &Path) -> Result<BFile, OeisError> {
    fetch_bfile_with(id, cache_dir, Some(&UreqTransport)).map(|r| r.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub sequence_id: String,
    /// Computed index `n` is compared with reference index `n + shift`.
    pub shift: i64,
    pub overlap: usize,
    /// Number of leading shared indices that agree.
    pub matched: usize,
    /// Computed index of the first disagreement.
    pub first_mismatch: Option<usize>,
}

impl PrefixReport {
    pub fn full_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn compare_prefix(computed: &SequenceTable, reference: &BFile, shift: i64) -> Result<PrefixReport, OeisError> {
    let shared: Vec<(usize, &BigInt)> = (0..computed.len())
        .filter_map(|n| reference.get(n as i64 + shift).map(|v| (n, v)))
        .collect();
    if shared.len() < MIN_OVERLAP {
        return Err(OeisError::InsufficientOverlap { overlap: shared.len(), required: MIN_OVERLAP });
    }
    let first_mismatch = shared.iter().find(|(n, v)| &computed.values()[*n] != *v).map(|p| p.0);
    let matched = shared.iter().take_while(|(n, v)| &computed.values()[*n] == *v).count();
    Ok(PrefixReport {
        sequence_id: reference.sequence_id.clone(),
        shift,
        overlap: shared.len(),
        matched,
        first_mismatch,
    })
}

/// The shift in `window` with a full match over the largest overlap.
pub fn align_offset(computed: &SequenceTable, reference: &BFile, window: RangeInclusive<i64>) -> Option<PrefixReport> {
    window
        .filter_map(|s| compare_prefix(computed, reference, s).ok())
        .filter(PrefixReport::full_match)
        .max_by_key(|r| (r.overlap, std::cmp::Reverse(r.shift.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fixtures_load() {
        let r = load_fixture("A030186").unwrap();
        assert_eq!(r.values().take(5).cloned().collect::<Vec<_>>(), ints(&[1, 2, 7, 22, 71]));
        let w = load_fixture("A054454").unwrap();
        assert_eq!(w.values().take(6).cloned().collect::<Vec<_>>(), ints(&[1, 2, 6, 12, 26, 50]));
        assert_eq!(load_fixture("A999999"), Err(OeisError::UnknownFixture("A999999".into())));
        for id in FIXTURE_IDS {
            let b = load_fixture(id).unwrap();
            assert!(b.entries.len() >= 40, "{id}");
            assert_eq!(BFile::parse(id, &b.serialize()).unwrap(), b);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = BFile::parse("A1", "# c\n0 1\n1 x\n").unwrap_err();
        assert_eq!(e, OeisError::Parse { id: "A1".into(), line: 3, message: "bad value \"x\"".into() });
        assert!(matches!(BFile::parse("A1", "0 1\n0 2\n"), Err(OeisError::Parse { line: 2, .. })));
        assert!(matches!(BFile::parse("A1", "0 1 2\n"), Err(OeisError::Parse { line: 1, .. })));
        assert!(BFile::parse("A1", "# only\n").is_err());
    }

    #[test]
    fn prefix_alignment() {
        let v = SequenceTable::from_ints("v", &[1, 2, 5, 10, 20, 38, 71, 130, 235, 420, 744, 1308]);
        let a = load_fixture("A001629").unwrap();
        let r = align_offset(&v, &a, -5..=5).unwrap();
        assert_eq!(r.shift, 2);
        assert!(compare_prefix(&v, &load_fixture("A030186").unwrap(), 0).unwrap().first_mismatch.unwrap() <= 2);
        let short = SequenceTable::from_ints("v", &[1, 2, 5]);
        assert!(matches!(compare_prefix(&short, &a, 2), Err(OeisError::InsufficientOverlap { overlap: 3, .. })));
    }

    struct Fake {
        body: Result<String, String>,
        calls: Cell<usize>,
    }

    impl Transport for Fake {
        fn get(&self, _url: &str) -> Result<String, String> {
            self.calls.set(self.calls.get() + 1);
            self.body.clone()
        }
    }

    #[test]
    fn fetch_order() {
        let dir = tempfile::tempdir().unwrap();
        let fake = Fake { body: Ok("0 1\n1 1\n2 2\n".into()), calls: Cell::new(0) };
        let (b, src) = fetch_bfile_with("A000045", dir.path(), Some(&fake)).unwrap();
        assert_eq!((src, b.entries.len(), fake.calls.get()), (Source::Network, 3, 1));
        assert!(dir.path().join("b000045.txt").exists());

        let (_, src) = fetch_bfile_with("A000045", dir.path(), Some(&fake)).unwrap();
        assert_eq!((src, fake.calls.get()), (Source::Cache, 1));

        let broken = Fake { body: Err("offline".into()), calls: Cell::new(0) };
        let (_, src) = fetch_bfile_with("A054454", dir.path(), Some(&broken)).unwrap();
        assert_eq!(src, Source::Fixture);
        let garbage = Fake { body: Ok("nonsense".into()), calls: Cell::new(0) };
        assert!(matches!(
            fetch_bfile_with("A123456", dir.path(), Some(&garbage)),
            Err(OeisError::FetchFailed { .. })
        ));
        assert!(matches!(fetch_bfile_with("A123456", dir.path(), None), Err(OeisError::FetchFailed { .. })));
    }

    #[test]
    fn urls() {
        assert_eq!(bfile_url("A001629"), "https://oeis.org/A001629/b001629.txt");
    }
}
