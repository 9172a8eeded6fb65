//! Transcribed appendix polynomials, one fixture file per entity.
//!
//! Fixtures are written in the parser's input language, so they may use the
//! macros `phi1..phi3`, `V2`, `V3` (through `V1`), `Theta` and `P`. Each file
//! is pinned by a SHA-256 digest in `SHA256SUMS`; a digest mismatch makes
//! that entity's certificate invalid instead of aborting the run.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::symbols::Symbols;
use crate::algebra::RationalExpr;

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../fixtures/appendix/", $name, ".txt")))),*]
    };
}

/// Every fixture name with its embedded text.
pub const EMBEDDED: &[(&str, &str)] = embedded![
    "F11", "F12", "F13", "F14", "F15", "F21", "F22", "F23", "F24", "F25", "F31", "F32", "F33", "F34", "F35", "b1",
    "b2", "b3", "P", "P1", "P2", "P3", "P4", "P1_u3", "R1", "R2", "Theta", "a", "caseC_A", "caseC_B", "caseC_C",
    "caseC_At", "caseC_Bt", "caseC_Ct", "caseD_A", "caseD_B", "caseD_C",
];

const EMBEDDED_SUMS: &str = include_str!("../../fixtures/appendix/SHA256SUMS");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("missing fixture files in {dir}: {}", .missing.join(", "))]
    Missing { dir: String, missing: Vec<String> },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub text: String,
    pub digest: String,
    pub expected_digest: Option<String>,
    pub parsed: Result<RationalExpr, String>,
}

impl Fixture {
    /// Why this fixture cannot be trusted, if it cannot.
    pub fn defect(&self) -> Option<String> {
        match (&self.expected_digest, &self.parsed) {
            (_, Err(e)) => Some(format!("fixture {} does not parse: {e}", self.name)),
            (None, _) => Some(format!("fixture {} has no recorded checksum", self.name)),
            (Some(d), _) if *d != self.digest => {
                Some(format!("fixture {} checksum mismatch: expected {d}, found {}", self.name, self.digest))
            }
            _ => None,
        }
    }
}

/// The loaded appendix.
#[derive(Clone, Debug)]
pub struct AppendixBank {
    entries: BTreeMap<String, Fixture>,
}

/// Digest of the fixture text with all whitespace removed, so line wrapping
/// does not matter.
pub fn fixture_digest(text: &str) -> String {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    hex::encode(Sha256::digest(compact.as_bytes()))
}

fn parse_sums(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            let d = it.next()?;
            let n = it.next()?;
            Some((n.trim_end_matches(".txt").to_string(), d.to_string()))
        })
        .collect()
}

impl AppendixBank {
    pub fn embedded(sym: &Symbols) -> Self {
        let texts = EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string()));
        Self::build(sym, texts, &parse_sums(EMBEDDED_SUMS))
    }

    /// Loads fixtures from `dir`, which must contain every `<name>.txt`. The
    /// checksums come from `dir/SHA256SUMS` when present, otherwise from the
    /// embedded manifest.
    pub fn from_dir(sym: &Symbols, dir: &Path) -> Result<Self, FixtureError> {
        let missing: Vec<String> =
            EMBEDDED.iter().map(|(n, _)| format!("{n}.txt")).filter(|f| !dir.join(f).is_file()).collect();
        if !missing.is_empty() {
            return Err(FixtureError::Missing { dir: dir.display().to_string(), missing });
        }
        let mut texts = Vec::new();
        for (n, _) in EMBEDDED {
            let path = dir.join(format!("{n}.txt"));
            let t = std::fs::read_to_string(&path)
                .map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
            texts.push((n.to_string(), t));
        }
        let sums_path = dir.join("SHA256SUMS");
        let sums = if sums_path.is_file() {
            let t = std::fs::read_to_string(&sums_path)
                .map_err(|source| FixtureError::Io { path: sums_path.display().to_string(), source })?;
            parse_sums(&t)
        } else {
            parse_sums(EMBEDDED_SUMS)
        };
        Ok(Self::build(sym, texts, &sums))
    }

    fn build(
        sym: &Symbols,
        texts: impl IntoIterator<Item = (String, String)>,
        sums: &BTreeMap<String, String>,
    ) -> Self {
        let parser = sym.parser();
        let entries = texts
            .into_iter()
            .map(|(name, text)| {
                let parsed = parser.parse(&text).map_err(|e| e.to_string());
                let fx = Fixture {
                    digest: fixture_digest(&text),
                    expected_digest: sums.get(&name).cloned(),
                    name: name.clone(),
                    text,
                    parsed,
                };
                (name, fx)
            })
            .collect();
        Self { entries }
    }

    pub fn get(&self, name: &str) -> &Fixture {
        self.entries.get(name).unwrap_or_else(|| panic!("unknown fixture {name}"))
    }

    /// Parsed value, or zero when the fixture is unusable (its own
    /// certificate reports why).
    pub fn value(&self, name: &str) -> RationalExpr {
        self.get(name).parsed.clone().unwrap_or_else(|_| RationalExpr::zero())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    /// Manifest text for the current fixtures.
    pub fn manifest(&self) -> String {
        self.entries.values().map(|f| format!("{}  {}.txt\n", f.digest, f.name)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse_and_match_manifest() {
        let sym = Symbols::new();
        let bank = AppendixBank::embedded(&sym);
        for n in bank.names() {
            assert_eq!(bank.get(n).defect(), None);
        }
    }

    #[test]
    fn spot_check_leading_terms() {
        let bank = AppendixBank::embedded(&Symbols::new());
        assert!(bank.get("R2").text.trim_start().starts_with("106*v1^8 - 1127*v1^10"));
        assert!(bank.get("R1").text.contains("(57*v1^6 - 474*v1^8 + 1620*v1^10"));
    }

    #[test]
    fn whitespace_does_not_change_digest() {
        assert_eq!(fixture_digest("a + b\n - c"), fixture_digest("a+b-c"));
    }

    #[test]
    fn missing_files_are_named() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("F11.txt"), "1").unwrap();
        let err = AppendixBank::from_dir(&Symbols::new(), dir.path()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("F12.txt") && !msg.contains("F11.txt"), "{msg}");
    }

    /// Regenerates the checksum manifest after an intentional fixture edit.
    #[test]
    #[ignore]
    fn write_manifest() {
        let texts = EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string()));
        let bank = AppendixBank::build(&Symbols::new(), texts, &BTreeMap::new());
        std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/appendix/SHA256SUMS"), bank.manifest()).unwrap();
    }
}
