use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

/// Report lines in the stable grammar:
///
/// ```text
/// CONFIG {json}
/// CLAIM <id> PASS|FAIL <details>
/// RESULT <key> <details>
/// ```
#[derive(Debug, Default)]
pub struct Report {
    failed: usize,
    claims: usize,
}

impl Report {
    pub fn new(config: Value) -> Self {
        println!("CONFIG {config}");
        Report::default()
    }

    pub fn claim(&mut self, id: &str, pass: bool, details: impl Display) {
        self.claims += 1;
        if !pass {
            self.failed += 1;
        }
        println!("CLAIM {id} {} {details}", if pass { "PASS" } else { "FAIL" });
    }

    pub fn result(&mut self, key: &str, details: impl Display) {
        println!("RESULT {key} {details}");
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) {
        println!("SUMMARY claims={} failed={}", self.claims, self.failed);
    }
}

/// Writes through a temporary file in the destination directory, then
/// renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
