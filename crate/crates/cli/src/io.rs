use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use arconf_core::parse_f64;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const PROVENANCE_PREFIX: &str = "# provenance: ";

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub params: Value,
}

impl Provenance {
    pub fn new(command: &'static str, params: Value) -> Self {
        Self {
            tool: "arconf",
            version: env!("CARGO_PKG_VERSION"),
            command,
            params,
        }
    }

    /// Single comment line prefixed to CSV outputs.
    pub fn csv_line(&self) -> String {
        format!(
            "{PROVENANCE_PREFIX}{}\n",
            serde_json::to_string(self).expect("provenance serializes")
        )
    }
}

/// A `t,y` series read from disk.
#[derive(Debug)]
pub struct Series {
    pub values: Vec<f64>,
    pub sha256: String,
}

pub fn read_series(path: &Path) -> Result<Series> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes)
        .with_context(|| format!("{} is not UTF-8", path.display()))?;
    let values = parse_series(text).with_context(|| format!("parsing {}", path.display()))?;
    let sha256 = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(Series { values, sha256 })
}

/// Parse `t,y` rows with `t = 0, 1, ...`; `#` lines and a `t,y` header are skipped.
pub fn parse_series(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if values.is_empty() && line.eq_ignore_ascii_case("t,y") {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(t), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            bail!("line {line_no}: expected two fields `t,y`, got {line:?}");
        };
        let t: usize = t
            .trim()
            .parse()
            .with_context(|| format!("line {line_no}: bad time index {t:?}"))?;
        if t != values.len() {
            bail!(
                "line {line_no}: expected t = {}, got t = {t}",
                values.len()
            );
        }
        let y = parse_f64(y)
            .filter(|y| y.is_finite())
            .with_context(|| format!("line {line_no}: bad observation {y:?}"))?;
        values.push(y);
    }
    if values.is_empty() {
        bail!("no observations found");
    }
    Ok(values)
}

/// Write `content` to `path` through a temporary file renamed into place,
/// or to stdout when no path is given.
pub fn write_output(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("creating temporary file in {}", dir.display()))?;
            tmp.write_all(content.as_bytes())?;
            tmp.flush()?;
            tmp.persist(path)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}
