use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;
use tempfile::NamedTempFile;

use ptspectra::C64;

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// Write via a temp file in the target directory, then rename into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    path.with_file_name(name)
}

#[derive(Serialize)]
pub struct Meta<'a> {
    pub subcommand: &'a str,
    pub version: &'static str,
    pub library_version: &'static str,
    pub format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub columns: Option<&'a [&'a str]>,
    pub model: Value,
    /// The fully resolved model, defaults included, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved: Option<Value>,
    pub computation: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

/// The product of a subcommand: CSV or JSON text plus its description.
pub struct Artifact {
    pub text: String,
    pub format: &'static str,
    pub columns: Option<&'static [&'static str]>,
    pub notes: Vec<String>,
    pub resolved: Option<Value>,
}

impl Artifact {
    pub fn with_spec(mut self, spec: &ptspectra::ModelSpec) -> Artifact {
        self.resolved = serde_json::to_value(spec).ok();
        self
    }

    pub fn json<T: Serialize>(value: &T, notes: Vec<String>) -> anyhow::Result<Artifact> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(Artifact { text, format: "json", columns: None, notes, resolved: None })
    }

    pub fn csv(text: String, columns: &'static [&'static str], notes: Vec<String>) -> Artifact {
        Artifact { text, format: "csv", columns: Some(columns), notes, resolved: None }
    }
}

pub fn emit(out: Option<&Path>, artifact: &Artifact, meta: &Meta<'_>) -> anyhow::Result<()> {
    match out {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(artifact.text.as_bytes())?;
            lock.flush()?;
        }
        Some(path) => {
            write_atomic(path, artifact.text.as_bytes())?;
            let mut side = serde_json::to_string_pretty(meta)?;
            side.push('\n');
            write_atomic(&sidecar_path(path), side.as_bytes())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.5), "-2.5000000000000000e0");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("a/diagram.csv")), Path::new("a/diagram.csv.meta.json"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
