use crate::error::CliError;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// `out/<scenario>/`, created on first use.
#[derive(Clone, Debug)]
pub struct ScenarioDir {
    pub path: PathBuf,
}

impl ScenarioDir {
    pub fn create(out: &Path, name: &str) -> Result<Self, CliError> {
        let path = out.join(name);
        std::fs::create_dir_all(&path).map_err(|e| CliError::io(&path, e))?;
        Ok(ScenarioDir { path })
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.path.join(name)
    }

    pub fn write_bytes(&self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        let p = self.file(name);
        std::fs::write(&p, bytes).map_err(|e| CliError::io(&p, e))?;
        Ok(p)
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        self.write_bytes(name, text.as_bytes())
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, name: &str, v: &T) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(v).map_err(|e| CliError::Numeric(format!("encoding {name}: {e}")))?;
        text.push('\n');
        self.write_text(name, &text)
    }
}

/// Max that keeps NaN, so a broken evaluation cannot pass as small.
pub fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
