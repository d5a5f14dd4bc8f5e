use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Resolved configuration of one invocation, written as `key=value` lines.
#[derive(Debug, Clone, Default)]
pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        let mut m = Self::default();
        m.set("command", command);
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    /// Writes the sidecar next to `output` as `<output>.meta`.
    pub fn write_beside(&self, output: &Path) -> CliResult<PathBuf> {
        let path = sidecar_path(output);
        std::fs::write(&path, self.render()).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn write_file<F>(path: &Path, f: F) -> CliResult<()>
where
    F: FnOnce(&mut BufWriter<File>) -> CliResult<()>,
{
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| io_err(path, e))
}
