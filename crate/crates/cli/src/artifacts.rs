use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Output files held in memory until the whole run has succeeded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Artifacts {
    files: Vec<(String, String)>,
}

impl Artifacts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, contents: impl Into<String>) {
        self.files.push((name.into(), contents.into()));
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Writes every file under `dir`: all contents go to temporary files
    /// first, which are then renamed into place. On failure nothing from
    /// this set is left behind.
    pub fn commit(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
        let cleanup = |staged: &[(PathBuf, PathBuf)], renamed: usize| {
            for (i, (tmp, dst)) in staged.iter().enumerate() {
                let _ = fs::remove_file(if i < renamed { dst } else { tmp });
            }
        };
        for (name, contents) in &self.files {
            let dst = dir.join(name);
            let file_name = dst.file_name().unwrap().to_string_lossy();
            let tmp = dst.with_file_name(format!(".{file_name}.tmp{}", std::process::id()));
            if let Some(parent) = dst.parent() {
                if let Err(e) = fs::create_dir_all(parent) {
                    cleanup(&staged, 0);
                    return Err(CliError::io(parent, e));
                }
            }
            if let Err(e) = fs::write(&tmp, contents) {
                let _ = fs::remove_file(&tmp);
                cleanup(&staged, 0);
                return Err(CliError::io(&tmp, e));
            }
            staged.push((tmp, dst));
        }
        for i in 0..staged.len() {
            let (tmp, dst) = &staged[i];
            if let Err(e) = fs::rename(tmp, dst) {
                cleanup(&staged, i);
                return Err(CliError::io(dst, e));
            }
        }
        Ok(staged.into_iter().map(|(_, dst)| dst).collect())
    }
}
