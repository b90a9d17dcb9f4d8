use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use super::enumerate::enumerate_right_cosets;
use super::label::CosetLabel;
use super::table::CosetTable;
use crate::error::{Error, Result};

/// On-disk table cache keyed by `(n, p, exps)`.
///
/// Entries written by another format version, or whose header does not match the key, are
/// recomputed. Writes go to a temporary file in the same directory and are renamed into place.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(TableCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, label: &CosetLabel) -> PathBuf {
        let exps: Vec<String> = label.exps().iter().map(|e| e.to_string()).collect();
        self.dir.join(format!("n{}_p{}_e{}.bin", label.n(), label.p(), exps.join("-")))
    }

    /// Returns the cached table, or `None` if it is missing or stale.
    pub fn load(&self, label: &CosetLabel) -> Result<Option<CosetTable>> {
        let path = self.path_for(label);
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        match CosetTable::read_binary(BufReader::new(file)) {
            Ok(t) if &t.label == label => Ok(Some(t)),
            Ok(_) | Err(Error::CacheFormat(_)) => Ok(None),
            Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::UnexpectedEof => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn store(&self, table: &CosetTable) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        table.write_binary(BufWriter::new(tmp.as_file_mut()))?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(&table.label)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    pub fn load_or_compute(&self, label: &CosetLabel, limit: u64) -> Result<CosetTable> {
        if let Some(t) = self.load(label)? {
            if t.reps.len() as u64 <= limit {
                return Ok(t);
            }
            return Err(Error::BudgetExceeded { degree: t.reps.len().to_string(), budget: limit });
        }
        let table = enumerate_right_cosets(label, limit)?;
        self.store(&table)?;
        Ok(table)
    }
}
