//! Representative tables and their two serializations.
//!
//! JSON: `{"n", "p", "exps", "degree", "reps": [[row-major entries], ...]}`.
//!
//! Binary (all fields little-endian 64-bit):
//!
//! ```text
//! magic   b"HECKETBL"
//! version u64   (TABLE_FORMAT_VERSION)
//! n       u64
//! p       u64
//! exps    n x u64
//! count   u64
//! entries count x n x n x i64, row-major, tables in sorted order
//! ```

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::label::CosetLabel;
use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;

pub const TABLE_MAGIC: &[u8; 8] = b"HECKETBL";
pub const TABLE_FORMAT_VERSION: u64 = 1;

/// Canonical right-coset representatives of one double coset, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub label: CosetLabel,
    pub reps: Vec<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    p: u64,
    exps: Vec<u32>,
    degree: usize,
    reps: Vec<Vec<i64>>,
}

impl CosetTable {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = TableJson {
            n: self.label.n(),
            p: self.label.p(),
            exps: self.label.exps().to_vec(),
            degree: self.reps.len(),
            reps: self.reps.iter().map(|m| m.as_flat().to_vec()).collect(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(s)?;
        let label = CosetLabel::new(doc.p, doc.exps)?;
        if label.n() != doc.n {
            return Err(Error::InvalidLabel("n does not match exponent count".into()));
        }
        let reps = doc.reps.into_iter().map(|r| IntMatrix::from_flat(doc.n, r)).collect::<Result<Vec<_>>>()?;
        if reps.len() != doc.degree {
            return Err(Error::InvalidArgument(format!(
                "degree field {} disagrees with {} representatives",
                doc.degree,
                reps.len()
            )));
        }
        Ok(CosetTable { label, reps })
    }

    /// One representative per line, entries row-major, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for m in &self.reps {
            let line: Vec<String> = m.as_flat().iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(TABLE_MAGIC)?;
        let mut put = |x: u64| w.write_all(&x.to_le_bytes());
        put(TABLE_FORMAT_VERSION)?;
        put(self.label.n() as u64)?;
        put(self.label.p())?;
        for &e in self.label.exps() {
            put(e as u64)?;
        }
        put(self.reps.len() as u64)?;
        for m in &self.reps {
            for &x in m.as_flat() {
                w.write_all(&x.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table; a version other than [`TABLE_FORMAT_VERSION`] is a [`Error::CacheFormat`].
    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != TABLE_MAGIC {
            return Err(Error::CacheFormat("bad magic".into()));
        }
        let mut word = || -> Result<u64> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            Ok(u64::from_le_bytes(b))
        };
        let version = word()?;
        if version != TABLE_FORMAT_VERSION {
            return Err(Error::CacheFormat(format!("version {version}, expected {TABLE_FORMAT_VERSION}")));
        }
        let n = word()? as usize;
        if !(2..=64).contains(&n) {
            return Err(Error::CacheFormat(format!("implausible dimension {n}")));
        }
        let p = word()?;
        let exps = (0..n).map(|_| word().map(|e| e as u32)).collect::<Result<Vec<_>>>()?;
        let label = CosetLabel::new(p, exps)?;
        let count = word()? as usize;
        let mut reps = Vec::with_capacity(count.min(1 << 20));
        for _ in 0..count {
            let flat = (0..n * n).map(|_| word().map(|x| x as i64)).collect::<Result<Vec<_>>>()?;
            reps.push(IntMatrix::from_flat(n, flat)?);
        }
        Ok(CosetTable { label, reps })
    }
}
