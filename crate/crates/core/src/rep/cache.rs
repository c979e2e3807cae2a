//! On-disk irrep matrix tables.
//!
//! One file per `(group, label, version)`. Layout, little-endian:
//! magic `HSPL`, `u32` format version, `u64` dimension, `u64` matrix count,
//! then each matrix row-major as `(re, im)` pairs of `f64`. Files are written
//! to a temporary name and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{IrrepLabel, MatrixRep};
use crate::group::GroupKind;
use crate::linalg::{CMatrix, C64};
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"HSPL";
/// Bumped whenever the matrix model changes.
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "HSPLAB_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct IrrepCache {
    dir: PathBuf,
}

impl IrrepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$HSPLAB_CACHE_DIR`, else `<tmp>/hsplab-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("hsplab-cache"));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, kind: GroupKind, label: &IrrepLabel) -> PathBuf {
        let group = kind.to_string().replace(':', "-");
        let label: String = label
            .to_string()
            .chars()
            .map(|c| match c {
                '0'..='9' => c,
                '+' => 'p',
                '-' => 'm',
                ',' => '.',
                _ => '_',
            })
            .collect();
        self.dir
            .join(format!("{group}_{label}_v{CACHE_VERSION}.bin"))
    }

    /// Reads a cached table; `Ok(None)` when absent or unreadable.
    pub fn load(&self, kind: GroupKind, label: &IrrepLabel) -> Option<MatrixRep> {
        let bytes = fs::read(self.path_for(kind, label)).ok()?;
        decode(kind, &bytes)
    }

    pub fn store(&self, label: &IrrepLabel, rep: &MatrixRep) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let target = self.path_for(rep.kind(), label);
        let tmp = target.with_extension(format!("tmp{}", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode(rep))?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::Cache(format!("{}: {e}", target.display()))
        })
    }
}

fn encode(rep: &MatrixRep) -> Vec<u8> {
    let d = rep.dim();
    let mut out = Vec::with_capacity(24 + rep.matrices().len() * d * d * 16);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&(d as u64).to_le_bytes());
    out.extend_from_slice(&(rep.matrices().len() as u64).to_le_bytes());
    for m in rep.matrices() {
        for i in 0..d {
            for j in 0..d {
                out.extend_from_slice(&m[(i, j)].re.to_le_bytes());
                out.extend_from_slice(&m[(i, j)].im.to_le_bytes());
            }
        }
    }
    out
}

fn decode(kind: GroupKind, bytes: &[u8]) -> Option<MatrixRep> {
    let header = bytes.get(..24)?;
    if &header[..4] != MAGIC || u32::from_le_bytes(header[4..8].try_into().ok()?) != CACHE_VERSION {
        return None;
    }
    let d = u64::from_le_bytes(header[8..16].try_into().ok()?) as usize;
    let count = u64::from_le_bytes(header[16..24].try_into().ok()?) as usize;
    if Some(count) != kind.order() {
        return None;
    }
    let body = &bytes[24..];
    if body.len() != count.checked_mul(d * d * 16)? {
        return None;
    }
    let mut floats = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")));
    let matrices = (0..count)
        .map(|_| {
            CMatrix::from_row_iterator(
                d,
                d,
                (0..d * d).map(|_| {
                    let re = floats.next().expect("length checked");
                    let im = floats.next().expect("length checked");
                    C64::new(re, im)
                }),
            )
        })
        .collect();
    Some(MatrixRep::from_matrices(kind, d, matrices))
}
