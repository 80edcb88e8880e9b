use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;

/// Writes to `path` through a temporary file in the same directory, so
/// readers never see a partial file. Without a path, writes to stdout.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| Failure::Io(format!("stdout: {e}")));
    };
    let io_err = |e: io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut v = serde_json::to_vec_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    v.push(b'\n');
    Ok(v)
}

pub fn csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}
