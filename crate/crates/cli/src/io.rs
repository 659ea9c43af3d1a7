use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use distinguish_core::format::{parse_alab, parse_trn, parse_vlab};
use distinguish_core::{ArcLabeling, Tournament, VertexLabeling};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_tournament(path: &Path) -> Result<Tournament> {
    parse_trn(&read(path)?).with_context(|| format!("{}", path.display()))
}

pub fn read_vertex_labels(path: &Path) -> Result<VertexLabeling> {
    parse_vlab(&read(path)?).with_context(|| format!("{}", path.display()))
}

pub fn read_arc_labels(path: &Path) -> Result<ArcLabeling> {
    parse_alab(&read(path)?).with_context(|| format!("{}", path.display()))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Writes to `out` if given, stdout otherwise.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
