//! All-or-nothing writing of a command's files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::pipeline::OutputFile;

fn staging_name(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!(".{name}.partial"))
}

/// Writes every file into `dir`, creating it if needed.
///
/// Files are first written under hidden staging names and only renamed into
/// place once all of them are complete. On any failure the staged files and
/// any already renamed ones are removed, so either every output exists in
/// full or none of them was created.
pub fn write_outputs(dir: &Path, files: &[OutputFile]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut staged: Vec<PathBuf> = Vec::new();
    let mut placed: Vec<PathBuf> = Vec::new();
    let result = (|| {
        for f in files {
            let tmp = staging_name(dir, &f.name);
            staged.push(tmp.clone());
            let mut out = fs::File::create(&tmp)?;
            out.write_all(&f.bytes)?;
            out.sync_all()?;
        }
        for (f, tmp) in files.iter().zip(&staged) {
            let dest = dir.join(&f.name);
            fs::rename(tmp, &dest)?;
            placed.push(dest);
        }
        Ok(())
    })();
    if result.is_err() {
        for p in staged.iter().chain(&placed) {
            let _ = fs::remove_file(p);
        }
    }
    result
}
