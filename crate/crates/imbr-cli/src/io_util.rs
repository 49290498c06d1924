//! File plumbing: atomic writes and the error-line contract.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use crate::CliError;

/// Writes a file atomically: the content lands in a temp file next to the
/// target and is renamed into place, so a crash never leaves half a file.
pub fn write_atomic(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir),
        None => tempfile::NamedTempFile::new(),
    }
    .map_err(|e| CliError::usage(format!("cannot create temp file for {}: {e}", path.display())))?;
    {
        let mut buffered = BufWriter::new(&mut tmp);
        write(&mut buffered)?;
        buffered
            .flush()
            .map_err(|e| CliError::usage(format!("write {}: {e}", path.display())))?;
    }
    tmp.persist(path)
        .map_err(|e| CliError::usage(format!("cannot move output into {}: {e}", path.display())))?;
    Ok(())
}

/// Opens a file for buffered reading with a usage-error message.
pub fn open_reader(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))
}
