//! Output helpers: atomic file replacement and small CSV utilities.

use std::io::Write;
use std::path::Path;

use crate::error::{LiError, Result};

/// Writes `bytes` to a temporary file next to `path`, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| LiError::Io(e.error))?;
    Ok(())
}

/// Serializes rows to CSV bytes with the given header.
pub(crate) fn csv_bytes<I>(header: &[&str], rows: I) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(&row)?;
    }
    wtr.into_inner().map_err(|e| LiError::Io(e.into_error()))
}

/// Parses CSV bytes, checking the header matches exactly.
pub(crate) fn csv_records(bytes: &[u8], header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::Reader::from_reader(bytes);
    let found = rdr.headers()?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(LiError::invalid(format!(
            "expected CSV header {:?}, found {:?}",
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let records = rdr.records().collect::<std::result::Result<Vec<_>, _>>()?;
    if let Some(bad) = records.iter().position(|r| r.len() != header.len()) {
        return Err(LiError::invalid(format!(
            "row {} has the wrong number of fields",
            bad + 1
        )));
    }
    Ok(records)
}

pub(crate) fn field_f64(rec: &csv::StringRecord, i: usize, line: usize) -> Result<f64> {
    crate::data::parse_field(&rec[i], line)
}

pub(crate) fn field_usize(rec: &csv::StringRecord, i: usize, line: usize) -> Result<usize> {
    rec[i]
        .trim()
        .parse()
        .map_err(|_| LiError::invalid(format!("row {line}: cannot parse {:?} as a count", &rec[i])))
}
