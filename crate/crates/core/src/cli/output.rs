use crate::error::{Error, Result};
use crate::process::ProcessPath;
use crate::rmt::RmtPath;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const PATHS_SCHEMA: &str = "# zeta-brownian paths v1";
pub const STATISTICS_SCHEMA: &str = "# zeta-brownian statistics v1";
pub const RMT_SCHEMA: &str = "# zeta-brownian rmt v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathRow {
    pub tau: f64,
    pub alpha: f64,
    pub re_z: f64,
    pub im_z: f64,
    pub model: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatisticRow {
    pub sample_id: u64,
    pub statistic: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmtRow {
    pub n: usize,
    pub sample_id: u64,
    pub alpha: f64,
    pub re_z: f64,
    pub im_z: f64,
}

/// Kind of CSV, read from its schema comment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CsvKind {
    Paths,
    Statistics,
    Rmt,
}

impl CsvKind {
    fn schema(&self) -> &'static str {
        match self {
            CsvKind::Paths => PATHS_SCHEMA,
            CsvKind::Statistics => STATISTICS_SCHEMA,
            CsvKind::Rmt => RMT_SCHEMA,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn write_rows<S: Serialize>(path: &Path, kind: CsvKind, header: &[&str], rows: impl Iterator<Item = S>) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "{}", kind.schema()).map_err(|e| Error::io(path, e))?;
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    csv.write_record(header)?;
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn write_paths_csv(path: &Path, paths: &[ProcessPath]) -> Result<()> {
    let rows = paths.iter().flat_map(|p| {
        p.alpha_grid.iter().zip(&p.values).map(move |(&alpha, v)| PathRow {
            tau: p.tau,
            alpha,
            re_z: v.re,
            im_z: v.im,
            model: p.model.to_string(),
        })
    });
    write_rows(path, CsvKind::Paths, &["tau", "alpha", "re_z", "im_z", "model"], rows)
}

pub fn write_statistics_csv(path: &Path, rows: &[StatisticRow]) -> Result<()> {
    write_rows(path, CsvKind::Statistics, &["sample_id", "statistic", "value"], rows.iter())
}

pub fn write_rmt_csv(path: &Path, paths: &[RmtPath]) -> Result<()> {
    let rows = paths.iter().enumerate().flat_map(|(i, p)| {
        p.alpha_grid.iter().zip(&p.values).map(move |(&alpha, v)| RmtRow {
            n: p.n,
            sample_id: i as u64,
            alpha,
            re_z: v.re,
            im_z: v.im,
        })
    });
    write_rows(path, CsvKind::Rmt, &["n", "sample_id", "alpha", "re_z", "im_z"], rows)
}

fn schema_error(path: &Path, detail: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_path_buf(),
        detail: detail.into(),
    }
}

/// Reads the schema line and returns the kind plus a reader over the rest.
pub fn open_csv(path: &Path) -> Result<(CsvKind, csv::Reader<Box<dyn Read>>)> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(f);
    let mut first = String::new();
    r.read_line(&mut first).map_err(|e| Error::io(path, e))?;
    let kind = [CsvKind::Paths, CsvKind::Statistics, CsvKind::Rmt]
        .into_iter()
        .find(|k| first.trim_end() == k.schema())
        .ok_or_else(|| schema_error(path, format!("unrecognised schema line `{}`", first.trim_end())))?;
    let reader = csv::ReaderBuilder::new().has_headers(true).from_reader(Box::new(r) as Box<dyn Read>);
    Ok((kind, reader))
}

fn read_kind<T: for<'de> Deserialize<'de>>(path: &Path, want: CsvKind) -> Result<Vec<T>> {
    let (kind, mut r) = open_csv(path)?;
    if kind != want {
        return Err(schema_error(path, format!("expected {want:?} CSV, found {kind:?}")));
    }
    r.deserialize().map(|row| row.map_err(|e| schema_error(path, e.to_string()))).collect()
}

pub fn read_paths_csv(path: &Path) -> Result<Vec<PathRow>> {
    read_kind(path, CsvKind::Paths)
}

pub fn read_statistics_csv(path: &Path) -> Result<Vec<StatisticRow>> {
    read_kind(path, CsvKind::Statistics)
}

pub fn read_rmt_csv(path: &Path) -> Result<Vec<RmtRow>> {
    read_kind(path, CsvKind::Rmt)
}

pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::Model;
    use crate::Complex64;

    #[test]
    fn paths_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("p.csv");
        let p = ProcessPath {
            t: 1e6,
            tau: 1.5e6,
            alpha_grid: vec![0.0, 0.5, 1.0],
            values: vec![Complex64::new(0.1, -0.2), Complex64::new(1.0 / 3.0, 0.0), Complex64::new(-2.5, 1e-17)],
            model: Model::PrimeSum,
            normalization: 1.6,
            tail_sup: 0.0,
        };
        write_paths_csv(&f, &[p.clone()]).unwrap();
        let text = std::fs::read_to_string(&f).unwrap();
        assert!(text.starts_with("# zeta-brownian paths v1\ntau,alpha,re_z,im_z,model\n"));
        let rows = read_paths_csv(&f).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].re_z, 1.0 / 3.0);
        assert_eq!(rows[2].im_z, 1e-17);
        assert!(read_statistics_csv(&f).is_err());
    }

    #[test]
    fn empty_and_bad_schema() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("e.csv");
        write_paths_csv(&f, &[]).unwrap();
        assert!(read_paths_csv(&f).unwrap().is_empty());
        std::fs::write(&f, "tau,alpha\n1,2\n").unwrap();
        assert!(matches!(read_paths_csv(&f), Err(Error::Schema { .. })));
    }
}
