//! CSV tables and their TOML sidecars.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::spec::{Quantity, SweepSpec};
use super::sweep::{Cell, Flag, Metadata, Row, RunRecord};
use crate::error::{Error, Result};

/// Shortest round-tripping decimal; scientific notation for very small or large magnitudes.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if !x.is_finite() || !(1e-4..1e6).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Value(v) => format_number(*v),
        Cell::NA => "NA".to_string(),
    }
}

fn parse_cell(s: &str) -> Result<Cell> {
    if s == "NA" {
        return Ok(Cell::NA);
    }
    s.parse()
        .map(Cell::Value)
        .map_err(|_| Error::Parse(format!("bad numeric cell `{s}`")))
}

pub fn header(columns: &[Quantity]) -> Vec<String> {
    let mut h = vec!["tau".to_string(), "k_ratio".to_string()];
    h.extend(columns.iter().map(|q| q.column().to_string()));
    h.push("flags".to_string());
    h
}

/// Writes the rows as CSV. Flags are `;`-separated tokens, empty when none.
pub fn write_csv<W: Write>(record: &RunRecord, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(&record.columns()))?;
    for row in &record.rows {
        let mut fields = vec![format_number(row.tau), format_number(row.k_ratio)];
        fields.extend(row.values.iter().map(format_cell));
        fields.push(
            row.flags
                .iter()
                .map(Flag::token)
                .collect::<Vec<_>>()
                .join(";"),
        );
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`]; returns the value columns and the rows.
pub fn read_csv<R: Read>(input: R) -> Result<(Vec<Quantity>, Vec<Row>)> {
    let mut r = csv::Reader::from_reader(input);
    let head: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if head.len() < 3 || head[0] != "tau" || head[1] != "k_ratio" || head[head.len() - 1] != "flags"
    {
        return Err(Error::Parse(format!("unexpected header {head:?}")));
    }
    let columns = head[2..head.len() - 1]
        .iter()
        .map(|c| {
            Quantity::from_column(c).ok_or_else(|| Error::Parse(format!("unknown column `{c}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse()
                .map_err(|_| Error::Parse(format!("bad number `{}`", &rec[i])))
        };
        let values = (2..rec.len() - 1)
            .map(|i| parse_cell(&rec[i]))
            .collect::<Result<Vec<_>>>()?;
        let flags = rec[rec.len() - 1]
            .split(';')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Flag>>>()?;
        rows.push(Row {
            tau: num(0)?,
            k_ratio: num(1)?,
            values,
            flags,
        });
    }
    Ok((columns, rows))
}

/// Contents of `<table>.meta.toml`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub metadata: Metadata,
    pub spec: SweepSpec,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut name = csv.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.toml");
    csv.with_file_name(name)
}

pub fn sidecar_toml(record: &RunRecord) -> Result<String> {
    Ok(toml::to_string(&Sidecar {
        metadata: record.metadata.clone(),
        spec: record.spec.clone(),
    })?)
}

/// Writes the CSV table and its sidecar; returns the sidecar path.
pub fn write_record(record: &RunRecord, path: &Path) -> Result<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_csv(record, fs::File::create(path)?)?;
    let meta = sidecar_path(path);
    fs::write(&meta, sidecar_toml(record)?)?;
    Ok(meta)
}

/// Loads a table and its sidecar.
pub fn read_record(path: &Path) -> Result<RunRecord> {
    let (columns, rows) = read_csv(fs::File::open(path)?)?;
    let sidecar: Sidecar = toml::from_str(&fs::read_to_string(sidecar_path(path))?)?;
    if sidecar.spec.columns() != columns {
        return Err(Error::Parse(
            "table columns disagree with the sidecar spec".into(),
        ));
    }
    Ok(RunRecord {
        spec: sidecar.spec,
        rows,
        metadata: sidecar.metadata,
    })
}

/// Loads a sweep specification from TOML.
pub fn read_spec(path: &Path) -> Result<SweepSpec> {
    let spec: SweepSpec = toml::from_str(&fs::read_to_string(path)?)?;
    spec.validate()?;
    Ok(spec)
}
