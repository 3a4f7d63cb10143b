//! Output formats: aligned text, CSV and JSON.

use std::io::{self, Read, Write};

use casimir_polder::oracle::VerificationReport;
use casimir_polder::{EnergyBreakdown, SweepRow};
use serde::Serialize;

/// Energies for one configuration. `e_cp1`/`e_cp2` are `None` for an atom at
/// the plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub e12: f64,
    pub e123: f64,
    pub e213: f64,
    pub e1323: f64,
    pub delta_e3: f64,
    /// `e12 + delta_e3`.
    pub total: f64,
    pub g: f64,
    pub e_cp1: Option<f64>,
    pub e_cp2: Option<f64>,
}

impl From<&EnergyBreakdown> for EnergyReport {
    fn from(b: &EnergyBreakdown) -> Self {
        EnergyReport {
            e12: b.e12,
            e123: b.e123,
            e213: b.e213,
            e1323: b.e1323,
            delta_e3: b.delta_e3,
            total: b.pair_total(),
            g: b.g(),
            e_cp1: b.e_cp1,
            e_cp2: b.e_cp2,
        }
    }
}

impl EnergyReport {
    fn entries(&self) -> [(&'static str, Option<f64>); 9] {
        [
            ("e12", Some(self.e12)),
            ("e123", Some(self.e123)),
            ("e213", Some(self.e213)),
            ("e1323", Some(self.e1323)),
            ("delta_e3", Some(self.delta_e3)),
            ("total", Some(self.total)),
            ("g", Some(self.g)),
            ("e_cp1", self.e_cp1),
            ("e_cp2", self.e_cp2),
        ]
    }
}

pub fn write_energy_text<W: Write>(mut w: W, r: &EnergyReport) -> io::Result<()> {
    for (name, value) in r.entries() {
        match value {
            Some(v) => writeln!(w, "{name:<9}{v:>24.16e}")?,
            None => writeln!(w, "{name:<9}{:>24}", "n/a (atom at plate)")?,
        }
    }
    Ok(())
}

pub fn write_energy_csv<W: Write>(w: W, r: &EnergyReport) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let entries = r.entries();
    out.write_record(entries.iter().map(|(n, _)| *n))?;
    out.write_record(entries.iter().map(|(_, v)| v.map_or(String::new(), |v| v.to_string())))?;
    out.flush()
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut w: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}

/// Sweep rows as CSV. Values use Rust's shortest round-trip formatting, so
/// parsing a cell gives back the exact `f64`.
pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SweepRow::HEADER)?;
    for row in rows {
        out.write_record(row.values().iter().map(f64::to_string))?;
    }
    out.flush()
}

#[derive(Serialize)]
struct SweepRowJson {
    param: f64,
    e12: f64,
    e123: f64,
    e213: f64,
    e1323: f64,
    delta_e3: f64,
    g: f64,
    g3: f64,
    g4: f64,
}

/// Sweep rows as a JSON array of objects; NaN becomes `null`.
pub fn write_sweep_json<W: Write>(w: W, rows: &[SweepRow]) -> io::Result<()> {
    let rows: Vec<SweepRowJson> = rows
        .iter()
        .map(|r| SweepRowJson {
            param: r.param,
            e12: r.e12,
            e123: r.e123,
            e213: r.e213,
            e1323: r.e1323,
            delta_e3: r.delta_e3,
            g: r.g,
            g3: r.g3,
            g4: r.g4,
        })
        .collect();
    write_json(w, &rows)
}

/// Reads a sweep CSV back, checking the header.
pub fn read_sweep_csv<R: Read>(r: R) -> Result<Vec<SweepRow>, String> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(SweepRow::HEADER) {
        return Err(format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let mut v = [0.0; 9];
        for (j, cell) in record.iter().enumerate() {
            v[j] = cell.parse().map_err(|_| format!("row {}: bad value `{cell}` in {}", i + 1, SweepRow::HEADER[j]))?;
        }
        rows.push(SweepRow {
            param: v[0],
            e12: v[1],
            e123: v[2],
            e213: v[3],
            e1323: v[4],
            delta_e3: v[5],
            g: v[6],
            g3: v[7],
            g4: v[8],
        });
    }
    Ok(rows)
}

pub fn write_verification_text<W: Write>(mut w: W, label: &str, report: &VerificationReport) -> io::Result<()> {
    for c in &report.checks {
        writeln!(
            w,
            "{label}{:<6}{:>24.16e}{:>24.16e}  rel {:>9.2e}  {}",
            c.term.name(),
            c.analytic,
            c.numeric.value,
            c.rel_diff,
            if c.passed { "PASS" } else { "FAIL" }
        )?;
    }
    for t in &report.skipped {
        writeln!(w, "{label}{:<6}  skipped (atom at plate)", t.name())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(p: f64) -> SweepRow {
        SweepRow {
            param: p,
            e12: -1.830_127_018_922_193_3,
            e123: 0.1 / 3.0,
            e213: 1e-300,
            e1323: -7.25e12,
            delta_e3: f64::NAN,
            g: 3.0 / 23.0,
            g3: 0.0,
            g4: -0.0,
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let rows = [row(0.0), row(0.01), row(2.0)];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("param,e12,e123,e213,e1323,delta_e3,g,g3,g4\n"));
        let back = read_sweep_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 3);
        for (a, b) in rows.iter().zip(&back) {
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
            }
        }
    }

    #[test]
    fn wrong_header_rejected() {
        let err = read_sweep_csv("param,e12\n1,2\n".as_bytes()).unwrap_err();
        assert!(err.contains("header"));
    }

    #[test]
    fn energy_json_has_null_wall_terms_at_contact() {
        let r = EnergyReport {
            e12: -1.0,
            e123: -1.0,
            e213: -1.0,
            e1323: -1.0,
            delta_e3: -3.0,
            total: -4.0,
            g: 3.0,
            e_cp1: None,
            e_cp2: Some(-0.5),
        };
        let mut buf = Vec::new();
        write_json(&mut buf, &r).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["e_cp1"].is_null());
        assert_eq!(v["e_cp2"], -0.5);
        let mut text = Vec::new();
        write_energy_text(&mut text, &r).unwrap();
        assert!(String::from_utf8(text).unwrap().contains("n/a"));
    }
}
