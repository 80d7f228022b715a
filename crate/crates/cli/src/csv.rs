//! CSV file formats. Every emitted file starts with comment headers
//! carrying the tool version, the fully resolved configuration and the
//! seed, so a file identifies the run that produced it.
//!
//! Grid functions: header line `n,h,box` then rows `x1,..,xn,value`.
//! Atom measures: rows `x1,..,xn,weight`.
//! Step profiles: rows `t,value` (right endpoints of the pieces).
//! Sweep records: rows `param,norm,expint,log_expint,beta`.

use mta_core::grid::{BoundingBox, GridFunction};
use mta_core::measures::{Atom, RadonMeasure};
use mta_core::rearrangement::StepProfile;
use mta_core::verify::SweepRecord;
use std::fmt::Write as _;

pub fn header(version: &str, resolved_config: &str, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# mta {version}");
    let _ = writeln!(s, "# config: {resolved_config}");
    let _ = writeln!(s, "# seed={seed}");
    s
}

fn fmt_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v:.12e}")
    }
}

pub fn write_grid_function(out: &mut String, g: &GridFunction) {
    let n = g.dim();
    let mut boxspec = String::new();
    for j in 0..n {
        if j > 0 {
            boxspec.push(';');
        }
        let _ = write!(boxspec, "{}:{}", fmt_float(g.bbox.lo[j]), fmt_float(g.bbox.hi[j]));
    }
    let _ = writeln!(out, "n={n},h={},box={boxspec}", fmt_float(g.h));
    let mut x = vec![0.0; n];
    for (idx, v) in g.values.iter().enumerate() {
        g.center_of(idx, &mut x);
        for xi in &x {
            let _ = write!(out, "{},", fmt_float(*xi));
        }
        let _ = writeln!(out, "{}", fmt_float(*v));
    }
}

#[derive(Debug)]
pub enum CsvError {
    Malformed(String),
    Incompatible(&'static str),
}

impl std::fmt::Display for CsvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CsvError::Malformed(line) => write!(f, "malformed csv line: {line}"),
            CsvError::Incompatible(m) => write!(f, "incompatible csv: {m}"),
        }
    }
}

impl std::error::Error for CsvError {}

pub fn read_grid_function(body: &str) -> Result<GridFunction, CsvError> {
    let mut lines = body.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let head = lines.next().ok_or(CsvError::Incompatible("empty file"))?;
    let mut n = 0usize;
    let mut h = 0.0f64;
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for field in head.split(',') {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| CsvError::Malformed(head.to_string()))?;
        match k {
            "n" => n = v.parse().map_err(|_| CsvError::Malformed(head.to_string()))?,
            "h" => h = v.parse().map_err(|_| CsvError::Malformed(head.to_string()))?,
            "box" => {
                for axis in v.split(';') {
                    let (a, b) = axis
                        .split_once(':')
                        .ok_or_else(|| CsvError::Malformed(head.to_string()))?;
                    lo.push(a.parse().map_err(|_| CsvError::Malformed(head.to_string()))?);
                    hi.push(b.parse().map_err(|_| CsvError::Malformed(head.to_string()))?);
                }
            }
            _ => return Err(CsvError::Malformed(head.to_string())),
        }
    }
    if lo.len() != n {
        return Err(CsvError::Incompatible("box dimension mismatch"));
    }
    let bbox = BoundingBox::new(lo, hi).map_err(|_| CsvError::Incompatible("bad box"))?;
    let mut g = GridFunction::zeros(bbox, h).map_err(|_| CsvError::Incompatible("bad grid"))?;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n + 1 {
            return Err(CsvError::Malformed(line.to_string()));
        }
        let mut x = Vec::with_capacity(n);
        for f in &fields[..n] {
            x.push(f.parse().map_err(|_| CsvError::Malformed(line.to_string()))?);
        }
        let v: f64 = fields[n]
            .parse()
            .map_err(|_| CsvError::Malformed(line.to_string()))?;
        let idx = g
            .cell_containing(&x)
            .ok_or(CsvError::Incompatible("row outside the declared box"))?;
        g.values[idx] = v;
    }
    Ok(g)
}

/// Atoms: one row per atom, `x1,..,xn,weight`.
pub fn write_atoms(out: &mut String, nu: &RadonMeasure) -> Result<(), CsvError> {
    match &nu.data {
        mta_core::measures::MeasureData::Atoms(atoms) => {
            for a in atoms {
                for xi in &a.point {
                    let _ = write!(out, "{},", fmt_float(*xi));
                }
                let _ = writeln!(out, "{}", fmt_float(a.weight));
            }
            Ok(())
        }
        _ => Err(CsvError::Incompatible("measure is not atomic")),
    }
}

pub fn read_atoms(body: &str) -> Result<Vec<Atom>, CsvError> {
    let mut atoms = Vec::new();
    for line in body.lines() {
        if line.starts_with('#') || line.trim().is_empty() || line.starts_with("n=") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 2 {
            return Err(CsvError::Malformed(line.to_string()));
        }
        let mut vals = Vec::with_capacity(fields.len());
        for f in &fields {
            vals.push(
                f.parse::<f64>()
                    .map_err(|_| CsvError::Malformed(line.to_string()))?,
            );
        }
        let weight = vals.pop().unwrap();
        atoms.push(Atom {
            point: vals,
            weight,
        });
    }
    Ok(atoms)
}

pub fn write_step_profile(out: &mut String, p: &StepProfile) {
    let _ = writeln!(out, "t,value");
    for (t, v) in p.breakpoints.iter().zip(&p.values) {
        let _ = writeln!(out, "{},{}", fmt_float(*t), fmt_float(*v));
    }
}

pub fn write_sweep_records(out: &mut String, records: &[SweepRecord]) {
    let _ = writeln!(out, "param,norm,expint,log_expint,beta");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(r.param),
            fmt_float(r.norm),
            fmt_float(r.expint),
            fmt_float(r.log_expint),
            fmt_float(r.beta)
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mta_core::grid::norm;

    #[test]
    fn grid_function_round_trip() {
        let g = GridFunction::from_fn(BoundingBox::centered_cube(2, 1.0), 0.25, |x| {
            norm(x) + 0.5
        })
        .unwrap();
        let mut s = header("0.0.0", "n=2", 7);
        write_grid_function(&mut s, &g);
        let g2 = read_grid_function(&s).unwrap();
        assert!(g.same_geometry(&g2));
        for (a, b) in g.values.iter().zip(&g2.values) {
            assert!((a - b).abs() < 1e-11 * a.abs().max(1.0));
        }
    }

    #[test]
    fn atoms_round_trip() {
        let atoms = vec![
            Atom {
                point: vec![0.25, -0.5],
                weight: 1.5,
            },
            Atom {
                point: vec![0.0, 0.125],
                weight: 0.25,
            },
        ];
        let nu = RadonMeasure::from_atoms(atoms.clone()).unwrap();
        let mut s = String::new();
        write_atoms(&mut s, &nu).unwrap();
        let back = read_atoms(&s).unwrap();
        assert_eq!(back.len(), atoms.len());
        for (a, b) in back.iter().zip(&atoms) {
            assert_eq!(a.point, b.point);
            assert_eq!(a.weight, b.weight);
        }
    }
}
