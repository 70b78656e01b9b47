//! File formats: JSON instance files and CSV iteration traces.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{AffineFractionalInstance, BoxSet, Error, Matrix, Result, SolveReport, Scalar, Vector};

pub const TRACE_HEADER: &str = "k,alpha,step_norm,g_raw_norm,residual";

/// On-disk layout of an affine-fractional instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    #[serde(rename = "A1")]
    pub a1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    pub c: Vec<f64>,
    pub d: f64,
    pub box_low: f64,
    pub box_high: f64,
}

fn field_err(field: &'static str, message: impl Into<String>) -> Error {
    Error::Field {
        field,
        message: message.into(),
    }
}

fn matrix_field(rows: Vec<Vec<f64>>, n: usize, field: &'static str) -> Result<Matrix<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(field_err(field, format!("expected {n}x{n}, got row lengths {shape:?}")));
    }
    Matrix::from_rows(rows).map_err(|e| field_err(field, e.to_string()))
}

fn vector_field(v: Vec<f64>, n: usize, field: &'static str) -> Result<Vector<f64>> {
    if v.len() != n {
        return Err(field_err(field, format!("expected length {n}, got {}", v.len())));
    }
    Vector::new(v).map_err(|e| field_err(field, e.to_string()))
}

impl InstanceFile {
    pub fn from_instance(inst: &AffineFractionalInstance<f64>) -> Result<Self> {
        let bx = inst.feasible_box();
        let (low, high) = (bx.lo()[0], bx.hi()[0]);
        let uniform = bx.lo().iter().all(|&v| v == low) && bx.hi().iter().all(|&v| v == high);
        if !uniform {
            return Err(field_err("box_low", "only cube boxes [low, high]^n are representable"));
        }
        Ok(Self {
            n: inst.n(),
            a: inst.a().to_rows(),
            b: inst.b().as_slice().to_vec(),
            a1: inst.a1().to_rows(),
            b1: inst.b1().as_slice().to_vec(),
            c: inst.c().as_slice().to_vec(),
            d: inst.d(),
            box_low: low,
            box_high: high,
        })
    }

    pub fn into_instance(self) -> Result<AffineFractionalInstance<f64>> {
        let n = self.n;
        if n == 0 {
            return Err(field_err("n", "dimension must be at least 1"));
        }
        let a = matrix_field(self.a, n, "A")?;
        let b = vector_field(self.b, n, "b")?;
        let a1 = matrix_field(self.a1, n, "A1")?;
        let b1 = vector_field(self.b1, n, "b1")?;
        let c = vector_field(self.c, n, "c")?;
        if !self.box_low.is_finite() || !self.box_high.is_finite() || self.box_low > self.box_high {
            return Err(field_err(
                "box_low",
                format!("invalid box [{}, {}]", self.box_low, self.box_high),
            ));
        }
        let bx = BoxSet::cube(n, self.box_low, self.box_high)?;
        AffineFractionalInstance::new(a, b, a1, b1, c, self.d, bx)
    }
}

pub fn parse_instance_str(text: &str) -> Result<AffineFractionalInstance<f64>> {
    serde_json::from_str::<InstanceFile>(text)?.into_instance()
}

pub fn parse_instance_file(path: impl AsRef<Path>) -> Result<AffineFractionalInstance<f64>> {
    parse_instance_str(&fs::read_to_string(path)?)
}

pub fn instance_to_string(inst: &AffineFractionalInstance<f64>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&InstanceFile::from_instance(inst)?)?)
}

pub fn write_instance_file(inst: &AffineFractionalInstance<f64>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance_to_string(inst)? + "\n")?;
    Ok(())
}

/// 17 significant digits; parses back to the identical `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trace<T: Scalar, W: Write>(report: &SolveReport<T>, mut out: W) -> Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in &report.trace {
        let residual = r.residual.map(|v| format_real(v.as_f64())).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            r.k,
            format_real(r.alpha.as_f64()),
            format_real(r.step_norm.as_f64()),
            format_real(r.g_raw_norm.as_f64()),
            residual
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trace_csv<T: Scalar>(report: &SolveReport<T>, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path)?;
    write_trace(report, std::io::BufWriter::new(file))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub alpha: f64,
    pub step_norm: f64,
    pub g_raw_norm: f64,
    pub residual: Option<f64>,
}

fn parse_real(s: &str, field: &'static str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|e| field_err(field, format!("`{s}`: {e}")))
}

pub fn read_trace_csv(path: impl AsRef<Path>) -> Result<Vec<TraceRow>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut lines = reader.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != TRACE_HEADER {
        return Err(field_err("header", format!("expected `{TRACE_HEADER}`")));
    }
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(field_err("row", format!("expected 5 columns in `{line}`")));
        }
        rows.push(TraceRow {
            k: cols[0]
                .trim()
                .parse()
                .map_err(|e| field_err("k", format!("`{}`: {e}", cols[0])))?,
            alpha: parse_real(cols[1], "alpha")?,
            step_norm: parse_real(cols[2], "step_norm")?,
            g_raw_norm: parse_real(cols[3], "g_raw_norm")?,
            residual: if cols[4].trim().is_empty() {
                None
            } else {
                Some(parse_real(cols[4], "residual")?)
            },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E1: &str = r#"{"n":1,"A":[[2.0]],"b":[0.0],"A1":[[1.0]],"b1":[0.0],"c":[1.0],"d":1.0,"box_low":1.0,"box_high":3.0}"#;

    #[test]
    fn round_trip_e1() {
        let inst = parse_instance_str(E1).unwrap();
        let again = parse_instance_str(&instance_to_string(&inst).unwrap()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn dimension_error_names_field() {
        let text = r#"{"n":2,"A":[[1,0,0],[0,1,0]],"b":[0,0],"A1":[[1,0],[0,1]],"b1":[0,0],"c":[0,0],"d":1,"box_low":1,"box_high":3}"#;
        match parse_instance_str(text) {
            Err(Error::Field { field: "A", .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"n":2,"A":[[1,0],[0,1]],"b":[0,0],"A1":[[1,0],[0,1]],"b1":[0],"c":[0,0],"d":1,"box_low":1,"box_high":3}"#;
        assert!(matches!(parse_instance_str(text), Err(Error::Field { field: "b1", .. })));
    }

    #[test]
    fn denominator_error() {
        let text = r#"{"n":2,"A":[[1,0],[0,1]],"b":[0,0],"A1":[[1,0],[0,1]],"b1":[0,0],"c":[-1,-1],"d":0,"box_low":1,"box_high":3}"#;
        match parse_instance_str(text) {
            Err(Error::Field { field: "c", message }) => assert!(message.contains("-6")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(parse_instance_str("{\"n\": 1,"), Err(Error::Json(_))));
        let missing = r#"{"n":1,"b":[0.0],"A1":[[1.0]],"b1":[0.0],"c":[1.0],"d":1.0,"box_low":1.0,"box_high":3.0}"#;
        let err = parse_instance_str(missing).unwrap_err().to_string();
        assert!(err.contains("`A`"), "{err}");
    }

    #[test]
    fn format_real_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e-17, 0.0] {
            assert_eq!(format_real(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    proptest! {
        #[test]
        fn instance_json_round_trip(
            (n, raw) in (1usize..5).prop_flat_map(|n| (Just(n), prop::collection::vec(-1e3f64..1e3, 2 * n * n + 3 * n))),
            d in 1e-3f64..10.0,
        ) {
            let (a, rest) = raw.split_at(n * n);
            let (a1, rest) = rest.split_at(n * n);
            let (b, rest) = rest.split_at(n);
            let (b1, _) = rest.split_at(n);
            let file = InstanceFile {
                n,
                a: a.chunks(n).map(<[f64]>::to_vec).collect(),
                b: b.to_vec(),
                a1: a1.chunks(n).map(<[f64]>::to_vec).collect(),
                b1: b1.to_vec(),
                c: vec![0.0; n],
                d,
                box_low: -2.5,
                box_high: 7.0,
            };
            let inst = file.clone().into_instance().unwrap();
            let text = instance_to_string(&inst).unwrap();
            prop_assert_eq!(serde_json::from_str::<InstanceFile>(&text).unwrap(), file);
        }
    }
}
