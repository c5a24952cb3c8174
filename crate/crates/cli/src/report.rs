//! Serializable report shapes and the CSV writer.
//!
//! Floats go through serde_json, which prints the shortest decimal that
//! parses back to the same binary64; CSV cells reuse that formatting.

use mbkit_core::identities::ContourDiagnostics;
use mbkit_core::{Complex64, ErrorKind, MbError};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::sweep::{Identity, ParamValue, Sweep, SweepRow, SweepSummary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            ParamValue::Complex(z) => Cx::from(z).serialize(s),
            ParamValue::Order(n) => s.serialize_u32(n),
        }
    }
}

/// Machine-readable error object.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorObject {
    /// `usage`, `domain` or `numerical`.
    pub kind: &'static str,
    #[serde(rename = "type")]
    pub label: &'static str,
    pub message: String,
}

impl ErrorObject {
    pub fn usage(message: impl Into<String>) -> Self {
        ErrorObject {
            kind: "usage",
            label: "usage",
            message: message.into(),
        }
    }
}

impl From<&MbError> for ErrorObject {
    fn from(e: &MbError) -> Self {
        ErrorObject {
            kind: match e.kind() {
                ErrorKind::Domain => "domain",
                ErrorKind::Numerical => "numerical",
            },
            label: e.label(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourInfo {
    pub sigma: f64,
    pub height: f64,
    pub step: f64,
    pub nodes: usize,
    pub crossed_poles: usize,
}

impl From<&ContourDiagnostics> for ContourInfo {
    fn from(d: &ContourDiagnostics) -> Self {
        ContourInfo {
            sigma: d.sigma,
            height: d.height,
            step: d.step,
            nodes: d.nodes,
            crossed_poles: d.crossed_poles,
        }
    }
}

/// Named parameters serialized as an object in their natural order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params(pub Vec<(&'static str, ParamValue)>);

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub index: usize,
    pub params: Params,
    pub lhs: Option<Cx>,
    pub rhs: Option<Cx>,
    pub residual: Option<f64>,
    pub passed: bool,
    pub contours: Vec<ContourInfo>,
    pub error: Option<ErrorObject>,
}

impl RowReport {
    pub fn new(identity: Identity, row: &SweepRow) -> Self {
        let params = Params(
            identity
                .param_names()
                .iter()
                .copied()
                .zip(row.case.values())
                .collect(),
        );
        match &row.outcome {
            Ok(rep) => RowReport {
                index: row.index,
                params,
                lhs: Some(rep.lhs.into()),
                rhs: Some(rep.rhs.into()),
                residual: Some(rep.residual),
                passed: rep.passed,
                contours: rep.diagnostics.iter().map(ContourInfo::from).collect(),
                error: None,
            },
            Err(e) => RowReport {
                index: row.index,
                params,
                lhs: None,
                rhs: None,
                residual: None,
                passed: false,
                contours: Vec::new(),
                error: Some(e.into()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryReport {
    pub samples: usize,
    pub rejected: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass_rate: f64,
    pub max_residual: f64,
}

impl From<SweepSummary> for SummaryReport {
    fn from(s: SweepSummary) -> Self {
        SummaryReport {
            samples: s.samples,
            rejected: s.rejected,
            passed: s.passed,
            failed: s.failed,
            pass_rate: s.pass_rate,
            max_residual: s.max_residual,
        }
    }
}

/// Shortest round-trip decimal for a float, as serde_json prints it.
pub fn fmt_f64(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serializes")
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// One header row, then one row per case. The summary is not part of the CSV.
pub fn sweep_csv(sweep: &Sweep) -> String {
    let mut header = vec!["index".to_string(), "identity".to_string()];
    for name in sweep.identity.param_names() {
        if matches!(*name, "n") {
            header.push((*name).to_string());
        } else {
            header.push(format!("{name}_re"));
            header.push(format!("{name}_im"));
        }
    }
    header.extend(
        [
            "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "passed", "contours", "sigma",
            "height", "nodes", "error",
        ]
        .map(String::from),
    );
    let mut w = csv_writer();
    w.write_record(&header).expect("in-memory write");
    for row in &sweep.rows {
        let r = RowReport::new(sweep.identity, row);
        let mut rec = vec![r.index.to_string(), sweep.identity.name().to_string()];
        for (_, v) in &r.params.0 {
            match *v {
                ParamValue::Complex(z) => {
                    rec.push(fmt_f64(z.re));
                    rec.push(fmt_f64(z.im));
                }
                ParamValue::Order(n) => rec.push(n.to_string()),
            }
        }
        rec.push(opt(r.lhs.map(|z| z.re)));
        rec.push(opt(r.lhs.map(|z| z.im)));
        rec.push(opt(r.rhs.map(|z| z.re)));
        rec.push(opt(r.rhs.map(|z| z.im)));
        rec.push(opt(r.residual));
        rec.push(r.passed.to_string());
        rec.push(r.contours.len().to_string());
        rec.push(opt(r.contours.first().map(|c| c.sigma)));
        rec.push(opt(r.contours.iter().map(|c| c.height).reduce(f64::max)));
        rec.push(
            r.contours
                .iter()
                .map(|c| c.nodes)
                .sum::<usize>()
                .to_string(),
        );
        rec.push(
            r.error
                .map(|e| format!("{}: {}", e.label, e.message))
                .unwrap_or_default(),
        );
        w.write_record(&rec).expect("in-memory write");
    }
    finish(w)
}

/// Header plus one row from string cells.
pub fn single_row_csv(header: &[&str], row: &[String]) -> String {
    let mut w = csv_writer();
    w.write_record(header).expect("in-memory write");
    w.write_record(row).expect("in-memory write");
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-10, 0.0] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_quotes_commas() {
        let s = single_row_csv(&["a", "b"], &["x,y".into(), "plain".into()]);
        assert_eq!(s, "a,b\r\n\"x,y\",plain\r\n");
    }

    #[test]
    fn params_keep_order() {
        let p = Params(vec![
            ("z", ParamValue::Order(1)),
            ("a", ParamValue::Complex(Complex64::new(0.5, -1.0))),
        ]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"z":1,"a":{"re":0.5,"im":-1.0}}"#
        );
    }
}
