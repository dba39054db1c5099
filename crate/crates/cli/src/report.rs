use std::collections::BTreeMap;

use serde::Serialize;

pub const ARTIFACT_VERSION: &str = concat!("qtau ", env!("CARGO_PKG_VERSION"));

/// Which side of the threshold a passing residual lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Below,
    Above,
}

/// Outcome of one check.
///
/// `pass` is derived from `residual` and `threshold` and cannot be set
/// independently. Exact checks use a zero threshold and pass only on an
/// exactly zero residual.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, String>,
    pub order: Option<u32>,
    pub residual: f64,
    pub threshold: f64,
    pub direction: Direction,
    pub conjecture: bool,
    pub wall_time_ms: u64,
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        residual: f64,
        threshold: f64,
        direction: Direction,
    ) -> Self {
        CheckReport {
            check_name: name.into(),
            parameters: BTreeMap::new(),
            order: None,
            residual,
            threshold,
            direction,
            conjecture: false,
            wall_time_ms: 0,
            details: BTreeMap::new(),
        }
    }

    /// A residual given as `log10 |r|`, compared below `10^threshold_exp`.
    pub fn below_log10(name: impl Into<String>, log10: f64, threshold_exp: f64) -> Self {
        CheckReport::new(name, pow10(log10), pow10(threshold_exp), Direction::Below)
    }

    /// An exact check: passes iff the residual has no nonzero coefficient.
    pub fn exact(name: impl Into<String>, nonzero: usize) -> Self {
        let mut r = CheckReport::new(
            name,
            if nonzero == 0 { 0.0 } else { 1.0 },
            0.0,
            Direction::Below,
        );
        r.details
            .insert("nonzero_coefficients".into(), nonzero.to_string());
        r
    }

    /// A check that could not be evaluated.
    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        let mut r = CheckReport::new(name, f64::NAN, 0.0, Direction::Below);
        r.details.insert("error".into(), err.to_string());
        r
    }

    pub fn pass(&self) -> bool {
        if self.residual.is_nan() {
            return false;
        }
        match self.direction {
            Direction::Below => {
                self.residual < self.threshold || (self.residual == 0.0 && self.threshold == 0.0)
            }
            Direction::Above => self.residual > self.threshold,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.insert(k.into(), v.to_string());
        self
    }

    pub fn detail(mut self, k: &str, v: impl ToString) -> Self {
        self.details.insert(k.into(), v.to_string());
        self
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = Some(order);
        self
    }

    pub fn conjecture(mut self) -> Self {
        self.conjecture = true;
        self
    }

    pub fn json(&self) -> JsonReport<'_> {
        JsonReport {
            check_name: &self.check_name,
            parameters: &self.parameters,
            order: self.order.map(|o| o.to_string()),
            residual_max: decimal(self.residual),
            threshold: decimal(self.threshold),
            direction: self.direction,
            pass: self.pass(),
            conjecture: self.conjecture,
            wall_time_ms: self.wall_time_ms.to_string(),
            artifact_version: ARTIFACT_VERSION,
            details: &self.details,
        }
    }
}

#[derive(Serialize)]
pub struct JsonReport<'a> {
    pub check_name: &'a str,
    pub parameters: &'a BTreeMap<String, String>,
    pub order: Option<String>,
    pub residual_max: String,
    pub threshold: String,
    pub direction: Direction,
    pub pass: bool,
    pub conjecture: bool,
    pub wall_time_ms: String,
    pub artifact_version: &'static str,
    pub details: &'a BTreeMap<String, String>,
}

/// `10^x`, with `-inf` mapping to zero.
pub fn pow10(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(x)
    }
}

/// Four significant digits in scientific notation, `"0"` for zero.
pub fn decimal(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.3e}")
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    checks: usize,
    passed: usize,
    failed: Vec<&'a str>,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: Vec<JsonReport<'a>>,
    summary: Summary<'a>,
}

fn summary(reports: &[CheckReport]) -> Summary<'_> {
    let mut failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass())
        .map(|r| r.check_name.as_str())
        .collect();
    failed.sort_unstable();
    Summary {
        checks: reports.len(),
        passed: reports.len() - failed.len(),
        failed,
    }
}

pub fn to_json(reports: &[CheckReport]) -> String {
    let doc = Document {
        reports: reports.iter().map(CheckReport::json).collect(),
        summary: summary(reports),
    };
    serde_json::to_string_pretty(&doc).expect("report serialization")
}

pub fn to_csv(reports: &[CheckReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "check_name",
        "order",
        "residual_max",
        "threshold",
        "direction",
        "pass",
        "conjecture",
        "wall_time_ms",
        "parameters",
        "details",
    ];
    w.write_record(header).expect("csv header");
    for r in reports {
        let j = r.json();
        let kv = |m: &BTreeMap<String, String>| {
            m.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";")
        };
        let dir = if r.direction == Direction::Below {
            "below"
        } else {
            "above"
        };
        w.write_record([
            j.check_name,
            j.order.as_deref().unwrap_or(""),
            &j.residual_max,
            &j.threshold,
            dir,
            if j.pass { "true" } else { "false" },
            if j.conjecture { "true" } else { "false" },
            &j.wall_time_ms,
            &kv(j.parameters),
            &kv(j.details),
        ])
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_follows_direction() {
        assert!(CheckReport::below_log10("a", -31.0, -30.0).pass());
        assert!(!CheckReport::below_log10("a", -29.0, -30.0).pass());
        assert!(CheckReport::below_log10("a", f64::NEG_INFINITY, -30.0).pass());
        assert!(CheckReport::new("a", 1e-3, 1e-6, Direction::Above).pass());
        assert!(!CheckReport::new("a", 1e-9, 1e-6, Direction::Above).pass());
        assert!(CheckReport::exact("a", 0).pass());
        assert!(!CheckReport::exact("a", 2).pass());
        assert!(!CheckReport::error("a", "boom").pass());
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(1.5e-45), "1.500e-45");
        assert_eq!(decimal(pow10(-30.0)), "1.000e-30");
    }

    #[test]
    fn json_uses_strings_for_numbers() {
        let r = CheckReport::below_log10("x", -40.0, -30.0)
            .with_order(4)
            .param("seed", 1);
        let v: serde_json::Value = serde_json::from_str(&to_json(&[r])).unwrap();
        let rep = &v["reports"][0];
        assert_eq!(rep["residual_max"], "1.000e-40");
        assert_eq!(rep["order"], "4");
        assert_eq!(rep["pass"], true);
        assert_eq!(v["summary"]["passed"], 1);
    }
}
