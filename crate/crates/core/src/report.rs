//! Structured results of quantitative checks and their text/CSV renderings.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// computed ≤ bound + tol
    Le,
    /// computed < bound
    Lt,
    /// computed ≥ bound − tol
    Ge,
    /// |computed − bound| ≤ tol
    Eq,
    /// computed is finite; the bound is ignored
    Finite,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Finite => "finite",
        })
    }
}

/// One computed quantity compared against a bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub computed: f64,
    pub relation: Relation,
    pub bound: f64,
    pub tolerance: f64,
    /// The statement the bound comes from.
    pub source: String,
    pub passed: bool,
}

impl BoundCheck {
    pub fn new(
        name: impl Into<String>,
        computed: f64,
        relation: Relation,
        bound: f64,
        tolerance: f64,
        source: impl Into<String>,
    ) -> Self {
        let passed = match relation {
            Relation::Le => computed <= bound + tolerance,
            Relation::Lt => computed < bound,
            Relation::Ge => computed >= bound - tolerance,
            Relation::Eq => (computed - bound).abs() <= tolerance,
            Relation::Finite => computed.is_finite(),
        };
        BoundCheck {
            name: name.into(),
            computed,
            relation,
            bound,
            tolerance,
            source: source.into(),
            passed,
        }
    }

    /// A check that could not be evaluated (e.g. the construction was rejected).
    pub fn failed(
        name: impl Into<String>,
        reason: impl Into<String>,
        source: impl Into<String>,
    ) -> Self {
        BoundCheck {
            name: format!("{} [{}]", name.into(), reason.into()),
            computed: f64::NAN,
            relation: Relation::Finite,
            bound: f64::NAN,
            tolerance: 0.0,
            source: source.into(),
            passed: false,
        }
    }
}

/// Tabular sweep data; `header[0]` names the swept parameter.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Sweep {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Sweep {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Sweep {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(f64::to_string))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, f64>,
    pub values: Vec<(String, f64)>,
    pub bounds: Vec<BoundCheck>,
    /// Observations that do not affect `passed`.
    pub flags: Vec<String>,
    pub sweep: Option<Sweep>,
    pub passed: bool,
    pub runtime_ms: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            parameters: BTreeMap::new(),
            values: Vec::new(),
            bounds: Vec::new(),
            flags: Vec::new(),
            sweep: None,
            passed: true,
            runtime_ms: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, name: &str, value: f64) -> &mut Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn value(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.values.push((name.into(), value));
        self
    }

    pub fn bound(&mut self, check: BoundCheck) -> &mut Self {
        self.passed &= check.passed;
        self.bounds.push(check);
        self
    }

    pub fn flag(&mut self, note: impl Into<String>) -> &mut Self {
        self.flags.push(note.into());
        self
    }

    pub fn finish(mut self) -> Self {
        self.passed = self.bounds.iter().all(|b| b.passed);
        if let Some(start) = self.started.take() {
            self.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bounds.iter().filter(|b| !b.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "== {}: {} ({:.1} ms)",
            self.check_name,
            if self.passed { "PASS" } else { "FAIL" },
            self.runtime_ms
        )?;
        if !self.parameters.is_empty() {
            let params: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(f, "  params: {}", params.join(" "))?;
        }
        for (k, v) in &self.values {
            writeln!(f, "  value {k} = {v}")?;
        }
        for b in &self.bounds {
            let status = if b.passed { "PASS" } else { "FAIL" };
            if b.relation == Relation::Finite {
                writeln!(
                    f,
                    "  [{status}] {}: {} is finite ({})",
                    b.name, b.computed, b.source
                )?;
            } else {
                writeln!(
                    f,
                    "  [{status}] {}: {} {} {} (tol {:e}; {})",
                    b.name, b.computed, b.relation, b.bound, b.tolerance, b.source
                )?;
            }
        }
        for note in &self.flags {
            writeln!(f, "  flag: {note}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(BoundCheck::new("a", 1.0, Relation::Le, 1.0, 0.0, "").passed);
        assert!(!BoundCheck::new("a", 1.0, Relation::Lt, 1.0, 0.0, "").passed);
        assert!(BoundCheck::new("a", 0.9999, Relation::Ge, 1.0, 1e-3, "").passed);
        assert!(!BoundCheck::new("a", f64::NAN, Relation::Eq, 1.0, 1.0, "").passed);
        assert!(!BoundCheck::new("a", f64::INFINITY, Relation::Finite, 0.0, 0.0, "").passed);
    }

    #[test]
    fn report_passes_iff_all_bounds_pass() {
        let mut r = VerificationReport::new("demo");
        r.bound(BoundCheck::new("x", 1.0, Relation::Le, 2.0, 0.0, "s"));
        assert!(r.clone().finish().passed);
        r.bound(BoundCheck::new("y", 3.0, Relation::Le, 2.0, 0.0, "s"));
        let r = r.finish();
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
        let text = r.to_string();
        assert!(text.starts_with("== demo: FAIL"));
        assert!(text.contains("[FAIL] y: 3 <= 2"));
    }

    #[test]
    fn sweep_csv() {
        let mut s = Sweep::new(["n", "value"]);
        s.push(vec![1.0, 0.5]);
        s.push(vec![2.0, 0.25]);
        assert_eq!(s.to_csv(), "n,value\n1,0.5\n2,0.25\n");
        assert_eq!(s.column("value").unwrap(), vec![0.5, 0.25]);
    }
}
