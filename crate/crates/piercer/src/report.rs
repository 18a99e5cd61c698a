//! Machine-readable reports.
//!
//! Every report has the same envelope: the tool name and version, the
//! subcommand, every parameter that influenced the result, and the result
//! itself. Keys are sorted, so equal inputs give byte-identical output.

use helly_core::helly::{HellyCertificate, HellyReport};
use helly_core::{PiercingCertificate, Point, Rational, Verdict};
use serde_json::{json, Map, Value};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn point(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(rational).collect())
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub struct Report {
    command: &'static str,
    params: Map<String, Value>,
    result: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, params: Map::new(), result: Map::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_owned(), value.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": { "name": TOOL, "version": VERSION },
            "command": self.command,
            "params": self.params,
            "result": self.result,
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports always serialize");
        s.push('\n');
        s
    }
}

pub fn piercing_certificate(c: &PiercingCertificate) -> Value {
    json!({
        "verdict": match c.verdict {
            Verdict::Pierceable => "pierceable",
            Verdict::NotPierceable => "not-pierceable",
        },
        "n": c.n,
        "witness": c.witness.as_deref().map(points),
        "violation": c.violation,
        "violation_minimal": c.violation_minimal,
    })
}

pub fn helly_certificate(c: &HellyCertificate) -> Value {
    json!({
        "class": c.class,
        "representatives": c.representatives.iter().map(|&(k, i)| json!([k, i])).collect::<Vec<_>>(),
        "witness": points(&c.witness),
    })
}

pub fn helly_report(r: &HellyReport) -> Value {
    json!({
        "premise_holds": r.premise_holds,
        "conclusion_holds": r.conclusion_holds,
        "premise_violation": r.premise_violation,
        "conclusion_certificate": r.conclusion_certificate.as_ref().map(helly_certificate),
        "class_count_warning": r.class_count_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use helly_core::geometry::ipt;
    use helly_core::rational::q;

    #[test]
    fn envelope_and_canonical_numbers() {
        let mut r = Report::new("pierce").param("n", 2);
        r.set("witness", points(&[ipt(&[4, 0])]));
        r.set("gamma", rational(&q(3, 12)));
        let text = r.render();
        assert!(text.contains("\"version\": \"0.1.0\""));
        assert!(text.contains("\"4/1\""));
        assert!(text.contains("\"1/4\""));
        assert!(text.find("\"command\"").unwrap() < text.find("\"params\"").unwrap());
    }
}
