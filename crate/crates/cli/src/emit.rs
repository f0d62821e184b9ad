//! Output records and their json / csv / text renderings.

use serde::{Deserialize, Serialize};

use qseries::rat;
use qseries::{LaurentSeries, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub exponent: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormOutput {
    pub form: String,
    pub order: i64,
    pub coefficients: Vec<Coefficient>,
}

impl FormOutput {
    /// Every exponent from the valuation up to `order − 1`, zeros included.
    pub fn new(form: &str, order: i64, s: &LaurentSeries) -> Self {
        let start = if s.is_zero() { 0 } else { s.valuation().min(0) };
        let coefficients = (start..order)
            .map(|e| Coefficient { exponent: e, value: rat::format(&s.coeff(e)) })
            .collect();
        FormOutput { form: form.to_string(), order, coefficients }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlRow {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    pub h: i64,
    pub d1: i64,
    pub d2: i64,
    pub discriminant: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlOutput {
    pub rows: Vec<NlRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YzRow {
    pub h: i64,
    pub m: i64,
    pub r: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub source: String,
    pub hmax: i64,
    pub mmax: i64,
    pub rows: Vec<YzRow>,
    pub all_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchOutput {
    pub at: Vec<i64>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub suite: String,
    pub parameters: Vec<Parameter>,
    pub passed: bool,
    pub compared: usize,
    pub mismatch: Option<MismatchOutput>,
    pub summary: String,
}

impl VerifyOutput {
    pub fn new(suite: &str, parameters: &[(&str, i64)], r: &Report) -> Self {
        VerifyOutput {
            suite: suite.to_string(),
            parameters: parameters.iter().map(|(n, v)| Parameter { name: n.to_string(), value: *v }).collect(),
            passed: r.passed(),
            compared: r.compared,
            mismatch: r.mismatch.as_ref().map(|m| MismatchOutput {
                at: m.at.clone(),
                left: rat::format(&m.left),
                right: rat::format(&m.right),
            }),
            summary: r.to_string(),
        }
    }
}

pub fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("records serialize") + "\n"
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",") + "\n";
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

pub fn render_form(o: &FormOutput, f: Format) -> String {
    match f {
        Format::Json => json(o),
        Format::Csv => csv(
            &["exponent", "value"],
            o.coefficients.iter().map(|c| vec![c.exponent.to_string(), c.value.clone()]),
        ),
        Format::Text => {
            let parts: Vec<String> = o.coefficients.iter().map(|c| format!("q^{}: {}", c.exponent, c.value)).collect();
            parts.join(", ") + "\n"
        }
    }
}

pub fn render_nl(o: &NlOutput, f: Format) -> String {
    let refined = o.rows.first().is_some_and(|r| r.m.is_some());
    match f {
        Format::Json => json(o),
        Format::Csv => {
            let header: &[&str] =
                if refined { &["m", "h", "d1", "d2", "discriminant", "value"] } else { &["h", "d1", "d2", "discriminant", "value"] };
            csv(
                header,
                o.rows.iter().map(|r| {
                    let mut v: Vec<String> = r.m.iter().map(|m| m.to_string()).collect();
                    v.extend([r.h.to_string(), r.d1.to_string(), r.d2.to_string(), r.discriminant.to_string(), r.value.clone()]);
                    v
                }),
            )
        }
        Format::Text => o
            .rows
            .iter()
            .map(|r| {
                let m = r.m.map(|m| format!("m={m} ")).unwrap_or_default();
                format!("{m}h={} d1={} d2={} disc={}: {}\n", r.h, r.d1, r.d2, r.discriminant, r.value)
            })
            .collect(),
    }
}

pub fn render_solve(o: &SolveOutput, f: Format) -> String {
    match f {
        Format::Json => json(o),
        Format::Csv => csv(
            &["h", "m", "r", "expected"],
            o.rows.iter().map(|r| vec![r.h.to_string(), r.m.to_string(), r.r.clone(), r.expected.clone()]),
        ),
        Format::Text => {
            let mut out = format!("source: {}\n", o.source);
            for r in &o.rows {
                out.push_str(&format!("h={} m={}: {}\n", r.h, r.m, r.r));
            }
            if o.all_match {
                out.push_str("ALL MATCH η^-24\n");
            } else {
                let bad = o.rows.iter().find(|r| r.r != r.expected).expect("a mismatching row");
                out.push_str(&format!("MISMATCH at h={} m={}: solved {} expected {}\n", bad.h, bad.m, bad.r, bad.expected));
            }
            out
        }
    }
}

pub fn render_verify(o: &VerifyOutput, f: Format) -> String {
    match f {
        Format::Json => json(o),
        Format::Csv => {
            let (at, l, r) = match &o.mismatch {
                None => (String::new(), String::new(), String::new()),
                Some(m) => (
                    m.at.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    m.left.clone(),
                    m.right.clone(),
                ),
            };
            csv(
                &["suite", "passed", "compared", "at", "left", "right"],
                [vec![o.suite.clone(), o.passed.to_string(), o.compared.to_string(), at, l, r]],
            )
        }
        Format::Text => o.summary.clone() + "\n",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_report_round_trips() {
        let r = Report::fail("harvey-moore", 7, vec![1, -1], qseries::rat::int(1), qseries::rat::frac(-1, 2));
        let v = VerifyOutput::new("harvey-moore", &[("n1", 2)], &r);
        assert!(!v.passed);
        let back: VerifyOutput = serde_json::from_str(&json(&v)).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.mismatch.unwrap().right, "-1/2");
        let csv = render_verify(&v, Format::Csv);
        assert!(csv.ends_with("harvey-moore,false,7,1 -1,1,-1/2\n"));
    }

    #[test]
    fn form_round_trips() {
        let s = qseries::modular::form_by_name("j", 3).unwrap();
        let o = FormOutput::new("j", 3, &s);
        let back: FormOutput = serde_json::from_str(&json(&o)).unwrap();
        assert_eq!(back, o);
    }
}
