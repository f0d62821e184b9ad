//! Plain-text form of a series, used by the CLI cache.
//!
//! ```text
//! valuation truncation
//! exponent numerator/denominator
//! ...
//! ```
//!
//! The truncation is the word `exact` for Laurent polynomials. Only nonzero
//! coefficients are listed; the header valuation is that of the first one.

use super::laurent::{LaurentSeries, EXACT};
use crate::error::{Result, SeriesError};
use crate::rat::{self, Rat};

pub fn to_text(s: &LaurentSeries) -> String {
    let t = if s.is_exact() { "exact".to_string() } else { s.truncation().to_string() };
    let mut out = format!("{} {}\n", s.valuation(), t);
    for (e, c) in s.terms() {
        out.push_str(&format!("{} {}\n", e, rat::format(c)));
    }
    out
}

pub fn from_text(text: &str) -> Result<LaurentSeries> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| SeriesError::Parse("empty series text".into()))?;
    let mut h = header.split_whitespace();
    let val: i64 = parse_int(h.next())?;
    let trunc = match h.next() {
        Some("exact") => EXACT,
        other => parse_int(other)?,
    };
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for line in lines {
        let (e, c) = line
            .trim()
            .split_once(char::is_whitespace)
            .ok_or_else(|| SeriesError::Parse(format!("bad coefficient line {line:?}")))?;
        let e: i64 = parse_int(Some(e))?;
        if e < val || e >= trunc || terms.last().is_some_and(|(p, _)| *p >= e) {
            return Err(SeriesError::Parse(format!("exponent {e} out of order or range")));
        }
        terms.push((e, rat::parse(c)?));
    }
    let end = terms.last().map_or(val, |(e, _)| e + 1);
    let mut coeffs = vec![rat::zero(); (end - val) as usize];
    for (e, c) in terms {
        coeffs[(e - val) as usize] = c;
    }
    Ok(LaurentSeries::new(val, coeffs, trunc))
}

fn parse_int(s: Option<&str>) -> Result<i64> {
    let s = s.ok_or_else(|| SeriesError::Parse("missing integer field".into()))?;
    s.trim().parse().map_err(|_| SeriesError::Parse(format!("bad integer {s:?}")))
}
