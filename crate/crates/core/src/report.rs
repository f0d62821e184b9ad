//! Outcome of an identity check.

use std::fmt;

use std::ops::Range;

use crate::error::{Result, SeriesError};
use crate::rat::{self, Rat};
use crate::series::{self, BiSeries, LaurentSeries};

/// First coefficient where the two sides of an identity disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Exponents (one per variable) or table key of the offending entry.
    pub at: Vec<i64>,
    pub left: Rat,
    pub right: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    /// Number of coefficients or entries compared.
    pub compared: usize,
    pub mismatch: Option<Mismatch>,
    pub note: Option<String>,
}

impl Report {
    pub fn pass(name: impl Into<String>, compared: usize) -> Self {
        Report { name: name.into(), compared, mismatch: None, note: None }
    }

    pub fn fail(name: impl Into<String>, compared: usize, at: Vec<i64>, left: Rat, right: Rat) -> Self {
        Report { name: name.into(), compared, mismatch: Some(Mismatch { at, left, right }), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Combines several reports into one; the first failure wins.
    pub fn all(name: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Self {
        let mut compared = 0;
        let mut mismatch = None;
        for p in parts {
            compared += p.compared;
            if mismatch.is_none() {
                mismatch = p.mismatch;
            }
        }
        Report { name: name.into(), compared, mismatch, note: None }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "{}: ok ({} coefficients)", self.name, self.compared)?,
            Some(m) => write!(
                f,
                "{}: MISMATCH at {:?}: left {} right {}",
                self.name,
                m.at,
                rat::format(&m.left),
                rat::format(&m.right)
            )?,
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Compares two one-variable series on `range`. Every exponent of the range
/// must be known on both sides.
pub fn compare_series(name: &str, lhs: &LaurentSeries, rhs: &LaurentSeries, range: Range<i64>) -> Result<Report> {
    let known = lhs.truncation().min(rhs.truncation());
    if known < range.end {
        return Err(SeriesError::InsufficientPrecision { needed: range.end, available: known });
    }
    let count = (range.end - range.start).max(0) as usize;
    Ok(match lhs.first_difference(rhs, range.start, range.end) {
        None => Report::pass(name, count),
        Some((e, l, r)) => Report::fail(name, count, vec![e], l, r),
    })
}

/// Compares two nested series on a rectangular window of exponents.
pub fn compare_bi(name: &str, lhs: &BiSeries, rhs: &BiSeries, outer: Range<i64>, inner: Range<i64>) -> Result<Report> {
    let count = (outer.end - outer.start).max(0) as usize * (inner.end - inner.start).max(0) as usize;
    Ok(match series::bi_first_difference(lhs, rhs, outer, inner)? {
        None => Report::pass(name, count),
        Some((a, b, l, r)) => Report::fail(name, count, vec![a, b], l, r),
    })
}
