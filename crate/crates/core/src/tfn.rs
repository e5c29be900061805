//! Triangular fuzzy numbers and linguistic judgment scales.
//!
//! A [`TriangularFuzzyNumber`] is the `(l, m, r)` triple with linear
//! membership rising from `l` to the mode `m` and falling back to `r`.
//! A [`LinguisticScale`] binds verbal influence labels (for example
//! `NO`/`VL`/`L`/`H`/`VH`) to such triples so that survey matrices can be
//! translated into fuzzy judgments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by fuzzy-number construction and scale lookup.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("invalid triangular fuzzy number ({l}, {m}, {r}): components must be finite with l <= m <= r")]
    InvalidTfn { l: f64, m: f64, r: f64 },
    #[error("linguistic scale needs at least 2 labels, got {count}")]
    TooFewLabels { count: usize },
    #[error("linguistic scale label must not be empty")]
    EmptyLabel,
    #[error("duplicate linguistic scale label: {label:?}")]
    DuplicateLabel { label: String },
    #[error("scale value for label {label:?} must lie within [0, 1]")]
    LabelOutOfUnitRange { label: String },
    #[error("unknown linguistic label: {label:?}")]
    UnknownLabel { label: String },
}

/// A triangular fuzzy number `(l, m, r)` with `l <= m <= r`.
///
/// Degenerate triples with `l == m == r` are permitted and behave as crisp
/// values; their membership function is the indicator of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64, f64)", into = "(f64, f64, f64)")]
pub struct TriangularFuzzyNumber {
    l: f64,
    m: f64,
    r: f64,
}

impl TriangularFuzzyNumber {
    pub fn new(l: f64, m: f64, r: f64) -> Result<Self, FuzzyError> {
        if !(l.is_finite() && m.is_finite() && r.is_finite()) || l > m || m > r {
            return Err(FuzzyError::InvalidTfn { l, m, r });
        }
        Ok(Self { l, m, r })
    }

    /// A crisp value embedded as the degenerate triple `(v, v, v)`.
    pub fn crisp(v: f64) -> Result<Self, FuzzyError> {
        Self::new(v, v, v)
    }

    pub fn lower(&self) -> f64 {
        self.l
    }

    pub fn mode(&self) -> f64 {
        self.m
    }

    pub fn upper(&self) -> f64 {
        self.r
    }

    pub fn is_crisp(&self) -> bool {
        self.l == self.r
    }

    /// Piecewise-linear membership degree of `x`.
    ///
    /// Zero outside `[l, r]`, one exactly at the mode, linear in between.
    /// For a degenerate triple this is the indicator of `m`.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.l || x > self.r {
            0.0
        } else if x == self.m {
            1.0
        } else if x < self.m {
            // l <= x < m implies m > l
            (x - self.l) / (self.m - self.l)
        } else {
            // m < x <= r implies r > m
            (self.r - x) / (self.r - self.m)
        }
    }

    /// Componentwise fuzzy addition.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            l: self.l + other.l,
            m: self.m + other.m,
            r: self.r + other.r,
        }
    }

    /// Fuzzy subtraction `(a.l - b.r, a.m - b.m, a.r - b.l)`.
    ///
    /// The cross pairing keeps the result ordered: the worst case of `a - b`
    /// pairs the lowest `a` with the highest `b`.
    pub fn sub(&self, other: &Self) -> Self {
        Self {
            l: self.l - other.r,
            m: self.m - other.m,
            r: self.r - other.l,
        }
    }

    /// Reverses and sign-flips the triple, so `a.sub(b) == a.add(b.negate())`.
    pub fn negate(&self) -> Self {
        Self {
            l: -self.r,
            m: -self.m,
            r: -self.l,
        }
    }
}

impl TryFrom<(f64, f64, f64)> for TriangularFuzzyNumber {
    type Error = FuzzyError;

    fn try_from((l, m, r): (f64, f64, f64)) -> Result<Self, Self::Error> {
        Self::new(l, m, r)
    }
}

impl From<TriangularFuzzyNumber> for (f64, f64, f64) {
    fn from(t: TriangularFuzzyNumber) -> Self {
        (t.l, t.m, t.r)
    }
}

/// An ordered mapping from judgment labels to triangular fuzzy numbers.
///
/// Labels are unique, matched case-sensitively after trimming surrounding
/// whitespace, and every bound value must lie within `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    entries: Vec<(String, TriangularFuzzyNumber)>,
}

impl LinguisticScale {
    pub fn new<I, S>(entries: I) -> Result<Self, FuzzyError>
    where
        I: IntoIterator<Item = (S, TriangularFuzzyNumber)>,
        S: Into<String>,
    {
        let entries: Vec<(String, TriangularFuzzyNumber)> = entries
            .into_iter()
            .map(|(label, value)| (label.into().trim().to_owned(), value))
            .collect();
        if entries.len() < 2 {
            return Err(FuzzyError::TooFewLabels {
                count: entries.len(),
            });
        }
        for (i, (label, value)) in entries.iter().enumerate() {
            if label.is_empty() {
                return Err(FuzzyError::EmptyLabel);
            }
            if entries[..i].iter().any(|(seen, _)| seen == label) {
                return Err(FuzzyError::DuplicateLabel {
                    label: label.clone(),
                });
            }
            if value.lower() < 0.0 || value.upper() > 1.0 {
                return Err(FuzzyError::LabelOutOfUnitRange {
                    label: label.clone(),
                });
            }
        }
        Ok(Self { entries })
    }

    /// The conventional five-level influence scale:
    /// `NO=(0,0,0.25)`, `VL=(0,0.25,0.5)`, `L=(0.25,0.5,0.75)`,
    /// `H=(0.5,0.75,1)`, `VH=(0.75,1,1)`.
    pub fn default_influence() -> Self {
        let tfn = |l, m, r| TriangularFuzzyNumber::new(l, m, r).expect("static scale is valid");
        Self::new([
            ("NO", tfn(0.0, 0.0, 0.25)),
            ("VL", tfn(0.0, 0.25, 0.5)),
            ("L", tfn(0.25, 0.5, 0.75)),
            ("H", tfn(0.5, 0.75, 1.0)),
            ("VH", tfn(0.75, 1.0, 1.0)),
        ])
        .expect("static scale is valid")
    }

    /// Resolves a label to its fuzzy value. The label is trimmed before the
    /// (case-sensitive) comparison.
    pub fn lookup(&self, label: &str) -> Result<TriangularFuzzyNumber, FuzzyError> {
        let needle = label.trim();
        self.entries
            .iter()
            .find(|(l, _)| l == needle)
            .map(|(_, v)| *v)
            .ok_or_else(|| FuzzyError::UnknownLabel {
                label: needle.to_owned(),
            })
    }

    pub fn entries(&self) -> &[(String, TriangularFuzzyNumber)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
