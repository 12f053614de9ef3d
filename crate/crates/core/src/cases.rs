//! Characteristic equations of the Laplacian H-spectrum of `G_{k,3}`.
//!
//! Each catalog entry is either a fixed eigenvalue (`0`, `1`, `2`) or a
//! scalar equation together with an open interval holding exactly one of its
//! roots. Odd `k` gives 3 fixed values and 5 bracketed roots, even `k` gives 3
//! fixed values and 11 bracketed roots. Whether a bracketed root really is an
//! H-eigenvalue is decided later by the residual check in
//! [`crate::spectrum`], not here.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootfind::{isolate, DEFAULT_GRID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(k: usize) -> Self {
        if k % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

macro_rules! case_ids {
    ($($var:ident => $tag:literal, $parity:ident;)+) => {
        /// Provenance tag of a catalog entry. Serialises as its literal tag.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CaseId {
            $($var,)+
        }

        impl CaseId {
            pub const ALL: &'static [CaseId] = &[$(CaseId::$var,)+];

            pub fn tag(self) -> &'static str {
                match self {
                    $(CaseId::$var => $tag,)+
                }
            }

            pub fn parity(self) -> Parity {
                match self {
                    $(CaseId::$var => Parity::$parity,)+
                }
            }
        }
    };
}

case_ids! {
    OddZero => "O-i-zero", Odd;
    OddTwo => "O-i-two", Odd;
    OddOne => "O-lambda1", Odd;
    OddIi => "O-ii", Odd;
    OddIii => "O-iii", Odd;
    OddIvLow => "O-iv-low", Odd;
    OddIvHigh => "O-iv-high", Odd;
    OddV => "O-v", Odd;
    EvenZero => "E-i-zero", Even;
    EvenTwo => "E-i-two", Even;
    EvenOne => "E-lambda1", Even;
    EvenIiLow => "E-ii-low", Even;
    EvenIiHigh => "E-ii-high", Even;
    EvenIiiLow => "E-iii-low", Even;
    EvenIiiHigh => "E-iii-high", Even;
    EvenIvLow => "E-iv-low", Even;
    EvenIvMid => "E-iv-mid", Even;
    EvenIvHigh => "E-iv-high", Even;
    EvenV => "E-v", Even;
    EvenViLow => "E-vi-low", Even;
    EvenViHigh => "E-vi-high", Even;
    EvenVii => "E-vii", Even;
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .iter()
            .copied()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::domain(format!("unknown case tag {s:?}")))
    }
}

impl Serialize for CaseId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Which scalar equation a bracketed case solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Equation {
    /// `(λ-2)(1-λ)^{k-1} + 1`
    OddTail,
    /// `(λ-2)^2 (1-λ)^{k-2} - 1`
    OddMiddle,
    /// `(λ-2)^2 (1-λ)^{k-1} + 2λ - 3`
    OddOneSided,
    /// `[(λ-2)(1-λ)^{k-1} + 1]^2 - (1-λ)^k`
    OddBoth,
    /// `(λ-2)(λ-1)^{k-1} - 1`
    EvenTail,
    /// `(λ-2)^2 (λ-1)^{k-2} - 1`
    EvenMiddle,
    /// `(λ-2)^2 (λ-1)^{k-1} - 2λ + 3`
    EvenOneSided,
    /// `(λ-2)^2 (1-λ)^{k-1} + 1`
    EvenFlipped,
    /// `[(λ-2)(λ-1)^{k-1} - 1]^2 - (λ-1)^k`
    EvenBothMinus,
    /// `[(λ-2)(λ-1)^{k-1} + 1]^2 - (1-λ)^k`
    EvenBothPlus,
}

/// `λ - 1`, `λ - 2` and `2λ - 3`, the only combinations of λ the case
/// equations use. Passing them separately lets callers evaluate near a limit
/// point without cancellation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Shifted {
    pub minus_one: f64,
    pub minus_two: f64,
    pub twice_minus_three: f64,
}

impl Shifted {
    pub fn at(lambda: f64) -> Self {
        Shifted {
            minus_one: lambda - 1.0,
            minus_two: lambda - 2.0,
            twice_minus_three: 2.0 * lambda - 3.0,
        }
    }

    /// `λ = limit + offset`, with each combination formed from the offset.
    pub fn around(limit: f64, offset: f64) -> Self {
        Shifted {
            minus_one: (limit - 1.0) + offset,
            minus_two: (limit - 2.0) + offset,
            twice_minus_three: (2.0 * limit - 3.0) + 2.0 * offset,
        }
    }
}

impl Equation {
    pub fn eval(self, k: usize, s: Shifted) -> f64 {
        let k = k as i32;
        let a = s.minus_one;
        let b = s.minus_two;
        let one_minus = -a;
        match self {
            Equation::OddTail => b * one_minus.powi(k - 1) + 1.0,
            Equation::OddMiddle => b * b * one_minus.powi(k - 2) - 1.0,
            Equation::OddOneSided => b * b * one_minus.powi(k - 1) + s.twice_minus_three,
            Equation::OddBoth => {
                let h = b * one_minus.powi(k - 1) + 1.0;
                h * h - one_minus.powi(k)
            }
            Equation::EvenTail => b * a.powi(k - 1) - 1.0,
            Equation::EvenMiddle => b * b * a.powi(k - 2) - 1.0,
            Equation::EvenOneSided => b * b * a.powi(k - 1) - s.twice_minus_three,
            Equation::EvenFlipped => b * b * one_minus.powi(k - 1) + 1.0,
            Equation::EvenBothMinus => {
                let h = b * a.powi(k - 1) - 1.0;
                h * h - a.powi(k)
            }
            Equation::EvenBothPlus => {
                let h = b * a.powi(k - 1) + 1.0;
                h * h - one_minus.powi(k)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CaseRoot {
    Fixed { value: f64 },
    Bracketed { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseEquation {
    pub id: CaseId,
    pub k: usize,
    pub root: CaseRoot,
    pub(crate) equation: Option<Equation>,
}

impl CaseEquation {
    /// Number of roots the bracket holds; 0 for fixed values.
    pub fn expected_roots(&self) -> usize {
        match self.root {
            CaseRoot::Fixed { .. } => 0,
            CaseRoot::Bracketed { .. } => 1,
        }
    }

    /// `(lo, hi)` for a bracket, `(v, v)` for a fixed value.
    pub fn interval(&self) -> (f64, f64) {
        match self.root {
            CaseRoot::Fixed { value } => (value, value),
            CaseRoot::Bracketed { lo, hi } => (lo, hi),
        }
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        match self.equation {
            Some(eq) => eq.eval(self.k, Shifted::at(lambda)),
            None => match self.root {
                CaseRoot::Fixed { value } => lambda - value,
                CaseRoot::Bracketed { .. } => unreachable!("bracketed case without equation"),
            },
        }
    }

    /// Evaluates the case function at `λ = limit + offset`, forming `λ - 1`,
    /// `λ - 2` and `2λ - 3` from the offset so tiny offsets survive.
    pub fn eval_offset(&self, limit: f64, offset: f64) -> f64 {
        match self.equation {
            Some(eq) => eq.eval(self.k, Shifted::around(limit, offset)),
            None => (limit + offset) - self.interval().0,
        }
    }
}

/// Evaluates the case polynomial at `lambda`. For fixed-value cases this is
/// `lambda - value`.
pub fn eval_case(case: &CaseEquation, lambda: f64) -> f64 {
    case.eval(lambda)
}

fn fixed(id: CaseId, k: usize, value: f64) -> CaseEquation {
    CaseEquation {
        id,
        k,
        root: CaseRoot::Fixed { value },
        equation: None,
    }
}

fn bracketed(id: CaseId, k: usize, equation: Equation, lo: f64, hi: f64) -> CaseEquation {
    CaseEquation {
        id,
        k,
        root: CaseRoot::Bracketed { lo, hi },
        equation: Some(equation),
    }
}

/// Catalog entries without the sign-change validation of [`case_catalog`].
pub(crate) fn raw_catalog(k: usize) -> Result<Vec<CaseEquation>> {
    use CaseId::*;
    use Equation::*;
    if k < 3 {
        return Err(Error::domain(format!(
            "uniformity k = {k} must be at least 3"
        )));
    }
    let mid_hi = 2.0 * k as f64 / (k as f64 + 1.0);
    let cat = match Parity::of(k) {
        Parity::Odd => vec![
            fixed(OddZero, k, 0.0),
            fixed(OddOne, k, 1.0),
            fixed(OddTwo, k, 2.0),
            bracketed(OddIi, k, OddTail, 0.0, 1.0),
            bracketed(OddIii, k, OddMiddle, 0.0, 1.0),
            bracketed(OddIvLow, k, OddOneSided, 0.0, 1.0),
            bracketed(OddIvHigh, k, OddOneSided, 1.0, mid_hi),
            bracketed(OddV, k, OddBoth, 0.0, 1.0),
        ],
        Parity::Even => vec![
            fixed(EvenZero, k, 0.0),
            fixed(EvenOne, k, 1.0),
            fixed(EvenTwo, k, 2.0),
            bracketed(EvenIiLow, k, EvenTail, 0.0, 1.0),
            bracketed(EvenIiHigh, k, EvenTail, 2.0, 3.0),
            bracketed(EvenIiiLow, k, EvenMiddle, 0.0, 1.0),
            bracketed(EvenIiiHigh, k, EvenMiddle, 2.0, 3.0),
            bracketed(EvenIvLow, k, EvenOneSided, 0.0, 1.0),
            bracketed(EvenIvMid, k, EvenOneSided, 1.0, mid_hi),
            bracketed(EvenIvHigh, k, EvenOneSided, 2.0, 3.0),
            bracketed(EvenV, k, EvenFlipped, 2.0, 3.0),
            bracketed(EvenViLow, k, EvenBothMinus, 0.0, 1.0),
            bracketed(EvenViHigh, k, EvenBothMinus, 2.0, 3.0),
            bracketed(EvenVii, k, EvenBothPlus, 2.0, 3.0),
        ],
    };
    Ok(cat)
}

/// Builds the catalog for uniformity `k` and checks that every bracket shows
/// exactly one sign change on the default grid.
pub fn case_catalog(k: usize) -> Result<Vec<CaseEquation>> {
    let cat = raw_catalog(k)?;
    for case in &cat {
        check_bracket(case, DEFAULT_GRID)?;
    }
    Ok(cat)
}

/// Runs grid isolation on a bracketed case, mapping a count mismatch to an
/// error that names the case.
pub(crate) fn check_bracket(case: &CaseEquation, grid: usize) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = match case.root {
        CaseRoot::Fixed { .. } => return Ok(Vec::new()),
        CaseRoot::Bracketed { lo, hi } => (lo, hi),
    };
    isolate(|l| case.eval(l), lo, hi, case.expected_roots(), grid).map_err(|e| match e {
        crate::rootfind::RootFindError::CountMismatch {
            expected, found, ..
        } => Error::RootCount {
            case: case.id,
            k: case.k,
            lo,
            hi,
            expected,
            found,
        },
        other => other.into(),
    })
}
