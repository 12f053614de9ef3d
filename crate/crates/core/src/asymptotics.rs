//! Behaviour of the spectrum as `k` grows.
//!
//! Eight of the catalog roots form monotone sequences in `k` with known
//! limits. Two of them (`O-iv-high`, `E-iv-mid`) approach 1.5 with a gap of
//! order `2^{-k}`, which drops below the spacing of `f64` near 1.5 by
//! `k ≈ 50`. Sequences are therefore solved for the offset `δ = λ - limit`,
//! with the case polynomial evaluated from `λ - 1`, `λ - 2` and `2λ - 3`
//! written in terms of `δ`, and bisected to full `f64` resolution.
//! Monotonicity is checked on `δ`, which is the same as checking `λ`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cases::{raw_catalog, CaseId, Parity};
use crate::error::{Error, Result};
use crate::rootfind::{bisect, isolate, RootFindError, DEFAULT_GRID, DEFAULT_TOL};
use crate::spectrum::compute_spectrum;
use crate::MAX_K;

/// Limit points of the spectrum as `k → ∞`.
pub const LIMIT_POINTS: [f64; 4] = [0.0, 1.0, 1.5, 2.0];

/// Acceptance radius for the clustering check at `k ≈ 100`. Chosen for the
/// implementation, not derived.
pub const CLUSTER_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    StrictlyDecreasing,
    StrictlyIncreasing,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::StrictlyDecreasing => "strictly decreasing",
            Direction::StrictlyIncreasing => "strictly increasing",
        })
    }
}

/// Direction and limit of the monotone root sequences.
pub fn monotone_limit(case: CaseId) -> Option<(Direction, f64)> {
    use CaseId::*;
    use Direction::*;
    Some(match case {
        OddIi => (StrictlyDecreasing, 0.0),
        EvenIiHigh => (StrictlyDecreasing, 2.0),
        OddIvHigh => (StrictlyIncreasing, 1.5),
        OddIii => (StrictlyDecreasing, 0.0),
        OddIvLow => (StrictlyDecreasing, 0.0),
        EvenIiiHigh => (StrictlyDecreasing, 2.0),
        EvenIvHigh => (StrictlyDecreasing, 2.0),
        EvenIvMid => (StrictlyDecreasing, 1.5),
        _ => return None,
    })
}

/// The eight cases [`sequence`] accepts.
pub const MONOTONE_CASES: [CaseId; 8] = [
    CaseId::OddIi,
    CaseId::EvenIiHigh,
    CaseId::OddIvHigh,
    CaseId::OddIii,
    CaseId::OddIvLow,
    CaseId::EvenIiiHigh,
    CaseId::EvenIvHigh,
    CaseId::EvenIvMid,
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceCheck {
    pub case_id: CaseId,
    pub k_values: Vec<usize>,
    /// `claimed_limit + offsets[i]`, rounded to `f64`.
    pub lambdas: Vec<f64>,
    /// Root minus limit, resolved independently of the rounding of `λ`.
    pub offsets: Vec<f64>,
    pub direction: Direction,
    pub claimed_limit: f64,
    pub final_gap: f64,
    /// Gap at the middle element of `k_values`.
    pub midpoint_gap: f64,
    pub monotone: bool,
    pub within_bracket: bool,
    pub converging: bool,
}

impl SequenceCheck {
    pub fn passed(&self) -> bool {
        self.monotone && self.within_bracket && self.converging
    }
}

/// Root of `case` at uniformity `k` as an offset from `limit`.
pub(crate) fn root_offset(case: CaseId, k: usize, limit: f64) -> Result<(f64, bool)> {
    let eq = raw_catalog(k)?
        .into_iter()
        .find(|c| c.id == case)
        .ok_or_else(|| Error::domain(format!("case {case} not in catalog for k = {k}")))?;
    let (lo, hi) = eq.interval();
    let (dlo, dhi) = (lo - limit, hi - limit);
    let f = |d: f64| eq.eval_offset(limit, d);
    let brackets = isolate(f, dlo, dhi, 1, DEFAULT_GRID).map_err(|e| match e {
        RootFindError::CountMismatch {
            expected, found, ..
        } => Error::RootCount {
            case,
            k,
            lo,
            hi,
            expected,
            found,
        },
        other => other.into(),
    })?;
    let (a, b) = brackets[0];
    let offset = if a == b {
        a
    } else {
        bisect(f, a, b, f64::MIN_POSITIVE)?.value
    };
    Ok((offset, dlo < offset && offset < dhi))
}

/// Solves one monotone case for every matching-parity `k` up to `k_max`
/// and checks direction, bracket membership and convergence.
pub fn sequence(case: CaseId, k_max: usize) -> Result<SequenceCheck> {
    let (direction, limit) = monotone_limit(case)
        .ok_or_else(|| Error::domain(format!("case {case} has no monotone-limit statement")))?;
    let k_min = match case.parity() {
        Parity::Odd => 3,
        Parity::Even => 4,
    };
    if k_max < k_min || k_max > MAX_K {
        return Err(Error::domain(format!(
            "k_max = {k_max} outside [{k_min}, {MAX_K}]"
        )));
    }
    let k_values: Vec<usize> = (k_min..=k_max).step_by(2).collect();
    let solved = k_values
        .iter()
        .map(|&k| root_offset(case, k, limit))
        .collect::<Result<Vec<_>>>()?;
    let offsets: Vec<f64> = solved.iter().map(|s| s.0).collect();
    let within_bracket = solved.iter().all(|s| s.1);
    let monotone = offsets.windows(2).all(|w| match direction {
        Direction::StrictlyDecreasing => w[1] < w[0],
        Direction::StrictlyIncreasing => w[1] > w[0],
    });
    let final_gap = offsets.last().map_or(f64::NAN, |d| d.abs());
    let midpoint_gap = offsets[offsets.len() / 2].abs();
    Ok(SequenceCheck {
        case_id: case,
        lambdas: offsets.iter().map(|d| limit + d).collect(),
        k_values,
        direction,
        claimed_limit: limit,
        final_gap,
        midpoint_gap,
        monotone,
        within_bracket,
        converging: offsets.len() > 1 && final_gap < midpoint_gap,
        offsets,
    })
}

/// `-ln(t+1)/ln(t) + 1` with `t = 1 - λ`, which equals `k` at the `O-ii`
/// root.
pub fn odd_tail_k_estimate(lambda: f64) -> f64 {
    -(2.0 - lambda).ln() / (-lambda).ln_1p() + 1.0
}

/// `-ln(t-1)/ln(t) + 1` with `t = λ - 1`, which equals `k` at the
/// `E-ii-high` root.
pub fn even_tail_k_estimate(lambda: f64) -> f64 {
    -(lambda - 2.0).ln() / (lambda - 1.0).ln() + 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub lambdas: Vec<f64>,
    pub case_ids: Vec<Vec<CaseId>>,
    pub nearest_limit: Vec<f64>,
    pub distances: Vec<f64>,
    pub max_cluster_distance: f64,
    /// Catalog roots in this row that failed eigenvector verification.
    pub unverified: Vec<CaseId>,
    pub count_matches_claim: bool,
}

fn nearest_limit(lambda: f64) -> (f64, f64) {
    LIMIT_POINTS.iter().map(|&p| (p, (lambda - p).abs())).fold(
        (f64::NAN, f64::INFINITY),
        |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        },
    )
}

/// Largest distance from any value to the nearest limit point.
pub fn cluster_distance_of(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|&l| nearest_limit(l).1)
        .fold(0.0, f64::max)
}

/// [`cluster_distance_of`] applied to the verified spectrum of `G_{k,3}`.
pub fn cluster_distances(k: usize) -> Result<f64> {
    Ok(cluster_distance_of(
        &compute_spectrum(k, DEFAULT_TOL)?.lambdas(),
    ))
}

fn sweep_row(k: usize) -> Result<SweepRow> {
    let report = compute_spectrum(k, DEFAULT_TOL)?;
    let lambdas = report.lambdas();
    let (nearest, distances): (Vec<f64>, Vec<f64>) =
        lambdas.iter().map(|&l| nearest_limit(l)).unzip();
    Ok(SweepRow {
        k,
        max_cluster_distance: distances.iter().copied().fold(0.0, f64::max),
        case_ids: report.entries.iter().map(|e| e.case_ids.clone()).collect(),
        unverified: report.unverified().map(|c| c.case_id).collect(),
        count_matches_claim: report.count_matches_claim,
        lambdas,
        nearest_limit: nearest,
        distances,
    })
}

/// One [`SweepRow`] per `k` in `k_min..=k_max`, computed in parallel and
/// returned in order of `k`.
pub fn sweep(k_min: usize, k_max: usize) -> Result<Vec<SweepRow>> {
    if k_min < 3 || k_max < k_min || k_max > MAX_K {
        return Err(Error::domain(format!(
            "range [{k_min}, {k_max}] must satisfy 3 <= k_min <= k_max <= {MAX_K}"
        )));
    }
    (k_min..=k_max).into_par_iter().map(sweep_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_tail_sequence_short() {
        let s = sequence(CaseId::OddIi, 7).unwrap();
        assert_eq!(s.k_values, vec![3, 5, 7]);
        assert!((s.lambdas[0] - 0.245_122_333_753_307_2).abs() < 1e-13);
        assert!(s.monotone && s.within_bracket && s.converging);
        assert_eq!(s.direction, Direction::StrictlyDecreasing);
    }

    #[test]
    fn one_sided_high_increases_below_bracket_end() {
        let s = sequence(CaseId::OddIvHigh, 7).unwrap();
        assert_eq!(s.direction, Direction::StrictlyIncreasing);
        assert!(s.monotone);
        for (&k, &l) in s.k_values.iter().zip(&s.lambdas) {
            assert!(l < 2.0 * k as f64 / (k as f64 + 1.0));
            assert!(l > 1.0);
        }
    }

    #[test]
    fn even_tail_sequence_short() {
        let s = sequence(CaseId::EvenIiHigh, 8).unwrap();
        assert_eq!(s.k_values, vec![4, 6, 8]);
        assert!((s.lambdas[0] - 2.380_277_569_097_614).abs() < 1e-12);
        assert!(s.monotone);
        assert!(s.lambdas.iter().all(|&l| l > 2.0));
    }

    #[test]
    fn offsets_resolve_exponential_approach() {
        let s = sequence(CaseId::EvenIvMid, 60).unwrap();
        assert!(s.passed());
        // Gap shrinks roughly fourfold per step of 2 in k.
        let last = s.offsets.len() - 1;
        let ratio = s.offsets[last - 1] / s.offsets[last];
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
        assert!(s.offsets[last] > 0.0);
    }

    #[test]
    fn sequence_rejects_unsupported() {
        assert!(matches!(sequence(CaseId::OddV, 9), Err(Error::Domain(_))));
        assert!(matches!(sequence(CaseId::OddIi, 2), Err(Error::Domain(_))));
        assert!(matches!(
            sequence(CaseId::OddIi, 600),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cluster_distance_examples() {
        assert_eq!(cluster_distance_of(&LIMIT_POINTS), 0.0);
        let d3 = cluster_distances(3).unwrap();
        assert!(d3 > 0.25);
        // O-iii at k = 3 is the farthest point, 0.5344 from 0 and 0.4656 from 1.
        assert!((d3 - (1.0 - 0.534_428_768_123_231_9)).abs() < 1e-10);
        let d4 = cluster_distances(4).unwrap();
        assert!(d4.is_finite() && d4 > 0.0);
    }

    #[test]
    fn sweep_rows() {
        let rows = sweep(3, 3).unwrap();
        assert_eq!(rows.len(), 1);
        for v in [0.0, 1.0, 2.0] {
            assert!(rows[0].lambdas.contains(&v));
        }
        let rows = sweep(3, 8).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            (3..=8).collect::<Vec<_>>()
        );
        for r in &rows {
            assert_eq!(r.lambdas.len(), r.nearest_limit.len());
            assert!(r.lambdas.windows(2).all(|w| w[0] < w[1]));
            assert!(r.nearest_limit.iter().all(|p| LIMIT_POINTS.contains(p)));
        }
        assert!(matches!(sweep(2, 5), Err(Error::Domain(_))));
        assert!(matches!(sweep(6, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn sweep_near_one_hundred() {
        // Odd rows cluster within 0.05; the even row does not: E-iii-high,
        // E-iv-high and E-vi-high all sit about 0.06 above 2 at k = 100.
        let rows = sweep(99, 101).unwrap();
        assert!(rows[0].max_cluster_distance < CLUSTER_TOL);
        assert!(rows[2].max_cluster_distance < CLUSTER_TOL);
        assert!(rows[1].max_cluster_distance > CLUSTER_TOL);
        assert!((rows[1].max_cluster_distance - 0.060_170_026_309_03).abs() < 1e-9);
    }

    #[test]
    fn tail_identities() {
        for k in (3..=21).step_by(2) {
            let (d, _) = root_offset(CaseId::OddIi, k, 0.0).unwrap();
            assert!((odd_tail_k_estimate(d) - k as f64).abs() < 1e-6);
        }
        for k in (4..=20).step_by(2) {
            let (d, _) = root_offset(CaseId::EvenIiHigh, k, 2.0).unwrap();
            assert!((even_tail_k_estimate(2.0 + d) - k as f64).abs() < 1e-6);
        }
    }
}
