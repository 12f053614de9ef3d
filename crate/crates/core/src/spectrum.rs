//! Full Laplacian H-spectrum of `G_{k,3}`.
//!
//! Every catalog root gets a witness eigenvector built from the block
//! structure of `G_{k,3}`: the first edge's private vertices `1..k-1`, the
//! intersection vertex `k`, the middle block `k+1..2k-2`, the intersection
//! vertex `2k-1` and the last block `2k..3k-2`. Inside each populated block
//! all entries share one magnitude:
//!
//! * end blocks: `x_v / (1-λ)` next to intersection vertex `v`,
//! * middle block: `sqrt(|x_k x_{2k-1} / (1-λ)|)`.
//!
//! The remaining freedom is a handful of signs (the sign of the ratio
//! `x_k / x_{2k-1}`, the overall middle sign, and whether one middle entry is
//! flipped). All of them are tried and the first vector whose residual under
//! [`crate::multilinear::eig_residual`] is below [`RESIDUAL_TOL`] is kept.
//! A root with no passing assignment is kept in the report as unverified.

use serde::Serialize;

use crate::cases::{check_bracket, raw_catalog, CaseEquation, CaseId, CaseRoot, Parity};
use crate::error::{Error, Result};
use crate::hypergraph::{build_loose_path, LoosePath};
use crate::multilinear::{eig_residual, normalize_max, Eigenpair};
use crate::rootfind::{bisect, Root, DEFAULT_GRID, DEFAULT_TOL};
use crate::{MAX_K, RESIDUAL_TOL};

/// Default clustering radius for merging roots into one eigenvalue.
pub const DEFAULT_DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Bisection tolerance on λ.
    pub tol: f64,
    pub dedup_tol: f64,
    /// Cells used when isolating each bracket.
    pub grid: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            tol: DEFAULT_TOL,
            dedup_tol: DEFAULT_DEDUP_TOL,
            grid: DEFAULT_GRID,
        }
    }
}

/// Outcome for a single catalog entry, before deduplication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub case_id: CaseId,
    pub interval_lo: f64,
    pub interval_hi: f64,
    pub lambda: f64,
    /// Residual of the witness, or of the best failed attempt.
    pub residual: f64,
    /// Index into `SpectrumReport::entries`; `None` when unverified.
    pub cluster_id: Option<usize>,
    pub verified: bool,
    /// Bisection record; `None` for fixed values.
    pub root: Option<Root>,
    /// Sub-bracket handed to bisection.
    pub sub_bracket: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub k: usize,
    pub parity: Parity,
    /// Verified, deduplicated eigenpairs in ascending order.
    pub entries: Vec<Eigenpair>,
    pub distinct_count: usize,
    pub dedup_tol: f64,
    pub tol: f64,
    /// Eigenvalue count stated for this parity: 7 for odd k, 14 for even k.
    pub claimed_count: usize,
    pub count_matches_claim: bool,
    pub max_lambda: f64,
    pub case_results: Vec<CaseResult>,
}

/// Something in a report that deserves a warning.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    CountMismatch {
        computed: usize,
        claimed: usize,
    },
    Merged {
        lambda: f64,
        case_ids: Vec<CaseId>,
    },
    Unverified {
        case_id: CaseId,
        lambda: f64,
        residual: f64,
    },
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discrepancy::CountMismatch { computed, claimed } => write!(
                f,
                "{computed} distinct eigenvalues computed, {claimed} claimed"
            ),
            Discrepancy::Merged { lambda, case_ids } => {
                let tags: Vec<_> = case_ids.iter().map(|c| c.tag()).collect();
                write!(f, "cases {} merged at lambda = {lambda}", tags.join(", "))
            }
            Discrepancy::Unverified {
                case_id,
                lambda,
                residual,
            } => write!(
                f,
                "{case_id} root lambda = {lambda} has no eigenvector witness (best residual {residual:.3e})"
            ),
        }
    }
}

impl SpectrumReport {
    pub fn warnings(&self) -> Vec<Discrepancy> {
        let mut out = Vec::new();
        if !self.count_matches_claim {
            out.push(Discrepancy::CountMismatch {
                computed: self.distinct_count,
                claimed: self.claimed_count,
            });
        }
        for e in self.entries.iter().filter(|e| e.case_ids.len() > 1) {
            out.push(Discrepancy::Merged {
                lambda: e.lambda,
                case_ids: e.case_ids.clone(),
            });
        }
        for r in self.case_results.iter().filter(|r| !r.verified) {
            out.push(Discrepancy::Unverified {
                case_id: r.case_id,
                lambda: r.lambda,
                residual: r.residual,
            });
        }
        out
    }

    pub fn unverified(&self) -> impl Iterator<Item = &CaseResult> {
        self.case_results.iter().filter(|r| !r.verified)
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }
}

/// Greedy left-to-right clustering of sorted values.
///
/// A value joins the current cluster when it is within `tol` of the
/// cluster's first element. Returns the cluster representatives and, for
/// every input index, the cluster it landed in.
pub fn dedup(values: &[f64], tol: f64) -> (Vec<f64>, Vec<usize>) {
    let mut reps: Vec<f64> = Vec::new();
    let mut map = Vec::with_capacity(values.len());
    for &v in values {
        match reps.last() {
            Some(&first) if (v - first).abs() <= tol => {}
            _ => reps.push(v),
        }
        map.push(reps.len() - 1);
    }
    (reps, map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Support {
    AllOnes,
    Indicator(usize),
    /// `x_{2k-1}` and the last block.
    Tail,
    /// Both intersection vertices and the middle block.
    Middle,
    /// Both intersection vertices, the middle block and the first block.
    OneSided,
    /// Everything populated.
    Both,
}

fn support_of(case: CaseId, k: usize) -> Support {
    use CaseId::*;
    match case {
        OddZero | EvenZero => Support::AllOnes,
        OddOne | EvenOne => Support::Indicator(0),
        OddTwo | EvenTwo => Support::Indicator(k - 1),
        OddIi | EvenIiLow | EvenIiHigh => Support::Tail,
        OddIii | EvenIiiLow | EvenIiiHigh => Support::Middle,
        OddIvLow | OddIvHigh | EvenIvLow | EvenIvMid | EvenIvHigh | EvenV => Support::OneSided,
        OddV | EvenViLow | EvenViHigh | EvenVii => Support::Both,
    }
}

/// Candidate vectors for one support pattern, before normalisation.
fn candidates(support: Support, k: usize, lambda: f64) -> Vec<Vec<f64>> {
    let n = 3 * k - 2;
    let (u, w) = (k - 1, 2 * k - 2);
    let first = 0..k - 1;
    let middle = k..2 * k - 2;
    let last = 2 * k - 1..n;
    let inv = 1.0 / (1.0 - lambda);

    let mut out = Vec::new();
    match support {
        Support::AllOnes => out.push(vec![1.0; n]),
        Support::Indicator(v) => {
            let mut x = vec![0.0; n];
            x[v] = 1.0;
            out.push(x);
        }
        Support::Tail => {
            let mut x = vec![0.0; n];
            x[w] = 1.0;
            x[last].iter_mut().for_each(|v| *v = inv);
            out.push(x);
        }
        Support::Middle | Support::OneSided | Support::Both => {
            // |x_{2k-1} / x_k| for the one-sided support: the vertex whose
            // outer block is empty carries the ratio.
            let ratio = match support {
                Support::OneSided => {
                    let b2 = (lambda - 2.0) * (lambda - 2.0);
                    let base = b2 * (1.0 - lambda).abs().powi(k as i32 - 2);
                    base.powf(-1.0 / k as f64)
                }
                _ => 1.0,
            };
            for t_sign in [1.0, -1.0] {
                for mid_sign in [1.0, -1.0] {
                    for flip in [false, true] {
                        let mut x = vec![0.0; n];
                        let (xu, xw) = match support {
                            Support::OneSided => (1.0, t_sign * ratio),
                            _ => (t_sign, 1.0),
                        };
                        x[u] = xu;
                        x[w] = xw;
                        let mag = (xu * xw * inv).abs().sqrt();
                        for (j, v) in x[middle.clone()].iter_mut().enumerate() {
                            *v = if flip && j == 0 {
                                -mid_sign * mag
                            } else {
                                mid_sign * mag
                            };
                        }
                        if matches!(support, Support::OneSided | Support::Both) {
                            x[first.clone()].iter_mut().for_each(|v| *v = xu * inv);
                        }
                        if support == Support::Both {
                            x[last.clone()].iter_mut().for_each(|v| *v = xw * inv);
                        }
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// Builds a witness H-eigenvector for `lambda` with the support pattern of
/// `case`, scaled to unit max-norm.
pub fn reconstruct_eigenvector(path: &LoosePath, case: CaseId, lambda: f64) -> Result<Vec<f64>> {
    if path.d != 3 {
        return Err(Error::domain(format!(
            "witness construction needs a path of length 3, got {}",
            path.d
        )));
    }
    if case.parity() != Parity::of(path.k) {
        return Err(Error::domain(format!(
            "case {case} does not apply to k = {}",
            path.k
        )));
    }
    if !lambda.is_finite() {
        return Err(Error::domain(format!("lambda = {lambda} is not finite")));
    }
    let mut best = f64::INFINITY;
    for mut x in candidates(support_of(case, path.k), path.k, lambda) {
        if x.iter().any(|v| !v.is_finite()) {
            continue;
        }
        normalize_max(&mut x);
        let r = eig_residual(path, lambda, &x)?;
        if r <= RESIDUAL_TOL {
            return Ok(x);
        }
        best = best.min(r);
    }
    Err(Error::Reconstruction {
        case,
        k: path.k,
        lambda,
        best_residual: best,
    })
}

/// [`compute_spectrum_with`] using the default grid and dedup tolerance.
pub fn compute_spectrum(k: usize, tol: f64) -> Result<SpectrumReport> {
    compute_spectrum_with(
        k,
        &SpectrumOptions {
            tol,
            ..SpectrumOptions::default()
        },
    )
}

struct Solved {
    case: CaseEquation,
    lambda: f64,
    root: Option<Root>,
    sub_bracket: Option<(f64, f64)>,
}

fn solve_case(case: CaseEquation, opts: &SpectrumOptions) -> Result<Solved> {
    match case.root {
        CaseRoot::Fixed { value } => Ok(Solved {
            case,
            lambda: value,
            root: None,
            sub_bracket: None,
        }),
        CaseRoot::Bracketed { .. } => {
            let (lo, hi) = check_bracket(&case, opts.grid)?[0];
            let root = if lo == hi {
                Root {
                    value: lo,
                    bracket_width: 0.0,
                    f_at_value: 0.0,
                    iterations: 0,
                    lo,
                    hi,
                }
            } else {
                bisect(|l| case.eval(l), lo, hi, opts.tol)?
            };
            Ok(Solved {
                lambda: root.value,
                case,
                root: Some(root),
                sub_bracket: Some((lo, hi)),
            })
        }
    }
}

/// Computes, verifies and deduplicates the Laplacian H-spectrum of `G_{k,3}`.
pub fn compute_spectrum_with(k: usize, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    if !(3..=MAX_K).contains(&k) {
        return Err(Error::domain(format!("k = {k} outside [3, {MAX_K}]")));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.dedup_tol.is_nan() || opts.dedup_tol <= 0.0 {
        return Err(Error::domain("tolerances must be positive"));
    }
    let path = build_loose_path(k, 3)?;

    let mut results = Vec::new();
    let mut verified: Vec<(f64, usize, Vec<f64>, f64)> = Vec::new();
    for case in raw_catalog(k)? {
        let solved = solve_case(case, opts)?;
        let (lo, hi) = solved.case.interval();
        let (residual, ok) = match reconstruct_eigenvector(&path, solved.case.id, solved.lambda) {
            Ok(x) => {
                let r = eig_residual(&path, solved.lambda, &x)?;
                verified.push((solved.lambda, results.len(), x, r));
                (r, true)
            }
            Err(Error::Reconstruction { best_residual, .. }) => (best_residual, false),
            Err(e) => return Err(e),
        };
        results.push(CaseResult {
            case_id: solved.case.id,
            interval_lo: lo,
            interval_hi: hi,
            lambda: solved.lambda,
            residual,
            cluster_id: None,
            verified: ok,
            root: solved.root,
            sub_bracket: solved.sub_bracket,
        });
    }

    verified.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let values: Vec<f64> = verified.iter().map(|v| v.0).collect();
    let (_, clusters) = dedup(&values, opts.dedup_tol);

    let mut entries: Vec<Eigenpair> = Vec::new();
    for ((lambda, idx, x, residual), cluster) in verified.into_iter().zip(clusters) {
        results[idx].cluster_id = Some(cluster);
        let case_id = results[idx].case_id;
        if cluster == entries.len() {
            entries.push(Eigenpair {
                lambda,
                x,
                residual,
                case_ids: vec![case_id],
            });
        } else {
            entries[cluster].case_ids.push(case_id);
        }
    }

    let parity = Parity::of(k);
    let claimed_count = match parity {
        Parity::Odd => 7,
        Parity::Even => 14,
    };
    let distinct_count = entries.len();
    Ok(SpectrumReport {
        k,
        parity,
        max_lambda: entries.last().map_or(f64::NAN, |e| e.lambda),
        distinct_count,
        dedup_tol: opts.dedup_tol,
        tol: opts.tol,
        claimed_count,
        count_matches_claim: distinct_count == claimed_count,
        entries,
        case_results: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{apply, TensorKind};

    /// Real root of λ^3 - 4λ^2 + 5λ - 1 in (0, 1) by Newton.
    fn o_ii_k3_oracle() -> f64 {
        let mut x = 0.2f64;
        for _ in 0..60 {
            x -= (x * x * x - 4.0 * x * x + 5.0 * x - 1.0) / (3.0 * x * x - 8.0 * x + 5.0);
        }
        x
    }

    #[test]
    fn dedup_examples() {
        let (reps, map) = dedup(&[1.0, 1.0 + 1e-12, 2.0], 1e-9);
        assert_eq!(reps, vec![1.0, 2.0]);
        assert_eq!(map, vec![0, 0, 1]);
        assert_eq!(dedup(&[0.5], 1.0).0, vec![0.5]);
        assert_eq!(dedup(&[], 1.0), (vec![], vec![]));
        // Chained values cluster against the first element only.
        let (reps, _) = dedup(&[0.0, 0.6, 1.2], 1.0);
        assert_eq!(reps, vec![0.0, 1.2]);
    }

    #[test]
    fn fixed_witnesses() {
        let p = build_loose_path(3, 3).unwrap();
        assert_eq!(
            reconstruct_eigenvector(&p, CaseId::OddZero, 0.0).unwrap(),
            vec![1.0; 7]
        );
        let e1 = reconstruct_eigenvector(&p, CaseId::OddOne, 1.0).unwrap();
        assert_eq!(e1, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(eig_residual(&p, 1.0, &e1).unwrap(), 0.0);
        let e3 = reconstruct_eigenvector(&p, CaseId::OddTwo, 2.0).unwrap();
        assert_eq!(e3[2], 1.0);
    }

    #[test]
    fn tail_witness_for_k3() {
        let p = build_loose_path(3, 3).unwrap();
        let lambda = o_ii_k3_oracle();
        let x = reconstruct_eigenvector(&p, CaseId::OddIi, lambda).unwrap();
        // Unnormalised: x_5 = 1, x_6 = x_7 = 1/(1-λ) ≈ 1.3247.
        assert_eq!(&x[..4], &[0.0; 4]);
        let ratio = x[5] / x[4];
        assert!((ratio - 1.0 / (1.0 - lambda)).abs() < 1e-12);
        assert!((ratio - 1.324_717_957_244_746).abs() < 1e-9);
        assert_eq!(x[5], x[6]);
        assert_eq!(x.iter().map(|v| v.abs()).fold(0.0, f64::max), 1.0);
        assert!(eig_residual(&p, lambda, &x).unwrap() <= 1e-10);
    }

    #[test]
    fn reconstruction_rejects_non_eigenvalue() {
        let p = build_loose_path(3, 3).unwrap();
        let err = reconstruct_eigenvector(&p, CaseId::OddIi, 0.3).unwrap_err();
        assert!(matches!(
            err,
            Error::Reconstruction {
                case: CaseId::OddIi,
                ..
            }
        ));
        assert!(matches!(
            reconstruct_eigenvector(&p, CaseId::EvenIiLow, 0.2),
            Err(Error::Domain(_))
        ));
        let p2 = build_loose_path(3, 2).unwrap();
        assert!(matches!(
            reconstruct_eigenvector(&p2, CaseId::OddIi, 0.2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn k3_spectrum() {
        let r = compute_spectrum(3, 1e-12).unwrap();
        assert_eq!(r.case_results.len(), 8);
        assert!(r.case_results.iter().all(|c| c.verified));
        assert_eq!(r.distinct_count, 8);
        assert_eq!(r.claimed_count, 7);
        assert!(!r.count_matches_claim);
        assert_eq!(r.max_lambda, 2.0);
        let l = r.lambdas();
        assert_eq!(l[0], 0.0);
        assert!(l.contains(&1.0) && l.contains(&2.0));

        let get = |id| {
            r.case_results
                .iter()
                .find(|c| c.case_id == id)
                .unwrap()
                .lambda
        };
        assert!((get(CaseId::OddIi) - o_ii_k3_oracle()).abs() <= 1e-12);
        // Frozen from an independent scipy brentq run at xtol 1e-14.
        assert!((get(CaseId::OddIii) - 0.534_428_768_123_231_9).abs() <= 1e-11);
        assert!((get(CaseId::OddIvLow) - 0.116_796_494_086_474_15).abs() <= 1e-11);
        assert!((get(CaseId::OddIvHigh) - 1.468_989_943_540_430_8).abs() <= 1e-11);
        assert!((get(CaseId::OddV) - 0.411_978_201_807_746).abs() <= 1e-11);
    }

    #[test]
    fn k4_spectrum_and_rejections() {
        let r = compute_spectrum(4, 1e-12).unwrap();
        assert_eq!(r.case_results.len(), 14);
        let rejected: Vec<CaseId> = r.unverified().map(|c| c.case_id).collect();
        assert_eq!(
            rejected,
            vec![
                CaseId::EvenIvMid,
                CaseId::EvenV,
                CaseId::EvenViLow,
                CaseId::EvenVii
            ]
        );
        for c in r.unverified() {
            assert!(c.residual > 1e-3, "{} residual {}", c.case_id, c.residual);
            assert_eq!(c.cluster_id, None);
        }
        assert_eq!(r.distinct_count, 10);
        assert!(!r.count_matches_claim);
        assert!(r.max_lambda > 2.0 && r.max_lambda < 3.0);

        // E-iii for k = 4 reduces to λ^2 - 3λ + 1 = 0.
        let get = |id| {
            r.case_results
                .iter()
                .find(|c| c.case_id == id)
                .unwrap()
                .lambda
        };
        let s5 = 5f64.sqrt();
        assert!((get(CaseId::EvenIiiLow) - (3.0 - s5) / 2.0).abs() <= 1e-12);
        assert!((get(CaseId::EvenIiiHigh) - (3.0 + s5) / 2.0).abs() <= 1e-12);
        // The (0,1) root of the E-vi equation is not the E-ii root.
        assert!((get(CaseId::EvenViLow) - get(CaseId::EvenIiLow)).abs() > 0.1);
    }

    #[test]
    fn report_invariants_hold_over_range() {
        for k in 3..=20 {
            let r = compute_spectrum(k, 1e-12).unwrap();
            assert_eq!(r.lambdas()[0], 0.0);
            for w in r.entries.windows(2) {
                assert!(w[1].lambda - w[0].lambda > r.dedup_tol);
            }
            for e in &r.entries {
                assert!(e.residual <= RESIDUAL_TOL);
                assert_eq!(e.x.iter().map(|v| v.abs()).fold(0.0, f64::max), 1.0);
                // -x is an eigenvector too.
                let neg: Vec<f64> = e.x.iter().map(|v| -v).collect();
                assert!(
                    eig_residual(&build_loose_path(k, 3).unwrap(), e.lambda, &neg).unwrap()
                        <= RESIDUAL_TOL
                );
            }
            match r.parity {
                Parity::Odd => {
                    assert_eq!(r.max_lambda, 2.0);
                    assert!(r.lambdas().iter().all(|&l| (0.0..=2.0).contains(&l)));
                }
                Parity::Even => {
                    assert!(r.max_lambda > 2.0 && r.max_lambda < 3.0);
                    assert!(r.lambdas().contains(&2.0));
                    assert!(r.lambdas().iter().all(|&l| (0.0..3.0).contains(&l)));
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            compute_spectrum(6, 1e-12).unwrap(),
            compute_spectrum(6, 1e-12).unwrap()
        );
    }

    #[test]
    fn warnings_cover_unverified_and_count() {
        let r = compute_spectrum(4, 1e-12).unwrap();
        let w = r.warnings();
        assert!(matches!(
            w[0],
            Discrepancy::CountMismatch {
                computed: 10,
                claimed: 14
            }
        ));
        assert_eq!(
            w.iter()
                .filter(|d| matches!(d, Discrepancy::Unverified { .. }))
                .count(),
            4
        );
    }

    #[test]
    fn witness_support_matches_block_pattern() {
        // O-iii: end blocks empty, both intersection vertices populated.
        let k = 5;
        let r = compute_spectrum(k, 1e-12).unwrap();
        let e = r
            .entries
            .iter()
            .find(|e| e.case_ids.contains(&CaseId::OddIii))
            .unwrap();
        assert!(e.x[..k - 1].iter().all(|&v| v == 0.0));
        assert!(e.x[2 * k - 1..].iter().all(|&v| v == 0.0));
        assert!(e.x[k - 1] != 0.0 && e.x[2 * k - 2] != 0.0);
        let p = build_loose_path(k, 3).unwrap();
        let lx = apply(TensorKind::Laplacian, &p, &e.x).unwrap();
        for (l, v) in lx.iter().zip(&e.x) {
            assert!((l - e.lambda * v.powi(k as i32 - 1)).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(compute_spectrum(2, 1e-12), Err(Error::Domain(_))));
        assert!(matches!(
            compute_spectrum(513, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(compute_spectrum(3, 0.0), Err(Error::Domain(_))));
    }
}
