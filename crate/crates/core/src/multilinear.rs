//! Tensor-vector products `T x^{k-1}` for the adjacency, Laplacian and
//! signless Laplacian tensors of a loose path.
//!
//! The adjacency tensor puts `1/(k-1)!` on every permutation of every edge.
//! Contracting it in all but the first slot sums, for each edge `e ∋ i`, the
//! `(k-1)!` orderings of `e \ {i}`, which cancels the normalisation and
//! leaves `Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j`. That closed form is what
//! [`apply`] evaluates, in `O(d k)`.

use serde::Serialize;

use crate::cases::CaseId;
use crate::error::{Error, Result};
use crate::hypergraph::{degrees, LoosePath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TensorKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
}

/// A verified H-eigenpair of the Laplacian tensor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenpair {
    pub lambda: f64,
    /// Witness eigenvector, scaled so that `max |x_i| = 1`.
    pub x: Vec<f64>,
    pub residual: f64,
    /// Every catalog case whose root landed on this eigenvalue.
    pub case_ids: Vec<CaseId>,
}

/// Computes `T x^{k-1}` for the chosen tensor.
pub fn apply(kind: TensorKind, path: &LoosePath, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != path.n {
        return Err(Error::domain(format!(
            "vector has length {}, path has {} vertices",
            x.len(),
            path.n
        )));
    }
    let mut out = vec![0.0; path.n];
    let mut suffix = vec![1.0; path.k + 1];
    for e in 0..path.d {
        let vals = &x[path.edge_range(e)];
        for j in (0..path.k).rev() {
            suffix[j] = suffix[j + 1] * vals[j];
        }
        let mut prefix = 1.0;
        for (j, v) in path.edge_range(e).enumerate() {
            out[v] += prefix * suffix[j + 1];
            prefix *= vals[j];
        }
    }
    if kind == TensorKind::Adjacency {
        return Ok(out);
    }

    let power = (path.k - 1) as i32;
    let sign = if kind == TensorKind::Laplacian {
        -1.0
    } else {
        1.0
    };
    for ((o, &xi), di) in out.iter_mut().zip(x).zip(degrees(path)) {
        *o = di as f64 * xi.powi(power) + sign * *o;
    }
    Ok(out)
}

/// Scaled infinity-norm residual of `L x^{k-1} = λ x^{[k-1]}`.
///
/// The denominator is `max(1, max_i |x_i|^{k-1})`, so for a vector already
/// scaled to unit max-norm this is the plain absolute residual.
pub fn eig_residual(path: &LoosePath, lambda: f64, x: &[f64]) -> Result<f64> {
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::domain("eigenvector candidate is the zero vector"));
    }
    let lx = apply(TensorKind::Laplacian, path, x)?;
    let power = (path.k - 1) as i32;
    let num = lx
        .iter()
        .zip(x)
        .map(|(l, &xi)| (l - lambda * xi.powi(power)).abs())
        .fold(0.0, f64::max);
    let scale = x.iter().map(|v| v.abs()).fold(0.0, f64::max).powi(power);
    Ok(num / scale.max(1.0))
}

/// Divides `x` by its largest-magnitude entry.
pub(crate) fn normalize_max(x: &mut [f64]) {
    let m = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if m > 0.0 {
        x.iter_mut().for_each(|v| *v /= m);
    }
}
