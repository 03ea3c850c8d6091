//! Normalized alpha-centrality and the related path-weighting schemes:
//! eigenvector centrality, Katz status, random-walk proximity and degree.
//!
//! The unnormalized alpha-centrality matrix is
//! `C(α, β) = β Σ_{k≥0} α^k A^{k+1}`, which converges only for
//! `α < 1/λ₁`. The normalized matrix `NC = C / ΣC` has a limit for every
//! `α ∈ [0, 1]`; [`alpha_centrality_iterative`] computes it for any `α`,
//! [`alpha_centrality_closed_form`] for `α` inside the radius.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{DenseMatrix, Lu};
use crate::scalar::{ordered_sum, Scalar};

/// Default convergence tolerance for the iterative routines.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default iteration cap for the iterative routines.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Dominant eigenvalue `λ₁` of `A` and its eigenvector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralInfo<T> {
    pub lambda1: T,
    /// Unit L2 norm, nonnegative.
    pub vector: Vec<T>,
    pub iterations: usize,
    pub tolerance_met: bool,
    /// `‖A v − λ₁ v‖∞` at the returned estimate.
    pub residual: T,
}

impl<T: Scalar> SpectralInfo<T> {
    /// `1/λ₁`, the convergence radius of the unnormalized series in `α`.
    pub fn inverse_lambda(&self) -> T {
        T::one() / self.lambda1
    }
}

/// Which marginal of the centrality matrix is a node's score.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreAxis {
    /// `Σ_j NC_ij`: attenuated paths leaving `i`.
    #[default]
    Row,
    /// `Σ_i NC_ij`: attenuated paths arriving at `j`.
    Column,
}

/// Normalized alpha-centrality matrix with convergence metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityField<T> {
    pub alpha: T,
    pub beta: T,
    /// `NC`, grand sum 1.
    pub matrix: DenseMatrix<T>,
    /// Row sums of `matrix`.
    pub node_scores: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    /// L∞ change of `matrix` in the last step.
    pub residual: T,
    /// `ln ΣC` of the unnormalized partial sum the matrix was taken from.
    pub log_scale: T,
}

impl<T: Scalar> CentralityField<T> {
    fn from_normalized(
        alpha: T,
        beta: T,
        matrix: DenseMatrix<T>,
        iterations: usize,
        converged: bool,
        residual: T,
        log_scale: T,
    ) -> Self {
        let node_scores = matrix.row_sums();
        Self {
            alpha,
            beta,
            matrix,
            node_scores,
            iterations,
            converged,
            residual,
            log_scale,
        }
    }

    pub fn scores(&self, axis: ScoreAxis) -> Vec<T> {
        match axis {
            ScoreAxis::Row => self.node_scores.clone(),
            ScoreAxis::Column => self.matrix.col_sums(),
        }
    }

    /// The unnormalized matrix `C = e^{log_scale} · NC`. Only meaningful
    /// when the series converges, i.e. `α < 1/λ₁`.
    pub fn unnormalized(&self) -> DenseMatrix<T> {
        self.matrix.scaled(self.log_scale.exp())
    }
}

/// Node scores from the vector-only iteration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreVector<T> {
    pub alpha: T,
    pub beta: T,
    pub axis: ScoreAxis,
    /// Sums to 1.
    pub scores: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    pub residual: T,
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

fn check_beta<T: Scalar>(beta: T) -> Result<()> {
    if !(beta > T::zero() && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    Ok(())
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn max_abs_change<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs())
        .fold(T::zero(), T::max)
}

fn normalize_l2<T: Scalar>(v: &mut [T]) -> T {
    let norm = ordered_sum(v.iter().map(|&x| x * x)).sqrt();
    if norm > T::zero() {
        v.iter_mut().for_each(|x| *x = *x / norm);
    }
    norm
}

/// Dominant eigenpair of `A` by power iteration.
///
/// Iterates on `A + σI` with `σ` the mean out-degree, starting from the
/// uniform vector. The shift separates `λ₁` from eigenvalues of equal
/// modulus on the circle `|z| = λ₁` (bipartite and periodic graphs) and
/// leaves the eigenvectors unchanged. Stops once
/// `‖A v − λ v‖∞ ≤ tol · λ`.
pub fn dominant_eigenpair<T: Scalar>(
    g: &Graph<T>,
    tol: T,
    max_iter: usize,
) -> Result<SpectralInfo<T>> {
    check_tol(tol)?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let total = g.total_weight();
    if total == T::zero() {
        return Err(Error::DegenerateSpectrum);
    }
    let sigma = total / T::of_usize(n);
    let mut v = vec![T::one() / T::of_usize(n).sqrt(); n];
    let mut av = g.mul_vec(&v);
    let mut lambda = ordered_sum(v.iter().zip(&av).map(|(&x, &y)| x * y));
    let residual_of = |v: &[T], av: &[T], lambda: T| {
        v.iter()
            .zip(av)
            .map(|(&x, &y)| (y - lambda * x).abs())
            .fold(T::zero(), T::max)
    };
    let mut residual = residual_of(&v, &av, lambda);
    let mut iterations = 0;
    while !(lambda > T::zero() && residual <= tol * lambda) && iterations < max_iter {
        for (x, &y) in v.iter_mut().zip(&av) {
            *x = y + sigma * *x;
        }
        normalize_l2(&mut v);
        av = g.mul_vec(&v);
        lambda = ordered_sum(v.iter().zip(&av).map(|(&x, &y)| x * y));
        residual = residual_of(&v, &av, lambda);
        iterations += 1;
    }
    if !(lambda > T::zero()) {
        return Err(Error::DegenerateSpectrum);
    }
    Ok(SpectralInfo {
        lambda1: lambda,
        tolerance_met: residual <= tol * lambda,
        vector: v,
        iterations,
        residual,
    })
}

/// Eigenvector centrality: the dominant eigenvector of `A`, unit L2 norm,
/// nonnegative. Fails if power iteration does not reach `tol`.
pub fn eigenvector_centrality<T: Scalar>(g: &Graph<T>, tol: T, max_iter: usize) -> Result<Vec<T>> {
    let info = dominant_eigenpair(g, tol, max_iter)?;
    if !info.tolerance_met {
        return Err(Error::EigenNoConvergence {
            size: g.node_count(),
        });
    }
    Ok(info.vector)
}

/// Normalized alpha-centrality by the recurrence `C ← βA + α C A`.
///
/// The iterate is renormalized to unit grand sum after every step, and the
/// logarithm of the discarded scale is carried so the recurrence stays
/// exact: with `M = C/s`, the next iterate is `(β/s) A + α M A`, divided by
/// its own sum. For `α > 1/λ₁` the term `β/s` underflows to zero and the
/// iteration becomes a normalized power method on `M ↦ M A`.
///
/// Stops when the L∞ change of the normalized matrix drops below `tol`.
/// If `max_iter` steps are exhausted the last iterate is returned with
/// `converged = false`.
pub fn alpha_centrality_iterative<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    beta: T,
    tol: T,
    max_iter: usize,
) -> Result<CentralityField<T>> {
    check_alpha(alpha)?;
    check_beta(beta)?;
    check_tol(tol)?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let a = g.adjacency();
    let total = a.grand_sum();
    if total == T::zero() {
        return Err(Error::NoEdges);
    }
    // C_1 = βA
    let mut m = a.map(|x| x / total);
    let mut log_scale = (beta * total).ln();
    if alpha == T::zero() {
        return Ok(CentralityField::from_normalized(
            alpha,
            beta,
            m,
            1,
            true,
            T::zero(),
            log_scale,
        ));
    }
    let mut iterations = 1;
    let mut residual = T::infinity();
    let mut converged = false;
    while iterations < max_iter.max(1) {
        let mut next = g.right_mul(&m);
        let lead = beta * (-log_scale).exp();
        for (x, &aij) in next.as_mut_slice().iter_mut().zip(a.as_slice()) {
            *x = alpha * *x + lead * aij;
        }
        let sum = next.grand_sum();
        if !(sum > T::zero() && sum.is_finite()) {
            return Err(Error::NonFiniteScore {
                label: g.label(0).to_string(),
            });
        }
        next.scale_in_place(T::one() / sum);
        log_scale = log_scale + sum.ln();
        residual = next.max_abs_diff(&m);
        m = next;
        iterations += 1;
        if residual < tol {
            converged = true;
            break;
        }
    }
    Ok(CentralityField::from_normalized(
        alpha, beta, m, iterations, converged, residual, log_scale,
    ))
}

/// Normalized alpha-centrality scores without forming the matrix.
///
/// Because `C` is a polynomial in `A` it commutes with `A`, so the row sums
/// obey `r ← β A e + α A r` and the column sums `c ← β eᵀA + α c A`. Each
/// step costs `O(nnz(A))`. Renormalization and stopping follow
/// [`alpha_centrality_iterative`], measured on the score vector.
pub fn alpha_centrality_scores<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    beta: T,
    axis: ScoreAxis,
    tol: T,
    max_iter: usize,
) -> Result<ScoreVector<T>> {
    check_alpha(alpha)?;
    check_beta(beta)?;
    check_tol(tol)?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let degrees = g.degree_summary();
    let base = match axis {
        ScoreAxis::Row => degrees.out_degree,
        ScoreAxis::Column => degrees.in_degree,
    };
    let total = ordered_sum(base.iter().copied());
    if total == T::zero() {
        return Err(Error::NoEdges);
    }
    let mut y: Vec<T> = base.iter().map(|&d| d / total).collect();
    let mut log_scale = (beta * total).ln();
    let mut iterations = 1;
    let mut residual = T::zero();
    let mut converged = alpha == T::zero();
    while !converged && iterations < max_iter.max(1) {
        let propagated = match axis {
            ScoreAxis::Row => g.mul_vec(&y),
            ScoreAxis::Column => g.vec_mul(&y),
        };
        let lead = beta * (-log_scale).exp();
        let mut next: Vec<T> = propagated
            .iter()
            .zip(&base)
            .map(|(&p, &d)| alpha * p + lead * d)
            .collect();
        let sum = ordered_sum(next.iter().copied());
        if !(sum > T::zero() && sum.is_finite()) {
            return Err(Error::NonFiniteScore {
                label: g.label(0).to_string(),
            });
        }
        next.iter_mut().for_each(|x| *x = *x / sum);
        log_scale = log_scale + sum.ln();
        residual = max_abs_change(&next, &y);
        y = next;
        iterations += 1;
        converged = residual < tol;
    }
    Ok(ScoreVector {
        alpha,
        beta,
        axis,
        scores: y,
        iterations,
        converged,
        residual,
    })
}

/// Unnormalized `C = β A (I − αA)⁻¹`.
///
/// Fails with [`Error::AlphaBeyondRadius`] when `I − αA` is numerically
/// singular or the inverse is not entrywise nonnegative, which happens
/// exactly when `α ≥ 1/λ₁`.
pub fn alpha_centrality_unnormalized<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    beta: T,
) -> Result<DenseMatrix<T>> {
    check_alpha(alpha)?;
    check_beta(beta)?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let a = g.adjacency();
    if alpha == T::zero() {
        return Ok(a.scaled(beta));
    }
    let system = DenseMatrix::identity(n).sub(&a.scaled(alpha));
    let beyond = || Error::AlphaBeyondRadius {
        alpha: alpha.as_f64(),
    };
    let lu = Lu::factor(&system, T::of(1e3) * T::epsilon()).ok_or_else(beyond)?;
    let inverse = lu.inverse();
    let floor = -T::of(1e-9) * inverse.max_abs();
    if !inverse.all_finite() || inverse.as_slice().iter().any(|&x| x < floor) {
        return Err(beyond());
    }
    // A and (I - αA)^{-1} commute
    let mut c = g.right_mul(&inverse);
    c.as_mut_slice()
        .iter_mut()
        .for_each(|x| *x = (beta * *x).max(T::zero()));
    Ok(c)
}

/// Normalized alpha-centrality from the closed form, for `α < 1/λ₁`.
pub fn alpha_centrality_closed_form<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    beta: T,
) -> Result<CentralityField<T>> {
    let c = alpha_centrality_unnormalized(g, alpha, beta)?;
    let total = c.grand_sum();
    if total == T::zero() {
        return Err(Error::NoEdges);
    }
    Ok(CentralityField::from_normalized(
        alpha,
        beta,
        c.map(|x| x / total),
        0,
        true,
        T::zero(),
        total.ln(),
    ))
}

/// Katz status scores: row sums of `αA(I − αA)⁻¹`, unnormalized.
pub fn katz_scores<T: Scalar>(g: &Graph<T>, alpha: T) -> Result<Vec<T>> {
    if !(alpha > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "Katz attenuation must be positive, got {alpha}"
        )));
    }
    Ok(alpha_centrality_unnormalized(g, alpha, alpha)?.row_sums())
}

/// Random-walk proximity `R = Σ_{k≥1} c^k P^k` with `P = D⁻¹A`.
///
/// Iterates `R ← cP + c R P` until the L∞ change is below `tol`. Every node
/// must have positive out-degree.
pub fn random_walk_proximity<T: Scalar>(
    g: &Graph<T>,
    c: T,
    tol: T,
    max_iter: usize,
) -> Result<DenseMatrix<T>> {
    if !(c > T::zero() && c < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "restart probability must lie in (0, 1), got {c}"
        )));
    }
    check_tol(tol)?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let out = g.degree_summary().out_degree;
    if let Some(i) = out.iter().position(|&d| d == T::zero()) {
        return Err(Error::ZeroOutDegree {
            label: g.label(i).to_string(),
        });
    }
    let mut cp = g.adjacency();
    for i in 0..n {
        let scale = c / out[i];
        cp.row_mut(i).iter_mut().for_each(|x| *x = *x * scale);
    }
    let mut r = cp.clone();
    for _ in 1..max_iter.max(1) {
        let mut next = r.matmul(&cp);
        for (x, &y) in next.as_mut_slice().iter_mut().zip(cp.as_slice()) {
            *x = *x + y;
        }
        let change = next.max_abs_diff(&r);
        r = next;
        if change < tol {
            break;
        }
    }
    Ok(r)
}

/// Out-degree of every node.
pub fn degree_centrality<T: Scalar>(g: &Graph<T>) -> Vec<T> {
    g.degree_summary().out_degree
}

/// Radius of centrality `(1 − α)⁻¹`, for `0 ≤ α < 1`.
pub fn centrality_radius<T: Scalar>(alpha: T) -> Result<T> {
    if alpha == T::one() {
        return Err(Error::InvalidParameter(
            "radius of centrality is infinite at alpha = 1".into(),
        ));
    }
    if !(alpha >= T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1), got {alpha}"
        )));
    }
    Ok(T::one() / (T::one() - alpha))
}

/// A path-weighting scheme `E(q) = Σ_k W_k q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum ProximityConfig<T> {
    /// `W_k = β α^{k-1}`, normalized.
    AlphaCentrality { alpha: T, beta: T },
    /// `W_k = α^k`.
    Katz { alpha: T },
    /// `W_k = c^k D^{-k}`.
    RandomWalk { restart: T },
    /// `W_1 = 1`, `W_k = 0` for `k > 1`.
    Degree,
}

impl<T: Scalar> ProximityConfig<T> {
    /// Node scores (row sums) under this scheme.
    pub fn node_scores(&self, g: &Graph<T>, tol: T, max_iter: usize) -> Result<Vec<T>> {
        match *self {
            ProximityConfig::AlphaCentrality { alpha, beta } => {
                Ok(alpha_centrality_iterative(g, alpha, beta, tol, max_iter)?.node_scores)
            }
            ProximityConfig::Katz { alpha } => katz_scores(g, alpha),
            ProximityConfig::RandomWalk { restart } => {
                Ok(random_walk_proximity(g, restart, tol, max_iter)?.row_sums())
            }
            ProximityConfig::Degree => Ok(degree_centrality(g)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn undirected(n: usize, pairs: &[(usize, usize)]) -> Graph {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let edges = pairs
            .iter()
            .map(|&(s, t)| Edge {
                source: s,
                target: t,
                weight: 1.0,
            })
            .collect();
        Graph::new(labels, false, edges).unwrap()
    }

    #[test]
    fn single_edge_spectrum() {
        let g = undirected(2, &[(0, 1)]);
        let info = dominant_eigenpair(&g, 1e-12, 1000).unwrap();
        assert!((info.lambda1 - 1.0).abs() < 1e-12);
        let h = 0.5f64.sqrt();
        assert!((info.vector[0] - h).abs() < 1e-12 && (info.vector[1] - h).abs() < 1e-12);
        assert!(info.tolerance_met);
    }

    #[test]
    fn bipartite_and_cycle_spectra_converge() {
        // 4-cycle is bipartite: eigenvalues 2, 0, 0, -2
        let g = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let info = dominant_eigenpair(&g, 1e-12, 10_000).unwrap();
        assert!(info.tolerance_met);
        assert!((info.lambda1 - 2.0).abs() < 1e-10);
        let cyc: Graph = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            true,
            vec![
                Edge {
                    source: 0,
                    target: 1,
                    weight: 1.0,
                },
                Edge {
                    source: 1,
                    target: 2,
                    weight: 1.0,
                },
                Edge {
                    source: 2,
                    target: 0,
                    weight: 1.0,
                },
            ],
        )
        .unwrap();
        let info = dominant_eigenpair(&cyc, 1e-12, 10_000).unwrap();
        assert!((info.lambda1 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let g = undirected(3, &[]);
        assert!(matches!(
            dominant_eigenpair(&g, 1e-9, 100),
            Err(Error::DegenerateSpectrum)
        ));
        assert!(matches!(
            alpha_centrality_iterative(&g, 0.1, 1.0, 1e-9, 100),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn alpha_zero_is_normalized_adjacency() {
        let g = undirected(3, &[(0, 1), (1, 2)]);
        let f = alpha_centrality_iterative(&g, 0.0, 2.0, 1e-9, 100).unwrap();
        let a = g.adjacency();
        assert_eq!(f.matrix, a.map(|x| x / 4.0));
        assert_eq!(f.node_scores, vec![0.25, 0.5, 0.25]);
        assert!(f.converged);
    }

    #[test]
    fn two_node_closed_form_by_hand() {
        let g = undirected(2, &[(0, 1)]);
        let f = alpha_centrality_closed_form(&g, 0.5, 1.0).unwrap();
        let expected = DenseMatrix::from_rows(&[[1.0 / 6.0, 1.0 / 3.0], [1.0 / 3.0, 1.0 / 6.0]]);
        assert!(f.matrix.max_abs_diff(&expected) < 1e-15);
        // C = [[α, 1], [1, α]] β / (1 - α²)
        let c = f.unnormalized();
        let by_hand = DenseMatrix::from_rows(&[[0.5, 1.0], [1.0, 0.5]]).scaled(1.0 / 0.75);
        assert!(c.max_abs_diff(&by_hand) < 1e-12);
        let it = alpha_centrality_iterative(&g, 0.5, 1.0, 1e-14, 1000).unwrap();
        assert!(it.matrix.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn closed_form_rejects_alpha_past_radius() {
        let g = undirected(2, &[(0, 1)]);
        assert!(matches!(
            alpha_centrality_closed_form(&g, 1.0, 1.0),
            Err(Error::AlphaBeyondRadius { .. })
        ));
        assert!(matches!(
            alpha_centrality_closed_form(&g, 0.9, 1.0).map(|_| ()),
            Ok(())
        ));
        let tri = undirected(3, &[(0, 1), (1, 2), (2, 0)]);
        // λ₁ = 2
        assert!(alpha_centrality_closed_form(&tri, 0.6, 1.0).is_err());
    }

    #[test]
    fn score_vector_matches_matrix() {
        let g = Graph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            true,
            vec![
                Edge {
                    source: 0,
                    target: 1,
                    weight: 1.0,
                },
                Edge {
                    source: 1,
                    target: 2,
                    weight: 2.0,
                },
                Edge {
                    source: 2,
                    target: 0,
                    weight: 1.0,
                },
                Edge {
                    source: 2,
                    target: 3,
                    weight: 1.0,
                },
                Edge {
                    source: 3,
                    target: 1,
                    weight: 0.5,
                },
            ],
        )
        .unwrap();
        for alpha in [0.0, 0.2, 0.7, 1.0] {
            let field = alpha_centrality_iterative(&g, alpha, 1.0, 1e-13, 100_000).unwrap();
            for axis in [ScoreAxis::Row, ScoreAxis::Column] {
                let fast = alpha_centrality_scores(&g, alpha, 1.0, axis, 1e-13, 100_000).unwrap();
                let slow = field.scores(axis);
                assert!(
                    max_abs_change(&fast.scores, &slow) < 1e-10,
                    "{alpha} {axis:?}"
                );
            }
        }
    }

    #[test]
    fn random_walk_two_cycle() {
        let g = undirected(2, &[(0, 1)]);
        let r = random_walk_proximity(&g, 0.5, 1e-15, 1000).unwrap();
        let expected = DenseMatrix::from_rows(&[[1.0 / 3.0, 2.0 / 3.0], [2.0 / 3.0, 1.0 / 3.0]]);
        assert!(r.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn random_walk_rejects_sinks() {
        let g = Graph::new(
            vec!["src".into(), "sink".into()],
            true,
            vec![Edge {
                source: 0,
                target: 1,
                weight: 1.0,
            }],
        )
        .unwrap();
        match random_walk_proximity(&g, 0.5, 1e-9, 100) {
            Err(Error::ZeroOutDegree { label }) => assert_eq!(label, "sink"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn katz_symmetric_pair() {
        let g = undirected(2, &[(0, 1)]);
        let k = katz_scores(&g, 0.5).unwrap();
        assert_eq!(k[0], k[1]);
        // αA(I-αA)^{-1} row sum = α/(1-α) for a 1-regular graph
        assert!((k[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_center_dominates() {
        let g = undirected(4, &[(0, 1), (0, 2), (0, 3)]);
        let v = eigenvector_centrality(&g, 1e-12, 10_000).unwrap();
        assert!(v[1..].iter().all(|&x| v[0] > x));
        assert_eq!(degree_centrality(&g), vec![3.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn radius() {
        assert_eq!(centrality_radius(0.0).unwrap(), 1.0);
        assert_eq!(centrality_radius(0.5).unwrap(), 2.0);
        assert!((centrality_radius(0.9f64).unwrap() - 10.0).abs() < 1e-12);
        assert!(centrality_radius(1.0f64).is_err());
        assert!(centrality_radius(-0.1f64).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = undirected(2, &[(0, 1)]);
        assert!(alpha_centrality_iterative(&g, 1.5, 1.0, 1e-9, 10).is_err());
        assert!(alpha_centrality_iterative(&g, 0.5, 0.0, 1e-9, 10).is_err());
        assert!(alpha_centrality_iterative(&g, 0.5, 1.0, 0.0, 10).is_err());
        assert!(random_walk_proximity(&g, 1.0, 1e-9, 10).is_err());
    }

    #[test]
    fn f32_field() {
        let labels = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let edges = vec![
            Edge {
                source: 0,
                target: 1,
                weight: 1.0f32,
            },
            Edge {
                source: 1,
                target: 2,
                weight: 1.0f32,
            },
        ];
        let g = Graph::new(labels, false, edges).unwrap();
        let f = alpha_centrality_iterative(&g, 0.3f32, 1.0, 1e-6, 1000).unwrap();
        assert!((f.matrix.grand_sum() - 1.0).abs() < 1e-5);
        assert!(f.node_scores[1] > f.node_scores[0]);
    }
}
