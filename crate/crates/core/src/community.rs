//! Path-based modularity and community detection by recursive
//! leading-eigenvector bisection.
//!
//! Connectivity between `i` and `j` is the attenuated path count `C_ij`
//! (or its normalized form). The null model keeps the total path mass `W`
//! and every node's outgoing and incoming mass, so
//! `expected_ij = W_i^out W_j^in / W`, and
//! `Q = Σ_ij (C_ij − expected_ij) δ(s_i, s_j)`.

use std::cmp::Reverse;

use serde::Serialize;

use crate::centrality::{alpha_centrality_iterative, alpha_centrality_unnormalized};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{symmetric_eigen, DenseMatrix};
use crate::scalar::{ordered_sum, Scalar};

/// Blocks up to this size fall back to a dense eigensolver when power
/// iteration stalls.
pub const DENSE_FALLBACK_LIMIT: usize = 512;

/// How the connectivity matrix is scaled before building the modularity
/// matrix. Both scalings give the same communities; only `Q` differs by a
/// constant factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    /// Unnormalized `C` when the series converges at this `α`, the
    /// normalized matrix otherwise.
    #[default]
    Auto,
    /// `NC`, grand sum 1. Defined for every `α ∈ [0, 1]`.
    Normalized,
    /// `C = β A (I − αA)⁻¹`. Requires `α < 1/λ₁`.
    Unnormalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommunityConfig<T> {
    pub beta: T,
    pub scaling: Scaling,
    /// Round the unnormalized connectivity to the nearest integer. Only
    /// valid with [`Scaling::Unnormalized`].
    pub rounding: bool,
    /// Tolerance of the normalized centrality iteration.
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for CommunityConfig<T> {
    fn default() -> Self {
        Self {
            beta: T::one(),
            scaling: Scaling::Auto,
            rounding: false,
            tol: T::of(crate::centrality::DEFAULT_TOL),
            max_iter: crate::centrality::DEFAULT_MAX_ITER,
        }
    }
}

/// Connectivity matrix together with the scaling that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Connectivity<T> {
    pub matrix: DenseMatrix<T>,
    /// Never `Auto`.
    pub scaling: Scaling,
}

/// Attenuated path counts between all node pairs at the given `α`.
///
/// At `α = 0` the unnormalized matrix is exactly `βA`.
pub fn connectivity_matrix<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    config: &CommunityConfig<T>,
) -> Result<Connectivity<T>> {
    if config.rounding && config.scaling != Scaling::Unnormalized {
        return Err(Error::InvalidParameter(
            "rounding applies to the unnormalized connectivity only".into(),
        ));
    }
    let normalized = || -> Result<Connectivity<T>> {
        let field = alpha_centrality_iterative(g, alpha, config.beta, config.tol, config.max_iter)?;
        Ok(Connectivity {
            matrix: field.matrix,
            scaling: Scaling::Normalized,
        })
    };
    match config.scaling {
        Scaling::Normalized => normalized(),
        Scaling::Unnormalized => {
            let mut c = alpha_centrality_unnormalized(g, alpha, config.beta)?;
            if config.rounding {
                c = c.map(|x| x.round());
            }
            Ok(Connectivity {
                matrix: c,
                scaling: Scaling::Unnormalized,
            })
        }
        Scaling::Auto => match alpha_centrality_unnormalized(g, alpha, config.beta) {
            Ok(c) => Ok(Connectivity {
                matrix: c,
                scaling: Scaling::Unnormalized,
            }),
            Err(Error::AlphaBeyondRadius { .. }) => normalized(),
            Err(e) => Err(e),
        },
    }
}

/// Expected connectivity under the degree-preserving path null model.
#[derive(Clone, Debug, PartialEq)]
pub struct NullModel<T> {
    /// `W = Σ_ij C_ij`.
    pub total: T,
    pub out_strength: Vec<T>,
    pub in_strength: Vec<T>,
    /// `W_i^out W_j^in / W`.
    pub expected: DenseMatrix<T>,
}

pub fn null_model<T: Scalar>(connectivity: &DenseMatrix<T>) -> Result<NullModel<T>> {
    if !connectivity.is_square() {
        return Err(Error::LengthMismatch {
            expected: connectivity.rows(),
            found: connectivity.cols(),
        });
    }
    let out_strength = connectivity.row_sums();
    let in_strength = connectivity.col_sums();
    let total = ordered_sum(out_strength.iter().copied());
    if !(total > T::zero()) {
        return Err(Error::NoEdges);
    }
    let n = connectivity.rows();
    let expected = DenseMatrix::from_fn(n, n, |i, j| out_strength[i] * in_strength[j] / total);
    Ok(NullModel {
        total,
        out_strength,
        in_strength,
        expected,
    })
}

/// `B = C − expected`, symmetrized as `(B + Bᵀ)/2`.
///
/// `Q` only sees `B` through `δ(s_i, s_j)`, which is symmetric, so the
/// symmetrization leaves every modularity value unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularityMatrix<T> {
    pub alpha: T,
    pub matrix: DenseMatrix<T>,
    /// True when `C − expected` was not already symmetric.
    pub symmetrized: bool,
}

impl<T: Scalar> ModularityMatrix<T> {
    pub fn from_connectivity(connectivity: &DenseMatrix<T>, alpha: T) -> Result<Self> {
        let null = null_model(connectivity)?;
        let raw = connectivity.sub(&null.expected);
        let symmetrized = !raw.is_symmetric(T::zero());
        let matrix = if symmetrized {
            raw.symmetric_part()
        } else {
            raw
        };
        Ok(Self {
            alpha,
            matrix,
            symmetrized,
        })
    }

    /// `Σ_ij B_ij δ(s_i, s_j)`.
    pub fn modularity(&self, assignment: &[usize]) -> Result<T> {
        let n = self.matrix.rows();
        if assignment.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: assignment.len(),
            });
        }
        Ok(ordered_sum((0..n).map(|i| {
            let row = self.matrix.row(i);
            ordered_sum(
                (0..n)
                    .filter(|&j| assignment[j] == assignment[i])
                    .map(|j| row[j]),
            )
        })))
    }
}

/// `Q` of an assignment for an arbitrary connectivity matrix.
pub fn modularity_of<T: Scalar>(connectivity: &DenseMatrix<T>, assignment: &[usize]) -> Result<T> {
    ModularityMatrix::from_connectivity(connectivity, T::zero())?.modularity(assignment)
}

/// `Q(α)` of an assignment, measured on the normalized matrix `NC` with
/// `β = 1`.
pub fn modularity_value<T: Scalar>(g: &Graph<T>, assignment: &[usize], alpha: T) -> Result<T> {
    let config = CommunityConfig {
        scaling: Scaling::Normalized,
        ..CommunityConfig::default()
    };
    let conn = connectivity_matrix(g, alpha, &config)?;
    modularity_of(&conn.matrix, assignment)
}

/// A two-way division of a block.
#[derive(Clone, Debug, PartialEq)]
pub struct Split<T> {
    /// `true` for members of the side holding the block's first node.
    pub side: Vec<bool>,
    /// Leading eigenvalue of the block matrix.
    pub eigenvalue: T,
    /// `sᵀ B s / 2` for the ±1 indicator `s`.
    pub delta_q: T,
}

fn zero_threshold<T: Scalar>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(10.0))
}

fn gain<T: Scalar>(b: &DenseMatrix<T>, s: &[T]) -> T {
    let bs = b.mul_vec(s);
    ordered_sum(s.iter().zip(&bs).map(|(&x, &y)| x * y)) / T::of(2.0)
}

/// Leading eigenpair of a symmetric matrix by shifted power iteration,
/// falling back to a dense solve for small blocks.
fn leading_eigenpair<T: Scalar>(b: &DenseMatrix<T>) -> Result<(T, Vec<T>)> {
    let n = b.rows();
    let sigma = (0..n)
        .map(|i| ordered_sum(b.row(i).iter().map(|x| x.abs())))
        .fold(T::zero(), T::max);
    if sigma == T::zero() {
        return Ok((T::zero(), vec![T::zero(); n]));
    }
    // deterministic start that is not orthogonal to a generic eigenvector;
    // the uniform vector is useless because block matrices annihilate it
    let golden = T::of(0.618_033_988_749_894_9);
    let mut v: Vec<T> = (0..n)
        .map(|i| (T::of_usize(i + 1) * golden).fract() - T::of(0.5))
        .collect();
    let normalize = |v: &mut Vec<T>| {
        let norm = ordered_sum(v.iter().map(|&x| x * x)).sqrt();
        v.iter_mut().for_each(|x| *x = *x / norm);
    };
    normalize(&mut v);
    let tol = T::epsilon() * T::of(1e4) * sigma;
    let max_iter = 20 * n + 2000;
    for _ in 0..max_iter {
        let bv = b.mul_vec(&v);
        let lambda = ordered_sum(v.iter().zip(&bv).map(|(&x, &y)| x * y));
        let residual = v
            .iter()
            .zip(&bv)
            .map(|(&x, &y)| (y - lambda * x).abs())
            .fold(T::zero(), T::max);
        if residual <= tol {
            return Ok((lambda, v));
        }
        v = bv.iter().zip(&v).map(|(&y, &x)| y + sigma * x).collect();
        normalize(&mut v);
    }
    if n > DENSE_FALLBACK_LIMIT {
        return Err(Error::EigenNoConvergence { size: n });
    }
    let (values, vectors) = symmetric_eigen(b)?;
    Ok((values[0], (0..n).map(|i| vectors[(i, 0)]).collect()))
}

/// Splits a block by the sign pattern of the leading eigenvector of its
/// (already diagonal-corrected, symmetric) modularity matrix.
///
/// Components with magnitude below `1e-12` are assigned one at a time, in
/// index order, to whichever side gives the larger gain. Returns `None`
/// when the leading eigenvalue is not positive or the split would not
/// increase `Q`.
pub fn leading_eigenvector_bisect<T: Scalar>(b_sub: &DenseMatrix<T>) -> Result<Option<Split<T>>> {
    let n = b_sub.rows();
    if n < 2 {
        return Ok(None);
    }
    let scale = b_sub.max_abs();
    if scale == T::zero() {
        return Ok(None);
    }
    let (eigenvalue, u) = leading_eigenpair(b_sub)?;
    let significance = T::epsilon() * T::of(1e3) * scale * T::of_usize(n);
    if !(eigenvalue > significance) {
        return Ok(None);
    }
    let eps = zero_threshold::<T>();
    let mut s: Vec<T> = u
        .iter()
        .map(|&x| if x.abs() < eps { T::zero() } else { x.signum() })
        .collect();
    for i in 0..n {
        if s[i] != T::zero() {
            continue;
        }
        let row = b_sub.row(i);
        let pull = ordered_sum((0..n).filter(|&j| j != i).map(|j| row[j] * s[j]));
        s[i] = if pull >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
    }
    if s.iter().all(|&x| x == s[0]) {
        return Ok(None);
    }
    let delta_q = gain(b_sub, &s);
    if !(delta_q > significance) {
        return Ok(None);
    }
    let side = s.iter().map(|&x| x == s[0]).collect();
    Ok(Some(Split {
        side,
        eigenvalue,
        delta_q,
    }))
}

/// One accepted division.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bisection<T> {
    /// Node indices of the divided group, ascending.
    pub group: Vec<usize>,
    /// The part containing the group's smallest node, ascending.
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub delta_q: T,
    pub eigenvalue: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Partition<T> {
    /// Community of each node; communities are numbered `0..k` in order of
    /// their smallest node index.
    pub assignment: Vec<usize>,
    pub q_value: T,
    pub alpha: T,
    pub scaling: Scaling,
    /// Accepted bisections, ordered by smallest node index, parents first.
    pub history: Vec<Bisection<T>>,
}

impl<T: Scalar> Partition<T> {
    pub fn community_count(&self) -> usize {
        self.assignment.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Members of every community, ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// Renumbers communities `0..k` by first appearance in node order.
pub fn canonical_assignment(assignment: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    assignment
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Generalized modularity matrix of a group:
/// `B^(g)_ij = B_ij − δ_ij Σ_{k∈g} B_ik`.
fn group_matrix<T: Scalar>(b: &DenseMatrix<T>, group: &[usize]) -> DenseMatrix<T> {
    let mut sub = b.principal_submatrix(group);
    for (local, &i) in group.iter().enumerate() {
        let row = b.row(i);
        let correction = ordered_sum(group.iter().map(|&k| row[k]));
        sub[(local, local)] = sub[(local, local)] - correction;
    }
    sub
}

/// Final groups of a subtree and the bisections that produced them.
type Division<T> = (Vec<Vec<usize>>, Vec<Bisection<T>>);

fn divide<T: Scalar>(b: &DenseMatrix<T>, group: Vec<usize>) -> Result<Division<T>> {
    let split = leading_eigenvector_bisect(&group_matrix(b, &group))?;
    let Some(split) = split else {
        return Ok((vec![group], Vec::new()));
    };
    let (first, second): (Vec<usize>, Vec<usize>) = {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for (local, &i) in group.iter().enumerate() {
            if split.side[local] {
                first.push(i);
            } else {
                second.push(i);
            }
        }
        (first, second)
    };
    let record = Bisection {
        group,
        first: first.clone(),
        second: second.clone(),
        delta_q: split.delta_q,
        eigenvalue: split.eigenvalue,
    };
    let (left, right) = rayon::join(|| divide(b, first), || divide(b, second));
    let (mut groups, mut history) = left?;
    let (right_groups, right_history) = right?;
    groups.extend(right_groups);
    history.push(record);
    history.extend(right_history);
    Ok((groups, history))
}

/// Recursive bisection of a modularity matrix until no division increases
/// `Q`.
pub fn bisect_recursively<T: Scalar>(
    modularity: &ModularityMatrix<T>,
) -> Result<(Vec<usize>, Vec<Bisection<T>>)> {
    let n = modularity.matrix.rows();
    let (mut groups, mut history) = divide(&modularity.matrix, (0..n).collect())?;
    groups.sort_by_key(|g| g[0]);
    let mut assignment = vec![0; n];
    for (c, members) in groups.iter().enumerate() {
        for &i in members {
            assignment[i] = c;
        }
    }
    history.sort_by_key(|h| (h.group[0], Reverse(h.group.len())));
    Ok((assignment, history))
}

/// Communities maximizing the path-based modularity at `α`.
pub fn detect_communities<T: Scalar>(
    g: &Graph<T>,
    alpha: T,
    config: &CommunityConfig<T>,
) -> Result<Partition<T>> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let conn = connectivity_matrix(g, alpha, config)?;
    detect_with_connectivity(&conn, alpha)
}

/// [`detect_communities`] for a precomputed connectivity matrix.
pub fn detect_with_connectivity<T: Scalar>(
    conn: &Connectivity<T>,
    alpha: T,
) -> Result<Partition<T>> {
    let modularity = ModularityMatrix::from_connectivity(&conn.matrix, alpha)?;
    let (assignment, history) = bisect_recursively(&modularity)?;
    let q_value = modularity.modularity(&assignment)?;
    Ok(Partition {
        assignment,
        q_value,
        alpha,
        scaling: conn.scaling,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Graph {
        let labels = (0..n).map(|i| i.to_string()).collect();
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

    fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        graph(n, &pairs)
    }

    #[test]
    fn connectivity_at_alpha_zero_is_adjacency() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let c = connectivity_matrix(&g, 0.0, &CommunityConfig::default()).unwrap();
        assert_eq!(c.matrix, g.adjacency());
        assert_eq!(c.scaling, Scaling::Unnormalized);
    }

    #[test]
    fn two_node_connectivity_by_hand() {
        let g = graph(2, &[(0, 1)]);
        let c = connectivity_matrix(&g, 0.5, &CommunityConfig::default()).unwrap();
        let expected = DenseMatrix::from_rows(&[[0.5, 1.0], [1.0, 0.5]]).scaled(1.0 / 0.75);
        assert!(c.matrix.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn auto_scaling_switches_past_radius() {
        let g = graph(2, &[(0, 1)]);
        let c = connectivity_matrix(&g, 1.0, &CommunityConfig::default()).unwrap();
        assert_eq!(c.scaling, Scaling::Normalized);
        assert!((c.matrix.grand_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rounding_requires_unnormalized() {
        let g = graph(2, &[(0, 1)]);
        let config = CommunityConfig {
            rounding: true,
            ..CommunityConfig::default()
        };
        assert!(connectivity_matrix(&g, 0.1, &config).is_err());
        let config = CommunityConfig {
            rounding: true,
            scaling: Scaling::Unnormalized,
            ..CommunityConfig::default()
        };
        let c = connectivity_matrix(&g, 0.5, &config).unwrap();
        // [[0.667, 1.333], ...] rounds to [[1, 1], [1, 1]]
        assert_eq!(c.matrix, DenseMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]));
    }

    #[test]
    fn null_model_of_triangle() {
        let a = complete(3).adjacency();
        let null = null_model(&a).unwrap();
        assert_eq!(null.total, 6.0);
        for i in 0..3 {
            for j in 0..3 {
                assert!((null.expected[(i, j)] - 4.0 / 6.0).abs() < 1e-15);
            }
        }
        let b = ModularityMatrix::from_connectivity(&a, 0.0).unwrap();
        assert!(b.matrix.row_sums().iter().all(|x| x.abs() < 1e-12));
        assert!(!b.symmetrized);
        assert!(null_model(&DenseMatrix::<f64>::zeros(2, 2)).is_err());
    }

    #[test]
    fn singleton_partition_of_complete_graph_is_negative() {
        let g = complete(4);
        let q = modularity_value(&g, &[0, 1, 2, 3], 0.1).unwrap();
        assert!(q < 0.0);
        let q = modularity_value(&g, &[0, 0, 0, 0], 0.1).unwrap();
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn separates_disconnected_cliques() {
        let mut pairs = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    pairs.push((base + i, base + j));
                }
            }
        }
        let g = graph(8, &pairs);
        let p = detect_communities(&g, 0.0, &CommunityConfig::default()).unwrap();
        assert_eq!(p.assignment, vec![0, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(p.history.len(), 1);
        assert!(p.q_value > 0.0);
    }

    #[test]
    fn negative_spectrum_means_no_split() {
        let b = DenseMatrix::from_rows(&[[-2.0, 0.5], [0.5, -2.0]]);
        assert!(leading_eigenvector_bisect(&b).unwrap().is_none());
        let g = complete(5);
        let p = detect_communities(&g, 0.0, &CommunityConfig::default()).unwrap();
        assert_eq!(p.community_count(), 1);
        assert!(p.q_value.abs() < 1e-12);
    }

    #[test]
    fn canonical_numbering() {
        assert_eq!(canonical_assignment(&[5, 5, 2, 7, 2]), vec![0, 0, 1, 2, 1]);
    }
}
