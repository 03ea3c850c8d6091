//! Weighted adjacency structure shared by every analysis in the crate.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{ordered_sum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge<T> {
    pub source: usize,
    pub target: usize,
    pub weight: T,
}

/// A labeled, weighted graph with nonnegative weights.
///
/// `edges` keeps the input as given (an undirected edge appears once);
/// the row lists hold the aggregated adjacency `A`, where `A[i][j]` is the
/// summed weight of all edges `i -> j` and undirected edges contribute to
/// both `A[i][j]` and `A[j][i]`. Nodes are indexed in insertion order.
#[derive(Clone, Debug)]
pub struct Graph<T = f64> {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    directed: bool,
    edges: Vec<Edge<T>>,
    out: Vec<Vec<(usize, T)>>,
    inc: Vec<Vec<(usize, T)>>,
    attributes: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSummary<T> {
    pub in_degree: Vec<T>,
    pub out_degree: Vec<T>,
    pub max_in: T,
    pub max_out: T,
}

impl<T: Scalar> DegreeSummary<T> {
    /// Gershgorin bound on the spectral radius, `min(d_out_max, d_in_max)`.
    pub fn gershgorin_bound(&self) -> T {
        self.max_in.min(self.max_out)
    }
}

impl<T: Scalar> Graph<T> {
    pub fn new(labels: Vec<String>, directed: bool, edges: Vec<Edge<T>>) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); n];
        for e in &edges {
            for idx in [e.source, e.target] {
                if idx >= n {
                    return Err(Error::EndpointOutOfRange {
                        index: idx,
                        node_count: n,
                    });
                }
            }
            if !(e.weight >= T::zero()) || !e.weight.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "edge {} -> {} has invalid weight {}",
                    labels[e.source], labels[e.target], e.weight
                )));
            }
            let slot = rows[e.source].entry(e.target).or_insert_with(T::zero);
            *slot = *slot + e.weight;
            if !directed && e.source != e.target {
                let slot = rows[e.target].entry(e.source).or_insert_with(T::zero);
                *slot = *slot + e.weight;
            }
        }
        let out: Vec<Vec<(usize, T)>> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|&(_, w)| w != T::zero()).collect())
            .collect();
        let mut inc: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for (i, row) in out.iter().enumerate() {
            for &(j, w) in row {
                inc[j].push((i, w));
            }
        }
        Ok(Self {
            labels,
            index,
            directed,
            edges,
            out,
            inc,
            attributes: vec![BTreeMap::new(); n],
        })
    }

    /// Builds a graph from a dense adjacency matrix. Symmetric input may be
    /// stored as undirected.
    pub fn from_adjacency(labels: Vec<String>, a: &DenseMatrix<T>, directed: bool) -> Result<Self> {
        if !a.is_square() || a.rows() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: a.rows(),
            });
        }
        if !directed && !a.is_symmetric(T::zero()) {
            return Err(Error::InvalidParameter(
                "undirected graph requires a symmetric adjacency matrix".into(),
            ));
        }
        let n = a.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            let start = if directed { 0 } else { i };
            for j in start..n {
                let w = a[(i, j)];
                if w != T::zero() {
                    edges.push(Edge {
                        source: i,
                        target: j,
                        weight: w,
                    });
                }
            }
        }
        Self::new(labels, directed, edges)
    }

    pub fn with_attributes(mut self, attributes: Vec<BTreeMap<String, String>>) -> Result<Self> {
        if attributes.len() != self.node_count() {
            return Err(Error::LengthMismatch {
                expected: self.node_count(),
                found: attributes.len(),
            });
        }
        self.attributes = attributes;
        Ok(self)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edges as supplied at construction.
    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    /// Number of distinct nonzero adjacency entries, counting an undirected
    /// pair once.
    pub fn link_count(&self) -> usize {
        let entries: usize = self.out.iter().map(Vec::len).sum();
        if self.directed {
            entries
        } else {
            let loops = (0..self.node_count())
                .filter(|&i| self.out[i].iter().any(|&(j, _)| j == i))
                .count();
            (entries - loops) / 2 + loops
        }
    }

    /// Nonzero entries of row `i` of `A` as `(column, weight)`, sorted by column.
    #[inline]
    pub fn out_neighbors(&self, i: usize) -> &[(usize, T)] {
        &self.out[i]
    }

    /// Nonzero entries of column `j` of `A` as `(row, weight)`, sorted by row.
    #[inline]
    pub fn in_neighbors(&self, j: usize) -> &[(usize, T)] {
        &self.inc[j]
    }

    pub fn attributes(&self, i: usize) -> &BTreeMap<String, String> {
        &self.attributes[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> T {
        self.out[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|p| self.out[i][p].1)
            .unwrap_or_else(|_| T::zero())
    }

    pub fn adjacency(&self) -> DenseMatrix<T> {
        let n = self.node_count();
        let mut a = DenseMatrix::zeros(n, n);
        for (i, row) in self.out.iter().enumerate() {
            for &(j, w) in row {
                a[(i, j)] = w;
            }
        }
        a
    }

    /// Grand sum of the adjacency matrix.
    pub fn total_weight(&self) -> T {
        ordered_sum(self.out.iter().flat_map(|r| r.iter().map(|&(_, w)| w)))
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.out
            .iter()
            .map(|row| ordered_sum(row.iter().map(|&(j, w)| w * x[j])))
            .collect()
    }

    /// `yᵀ = xᵀ A`.
    pub fn vec_mul(&self, x: &[T]) -> Vec<T> {
        self.inc
            .iter()
            .map(|col| ordered_sum(col.iter().map(|&(i, w)| x[i] * w)))
            .collect()
    }

    /// `M · A` for a dense `M`, in `O(rows(M) · nnz(A))`. Rows are computed
    /// in parallel; each row is an ordered sum, so the result does not depend
    /// on the thread count.
    pub fn right_mul(&self, m: &DenseMatrix<T>) -> DenseMatrix<T> {
        let n = self.node_count();
        assert_eq!(m.cols(), n);
        let mut out = DenseMatrix::zeros(m.rows(), n);
        if n == 0 {
            return out;
        }
        out.as_mut_slice()
            .par_chunks_mut(n)
            .zip(m.as_slice().par_chunks(n))
            .for_each(|(dst, src)| {
                for (j, col) in self.inc.iter().enumerate() {
                    dst[j] = ordered_sum(col.iter().map(|&(k, w)| src[k] * w));
                }
            });
        out
    }

    /// `A + Aᵀ`, marked undirected.
    pub fn symmetrize(&self) -> Self {
        let n = self.node_count();
        let mut edges = Vec::new();
        for i in 0..n {
            for &(j, w) in &self.out[i] {
                if j < i {
                    continue;
                }
                let s = if j == i { w + w } else { w + self.weight(j, i) };
                edges.push(Edge {
                    source: i,
                    target: j,
                    weight: s,
                });
            }
            // entries present only below the diagonal in row i
            for &(j, w) in &self.inc[i] {
                if j > i && self.weight(i, j) == T::zero() {
                    edges.push(Edge {
                        source: i,
                        target: j,
                        weight: w,
                    });
                }
            }
        }
        let mut g = Self::new(self.labels.clone(), false, edges)
            .expect("symmetrizing a valid graph yields a valid graph");
        g.attributes = self.attributes.clone();
        g
    }

    pub fn degree_summary(&self) -> DegreeSummary<T> {
        let out_degree: Vec<T> = self
            .out
            .iter()
            .map(|r| ordered_sum(r.iter().map(|&(_, w)| w)))
            .collect();
        let in_degree: Vec<T> = self
            .inc
            .iter()
            .map(|c| ordered_sum(c.iter().map(|&(_, w)| w)))
            .collect();
        let max = |v: &[T]| v.iter().copied().fold(T::zero(), T::max);
        DegreeSummary {
            max_in: max(&in_degree),
            max_out: max(&out_degree),
            in_degree,
            out_degree,
        }
    }
}
