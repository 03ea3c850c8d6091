//! Scoring partitions against ground truth, alpha sweeps, ranking
//! comparison and within/between-community role coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::community::{connectivity_matrix, detect_with_connectivity, CommunityConfig, Scaling};
use crate::error::{Error, Result};
use crate::formats::EXCLUDED_CLASS;
use crate::graph::Graph;
use crate::scalar::{ordered_sum, Scalar};

/// Known class of each node, keyed by node label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroundTruth {
    pub labels: BTreeMap<String, String>,
    /// Distinct classes in first-appearance order.
    pub classes: Vec<String>,
    /// Nodes deliberately left out of evaluation.
    pub excluded: BTreeSet<String>,
}

impl GroundTruth {
    /// Builds from `(node, class)` pairs; class `-` marks an exclusion.
    pub fn from_pairs<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut truth = GroundTruth::default();
        for (node, class) in pairs {
            let (node, class) = (node.into(), class.into());
            if truth.labels.contains_key(&node) || truth.excluded.contains(&node) {
                return Err(Error::DuplicateLabel(node));
            }
            if class == EXCLUDED_CLASS {
                truth.excluded.insert(node);
                continue;
            }
            if !truth.classes.contains(&class) {
                truth.classes.push(class.clone());
            }
            truth.labels.insert(node, class);
        }
        Ok(truth)
    }

    /// Parses a `node<TAB>class` file.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_pairs(crate::formats::parse_label_lines(text)?)
    }

    /// Takes each node's class from a node attribute, e.g. GML `value`.
    pub fn from_attribute<T: Scalar>(g: &Graph<T>, key: &str) -> Result<Self> {
        let pairs = (0..g.node_count())
            .map(|i| {
                g.attributes(i)
                    .get(key)
                    .map(|c| (g.label(i).to_string(), c.clone()))
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "node `{}` has no `{key}` attribute",
                            g.label(i)
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs)
    }

    /// Class index of every node of `g`, `None` for excluded nodes. Fails if
    /// a node is neither labeled nor excluded.
    pub fn resolve<T: Scalar>(&self, g: &Graph<T>) -> Result<Vec<Option<usize>>> {
        let index: HashMap<&str, usize> = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        g.labels()
            .iter()
            .map(|label| match self.labels.get(label) {
                Some(class) => Ok(Some(index[class.as_str()])),
                None if self.excluded.contains(label) => Ok(None),
                None => Err(Error::InvalidParameter(format!(
                    "node `{label}` has no ground-truth class"
                ))),
            })
            .collect()
    }
}

fn pairs(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Fraction of same-class node pairs that share a discovered community.
///
/// Nodes whose class is `None` take no part. Fails when no two classified
/// nodes share a class.
pub fn purity(assignment: &[usize], classes: &[Option<usize>]) -> Result<f64> {
    if assignment.len() != classes.len() {
        return Err(Error::LengthMismatch {
            expected: classes.len(),
            found: assignment.len(),
        });
    }
    let mut per_class: HashMap<usize, usize> = HashMap::new();
    let mut per_cell: HashMap<(usize, usize), usize> = HashMap::new();
    for (&community, class) in assignment.iter().zip(classes) {
        if let Some(class) = *class {
            *per_class.entry(class).or_default() += 1;
            *per_cell.entry((class, community)).or_default() += 1;
        }
    }
    let total: u64 = per_class.values().map(|&n| pairs(n)).sum();
    if total == 0 {
        return Err(Error::NoSameClassPair);
    }
    let kept: u64 = per_cell.values().map(|&n| pairs(n)).sum();
    Ok(kept as f64 / total as f64)
}

/// Outcome of community detection at one `α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord<T> {
    pub alpha: T,
    pub group_count: usize,
    /// `None` when no ground truth was supplied.
    pub purity: Option<f64>,
    pub q_value: T,
    pub scaling: Scaling,
    /// Normalized alpha-centrality row sums at this `α`.
    pub node_scores: Vec<T>,
    pub assignment: Vec<usize>,
}

/// Community detection, purity and scores for each `α`, computed in
/// parallel and returned in the order given.
pub fn sweep<T: Scalar>(
    g: &Graph<T>,
    classes: Option<&[Option<usize>]>,
    alphas: &[T],
    config: &CommunityConfig<T>,
) -> Result<Vec<SweepRecord<T>>> {
    alphas
        .par_iter()
        .map(|&alpha| {
            let conn = connectivity_matrix(g, alpha, config)?;
            let total = conn.matrix.grand_sum();
            let node_scores = conn
                .matrix
                .row_sums()
                .into_iter()
                .map(|x| x / total)
                .collect();
            let partition = detect_with_connectivity(&conn, alpha)?;
            let purity = classes
                .map(|c| purity(&partition.assignment, c))
                .transpose()?;
            Ok(SweepRecord {
                alpha,
                group_count: partition.community_count(),
                purity,
                q_value: partition.q_value,
                scaling: partition.scaling,
                node_scores,
                assignment: partition.assignment,
            })
        })
        .collect()
}

/// Compares labels numerically when both parse as integers, otherwise as
/// strings.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Node indices by descending score; equal scores are ordered by label
/// ascending (see [`natural_cmp`]).
pub fn rank_nodes<T: Scalar, S: AsRef<str>>(scores: &[T], labels: &[S]) -> Result<Vec<usize>> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            found: scores.len(),
        });
    }
    if let Some(i) = scores.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteScore {
            label: labels[i].as_ref().to_string(),
        });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| {
        scores[j]
            .partial_cmp(&scores[i])
            .unwrap_or(Ordering::Equal)
            .then_with(|| natural_cmp(labels[i].as_ref(), labels[j].as_ref()))
    });
    Ok(order)
}

/// True when `a` and `b` induce the same ordering of all pairs, counting
/// differences smaller than `tol` as ties.
pub fn ordering_equal<T: Scalar>(a: &[T], b: &[T], tol: T) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let sign = |d: T| {
        if d.abs() < tol {
            0
        } else if d > T::zero() {
            1
        } else {
            -1
        }
    };
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| sign(a[i] - a[j]) == sign(b[i] - b[j])))
}

/// Node role in the z–P plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    UltraPeripheral,
    Peripheral,
    NonHubConnector,
    NonHubKinless,
    ProvincialHub,
    ConnectorHub,
    KinlessHub,
}

/// Within-community degree z-score above which a node is a hub.
pub const HUB_THRESHOLD: f64 = 2.5;

impl Role {
    pub fn classify(z: f64, p: f64) -> Self {
        if z >= HUB_THRESHOLD {
            if p <= 0.30 {
                Role::ProvincialHub
            } else if p <= 0.75 {
                Role::ConnectorHub
            } else {
                Role::KinlessHub
            }
        } else if p <= 0.05 {
            Role::UltraPeripheral
        } else if p <= 0.62 {
            Role::Peripheral
        } else if p <= 0.80 {
            Role::NonHubConnector
        } else {
            Role::NonHubKinless
        }
    }

    pub fn is_hub(self) -> bool {
        matches!(
            self,
            Role::ProvincialHub | Role::ConnectorHub | Role::KinlessHub
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoleCoordinates<T> {
    /// Within-community degree z-score.
    pub z: Vec<T>,
    /// Participation coefficient.
    pub p: Vec<T>,
    pub roles: Vec<Role>,
}

/// z-score of each node's within-community degree and its participation
/// coefficient `P_i = 1 − Σ_s (κ_is / k_i)²`, from the (weighted)
/// out-links of `A`.
///
/// The standard deviation is the population one; members of singleton or
/// uniform-degree communities get `z = 0`, nodes without links `P = 0`.
pub fn role_coordinates<T: Scalar>(
    g: &Graph<T>,
    assignment: &[usize],
) -> Result<RoleCoordinates<T>> {
    let n = g.node_count();
    if assignment.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: assignment.len(),
        });
    }
    let k = assignment.iter().copied().max().map_or(0, |m| m + 1);
    let mut kappa = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    for i in 0..n {
        let mut per_community = vec![T::zero(); k];
        for &(j, w) in g.out_neighbors(i) {
            per_community[assignment[j]] = per_community[assignment[j]] + w;
        }
        kappa[i] = per_community[assignment[i]];
        let degree = ordered_sum(per_community.iter().copied());
        if degree > T::zero() {
            let concentration =
                ordered_sum(per_community.iter().map(|&x| (x / degree) * (x / degree)));
            p[i] = (T::one() - concentration).max(T::zero());
        }
    }
    let mut z = vec![T::zero(); n];
    for c in 0..k {
        let members: Vec<usize> = (0..n).filter(|&i| assignment[i] == c).collect();
        if members.len() < 2 {
            continue;
        }
        let count = T::of_usize(members.len());
        let mean = ordered_sum(members.iter().map(|&i| kappa[i])) / count;
        let var = ordered_sum(
            members
                .iter()
                .map(|&i| (kappa[i] - mean) * (kappa[i] - mean)),
        ) / count;
        let sd = var.sqrt();
        if sd > T::zero() {
            for &i in &members {
                z[i] = (kappa[i] - mean) / sd;
            }
        }
    }
    let roles = z
        .iter()
        .zip(&p)
        .map(|(&z, &p)| Role::classify(z.as_f64(), p.as_f64()))
        .collect();
    Ok(RoleCoordinates { z, p, roles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn purity_basics() {
        let classes = [Some(0), Some(0), Some(1), Some(1), None];
        assert_eq!(purity(&[0, 0, 0, 0, 0], &classes).unwrap(), 1.0);
        assert_eq!(purity(&[0, 0, 1, 1, 2], &classes).unwrap(), 1.0);
        assert_eq!(purity(&[0, 1, 2, 2, 2], &classes).unwrap(), 0.5);
        assert!(matches!(
            purity(&[0, 1], &[Some(0), Some(1)]),
            Err(Error::NoSameClassPair)
        ));
        assert!(purity(&[0], &classes).is_err());
    }

    #[test]
    fn truth_from_pairs_and_resolution() {
        let truth = GroundTruth::from_pairs([("a", "x"), ("b", "y"), ("c", "-")]).unwrap();
        assert_eq!(truth.classes, ["x", "y"]);
        assert!(truth.excluded.contains("c"));
        let g: Graph = Graph::new(
            vec!["c".into(), "a".into(), "b".into()],
            false,
            vec![Edge {
                source: 0,
                target: 1,
                weight: 1.0,
            }],
        )
        .unwrap();
        assert_eq!(truth.resolve(&g).unwrap(), vec![None, Some(0), Some(1)]);
        let partial = GroundTruth::from_pairs([("a", "x")]).unwrap();
        assert!(partial.resolve(&g).is_err());
        assert!(GroundTruth::from_pairs([("a", "x"), ("a", "y")]).is_err());
    }

    #[test]
    fn ranking_ties_follow_labels() {
        let labels = ["10", "9", "b", "a"];
        assert_eq!(
            rank_nodes(&[1.0, 1.0, 1.0, 1.0], &labels).unwrap(),
            vec![1, 0, 3, 2]
        );
        assert_eq!(
            rank_nodes(&[0.1, 0.3, 0.2, 0.3], &labels).unwrap(),
            vec![1, 3, 2, 0]
        );
        assert!(rank_nodes(&[f64::NAN, 1.0, 0.0, 0.0], &labels).is_err());
    }

    #[test]
    fn ordering_examples() {
        assert!(ordering_equal(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0], 1e-12));
        assert!(!ordering_equal(&[1.0, 2.0], &[2.0, 1.0], 1e-12));
        assert!(ordering_equal(&[1.0, 1.0 + 1e-14], &[5.0, 5.0], 1e-12));
        assert!(!ordering_equal(&[1.0], &[1.0, 2.0], 1e-12));
    }

    #[test]
    fn role_thresholds() {
        assert_eq!(Role::classify(0.0, 0.0), Role::UltraPeripheral);
        assert_eq!(Role::classify(1.0, 0.5), Role::Peripheral);
        assert_eq!(Role::classify(1.0, 0.7), Role::NonHubConnector);
        assert_eq!(Role::classify(1.0, 0.9), Role::NonHubKinless);
        assert_eq!(Role::classify(3.0, 0.1), Role::ProvincialHub);
        assert_eq!(Role::classify(3.0, 0.5), Role::ConnectorHub);
        assert_eq!(Role::classify(3.0, 0.8), Role::KinlessHub);
    }

    #[test]
    fn participation_of_split_node() {
        // node 0 links once into each of two communities
        let g: Graph = Graph::new(
            (0..3).map(|i| i.to_string()).collect(),
            false,
            vec![
                Edge {
                    source: 0,
                    target: 1,
                    weight: 1.0,
                },
                Edge {
                    source: 0,
                    target: 2,
                    weight: 1.0,
                },
            ],
        )
        .unwrap();
        let roles = role_coordinates(&g, &[0, 0, 1]).unwrap();
        assert!((roles.p[0] - 0.5).abs() < 1e-15);
        assert_eq!(roles.p[1], 0.0);
        assert_eq!(roles.z[2], 0.0);
    }
}
