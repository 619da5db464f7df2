//! Surviving-pair graphs over synthetic center trajectories.
//!
//! A pair of escaping packets survives when its covariance-center sequence
//! stays bounded; the surviving pairs of a valid family form a disjoint union
//! of chains (an undirected matching when tau = 1/2).

use crate::error::{PhaseLabError, Result};
use crate::grid::PhasePoint;
use crate::phase_space::{covariance_center, TauParam};

/// A synthetic trajectory `n -> z^{(n)}` of one profile's center.
#[derive(Debug, Clone)]
pub struct CenterTrajectory {
    pub points: Vec<PhasePoint>,
    /// Pairwise separations must exceed this at the final index.
    pub divergence_threshold: f64,
}

impl CenterTrajectory {
    pub fn new(points: Vec<PhasePoint>, divergence_threshold: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(PhaseLabError::InvalidParameter(
                "a center trajectory needs at least one point".into(),
            ));
        }
        Ok(Self {
            points,
            divergence_threshold,
        })
    }
}

/// Directed graph of surviving ordered pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl PairGraph {
    pub fn out_degree(&self, j: usize) -> usize {
        self.edges.iter().filter(|(a, _)| *a == j).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.edges.iter().filter(|(_, b)| *b == j).count()
    }

    /// True when every edge has its reverse: the tau = 1/2 matching case.
    pub fn is_symmetric(&self) -> bool {
        self.edges
            .iter()
            .all(|(a, b)| self.edges.contains(&(*b, *a)))
    }

    /// Cycle check ignoring trivial 2-cycles from symmetric edges.
    pub fn is_acyclic(&self) -> bool {
        // With in/out degree <= 1 the graph is a union of paths and cycles;
        // follow each chain and see whether it comes back around.
        for start in 0..self.nodes {
            let mut current = start;
            let mut steps = 0;
            while let Some(&(_, next)) = self.edges.iter().find(|(a, _)| *a == current) {
                current = next;
                steps += 1;
                if current == start {
                    return false;
                }
                if steps > self.nodes {
                    return false;
                }
            }
        }
        true
    }
}

/// Default bound on a surviving center sequence: ten cell diameters of the
/// default experiment grid.
pub const DEFAULT_BOUND_THRESHOLD: f64 = 10.0;

/// Build the surviving-pair graph: edge `(j, k)` when
/// `max_n |c_tau(z_j^{(n)}, z_k^{(n)})| <= bound_threshold`.
///
/// Preconditions mirror a profile decomposition: all trajectories share one
/// length and are pairwise separated at the final index. The resulting graph
/// must satisfy the degree bounds (and acyclicity when tau != 1/2) or an
/// error names the violated hypothesis.
pub fn surviving_pair_graph(
    trajectories: &[CenterTrajectory],
    tau: TauParam,
    bound_threshold: f64,
) -> Result<PairGraph> {
    let nodes = trajectories.len();
    if nodes == 0 {
        return Err(PhaseLabError::InvalidParameter(
            "at least one trajectory is required".into(),
        ));
    }
    let len = trajectories[0].points.len();
    if trajectories.iter().any(|t| t.points.len() != len) {
        return Err(PhaseLabError::InvalidParameter(
            "all trajectories must have the same length".into(),
        ));
    }
    for j in 0..nodes {
        for k in (j + 1)..nodes {
            let a = trajectories[j].points[len - 1];
            let b = trajectories[k].points[len - 1];
            let sep = (a.x - b.x).hypot(a.xi - b.xi);
            let needed = trajectories[j]
                .divergence_threshold
                .max(trajectories[k].divergence_threshold);
            if sep < needed {
                return Err(PhaseLabError::InvalidParameter(format!(
                    "trajectories {j} and {k} are separated by only {sep:.3} at the final index (need {needed:.3})"
                )));
            }
        }
    }

    let mut edges = Vec::new();
    for j in 0..nodes {
        for k in 0..nodes {
            if j == k {
                continue;
            }
            let bounded = (0..len).all(|n| {
                covariance_center(trajectories[j].points[n], trajectories[k].points[n], tau).norm()
                    <= bound_threshold
            });
            if bounded {
                edges.push((j, k));
            }
        }
    }

    let graph = PairGraph { nodes, edges };
    for j in 0..nodes {
        if graph.out_degree(j) > 1 || graph.in_degree(j) > 1 {
            return Err(PhaseLabError::PairGraphViolation(format!(
                "node {j} belongs to more than one surviving pair"
            )));
        }
    }
    let tau_v = tau.value();
    if (tau_v - 0.5).abs() < 1e-12 {
        if !graph.is_symmetric() {
            return Err(PhaseLabError::PairGraphViolation(
                "tau = 1/2 surviving pairs must form an undirected matching".into(),
            ));
        }
    } else if !graph.is_acyclic() {
        return Err(PhaseLabError::PairGraphViolation(
            "surviving-pair graph has a cycle although tau != 1/2".into(),
        ));
    }
    Ok(graph)
}
