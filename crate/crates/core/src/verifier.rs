//! Polynomial popularity check.
//!
//! Add a loop at every vertex; give loops of vertices covered by the
//! reference matching `M` weight -1 and all other loops 0; give (+,+) edges
//! weight 2, (-,-) edges weight -2 and every other edge 0. A perfect
//! matching of this graph (loops included) is an ordinary matching `N` plus
//! loops on the vertices it leaves uncovered, and its weight is exactly the
//! election margin of `N` over `M`. `M` with its loops scores 0, so `M` is
//! popular iff the maximum is 0.

use std::collections::BTreeMap;

use crate::blossom::max_weight_matching;
use crate::election::{labels_unchecked, VoteSign};
use crate::error::Result;
use crate::instance::{Edge, Instance, Vertex};
use crate::matching::Matching;

/// Loop-augmented weighting of an instance relative to a matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWeightedGraph {
    loop_weight: Vec<i64>,
    edge_weight: BTreeMap<Edge, i64>,
}

impl LoopWeightedGraph {
    pub fn loop_weight(&self, v: Vertex) -> i64 {
        self.loop_weight[v.index()]
    }

    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Option<i64> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_weight.get(&key).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, i64)> + '_ {
        self.edge_weight.iter().map(|(&e, &w)| (e, w))
    }

    /// Weight of the perfect matching formed by `m` plus loops on every
    /// vertex `m` leaves uncovered.
    pub fn weight_of(&self, m: &Matching) -> i64 {
        let edges: i64 = m
            .edges()
            .iter()
            .map(|&(u, v)| self.edge_weight(u, v).expect("matching edges exist"))
            .sum();
        let loops: i64 = m.uncovered().iter().map(|&v| self.loop_weight(v)).sum();
        edges + loops
    }
}

pub(crate) fn weighted_graph_unchecked(inst: &Instance, m: &Matching) -> LoopWeightedGraph {
    let loop_weight = inst
        .vertices()
        .map(|v| if m.covers(v) { -1 } else { 0 })
        .collect();
    let mut edge_weight: BTreeMap<Edge, i64> = labels_unchecked(inst, m)
        .iter()
        .map(|(e, label)| {
            let w = match label {
                (VoteSign::Plus, VoteSign::Plus) => 2,
                (VoteSign::Minus, VoteSign::Minus) => -2,
                _ => 0,
            };
            (e, w)
        })
        .collect();
    for e in m.edges() {
        edge_weight.insert(e, 0);
    }
    LoopWeightedGraph {
        loop_weight,
        edge_weight,
    }
}

/// Builds the loop-augmented weighted graph for `m`.
pub fn build_weighted_graph(inst: &Instance, m: &Matching) -> Result<LoopWeightedGraph> {
    m.validate(inst)?;
    Ok(weighted_graph_unchecked(inst, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PopularityVerdict {
    Popular,
    /// `witness` beats the tested matching by `margin` votes.
    NotPopular {
        witness: Matching,
        margin: i64,
    },
}

impl PopularityVerdict {
    pub fn is_popular(&self) -> bool {
        matches!(self, PopularityVerdict::Popular)
    }
}

/// Maximum-weight perfect matching of the loop-augmented graph, loops
/// stripped, with its weight.
pub(crate) fn best_challenger(inst: &Instance, graph: &LoopWeightedGraph) -> (Matching, i64) {
    // Choosing edge (u,v) instead of both loops gains w(u,v) - l(u) - l(v),
    // so a plain maximum weight matching on the gains is optimal.
    let gains: Vec<(usize, usize, i64)> = graph
        .edges()
        .map(|((u, v), w)| (u, v, w - graph.loop_weight(u) - graph.loop_weight(v)))
        .filter(|&(_, _, g)| g > 0)
        .map(|(u, v, g)| (u.index(), v.index(), g))
        .collect();
    let mate = max_weight_matching(inst.n(), &gains);
    let mut challenger = Matching::empty(inst.n());
    for (u, m) in mate.iter().enumerate() {
        if let Some(v) = *m {
            if u < v {
                challenger.link(Vertex::new(u), Vertex::new(v));
            }
        }
    }
    let weight = graph.weight_of(&challenger);
    (challenger, weight)
}

pub(crate) fn verify_unchecked(inst: &Instance, m: &Matching) -> PopularityVerdict {
    let graph = weighted_graph_unchecked(inst, m);
    let (witness, margin) = best_challenger(inst, &graph);
    debug_assert!(margin >= 0);
    if margin > 0 {
        PopularityVerdict::NotPopular { witness, margin }
    } else {
        PopularityVerdict::Popular
    }
}

/// Decides popularity of `m` in polynomial time. On failure the verdict
/// carries a matching that wins the election, and by how much.
pub fn verify_popular(inst: &Instance, m: &Matching) -> Result<PopularityVerdict> {
    m.validate(inst)?;
    Ok(verify_unchecked(inst, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::delta;
    use crate::instance::fixtures::*;

    #[test]
    fn weights_for_k4() {
        let inst = k4();
        let v = |s| inst.vertex(s).unwrap();
        let m = Matching::from_named(&inst, &[("a", "b"), ("d", "e")]).unwrap();
        let g = build_weighted_graph(&inst, &m).unwrap();
        assert!(inst.vertices().all(|x| g.loop_weight(x) == -1));
        assert_eq!(g.edge_weight(v("b"), v("d")), Some(2));
        assert_eq!(g.edge_weight(v("a"), v("b")), Some(0));
        assert_eq!(g.weight_of(&m), 0);

        let empty = Matching::empty(4);
        let g = build_weighted_graph(&inst, &empty).unwrap();
        assert!(inst.vertices().all(|x| g.loop_weight(x) == 0));
        assert!(g.edges().all(|(_, w)| w == 2));
        assert_eq!(g.weight_of(&empty), 0);
    }

    #[test]
    fn first_choice_matching_weights() {
        let inst = Instance::parse("a: b d\nb: a d e\nd: e a b\ne: d b\n").unwrap();
        let m = Matching::from_named(&inst, &[("a", "b"), ("d", "e")]).unwrap();
        let g = build_weighted_graph(&inst, &m).unwrap();
        for ((u, v), w) in g.edges() {
            let expected = if m.contains(u, v) { 0 } else { -2 };
            assert_eq!(w, expected);
        }
        assert!(inst.vertices().all(|x| g.loop_weight(x) == -1));
        assert!(verify_popular(&inst, &m).unwrap().is_popular());
    }

    #[test]
    fn k4_verdicts() {
        let inst = k4();
        let m = Matching::from_named(&inst, &[("a", "b"), ("d", "e")]).unwrap();
        assert_eq!(
            verify_popular(&inst, &m).unwrap(),
            PopularityVerdict::Popular
        );

        let empty = Matching::empty(4);
        match verify_popular(&inst, &empty).unwrap() {
            PopularityVerdict::NotPopular { witness, margin } => {
                assert_eq!(margin, delta(&inst, &empty, &witness).unwrap());
                // the best challenger of the empty matching is perfect
                assert_eq!(margin, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_none_full_matching_is_not_popular() {
        let inst = odd_none();
        let m = Matching::from_named(&inst, &[("a", "b"), ("d", "e"), ("f", "g")]).unwrap();
        match verify_popular(&inst, &m).unwrap() {
            PopularityVerdict::NotPopular { witness, margin } => {
                assert!(margin >= 1);
                assert_eq!(margin, delta(&inst, &m, &witness).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
