//! Votes, edge labels and head-to-head elections between matchings,
//! plus the exhaustive popularity oracle used for cross-validation.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::instance::{edge, Edge, Instance, Vertex};
use crate::matching::Matching;

/// Default cap on the number of edges for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 24;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VoteSign {
    Plus,
    Minus,
}

impl VoteSign {
    pub fn value(self) -> i64 {
        match self {
            VoteSign::Plus => 1,
            VoteSign::Minus => -1,
        }
    }
}

/// Label of a non-matching edge: the votes of its two endpoints.
pub type Label = (VoteSign, VoteSign);

/// Labels of every non-matching edge, keyed by the edge with its smaller
/// endpoint first. The first component is that endpoint's vote.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabelMap {
    labels: BTreeMap<Edge, Label>,
}

impl EdgeLabelMap {
    /// Label oriented as (vote of `u`, vote of `v`).
    pub fn label(&self, u: Vertex, v: Vertex) -> Option<Label> {
        let (a, b) = *self.labels.get(&edge(u, v))?;
        Some(if u < v { (a, b) } else { (b, a) })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Label)> + '_ {
        self.labels.iter().map(|(&e, &l)| (e, l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edges labelled (+,+).
    pub fn blocking(&self) -> Vec<Edge> {
        self.iter()
            .filter(|&(_, l)| l == (VoteSign::Plus, VoteSign::Plus))
            .map(|(e, _)| e)
            .collect()
    }
}

fn raw_vote(inst: &Instance, m: &Matching, u: Vertex, v: Vertex) -> VoteSign {
    if inst.prefers_opt(u, Some(v), m.partner(u)) {
        VoteSign::Plus
    } else {
        VoteSign::Minus
    }
}

/// vote_u(v, M): `Plus` iff `u` prefers `v` to its partner in `m`.
pub fn vote(inst: &Instance, m: &Matching, u: Vertex, v: Vertex) -> Result<VoteSign> {
    m.validate(inst)?;
    inst.check_vertex(u)?;
    inst.check_vertex(v)?;
    if !inst.is_edge(u, v) {
        return Err(Error::NotAnEdge(inst.name(u).into(), inst.name(v).into()));
    }
    if m.contains(u, v) {
        return Err(Error::MatchingEdge(
            inst.name(u).into(),
            inst.name(v).into(),
        ));
    }
    Ok(raw_vote(inst, m, u, v))
}

pub(crate) fn labels_unchecked(inst: &Instance, m: &Matching) -> EdgeLabelMap {
    let labels = inst
        .edges()
        .into_iter()
        .filter(|&(u, v)| !m.contains(u, v))
        .map(|(u, v)| ((u, v), (raw_vote(inst, m, u, v), raw_vote(inst, m, v, u))))
        .collect();
    EdgeLabelMap { labels }
}

/// Labels every edge outside `m` with its endpoints' votes.
pub fn label_edges(inst: &Instance, m: &Matching) -> Result<EdgeLabelMap> {
    m.validate(inst)?;
    Ok(labels_unchecked(inst, m))
}

pub(crate) fn blocking_unchecked(inst: &Instance, m: &Matching) -> Vec<Edge> {
    inst.edges()
        .into_iter()
        .filter(|&(u, v)| {
            !m.contains(u, v)
                && inst.prefers_opt(u, Some(v), m.partner(u))
                && inst.prefers_opt(v, Some(u), m.partner(v))
        })
        .collect()
}

/// Edges blocking `m`, i.e. the (+,+) edges.
pub fn blocking_edges(inst: &Instance, m: &Matching) -> Result<Vec<Edge>> {
    m.validate(inst)?;
    Ok(blocking_unchecked(inst, m))
}

pub(crate) fn delta_unchecked(inst: &Instance, m: &Matching, n: &Matching) -> i64 {
    inst.vertices()
        .map(|v| {
            let (a, b) = (m.partner(v), n.partner(v));
            if a == b {
                0
            } else if inst.prefers_opt(v, b, a) {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Election margin of `n` over `m`: vertices preferring `n` minus
/// vertices preferring `m`. Indifferent vertices count zero.
pub fn delta(inst: &Instance, m: &Matching, n: &Matching) -> Result<i64> {
    m.validate(inst)?;
    n.validate(inst)?;
    Ok(delta_unchecked(inst, m, n))
}

fn check_bound(inst: &Instance, bound: usize) -> Result<()> {
    if inst.m() > bound {
        Err(Error::BoundExceeded {
            edges: inst.m(),
            bound,
        })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every matching of `inst`, the empty one first. Stops
/// early when `visit` breaks.
pub fn for_each_matching<F>(inst: &Instance, bound: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&Matching) -> ControlFlow<()>,
{
    check_bound(inst, bound)?;
    let mut neighbours: Vec<Vec<Vertex>> = inst
        .vertices()
        .map(|u| inst.prefs(u).iter().copied().filter(|&v| v > u).collect())
        .collect();
    for list in &mut neighbours {
        list.sort_unstable();
    }
    let mut m = Matching::empty(inst.n());
    let _ = visit_from(0, &neighbours, &mut m, &mut visit);
    Ok(())
}

fn visit_from<F>(
    start: usize,
    neighbours: &[Vec<Vertex>],
    m: &mut Matching,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Matching) -> ControlFlow<()>,
{
    let mut u = start;
    while u < neighbours.len() && m.covers(Vertex::new(u)) {
        u += 1;
    }
    if u == neighbours.len() {
        return visit(m);
    }
    // u stays uncovered
    visit_from(u + 1, neighbours, m, visit)?;
    let uv = Vertex::new(u);
    for &v in &neighbours[u] {
        if !m.covers(v) {
            m.link(uv, v);
            let flow = visit_from(u + 1, neighbours, m, visit);
            m.unlink(uv);
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Every matching of `inst`, in a fixed order starting with the empty one.
pub fn enumerate_matchings(inst: &Instance, bound: usize) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_matching(inst, bound, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Brute-force popularity test: no matching wins an election against `m`.
pub fn oracle_is_popular(inst: &Instance, m: &Matching, bound: usize) -> Result<bool> {
    m.validate(inst)?;
    let mut popular = true;
    for_each_matching(inst, bound, |n| {
        if delta_unchecked(inst, m, n) > 0 {
            popular = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(popular)
}

/// The matching with the largest election margin over `m` (first one in
/// enumeration order on ties), together with that margin.
pub fn oracle_best_challenger(
    inst: &Instance,
    m: &Matching,
    bound: usize,
) -> Result<(Matching, i64)> {
    m.validate(inst)?;
    let mut best = (m.clone(), 0);
    for_each_matching(inst, bound, |n| {
        let d = delta_unchecked(inst, m, n);
        if d > best.1 {
            best = (n.clone(), d);
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// All popular matchings of `inst`, sorted.
pub fn oracle_popular_matchings(inst: &Instance, bound: usize) -> Result<Vec<Matching>> {
    let all = enumerate_matchings(inst, bound)?;
    let mut popular: Vec<Matching> = all
        .iter()
        .filter(|m| all.iter().all(|n| delta_unchecked(inst, m, n) <= 0))
        .cloned()
        .collect();
    popular.sort();
    Ok(popular)
}
