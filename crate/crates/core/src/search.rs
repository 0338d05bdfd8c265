//! Search for popular matchings that leave a prescribed vertex set `U`
//! uncovered, and the drivers that scan candidate sets `U`.
//!
//! For a given `U`, let `Z` be the vertices outside `U` with no neighbour in
//! `U`. Every candidate `P_Z` is a matching covering `Z` whose edges each
//! touch `Z`. A candidate survives when
//!
//! 1. it is popular in `G' = G[Z ∪ P_Z(Z) ∪ U]`,
//! 2. some edge of `G'` blocks it, and
//! 3. the rest of the graph, `V ∖ V'`, can be completed by a stable matching
//!    that covers it after the edge deletions below.
//!
//! The third test first rejects `P_Z` when a dangerous vertex (the far end
//! of a matching edge reachable on an alternating path from a blocking
//! edge) prefers a neighbour in `V ∖ V'` to its partner, then deletes every
//! edge of `G[V ∖ V']` that some endpoint ranks below one of its bounds and
//! asks for a complete stable matching of what remains.

use std::collections::BTreeSet;

use crate::election::{labels_unchecked, oracle_popular_matchings, VoteSign};
use crate::error::{Error, Result};
use crate::instance::{edge, Edge, Instance, Vertex, VertexSet};
use crate::matching::Matching;
use crate::stable::{find_complete_stable, find_stable};
use crate::verifier::verify_unchecked;

/// One candidate `P_Z` for a fixed `U`, with the derived vertex sets and
/// the induced graph `G'`. All vertex ids refer to the parent instance
/// except inside `gprime`.
#[derive(Clone, Debug)]
pub struct SearchContext {
    pub uncovered: VertexSet,
    pub z: VertexSet,
    pub pz: Matching,
    pub gprime: Instance,
    /// `gprime` vertex index -> parent vertex.
    pub gprime_to_parent: Vec<Vertex>,
    pub vprime: VertexSet,
    /// `V ∖ V'`, equal to `N(U) ∖ P_Z(Z)`.
    pub rest: VertexSet,
    pub dangerous: VertexSet,
}

impl SearchContext {
    /// Derives `V'`, `G'` and the rest set. `dangerous` starts empty; fill
    /// it with [`compute_dangerous_set`].
    pub fn new(inst: &Instance, uncovered: &VertexSet, z: &VertexSet, pz: Matching) -> Self {
        let mut mask = vec![false; inst.n()];
        for &v in uncovered.iter().chain(z) {
            mask[v.index()] = true;
        }
        for &v in z {
            if let Some(p) = pz.partner(v) {
                mask[p.index()] = true;
            }
        }
        let (gprime, gprime_to_parent) = inst.induced_by_mask(&mask);
        let vprime: VertexSet = gprime_to_parent.iter().copied().collect();
        let rest = inst.vertices().filter(|v| !mask[v.index()]).collect();
        SearchContext {
            uncovered: uncovered.clone(),
            z: z.clone(),
            pz,
            gprime,
            gprime_to_parent,
            vprime,
            rest,
            dangerous: VertexSet::new(),
        }
    }

    /// `P_Z` expressed on `gprime`.
    pub fn pz_in_gprime(&self) -> Matching {
        self.pz.restrict(&self.gprime_to_parent)
    }

    /// Edges of `G'` in parent ids.
    pub fn gprime_edges(&self) -> Vec<Edge> {
        self.lift_edges(self.gprime.edges())
    }

    fn lift_edges(&self, local: Vec<Edge>) -> Vec<Edge> {
        let mut out: Vec<Edge> = local
            .into_iter()
            .map(|(u, v)| {
                edge(
                    self.gprime_to_parent[u.index()],
                    self.gprime_to_parent[v.index()],
                )
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Z = V ∖ U ∖ N(U).
pub fn compute_z(inst: &Instance, uncovered: &VertexSet) -> Result<VertexSet> {
    if uncovered.is_empty() {
        return Err(Error::Precondition("U must be nonempty".into()));
    }
    let nbrs = inst.neighborhood(uncovered)?;
    Ok(inst
        .vertices()
        .filter(|v| !uncovered.contains(v) && !nbrs.contains(v))
        .collect())
}

/// Every matching that covers `z` and whose edges all touch `z`. Vertices
/// of `z` are matched in declaration order, partners tried in preference
/// order. An empty `z` yields just the empty matching.
pub fn enumerate_pz(inst: &Instance, uncovered: &VertexSet, z: &VertexSet) -> Vec<Matching> {
    let order: Vec<Vertex> = z.iter().copied().collect();
    let mut out = Vec::new();
    let mut current = Matching::empty(inst.n());
    extend_pz(inst, uncovered, &order, 0, &mut current, &mut out);
    out
}

fn extend_pz(
    inst: &Instance,
    uncovered: &VertexSet,
    order: &[Vertex],
    mut next: usize,
    current: &mut Matching,
    out: &mut Vec<Matching>,
) {
    while next < order.len() && current.covers(order[next]) {
        next += 1;
    }
    let Some(&z) = order.get(next) else {
        out.push(current.clone());
        return;
    };
    for &partner in inst.prefs(z) {
        if current.covers(partner) || uncovered.contains(&partner) {
            continue;
        }
        current.link(z, partner);
        extend_pz(inst, uncovered, order, next + 1, current, out);
        current.unlink(z);
    }
}

/// Test 1: `P_Z` is popular in `G'` (vertices of `U` uncovered there).
pub fn test1_popular_in_gprime(ctx: &SearchContext) -> bool {
    verify_unchecked(&ctx.gprime, &ctx.pz_in_gprime()).is_popular()
}

/// Edges of `G'` blocking `P_Z`, in parent ids.
pub fn gprime_blocking_edges(ctx: &SearchContext) -> Vec<Edge> {
    let local = labels_unchecked(&ctx.gprime, &ctx.pz_in_gprime()).blocking();
    ctx.lift_edges(local)
}

/// Test 2: some edge of `G'` blocks `P_Z`.
pub fn test2_has_blocking_edge(ctx: &SearchContext) -> bool {
    !gprime_blocking_edges(ctx).is_empty()
}

/// Dangerous vertices: far ends `z` of matching edges `(P_Z(z), z)` on
/// simple alternating paths in `G'` without its (-,-) edges that start
/// with a blocking edge. Found by exhaustive depth-first search over
/// simple paths, which is exact and cheap on the small graphs `G'` is.
pub fn compute_dangerous_set(ctx: &SearchContext) -> VertexSet {
    let g = &ctx.gprime;
    let pz = ctx.pz_in_gprime();
    let labels = labels_unchecked(g, &pz);
    let usable = |u: Vertex, v: Vertex| {
        labels
            .label(u, v)
            .is_some_and(|l| l != (VoteSign::Minus, VoteSign::Minus))
    };
    let mut found = vec![false; g.n()];
    let mut on_path = vec![false; g.n()];
    for (p, q) in labels.blocking() {
        for (from, to) in [(p, q), (q, p)] {
            on_path[from.index()] = true;
            walk_alternating(g, &pz, &usable, to, &mut on_path, &mut found);
            on_path[from.index()] = false;
        }
    }
    found
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| ctx.gprime_to_parent[i])
        .collect()
}

/// Continues an alternating path that just reached `x` over a non-matching
/// edge: take the matching edge at `x`, record its far end, then branch
/// over usable non-matching edges.
fn walk_alternating<F>(
    g: &Instance,
    pz: &Matching,
    usable: &F,
    x: Vertex,
    on_path: &mut [bool],
    found: &mut [bool],
) where
    F: Fn(Vertex, Vertex) -> bool,
{
    let Some(y) = pz.partner(x) else { return };
    if on_path[x.index()] || on_path[y.index()] {
        return;
    }
    found[y.index()] = true;
    on_path[x.index()] = true;
    on_path[y.index()] = true;
    for &w in g.prefs(y) {
        if !on_path[w.index()] && w != x && usable(y, w) {
            walk_alternating(g, pz, usable, w, on_path, found);
        }
    }
    on_path[x.index()] = false;
    on_path[y.index()] = false;
}

/// First phase of the third test: no dangerous vertex may prefer a
/// neighbour in `V ∖ V'` to its `P_Z` partner.
pub fn phase1_danger_check(inst: &Instance, ctx: &SearchContext) -> bool {
    ctx.dangerous.iter().all(|&z| {
        let partner = ctx.pz.partner(z);
        inst.prefs(z)
            .iter()
            .filter(|x| ctx.rest.contains(x))
            .all(|&x| !inst.prefers_opt(z, Some(x), partner))
    })
}

/// `G[V ∖ V']` after the deletion rounds, with the deleted edges.
#[derive(Clone, Debug)]
pub struct ReducedGraph {
    pub graph: Instance,
    /// `graph` vertex index -> parent vertex.
    pub to_parent: Vec<Vertex>,
    /// Deleted edges in parent ids, sorted.
    pub deleted: Vec<Edge>,
}

/// Second phase of the third test. Every `x ∈ V ∖ V'` gets a bound: its
/// best-ranked neighbour among `U`, `D`, and those `v ∈ V' ∖ (D ∪ U)` that
/// prefer `x` to `P_Z(v)`. Each edge `(x,y)` inside `V ∖ V'` that `x` ranks
/// below its bound is deleted. Vertices are never removed.
pub fn deletion_rounds(inst: &Instance, ctx: &SearchContext) -> ReducedGraph {
    let mut deleted = BTreeSet::new();
    for &x in &ctx.rest {
        let bound = inst.prefs(x).iter().position(|v| {
            if ctx.uncovered.contains(v) || ctx.dangerous.contains(v) {
                true
            } else if ctx.vprime.contains(v) {
                inst.prefers_opt(*v, Some(x), ctx.pz.partner(*v))
            } else {
                false
            }
        });
        if let Some(bound) = bound {
            for &y in &inst.prefs(x)[bound + 1..] {
                if ctx.rest.contains(&y) {
                    deleted.insert(edge(x, y));
                }
            }
        }
    }
    let mut mask = vec![false; inst.n()];
    for &v in &ctx.rest {
        mask[v.index()] = true;
    }
    let (sub, to_parent) = inst.induced_by_mask(&mask);
    let mut to_local = vec![None; inst.n()];
    for (i, &p) in to_parent.iter().enumerate() {
        to_local[p.index()] = Some(Vertex::new(i));
    }
    let local: BTreeSet<Edge> = deleted
        .iter()
        .map(|&(u, v)| edge(to_local[u.index()].unwrap(), to_local[v.index()].unwrap()))
        .collect();
    ReducedGraph {
        graph: sub.without_edges(&local),
        to_parent,
        deleted: deleted.into_iter().collect(),
    }
}

/// Which test a candidate `P_Z` failed, if any.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    FailTest1,
    FailTest2,
    /// A dangerous vertex prefers a neighbour outside `V'`.
    FailTest3Danger,
    /// No complete stable matching after the deletions.
    FailTest3Completion,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::FailTest1 => "fail:test1",
            Verdict::FailTest2 => "fail:test2",
            Verdict::FailTest3Danger | Verdict::FailTest3Completion => "fail:test3",
        }
    }
}

/// One `(U, P_Z)` attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub uncovered: VertexSet,
    pub pz: Vec<Edge>,
    pub gprime_vertices: VertexSet,
    pub gprime_edges: Vec<Edge>,
    pub verdict: Verdict,
}

impl TraceRecord {
    /// `U={..} PZ={..} Gprime_V={..} Gprime_E={..} verdict=..`
    pub fn render(&self, inst: &Instance) -> String {
        format!(
            "U={} PZ={} Gprime_V={} Gprime_E={} verdict={}",
            inst.fmt_set(&self.uncovered),
            inst.fmt_edges(&self.pz),
            inst.fmt_set(&self.gprime_vertices),
            inst.fmt_edges(&self.gprime_edges),
            self.verdict.as_str()
        )
    }
}

/// Runs the three tests on one candidate. On success returns `P_Z ∪ S`.
pub fn evaluate_candidate(inst: &Instance, ctx: &mut SearchContext) -> (Verdict, Option<Matching>) {
    if !test1_popular_in_gprime(ctx) {
        return (Verdict::FailTest1, None);
    }
    if !test2_has_blocking_edge(ctx) {
        return (Verdict::FailTest2, None);
    }
    ctx.dangerous = compute_dangerous_set(ctx);
    if !phase1_danger_check(inst, ctx) {
        return (Verdict::FailTest3Danger, None);
    }
    let reduced = deletion_rounds(inst, ctx);
    let Some(completion) = find_complete_stable(&reduced.graph) else {
        return (Verdict::FailTest3Completion, None);
    };
    let mut full = ctx.pz.clone();
    completion.lift(&reduced.to_parent, inst.n(), &mut full);
    (Verdict::Pass, Some(full))
}

#[derive(Copy, Clone, Debug, Default)]
pub struct CheckOptions {
    /// Skip the stable-matching check; the caller guarantees that the
    /// instance has no stable matching, or accepts that only non-stable
    /// popular matchings are searched for.
    pub assume_no_stable: bool,
}

fn check_u_preconditions(inst: &Instance, uncovered: &VertexSet) -> Result<()> {
    if uncovered.is_empty() {
        return Err(Error::Precondition("U must be nonempty".into()));
    }
    for &v in uncovered {
        inst.check_vertex(v)?;
    }
    if !inst.is_independent(uncovered) {
        return Err(Error::Precondition(format!(
            "U = {} spans an edge",
            inst.fmt_set(uncovered)
        )));
    }
    if (inst.n() - uncovered.len()) % 2 != 0 {
        return Err(Error::Precondition(format!(
            "|V| - |U| = {} - {} is odd",
            inst.n(),
            uncovered.len()
        )));
    }
    Ok(())
}

/// Looks for a popular matching leaving exactly `uncovered` uncovered.
pub fn check_u(inst: &Instance, uncovered: &VertexSet) -> Result<Option<Matching>> {
    check_u_traced(inst, uncovered, CheckOptions::default(), &mut |_| {})
}

/// [`check_u`] reporting every `(U, P_Z)` attempt to `trace`.
pub fn check_u_traced(
    inst: &Instance,
    uncovered: &VertexSet,
    options: CheckOptions,
    trace: &mut dyn FnMut(&TraceRecord),
) -> Result<Option<Matching>> {
    check_u_preconditions(inst, uncovered)?;
    if !options.assume_no_stable && find_stable(inst).is_some() {
        return Err(Error::Precondition(
            "the instance admits a stable matching".into(),
        ));
    }
    Ok(check_u_unchecked(inst, uncovered, trace))
}

fn check_u_unchecked(
    inst: &Instance,
    uncovered: &VertexSet,
    trace: &mut dyn FnMut(&TraceRecord),
) -> Option<Matching> {
    let z = compute_z(inst, uncovered).expect("U checked nonempty");
    for pz in enumerate_pz(inst, uncovered, &z) {
        let mut ctx = SearchContext::new(inst, uncovered, &z, pz);
        let (verdict, found) = evaluate_candidate(inst, &mut ctx);
        trace(&TraceRecord {
            uncovered: uncovered.clone(),
            pz: ctx.pz.edges(),
            gprime_vertices: ctx.vprime.clone(),
            gprime_edges: ctx.gprime_edges(),
            verdict,
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Odd `n`: scanning every admissible `U` decides existence.
    OddExact,
    /// Any `n`: decides whether a non-perfect popular matching exists.
    Nonperfect,
    /// Exhaustive enumeration; small instances only.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Stable(Matching),
    Popular {
        matching: Matching,
        uncovered: VertexSet,
    },
    None,
}

impl SolveResult {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            SolveResult::Stable(m) | SolveResult::Popular { matching: m, .. } => Some(m),
            SolveResult::None => None,
        }
    }

    fn popular(matching: Matching) -> Self {
        let uncovered = matching.uncovered();
        SolveResult::Popular {
            matching,
            uncovered,
        }
    }
}

#[derive(Copy, Clone, Debug)]
pub struct SolveOptions {
    pub mode: SolveMode,
    /// Only consider `|U| <= cap`.
    pub cap: Option<usize>,
    /// Edge bound for oracle mode.
    pub oracle_bound: usize,
}

impl SolveOptions {
    pub fn new(mode: SolveMode) -> Self {
        SolveOptions {
            mode,
            cap: None,
            oracle_bound: crate::election::DEFAULT_ENUMERATION_BOUND,
        }
    }

    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_oracle_bound(mut self, bound: usize) -> Self {
        self.oracle_bound = bound;
        self
    }
}

/// Nonempty independent sets `U` with `n - |U|` even and `|U| <= max_size`,
/// by ascending size, then lexicographically in declaration order.
pub fn candidate_uncovered_sets(inst: &Instance, max_size: usize) -> Vec<VertexSet> {
    let n = inst.n();
    let mut out = Vec::new();
    for size in 1..=max_size.min(n) {
        if (n - size) % 2 != 0 {
            continue;
        }
        let mut chosen = Vec::with_capacity(size);
        independent_sets_of_size(inst, 0, size, &mut chosen, &mut out);
    }
    out
}

fn independent_sets_of_size(
    inst: &Instance,
    from: usize,
    size: usize,
    chosen: &mut Vec<Vertex>,
    out: &mut Vec<VertexSet>,
) {
    if chosen.len() == size {
        out.push(chosen.iter().copied().collect());
        return;
    }
    let needed = size - chosen.len();
    for i in from..=inst.n().saturating_sub(needed) {
        let v = Vertex::new(i);
        if chosen.iter().any(|&c| inst.is_edge(c, v)) {
            continue;
        }
        chosen.push(v);
        independent_sets_of_size(inst, i + 1, size, chosen, out);
        chosen.pop();
    }
}

/// Decides existence of a popular matching (see [`SolveMode`]).
pub fn solve(inst: &Instance, options: &SolveOptions) -> Result<SolveResult> {
    solve_traced(inst, options, &mut |_| {})
}

/// [`solve`] reporting every `(U, P_Z)` attempt to `trace`.
pub fn solve_traced(
    inst: &Instance,
    options: &SolveOptions,
    trace: &mut dyn FnMut(&TraceRecord),
) -> Result<SolveResult> {
    if options.mode == SolveMode::OddExact && inst.n() % 2 == 0 {
        return Err(Error::Precondition(format!(
            "odd-exact mode needs an odd vertex count, got {}",
            inst.n()
        )));
    }
    if let Some(m) = find_stable(inst) {
        return Ok(SolveResult::Stable(m));
    }
    if options.mode == SolveMode::Oracle {
        let popular = oracle_popular_matchings(inst, options.oracle_bound)?;
        return Ok(largest(popular)
            .map(SolveResult::popular)
            .unwrap_or(SolveResult::None));
    }
    let max_size = options.cap.unwrap_or(inst.n());
    for uncovered in candidate_uncovered_sets(inst, max_size) {
        if let Some(m) = check_u_unchecked(inst, &uncovered, trace) {
            return Ok(SolveResult::Popular {
                matching: m,
                uncovered,
            });
        }
    }
    Ok(SolveResult::None)
}

/// Largest matching, first in sorted order among equals.
fn largest(mut matchings: Vec<Matching>) -> Option<Matching> {
    matchings.sort();
    let best = matchings.iter().map(Matching::len).max()?;
    matchings.into_iter().find(|m| m.len() == best)
}

/// A popular matching of maximum size.
///
/// Odd `n`: sets `U` are scanned by ascending size. When the instance has
/// a stable matching, only sets smaller than its uncovered set are scanned
/// (the search then finds exactly the non-stable popular matchings), and
/// the stable matching is returned if none of them succeeds. Even `n`
/// falls back to exhaustive enumeration.
pub fn max_size_popular(inst: &Instance, options: &SolveOptions) -> Result<SolveResult> {
    max_size_popular_traced(inst, options, &mut |_| {})
}

pub fn max_size_popular_traced(
    inst: &Instance,
    options: &SolveOptions,
    trace: &mut dyn FnMut(&TraceRecord),
) -> Result<SolveResult> {
    if inst.n() % 2 == 0 || options.mode == SolveMode::Oracle {
        if options.mode == SolveMode::OddExact {
            return Err(Error::Precondition(format!(
                "odd-exact mode needs an odd vertex count, got {}",
                inst.n()
            )));
        }
        let popular = oracle_popular_matchings(inst, options.oracle_bound)?;
        let Some(best) = largest(popular) else {
            return Ok(SolveResult::None);
        };
        return Ok(
            if crate::election::blocking_unchecked(inst, &best).is_empty() {
                SolveResult::Stable(best)
            } else {
                SolveResult::popular(best)
            },
        );
    }
    let Some(stable) = find_stable(inst) else {
        return solve_traced(inst, options, trace);
    };
    let stable_gap = stable.uncovered().len();
    let max_size = options
        .cap
        .unwrap_or(inst.n())
        .min(stable_gap.saturating_sub(1));
    for uncovered in candidate_uncovered_sets(inst, max_size) {
        if let Some(m) = check_u_unchecked(inst, &uncovered, trace) {
            return Ok(SolveResult::Popular {
                matching: m,
                uncovered,
            });
        }
    }
    Ok(SolveResult::Stable(stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::*;

    fn set(inst: &Instance, names: &[&str]) -> VertexSet {
        inst.vertex_set(names).unwrap()
    }

    fn m(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        Matching::from_named(inst, pairs).unwrap()
    }

    fn ctx(inst: &Instance, u: &[&str], pz: &[(&str, &str)]) -> SearchContext {
        let u = set(inst, u);
        let z = compute_z(inst, &u).unwrap();
        SearchContext::new(inst, &u, &z, m(inst, pz))
    }

    #[test]
    fn z_sets() {
        let f3 = odd_none();
        assert_eq!(
            compute_z(&f3, &set(&f3, &["b"])).unwrap(),
            set(&f3, &["e", "f", "g", "h"])
        );
        assert_eq!(
            compute_z(&f3, &set(&f3, &["d"])).unwrap(),
            set(&f3, &["f", "g"])
        );
        let f4 = odd_popular();
        assert!(compute_z(&f4, &set(&f4, &["b"])).unwrap().is_empty());
        assert!(compute_z(&f4, &VertexSet::new()).is_err());
    }

    #[test]
    fn pz_candidates() {
        let f3 = odd_none();
        let u = set(&f3, &["d"]);
        let z = compute_z(&f3, &u).unwrap();
        assert_eq!(
            enumerate_pz(&f3, &u, &z),
            vec![m(&f3, &[("f", "g")]), m(&f3, &[("e", "f"), ("g", "h")])]
        );
        let u = set(&f3, &["a"]);
        let z = compute_z(&f3, &u).unwrap();
        assert_eq!(
            enumerate_pz(&f3, &u, &z),
            vec![
                m(&f3, &[("f", "g"), ("d", "h")]),
                m(&f3, &[("e", "f"), ("g", "h")])
            ]
        );
        let f4 = odd_popular();
        let u = set(&f4, &["b"]);
        assert_eq!(
            enumerate_pz(&f4, &u, &VertexSet::new()),
            vec![Matching::empty(7)]
        );
    }

    #[test]
    fn test1_examples() {
        let f3 = odd_none();
        assert!(test1_popular_in_gprime(&ctx(
            &f3,
            &["b"],
            &[("e", "f"), ("g", "h")]
        )));
        assert!(!test1_popular_in_gprime(&ctx(
            &f3,
            &["a"],
            &[("e", "f"), ("g", "h")]
        )));
        assert!(!test1_popular_in_gprime(&ctx(
            &f3,
            &["d"],
            &[("e", "f"), ("g", "h")]
        )));
    }

    #[test]
    fn test2_examples() {
        let f3 = odd_none();
        let c = ctx(&f3, &["b"], &[("e", "f"), ("g", "h")]);
        assert!(test2_has_blocking_edge(&c));
        assert_eq!(
            gprime_blocking_edges(&c),
            vec![(f3.vertex("e").unwrap(), f3.vertex("g").unwrap())]
        );
        assert!(!test2_has_blocking_edge(&ctx(&f3, &["d"], &[("f", "g")])));
        assert!(!test2_has_blocking_edge(&ctx(&f3, &["a", "f", "h"], &[])));
    }

    #[test]
    fn dangerous_sets() {
        let f3 = odd_none();
        let c = ctx(&f3, &["b"], &[("e", "f"), ("g", "h")]);
        assert_eq!(compute_dangerous_set(&c), set(&f3, &["f", "h"]));
        let c = ctx(&f3, &["f"], &[("a", "b"), ("d", "h")]);
        assert_eq!(compute_dangerous_set(&c), set(&f3, &["b", "h"]));
        let c = ctx(&f3, &["d"], &[("f", "g")]);
        assert!(compute_dangerous_set(&c).is_empty());
    }

    #[test]
    fn danger_check() {
        let f3 = odd_none();
        let mut c = ctx(&f3, &["b"], &[("e", "f"), ("g", "h")]);
        c.dangerous = compute_dangerous_set(&c);
        assert!(phase1_danger_check(&f3, &c));
        let mut c = ctx(&f3, &["f"], &[("a", "b"), ("d", "h")]);
        c.dangerous = compute_dangerous_set(&c);
        assert!(!phase1_danger_check(&f3, &c));
        let c = ctx(&f3, &["d"], &[("f", "g")]);
        assert!(phase1_danger_check(&f3, &c));
    }

    #[test]
    fn deletions() {
        let f3 = odd_none();
        let mut c = ctx(&f3, &["b"], &[("e", "f"), ("g", "h")]);
        c.dangerous = compute_dangerous_set(&c);
        assert_eq!(c.rest, set(&f3, &["a", "d"]));
        let r = deletion_rounds(&f3, &c);
        assert_eq!(
            r.deleted,
            vec![(f3.vertex("a").unwrap(), f3.vertex("d").unwrap())]
        );
        assert_eq!((r.graph.n(), r.graph.m()), (2, 0));
        assert_eq!(find_complete_stable(&r.graph), None);

        let c = ctx(&f3, &["a", "f", "h"], &[]);
        assert_eq!(c.rest, set(&f3, &["b", "d", "e", "g"]));
        let r = deletion_rounds(&f3, &c);
        assert!(r
            .deleted
            .contains(&(f3.vertex("b").unwrap(), f3.vertex("d").unwrap())));

        let empty = ctx(
            &odd_popular(),
            &["f"],
            &[("a", "b"), ("d", "h"), ("e", "g")],
        );
        assert!(empty.rest.is_empty());
        assert_eq!(deletion_rounds(&odd_popular(), &empty).graph.n(), 0);
    }

    #[test]
    fn check_u_examples() {
        let f3 = odd_none();
        assert_eq!(check_u(&f3, &set(&f3, &["b"])).unwrap(), None);
        assert_eq!(check_u(&f3, &set(&f3, &["e"])).unwrap(), None);

        let f4 = odd_popular();
        let found = check_u(&f4, &set(&f4, &["f"])).unwrap().unwrap();
        assert_eq!(found, m(&f4, &[("a", "b"), ("d", "h"), ("e", "g")]));
        assert_eq!(found.uncovered(), set(&f4, &["f"]));
    }

    #[test]
    fn check_u_preconditions_are_errors() {
        let f3 = odd_none();
        assert!(check_u(&f3, &VertexSet::new()).is_err());
        assert!(check_u(&f3, &set(&f3, &["a", "b", "f"])).is_err());
        assert!(check_u(&f3, &set(&f3, &["f", "h"])).is_err());
        let p = pair();
        let err = check_u(
            &Instance::parse("a: b\nb: a\nc:\n").unwrap(),
            &set(&p, &["a"]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn candidate_sets_for_odd_none() {
        let f3 = odd_none();
        let sets: Vec<String> = candidate_uncovered_sets(&f3, 7)
            .iter()
            .map(|s| f3.fmt_set(s))
            .collect();
        assert_eq!(
            sets,
            ["{a}", "{b}", "{d}", "{e}", "{f}", "{g}", "{h}", "{a,f,h}", "{b,e,h}", "{b,f,h}"]
        );
    }

    #[test]
    fn solve_examples() {
        let f3 = odd_none();
        assert_eq!(
            solve(&f3, &SolveOptions::new(SolveMode::OddExact)).unwrap(),
            SolveResult::None
        );

        let f4 = odd_popular();
        let mut seen = Vec::new();
        let result = solve_traced(&f4, &SolveOptions::new(SolveMode::OddExact), &mut |r| {
            seen.push(r.clone())
        })
        .unwrap();
        let SolveResult::Popular {
            matching,
            uncovered,
        } = result
        else {
            panic!("expected a popular matching");
        };
        assert_eq!(uncovered, set(&f4, &["f"]));
        assert!(crate::verifier::verify_popular(&f4, &matching)
            .unwrap()
            .is_popular());
        let order: Vec<String> = seen.iter().map(|r| f4.fmt_set(&r.uncovered)).collect();
        let mut distinct = order.clone();
        distinct.dedup();
        assert_eq!(distinct, ["{a}", "{b}", "{d}", "{e}", "{f}"]);

        let f1 = k4();
        let result = solve(&f1, &SolveOptions::new(SolveMode::Oracle)).unwrap();
        assert_eq!(
            result,
            SolveResult::Popular {
                matching: m(&f1, &[("a", "b"), ("d", "e")]),
                uncovered: VertexSet::new()
            }
        );
        assert!(solve(&f1, &SolveOptions::new(SolveMode::OddExact)).is_err());
    }

    #[test]
    fn max_size_examples() {
        let f4 = odd_popular();
        let r = max_size_popular(&f4, &SolveOptions::new(SolveMode::OddExact)).unwrap();
        assert_eq!(r.matching().unwrap().len(), 3);
        let f3 = odd_none();
        assert_eq!(
            max_size_popular(&f3, &SolveOptions::new(SolveMode::OddExact)).unwrap(),
            SolveResult::None
        );
        let path = Instance::parse("a: b\nb: a d\nd: b\n").unwrap();
        let r = max_size_popular(&path, &SolveOptions::new(SolveMode::OddExact)).unwrap();
        assert!(matches!(r, SolveResult::Stable(ref s) if s.len() == 1));
    }
}
