//! Brute-force reference implementations, written against the raw
//! preference lists only.

#![allow(dead_code)]

use popular_roommates::{Instance, Matching, Vertex, VertexSet};

/// Every matching, by direct recursion over the edge list.
pub fn all_matchings(inst: &Instance) -> Vec<Vec<Option<usize>>> {
    let n = inst.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for &v in inst.prefs(Vertex::new(u)) {
            if u < v.index() {
                edges.push((u, v.index()));
            }
        }
    }
    let mut out = Vec::new();
    let mut mate = vec![None; n];
    extend(&edges, 0, &mut mate, &mut out);
    out
}

fn extend(
    edges: &[(usize, usize)],
    from: usize,
    mate: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<Option<usize>>>,
) {
    out.push(mate.clone());
    for i in from..edges.len() {
        let (u, v) = edges[i];
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
            extend(edges, i + 1, mate, out);
            mate[u] = None;
            mate[v] = None;
        }
    }
}

pub fn mate_of(m: &Matching) -> Vec<Option<usize>> {
    (0..m.vertex_count())
        .map(|u| m.partner(Vertex::new(u)).map(Vertex::index))
        .collect()
}

pub fn to_matching(inst: &Instance, mate: &[Option<usize>]) -> Matching {
    let edges: Vec<_> = mate
        .iter()
        .enumerate()
        .filter_map(|(u, v)| {
            v.filter(|&v| u < v)
                .map(|v| (Vertex::new(u), Vertex::new(v)))
        })
        .collect();
    Matching::from_edges(inst, &edges).unwrap()
}

/// Position of `v` in `u`'s list; being alone ranks after everyone.
fn position(inst: &Instance, u: usize, v: Option<usize>) -> usize {
    match v {
        None => usize::MAX,
        Some(v) => inst
            .prefs(Vertex::new(u))
            .iter()
            .position(|w| w.index() == v)
            .unwrap(),
    }
}

/// Votes for `n` minus votes for `m`.
pub fn margin(inst: &Instance, m: &[Option<usize>], n: &[Option<usize>]) -> i64 {
    (0..inst.n())
        .map(|u| {
            let (a, b) = (position(inst, u, m[u]), position(inst, u, n[u]));
            (a > b) as i64 - (a < b) as i64
        })
        .sum()
}

pub fn is_stable(inst: &Instance, m: &[Option<usize>]) -> bool {
    (0..inst.n()).all(|u| {
        inst.prefs(Vertex::new(u)).iter().all(|v| {
            let v = v.index();
            m[u] == Some(v)
                || position(inst, u, Some(v)) > position(inst, u, m[u])
                || position(inst, v, Some(u)) > position(inst, v, m[v])
        })
    })
}

pub fn stable_exists(inst: &Instance) -> bool {
    all_matchings(inst).iter().any(|m| is_stable(inst, m))
}

pub struct Popularity {
    pub all: Vec<Vec<Option<usize>>>,
}

impl Popularity {
    pub fn new(inst: &Instance) -> Self {
        Popularity {
            all: all_matchings(inst),
        }
    }

    /// Largest margin any matching achieves against `m`.
    pub fn best_margin(&self, inst: &Instance, m: &[Option<usize>]) -> i64 {
        self.all.iter().map(|n| margin(inst, m, n)).max().unwrap()
    }

    pub fn is_popular(&self, inst: &Instance, m: &[Option<usize>]) -> bool {
        self.best_margin(inst, m) <= 0
    }

    pub fn popular(&self, inst: &Instance) -> Vec<Vec<Option<usize>>> {
        self.all
            .iter()
            .filter(|m| self.is_popular(inst, m))
            .cloned()
            .collect()
    }
}

pub fn uncovered(mate: &[Option<usize>]) -> VertexSet {
    mate.iter()
        .enumerate()
        .filter(|(_, m)| m.is_none())
        .map(|(u, _)| Vertex::new(u))
        .collect()
}

/// True iff `u` prefers `v` to its partner in `mate`.
pub fn prefers(inst: &Instance, mate: &[Option<usize>], u: usize, v: usize) -> bool {
    position(inst, u, Some(v)) < position(inst, u, mate[u])
}

/// Whether `G_M` (the graph minus edges both endpoints vote against)
/// contains an alternating cycle through a blocking edge, an alternating
/// path with two blocking edges, or an alternating path with a blocking
/// edge that ends at an unmatched vertex.
pub fn has_forbidden_structure(inst: &Instance, mate: &[Option<usize>]) -> bool {
    let n = inst.n();
    // kind: 0 matching edge, 1 ordinary edge of G_M, 2 blocking edge
    let mut kind = vec![vec![None; n]; n];
    for u in 0..n {
        for v in inst.prefs(Vertex::new(u)).iter().map(|v| v.index()) {
            kind[u][v] = if mate[u] == Some(v) {
                Some(0)
            } else {
                match (prefers(inst, mate, u, v), prefers(inst, mate, v, u)) {
                    (true, true) => Some(2),
                    (false, false) => None,
                    _ => Some(1),
                }
            };
        }
    }
    let mut on_path = vec![false; n];
    (0..n).any(|s| {
        [true, false].into_iter().any(|first_matched| {
            on_path[s] = true;
            let found = walk(
                &kind,
                mate,
                s,
                s,
                first_matched,
                first_matched,
                0,
                &mut on_path,
            );
            on_path[s] = false;
            found
        })
    })
}

#[allow(clippy::too_many_arguments)]
fn walk(
    kind: &[Vec<Option<u8>>],
    mate: &[Option<usize>],
    start: usize,
    at: usize,
    first_matched: bool,
    next_matched: bool,
    blocking: usize,
    on_path: &mut [bool],
) -> bool {
    if blocking >= 2 {
        return true;
    }
    if blocking >= 1 && (mate[start].is_none() || mate[at].is_none()) {
        return true;
    }
    for v in 0..kind.len() {
        let Some(k) = kind[at][v] else { continue };
        if (k == 0) != next_matched {
            continue;
        }
        let b = blocking + (k == 2) as usize;
        // closing a cycle: the closing edge must alternate with both ends
        if v == start && at != start && next_matched != first_matched && b >= 1 {
            return true;
        }
        if on_path[v] {
            continue;
        }
        on_path[v] = true;
        let found = walk(
            kind,
            mate,
            start,
            v,
            first_matched,
            !next_matched,
            b,
            on_path,
        );
        on_path[v] = false;
        if found {
            return true;
        }
    }
    false
}
