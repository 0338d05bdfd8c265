use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::{edge, Edge, Instance, Vertex, VertexSet};

/// A set of vertex-disjoint edges, stored as a partner table.
///
/// Two matchings compare equal iff they have the same edges; ordering is
/// lexicographic on the sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<Vertex>>,
}

impl Matching {
    /// The empty matching on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching from edges of `inst`, rejecting non-edges and
    /// vertices used twice.
    pub fn from_edges(inst: &Instance, edges: &[Edge]) -> Result<Self> {
        let mut m = Matching::empty(inst.n());
        for &(u, v) in edges {
            inst.check_vertex(u)?;
            inst.check_vertex(v)?;
            if !inst.is_edge(u, v) {
                return Err(Error::NotAnEdge(inst.name(u).into(), inst.name(v).into()));
            }
            for w in [u, v] {
                if m.mate[w.index()].is_some() {
                    return Err(Error::VertexMatchedTwice(inst.name(w).into()));
                }
            }
            m.link(u, v);
        }
        Ok(m)
    }

    /// Builds a matching from pairs of vertex tokens.
    pub fn from_named(inst: &Instance, pairs: &[(&str, &str)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Ok((inst.vertex_or_err(a)?, inst.vertex_or_err(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Matching::from_edges(inst, &edges)
    }

    /// Parses the matching file format: one `<token> <token>` per line,
    /// blank lines and `#` comments ignored.
    pub fn parse(inst: &Instance, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = tokens[..] else {
                return Err(Error::Syntax {
                    line: i + 1,
                    message: "expected `<vertex> <vertex>`".into(),
                });
            };
            edges.push((inst.vertex_or_err(a)?, inst.vertex_or_err(b)?));
        }
        Matching::from_edges(inst, &edges)
    }

    /// Serializes in the matching file format.
    pub fn to_file_string(&self, inst: &Instance) -> String {
        self.edges()
            .iter()
            .map(|&(u, v)| format!("{} {}\n", inst.name(u), inst.name(v)))
            .collect()
    }

    pub(crate) fn link(&mut self, u: Vertex, v: Vertex) {
        self.mate[u.index()] = Some(v);
        self.mate[v.index()] = Some(u);
    }

    pub(crate) fn unlink(&mut self, u: Vertex) {
        if let Some(v) = self.mate[u.index()].take() {
            self.mate[v.index()] = None;
        }
    }

    /// Number of vertices the matching was built for.
    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// M(u), or `None` when `u` is uncovered.
    pub fn partner(&self, u: Vertex) -> Option<Vertex> {
        self.mate[u.index()]
    }

    pub fn covers(&self, u: Vertex) -> bool {
        self.mate[u.index()].is_some()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.mate[u.index()] == Some(v)
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.mate.iter().all(Option::is_none)
    }

    /// Edges with the smaller endpoint first, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| {
                let u = Vertex::new(u);
                m.filter(|&v| u < v).map(|v| (u, v))
            })
            .collect()
    }

    pub fn uncovered(&self) -> VertexSet {
        (0..self.mate.len())
            .map(Vertex::new)
            .filter(|&v| !self.covers(v))
            .collect()
    }

    /// Checks that the matching fits `inst` and uses only its edges.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.mate.len() != inst.n() {
            return Err(Error::SizeMismatch {
                expected: self.mate.len(),
                found: inst.n(),
            });
        }
        for (u, m) in self.mate.iter().enumerate() {
            let u = Vertex::new(u);
            if let Some(v) = *m {
                if self.mate[v.index()] != Some(u) {
                    return Err(Error::VertexMatchedTwice(inst.name(v).into()));
                }
                if !inst.is_edge(u, v) {
                    return Err(Error::NotAnEdge(inst.name(u).into(), inst.name(v).into()));
                }
            }
        }
        Ok(())
    }

    /// Renders as `{(a,b),(d,e)}`.
    pub fn display(&self, inst: &Instance) -> String {
        inst.fmt_edges(&self.edges())
    }

    /// Maps a matching on an induced subgraph back to the parent instance.
    pub(crate) fn lift(&self, to_parent: &[Vertex], parent_n: usize, into: &mut Matching) {
        debug_assert_eq!(into.mate.len(), parent_n);
        for (u, v) in self.edges() {
            into.link(to_parent[u.index()], to_parent[v.index()]);
        }
    }

    /// Restricts a parent matching to the edges inside an induced subgraph.
    pub(crate) fn restrict(&self, to_parent: &[Vertex]) -> Matching {
        let mut to_child = vec![None; self.mate.len()];
        for (i, &p) in to_parent.iter().enumerate() {
            to_child[p.index()] = Some(Vertex::new(i));
        }
        let mut out = Matching::empty(to_parent.len());
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (to_child[u.index()], to_child[v.index()]) {
                out.link(a, b);
            }
        }
        out
    }
}

impl PartialOrd for Matching {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matching {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges().cmp(&other.edges())
    }
}

/// Normalizes an edge list the way [`Matching::edges`] reports it.
pub fn canonical_edges(edges: &[Edge]) -> Vec<Edge> {
    let mut out: Vec<Edge> = edges.iter().map(|&(u, v)| edge(u, v)).collect();
    out.sort_unstable();
    out
}
