//! Roommates instances: an undirected graph where every vertex ranks its
//! neighbours strictly, most preferred first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex id. Ids follow declaration order in the instance file.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u32);

impl Vertex {
    pub fn new(index: usize) -> Self {
        Vertex(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Vertex sets are ordered by declaration order.
pub type VertexSet = BTreeSet<Vertex>;

/// An undirected edge stored with its smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub(crate) fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A validated roommates instance. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    names: Vec<String>,
    prefs: Vec<Vec<Vertex>>,
    // (neighbour, rank) sorted by neighbour, for rank lookups
    ranks: Vec<Vec<(Vertex, u32)>>,
    edge_count: usize,
}

impl Instance {
    /// Builds an instance from vertex names and preference lists given as
    /// names. `prefs[i]` belongs to `names[i]`.
    pub fn from_named_lists<S: AsRef<str>>(names: &[S], prefs: &[Vec<S>]) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            validate_token(name, 0)?;
            if index.insert(name.to_string(), Vertex::new(i)).is_some() {
                return Err(Error::DuplicateVertex(name.to_string()));
            }
        }
        let mut lists = Vec::with_capacity(names.len());
        for list in prefs {
            let mut out = Vec::with_capacity(list.len());
            for entry in list {
                let entry = entry.as_ref();
                let v = *index
                    .get(entry)
                    .ok_or_else(|| Error::UnknownVertex(entry.to_string()))?;
                out.push(v);
            }
            lists.push(out);
        }
        let names = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_lists(names, lists)
    }

    /// Builds an instance from names and index-based preference lists.
    pub fn from_lists(names: Vec<String>, prefs: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = names.len();
        if prefs.len() != n {
            return Err(Error::VertexCount {
                declared: n,
                found: prefs.len(),
            });
        }
        let mut ranks: Vec<Vec<(Vertex, u32)>> = Vec::with_capacity(n);
        for (u, list) in prefs.iter().enumerate() {
            let mut r: Vec<(Vertex, u32)> = list
                .iter()
                .enumerate()
                .map(|(rank, &v)| (v, rank as u32))
                .collect();
            for &(v, _) in &r {
                if v.index() >= n {
                    return Err(Error::UnknownVertex(format!("#{}", v.index())));
                }
                if v.index() == u {
                    return Err(Error::SelfPreference(names[u].clone()));
                }
            }
            r.sort_unstable();
            if let Some(w) = r.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateEntry {
                    vertex: names[u].clone(),
                    entry: names[w[0].0.index()].clone(),
                });
            }
            ranks.push(r);
        }
        let mut total = 0;
        for (u, list) in prefs.iter().enumerate() {
            for &v in list {
                let back = ranks[v.index()]
                    .binary_search_by_key(&Vertex::new(u), |&(w, _)| w)
                    .is_ok();
                if !back {
                    return Err(Error::Asymmetric {
                        from: names[u].clone(),
                        to: names[v.index()].clone(),
                    });
                }
            }
            total += list.len();
        }
        Ok(Instance {
            names,
            prefs,
            ranks,
            edge_count: total / 2,
        })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).map(Vertex::new)
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up a vertex by its token.
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|s| s == name).map(Vertex::new)
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<Vertex> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Preference list of `u`, most preferred first.
    pub fn prefs(&self, u: Vertex) -> &[Vertex] {
        &self.prefs[u.index()]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.prefs[u.index()].len()
    }

    /// Position of `v` in `u`'s list (0 = first choice), if adjacent.
    pub fn rank(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let r = &self.ranks[u.index()];
        r.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| r[i].1 as usize)
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rank(u, v).is_some()
    }

    /// Compares two options of `u`, where `None` means staying unmatched.
    /// Any neighbour beats being unmatched.
    pub fn prefers(&self, u: Vertex, v: Option<Vertex>, w: Option<Vertex>) -> Result<bool> {
        let rank = |x: Option<Vertex>| -> Result<Option<usize>> {
            match x {
                None => Ok(None),
                Some(x) => self
                    .rank(u, x)
                    .map(Some)
                    .ok_or_else(|| Error::NotAnEdge(self.name(u).into(), self.name(x).into())),
            }
        };
        Ok(match (rank(v)?, rank(w)?) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            (None, _) => false,
        })
    }

    /// Unchecked variant of [`Instance::prefers`] for callers that already
    /// know both options are admissible.
    pub(crate) fn prefers_opt(&self, u: Vertex, v: Option<Vertex>, w: Option<Vertex>) -> bool {
        match (v, w) {
            (Some(a), Some(b)) => self.rank(u, a) < self.rank(u, b),
            (Some(_), None) => true,
            (None, _) => false,
        }
    }

    /// All edges, smaller endpoint first, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.vertices() {
            for &v in self.prefs(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// N(U): vertices adjacent to at least one member of `set`.
    pub fn neighborhood(&self, set: &VertexSet) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        for &u in set {
            self.check_vertex(u)?;
            out.extend(self.prefs(u).iter().copied());
        }
        Ok(out)
    }

    /// True if no edge joins two members of `set`.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|&u| self.prefs(u).iter().all(|v| !set.contains(v)))
    }

    /// G[keep]: the subgraph spanned by `keep`, preferences restricted.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Instance> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut mask = vec![false; self.n()];
        for &v in keep {
            mask[v.index()] = true;
        }
        Ok(self.induced_by_mask(&mask).0)
    }

    /// Induced subgraph on the vertices flagged in `mask`. Also returns,
    /// for every vertex of the result, its id in `self`.
    pub(crate) fn induced_by_mask(&self, mask: &[bool]) -> (Instance, Vec<Vertex>) {
        let mut to_new = vec![u32::MAX; self.n()];
        let mut to_old = Vec::new();
        for v in self.vertices() {
            if mask[v.index()] {
                to_new[v.index()] = to_old.len() as u32;
                to_old.push(v);
            }
        }
        let names = to_old.iter().map(|&v| self.name(v).to_string()).collect();
        let mut prefs = Vec::with_capacity(to_old.len());
        let mut ranks = Vec::with_capacity(to_old.len());
        let mut total = 0;
        for &old in &to_old {
            let list: Vec<Vertex> = self
                .prefs(old)
                .iter()
                .filter(|w| mask[w.index()])
                .map(|w| Vertex(to_new[w.index()]))
                .collect();
            let mut r: Vec<(Vertex, u32)> = list
                .iter()
                .enumerate()
                .map(|(i, &w)| (w, i as u32))
                .collect();
            r.sort_unstable();
            total += list.len();
            prefs.push(list);
            ranks.push(r);
        }
        let sub = Instance {
            names,
            prefs,
            ranks,
            edge_count: total / 2,
        };
        (sub, to_old)
    }

    /// Copy of `self` with the given edges removed. Vertices stay.
    pub(crate) fn without_edges(&self, removed: &BTreeSet<Edge>) -> Instance {
        let prefs: Vec<Vec<Vertex>> = self
            .vertices()
            .map(|u| {
                self.prefs(u)
                    .iter()
                    .copied()
                    .filter(|&v| !removed.contains(&edge(u, v)))
                    .collect()
            })
            .collect();
        Instance::from_lists(self.names.clone(), prefs).expect("edge removal keeps symmetry")
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.index() < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.index())))
        }
    }

    /// Resolves a list of tokens to a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, tokens: &[S]) -> Result<VertexSet> {
        tokens
            .iter()
            .map(|t| self.vertex_or_err(t.as_ref()))
            .collect()
    }

    /// Renders a vertex set as `{a,b,c}`.
    pub fn fmt_set(&self, set: &VertexSet) -> String {
        let parts: Vec<&str> = set.iter().map(|&v| self.name(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Renders edges as `{(a,b),(c,d)}`, sorted.
    pub fn fmt_edges(&self, edges: &[Edge]) -> String {
        let mut sorted: Vec<Edge> = edges.iter().map(|&(u, v)| edge(u, v)).collect();
        sorted.sort_unstable();
        let parts: Vec<String> = sorted
            .iter()
            .map(|&(u, v)| format!("({},{})", self.name(u), self.name(v)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Parses the line-oriented instance format.
    pub fn parse(text: &str) -> Result<Instance> {
        let mut declared = None;
        let mut names: Vec<&str> = Vec::new();
        let mut lists: Vec<Vec<&str>> = Vec::new();
        let mut seen_line: HashMap<&str, usize> = HashMap::new();
        let mut content_lines = 0;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            content_lines += 1;
            let Some((head, tail)) = line.split_once(':') else {
                if content_lines == 1 {
                    if let Ok(count) = line.parse::<usize>() {
                        declared = Some(count);
                        continue;
                    }
                }
                return Err(Error::Syntax {
                    line: lineno,
                    message: "expected `<vertex>: <neighbours...>`".into(),
                });
            };
            let head = head.trim();
            validate_token(head, lineno)?;
            if seen_line.insert(head, lineno).is_some() {
                return Err(Error::DuplicateVertex(head.to_string()));
            }
            let entries: Vec<&str> = tail.split_whitespace().collect();
            for e in &entries {
                validate_token(e, lineno)?;
            }
            names.push(head);
            lists.push(entries);
        }
        if let Some(count) = declared {
            if count != names.len() {
                return Err(Error::VertexCount {
                    declared: count,
                    found: names.len(),
                });
            }
        }
        Instance::from_named_lists(&names, &lists).map_err(|e| match e {
            Error::UnknownVertex(v) => Error::Syntax {
                line: lines_with(&seen_line, &lists, &names, &v),
                message: format!("unknown vertex `{v}`"),
            },
            other => other,
        })
    }
}

fn lines_with(
    seen: &HashMap<&str, usize>,
    lists: &[Vec<&str>],
    names: &[&str],
    missing: &str,
) -> usize {
    names
        .iter()
        .zip(lists)
        .find(|(_, l)| l.contains(&missing))
        .and_then(|(n, _)| seen.get(n).copied())
        .unwrap_or(0)
}

fn validate_token(token: &str, line: usize) -> Result<()> {
    if token.is_empty() || token.contains(':') || token.chars().any(char::is_whitespace) {
        return Err(Error::Syntax {
            line,
            message: format!("invalid vertex token `{token}`"),
        });
    }
    Ok(())
}

impl fmt::Display for Instance {
    /// Serializes in the instance file format; `parse` inverts it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in self.vertices() {
            write!(f, "{}:", self.name(u))?;
            for &v in self.prefs(u) {
                write!(f, " {}", self.name(v))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
