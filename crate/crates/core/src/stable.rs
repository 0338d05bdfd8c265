//! Irving's stable roommates algorithm for strict, possibly incomplete
//! preference lists.

use std::collections::VecDeque;

use crate::election::blocking_edges;
use crate::error::Result;
use crate::instance::{Instance, Vertex};
use crate::matching::Matching;

/// True iff no edge blocks `m`.
pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool> {
    Ok(blocking_edges(inst, m)?.is_empty())
}

/// Reduced preference table shared by both phases. Entries are only ever
/// deleted, always from both ends of an edge at once.
struct Table<'a> {
    inst: &'a Instance,
    alive: Vec<Vec<bool>>,
    len: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
}

impl<'a> Table<'a> {
    fn new(inst: &'a Instance) -> Self {
        let alive: Vec<Vec<bool>> = inst
            .vertices()
            .map(|u| vec![true; inst.degree(u)])
            .collect();
        let len: Vec<usize> = alive.iter().map(Vec::len).collect();
        Table {
            inst,
            head: vec![0; len.len()],
            tail: len.clone(),
            alive,
            len,
        }
    }

    fn len(&self, u: Vertex) -> usize {
        self.len[u.index()]
    }

    fn delete(&mut self, u: Vertex, v: Vertex) {
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.inst.rank(a, b).expect("table entries are edges");
            let slot = &mut self.alive[a.index()][pos];
            if *slot {
                *slot = false;
                self.len[a.index()] -= 1;
            }
        }
    }

    fn first(&mut self, u: Vertex) -> Option<Vertex> {
        let i = u.index();
        while self.head[i] < self.tail[i] && !self.alive[i][self.head[i]] {
            self.head[i] += 1;
        }
        (self.head[i] < self.tail[i]).then(|| self.inst.prefs(u)[self.head[i]])
    }

    fn second(&mut self, u: Vertex) -> Option<Vertex> {
        self.first(u)?;
        let i = u.index();
        (self.head[i] + 1..self.tail[i])
            .find(|&p| self.alive[i][p])
            .map(|p| self.inst.prefs(u)[p])
    }

    fn last(&mut self, u: Vertex) -> Option<Vertex> {
        let i = u.index();
        while self.tail[i] > self.head[i] && !self.alive[i][self.tail[i] - 1] {
            self.tail[i] -= 1;
        }
        (self.tail[i] > self.head[i]).then(|| self.inst.prefs(u)[self.tail[i] - 1])
    }

    /// `y` keeps `x` and drops everyone it ranks below `x`.
    fn truncate_after(&mut self, y: Vertex, x: Vertex) {
        let from = self.inst.rank(y, x).expect("table entries are edges") + 1;
        let to = self.tail[y.index()];
        for pos in from..to {
            if self.alive[y.index()][pos] {
                let w = self.inst.prefs(y)[pos];
                self.delete(y, w);
            }
        }
    }
}

/// Finds a stable matching, or `None` when the instance admits none.
pub fn find_stable(inst: &Instance) -> Option<Matching> {
    let mut table = Table::new(inst);

    // Phase 1: proposals in declaration order.
    let mut holds: Vec<Option<Vertex>> = vec![None; inst.n()];
    let mut free: VecDeque<Vertex> = inst.vertices().collect();
    while let Some(x) = free.pop_front() {
        let Some(y) = table.first(x) else {
            continue;
        };
        // x is still on y's list, so y ranks x above its current proposer.
        let previous = holds[y.index()].replace(x);
        table.truncate_after(y, x);
        if let Some(z) = previous {
            free.push_back(z);
        }
    }

    // Vertices left with an empty list here are uncovered in every stable
    // matching; an emptied list later on means no stable matching exists.
    let active: Vec<bool> = inst.vertices().map(|u| table.len(u) > 0).collect();

    // Phase 2: eliminate rotations until every list is a singleton or empty.
    let mut on_sequence: Vec<Option<usize>> = vec![None; inst.n()];
    loop {
        let Some(start) = inst.vertices().find(|&u| table.len(u) >= 2) else {
            break;
        };
        let mut sequence = Vec::new();
        let mut x = start;
        let rotation_start = loop {
            if let Some(i) = on_sequence[x.index()] {
                break i;
            }
            on_sequence[x.index()] = Some(sequence.len());
            sequence.push(x);
            let q = table
                .second(x)
                .expect("rotation members have a second choice");
            x = table.last(q).expect("second choices hold a proposal");
        };
        for &p in &sequence {
            on_sequence[p.index()] = None;
        }
        let rotation = &sequence[rotation_start..];
        let seconds: Vec<Vertex> = rotation
            .iter()
            .map(|&p| {
                table
                    .second(p)
                    .expect("rotation members have a second choice")
            })
            .collect();
        for (&p, &q) in rotation.iter().zip(&seconds) {
            table.truncate_after(q, p);
        }
        if inst
            .vertices()
            .any(|u| active[u.index()] && table.len(u) == 0)
        {
            return None;
        }
    }

    let mut m = Matching::empty(inst.n());
    for u in inst.vertices() {
        if let Some(v) = table.first(u) {
            if u < v {
                m.link(u, v);
            }
        }
    }
    Some(m)
}

/// A stable matching covering every vertex, or `None`. All stable
/// matchings cover the same vertices, so a single probe decides.
pub fn find_complete_stable(inst: &Instance) -> Option<Matching> {
    find_stable(inst).filter(|m| m.uncovered().is_empty())
}
