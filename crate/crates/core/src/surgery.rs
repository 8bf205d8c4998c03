//! Mutable slot tables used while a move is being performed.
//!
//! A slot whose mate is itself is an open stub. Dead crossings stay in the
//! tables until [`Work::finish`] compacts them away.

use std::collections::HashMap;

use crate::error::ValidationError;
use crate::model::{
    ccw_prev, slot_pole, through, CrossingInfo, EdgeId, FreshNames, Kind, LinkPresentation, Pole,
};

#[derive(Clone, Debug)]
pub(crate) struct Work {
    pub names: Vec<String>,
    pub kinds: Vec<Kind>,
    pub alive: Vec<bool>,
    pub mate: Vec<usize>,
    pub eid: Vec<EdgeId>,
    /// Pieces created by subdividing an edge, mapped to the edge they came from.
    pub origin: HashMap<EdgeId, EdgeId>,
    /// Crossings added by [`Work::cross`], with the two slots on the crossed edge.
    pub crossed: HashMap<usize, [usize; 2]>,
    pub fresh: FreshNames,
}

/// A strand segment through removed crossings, reconnecting two outside slots.
#[derive(Clone, Debug)]
pub(crate) struct Run {
    pub ends: [usize; 2],
    /// Number of removed poles passed.
    pub length: usize,
}

impl Work {
    pub fn new(p: &LinkPresentation) -> Work {
        Work {
            names: p.crossings.iter().map(|c| c.name.clone()).collect(),
            kinds: p.crossings.iter().map(|c| c.kind).collect(),
            alive: vec![true; p.crossings.len()],
            mate: p.mate.clone(),
            eid: p.edge.clone(),
            origin: HashMap::new(),
            crossed: HashMap::new(),
            fresh: p.fresh.clone(),
        }
    }

    pub fn slot_count(&self) -> usize {
        self.mate.len()
    }

    pub fn is_stub(&self, s: usize) -> bool {
        self.mate[s] == s
    }

    pub fn name_taken(&self, name: &str) -> bool {
        self.names
            .iter()
            .zip(&self.alive)
            .any(|(n, &a)| a && n == name)
    }

    pub fn fresh_name(&mut self) -> String {
        let names = &self.names;
        let alive = &self.alive;
        self.fresh
            .name(|n| names.iter().zip(alive).any(|(m, &a)| a && m == n))
    }

    pub fn link(&mut self, a: usize, b: usize, id: EdgeId) {
        self.mate[a] = b;
        self.mate[b] = a;
        self.eid[a] = id;
        self.eid[b] = id;
    }

    pub fn link_fresh(&mut self, a: usize, b: usize) -> EdgeId {
        let id = self.fresh.edge();
        self.link(a, b, id);
        id
    }

    pub fn cut(&mut self, s: usize) {
        let m = self.mate[s];
        self.mate[s] = s;
        self.mate[m] = m;
    }

    pub fn add_crossing(&mut self, name: String, kind: Kind) -> usize {
        let c = self.names.len();
        self.names.push(name);
        self.kinds.push(kind);
        self.alive.push(true);
        for s in 4 * c..4 * c + 4 {
            self.mate.push(s);
            self.eid.push(0);
        }
        c
    }

    /// Adds a one-crossing trivial component.
    pub fn spawn_trivial(&mut self, name: String) -> usize {
        let c = self.add_crossing(name, Kind::Classical);
        self.link_fresh(4 * c, 4 * c + 1);
        self.link_fresh(4 * c + 2, 4 * c + 3);
        c
    }

    /// Next dart of the face to the left, stubs included.
    pub fn face_next(&self, s: usize) -> usize {
        ccw_prev(self.mate[s])
    }

    pub fn same_face(&self, a: usize, b: usize) -> bool {
        let mut d = a;
        loop {
            if d == b {
                return true;
            }
            d = self.face_next(d);
            if d == a {
                return false;
            }
        }
    }

    /// Component label per crossing (`usize::MAX` for dead ones).
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.names.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if !self.alive[start] || comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                for s in 4 * c..4 * c + 4 {
                    let o = self.mate[s] / 4;
                    if comp[o] == usize::MAX {
                        comp[o] = next;
                        stack.push(o);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Deletes the crossings in `set` and reports how the strands through
    /// them ran: open runs between outside slots, and the number of closed
    /// runs lying entirely inside the set together with a name for each.
    /// Outside slots at run ends are left pointing at dead slots; the caller
    /// must relink or cut them.
    pub fn excise(&mut self, set: &[usize]) -> (Vec<Run>, Vec<String>) {
        let inside = |w: &Work, s: usize| set.contains(&(w.mate[s] / 4)) && w.mate[s] != s;
        let mut seen = vec![false; self.mate.len()];
        let mut runs = Vec::new();
        for &c in set {
            for s in 4 * c..4 * c + 4 {
                if seen[s] || inside(self, s) {
                    continue;
                }
                let mut cur = s;
                let mut length = 0;
                let end = loop {
                    let t = through(cur);
                    seen[cur] = true;
                    seen[t] = true;
                    length += 1;
                    if inside(self, t) {
                        cur = self.mate[t];
                    } else {
                        break self.mate[t];
                    }
                };
                runs.push(Run {
                    ends: [self.mate[s], end],
                    length,
                });
            }
        }
        let mut closed = Vec::new();
        let mut used: Vec<String> = Vec::new();
        for &c in set {
            for s in 4 * c..4 * c + 4 {
                if seen[s] {
                    continue;
                }
                let mut members = Vec::new();
                let mut cur = s;
                loop {
                    let t = through(cur);
                    seen[cur] = true;
                    seen[t] = true;
                    members.push(cur / 4);
                    cur = self.mate[t];
                    if cur == s {
                        break;
                    }
                }
                members.sort();
                let name = members
                    .iter()
                    .map(|&m| self.names[m].clone())
                    .find(|n| !used.contains(n));
                if let Some(n) = &name {
                    used.push(n.clone());
                }
                closed.push(name);
            }
        }
        for &c in set {
            self.alive[c] = false;
        }
        let closed = closed
            .into_iter()
            .map(|n| n.unwrap_or_else(|| self.fresh_name()))
            .collect();
        (runs, closed)
    }

    /// Subdivides the piece leaving `dart` with a new crossing `w` and
    /// passes the pen through it, from the face on the left of the piece to
    /// the face on its right. Returns the new pen stub.
    pub fn cross(&mut self, pen: usize, dart: usize, pen_pole: Pole, kind: Kind, name: String) -> usize {
        let head = self.mate[dart];
        let piece = self.eid[dart];
        let root = *self.origin.get(&piece).unwrap_or(&piece);
        let w = self.add_crossing(name, kind);
        // anticlockwise: forward to head, pen in, back to tail, pen out
        let order = match pen_pole {
            Pole::Minus => [0, 1, 2, 3],
            Pole::Plus => [3, 0, 1, 2],
        };
        let [fwd, pen_in, back, pen_out] = order.map(|o| 4 * w + o);
        debug_assert_eq!(slot_pole(pen_in), pen_pole);
        let a = self.link_fresh(dart, back);
        let b = self.link_fresh(fwd, head);
        self.origin.insert(a, root);
        self.origin.insert(b, root);
        self.link_fresh(pen, pen_in);
        self.crossed.insert(w, [back, fwd]);
        pen_out
    }

    /// Pieces of one edge in the direction that starts at slot `tail`,
    /// listed by the slot each piece leaves from, nearest `tail` first.
    pub fn chain(&self, tail: usize) -> Vec<usize> {
        let mut out = vec![tail];
        let mut s = tail;
        loop {
            let h = self.mate[s];
            match self.crossed.get(&(h / 4)) {
                Some(pair) if h != s && pair.contains(&h) => {
                    s = through(h);
                    out.push(s);
                }
                _ => break,
            }
        }
        out
    }

    /// Turns the live crossings back into a presentation.
    pub fn finish(self) -> Result<LinkPresentation, ValidationError> {
        let mut index = vec![usize::MAX; self.names.len()];
        let mut crossings = Vec::new();
        for c in 0..self.names.len() {
            if self.alive[c] {
                index[c] = crossings.len();
                crossings.push(CrossingInfo {
                    name: self.names[c].clone(),
                    kind: self.kinds[c],
                });
            }
        }
        let n = crossings.len();
        let mut mate = vec![0; 4 * n];
        let mut edge = vec![0; 4 * n];
        for c in 0..self.names.len() {
            if !self.alive[c] {
                continue;
            }
            for pos in 0..4 {
                let s = 4 * c + pos;
                let m = self.mate[s];
                if m == s || !self.alive[m / 4] {
                    return Err(ValidationError::Dangling(format!(
                        "open dart at {} after surgery",
                        self.names[c]
                    )));
                }
                mate[4 * index[c] + pos] = 4 * index[m / 4] + m % 4;
                edge[4 * index[c] + pos] = self.eid[s];
            }
        }
        LinkPresentation::from_parts(crossings, mate, edge, Some(self.fresh))
    }
}
