//! Passes along strands, their stripped shadows, and rerouting them
//! through the faces of the stripped shadow.

use std::collections::{HashMap, VecDeque};

use crate::error::PassError;
use crate::model::{slot_pole, through, trace_strands, CrossingId, EdgeId, EndRef, Kind, LinkPresentation, Pole};
use crate::moves::draw;
use crate::surgery::Work;

/// A strand segment `start, interior.., end` whose interior crossings are
/// passed at one common pole (or are all virtual).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pass {
    pub start: EndRef,
    pub interior: Vec<EndRef>,
    pub end: EndRef,
}

impl Pass {
    pub fn len(&self) -> usize {
        self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    /// Pole shared by the interior.
    pub fn sign(&self) -> Pole {
        self.interior.first().map_or(Pole::Plus, |e| e.pole)
    }

    pub fn is_virtual(&self, p: &LinkPresentation) -> bool {
        self.interior.iter().any(|e| p.kind(e.crossing) == Kind::Virtual)
    }

    pub fn label(&self, p: &LinkPresentation) -> String {
        let mut parts = vec![p.end_label(self.start)];
        parts.extend(self.interior.iter().map(|&e| p.end_label(e)));
        parts.push(p.end_label(self.end));
        parts.join(" ")
    }
}

/// One crossing of the reroute: the new strand passes over or under the
/// edge `edge`, moving from the face on the left of the direction that
/// starts at `tail` to the face on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RouteStep {
    pub edge: EdgeId,
    pub tail: EndRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    /// Face ids of the adjacent graph, from the start face to the end face.
    pub faces: Vec<usize>,
    pub steps: Vec<RouteStep>,
}

impl Route {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplacementClass {
    Short,
    Equal,
    Long,
}

pub fn classify_replacement(k: usize, m: usize) -> ReplacementClass {
    if m < k {
        ReplacementClass::Short
    } else if m == k {
        ReplacementClass::Equal
    } else {
        ReplacementClass::Long
    }
}

/// Bridges and subways among classical crossings, each reported once in
/// the direction of its strand.
pub fn find_maximal_passes(p: &LinkPresentation) -> Vec<Pass> {
    passes(p, false)
}

/// Maximal passes of a virtual presentation: classical ones as above, plus
/// runs of virtual crossings bounded by classical poles.
pub fn find_virtual_maximal_passes(p: &LinkPresentation) -> Vec<Pass> {
    passes(p, true)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Classical(Pole),
    Virtual,
}

fn passes(p: &LinkPresentation, virtual_runs: bool) -> Vec<Pass> {
    let class = |e: EndRef| match p.kind(e.crossing) {
        Kind::Classical => Class::Classical(e.pole),
        Kind::Virtual => Class::Virtual,
    };
    let mut out = Vec::new();
    for strand in trace_strands(p) {
        let seq = &strand.poles;
        let l = seq.len();
        if seq.iter().all(|&e| class(e) == class(seq[0])) {
            continue;
        }
        // begin at a run boundary so runs never wrap
        let first = (0..l).find(|&i| class(seq[i]) != class(seq[(i + l - 1) % l])).expect("two classes");
        let mut i = 0;
        while i < l {
            let a = (first + i) % l;
            let c = class(seq[a]);
            let mut k = 1;
            while k < l && class(seq[(a + k) % l]) == c {
                k += 1;
            }
            let prev = seq[(a + l - 1) % l];
            let next = seq[(a + k) % l];
            let interior: Vec<EndRef> = (0..k).map(|j| seq[(a + j) % l]).collect();
            let bounded = match c {
                Class::Classical(e) => class(prev) == Class::Classical(e.opposite()) && class(next) == class(prev),
                Class::Virtual => virtual_runs && class(prev) != Class::Virtual && class(next) != Class::Virtual,
            };
            let pass = Pass {
                start: prev,
                interior,
                end: next,
            };
            if bounded && endpoints_ok(&pass) {
                out.push(pass);
            }
            i += k;
        }
    }
    out
}

fn endpoints_ok(pass: &Pass) -> bool {
    let (x, y) = (pass.start.crossing, pass.end.crossing);
    x != y && !pass.interior.iter().any(|e| e.crossing == x || e.crossing == y)
}

pub(crate) fn check_classical_pass(p: &LinkPresentation, pass: &Pass) -> Result<(), PassError> {
    check_ids(p, pass)?;
    let eps = pass.sign();
    let ok = !pass.is_empty()
        && endpoints_ok(pass)
        && pass.start.pole == eps.opposite()
        && pass.end.pole == eps.opposite()
        && pass.interior.iter().all(|e| e.pole == eps)
        && std::iter::once(pass.start)
            .chain(pass.interior.iter().copied())
            .chain(std::iter::once(pass.end))
            .all(|e| p.kind(e.crossing) == Kind::Classical);
    if ok {
        Ok(())
    } else {
        Err(PassError::NotMaximal)
    }
}

pub(crate) fn check_virtual_pass(p: &LinkPresentation, pass: &Pass) -> Result<(), PassError> {
    check_ids(p, pass)?;
    if check_classical_pass(p, pass).is_ok() {
        return Ok(());
    }
    let ok = !pass.is_empty()
        && endpoints_ok(pass)
        && p.kind(pass.start.crossing) == Kind::Classical
        && p.kind(pass.end.crossing) == Kind::Classical
        && pass.interior.iter().all(|e| p.kind(e.crossing) == Kind::Virtual);
    if ok {
        Ok(())
    } else {
        Err(PassError::NotMaximal)
    }
}

fn check_ids(p: &LinkPresentation, pass: &Pass) -> Result<(), PassError> {
    let n = p.crossing_count();
    let all = std::iter::once(&pass.start).chain(&pass.interior).chain(std::iter::once(&pass.end));
    for e in all {
        if e.crossing.0 >= n {
            return Err(PassError::Stale(format!("crossing {} missing", e.crossing.0)));
        }
    }
    Ok(())
}

/// Slots at the start and end of the pass that face its interior.
pub(crate) fn locate(p: &LinkPresentation, pass: &Pass) -> Result<(usize, usize), PassError> {
    let x = pass.start.crossing.0;
    for s in (4 * x..4 * x + 4).filter(|&s| slot_pole(s) == pass.start.pole) {
        let mut cur = p.mate[s];
        let mut ok = true;
        for e in &pass.interior {
            if cur / 4 != e.crossing.0 || slot_pole(cur) != e.pole {
                ok = false;
                break;
            }
            cur = p.mate[through(cur)];
        }
        if ok && cur / 4 == pass.end.crossing.0 && slot_pole(cur) == pass.end.pole {
            return Ok((s, cur));
        }
    }
    Err(PassError::Stale(format!("no pass {}", pass.label(p))))
}

/// The shadow with the pass interior removed: the pass itself leaves open
/// stubs at its two ends, every other strand through the interior is
/// joined up by a fresh edge.
#[derive(Clone, Debug)]
pub(crate) struct Stripped {
    pub work: Work,
    pub x_stub: usize,
    pub y_stub: usize,
    /// Fresh edges standing for strands through the interior, with the
    /// number of interior crossings each one passed.
    pub run_len: HashMap<EdgeId, usize>,
    pub closed: Vec<String>,
}

pub(crate) fn strip(p: &LinkPresentation, pass: &Pass) -> Result<Stripped, PassError> {
    let (sx, sy) = locate(p, pass)?;
    let mut work = Work::new(p);
    let set: Vec<usize> = pass.interior.iter().map(|e| e.crossing.0).collect();
    let (runs, closed) = work.excise(&set);
    let mut run_len = HashMap::new();
    for r in runs {
        if r.ends.contains(&sx) {
            debug_assert!(r.ends.contains(&sy));
            work.mate[sx] = sx;
            work.mate[sy] = sy;
        } else {
            let id = work.link_fresh(r.ends[0], r.ends[1]);
            run_len.insert(id, r.length);
        }
    }
    Ok(Stripped {
        work,
        x_stub: sx,
        y_stub: sy,
        run_len,
        closed,
    })
}

/// Arc of the adjacent graph: crossing `step.edge` from face `from` to face `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub step: RouteStep,
    slot: usize,
}

/// The dual of a stripped shadow, with the faces holding the two stubs.
#[derive(Clone, Debug)]
pub struct AdjacentGraph {
    pub(crate) stripped: Stripped,
    face_of: Vec<usize>,
    node_count: usize,
    f_x: usize,
    f_y: usize,
    arcs: Vec<Arc>,
    /// The pass ends lie in different components once the interior is gone.
    separated: bool,
    dist: Vec<usize>,
}

impl AdjacentGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn f_x(&self) -> usize {
        self.f_x
    }

    pub fn f_y(&self) -> usize {
        self.f_y
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_separated(&self) -> bool {
        self.separated
    }

    /// Number of crossings a shortest reroute needs.
    pub fn distance(&self) -> Option<usize> {
        if self.separated {
            return Some(0);
        }
        let d = self.dist[self.f_x];
        (d != usize::MAX).then_some(d)
    }

    /// Stripped-shadow slot of a route step.
    fn resolve(&self, step: &RouteStep) -> Option<usize> {
        let w = &self.stripped.work;
        let c = step.tail.crossing.0;
        if c >= w.alive.len() || !w.alive[c] {
            return None;
        }
        (4 * c..4 * c + 4).find(|&s| slot_pole(s) == step.tail.pole && !w.is_stub(s) && w.eid[s] == step.edge)
    }

    /// Slots of the steps, once each step is checked to continue the
    /// previous one face to face.
    pub(crate) fn check_route(&self, route: &Route) -> Result<Vec<usize>, PassError> {
        let w = &self.stripped.work;
        let mut slots = Vec::with_capacity(route.steps.len());
        let mut face = self.f_x;
        for step in &route.steps {
            let s = self
                .resolve(step)
                .ok_or_else(|| PassError::RouteStale(format!("edge {} at {:?}", step.edge, step.tail)))?;
            if self.face_of[s] != face {
                return Err(PassError::RouteMismatch);
            }
            face = self.face_of[w.mate[s]];
            slots.push(s);
        }
        if face != self.f_y && !(self.separated && slots.is_empty()) {
            return Err(PassError::RouteMismatch);
        }
        Ok(slots)
    }

    /// Routes whose steps cross the edges joining the given end pairs, in
    /// order. Each pair may name any parallel edge in either direction.
    pub fn routes_crossing(&self, pairs: &[(EndRef, EndRef)]) -> Vec<Route> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_routes(pairs, self.f_x, &mut cur, &mut out);
        out
    }

    fn extend_routes(&self, pairs: &[(EndRef, EndRef)], face: usize, cur: &mut Vec<Arc>, out: &mut Vec<Route>) {
        let Some((&(a, b), rest)) = pairs.split_first() else {
            if face == self.f_y || (self.separated && cur.is_empty()) {
                out.push(self.route_of(cur));
            }
            return;
        };
        let w = &self.stripped.work;
        for arc in self.arcs.iter().filter(|arc| arc.from == face) {
            let head = w.mate[arc.slot];
            let head = EndRef::new(CrossingId(head / 4), slot_pole(head));
            if (arc.step.tail, head) == (a, b) || (arc.step.tail, head) == (b, a) {
                cur.push(*arc);
                self.extend_routes(rest, arc.to, cur, out);
                cur.pop();
            }
        }
    }

    /// The route crossing the given edges in order, starting at the start face.
    pub fn route_from_steps(&self, steps: &[RouteStep]) -> Result<Route, PassError> {
        let mut f = self.f_x;
        let mut arcs = Vec::with_capacity(steps.len());
        for step in steps {
            let arc = self
                .arcs
                .iter()
                .find(|a| a.from == f && a.step == *step)
                .ok_or_else(|| PassError::RouteStale(format!("no crossing of edge {} from face {f}", step.edge)))?;
            arcs.push(*arc);
            f = arc.to;
        }
        let route = self.route_of(&arcs);
        self.check_route(&route)?;
        Ok(route)
    }

    /// Crossings still needed to reach the end face from face `f`.
    pub(crate) fn remaining(&self, f: usize) -> usize {
        self.dist[f]
    }

    pub(crate) fn route_of(&self, arcs: &[Arc]) -> Route {
        let mut faces = vec![self.f_x];
        faces.extend(arcs.iter().map(|a| a.to));
        Route {
            faces,
            steps: arcs.iter().map(|a| a.step).collect(),
        }
    }
}

pub fn build_adjacent_graph(p: &LinkPresentation, pass: &Pass) -> Result<AdjacentGraph, PassError> {
    check_virtual_pass(p, pass)?;
    Ok(adjacent_graph(strip(p, pass)?))
}

pub(crate) fn adjacent_graph(stripped: Stripped) -> AdjacentGraph {
    let w = &stripped.work;
    let n = w.slot_count();
    let mut face_of = vec![usize::MAX; n];
    let mut faces = 0;
    for s in 0..n {
        if !w.alive[s / 4] || face_of[s] != usize::MAX {
            continue;
        }
        let mut d = s;
        loop {
            face_of[d] = faces;
            d = w.face_next(d);
            if d == s {
                break;
            }
        }
        faces += 1;
    }
    let mut arcs = Vec::new();
    for s in 0..n {
        if !w.alive[s / 4] || w.is_stub(s) {
            continue;
        }
        arcs.push(Arc {
            from: face_of[s],
            to: face_of[w.mate[s]],
            step: RouteStep {
                edge: w.eid[s],
                tail: EndRef::new(CrossingId(s / 4), slot_pole(s)),
            },
            slot: s,
        });
    }
    arcs.sort_by_key(|a| (a.from, a.to, a.step.edge, a.slot));
    let comp = w.component_labels();
    let separated = comp[stripped.x_stub / 4] != comp[stripped.y_stub / 4];
    let f_x = face_of[stripped.x_stub];
    let f_y = face_of[stripped.y_stub];
    let mut dist = vec![usize::MAX; faces];
    let mut queue = VecDeque::from([f_y]);
    dist[f_y] = 0;
    while let Some(f) = queue.pop_front() {
        for a in arcs.iter().filter(|a| a.to == f) {
            if dist[a.from] == usize::MAX {
                dist[a.from] = dist[f] + 1;
                queue.push_back(a.from);
            }
        }
    }
    AdjacentGraph {
        stripped,
        face_of,
        node_count: faces,
        f_x,
        f_y,
        arcs,
        separated,
        dist,
    }
}

/// A shortest reroute; among equals, the one with the smallest face
/// sequence, then the smallest crossed edge at each step.
pub fn shortest_route(g: &AdjacentGraph) -> Result<Route, PassError> {
    if g.separated {
        return Ok(Route {
            faces: vec![],
            steps: vec![],
        });
    }
    if g.dist[g.f_x] == usize::MAX {
        return Err(PassError::Unreachable);
    }
    let mut chosen = Vec::new();
    let mut f = g.f_x;
    while f != g.f_y {
        let arc = g
            .arcs
            .iter()
            .filter(|a| a.from == f && g.dist[a.to] + 1 == g.dist[f])
            .min_by_key(|a| (a.to, a.step.edge, a.slot))
            .expect("distance decreases along some arc");
        chosen.push(*arc);
        f = arc.to;
    }
    Ok(g.route_of(&chosen))
}

/// Replaces a bridge or subway by a strand along `route`, passing every
/// crossed edge at the same pole as the old interior.
pub fn apply_pass_replacement(p: &LinkPresentation, pass: &Pass, route: &Route) -> Result<LinkPresentation, PassError> {
    check_classical_pass(p, pass)?;
    let g = adjacent_graph(strip(p, pass)?);
    reroute(&g, route, pass.sign(), Kind::Classical).map(|(q, _)| q)
}

/// Draws the route into the stripped shadow. Returns the result and the
/// number of trivial components spawned.
pub(crate) fn reroute(
    g: &AdjacentGraph,
    route: &Route,
    pole: Pole,
    kind: Kind,
) -> Result<(LinkPresentation, usize), PassError> {
    let slots = g.check_route(route)?;
    let mut w = g.stripped.work.clone();
    let names: Vec<String> = slots.iter().map(|_| w.fresh_name()).collect();
    let (x, y) = (g.stripped.x_stub, g.stripped.y_stub);
    let mut done = draw(w, x, y, &slots, pole, kind, &names).ok_or(PassError::RouteMismatch)?;
    let spawned = g.stripped.closed.len();
    for name in &g.stripped.closed {
        done.spawn_trivial(name.clone());
    }
    let q = done.finish().map_err(|e| PassError::Stale(e.to_string()))?;
    Ok((q, spawned))
}

/// Side of the cycle formed by the old pass and the route, for every live
/// crossing of the stripped shadow reachable from the start of the pass.
/// `None` marks crossings in other components.
pub(crate) fn region_sides(g: &AdjacentGraph, route: &Route) -> Vec<Option<bool>> {
    let w = &g.stripped.work;
    let mut parity: HashMap<EdgeId, usize> = g.stripped.run_len.clone();
    for s in &route.steps {
        *parity.entry(s.edge).or_insert(0) += 1;
    }
    let mut side = vec![None; w.alive.len()];
    let start = g.stripped.x_stub / 4;
    side[start] = Some(false);
    let mut stack = vec![start];
    while let Some(c) = stack.pop() {
        let here = side[c].expect("labelled");
        for s in 4 * c..4 * c + 4 {
            if w.is_stub(s) {
                continue;
            }
            let o = w.mate[s] / 4;
            let flip = parity.get(&w.eid[s]).copied().unwrap_or(0) % 2 == 1;
            if side[o].is_none() {
                side[o] = Some(here ^ flip);
                stack.push(o);
            }
        }
    }
    side
}

/// Pushes edge `e` across crossing `z` along a face they share: the edge is
/// rerouted around `z`, crossing each of its four edges at pole `sign`.
pub fn replace_edge_surrounding(
    p: &LinkPresentation,
    e: EdgeId,
    z: CrossingId,
    sign: Pole,
) -> Result<LinkPresentation, PassError> {
    let not_cofacial = || PassError::NotCofacial {
        edge: e,
        crossing: p.name(z).to_string(),
    };
    if z.0 >= p.crossing_count() {
        return Err(PassError::Stale(format!("crossing {} missing", z.0)));
    }
    let edge = p.edge_by_id(e).ok_or_else(|| PassError::Stale(format!("edge {e} missing")))?;
    if edge.ends.iter().any(|end| end.crossing == z) || edge.ends[0].crossing == edge.ends[1].crossing {
        return Err(not_cofacial());
    }
    for d in edge.darts {
        // a dart of the face leading into z
        let mut into = None;
        let mut f = p.face_next(d);
        while f != d {
            if p.mate(f).crossing() == z {
                into = Some(f);
                break;
            }
            f = p.face_next(f);
        }
        let Some(into) = into else { continue };
        let t = p.mate[into.0];
        let steps: Vec<usize> = (0..4).map(|i| p.mate[4 * z.0 + (t % 4 + i) % 4]).collect();
        let mut w = Work::new(p);
        let names: Vec<String> = steps.iter().map(|_| w.fresh_name()).collect();
        let target = p.mate[d.0];
        w.cut(d.0);
        let kind = Kind::Classical;
        if let Some(done) = draw(w, d.0, target, &steps, sign, kind, &names) {
            return done.finish().map_err(|err| PassError::Stale(err.to_string()));
        }
    }
    Err(not_cofacial())
}
