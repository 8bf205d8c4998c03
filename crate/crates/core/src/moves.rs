//! The classical move calculus: clasp insertion and removal, kink removal,
//! triangle moves, and flips at nugatory crossings.

use crate::error::MoveError;
use crate::model::{
    slot_pole, through, CrossingId, Dart, EdgeId, Face, Kind, LinkPresentation, Pole,
};
use crate::surgery::Work;

/// Two edges on a common face, to be pushed across each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega0Site {
    pub e_x: EdgeId,
    pub e_y: EdgeId,
    pub shared_face: Face,
    /// Pole taken by the pushed edge `e_x` at both new crossings.
    pub sign: Pole,
}

/// Two crossings joined plus-to-plus and minus-to-minus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega1Site {
    pub x: CrossingId,
    pub y: CrossingId,
    pub e_plus: EdgeId,
    pub e_minus: EdgeId,
}

/// A crossing with a loop edge between its poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega2Site {
    pub x: CrossingId,
    pub loop_edge: EdgeId,
}

/// A triangular face, given by its three darts in face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSite {
    pub darts: [Dart; 3],
    pub edges: [EdgeId; 3],
    pub crossings: [CrossingId; 3],
}

/// A cut vertex of the shadow and the crossings on the side to be flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSite {
    pub x: CrossingId,
    pub side: Vec<CrossingId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sites {
    pub omega1: Vec<Omega1Site>,
    pub omega2: Vec<Omega2Site>,
    pub triangles: Vec<TriangleSite>,
}

pub fn apply_omega0(p: &LinkPresentation, site: &Omega0Site) -> Result<LinkPresentation, MoveError> {
    insert_clasp(p, site, Kind::Classical, None)
}

/// Like [`apply_omega0`] with caller-chosen names for the two new crossings.
pub fn apply_omega0_named(
    p: &LinkPresentation,
    site: &Omega0Site,
    names: [&str; 2],
) -> Result<LinkPresentation, MoveError> {
    insert_clasp(p, site, Kind::Classical, Some(names))
}

pub fn apply_omega1(p: &LinkPresentation, site: &Omega1Site) -> Result<LinkPresentation, MoveError> {
    check_clasp(p, site.x, site.y)?;
    if p.kind(site.x) != Kind::Classical || p.kind(site.y) != Kind::Classical {
        return Err(MoveError::Kind("clasp removal needs classical crossings".into()));
    }
    remove_clasp(p, site.x, site.y)
}

pub fn apply_omega2(p: &LinkPresentation, site: &Omega2Site) -> Result<LinkPresentation, MoveError> {
    if site.x.0 >= p.crossing_count() || p.kind(site.x) != Kind::Classical {
        return Err(MoveError::Stale("no such classical crossing".into()));
    }
    remove_kink(p, site.x)
}

pub fn apply_omega3(p: &LinkPresentation, site: &TriangleSite) -> Result<LinkPresentation, MoveError> {
    let kinds = triangle_kinds(p, site)?;
    if kinds.iter().any(|&k| k != Kind::Classical) {
        return Err(MoveError::Kind("triangle move needs classical crossings".into()));
    }
    if !triangle_pattern(p, site) {
        return Err(MoveError::Pattern);
    }
    Ok(flip_triangle(p, site))
}

/// Every clasp, kink and pattern-matching triangle among classical crossings.
pub fn enumerate_sites(p: &LinkPresentation) -> Sites {
    let classical = |c: CrossingId| p.kind(c) == Kind::Classical;
    Sites {
        omega1: clasp_sites(p)
            .into_iter()
            .filter(|s| classical(s.x) && classical(s.y))
            .collect(),
        omega2: kink_sites(p).into_iter().filter(|s| classical(s.x)).collect(),
        triangles: triangle_faces(p)
            .into_iter()
            .filter(|t| t.crossings.iter().all(|&c| classical(c)) && triangle_pattern(p, t))
            .collect(),
    }
}

/// All ways to pick two edges on one face, each face and pair once.
pub fn omega0_sites(p: &LinkPresentation, sign: Pole) -> Vec<Omega0Site> {
    let mut out = Vec::new();
    for f in crate::model::trace_faces(p) {
        let mut ids: Vec<EdgeId> = f.edges(p);
        ids.sort();
        ids.dedup();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i..] {
                out.push(Omega0Site {
                    e_x: a,
                    e_y: b,
                    shared_face: f.clone(),
                    sign,
                });
            }
        }
    }
    out
}

/// Neighbours of `x` with a larger index, each once.
pub(crate) fn later_neighbours(p: &LinkPresentation, x: CrossingId) -> Vec<CrossingId> {
    let mut out: Vec<CrossingId> = (4 * x.0..4 * x.0 + 4)
        .map(|s| CrossingId(p.mate[s] / 4))
        .filter(|&y| y > x)
        .collect();
    out.sort();
    out.dedup();
    out
}

pub(crate) fn clasp_sites(p: &LinkPresentation) -> Vec<Omega1Site> {
    let mut out = Vec::new();
    for x in p.crossing_ids() {
        for y in later_neighbours(p, x) {
            if let Ok((e_plus, e_minus)) = clasp_edges(p, x, y) {
                out.push(Omega1Site { x, y, e_plus, e_minus });
            }
        }
    }
    out
}

pub(crate) fn kink_sites(p: &LinkPresentation) -> Vec<Omega2Site> {
    p.crossing_ids()
        .filter_map(|x| {
            let loops = loop_slots(p, x);
            (loops.len() == 1).then(|| Omega2Site {
                x,
                loop_edge: p.edge[loops[0]],
            })
        })
        .collect()
}

/// Faces of length three on three distinct crossings.
pub(crate) fn triangle_faces(p: &LinkPresentation) -> Vec<TriangleSite> {
    crate::model::trace_faces(p)
        .into_iter()
        .filter(|f| f.len() == 3)
        .filter_map(|f| {
            let d = [f.darts[0], f.darts[1], f.darts[2]];
            let c = d.map(|x| x.crossing());
            (c[0] != c[1] && c[1] != c[2] && c[0] != c[2]).then(|| TriangleSite {
                darts: d,
                edges: d.map(|x| p.edge_id(x)),
                crossings: c,
            })
        })
        .collect()
}

/// Slots at `x` holding loop edges, plus-pole end only.
fn loop_slots(p: &LinkPresentation, x: CrossingId) -> Vec<usize> {
    (4 * x.0..4 * x.0 + 4)
        .filter(|&s| s % 2 == 0 && p.mate[s] / 4 == x.0)
        .collect()
}

fn clasp_edges(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> Result<(EdgeId, EdgeId), MoveError> {
    if x == y || x.0 >= p.crossing_count() || y.0 >= p.crossing_count() {
        return Err(MoveError::Stale("clasp crossings missing".into()));
    }
    if !loop_slots(p, x).is_empty() || !loop_slots(p, y).is_empty() {
        return Err(MoveError::Stale("clasp crossing carries a loop".into()));
    }
    let find = |pole: Pole| {
        (4 * x.0..4 * x.0 + 4)
            .filter(|&s| slot_pole(s) == pole)
            .find(|&s| p.mate[s] / 4 == y.0 && slot_pole(p.mate[s]) == pole)
            .map(|s| p.edge[s])
    };
    match (find(Pole::Plus), find(Pole::Minus)) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(MoveError::Stale("clasp edges missing".into())),
    }
}

pub(crate) fn clasp_sites_between(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> Option<(EdgeId, EdgeId)> {
    clasp_edges(p, x, y).ok()
}

/// First edges from the plus and from the minus pole of `x` to `y`.
pub(crate) fn edges_between(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> (EdgeId, EdgeId) {
    let find = |pole: Pole| {
        (4 * x.0..4 * x.0 + 4)
            .find(|&s| slot_pole(s) == pole && p.mate[s] / 4 == y.0)
            .map_or(0, |s| p.edge[s])
    };
    (find(Pole::Plus), find(Pole::Minus))
}

fn check_clasp(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> Result<(), MoveError> {
    clasp_edges(p, x, y).map(|_| ())
}

/// Clasp whose edges pair the poles as `(x^r, y^s), (x^-r, y^-s)`, any `s`.
pub(crate) fn check_virtual_clasp(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> Result<(), MoveError> {
    if x == y || x.0 >= p.crossing_count() || y.0 >= p.crossing_count() {
        return Err(MoveError::Stale("clasp crossings missing".into()));
    }
    if !loop_slots(p, x).is_empty() || !loop_slots(p, y).is_empty() {
        return Err(MoveError::Stale("clasp crossing carries a loop".into()));
    }
    let to_y = |pole: Pole| -> Vec<Pole> {
        (4 * x.0..4 * x.0 + 4)
            .filter(|&s| slot_pole(s) == pole && p.mate[s] / 4 == y.0)
            .map(|s| slot_pole(p.mate[s]))
            .collect()
    };
    let (a, b) = (to_y(Pole::Plus), to_y(Pole::Minus));
    if a.iter().any(|s| b.contains(&s.opposite())) {
        Ok(())
    } else {
        Err(MoveError::Stale("clasp edges missing".into()))
    }
}

pub(crate) fn remove_clasp(p: &LinkPresentation, x: CrossingId, y: CrossingId) -> Result<LinkPresentation, MoveError> {
    let mut w = Work::new(p);
    let (runs, closed) = w.excise(&[x.0, y.0]);
    for r in runs {
        w.link_fresh(r.ends[0], r.ends[1]);
    }
    for name in closed {
        w.spawn_trivial(name);
    }
    w.finish().map_err(|e| MoveError::Stale(e.to_string()))
}

pub(crate) fn remove_kink(p: &LinkPresentation, x: CrossingId) -> Result<LinkPresentation, MoveError> {
    match loop_slots(p, x).len() {
        1 => {}
        0 => return Err(MoveError::Stale(format!("{} has no loop", p.name(x)))),
        _ => return Err(MoveError::WholeComponent(p.name(x).to_string())),
    }
    let mut w = Work::new(p);
    let (runs, _) = w.excise(&[x.0]);
    for r in runs {
        w.link_fresh(r.ends[0], r.ends[1]);
    }
    w.finish().map_err(|e| MoveError::Stale(e.to_string()))
}

pub(crate) fn triangle_kinds(p: &LinkPresentation, site: &TriangleSite) -> Result<[Kind; 3], MoveError> {
    let n = 4 * p.crossing_count();
    if site.darts.iter().any(|d| d.0 >= n) {
        return Err(MoveError::Stale("triangle darts missing".into()));
    }
    let d = site.darts;
    if p.face_next(d[0]) != d[1] || p.face_next(d[1]) != d[2] || p.face_next(d[2]) != d[0] {
        return Err(MoveError::NotTriangle);
    }
    let c = d.map(|x| x.crossing());
    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return Err(MoveError::NotTriangle);
    }
    Ok(c.map(|x| p.kind(x)))
}

/// Some side of the triangle meets equal poles at both of its ends.
pub(crate) fn triangle_pattern(p: &LinkPresentation, site: &TriangleSite) -> bool {
    site.darts
        .iter()
        .any(|&d| d.pole() == p.mate(d).pole())
}

/// Moves each side's strand across the opposite crossing by exchanging,
/// along every side, the outside attachments at its two ends.
pub(crate) fn flip_triangle(p: &LinkPresentation, site: &TriangleSite) -> LinkPresentation {
    let n = p.mate.len();
    let mut tau: Vec<usize> = (0..n).collect();
    for d in site.darts {
        let a = through(d.0);
        let b = through(p.mate[d.0]);
        tau[a] = b;
        tau[b] = a;
    }
    let mut q = p.clone();
    for s in 0..n {
        q.mate[s] = tau[p.mate[tau[s]]];
        q.edge[s] = p.edge[tau[s]];
    }
    q.infinite_face = None;
    q
}

pub(crate) fn insert_clasp(
    p: &LinkPresentation,
    site: &Omega0Site,
    kind: Kind,
    names: Option<[&str; 2]>,
) -> Result<LinkPresentation, MoveError> {
    let face = &site.shared_face.darts;
    let n = p.mate.len();
    if face.is_empty() || face.iter().any(|d| d.0 >= n) {
        return Err(MoveError::Stale("face darts missing".into()));
    }
    let mut orbit = vec![face[0]];
    let mut d = p.face_next(face[0]);
    while d != face[0] {
        orbit.push(d);
        d = p.face_next(d);
    }
    if orbit.len() != face.len() || face.iter().any(|d| !orbit.contains(d)) {
        return Err(MoveError::Stale("face no longer present".into()));
    }
    let find = |e: EdgeId| face.iter().copied().find(|&d| p.edge_id(d) == e);
    let dx = find(site.e_x).ok_or(MoveError::NotCofacial)?;
    let dy = find(site.e_y).ok_or(MoveError::NotCofacial)?;

    let mut w = Work::new(p);
    let names: [String; 2] = match names {
        Some(ns) => {
            for nm in ns {
                if w.name_taken(nm) {
                    return Err(MoveError::NameCollision(nm.to_string()));
                }
            }
            if ns[0] == ns[1] {
                return Err(MoveError::NameCollision(ns[0].to_string()));
            }
            ns.map(str::to_string)
        }
        None => {
            let a = w.fresh_name();
            let b = w.fresh_name();
            [a, b]
        }
    };
    let s = site.sign;
    if site.e_x == site.e_y {
        single_edge_clasp(&mut w, dx.0, s, kind, names);
        return w.finish().map_err(|e| MoveError::Stale(e.to_string()));
    }
    let pen = dx.0;
    let target = p.mate[pen];
    w.cut(pen);
    let steps = [dy.0, p.mate[dy.0]];
    let done = draw(w, pen, target, &steps, s, kind, &names).ok_or(MoveError::NotCofacial)?;
    done.finish().map_err(|e| MoveError::Stale(e.to_string()))
}

/// Loops the edge leaving `tail` over itself into the face on its left:
/// tail, x^s, y^s, a loop (y^s, y^-s), y^-s, x^-s, head.
fn single_edge_clasp(w: &mut Work, tail: usize, s: Pole, kind: Kind, names: [String; 2]) {
    let head = w.mate[tail];
    let [nx, ny] = names;
    let x = w.add_crossing(nx, kind);
    let y = w.add_crossing(ny, kind);
    let shift = if s == Pole::Plus { 0 } else { 1 };
    let at = |c: usize, role: usize| 4 * c + (role + shift) % 4;
    // roles at x: 0 toward y (s), 1 toward head (-s), 2 from tail (s), 3 toward y (-s)
    // roles at y: 0 loop (s), 1 loop (-s), 2 toward x (s), 3 toward x (-s)
    w.link_fresh(tail, at(x, 2));
    w.link_fresh(at(x, 0), at(y, 2));
    w.link_fresh(at(y, 0), at(y, 1));
    w.link_fresh(at(y, 3), at(x, 3));
    w.link_fresh(at(x, 1), head);
}

/// Draws the pen from stub `pen` across the pieces named by `steps` (slots
/// at which the crossed edges start) and closes it onto stub `target`.
/// When an edge has already been subdivided, every piece on the pen's face
/// is tried in order along the edge until the rest of the route fits.
pub(crate) fn draw(
    w: Work,
    pen: usize,
    target: usize,
    steps: &[usize],
    pen_pole: Pole,
    kind: Kind,
    names: &[String],
) -> Option<Work> {
    let mut w = w;
    if steps.is_empty() {
        let comp = w.component_labels();
        if w.same_face(pen, target) || comp[pen / 4] != comp[target / 4] {
            w.link_fresh(pen, target);
            return Some(w);
        }
        return None;
    }
    let candidates: Vec<usize> = w
        .chain(steps[0])
        .into_iter()
        .filter(|&d| !w.is_stub(d) && w.same_face(pen, d))
        .collect();
    let last = candidates.len().checked_sub(1)?;
    for (i, &d) in candidates.iter().enumerate() {
        let mut branch = if i == last { std::mem::replace(&mut w, empty_work()) } else { w.clone() };
        let next_pen = branch.cross(pen, d, pen_pole, kind, names[0].clone());
        if let Some(done) = draw(branch, next_pen, target, &steps[1..], pen_pole, kind, &names[1..]) {
            return Some(done);
        }
    }
    None
}

fn empty_work() -> Work {
    Work {
        names: vec![],
        kinds: vec![],
        alive: vec![],
        mate: vec![],
        eid: vec![],
        origin: Default::default(),
        crossed: Default::default(),
        fresh: crate::model::FreshNames {
            prefix: String::new(),
            next_name: 0,
            next_edge: 0,
        },
    }
}

/// Cut vertices whose removal leaves a side free of virtual crossings.
pub fn flip_sites(p: &LinkPresentation) -> Vec<FlipSite> {
    cut_vertices(p).into_iter().filter_map(|x| flip_site(p, x)).collect()
}

/// Cut vertices of the shadow, by one depth-first search over slots.
fn cut_vertices(p: &LinkPresentation) -> Vec<CrossingId> {
    let n = p.crossing_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut children = 0;
        // (crossing, slot it was entered by, next slot offset to try)
        let mut stack = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, entry, ref mut next)) = stack.last_mut() {
            if *next == 4 {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if u != root && low[v] >= disc[u] {
                        cut[u] = true;
                    }
                }
                continue;
            }
            let s = 4 * v + *next;
            *next += 1;
            let t = p.mate[s];
            let w = t / 4;
            if s == entry || w == v {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == root {
                    children += 1;
                }
                stack.push((w, t, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        }
        cut[root] = children > 1;
    }
    (0..n).filter(|&c| cut[c]).map(CrossingId).collect()
}

pub(crate) fn flip_site(p: &LinkPresentation, x: CrossingId) -> Option<FlipSite> {
    if !loop_slots(p, x).is_empty() {
        return None;
    }
    let n = p.crossing_count();
    let mut group = vec![usize::MAX; n];
    let mut sides: Vec<Vec<usize>> = Vec::new();
    for s in 4 * x.0..4 * x.0 + 4 {
        let start = p.mate[s] / 4;
        if group[start] != usize::MAX {
            continue;
        }
        let g = sides.len();
        group[start] = g;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let c = members[i];
            for t in 4 * c..4 * c + 4 {
                let o = p.mate[t] / 4;
                if o != x.0 && group[o] == usize::MAX {
                    group[o] = g;
                    members.push(o);
                }
            }
            i += 1;
        }
        sides.push(members);
    }
    if sides.len() != 2 {
        return None;
    }
    let all_classical = |side: &Vec<usize>| side.iter().all(|&c| p.crossings[c].kind == Kind::Classical);
    let mut order = [0, 1];
    order.sort_by_key(|&g| (sides[g].len(), std::cmp::Reverse(*sides[g].iter().min().unwrap())));
    let g = order.into_iter().find(|&g| all_classical(&sides[g]))?;
    let mut side: Vec<CrossingId> = sides[g].iter().map(|&c| CrossingId(c)).collect();
    side.sort();
    Some(FlipSite { x, side })
}

/// Removes a nugatory crossing by turning one side of it over.
pub fn apply_flip(p: &LinkPresentation, site: &FlipSite) -> Result<LinkPresentation, MoveError> {
    let current = flip_site(p, site.x).ok_or_else(|| MoveError::NotCut(p.name(site.x).to_string()))?;
    if current.side != site.side {
        return Err(MoveError::Stale("flip side changed".into()));
    }
    let mut flipped = vec![false; p.crossing_count()];
    for c in &site.side {
        flipped[c.0] = true;
    }
    let map = |s: usize| if flipped[s / 4] { (s & !3) | (3 - s % 4) } else { s };
    let mut q = p.clone();
    for s in 0..p.mate.len() {
        q.mate[map(s)] = map(p.mate[s]);
        q.edge[map(s)] = p.edge[s];
    }
    let mut w = Work::new(&q);
    let (runs, _) = w.excise(&[site.x.0]);
    for r in runs {
        w.link_fresh(r.ends[0], r.ends[1]);
    }
    w.finish().map_err(|e| MoveError::Stale(e.to_string()))
}
