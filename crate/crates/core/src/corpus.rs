//! Fixture diagrams, scripted replacement sequences, and random diagrams
//! of the unknot for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::build::{RawPresentation, RawSlot};
use crate::error::PassError;
use crate::io::parse;
use crate::model::{trace_faces, EdgeId, EndRef, Kind, LinkPresentation, Pole};
use crate::moves::{insert_clasp, Omega0Site};
use crate::pass::{
    adjacent_graph, build_adjacent_graph, check_classical_pass, check_virtual_pass, find_maximal_passes,
    find_virtual_maximal_passes, reroute, strip, AdjacentGraph, Arc, Pass, Route,
};

const L1: &str = include_str!("../corpus/v1/l1.lp");
const L2: &str = include_str!("../corpus/v1/l2.lp");
const THISTLETHWAITE: &str = include_str!("../corpus/v1/thistlethwaite.lp");
const THISTLETHWAITE_P1: &str = include_str!("../corpus/v1/thistlethwaite_p1.lp");
const GOERITZ: &str = include_str!("../corpus/v1/goeritz_0_0.lp");
const GOERITZ_STEPS: [&str; 4] = [
    include_str!("../corpus/v1/goeritz_p1.lp"),
    include_str!("../corpus/v1/goeritz_p2.lp"),
    include_str!("../corpus/v1/goeritz_p3.lp"),
    include_str!("../corpus/v1/goeritz_p4.lp"),
];

fn bundled(text: &str) -> LinkPresentation {
    parse(text).expect("bundled fixture parses")
}

/// `components` disjoint one-crossing circles.
pub fn make_trivial(components: usize) -> LinkPresentation {
    assert!(components > 0, "at least one component");
    let mut raw = RawPresentation::default();
    for i in 0..components {
        let name = if components == 1 { "o".to_string() } else { format!("o{}", i + 1) };
        let (a, b) = (2 * i as EdgeId + 1, 2 * i as EdgeId + 2);
        raw.crossing(&name, Kind::Classical)
            .edge(a, (&name, Pole::Plus), (&name, Pole::Minus))
            .edge(b, (&name, Pole::Plus), (&name, Pole::Minus));
        let slot = |e, p| RawSlot { edge: e, pole: Some(p) };
        raw.rotation(
            &name,
            &[slot(a, Pole::Plus), slot(a, Pole::Minus), slot(b, Pole::Plus), slot(b, Pole::Minus)],
        );
    }
    raw.build().expect("trivial link is valid")
}

/// The two six-crossing knots that share every rotation but three.
pub fn make_example31() -> (LinkPresentation, LinkPresentation) {
    (bundled(L1), bundled(L2))
}

pub fn make_thistlethwaite() -> LinkPresentation {
    bundled(THISTLETHWAITE)
}

/// The reference result of the first replacement on Thistlethwaite's unknot.
pub fn thistlethwaite_first_step() -> LinkPresentation {
    bundled(THISTLETHWAITE_P1)
}

/// Goeritz's unknot with twist chains of lengths `2k` and `2l`. The
/// untwisted member comes from the bundled table, the others from the
/// family construction.
pub fn make_goeritz(k: usize, l: usize) -> LinkPresentation {
    if k == 0 && l == 0 {
        bundled(GOERITZ)
    } else {
        goeritz_family(k, l)
    }
}

/// The reference diagrams after each scripted step on Goeritz's unknot.
pub fn goeritz_steps() -> Vec<LinkPresentation> {
    GOERITZ_STEPS.iter().map(|t| bundled(t)).collect()
}

/// The family construction, including its untwisted member.
pub fn goeritz_family(k: usize, l: usize) -> LinkPresentation {
    use Pole::{Minus as M, Plus as P};
    let mut raw = RawPresentation::default();
    let mut next_id: EdgeId = 23;
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };
    // shared edges
    let fixed: [(EdgeId, (&str, Pole), (&str, Pole)); 16] = [
        (1, ("a1", P), ("a2", P)),
        (2, ("a1", M), ("a11", P)),
        (3, ("a1", P), ("a11", M)),
        (4, ("a1", M), ("a8", P)),
        (5, ("a2", M), ("a3", P)),
        (6, ("a2", P), ("a3", M)),
        (7, ("a2", M), ("a9", M)),
        (8, ("a3", M), ("a4", P)),
        (9, ("a3", P), ("a6", M)),
        (10, ("a4", P), ("a5", M)),
        (11, ("a4", M), ("a5", P)),
        (12, ("a4", M), ("a7", M)),
        (15, ("a6", P), ("a7", P)),
        (16, ("a7", P), ("a8", M)),
        (17, ("a7", M), ("a8", P)),
        (18, ("a9", P), ("a8", M)),
    ];
    for i in 1..=11 {
        raw.crossing(&format!("a{i}"), Kind::Classical);
    }
    for (id, a, b) in fixed {
        raw.edge(id, a, b);
    }
    raw.edge(19, ("a9", M), ("a10", P)).edge(20, ("a9", P), ("a10", M));

    // b chain: (plus edge, minus edge) between consecutive members
    let bs: Vec<String> = (1..=2 * k).map(|i| format!("b{i}")).collect();
    let b_edges: Vec<(EdgeId, EdgeId)> = if k == 0 {
        raw.edge(13, ("a5", M), ("a6", P)).edge(14, ("a5", P), ("a6", M));
        vec![(13, 14)]
    } else {
        let ids: Vec<(EdgeId, EdgeId)> = (0..=2 * k).map(|_| (fresh(), fresh())).collect();
        for (i, &(e, em)) in ids.iter().enumerate() {
            let (from, to) = match i {
                0 => (("a5", M, P), (bs[0].as_str(), P, M)),
                i if i == 2 * k => ((bs[i - 1].as_str(), M, P), ("a6", P, M)),
                i => ((bs[i - 1].as_str(), M, P), (bs[i].as_str(), P, M)),
            };
            raw.edge(e, (from.0, from.1), (to.0, to.1));
            raw.edge(em, (from.0, from.2), (to.0, to.2));
        }
        ids
    };
    let cs: Vec<String> = (1..=2 * l).map(|j| format!("c{j}")).collect();
    let c_edges: Vec<(EdgeId, EdgeId)> = if l == 0 {
        raw.edge(22, ("a10", M), ("a11", P)).edge(21, ("a10", P), ("a11", M));
        vec![(22, 21)]
    } else {
        let ids: Vec<(EdgeId, EdgeId)> = (0..=2 * l).map(|_| (fresh(), fresh())).collect();
        for (j, &(e, em)) in ids.iter().enumerate() {
            let (from, to) = match j {
                0 => (("a10", M, P), (cs[0].as_str(), P, M)),
                j if j == 2 * l => ((cs[j - 1].as_str(), M, P), ("a11", P, M)),
                j => ((cs[j - 1].as_str(), M, P), (cs[j].as_str(), P, M)),
            };
            raw.edge(e, (from.0, from.1), (to.0, to.1));
            raw.edge(em, (from.0, from.2), (to.0, to.2));
        }
        ids
    };
    let (b_first, b_last) = (b_edges[0], b_edges[b_edges.len() - 1]);
    let (c_first, c_last) = (c_edges[0], c_edges[c_edges.len() - 1]);
    let s = |ids: &[EdgeId]| ids.iter().map(|&e| RawSlot::new(e)).collect::<Vec<_>>();
    raw.rotation("a1", &s(&[1, 4, 3, 2]))
        .rotation("a2", &s(&[1, 7, 6, 5]))
        .rotation("a3", &s(&[5, 6, 9, 8]))
        .rotation("a4", &s(&[8, 11, 10, 12]))
        .rotation("a5", &s(&[11, b_first.0, b_first.1, 10]))
        .rotation("a6", &s(&[b_last.0, 9, 15, b_last.1]))
        .rotation("a7", &s(&[15, 17, 16, 12]))
        .rotation("a8", &s(&[17, 18, 4, 16]))
        .rotation("a9", &s(&[18, 7, 20, 19]))
        .rotation("a10", &s(&[c_first.1, c_first.0, 19, 20]))
        .rotation("a11", &s(&[c_last.0, c_last.1, 2, 3]));
    for (i, name) in bs.iter().enumerate() {
        raw.crossing(name, Kind::Classical);
        let (e, em) = b_edges[i];
        let (f, fm) = b_edges[i + 1];
        raw.rotation(name, &s(&[e, f, fm, em]));
    }
    for (j, name) in cs.iter().enumerate() {
        raw.crossing(name, Kind::Classical);
        let (e, em) = c_edges[j];
        let (f, fm) = c_edges[j + 1];
        raw.rotation(name, &s(&[em, fm, f, e]));
    }
    raw.build().expect("family member is valid")
}

/// The standard three-crossing trefoil.
pub fn make_trefoil() -> LinkPresentation {
    trefoil_with(Kind::Classical)
}

/// The trefoil shadow with one crossing made virtual: the virtual trefoil.
pub fn make_virtual_trefoil() -> LinkPresentation {
    trefoil_with(Kind::Virtual)
}

fn trefoil_with(c_kind: Kind) -> LinkPresentation {
    use Pole::{Minus as M, Plus as P};
    let mut raw = RawPresentation::default();
    raw.crossing("a", Kind::Classical)
        .crossing("b", Kind::Classical)
        .crossing("c", c_kind)
        .edge(1, ("a", P), ("b", M))
        .edge(2, ("b", M), ("c", P))
        .edge(3, ("c", P), ("a", M))
        .edge(4, ("a", M), ("b", P))
        .edge(5, ("b", P), ("c", M))
        .edge(6, ("c", M), ("a", P));
    let s = |ids: [EdgeId; 4]| ids.map(RawSlot::new);
    raw.rotation("a", &s([1, 3, 6, 4]))
        .rotation("b", &s([4, 2, 5, 1]))
        .rotation("c", &s([2, 6, 3, 5]));
    raw.build().expect("trefoil is valid")
}

/// The trivial knot with a virtual clasp pushed into one of its edges.
pub fn make_virtual_kink() -> LinkPresentation {
    let o = make_trivial(1);
    let face = trace_faces(&o).into_iter().find(|f| f.len() == 1).expect("monogon");
    let e = face.edges(&o)[0];
    let site = Omega0Site {
        e_x: e,
        e_y: e,
        shared_face: face,
        sign: Pole::Plus,
    };
    insert_clasp(&o, &site, Kind::Virtual, None).expect("clasp on a monogon")
}

/// A pass replacement as read off a worked example: the pass endpoints
/// and, in order, the end pairs of the edges its new route crosses.
#[derive(Clone, Copy, Debug)]
pub struct ScriptedReplacement {
    pub start: &'static str,
    pub end: &'static str,
    pub crossed: &'static [(&'static str, &'static str)],
}

pub const GOERITZ_SCRIPT: [ScriptedReplacement; 4] = [
    ScriptedReplacement {
        start: "a11-",
        end: "a3-",
        crossed: &[("a9+", "a8-")],
    },
    ScriptedReplacement {
        start: "a8+",
        end: "a5+",
        crossed: &[("a3+", "a6-")],
    },
    ScriptedReplacement {
        start: "a6-",
        end: "a9-",
        crossed: &[("a6+", "a8-")],
    },
    ScriptedReplacement {
        start: "a6+",
        end: "a9+",
        crossed: &[],
    },
];

pub const THISTLETHWAITE_SCRIPT: [ScriptedReplacement; 5] = [
    ScriptedReplacement {
        start: "a13+",
        end: "a15+",
        crossed: &[("a11+", "a13-"), ("a5+", "a6-"), ("a5-", "a12+")],
    },
    ScriptedReplacement {
        start: "a8+",
        end: "a18+",
        crossed: &[("a1-", "a6+"), ("a17-", "a18-")],
    },
    ScriptedReplacement {
        start: "a1-",
        end: "a16-",
        crossed: &[("a2-", "a8-")],
    },
    ScriptedReplacement {
        start: "a15+",
        end: "a7+",
        crossed: &[("a3+", "a15-"), ("a17-", "a20+")],
    },
    ScriptedReplacement {
        start: "a23-",
        end: "a15-",
        crossed: &[("a20+", "a23+")],
    },
];

/// Every presentation the scripted step can produce: the pass is matched
/// by its endpoints in either direction, each crossed pair may name any
/// parallel edge, and only routes that pass face to face are kept.
pub fn apply_scripted(p: &LinkPresentation, step: &ScriptedReplacement) -> Result<Vec<LinkPresentation>, PassError> {
    let end = |s: &str| p.parse_end(s).ok_or_else(|| PassError::Stale(format!("no end {s}")));
    let (a, b) = (end(step.start)?, end(step.end)?);
    let mut pairs = Vec::new();
    for &(u, v) in step.crossed {
        pairs.push((end(u)?, end(v)?));
    }
    let mut out = Vec::new();
    for pass in find_maximal_passes(p) {
        let order: Vec<(EndRef, EndRef)> = if (pass.start, pass.end) == (a, b) {
            pairs.clone()
        } else if (pass.start, pass.end) == (b, a) {
            pairs.iter().rev().copied().collect()
        } else {
            continue;
        };
        let g = build_adjacent_graph(p, &pass)?;
        for route in g.routes_crossing(&order) {
            if let Ok((q, _)) = reroute(&g, &route, pass.sign(), Kind::Classical) {
                out.push(q);
            }
        }
    }
    if out.is_empty() {
        return Err(PassError::RouteMismatch);
    }
    Ok(out)
}

/// A diagram of the unknot built from the trivial knot by `ops` random
/// clasp insertions and lengthening pass replacements.
pub fn random_presentation(seed: u64, ops: usize) -> LinkPresentation {
    random_diagram(seed, ops, false)
}

/// As [`random_presentation`], also inserting virtual clasps and detours.
pub fn random_virtual_presentation(seed: u64, ops: usize) -> LinkPresentation {
    random_diagram(seed, ops, true)
}

fn random_diagram(seed: u64, ops: usize, with_virtual: bool) -> LinkPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = make_trivial(1);
    let mut done = 0;
    let mut attempts = 0;
    while done < ops && attempts < 20 * ops + 20 {
        attempts += 1;
        let next = if rng.gen_bool(0.6) {
            random_clasp(&p, &mut rng, with_virtual)
        } else {
            random_lengthening(&p, &mut rng, with_virtual)
        };
        if let Some(q) = next {
            p = q;
            done += 1;
        }
    }
    p
}

fn random_clasp(p: &LinkPresentation, rng: &mut ChaCha8Rng, with_virtual: bool) -> Option<LinkPresentation> {
    let faces = trace_faces(p);
    let face = faces.choose(rng)?.clone();
    let edges = face.edges(p);
    let e_x = *edges.choose(rng)?;
    let e_y = *edges.choose(rng)?;
    let sign = if rng.gen_bool(0.5) { Pole::Plus } else { Pole::Minus };
    let kind = if with_virtual && rng.gen_bool(0.4) { Kind::Virtual } else { Kind::Classical };
    let site = Omega0Site {
        e_x,
        e_y,
        shared_face: face,
        sign,
    };
    insert_clasp(p, &site, kind, None).ok()
}

fn random_lengthening(p: &LinkPresentation, rng: &mut ChaCha8Rng, with_virtual: bool) -> Option<LinkPresentation> {
    let passes = if with_virtual { find_virtual_maximal_passes(p) } else { find_maximal_passes(p) };
    let pass = passes.choose(rng)?.clone();
    let g = adjacent_graph(strip(p, &pass).ok()?);
    let route = wander(&g, rng)?;
    random_reroute(p, &pass, &g, &route, with_virtual).ok()
}

fn random_reroute(
    p: &LinkPresentation,
    pass: &Pass,
    g: &AdjacentGraph,
    route: &Route,
    with_virtual: bool,
) -> Result<LinkPresentation, PassError> {
    if pass.is_virtual(p) {
        check_virtual_pass(p, pass)?;
        return reroute(g, route, Pole::Plus, Kind::Virtual).map(|r| r.0);
    }
    check_classical_pass(p, pass)?;
    if with_virtual && !crate::virtual_link::region_allows_classical(g, route) {
        return Err(PassError::Kind("region holds virtual crossings".into()));
    }
    reroute(g, route, pass.sign(), Kind::Classical).map(|r| r.0)
}

/// A few random steps through the dual, then a shortest way to the end.
fn wander(g: &AdjacentGraph, rng: &mut ChaCha8Rng) -> Option<Route> {
    if g.is_separated() {
        return Some(g.route_of(&[]));
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut f = g.f_x();
    for _ in 0..rng.gen_range(0..4) {
        let out: Vec<&Arc> = g.arcs().iter().filter(|a| a.from == f).collect();
        let a = **out.choose(rng)?;
        arcs.push(a);
        f = a.to;
    }
    while f != g.f_y() {
        let here = g.remaining(f);
        let out: Vec<&Arc> = g.arcs().iter().filter(|a| a.from == f && g.remaining(a.to) + 1 == here).collect();
        let a = **out.choose(rng)?;
        arcs.push(a);
        f = a.to;
    }
    Some(g.route_of(&arcs))
}
