//! Moves and pass replacement for diagrams with virtual crossings.

use crate::error::{MoveError, PassError};
use crate::model::{CrossingId, Kind, LinkPresentation, Pole};
use crate::moves::{
    check_virtual_clasp, clasp_sites_between, edges_between, flip_triangle, insert_clasp, remove_clasp, remove_kink, triangle_kinds, triangle_pattern,
    Omega0Site, Omega1Site, Omega2Site, TriangleSite,
};
use crate::pass::{adjacent_graph, check_virtual_pass, region_sides, reroute, strip, AdjacentGraph, Pass, Route};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UMove {
    /// Clasp insertion; both new crossings get `kind`.
    U0 { site: Omega0Site, kind: Kind },
    U1(Omega1Site),
    U2(Omega2Site),
    /// Triangle move on three classical or three virtual crossings.
    U3(TriangleSite),
    /// Triangle move carrying a virtual side across a classical crossing.
    U4(TriangleSite),
}

pub fn apply_u_move(p: &LinkPresentation, mv: &UMove) -> Result<LinkPresentation, MoveError> {
    match mv {
        UMove::U0 { site, kind } => insert_clasp(p, site, *kind, None),
        UMove::U1(site) => {
            let kinds = [site.x, site.y].map(|c| kind_of(p, c));
            match kinds {
                [Some(Kind::Classical), Some(Kind::Classical)] => crate::moves::apply_omega1(p, site),
                [Some(Kind::Virtual), Some(Kind::Virtual)] => {
                    check_virtual_clasp(p, site.x, site.y)?;
                    remove_clasp(p, site.x, site.y)
                }
                [Some(_), Some(_)] => Err(MoveError::Kind("clasp mixes classical and virtual".into())),
                _ => Err(MoveError::Stale("clasp crossings missing".into())),
            }
        }
        UMove::U2(site) => {
            kind_of(p, site.x).ok_or_else(|| MoveError::Stale("no such crossing".into()))?;
            remove_kink(p, site.x)
        }
        UMove::U3(site) => {
            let kinds = triangle_kinds(p, site)?;
            if kinds.iter().all(|&k| k == Kind::Virtual) {
                Ok(flip_triangle(p, site))
            } else if kinds.iter().all(|&k| k == Kind::Classical) {
                if triangle_pattern(p, site) {
                    Ok(flip_triangle(p, site))
                } else {
                    Err(MoveError::Pattern)
                }
            } else {
                Err(MoveError::Kind("mixed triangle".into()))
            }
        }
        UMove::U4(site) => {
            let kinds = triangle_kinds(p, site)?;
            if kinds.iter().filter(|&&k| k == Kind::Virtual).count() == 2 {
                Ok(flip_triangle(p, site))
            } else {
                Err(MoveError::Kind("needs two virtual crossings and one classical".into()))
            }
        }
    }
}

fn kind_of(p: &LinkPresentation, c: CrossingId) -> Option<Kind> {
    (c.0 < p.crossing_count()).then(|| p.kind(c))
}

/// Clasps removable by U1: classical with matching poles, or virtual.
pub fn u1_sites(p: &LinkPresentation) -> Vec<Omega1Site> {
    let mut out = Vec::new();
    for x in p.crossing_ids() {
        for y in crate::moves::later_neighbours(p, x) {
            let ok = match (p.kind(x), p.kind(y)) {
                (Kind::Classical, Kind::Classical) => clasp_sites_between(p, x, y).is_some(),
                (Kind::Virtual, Kind::Virtual) => check_virtual_clasp(p, x, y).is_ok(),
                _ => false,
            };
            if ok {
                let (e_plus, e_minus) = edges_between(p, x, y);
                out.push(Omega1Site { x, y, e_plus, e_minus });
            }
        }
    }
    out
}

/// Kinks removable by U2, any kind.
pub fn u2_sites(p: &LinkPresentation) -> Vec<Omega2Site> {
    crate::moves::kink_sites(p)
}

/// Triangles admitting U3 or U4.
pub fn triangle_moves(p: &LinkPresentation) -> Vec<UMove> {
    crate::moves::triangle_faces(p)
        .into_iter()
        .filter_map(|t| {
            let v = t.crossings.iter().filter(|&&c| p.kind(c) == Kind::Virtual).count();
            match v {
                3 => Some(UMove::U3(t)),
                0 if triangle_pattern(p, &t) => Some(UMove::U3(t)),
                2 => Some(UMove::U4(t)),
                _ => None,
            }
        })
        .collect()
}

/// Replaces a pass in a virtual diagram. A virtual interior is rerouted
/// as a detour of virtual crossings anywhere; a classical interior keeps
/// its pole and needs one side of the closed curve formed by the old and
/// new pass to hold no virtual crossing.
pub fn apply_virtual_pass_replacement(
    p: &LinkPresentation,
    pass: &Pass,
    route: &Route,
    new_kind: Kind,
) -> Result<LinkPresentation, PassError> {
    check_virtual_pass(p, pass)?;
    let g = adjacent_graph(strip(p, pass)?);
    match (pass.is_virtual(p), new_kind) {
        (true, Kind::Virtual) => reroute(&g, route, Pole::Plus, Kind::Virtual).map(|r| r.0),
        (false, Kind::Classical) => {
            g.check_route(route)?;
            if !region_allows_classical(&g, route) {
                return Err(PassError::Kind("the rerouting region holds a virtual crossing on both sides".into()));
            }
            reroute(&g, route, pass.sign(), Kind::Classical).map(|r| r.0)
        }
        (true, Kind::Classical) => Err(PassError::Kind("a virtual pass is rerouted by virtual crossings".into())),
        (false, Kind::Virtual) => Err(PassError::Kind("a classical pass is rerouted by classical crossings".into())),
    }
}

/// On the sphere either side of the closed curve may be taken as its
/// inside, so a classical reroute is allowed when one side is free of
/// virtual crossings. Virtual crossings in other components count against
/// both sides.
pub(crate) fn region_allows_classical(g: &AdjacentGraph, route: &Route) -> bool {
    let sides = region_sides(g, route);
    let w = &g.stripped.work;
    let mut virtual_on = [false, false];
    for (c, side) in sides.iter().enumerate() {
        if !w.alive[c] || w.kinds[c] != Kind::Virtual {
            continue;
        }
        match side {
            Some(s) => virtual_on[*s as usize] = true,
            None => return false,
        }
    }
    !(virtual_on[0] && virtual_on[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::corpus::{make_trivial, make_virtual_kink, make_virtual_trefoil};
    use crate::model::{trace_faces, validate};
    use crate::pass::{build_adjacent_graph, find_virtual_maximal_passes, shortest_route};

    #[test]
    fn virtual_clasp_inserts_and_removes() {
        let o = make_trivial(1);
        let face = trace_faces(&o).into_iter().find(|f| f.len() == 2).unwrap();
        let ids = face.edges(&o);
        let site = Omega0Site {
            e_x: ids[0],
            e_y: ids[1],
            shared_face: face,
            sign: Pole::Minus,
        };
        let q = apply_u_move(
            &o,
            &UMove::U0 {
                site,
                kind: Kind::Virtual,
            },
        )
        .unwrap();
        assert_eq!(q.virtual_count(), 2);
        let back = u1_sites(&q)
            .into_iter()
            .map(|s| apply_u_move(&q, &UMove::U1(s)).unwrap())
            .any(|r| is_isomorphic(&r, &o));
        assert!(back);
    }

    #[test]
    fn virtual_kink_unwinds() {
        let p = make_virtual_kink();
        assert!(validate(&p).is_valid());
        let mut q = p;
        while let Some(s) = u2_sites(&q).first().cloned() {
            q = apply_u_move(&q, &UMove::U2(s)).unwrap();
        }
        assert_eq!(q.crossing_count(), 1);
        assert!(crate::reduce::is_unlink(&q));
    }

    #[test]
    fn mixed_clasp_is_refused() {
        let v = make_virtual_trefoil();
        let c = v.crossing_ids().find(|&c| v.kind(c) == Kind::Virtual).unwrap();
        let a = v.crossing_ids().find(|&c| v.kind(c) == Kind::Classical).unwrap();
        let site = Omega1Site {
            x: a,
            y: c,
            e_plus: 0,
            e_minus: 0,
        };
        assert!(matches!(apply_u_move(&v, &UMove::U1(site)), Err(MoveError::Kind(_))));
    }

    #[test]
    fn virtual_pass_keeps_its_kind() {
        let v = make_virtual_trefoil();
        for pass in find_virtual_maximal_passes(&v) {
            let g = build_adjacent_graph(&v, &pass).unwrap();
            let route = shortest_route(&g).unwrap();
            let wrong = if pass.is_virtual(&v) { Kind::Classical } else { Kind::Virtual };
            assert!(matches!(
                apply_virtual_pass_replacement(&v, &pass, &route, wrong),
                Err(PassError::Kind(_))
            ));
        }
    }
}
