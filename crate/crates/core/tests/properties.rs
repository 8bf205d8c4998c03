mod common;

use common::{new_crossings, relabel};
use linkpres::corpus::{random_presentation, random_virtual_presentation};
use linkpres::moves::*;
use linkpres::pass::{apply_pass_replacement, build_adjacent_graph, find_maximal_passes, shortest_route};
use linkpres::virtual_link::{apply_u_move, triangle_moves, u1_sites, UMove};
use linkpres::{
    canonical_code, is_isomorphic, predecessor, successor, trace_faces, trace_strands, validate, CrossingId, Kind,
    LinkPresentation, Pole,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagram() -> impl Strategy<Value = LinkPresentation> {
    (any::<u64>(), 0usize..10).prop_map(|(seed, ops)| random_presentation(seed, ops))
}

fn virtual_diagram() -> impl Strategy<Value = LinkPresentation> {
    (any::<u64>(), 1usize..10).prop_map(|(seed, ops)| random_virtual_presentation(seed, ops))
}

fn face_lengths_away_from(p: &LinkPresentation, avoid: &[String]) -> Vec<usize> {
    let mut out: Vec<usize> = trace_faces(p)
        .iter()
        .filter(|f| f.darts.iter().all(|d| !avoid.iter().any(|n| n == p.name(d.crossing()))))
        .map(|f| f.len())
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counting_identities(p in diagram()) {
        prop_assert!(validate(&p).is_valid());
        let faces = trace_faces(&p);
        prop_assert_eq!(faces.iter().map(|f| f.len()).sum::<usize>(), 2 * p.edge_count());
        prop_assert_eq!(trace_strands(&p).iter().map(|s| s.len()).sum::<usize>(), 2 * p.crossing_count());
        for comp in p.components() {
            let v = comp.len();
            let f = faces.iter().filter(|f| comp.contains(&f.darts[0].crossing())).count();
            prop_assert_eq!(v as i64 - (2 * v) as i64 + f as i64, 2);
        }
    }

    #[test]
    fn successor_closes_the_strand(p in diagram()) {
        for s in trace_strands(&p) {
            for &e in &s.poles {
                prop_assert_eq!(successor(&p, e, s.len()), e);
                prop_assert_eq!(predecessor(&p, successor(&p, e, 3), 3), e);
            }
        }
    }

    #[test]
    fn code_survives_relabeling(p in diagram(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = relabel(&p, &mut rng);
        prop_assert_eq!(canonical_code(&p), canonical_code(&q));
    }

    #[test]
    fn clasp_then_unclasp_is_identity(p in diagram(), pick in any::<prop::sample::Index>(), plus in any::<bool>()) {
        let sign = if plus { Pole::Plus } else { Pole::Minus };
        let sites: Vec<_> = omega0_sites(&p, sign).into_iter().filter(|s| s.e_x != s.e_y).collect();
        prop_assume!(!sites.is_empty());
        let site = pick.get(&sites);
        let q = apply_omega0(&p, site).unwrap();
        prop_assert!(validate(&q).is_valid());
        prop_assert_eq!(q.crossing_count(), p.crossing_count() + 2);
        let fresh = new_crossings(&p, &q);
        let undo = enumerate_sites(&q).omega1.into_iter().find(|s| fresh.contains(&s.x) && fresh.contains(&s.y));
        let back = apply_omega1(&q, &undo.expect("the new clasp")).unwrap();
        prop_assert!(is_isomorphic(&back, &p));
    }

    #[test]
    fn single_edge_clasp_unwinds_by_kinks(p in diagram(), pick in any::<prop::sample::Index>()) {
        let sites: Vec<_> = omega0_sites(&p, Pole::Plus).into_iter().filter(|s| s.e_x == s.e_y).collect();
        let q = apply_omega0(&p, pick.get(&sites)).unwrap();
        prop_assert_eq!(q.crossing_count(), p.crossing_count() + 2);
        let mut r = q.clone();
        for _ in 0..2 {
            let fresh = new_crossings(&p, &r);
            let kink = enumerate_sites(&r).omega2.into_iter().find(|s| fresh.contains(&s.x)).expect("a new kink");
            r = apply_omega2(&r, &kink).unwrap();
        }
        prop_assert!(is_isomorphic(&r, &p));
    }

    #[test]
    fn local_moves_validate_and_count(p in diagram()) {
        let n = p.crossing_count();
        let sites = enumerate_sites(&p);
        for s in &sites.omega1 {
            let q = apply_omega1(&p, s).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.crossing_count() + 2, n);
        }
        for s in &sites.omega2 {
            let q = apply_omega2(&p, s).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.crossing_count() + 1, n);
        }
        for s in &sites.triangles {
            let q = apply_omega3(&p, s).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.crossing_count(), n);
            let names: Vec<String> = s.crossings.iter().map(|&c| p.name(c).to_string()).collect();
            prop_assert_eq!(face_lengths_away_from(&p, &names), face_lengths_away_from(&q, &names));
        }
        for s in flip_sites(&p) {
            let q = apply_flip(&p, &s).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.crossing_count() + 1, n);
        }
    }

    #[test]
    fn pass_replacement_counts(p in diagram()) {
        let n = p.crossing_count();
        let strands = trace_strands(&p).len();
        for pass in find_maximal_passes(&p) {
            let g = build_adjacent_graph(&p, &pass).unwrap();
            let Ok(route) = shortest_route(&g) else { continue };
            let q = apply_pass_replacement(&p, &pass, &route).unwrap();
            prop_assert!(validate(&q).is_valid());
            let spawned = trace_strands(&q).len() - strands;
            prop_assert_eq!(q.crossing_count(), n - pass.len() + route.len() + spawned);
            if route.len() == pass.len() && spawned == 0 {
                prop_assert_eq!(q.edge_count(), p.edge_count());
                prop_assert_eq!(trace_faces(&q).len(), trace_faces(&p).len());
            }
        }
    }

    #[test]
    fn classical_u_moves_agree_with_omega(p in diagram()) {
        let sites = enumerate_sites(&p);
        for s in &sites.omega1 {
            let a = apply_omega1(&p, s).unwrap();
            let b = apply_u_move(&p, &UMove::U1(s.clone())).unwrap();
            prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        }
        for s in &sites.omega2 {
            let a = apply_omega2(&p, s).unwrap();
            let b = apply_u_move(&p, &UMove::U2(s.clone())).unwrap();
            prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        }
        for s in &sites.triangles {
            let a = apply_omega3(&p, s).unwrap();
            let b = apply_u_move(&p, &UMove::U3(s.clone())).unwrap();
            prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        }
        if let Some(site) = omega0_sites(&p, Pole::Minus).into_iter().last() {
            let a = apply_omega0(&p, &site).unwrap();
            let b = apply_u_move(&p, &UMove::U0 { site, kind: Kind::Classical }).unwrap();
            prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        }
    }

    #[test]
    fn virtual_moves_keep_kinds(p in virtual_diagram(), pick in any::<prop::sample::Index>()) {
        let v = p.virtual_count();
        let sites: Vec<_> = omega0_sites(&p, Pole::Plus).into_iter().filter(|s| s.e_x != s.e_y).collect();
        if !sites.is_empty() {
            let site = pick.get(&sites).clone();
            let q = apply_u_move(&p, &UMove::U0 { site, kind: Kind::Virtual }).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.virtual_count(), v + 2);
            let fresh = new_crossings(&p, &q);
            let undo = u1_sites(&q).into_iter().find(|s| fresh.contains(&s.x) && fresh.contains(&s.y));
            let back = apply_u_move(&q, &UMove::U1(undo.expect("the new clasp"))).unwrap();
            prop_assert!(is_isomorphic(&back, &p));
        }
        for s in u1_sites(&p) {
            let kind = p.kind(s.x);
            let q = apply_u_move(&p, &UMove::U1(s)).unwrap();
            prop_assert!(validate(&q).is_valid());
            let dv = if kind == Kind::Virtual { 2 } else { 0 };
            prop_assert_eq!(q.virtual_count() + dv, v);
        }
        for mv in triangle_moves(&p) {
            let q = apply_u_move(&p, &mv).unwrap();
            prop_assert!(validate(&q).is_valid());
            prop_assert_eq!(q.virtual_count(), v);
            prop_assert_eq!(q.crossing_count(), p.crossing_count());
        }
    }

    #[test]
    fn virtual_pole_swap_is_an_isomorphism(p in virtual_diagram()) {
        for c in p.crossing_ids().filter(|&c| p.kind(c) == Kind::Virtual) {
            prop_assert!(is_isomorphic(&p, &p.with_poles_swapped(c)));
        }
    }

    #[test]
    fn classical_pole_swap_stays_valid(seed in 0u64..64) {
        let p = random_presentation(seed, 6);
        prop_assume!(p.crossing_count() > 1);
        let c = CrossingId(0);
        let q = p.with_poles_swapped(c);
        prop_assert!(validate(&q).is_valid());
    }
}
