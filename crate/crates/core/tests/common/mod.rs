#![allow(dead_code)]

use linkpres::corpus::*;
use linkpres::moves::{apply_omega1, apply_omega2, enumerate_sites};
use linkpres::{trace_faces, trace_strands, CrossingId, Kind, LinkPresentation, Pole};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn counts(p: &LinkPresentation) -> (usize, usize, usize) {
    (p.crossing_count(), p.edge_count(), trace_faces(p).len())
}

/// Clears kinks and clasps until none is left.
pub fn cleanup(mut p: LinkPresentation) -> LinkPresentation {
    loop {
        let s = enumerate_sites(&p);
        if let Some(k) = s.omega2.first() {
            p = apply_omega2(&p, k).unwrap();
        } else if let Some(c) = s.omega1.first() {
            p = apply_omega1(&p, c).unwrap();
        } else {
            return p;
        }
    }
}

/// Every bundled and generated fixture, named.
pub fn corpus() -> Vec<(String, LinkPresentation)> {
    let (l1, l2) = make_example31();
    let mut out = vec![
        ("trivial".to_string(), make_trivial(1)),
        ("trivial3".to_string(), make_trivial(3)),
        ("l1".to_string(), l1),
        ("l2".to_string(), l2),
        ("thistlethwaite".to_string(), make_thistlethwaite()),
        ("thistlethwaite_p1".to_string(), thistlethwaite_first_step()),
        ("trefoil".to_string(), make_trefoil()),
        ("virtual_trefoil".to_string(), make_virtual_trefoil()),
        ("virtual_kink".to_string(), make_virtual_kink()),
    ];
    for (i, p) in goeritz_steps().into_iter().enumerate() {
        out.push((format!("goeritz_p{}", i + 1), p));
    }
    for k in 0..=5 {
        for l in 0..=5 {
            out.push((format!("goeritz_{k}_{l}"), make_goeritz(k, l)));
        }
    }
    out
}

/// A random relabeling: crossings shuffled and renamed, edge ids remapped.
pub fn relabel(p: &LinkPresentation, rng: &mut ChaCha8Rng) -> LinkPresentation {
    let n = p.crossing_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut tags: Vec<usize> = (0..n).collect();
    tags.shuffle(rng);
    let names: Vec<String> = tags.iter().map(|t| format!("r{t}")).collect();
    let scale = rng.gen_range(1..5);
    let shift = rng.gen_range(0..1000);
    p.reindexed(&order)
        .renamed(&names)
        .unwrap()
        .with_edge_ids(move |e| e * scale + shift)
}

/// Knot determinant from Fox colourings: one arc per stretch of strand
/// between two under-passes, one relation `2 over - in - out` per crossing.
/// Plus poles are the over-strand. `None` for links and virtual diagrams.
pub fn determinant(p: &LinkPresentation) -> Option<u64> {
    if p.crossing_ids().any(|c| p.kind(c) == Kind::Virtual) {
        return None;
    }
    let strands = trace_strands(p);
    if strands.len() != 1 {
        return None;
    }
    let poles = &strands[0].poles;
    let l = poles.len();
    let first_under = poles.iter().position(|e| e.pole == Pole::Minus)?;
    let n = p.crossing_count();
    let mut over = vec![0; n];
    let mut ends = vec![(0, 0); n];
    let mut arc = 0;
    for i in 1..=l {
        let e = poles[(first_under + i) % l];
        match e.pole {
            Pole::Plus => over[e.crossing.0] = arc,
            Pole::Minus => {
                let next = if i == l { 0 } else { arc + 1 };
                ends[e.crossing.0] = (arc, next);
                arc = next;
            }
        }
    }
    let mut m = vec![vec![0i128; n]; n];
    for c in 0..n {
        m[c][over[c]] += 2;
        m[c][ends[c].0] -= 1;
        m[c][ends[c].1] -= 1;
    }
    let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    Some(bareiss(minor).unsigned_abs() as u64)
}

fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Names present in `q` but not in `p`.
pub fn new_crossings(p: &LinkPresentation, q: &LinkPresentation) -> Vec<CrossingId> {
    q.crossing_ids().filter(|&c| p.find(q.name(c)).is_none()).collect()
}
