//! The crossing-reduction search: clear kinks, nugatory crossings and
//! clasps, then replace maximal passes by shorter routes, allowing a
//! budget of equal-length replacements to escape plateaus.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_code, code8};
use crate::error::TraceError;
use crate::model::{trace_strands, CrossingId, EdgeId, Kind, LinkPresentation};
use crate::moves::{apply_flip, apply_omega1, apply_omega2, enumerate_sites, flip_sites};
use crate::pass::{
    adjacent_graph, check_classical_pass, check_virtual_pass, find_maximal_passes, find_virtual_maximal_passes,
    reroute, shortest_route, strip, AdjacentGraph, Pass, Route, RouteStep,
};
use crate::virtual_link::{apply_u_move, region_allows_classical, u1_sites, u2_sites, UMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PassOrder {
    /// Longest interior first, ties broken by the smaller start crossing.
    #[default]
    LongestFirst,
    /// Strand order as the passes are found.
    Strand,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReduceConfig {
    /// Equal replacements allowed; `None` means ten times the square of
    /// the starting crossing count.
    pub budget: Option<usize>,
    pub pass_order: PassOrder,
    /// Picks among unvisited equal replacements.
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Every component is a single crossing closed by two loops.
    Unlink,
    /// Stuck with a disconnected shadow.
    Splitting,
    /// Stuck at an alternating diagram with no kinks, clasps or nugatory
    /// crossings.
    Alternating,
    /// Stuck after spending the equal-replacement budget, or with no
    /// unvisited equal replacement left.
    BudgetExhausted,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Unlink => "unlink",
            Outcome::Splitting => "splitting",
            Outcome::Alternating => "alternating",
            Outcome::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveOp {
    Omega2 { x: String },
    Omega1 { x: String, y: String },
    Flip { x: String },
    /// Kink removal at a crossing of either kind.
    U2 { x: String },
    /// Clasp removal on two classical or two virtual crossings.
    U1 { x: String, y: String },
    /// Pass replacement located by its end labels; the route is given by
    /// the crossed edges of the stripped shadow and the end each is left from.
    Pass {
        start: String,
        end: String,
        k: usize,
        route: Vec<(EdgeId, String)>,
    },
    /// As `Pass`, for the virtual algorithm.
    VirtualPass {
        start: String,
        end: String,
        k: usize,
        route: Vec<(EdgeId, String)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub seq: usize,
    pub op: MoveOp,
    pub n_after: usize,
    pub code8: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReduceStats {
    pub initial_crossings: usize,
    pub omega1: usize,
    pub omega2: usize,
    pub flips: usize,
    pub short: usize,
    pub equal: usize,
    pub budget: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub outcome: Outcome,
    pub presentation: LinkPresentation,
    pub trace: Vec<MoveRecord>,
    pub stats: ReduceStats,
    pub elapsed: Duration,
}

/// Reduces `p`, using the virtual moves and passes when it has virtual
/// crossings.
pub fn reduce(p: &LinkPresentation, config: &ReduceConfig) -> ReductionReport {
    let started = Instant::now();
    let n = p.crossing_count();
    let budget = config.budget.unwrap_or(10 * n * n);
    let is_virtual = !p.is_classical();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cur = p.clone();
    let mut trace = Vec::new();
    let mut stats = ReduceStats {
        initial_crossings: n,
        budget,
        ..Default::default()
    };
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(canonical_code(&cur));

    let record = |trace: &mut Vec<MoveRecord>, seen: &mut HashSet<Vec<u8>>, op: MoveOp, q: &LinkPresentation| {
        let code = canonical_code(q);
        trace.push(MoveRecord {
            seq: trace.len() + 1,
            op,
            n_after: q.crossing_count(),
            code8: code8(&code),
        });
        seen.insert(code);
    };

    loop {
        if let Some((op, q)) = local_move(&cur, is_virtual) {
            match op {
                MoveOp::Omega2 { .. } | MoveOp::U2 { .. } => stats.omega2 += 1,
                MoveOp::Omega1 { .. } | MoveOp::U1 { .. } => stats.omega1 += 1,
                _ => stats.flips += 1,
            }
            record(&mut trace, &mut seen, op, &q);
            cur = q;
            continue;
        }
        if is_unlink(&cur) || (!is_virtual && is_alternating(&cur)) {
            break;
        }
        // plan passes one by one and stop at the first short replacement
        let mut equal = Vec::new();
        let mut short = None;
        for pass in ordered_passes(&cur, is_virtual, config.pass_order) {
            let Some(c) = plan(&cur, pass, is_virtual) else { continue };
            if c.m < c.k {
                if let Some(q) = c.realize(&cur, is_virtual) {
                    short = Some((c, q));
                    break;
                }
            } else if c.m == c.k {
                equal.push(c);
            }
        }
        if let Some((c, q)) = short {
            stats.short += 1;
            record(&mut trace, &mut seen, c.op(&cur, is_virtual), &q);
            cur = q;
            continue;
        }
        if stats.equal >= budget {
            break;
        }
        let fresh: Vec<(Candidate, LinkPresentation, Vec<u8>)> = equal
            .into_iter()
            .filter_map(|c| {
                let q = c.realize(&cur, is_virtual)?;
                let code = canonical_code(&q);
                (!seen.contains(&code)).then_some((c, q, code))
            })
            .collect();
        if fresh.is_empty() {
            break;
        }
        let (c, q, _) = &fresh[rng.gen_range(0..fresh.len())];
        stats.equal += 1;
        record(&mut trace, &mut seen, c.op(&cur, is_virtual), q);
        cur = q.clone();
    }

    let outcome = classify(&cur, is_virtual);
    ReductionReport {
        outcome,
        presentation: cur,
        trace,
        stats,
        elapsed: started.elapsed(),
    }
}

fn classify(p: &LinkPresentation, is_virtual: bool) -> Outcome {
    if is_unlink(p) {
        Outcome::Unlink
    } else if p.components().len() > 1 {
        Outcome::Splitting
    } else if !is_virtual && is_alternating(p) {
        Outcome::Alternating
    } else {
        Outcome::BudgetExhausted
    }
}

/// Every component is one crossing closed up by two loops.
pub fn is_unlink(p: &LinkPresentation) -> bool {
    p.components().iter().all(|comp| {
        comp.len() == 1 && (0..4).all(|j| p.mate[comp[0].0 * 4 + j] / 4 == comp[0].0)
    })
}

/// Along every strand the classical crossings alternate between the two
/// poles. Virtual crossings are skipped.
pub fn is_alternating(p: &LinkPresentation) -> bool {
    trace_strands(p).iter().all(|s| {
        let poles: Vec<_> = s
            .poles
            .iter()
            .filter(|e| p.kind(e.crossing) == Kind::Classical)
            .map(|e| e.pole)
            .collect();
        let l = poles.len();
        l < 2 || (0..l).all(|i| poles[i] != poles[(i + 1) % l])
    })
}

fn local_move(p: &LinkPresentation, is_virtual: bool) -> Option<(MoveOp, LinkPresentation)> {
    let name = |c: CrossingId| p.name(c).to_string();
    if is_virtual {
        for site in u2_sites(p) {
            if let Ok(q) = apply_u_move(p, &UMove::U2(site.clone())) {
                return Some((MoveOp::U2 { x: name(site.x) }, q));
            }
        }
    } else {
        for site in enumerate_sites(p).omega2 {
            if let Ok(q) = apply_omega2(p, &site) {
                return Some((MoveOp::Omega2 { x: name(site.x) }, q));
            }
        }
    }
    for site in flip_sites(p) {
        if let Ok(q) = apply_flip(p, &site) {
            return Some((MoveOp::Flip { x: name(site.x) }, q));
        }
    }
    if is_virtual {
        for site in u1_sites(p) {
            if let Ok(q) = apply_u_move(p, &UMove::U1(site.clone())) {
                return Some((MoveOp::U1 { x: name(site.x), y: name(site.y) }, q));
            }
        }
    } else {
        for site in enumerate_sites(p).omega1 {
            if let Ok(q) = apply_omega1(p, &site) {
                return Some((MoveOp::Omega1 { x: name(site.x), y: name(site.y) }, q));
            }
        }
    }
    None
}

/// A maximal pass with its shortest reroute, drawn only when needed.
struct Candidate {
    k: usize,
    m: usize,
    pass: Pass,
    graph: AdjacentGraph,
    route: Route,
}

impl Candidate {
    fn realize(&self, p: &LinkPresentation, is_virtual: bool) -> Option<LinkPresentation> {
        replace(p, &self.pass, &self.graph, &self.route, is_virtual)
    }

    fn op(&self, p: &LinkPresentation, is_virtual: bool) -> MoveOp {
        pass_op(p, &self.pass, &self.route, is_virtual)
    }
}

fn ordered_passes(p: &LinkPresentation, is_virtual: bool, order: PassOrder) -> Vec<Pass> {
    let mut passes = if is_virtual {
        find_virtual_maximal_passes(p)
    } else {
        find_maximal_passes(p)
    };
    if order == PassOrder::LongestFirst {
        passes.sort_by_key(|q| (std::cmp::Reverse(q.len()), q.start.crossing, q.start.pole));
    }
    passes
}

fn plan(p: &LinkPresentation, pass: Pass, is_virtual: bool) -> Option<Candidate> {
    if is_virtual {
        check_virtual_pass(p, &pass).ok()?;
    } else {
        check_classical_pass(p, &pass).ok()?;
    }
    let graph = adjacent_graph(strip(p, &pass).ok()?);
    let route = shortest_route(&graph).ok()?;
    Some(Candidate {
        k: pass.len(),
        m: route.len(),
        pass,
        graph,
        route,
    })
}

fn replace(p: &LinkPresentation, pass: &Pass, g: &AdjacentGraph, route: &Route, is_virtual: bool) -> Option<LinkPresentation> {
    if pass.is_virtual(p) {
        return reroute(g, route, crate::model::Pole::Plus, Kind::Virtual).ok().map(|r| r.0);
    }
    if is_virtual && !region_allows_classical(g, route) {
        return None;
    }
    reroute(g, route, pass.sign(), Kind::Classical).ok().map(|r| r.0)
}

fn pass_op(p: &LinkPresentation, pass: &Pass, route: &Route, is_virtual: bool) -> MoveOp {
    let start = p.end_label(pass.start);
    let end = p.end_label(pass.end);
    let k = pass.len();
    let route = route.steps.iter().map(|s| (s.edge, p.end_label(s.tail))).collect();
    if is_virtual {
        MoveOp::VirtualPass { start, end, k, route }
    } else {
        MoveOp::Pass { start, end, k, route }
    }
}

/// Applies one recorded move.
pub fn apply_record(p: &LinkPresentation, op: &MoveOp) -> Result<LinkPresentation, String> {
    let find = |n: &str| p.find(n).ok_or_else(|| format!("no crossing {n}"));
    match op {
        MoveOp::Omega2 { x } => {
            let x = find(x)?;
            let site = enumerate_sites(p).omega2.into_iter().find(|s| s.x == x).ok_or("no kink there")?;
            apply_omega2(p, &site).map_err(|e| e.to_string())
        }
        MoveOp::Omega1 { x, y } => {
            let (x, y) = (find(x)?, find(y)?);
            let site = enumerate_sites(p)
                .omega1
                .into_iter()
                .find(|s| (s.x, s.y) == (x, y) || (s.x, s.y) == (y, x))
                .ok_or("no clasp there")?;
            apply_omega1(p, &site).map_err(|e| e.to_string())
        }
        MoveOp::Flip { x } => {
            let x = find(x)?;
            let site = flip_sites(p).into_iter().find(|s| s.x == x).ok_or("not a cut vertex")?;
            apply_flip(p, &site).map_err(|e| e.to_string())
        }
        MoveOp::U2 { x } => {
            let x = find(x)?;
            let site = u2_sites(p).into_iter().find(|s| s.x == x).ok_or("no kink there")?;
            apply_u_move(p, &UMove::U2(site)).map_err(|e| e.to_string())
        }
        MoveOp::U1 { x, y } => {
            let (x, y) = (find(x)?, find(y)?);
            let site = u1_sites(p)
                .into_iter()
                .find(|s| (s.x, s.y) == (x, y) || (s.x, s.y) == (y, x))
                .ok_or("no clasp there")?;
            apply_u_move(p, &UMove::U1(site)).map_err(|e| e.to_string())
        }
        MoveOp::Pass { start, end, k, route } | MoveOp::VirtualPass { start, end, k, route } => {
            let is_virtual = matches!(op, MoveOp::VirtualPass { .. });
            let passes = if is_virtual {
                find_virtual_maximal_passes(p)
            } else {
                find_maximal_passes(p)
            };
            let pass = passes
                .into_iter()
                .find(|q| p.end_label(q.start) == *start && p.end_label(q.end) == *end)
                .ok_or_else(|| format!("no maximal pass {start} .. {end}"))?;
            if pass.len() != *k {
                return Err(format!("pass {start} .. {end} has {} interior crossings, not {k}", pass.len()));
            }
            let g = plan(p, pass.clone(), is_virtual).ok_or("pass cannot be rerouted")?.graph;
            let mut steps = Vec::with_capacity(route.len());
            for (edge, tail) in route {
                let tail = p.parse_end(tail).ok_or_else(|| format!("no end {tail}"))?;
                steps.push(RouteStep { edge: *edge, tail });
            }
            let r = g.route_from_steps(&steps).map_err(|e| e.to_string())?;
            replace(p, &pass, &g, &r, is_virtual).ok_or_else(|| "route is not allowed".to_string())
        }
    }
}

/// Replays a trace from `p`, checking every record's crossing count and
/// code. Returns the final presentation.
pub fn replay(p: &LinkPresentation, trace: &[MoveRecord]) -> Result<LinkPresentation, TraceError> {
    let mut cur = p.clone();
    for rec in trace {
        let q = apply_record(&cur, &rec.op).map_err(|msg| TraceError::Apply { seq: rec.seq, msg })?;
        let found = code8(&canonical_code(&q));
        if found != rec.code8 || q.crossing_count() != rec.n_after {
            return Err(TraceError::Divergence {
                seq: rec.seq,
                expected: rec.code8.clone(),
                found,
            });
        }
        cur = q;
    }
    Ok(cur)
}
