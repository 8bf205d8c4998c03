//! Move traces, one record per line:
//!
//! ```text
//! SEQ OP PARAMS.. N_AFTER CODE8
//! 1 omega2 a4 10 3f2a9c0d11e4b7a2
//! 2 pass a13+ a15+ 3 61:a11+ 62:a5+ 12 07b1c2d3e4f5a6b7
//! ```
//!
//! Ops: `omega2 X`, `omega1 X Y`, `flip X`, `u2 X`, `u1 X Y`, and
//! `pass`/`vpass START END K EDGE:TAIL..` where the route lists the crossed
//! edges of the stripped shadow with the end each crossing leaves from.
//! Blank lines and `#` comments are skipped.

use std::fmt::Write;

use crate::error::TraceError;
use crate::model::EdgeId;
use crate::reduce::{MoveOp, MoveRecord};

pub fn format_trace(trace: &[MoveRecord]) -> String {
    let mut out = String::new();
    for rec in trace {
        let _ = write!(out, "{} ", rec.seq);
        match &rec.op {
            MoveOp::Omega2 { x } => {
                let _ = write!(out, "omega2 {x}");
            }
            MoveOp::Omega1 { x, y } => {
                let _ = write!(out, "omega1 {x} {y}");
            }
            MoveOp::Flip { x } => {
                let _ = write!(out, "flip {x}");
            }
            MoveOp::U2 { x } => {
                let _ = write!(out, "u2 {x}");
            }
            MoveOp::U1 { x, y } => {
                let _ = write!(out, "u1 {x} {y}");
            }
            MoveOp::Pass { start, end, k, route } | MoveOp::VirtualPass { start, end, k, route } => {
                let op = if matches!(rec.op, MoveOp::Pass { .. }) { "pass" } else { "vpass" };
                let _ = write!(out, "{op} {start} {end} {k}");
                for (e, tail) in route {
                    let _ = write!(out, " {e}:{tail}");
                }
            }
        }
        let _ = writeln!(out, " {} {}", rec.n_after, rec.code8);
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<MoveRecord>, TraceError> {
    let mut out = Vec::new();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| TraceError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let tokens: Vec<&str> = full.split('#').next().unwrap_or("").split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() < 4 {
            return Err(err("too few fields"));
        }
        let seq: usize = tokens[0].parse().map_err(|_| err("bad sequence number"))?;
        let code8 = tokens[tokens.len() - 1];
        if code8.len() != 16 || !code8.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(err("code must be 16 hex digits"));
        }
        let n_after: usize = tokens[tokens.len() - 2].parse().map_err(|_| err("bad crossing count"))?;
        let args = &tokens[2..tokens.len() - 2];
        let s = |i: usize| args[i].to_string();
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(err("wrong number of arguments")) };
        let op = match tokens[1] {
            "omega2" => arity(1).map(|_| MoveOp::Omega2 { x: s(0) })?,
            "omega1" => arity(2).map(|_| MoveOp::Omega1 { x: s(0), y: s(1) })?,
            "flip" => arity(1).map(|_| MoveOp::Flip { x: s(0) })?,
            "u2" => arity(1).map(|_| MoveOp::U2 { x: s(0) })?,
            "u1" => arity(2).map(|_| MoveOp::U1 { x: s(0), y: s(1) })?,
            op @ ("pass" | "vpass") => {
                if args.len() < 3 {
                    return Err(err("pass needs START END K"));
                }
                let k: usize = args[2].parse().map_err(|_| err("bad interior length"))?;
                let mut route = Vec::new();
                for step in &args[3..] {
                    let (e, tail) = step.split_once(':').ok_or_else(|| err("route step must be EDGE:TAIL"))?;
                    let e: EdgeId = e.parse().map_err(|_| err("bad edge id"))?;
                    route.push((e, tail.to_string()));
                }
                let (start, end) = (s(0), s(1));
                if op == "pass" {
                    MoveOp::Pass { start, end, k, route }
                } else {
                    MoveOp::VirtualPass { start, end, k, route }
                }
            }
            other => return Err(err(&format!("unknown op `{other}`"))),
        };
        out.push(MoveRecord {
            seq,
            op,
            n_after,
            code8: code8.to_string(),
        });
    }
    Ok(out)
}
