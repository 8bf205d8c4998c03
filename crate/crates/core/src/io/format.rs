//! Line-based presentation files.
//!
//! ```text
//! linkpres 1
//! crossing o classical
//! edge 1 o+ o-
//! edge 2 o+ o-
//! rot o 1@+ 1@- 2@+ 2@-
//! ```
//!
//! `rot` lists edge ids anticlockwise; loops carry the pole they attach to.
//! Optional lines: `infinite E1 E2 ...` and `fresh PREFIX NEXT NEXTEDGE`,
//! the counters used for generated names and edge ids.

use std::fmt::Write;

use crate::build::{RawPresentation, RawSlot};
use crate::error::ParseError;
use crate::model::{split_pole, EdgeId, FreshNames, Kind, LinkPresentation};

const MAGIC: &str = "linkpres";
const VERSION: &str = "1";

pub fn parse(text: &str) -> Result<LinkPresentation, ParseError> {
    let mut raw = RawPresentation::default();
    let mut seen_magic = false;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = tokens.split_first() else {
            continue;
        };
        let err = |msg: String| ParseError::Syntax { line, msg };
        if !seen_magic {
            if head != MAGIC || args != [VERSION] {
                return Err(err(format!("expected `{MAGIC} {VERSION}`")));
            }
            seen_magic = true;
            continue;
        }
        match head {
            "crossing" => {
                let [name, kind] = args else {
                    return Err(err("usage: crossing NAME classical|virtual".into()));
                };
                let kind = match *kind {
                    "classical" => Kind::Classical,
                    "virtual" => Kind::Virtual,
                    other => return Err(err(format!("unknown crossing kind `{other}`"))),
                };
                raw.crossing(name, kind);
            }
            "edge" => {
                let [id, a, b] = args else {
                    return Err(err("usage: edge ID NAME± NAME±".into()));
                };
                let id = parse_id(id).ok_or_else(|| err(format!("bad edge id `{id}`")))?;
                let a = split_pole(a).ok_or_else(|| err(format!("bad pole suffix in `{a}`")))?;
                let b = split_pole(b).ok_or_else(|| err(format!("bad pole suffix in `{b}`")))?;
                raw.edge(id, a, b);
            }
            "rot" => {
                let Some((name, slots)) = args.split_first() else {
                    return Err(err("usage: rot NAME E1 E2 E3 E4".into()));
                };
                let slots = slots
                    .iter()
                    .map(|t| parse_slot(t).ok_or_else(|| err(format!("bad rotation entry `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                raw.rotation(name, &slots);
            }
            "infinite" => {
                let ids = args
                    .iter()
                    .map(|t| parse_id(t).ok_or_else(|| err(format!("bad edge id `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                raw.infinite = Some(ids);
            }
            "fresh" => {
                let [prefix, next, next_edge] = args else {
                    return Err(err("usage: fresh PREFIX NEXT NEXTEDGE".into()));
                };
                let next_name = next.parse().map_err(|_| err(format!("bad counter `{next}`")))?;
                let next_edge = parse_id(next_edge).ok_or_else(|| err(format!("bad counter `{next_edge}`")))?;
                raw.fresh = Some(FreshNames {
                    prefix: prefix.to_string(),
                    next_name,
                    next_edge,
                });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !seen_magic {
        return Err(ParseError::Syntax {
            line: 0,
            msg: "empty document".into(),
        });
    }
    Ok(raw.build()?)
}

fn parse_id(t: &str) -> Option<EdgeId> {
    t.parse().ok()
}

fn parse_slot(t: &str) -> Option<RawSlot> {
    match t.split_once('@') {
        None => Some(RawSlot::new(parse_id(t)?)),
        Some((id, pole)) => {
            let pole = match pole {
                "+" => crate::model::Pole::Plus,
                "-" => crate::model::Pole::Minus,
                _ => return None,
            };
            Some(RawSlot {
                edge: parse_id(id)?,
                pole: Some(pole),
            })
        }
    }
}

pub fn serialize(p: &LinkPresentation) -> String {
    let mut out = format!("{MAGIC} {VERSION}\n");
    for c in p.crossing_ids() {
        let _ = writeln!(out, "crossing {} {}", p.name(c), p.kind(c).as_str());
    }
    for e in p.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.id, p.end_label(e.ends[0]), p.end_label(e.ends[1]));
    }
    for c in p.crossing_ids() {
        let _ = write!(out, "rot {}", p.name(c));
        for d in p.rotation(c) {
            let id = p.edge_id(d);
            if p.mate(d).crossing() == c {
                let _ = write!(out, " {id}@{}", d.pole().suffix());
            } else {
                let _ = write!(out, " {id}");
            }
        }
        out.push('\n');
    }
    if let Some(face) = p.infinite_face() {
        let ids: Vec<String> = face.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "infinite {}", ids.join(" "));
    }
    let default = FreshNames::for_names(
        FreshNames::DEFAULT_PREFIX,
        p.crossing_ids().map(|c| p.name(c)),
        p.edges().iter().map(|e| e.id).max(),
    );
    let fresh = p.fresh_names();
    if *fresh != default {
        let _ = writeln!(out, "fresh {} {} {}", fresh.prefix, fresh.next_name, fresh.next_edge);
    }
    out
}
