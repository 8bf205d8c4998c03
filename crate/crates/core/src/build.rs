//! Named, edge-table form of a presentation and its checked conversion.

use std::collections::HashMap;

use crate::error::ValidationError;
use crate::model::{CrossingInfo, EdgeId, FreshNames, Kind, LinkPresentation, Pole};

/// One entry of a listed rotation. The pole is only needed for loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawSlot {
    pub edge: EdgeId,
    pub pole: Option<Pole>,
}

impl RawSlot {
    pub fn new(edge: EdgeId) -> Self {
        RawSlot { edge, pole: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub id: EdgeId,
    pub ends: [(String, Pole); 2],
}

/// A presentation as written: crossing names, an edge table and rotations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPresentation {
    pub crossings: Vec<(String, Kind)>,
    pub edges: Vec<RawEdge>,
    pub rotations: Vec<(String, Vec<RawSlot>)>,
    pub infinite: Option<Vec<EdgeId>>,
    pub fresh: Option<FreshNames>,
}

impl RawPresentation {
    pub fn crossing(&mut self, name: &str, kind: Kind) -> &mut Self {
        self.crossings.push((name.to_string(), kind));
        self
    }

    pub fn edge(&mut self, id: EdgeId, a: (&str, Pole), b: (&str, Pole)) -> &mut Self {
        self.edges.push(RawEdge {
            id,
            ends: [(a.0.to_string(), a.1), (b.0.to_string(), b.1)],
        });
        self
    }

    pub fn rotation(&mut self, name: &str, slots: &[RawSlot]) -> &mut Self {
        self.rotations.push((name.to_string(), slots.to_vec()));
        self
    }

    pub fn build(&self) -> Result<LinkPresentation, ValidationError> {
        let mut index = HashMap::new();
        for (i, (name, _)) in self.crossings.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(ValidationError::DuplicateName(name.clone()));
            }
        }
        let n = self.crossings.len();

        let mut edges: HashMap<EdgeId, [(usize, Pole); 2]> = HashMap::new();
        for e in &self.edges {
            let mut ends = [(0, Pole::Plus); 2];
            for (k, (name, pole)) in e.ends.iter().enumerate() {
                let c = *index.get(name.as_str()).ok_or_else(|| {
                    ValidationError::Dangling(format!("edge {} ends at unknown crossing {name}", e.id))
                })?;
                ends[k] = (c, *pole);
            }
            if edges.insert(e.id, ends).is_some() {
                return Err(ValidationError::DuplicateEdge {
                    id: e.id,
                    crossing: e.ends[0].0.clone(),
                });
            }
        }

        let mut rot: Vec<Option<&Vec<RawSlot>>> = vec![None; n];
        for (name, slots) in &self.rotations {
            let c = *index.get(name.as_str()).ok_or_else(|| {
                ValidationError::Dangling(format!("rotation for unknown crossing {name}"))
            })?;
            if rot[c].is_some() {
                return Err(ValidationError::Degree {
                    crossing: name.clone(),
                    found: 8,
                });
            }
            if slots.len() != 4 {
                return Err(ValidationError::Degree {
                    crossing: name.clone(),
                    found: slots.len(),
                });
            }
            rot[c] = Some(slots);
        }

        // where each edge occurs
        let mut occ: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
        for (c, r) in rot.iter().enumerate() {
            let r = r.ok_or_else(|| ValidationError::Degree {
                crossing: self.crossings[c].0.clone(),
                found: 0,
            })?;
            for (pos, slot) in r.iter().enumerate() {
                if !edges.contains_key(&slot.edge) {
                    return Err(ValidationError::Dangling(format!(
                        "rotation of {} lists unknown edge {}",
                        self.crossings[c].0, slot.edge
                    )));
                }
                occ.entry(slot.edge).or_default().push((c, pos));
            }
        }
        for e in &self.edges {
            let ends = edges[&e.id];
            let mut want = [ends[0].0, ends[1].0];
            want.sort();
            let mut got: Vec<usize> = occ.get(&e.id).map_or(vec![], |v| v.iter().map(|o| o.0).collect());
            got.sort();
            if got != want {
                return Err(ValidationError::Dangling(format!(
                    "edge {} joins {} and {} but is listed at {}",
                    e.id,
                    e.ends[0].0,
                    e.ends[1].0,
                    got.iter()
                        .map(|&c| self.crossings[c].0.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
            if ends[0] == ends[1] {
                return Err(ValidationError::PoleLoop {
                    crossing: e.ends[0].0.clone(),
                    edge: e.id,
                });
            }
        }

        // pole of every listed slot
        let mut poles = vec![[None::<Pole>; 4]; n];
        for (c, r) in rot.iter().enumerate() {
            let r = r.expect("checked above");
            let cname = &self.crossings[c].0;
            for (pos, slot) in r.iter().enumerate() {
                let ends = edges[&slot.edge];
                let here: Vec<Pole> = ends.iter().filter(|x| x.0 == c).map(|x| x.1).collect();
                poles[c][pos] = match (here.len(), slot.pole) {
                    (1, None) => Some(here[0]),
                    (1, Some(p)) if p == here[0] => Some(p),
                    (2, p) => p,
                    _ => {
                        return Err(ValidationError::Dangling(format!(
                            "pole suffix on edge {} at {cname} disagrees with the edge table",
                            slot.edge
                        )))
                    }
                };
            }
            fill_alternating(&mut poles[c], cname)?;
            // a loop listed twice must use both of its poles
            for (pos, slot) in r.iter().enumerate() {
                let ends = edges[&slot.edge];
                if ends[0].0 == c && ends[1].0 == c {
                    let other = r
                        .iter()
                        .enumerate()
                        .find(|(q, s)| *q != pos && s.edge == slot.edge)
                        .map(|(q, _)| q)
                        .expect("loop occurs twice");
                    if poles[c][pos] == poles[c][other] {
                        return Err(ValidationError::PoleLoop {
                            crossing: cname.clone(),
                            edge: slot.edge,
                        });
                    }
                }
            }
        }

        // normalize so that position 0 holds a plus dart
        let shift: Vec<usize> = poles
            .iter()
            .map(|p| if p[0] == Some(Pole::Plus) { 0 } else { 1 })
            .collect();
        let slot_of = |c: usize, pos: usize| 4 * c + (pos + 4 - shift[c]) % 4;

        let mut mate = vec![usize::MAX; 4 * n];
        let mut edge = vec![0; 4 * n];
        for (id, list) in &occ {
            let [a, b] = [list[0], list[1]];
            let (sa, sb) = (slot_of(a.0, a.1), slot_of(b.0, b.1));
            mate[sa] = sb;
            mate[sb] = sa;
            edge[sa] = *id;
            edge[sb] = *id;
        }
        let crossings = self
            .crossings
            .iter()
            .map(|(name, kind)| CrossingInfo {
                name: name.clone(),
                kind: *kind,
            })
            .collect();
        let mut p = LinkPresentation::from_parts(crossings, mate, edge, self.fresh.clone())?;
        p.infinite_face = self.infinite.clone();
        Ok(p)
    }
}

/// Completes a partial pole pattern so that positions alternate.
fn fill_alternating(p: &mut [Option<Pole>; 4], crossing: &str) -> Result<(), ValidationError> {
    let plus = p.iter().filter(|x| **x == Some(Pole::Plus)).count();
    let minus = p.iter().filter(|x| **x == Some(Pole::Minus)).count();
    if plus > 2 || minus > 2 || (plus + minus == 4 && plus != 2) {
        return Err(ValidationError::PoleCount {
            crossing: crossing.to_string(),
            plus,
            minus,
        });
    }
    // pole at even positions, if any known entry decides it
    let mut even = None;
    for (pos, x) in p.iter().enumerate() {
        if let Some(pole) = x {
            let e = if pos % 2 == 0 { *pole } else { pole.opposite() };
            if even.is_some_and(|prev| prev != e) {
                return Err(ValidationError::Alternation {
                    crossing: crossing.to_string(),
                });
            }
            even = Some(e);
        }
    }
    let even = even.unwrap_or(Pole::Plus);
    for (pos, x) in p.iter_mut().enumerate() {
        *x = Some(if pos % 2 == 0 { even } else { even.opposite() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Pole::{Minus as M, Plus as P};

    fn curl() -> RawPresentation {
        let mut raw = RawPresentation::default();
        raw.crossing("o", Kind::Classical).edge(1, ("o", P), ("o", M)).edge(2, ("o", P), ("o", M));
        let slot = |edge, pole| RawSlot { edge, pole: Some(pole) };
        raw.rotation("o", &[slot(1, P), slot(1, M), slot(2, P), slot(2, M)]);
        raw
    }

    #[test]
    fn builds_a_curl() {
        let p = curl().build().unwrap();
        assert_eq!((p.crossing_count(), p.edge_count()), (1, 2));
    }

    #[test]
    fn duplicate_names() {
        let mut raw = curl();
        raw.crossing("o", Kind::Virtual);
        assert!(matches!(raw.build(), Err(ValidationError::DuplicateName(_))));
    }

    #[test]
    fn unknown_crossing() {
        let mut raw = curl();
        raw.edge(3, ("q", P), ("o", M));
        assert!(matches!(raw.build(), Err(ValidationError::Dangling(_))));
    }

    #[test]
    fn repeated_edge_id() {
        let mut raw = curl();
        raw.edge(1, ("o", P), ("o", M));
        assert!(matches!(raw.build(), Err(ValidationError::DuplicateEdge { id: 1, .. })));
    }

    #[test]
    fn adjacent_plus_darts() {
        let mut raw = curl();
        let slot = |edge, pole| RawSlot { edge, pole: Some(pole) };
        raw.rotations[0].1 = vec![slot(1, P), slot(2, P), slot(1, M), slot(2, M)];
        assert!(raw.build().is_err());
    }
}
