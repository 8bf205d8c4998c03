//! Relabeling-invariant codes.
//!
//! Starting from a dart, number the crossings of its component in the order
//! a breadth-first sweep reaches them, reading each rotation from the slot
//! it was entered by. The minimum over all starting darts is a complete
//! invariant of a connected rotation system. Virtual crossings record no
//! pole, so exchanging their poles leaves the code unchanged.
//!
//! A lone classical crossing closed up by two loops is coded as the trivial
//! knot whichever way its curl turns, since a rotation listing edges
//! cannot tell the two curls apart.

use sha2::{Digest, Sha256};

use crate::model::{Kind, LinkPresentation};

/// Byte code equal for two presentations exactly when they are isomorphic.
pub fn canonical_code(p: &LinkPresentation) -> Vec<u8> {
    let mut parts: Vec<Vec<u8>> = p
        .components()
        .iter()
        .map(|comp| {
            if is_lone_curl(p, comp) {
                return sweep(&TRIVIAL_CURL, 0, 1, None).expect("unbounded sweep");
            }
            let mut best = sweep(p, comp[0].0 * 4, comp.len(), None).expect("unbounded sweep");
            for c in comp {
                for pos in 0..4 {
                    if let Some(code) = sweep(p, c.0 * 4 + pos, comp.len(), Some(&best)) {
                        best = code;
                    }
                }
            }
            best
        })
        .collect();
    parts.sort();
    let mut body = Vec::new();
    for part in parts {
        body.extend_from_slice(&(part.len() as u32).to_be_bytes());
        body.extend(part);
    }
    let digest = Sha256::digest(&body);
    let mut out = digest[..8].to_vec();
    out.extend(body);
    out
}

struct Curl {
    mate: [usize; 4],
}

const TRIVIAL_CURL: Curl = Curl { mate: [1, 0, 3, 2] };

fn is_lone_curl(p: &LinkPresentation, comp: &[crate::model::CrossingId]) -> bool {
    comp.len() == 1
        && p.crossings[comp[0].0].kind == Kind::Classical
        && (0..4).all(|j| p.mate[comp[0].0 * 4 + j] / 4 == comp[0].0)
}

trait Sweepable {
    fn kind_of(&self, c: usize) -> Kind;
    fn mate_of(&self, s: usize) -> usize;
}

impl Sweepable for LinkPresentation {
    fn kind_of(&self, c: usize) -> Kind {
        self.crossings[c].kind
    }
    fn mate_of(&self, s: usize) -> usize {
        self.mate[s]
    }
}

impl Sweepable for Curl {
    fn kind_of(&self, _: usize) -> Kind {
        Kind::Classical
    }
    fn mate_of(&self, s: usize) -> usize {
        self.mate[s]
    }
}

/// The code read from `start`, or `None` as soon as it is known not to
/// undercut `bound`. Codes of one component all have the same length.
fn sweep(p: &impl Sweepable, start: usize, size: usize, mut bound: Option<&[u8]>) -> Option<Vec<u8>> {
    let mut label = std::collections::HashMap::with_capacity(size);
    let mut order = Vec::with_capacity(size);
    let mut base = Vec::with_capacity(size);
    label.insert(start / 4, 0u32);
    order.push(start / 4);
    base.push(start % 4);
    let mut out = Vec::with_capacity(size * 21);
    let mut i = 0;
    while i < order.len() {
        let from = out.len();
        let c = order[i];
        let b = base[i];
        out.push(match p.kind_of(c) {
            Kind::Classical => (b % 2) as u8,
            Kind::Virtual => 2,
        });
        for j in 0..4 {
            let m = p.mate_of(c * 4 + (b + j) % 4);
            let other = m / 4;
            let l = *label.entry(other).or_insert_with(|| {
                order.push(other);
                base.push(m % 4);
                (order.len() - 1) as u32
            });
            let off = (m % 4 + 4 - base[l as usize]) % 4;
            out.extend_from_slice(&l.to_be_bytes());
            out.push(off as u8);
        }
        i += 1;
        if let Some(limit) = bound {
            match out[from..].cmp(&limit[from..out.len()]) {
                std::cmp::Ordering::Less => bound = None,
                std::cmp::Ordering::Greater => return None,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    // still tied with the bound: no improvement
    bound.is_none().then_some(out)
}

pub fn is_isomorphic(p: &LinkPresentation, q: &LinkPresentation) -> bool {
    p.crossing_count() == q.crossing_count() && canonical_code(p) == canonical_code(q)
}

/// First eight bytes of a code in hex, as written in traces.
pub fn code8(code: &[u8]) -> String {
    code.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_example31, make_goeritz, make_trefoil, make_trivial, make_virtual_trefoil};
    use crate::model::CrossingId;

    #[test]
    fn six_crossing_pair_differs() {
        let (l1, l2) = make_example31();
        assert!(!is_isomorphic(&l1, &l2));
        assert!(is_isomorphic(&l1, &l1.clone()));
    }

    #[test]
    fn code_ignores_order_names_and_edge_ids() {
        let p = make_goeritz(0, 0);
        let n = p.crossing_count();
        let order: Vec<usize> = (0..n).rev().collect();
        let names: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
        let q = p.reindexed(&order).renamed(&names).unwrap().with_edge_ids(|e| e * 7 + 100);
        assert_eq!(canonical_code(&p), canonical_code(&q));
    }

    #[test]
    fn mirror_is_not_identified() {
        let t = make_trefoil();
        let mut m = t.clone();
        for c in 0..t.crossing_count() {
            m = m.with_poles_swapped(CrossingId(c));
        }
        assert!(!is_isomorphic(&t, &m));
    }

    #[test]
    fn virtual_poles_are_unordered() {
        let v = make_virtual_trefoil();
        let c = v.crossing_ids().find(|&c| v.kind(c) == Kind::Virtual).unwrap();
        assert!(is_isomorphic(&v, &v.with_poles_swapped(c)));
    }

    #[test]
    fn both_curls_are_the_trivial_knot() {
        let o = make_trivial(1);
        assert!(is_isomorphic(&o, &o.with_poles_swapped(CrossingId(0))));
    }

    #[test]
    fn code8_is_sixteen_hex_digits() {
        let s = code8(&canonical_code(&make_trivial(2)));
        assert_eq!(s.len(), 16);
        assert!(s.chars().all(|c| c.is_ascii_hexdigit()));
    }
}
