//! Rotation systems over marked crossings.
//!
//! Crossing `c` owns the four dart slots `4c..4c + 4`, listed anticlockwise.
//! Even positions attach at the plus pole and odd positions at the minus
//! pole, so the alternation constraint holds by construction and a strand
//! passes straight through a crossing from slot `p` to slot `p + 2`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::ValidationError;

/// Index of a crossing inside one presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pole {
    Plus,
    Minus,
}

impl Pole {
    pub fn opposite(self) -> Pole {
        match self {
            Pole::Plus => Pole::Minus,
            Pole::Minus => Pole::Plus,
        }
    }

    pub fn suffix(self) -> char {
        match self {
            Pole::Plus => '+',
            Pole::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Classical,
    Virtual,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Virtual => "virtual",
        }
    }
}

/// One pole of one crossing, written `x^r` in the literature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndRef {
    pub crossing: CrossingId,
    pub pole: Pole,
}

impl EndRef {
    pub fn new(crossing: CrossingId, pole: Pole) -> Self {
        EndRef { crossing, pole }
    }
}

pub type EdgeId = u32;

/// A half-edge, named by the slot it occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(crossing: CrossingId, position: usize) -> Dart {
        Dart(crossing.0 * 4 + position)
    }

    pub fn crossing(self) -> CrossingId {
        CrossingId(self.0 / 4)
    }

    pub fn position(self) -> usize {
        self.0 % 4
    }

    pub fn pole(self) -> Pole {
        slot_pole(self.0)
    }

    pub fn end_ref(self) -> EndRef {
        EndRef::new(self.crossing(), self.pole())
    }

    /// The slot where the strand leaves after entering here.
    pub fn through(self) -> Dart {
        Dart(through(self.0))
    }

    pub fn ccw_next(self) -> Dart {
        Dart(ccw_next(self.0))
    }

    pub fn ccw_prev(self) -> Dart {
        Dart(ccw_prev(self.0))
    }
}

pub(crate) fn slot_pole(s: usize) -> Pole {
    if s % 2 == 0 {
        Pole::Plus
    } else {
        Pole::Minus
    }
}

pub(crate) fn through(s: usize) -> usize {
    (s & !3) | ((s + 2) & 3)
}

pub(crate) fn ccw_next(s: usize) -> usize {
    (s & !3) | ((s + 1) & 3)
}

pub(crate) fn ccw_prev(s: usize) -> usize {
    (s & !3) | ((s + 3) & 3)
}

/// An edge with both of its darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub darts: [Dart; 2],
    pub ends: [EndRef; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0].crossing == self.ends[1].crossing
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub name: String,
    pub kind: Kind,
}

/// Counters for generated crossing names and edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshNames {
    pub prefix: String,
    pub next_name: u64,
    pub next_edge: EdgeId,
}

impl FreshNames {
    pub const DEFAULT_PREFIX: &'static str = "y";

    pub(crate) fn for_names<'a>(
        prefix: &str,
        names: impl Iterator<Item = &'a str>,
        max_edge: Option<EdgeId>,
    ) -> FreshNames {
        let mut next_name = 1;
        for n in names {
            if let Some(num) = n.strip_prefix(prefix).and_then(|r| r.parse::<u64>().ok()) {
                next_name = next_name.max(num + 1);
            }
        }
        FreshNames {
            prefix: prefix.to_string(),
            next_name,
            next_edge: max_edge.map_or(1, |m| m + 1),
        }
    }

    pub(crate) fn name(&mut self, taken: impl Fn(&str) -> bool) -> String {
        loop {
            let candidate = format!("{}{}", self.prefix, self.next_name);
            self.next_name += 1;
            if !taken(&candidate) {
                return candidate;
            }
        }
    }

    pub(crate) fn edge(&mut self) -> EdgeId {
        let e = self.next_edge;
        self.next_edge += 1;
        e
    }
}

/// The rotation system of a link diagram.
///
/// Edge ids and the infinite-face annotation are carried along but play no
/// part in isomorphism.
#[derive(Clone, Debug)]
pub struct LinkPresentation {
    pub(crate) crossings: Vec<CrossingInfo>,
    pub(crate) mate: Vec<usize>,
    pub(crate) edge: Vec<EdgeId>,
    pub(crate) infinite_face: Option<Vec<EdgeId>>,
    pub(crate) fresh: FreshNames,
}

impl LinkPresentation {
    /// Assembles a presentation from raw slot tables and checks it.
    pub(crate) fn from_parts(
        crossings: Vec<CrossingInfo>,
        mate: Vec<usize>,
        edge: Vec<EdgeId>,
        fresh: Option<FreshNames>,
    ) -> Result<LinkPresentation, ValidationError> {
        let fresh = fresh.unwrap_or_else(|| {
            FreshNames::for_names(
                FreshNames::DEFAULT_PREFIX,
                crossings.iter().map(|c| c.name.as_str()),
                edge.iter().copied().max(),
            )
        });
        let p = LinkPresentation {
            crossings,
            mate,
            edge,
            infinite_face: None,
            fresh,
        };
        validate_structure(&p)?;
        Ok(p)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> {
        (0..self.crossings.len()).map(CrossingId)
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.mate.len()).map(Dart)
    }

    pub fn crossing(&self, id: CrossingId) -> &CrossingInfo {
        &self.crossings[id.0]
    }

    pub fn name(&self, id: CrossingId) -> &str {
        &self.crossings[id.0].name
    }

    pub fn kind(&self, id: CrossingId) -> Kind {
        self.crossings[id.0].kind
    }

    pub fn find(&self, name: &str) -> Option<CrossingId> {
        self.crossings.iter().position(|c| c.name == name).map(CrossingId)
    }

    pub fn rotation(&self, id: CrossingId) -> [Dart; 4] {
        let b = id.0 * 4;
        [Dart(b), Dart(b + 1), Dart(b + 2), Dart(b + 3)]
    }

    /// The reversal involution: the other half of this dart's edge.
    pub fn mate(&self, d: Dart) -> Dart {
        Dart(self.mate[d.0])
    }

    pub fn edge_id(&self, d: Dart) -> EdgeId {
        self.edge[d.0]
    }

    /// Next dart of the face to the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        Dart(ccw_prev(self.mate[d.0]))
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .darts()
            .filter(|&d| d.0 < self.mate[d.0])
            .map(|d| {
                let m = self.mate(d);
                Edge {
                    id: self.edge[d.0],
                    darts: [d, m],
                    ends: [d.end_ref(), m.end_ref()],
                }
            })
            .collect();
        out.sort_by_key(|e| e.id);
        out
    }

    pub fn edge_by_id(&self, id: EdgeId) -> Option<Edge> {
        let d = self.darts().find(|d| self.edge[d.0] == id)?;
        let m = self.mate(d);
        Some(Edge {
            id,
            darts: [d, m],
            ends: [d.end_ref(), m.end_ref()],
        })
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(|c| c.kind == Kind::Classical)
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.kind == Kind::Virtual).count()
    }

    pub fn infinite_face(&self) -> Option<&[EdgeId]> {
        self.infinite_face.as_deref()
    }

    /// Annotates the face drawn outermost. Rendering hint only.
    pub fn set_infinite_face(&mut self, edges: Option<Vec<EdgeId>>) {
        self.infinite_face = edges;
    }

    pub fn fresh_names(&self) -> &FreshNames {
        &self.fresh
    }

    pub fn set_fresh_names(&mut self, fresh: FreshNames) {
        self.fresh = fresh;
    }

    /// Renders `x^r` as `x+` or `x-`.
    pub fn end_label(&self, e: EndRef) -> String {
        format!("{}{}", self.name(e.crossing), e.pole.suffix())
    }

    /// Parses `x+` / `x-`.
    pub fn parse_end(&self, s: &str) -> Option<EndRef> {
        let (name, pole) = split_pole(s)?;
        Some(EndRef::new(self.find(name)?, pole))
    }

    /// Crossing sets of the connected components of the shadow, each sorted.
    pub fn components(&self) -> Vec<Vec<CrossingId>> {
        let n = self.crossings.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let idx = out.len();
            let mut members = vec![CrossingId(start)];
            comp[start] = idx;
            let mut i = 0;
            while i < members.len() {
                let c = members[i].0;
                for s in 4 * c..4 * c + 4 {
                    let o = self.mate[s] / 4;
                    if comp[o] == usize::MAX {
                        comp[o] = idx;
                        members.push(CrossingId(o));
                    }
                }
                i += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Same presentation with crossings renamed by index.
    pub fn renamed(&self, names: &[String]) -> Result<LinkPresentation, ValidationError> {
        assert_eq!(names.len(), self.crossings.len());
        let crossings = self
            .crossings
            .iter()
            .zip(names)
            .map(|(c, n)| CrossingInfo {
                name: n.clone(),
                kind: c.kind,
            })
            .collect();
        LinkPresentation::from_parts(crossings, self.mate.clone(), self.edge.clone(), None)
    }

    /// Same presentation with crossing `i` moved to index `order[i]`.
    pub fn reindexed(&self, order: &[usize]) -> LinkPresentation {
        let n = self.crossings.len();
        assert_eq!(order.len(), n);
        let map = |s: usize| order[s / 4] * 4 + s % 4;
        let mut crossings = vec![
            CrossingInfo {
                name: String::new(),
                kind: Kind::Classical
            };
            n
        ];
        let mut mate = vec![0; 4 * n];
        let mut edge = vec![0; 4 * n];
        for (i, c) in self.crossings.iter().enumerate() {
            crossings[order[i]] = c.clone();
        }
        for s in 0..4 * n {
            mate[map(s)] = map(self.mate[s]);
            edge[map(s)] = self.edge[s];
        }
        LinkPresentation {
            crossings,
            mate,
            edge,
            infinite_face: self.infinite_face.clone(),
            fresh: self.fresh.clone(),
        }
    }

    /// Exchanges the two poles of crossing `c` by turning its rotation one
    /// step. For a virtual crossing this is an isomorphism.
    pub fn with_poles_swapped(&self, c: CrossingId) -> LinkPresentation {
        let map = |s: usize| {
            if s / 4 == c.0 {
                (s & !3) | ((s + 3) & 3)
            } else {
                s
            }
        };
        let mut mate = vec![0; self.mate.len()];
        let mut edge = vec![0; self.mate.len()];
        for s in 0..self.mate.len() {
            mate[map(s)] = map(self.mate[s]);
            edge[map(s)] = self.edge[s];
        }
        LinkPresentation {
            crossings: self.crossings.clone(),
            mate,
            edge,
            infinite_face: self.infinite_face.clone(),
            fresh: self.fresh.clone(),
        }
    }

    /// Same presentation with every edge id replaced through `f`.
    pub fn with_edge_ids(&self, f: impl Fn(EdgeId) -> EdgeId) -> LinkPresentation {
        let mut q = self.clone();
        for e in q.edge.iter_mut() {
            *e = f(*e);
        }
        q.fresh.next_edge = q.edge.iter().copied().max().map_or(1, |m| m + 1);
        q
    }
}

pub(crate) fn split_pole(s: &str) -> Option<(&str, Pole)> {
    let pole = match s.chars().last()? {
        '+' => Pole::Plus,
        '-' => Pole::Minus,
        _ => return None,
    };
    let name = &s[..s.len() - 1];
    if name.is_empty() {
        None
    } else {
        Some((name, pole))
    }
}

impl fmt::Display for LinkPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.crossing_ids() {
            let rot: Vec<String> = self
                .rotation(c)
                .iter()
                .map(|&d| format!("e{}", self.edge_id(d)))
                .collect();
            write!(f, "{}:({}) ", self.name(c), rot.join(","))?;
        }
        Ok(())
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<ValidationError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every presentation invariant and reports the first violation.
pub fn validate(p: &LinkPresentation) -> ValidationReport {
    ValidationReport {
        violation: validate_structure(p).err(),
    }
}

fn validate_structure(p: &LinkPresentation) -> Result<(), ValidationError> {
    let slots = p.mate.len();
    if slots != 4 * p.crossings.len() || p.edge.len() != slots {
        return Err(ValidationError::Degree {
            crossing: String::from("?"),
            found: slots % 4,
        });
    }
    let mut names = HashSet::new();
    for c in &p.crossings {
        if !names.insert(c.name.as_str()) {
            return Err(ValidationError::DuplicateName(c.name.clone()));
        }
    }
    let mut ids: HashMap<EdgeId, usize> = HashMap::new();
    for s in 0..slots {
        let m = p.mate[s];
        let name = || p.crossings[s / 4].name.clone();
        if m >= slots || p.mate[m] != s || m == s {
            return Err(ValidationError::Dangling(format!(
                "dart {} at {} has no partner",
                s % 4,
                name()
            )));
        }
        if p.edge[m] != p.edge[s] {
            return Err(ValidationError::Dangling(format!(
                "edge ids disagree across an edge at {}",
                name()
            )));
        }
        if s < m {
            if let Some(prev) = ids.insert(p.edge[s], s) {
                return Err(ValidationError::DuplicateEdge {
                    id: p.edge[s],
                    crossing: p.crossings[prev / 4].name.clone(),
                });
            }
            if s / 4 == m / 4 && slot_pole(s) == slot_pole(m) {
                return Err(ValidationError::PoleLoop {
                    crossing: name(),
                    edge: p.edge[s],
                });
            }
        }
    }
    check_euler(p)
}

fn check_euler(p: &LinkPresentation) -> Result<(), ValidationError> {
    let comps = p.components();
    let mut comp_of = vec![0; p.crossings.len()];
    for (i, c) in comps.iter().enumerate() {
        for x in c {
            comp_of[x.0] = i;
        }
    }
    let mut faces = vec![0i64; comps.len()];
    for f in trace_faces(p) {
        faces[comp_of[f.darts[0].crossing().0]] += 1;
    }
    for (i, c) in comps.iter().enumerate() {
        let v = c.len() as i64;
        let e = 2 * v;
        if v - e + faces[i] != 2 {
            return Err(ValidationError::Euler {
                crossing: p.name(c[0]).to_string(),
                vertices: v as usize,
                edges: e as usize,
                faces: faces[i] as usize,
            });
        }
    }
    Ok(())
}

/// One orbit of the face permutation; the face lies to the left of each dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self, p: &LinkPresentation) -> Vec<EdgeId> {
        self.darts.iter().map(|&d| p.edge_id(d)).collect()
    }

    pub fn contains_edge(&self, p: &LinkPresentation, e: EdgeId) -> bool {
        self.darts.iter().any(|&d| p.edge_id(d) == e)
    }
}

/// Faces in order of their smallest dart.
pub fn trace_faces(p: &LinkPresentation) -> Vec<Face> {
    let mut seen = vec![false; p.mate.len()];
    let mut out = Vec::new();
    for start in 0..p.mate.len() {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            darts.push(Dart(d));
            d = ccw_prev(p.mate[d]);
        }
        out.push(Face { darts });
    }
    out
}

/// A closed strand: the poles it visits, in walking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub poles: Vec<EndRef>,
    /// The dart by which the strand leaves each pole.
    pub exits: Vec<Dart>,
}

impl Strand {
    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn position(&self, e: EndRef) -> Option<usize> {
        self.poles.iter().position(|&x| x == e)
    }
}

/// Strands in order of their first pole. Each starts at the smallest
/// unvisited crossing, plus pole first, and leaves by the lower slot.
pub fn trace_strands(p: &LinkPresentation) -> Vec<Strand> {
    let mut seen = vec![false; p.mate.len() / 2];
    let mut out = Vec::new();
    for start in 0..p.mate.len() / 2 {
        if seen[start] {
            continue;
        }
        // pole index 2c + (0 plus, 1 minus) leaves by slot 4c + (0 or 1)
        let mut exit = (start / 2) * 4 + start % 2;
        let mut poles = Vec::new();
        let mut exits = Vec::new();
        loop {
            let pole_idx = (exit / 4) * 2 + exit % 2;
            if seen[pole_idx] {
                break;
            }
            seen[pole_idx] = true;
            poles.push(Dart(exit).end_ref());
            exits.push(Dart(exit));
            exit = through(p.mate[exit]);
        }
        out.push(Strand { poles, exits });
    }
    out
}

/// The pole `l` steps further along the strand through `e`.
pub fn successor(p: &LinkPresentation, e: EndRef, l: usize) -> EndRef {
    for s in trace_strands(p) {
        if let Some(i) = s.position(e) {
            return s.poles[(i + l) % s.len()];
        }
    }
    panic!("pole {e:?} is not on any strand");
}

/// The pole `l` steps back along the strand through `e`.
pub fn predecessor(p: &LinkPresentation, e: EndRef, l: usize) -> EndRef {
    for s in trace_strands(p) {
        if let Some(i) = s.position(e) {
            let n = s.len();
            return s.poles[(i + n - l % n) % n];
        }
    }
    panic!("pole {e:?} is not on any strand");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_example31, make_thistlethwaite, make_trivial};

    fn has_cycle(faces: &[Face], p: &LinkPresentation, want: &[EdgeId]) -> bool {
        faces.iter().any(|f| {
            let ids = f.edges(p);
            ids.len() == want.len() && (0..ids.len()).any(|r| ids[r..].iter().chain(&ids[..r]).eq(want))
        })
    }

    #[test]
    fn known_faces_of_the_six_crossing_pair() {
        let (l1, l2) = make_example31();
        assert!(has_cycle(&trace_faces(&l1), &l1, &[3, 7, 10, 4]));
        assert!(has_cycle(&trace_faces(&l2), &l2, &[3, 7, 8, 12, 4]));
    }

    #[test]
    fn faces_partition_the_darts() {
        let p = make_thistlethwaite();
        let mut seen = vec![0; 4 * p.crossing_count()];
        for f in trace_faces(&p) {
            for d in f.darts {
                seen[d.0] += 1;
            }
        }
        assert!(seen.iter().all(|&n| n == 1));
    }

    #[test]
    fn strands_cover_every_pole_once() {
        let p = make_thistlethwaite();
        let strands = trace_strands(&p);
        assert_eq!(strands.len(), 1);
        assert_eq!(strands.iter().map(Strand::len).sum::<usize>(), 2 * p.crossing_count());
    }

    #[test]
    fn successor_walks_round_the_strand() {
        let p = make_thistlethwaite();
        let e = EndRef::new(CrossingId(3), Pole::Minus);
        let n = trace_strands(&p)[0].len();
        assert_eq!(successor(&p, e, n), e);
        assert_eq!(predecessor(&p, successor(&p, e, 5), 5), e);
        assert_ne!(successor(&p, e, 1), e);
    }

    #[test]
    fn trivial_link_components() {
        let p = make_trivial(3);
        assert_eq!(p.components().len(), 3);
        assert_eq!(trace_faces(&p).len(), 9);
        assert!(validate(&p).is_valid());
    }

    #[test]
    fn end_labels_round_trip() {
        let p = make_thistlethwaite();
        let e = p.parse_end("a7-").unwrap();
        assert_eq!(p.end_label(e), "a7-");
        assert!(p.parse_end("a7").is_none());
        assert!(p.parse_end("zz+").is_none());
    }

    #[test]
    fn dart_geometry() {
        let d = Dart::new(CrossingId(2), 3);
        assert_eq!(d.pole(), Pole::Minus);
        assert_eq!(d.through(), Dart::new(CrossingId(2), 1));
        assert_eq!(d.ccw_next(), Dart::new(CrossingId(2), 0));
        assert_eq!(d.ccw_prev().ccw_next(), d);
    }

    #[test]
    fn renaming_checks_uniqueness() {
        let p = make_trivial(2);
        assert!(p.renamed(&["x".into(), "x".into()]).is_err());
        let q = p.renamed(&["x".into(), "y".into()]).unwrap();
        assert_eq!(q.name(CrossingId(1)), "y");
    }
}
