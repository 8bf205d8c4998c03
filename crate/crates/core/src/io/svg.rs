//! SVG drawings. Each edge is a polyline through two bend points; the
//! under-strand is broken short of a classical crossing and virtual
//! crossings are circled. Components are laid out side by side.

use std::fmt::Write;

use super::layout::{barycentric, Point};
use crate::model::{trace_faces, CrossingId, Dart, Face, Kind, LinkPresentation, Pole};

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Side of the square cell given to each component, in pixels.
    pub cell: f64,
    pub stroke_width: f64,
    /// Gap left in the under-strand on each side of a crossing, in pixels.
    pub gap: f64,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            cell: 400.0,
            stroke_width: 2.5,
            gap: 7.0,
            labels: true,
        }
    }
}

pub fn render_svg(p: &LinkPresentation, options: &SvgOptions) -> String {
    let comps = p.components();
    let faces = trace_faces(p);
    let margin = 20.0;
    let width = options.cell * comps.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = width,
        h = options.cell
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linecap="round" stroke-linejoin="round">"#,
        options.stroke_width
    );
    let mut glyphs = String::new();
    for (i, comp) in comps.iter().enumerate() {
        let origin = Point::new(i as f64 * options.cell + options.cell / 2.0, options.cell / 2.0);
        let radius = options.cell / 2.0 - margin;
        let place = |q: Point<f64>| Point::new(origin.x + q.x * radius, origin.y - q.y * radius);
        let lay = component_layout(p, comp, &faces);
        for (dart, mate, bends) in &lay.edges {
            let mut pts = vec![place(lay.crossing[&dart.crossing().0])];
            pts.extend(bends.iter().map(|&b| place(b)));
            pts.push(place(lay.crossing[&mate.crossing().0]));
            let last = pts.len() - 1;
            if is_under(p, *dart) {
                pts[0] = shorten(pts[0], pts[1], options.gap);
            }
            if is_under(p, *mate) {
                pts[last] = shorten(pts[last], pts[last - 1], options.gap);
            }
            let coords: Vec<String> = pts.iter().map(|q| format!("{:.2},{:.2}", q.x, q.y)).collect();
            let _ = writeln!(
                out,
                r#"<polyline class="edge" data-edge="{}" points="{}"/>"#,
                p.edge_id(*dart),
                coords.join(" ")
            );
        }
        for c in comp {
            let q = place(lay.crossing[&c.0]);
            let name = escape(p.name(*c));
            let _ = write!(glyphs, r#"<g class="crossing {}" data-name="{name}">"#, p.kind(*c).as_str());
            if p.kind(*c) == Kind::Virtual {
                let _ = write!(
                    glyphs,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black"/>"#,
                    q.x,
                    q.y,
                    options.gap * 1.2
                );
            }
            if options.labels {
                let _ = write!(
                    glyphs,
                    r##"<text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif" fill="#c03">{name}</text>"##,
                    q.x + options.gap,
                    q.y - options.gap
                );
            }
            let _ = writeln!(glyphs, "</g>");
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str(&glyphs);
    let _ = writeln!(out, "</svg>");
    out
}

fn is_under(p: &LinkPresentation, d: Dart) -> bool {
    p.kind(d.crossing()) == Kind::Classical && d.pole() == Pole::Minus
}

fn shorten(at: Point<f64>, toward: Point<f64>, gap: f64) -> Point<f64> {
    let len = at.dist(toward);
    if len <= f64::EPSILON {
        return at;
    }
    at.lerp(toward, (gap / len).min(0.45))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct ComponentLayout {
    crossing: std::collections::HashMap<usize, Point<f64>>,
    /// Each edge once: the dart it is drawn from, its mate, and two bends.
    edges: Vec<(Dart, Dart, [Point<f64>; 2])>,
}

/// Lays out one component on the unit disc. Every edge gets two bend
/// vertices so that loops and parallel edges come out as separate paths.
fn component_layout(p: &LinkPresentation, comp: &[CrossingId], faces: &[Face]) -> ComponentLayout {
    let mut index = std::collections::HashMap::new();
    for (i, c) in comp.iter().enumerate() {
        index.insert(c.0, i);
    }
    let darts: Vec<Dart> = comp.iter().flat_map(|c| (0..4).map(move |j| Dart::new(*c, j))).collect();
    let mut bend_of = std::collections::HashMap::new();
    let mut n = comp.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for &d in &darts {
        let m = p.mate(d);
        if m.0 < d.0 {
            continue;
        }
        let (a, b) = (n, n + 1);
        n += 2;
        adj.push(Vec::new());
        adj.push(Vec::new());
        let (u, v) = (index[&d.crossing().0], index[&m.crossing().0]);
        for (x, y) in [(u, a), (a, b), (b, v)] {
            adj[x].push(y);
            adj[y].push(x);
        }
        bend_of.insert(d.0, [a, b]);
        bend_of.insert(m.0, [b, a]);
        edges.push((d, m));
    }
    let in_comp = |f: &&Face| f.darts.iter().all(|d| index.contains_key(&d.crossing().0));
    let annotated = p.infinite_face().and_then(|ids| {
        let mut want: Vec<_> = ids.to_vec();
        want.sort();
        faces.iter().filter(in_comp).find(|f| {
            let mut have = f.edges(p);
            have.sort();
            have == want
        })
    });
    let outer = annotated
        .or_else(|| faces.iter().filter(in_comp).max_by_key(|f| f.len()))
        .expect("a component has a face");
    let mut boundary = Vec::new();
    for d in &outer.darts {
        // crossings stay free so that they settle inside the disc
        for v in bend_of[&d.0] {
            if !boundary.contains(&v) {
                boundary.push(v);
            }
        }
    }
    // faces run clockwise around the outer face, so reverse to go anticlockwise
    boundary.reverse();
    // a hub inside every other face keeps parallel edges and loops apart
    for f in faces.iter().filter(in_comp) {
        if std::ptr::eq(f, outer) {
            continue;
        }
        let hub = n;
        n += 1;
        adj.push(Vec::new());
        for d in &f.darts {
            for v in std::iter::once(index[&d.crossing().0]).chain(bend_of[&d.0]) {
                adj[hub].push(v);
                adj[v].push(hub);
            }
        }
    }
    let pos: Vec<Point<f64>> = barycentric(n, &adj, &boundary);
    ComponentLayout {
        crossing: comp.iter().map(|c| (c.0, pos[index[&c.0]])).collect(),
        edges: edges
            .into_iter()
            .map(|(d, m)| {
                let [a, b] = bend_of[&d.0];
                (d, m, [pos[a], pos[b]])
            })
            .collect(),
    }
}
