//! Flat-torus SVG drawings. Vertices sit on a grid given by breadth-first
//! depth; every edge is a straight segment in the universal cover, drawn in
//! each translate that meets the fundamental domain.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt::Write as _;

use torimaps::bijection::{Color, Mobile};
use torimaps::map::{homology_basis, parse_map};
use torimaps::CombMap;

use crate::error::{CliError, CliResult};
use crate::files::{emit, read_text};
use crate::RenderArgs;

const MARGIN: f64 = 24.0;
const RADIUS: f64 = 5.0;
const BUD_LENGTH: f64 = 16.0;

struct Scene {
    map: CombMap,
    weights: Option<Vec<i64>>,
    /// Fill colour per vertex of `map`.
    fill: Vec<&'static str>,
    /// Bud directions, as a vertex and an angle.
    buds: Vec<(usize, f64)>,
}

fn map_scene(text: &str) -> CliResult<Scene> {
    let parsed = parse_map(text)?;
    let n = parsed.map.num_vertices();
    Ok(Scene { map: parsed.map, weights: parsed.weights, fill: vec!["#333333"; n], buds: Vec::new() })
}

fn mobile_scene(text: &str) -> CliResult<Scene> {
    let t = Mobile::from_json(text)?;
    if t.buds().count() == t.dart_count() {
        return Err(CliError::Domain("layout failure: the mobile has no edges".into()));
    }
    let (map, keep) = t.skeleton()?;
    let mut vertex_of = vec![usize::MAX; t.num_vertices()];
    for (x, &y) in keep.iter().enumerate() {
        vertex_of[t.vertex(y)] = map.vertex(x);
    }
    let mut fill = vec!["#ffffff"; map.num_vertices()];
    let mut buds = Vec::new();
    for v in 0..t.num_vertices() {
        let sv = vertex_of[v];
        if t.color(v) == Color::Black {
            fill[sv] = "#000000";
        }
        let rotation = t.rotation(v);
        for (i, &x) in rotation.iter().enumerate() {
            if t.is_bud(x) {
                buds.push((sv, 2.0 * PI * i as f64 / rotation.len() as f64));
            }
        }
    }
    let weights = Some(keep.iter().map(|&x| t.weights[x]).collect());
    Ok(Scene { map, weights, fill, buds })
}

/// Unit-square positions: rows by breadth-first depth from the vertex of dart 0.
fn layout(map: &CombMap) -> Vec<(f64, f64)> {
    let n = map.num_vertices();
    let mut depth = vec![usize::MAX; n];
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let start = map.vertex(0);
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if levels.len() <= depth[v] {
            levels.push(Vec::new());
        }
        levels[depth[v]].push(v);
        for &x in &map.vertices()[v] {
            let u = map.head(x);
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let rows = levels.len() as f64;
    let mut pos = vec![(0.0, 0.0); n];
    for (r, level) in levels.iter().enumerate() {
        for (i, &v) in level.iter().enumerate() {
            pos[v] = ((i as f64 + 0.5) / level.len() as f64, (r as f64 + 0.5) / rows);
        }
    }
    pos
}

fn translation_labels(map: &CombMap) -> CliResult<Vec<(f64, f64)>> {
    match map.genus() {
        0 => Ok(vec![(0.0, 0.0); map.dart_count()]),
        1 => Ok(homology_basis(map)?.labels.iter().map(|h| (h.0 as f64, h.1 as f64)).collect()),
        g => Err(CliError::Domain(format!("cannot draw a map of genus {g} on the flat torus"))),
    }
}

fn meets_domain(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0.min(b.0) <= 1.0 && a.0.max(b.0) >= 0.0 && a.1.min(b.1) <= 1.0 && a.1.max(b.1) >= 0.0
}

fn wrap(p: (f64, f64)) -> (f64, f64) {
    (p.0.rem_euclid(1.0), p.1.rem_euclid(1.0))
}

fn arrowhead(out: &mut String, px: &impl Fn((f64, f64)) -> (f64, f64), tail: (f64, f64), head: (f64, f64)) {
    let (a, b) = (px(tail), px(head));
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
    let (ux, uy) = (dx / len, dy / len);
    let tip = (a.0 + 0.45 * dx, a.1 + 0.45 * dy);
    let back = (tip.0 - 9.0 * ux, tip.1 - 9.0 * uy);
    let (l, r) = ((back.0 - 4.0 * uy, back.1 + 4.0 * ux), (back.0 + 4.0 * uy, back.1 - 4.0 * ux));
    writeln!(
        out,
        r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#c0392b"/>"##,
        tip.0, tip.1, l.0, l.1, r.0, r.1
    )
    .unwrap();
}

fn draw(scene: &Scene, size: f64) -> CliResult<String> {
    let map = &scene.map;
    let pos = layout(map);
    let labels = translation_labels(map)?;
    let px = |p: (f64, f64)| (MARGIN + p.0 * size, MARGIN + p.1 * size);
    let total = size + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(out, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{total:.0}" height="{total:.0}" viewBox="0 0 {total:.0} {total:.0}">"##).unwrap();
    writeln!(out, r##"<defs><clipPath id="domain"><rect x="{MARGIN}" y="{MARGIN}" width="{size}" height="{size}"/></clipPath></defs>"##).unwrap();
    writeln!(out, r##"<rect x="{MARGIN}" y="{MARGIN}" width="{size}" height="{size}" fill="none" stroke="#999999" stroke-dasharray="6 4"/>"##).unwrap();
    writeln!(out, r##"<g clip-path="url(#domain)">"##).unwrap();
    let mut texts = String::new();
    for e in map.edges() {
        let [x, y] = *e;
        let start = pos[map.vertex(x)];
        let end = (pos[map.head(x)].0 + labels[x].0, pos[map.head(x)].1 + labels[x].1);
        for i in -2..=2 {
            for j in -2..=2 {
                let shift = |p: (f64, f64)| (p.0 + i as f64, p.1 + j as f64);
                let (a, b) = (shift(start), shift(end));
                if !meets_domain(a, b) {
                    continue;
                }
                let (pa, pb) = (px(a), px(b));
                writeln!(out, r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#2c3e50" stroke-width="1.5"/>"##, pa.0, pa.1, pb.0, pb.1).unwrap();
                if let Some(w) = &scene.weights {
                    if w[x] > 0 {
                        arrowhead(&mut out, &px, a, b);
                    }
                    if w[y] > 0 {
                        arrowhead(&mut out, &px, b, a);
                    }
                }
            }
        }
        if let Some(w) = &scene.weights {
            for (dart, tail, head) in [(x, start, end), (y, end, start)] {
                let p = wrap((tail.0 + 0.22 * (head.0 - tail.0), tail.1 + 0.22 * (head.1 - tail.1)));
                let q = px(p);
                writeln!(texts, r##"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace" fill="#1f618d">{}</text>"##, q.0 + 3.0, q.1 - 3.0, w[dart]).unwrap();
            }
        }
    }
    writeln!(out, "</g>").unwrap();
    out.push_str(&texts);
    for &(v, angle) in &scene.buds {
        let c = px(pos[v]);
        let tip = (c.0 + BUD_LENGTH * angle.cos(), c.1 - BUD_LENGTH * angle.sin());
        writeln!(out, r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#27ae60" stroke-width="1.5"/>"##, c.0, c.1, tip.0, tip.1).unwrap();
        let (ux, uy) = (angle.cos(), -angle.sin());
        let back = (tip.0 - 6.0 * ux, tip.1 - 6.0 * uy);
        writeln!(
            out,
            r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#27ae60"/>"##,
            tip.0,
            tip.1,
            back.0 - 3.0 * uy,
            back.1 + 3.0 * ux,
            back.0 + 3.0 * uy,
            back.1 - 3.0 * ux
        )
        .unwrap();
    }
    for (v, &p) in pos.iter().enumerate() {
        let c = px(p);
        writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="{RADIUS}" fill="{}" stroke="#000000"/>"##, c.0, c.1, scene.fill[v]).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

pub fn run(a: &RenderArgs) -> CliResult<()> {
    let text = read_text(&a.input)?;
    let scene = if text.trim_start().starts_with('{') { mobile_scene(&text)? } else { map_scene(&text)? };
    emit(a.output.as_deref(), &draw(&scene, a.size as f64)?)
}
