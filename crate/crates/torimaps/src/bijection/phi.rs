use super::{Color, Mobile};
use crate::map::{CombMap, Dart, FaceRootedMap};
use crate::orientation::{is_right_biorientation, WeightedBiorientation};
use crate::{Error, Result};

/// Mobile items under construction, before ids are compacted.
struct Raw {
    rotations: Vec<Vec<usize>>,
    colors: Vec<Color>,
    alpha: Vec<Option<usize>>,
    weights: Vec<i64>,
}

impl Raw {
    fn finish(self) -> Result<Mobile> {
        let mut id = vec![usize::MAX; self.alpha.len()];
        let mut next = 0;
        for rot in &self.rotations {
            for &x in rot {
                id[x] = next;
                next += 1;
            }
        }
        let mut alpha = vec![None; next];
        let mut weights = vec![0; next];
        for x in 0..self.alpha.len() {
            if id[x] != usize::MAX {
                alpha[id[x]] = self.alpha[x].map(|y| id[y]);
                weights[id[x]] = self.weights[x];
            }
        }
        let rotations = self.rotations.iter().map(|r| r.iter().map(|&x| id[x]).collect()).collect();
        Mobile::new(rotations, self.colors, alpha, weights)
    }
}

/// Item ids: white items are `x` for outgoing darts, black items are `n + y`.
fn build(frm: &FaceRootedMap, out: &[bool], weight: impl Fn(Dart) -> i64) -> Result<(Raw, Vec<usize>, Vec<usize>)> {
    let map = &frm.map;
    let n = map.dart_count();
    let rf = frm.root_face();
    if map.faces()[rf].iter().any(|&x| !out[x]) {
        return Err(Error::Internal("root face has an ingoing dart".into()));
    }
    let mut rotations = Vec::new();
    let mut colors = Vec::new();
    let mut white_vertex = vec![usize::MAX; map.num_vertices()];
    for v in 0..map.num_vertices() {
        let rot: Vec<usize> = map.rotation_from(map.vertices()[v][0]).into_iter().filter(|&x| out[x]).collect();
        if rot.is_empty() {
            return Err(Error::Precondition(format!("vertex {v} has no outgoing dart")));
        }
        white_vertex[v] = rotations.len();
        rotations.push(rot);
        colors.push(Color::White);
    }
    let mut black_vertex = vec![usize::MAX; map.num_faces()];
    for f in (0..map.num_faces()).filter(|&f| f != rf) {
        let mut rot: Vec<usize> = map.face_walk_from(map.faces()[f][0]).into_iter().map(|y| n + y).collect();
        rot.reverse();
        black_vertex[f] = rotations.len();
        rotations.push(rot);
        colors.push(Color::Black);
    }
    let mut alpha = vec![None; 2 * n];
    let mut weights = vec![0; 2 * n];
    for x in 0..n {
        let ax = map.alpha(x);
        if out[x] {
            alpha[x] = Some(if out[ax] { ax } else { n + ax });
            weights[x] = weight(x);
        } else if map.face(x) != rf {
            alpha[n + x] = Some(if out[ax] { ax } else { n + ax });
            weights[n + x] = weight(x);
        }
    }
    Ok((Raw { rotations, colors, alpha, weights }, white_vertex, black_vertex))
}

/// Closure-inverse bijection: one black vertex per non-root face, edges and
/// buds by the local rule of each edge according to its number of outgoing
/// darts, root face vertex deleted.
pub fn phi_plus(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Result<Mobile> {
    if !is_right_biorientation(frm, w) {
        return Err(Error::Precondition("orientation is not a right biorientation".into()));
    }
    let out: Vec<bool> = (0..frm.map.dart_count()).map(|x| w.is_outgoing(x)).collect();
    let (raw, _, _) = build(frm, &out, |x| w.weights[x])?;
    raw.finish()
}

fn insert_after(sigma: &mut [Dart], a: Dart, new: Dart) {
    sigma[new] = sigma[a];
    sigma[a] = new;
}

fn insert_before(sigma: &mut [Dart], b: Dart, new: Dart) {
    let mut p = b;
    while sigma[p] != b {
        p = sigma[p];
    }
    insert_after(sigma, p, new);
}

/// The same mobile computed through plain orientations: 2-way edges are
/// doubled into counterclockwise digons, 0-way edges get a middle vertex of
/// outdegree 2, the plain rule is applied, and the digon and middle vertices
/// are contracted back.
pub fn phi_plus_via_expansion(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Result<Mobile> {
    if !is_right_biorientation(frm, w) {
        return Err(Error::Precondition("orientation is not a right biorientation".into()));
    }
    let map = &frm.map;
    let n = map.dart_count();
    let mut alpha: Vec<Dart> = map.alpha_perm().to_vec();
    let mut sigma: Vec<Dart> = map.sigma_perm().to_vec();
    let mut out: Vec<bool> = (0..n).map(|x| w.is_outgoing(x)).collect();
    let mut weight: Vec<i64> = w.weights.clone();
    let mut digons = Vec::new();
    let mut middles = Vec::new();
    for [x, xb] in map.edges().iter().map(|&[a, b]| [a.min(b), a.max(b)]) {
        let k = alpha.len();
        match w.ways(map, x) {
            2 => {
                let (p, pb) = (k, k + 1);
                alpha.extend([pb, p]);
                sigma.extend([0, 0]);
                insert_after(&mut sigma, x, p);
                insert_before(&mut sigma, xb, pb);
                out[xb] = false;
                out.extend([false, true]);
                weight.extend([0, w.weights[xb]]);
                digons.push((x, xb, pb));
            }
            0 => {
                let (q, qb) = (k, k + 1);
                alpha[x] = q;
                alpha[xb] = qb;
                alpha.extend([x, xb]);
                sigma.extend([qb, q]);
                out.extend([true, true]);
                weight.extend([0, 0]);
                middles.push((x, xb, q, qb));
            }
            _ => {}
        }
    }
    let expanded = FaceRootedMap::new(CombMap::new(alpha, sigma)?, frm.root)?;
    let m = &expanded.map;
    let nn = m.dart_count();
    let (mut raw, white_vertex, black_vertex) = build(&expanded, &out, |x| weight[x])?;
    if m.edges().iter().any(|&[a, b]| out[a] == out[b]) {
        return Err(Error::Internal("expanded orientation is not plain".into()));
    }
    let mut dead_vertex = vec![false; raw.rotations.len()];
    let mut dead_item = vec![false; raw.alpha.len()];
    for &(x, xb, pb) in &digons {
        let s = black_vertex[m.face(xb)];
        if raw.rotations[s].len() != 2 {
            return Err(Error::Internal("digon vertex is not of degree 2".into()));
        }
        dead_vertex[s] = true;
        raw.alpha[x] = Some(pb);
        raw.alpha[pb] = Some(x);
    }
    for &(y, yb, q, qb) in &middles {
        dead_vertex[white_vertex[m.vertex(q)]] = true;
        dead_item[nn + q] = true;
        dead_item[nn + qb] = true;
        raw.alpha[nn + y] = Some(nn + yb);
        raw.alpha[nn + yb] = Some(nn + y);
    }
    let mut rotations = Vec::new();
    let mut colors = Vec::new();
    for (v, rot) in raw.rotations.iter().enumerate() {
        if !dead_vertex[v] {
            rotations.push(rot.iter().copied().filter(|&i| !dead_item[i]).collect());
            colors.push(raw.colors[v]);
        }
    }
    Raw { rotations, colors, alpha: raw.alpha, weights: raw.weights }.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rooted_triangulation() -> (FaceRootedMap, WeightedBiorientation) {
        let m = CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap();
        let mut out = vec![false; 6];
        for &x in &m.faces()[m.face(0)] {
            out[x] = true;
        }
        (FaceRootedMap::new(m, 0).unwrap(), WeightedBiorientation::from_outgoing(&out))
    }

    #[test]
    fn one_vertex_triangulation_image() {
        let (frm, w) = rooted_triangulation();
        let t = phi_plus(&frm, &w).unwrap();
        assert_eq!(t.num_vertices(), 2);
        assert_eq!(t.excess(), 3);
        assert_eq!(t.genus(), 1);
        assert_eq!(t.num_faces(), 1);
        let white: Vec<usize> = t.vertices_of(Color::White).collect();
        assert_eq!(t.degree(white[0]), 3);
        assert_eq!(t.canonical_code(), phi_plus_via_expansion(&frm, &w).unwrap().canonical_code());
    }
}
