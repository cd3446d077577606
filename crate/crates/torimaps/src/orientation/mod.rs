//! Weighted biorientations: every dart carries an integer, positive exactly
//! when the dart is outgoing at its vertex.

mod expansion;
mod scores;
mod search;

pub use expansion::{beta_expansion, Expansion};
pub use scores::{
    basis_gamma, delta_score, epsilon_at, gamma_score, is_balanced, is_right_biorientation, rightmost_walk,
    BalanceMode, RightmostWalk,
};
pub use search::{enumerate_orientations, for_each_orientation};

use crate::flow::FlowNetwork;
use crate::map::{CombMap, Dart, FaceRootedMap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Ingoing darts weigh exactly 0.
    N,
    /// Ingoing darts weigh at most 0.
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedBiorientation {
    pub weights: Vec<i64>,
    pub regime: Regime,
}

impl WeightedBiorientation {
    pub fn new(map: &CombMap, weights: Vec<i64>, regime: Regime) -> Result<WeightedBiorientation> {
        if weights.len() != map.dart_count() {
            return Err(Error::Precondition("one weight per dart is required".into()));
        }
        if regime == Regime::N && weights.iter().any(|&w| w < 0) {
            return Err(Error::Precondition("negative weight in the N-regime".into()));
        }
        Ok(WeightedBiorientation { weights, regime })
    }

    /// Plain orientation: unit weight on the outgoing dart of every edge.
    pub fn from_outgoing(out: &[bool]) -> WeightedBiorientation {
        WeightedBiorientation { weights: out.iter().map(|&o| o as i64).collect(), regime: Regime::N }
    }

    pub fn weight(&self, x: Dart) -> i64 {
        self.weights[x]
    }

    pub fn is_outgoing(&self, x: Dart) -> bool {
        self.weights[x] > 0
    }

    /// Number of outgoing darts (0, 1 or 2) on the edge of `x`.
    pub fn ways(&self, map: &CombMap, x: Dart) -> usize {
        self.is_outgoing(x) as usize + self.is_outgoing(map.alpha(x)) as usize
    }

    pub fn vertex_weight(&self, map: &CombMap, v: usize) -> i64 {
        map.vertices()[v].iter().map(|&x| self.weights[x].max(0)).sum()
    }

    pub fn outdegree(&self, map: &CombMap, v: usize) -> usize {
        map.vertices()[v].iter().filter(|&&x| self.is_outgoing(x)).count()
    }

    pub fn edge_weight(&self, map: &CombMap, e: usize) -> i64 {
        let [x, y] = map.edges()[e];
        self.weights[x] + self.weights[y]
    }

    /// Sum of the ingoing darts that have `f` on their left when walked
    /// towards their vertex, i.e. the ingoing darts of the `phi`-orbit `f`.
    pub fn face_weight(&self, map: &CombMap, f: usize) -> i64 {
        map.faces()[f].iter().map(|&x| self.weights[x].min(0)).sum()
    }

    pub fn scaled(&self, k: i64) -> WeightedBiorientation {
        WeightedBiorientation { weights: self.weights.iter().map(|w| w * k).collect(), regime: self.regime }
    }

    pub fn is_plain(&self, map: &CombMap) -> bool {
        map.edges().iter().all(|&[x, y]| self.weights[x] + self.weights[y] == 1 && self.weights[x] >= 0 && self.weights[y] >= 0)
    }

    pub fn satisfies(&self, map: &CombMap, spec: &OrientationSpec) -> bool {
        self.weights.iter().all(|&w| w >= spec.lo && w <= spec.hi)
            && (spec.regime == Regime::Z || self.weights.iter().all(|&w| w >= 0))
            && (0..map.num_vertices()).all(|v| self.vertex_weight(map, v) == spec.alpha_v[v])
            && (0..map.num_edges()).all(|e| self.edge_weight(map, e) == spec.beta_e[e])
            && spec
                .face_target
                .as_ref()
                .is_none_or(|t| (0..map.num_faces()).all(|f| self.face_weight(map, f) == t[f]))
    }
}

/// Targets for an orientation search: vertex weights, edge weights, optional
/// face weights and per-dart bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSpec {
    pub alpha_v: Vec<i64>,
    pub beta_e: Vec<i64>,
    pub face_target: Option<Vec<i64>>,
    pub lo: i64,
    pub hi: i64,
    pub regime: Regime,
}

impl OrientationSpec {
    /// d/(d-2)-orientations.
    pub fn d_over_d2(map: &CombMap, d: usize) -> OrientationSpec {
        let d = d as i64;
        OrientationSpec {
            alpha_v: vec![d; map.num_vertices()],
            beta_e: vec![d - 2; map.num_edges()],
            face_target: None,
            lo: 0,
            hi: (d - 2).max(0),
            regime: Regime::N,
        }
    }

    /// Z-biorientations with weights in {-2..d}, vertex weight d, edge
    /// weight d-2 and face weight d - deg(f).
    pub fn z_canonical(map: &CombMap, d: usize) -> OrientationSpec {
        let di = d as i64;
        OrientationSpec {
            alpha_v: vec![di; map.num_vertices()],
            beta_e: vec![di - 2; map.num_edges()],
            face_target: Some((0..map.num_faces()).map(|f| di - map.face_degree(f) as i64).collect()),
            lo: -2,
            hi: di,
            regime: Regime::Z,
        }
    }

    /// Plain orientations with prescribed outdegrees.
    pub fn plain(map: &CombMap, outdegree: Vec<i64>) -> OrientationSpec {
        OrientationSpec { alpha_v: outdegree, beta_e: vec![1; map.num_edges()], face_target: None, lo: 0, hi: 1, regime: Regime::N }
    }
}

/// Outcome of an infeasible flow problem: a vertex set `S` whose inner
/// edges need more weight than `S` may carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub vertices: Vec<usize>,
    pub inner_beta: i64,
    pub alpha_sum: i64,
}

/// An α/β-orientation by maximum flow, or a violating vertex set.
pub fn find_alpha_beta(map: &CombMap, alpha_v: &[i64], beta_e: &[i64]) -> std::result::Result<WeightedBiorientation, Certificate> {
    let sum_a: i64 = alpha_v.iter().sum();
    let sum_b: i64 = beta_e.iter().sum();
    let all: Vec<usize> = (0..map.num_vertices()).collect();
    if sum_a != sum_b {
        return Err(Certificate { vertices: all, inner_beta: sum_b, alpha_sum: sum_a });
    }
    let ne = map.num_edges();
    let nv = map.num_vertices();
    let (s, t) = (ne + nv, ne + nv + 1);
    let mut g = FlowNetwork::new(ne + nv + 2);
    let mut dart_arc = vec![0; map.dart_count()];
    for (e, &[x, y]) in map.edges().iter().enumerate() {
        g.add_arc(s, e, beta_e[e]);
        dart_arc[x] = g.add_arc(e, ne + map.vertex(x), beta_e[e]);
        dart_arc[y] = g.add_arc(e, ne + map.vertex(y), beta_e[e]);
    }
    for v in 0..nv {
        g.add_arc(ne + v, t, alpha_v[v]);
    }
    if g.max_flow(s, t) == sum_b {
        let weights = (0..map.dart_count()).map(|x| g.flow(dart_arc[x])).collect();
        return Ok(WeightedBiorientation { weights, regime: Regime::N });
    }
    let side = g.source_side(s);
    let vertices: Vec<usize> = (0..nv).filter(|&v| side[ne + v]).collect();
    let inside = |v: usize| side[ne + v];
    let inner_beta = (0..ne)
        .filter(|&e| {
            let [x, y] = map.edges()[e];
            inside(map.vertex(x)) && inside(map.vertex(y))
        })
        .map(|e| beta_e[e])
        .sum();
    let alpha_sum = vertices.iter().map(|&v| alpha_v[v]).sum();
    Err(Certificate { vertices, inner_beta, alpha_sum })
}

/// Spec-driven wrapper over [`find_alpha_beta`].
pub fn find_orientation(map: &CombMap, spec: &OrientationSpec) -> Result<WeightedBiorientation> {
    if spec.regime != Regime::N {
        return Err(Error::Precondition("flow search needs an N-regime spec".into()));
    }
    find_alpha_beta(map, &spec.alpha_v, &spec.beta_e).map_err(|c| {
        Error::Infeasible(format!(
            "vertex set {:?} has inner edge weight {} > vertex weight {}",
            c.vertices, c.inner_beta, c.alpha_sum
        ))
    })
}

/// Faces forced into any coherent set containing `f`: across every ingoing
/// dart of `f`.
fn closure(map: &CombMap, w: &WeightedBiorientation, f: usize) -> Vec<bool> {
    let mut seen = vec![false; map.num_faces()];
    seen[f] = true;
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        for &y in &map.faces()[g] {
            if !w.is_outgoing(y) {
                let h = map.face_left(y);
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
    }
    seen
}

/// First non-root face (by index) whose closure misses the root face.
fn violating_set(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Option<Vec<bool>> {
    let root = frm.root_face();
    (0..frm.map.num_faces()).filter(|&f| f != root).map(|f| closure(&frm.map, w, f)).find(|s| !s[root])
}

pub fn is_minimal(frm: &FaceRootedMap, w: &WeightedBiorientation) -> bool {
    violating_set(frm, w).is_none()
}

/// The minimal orientation reached by flipping clockwise face sets.
pub fn minimize(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Result<WeightedBiorientation> {
    let map = &frm.map;
    if w.weights.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("minimize needs an N-biorientation".into()));
    }
    let sum_beta: i64 = (0..map.num_edges()).map(|e| w.edge_weight(map, e)).sum();
    let bound = (sum_beta.max(1) as usize) * map.num_faces();
    let mut cur = w.clone();
    for _ in 0..=bound {
        let Some(s) = violating_set(frm, &cur) else {
            return Ok(cur);
        };
        let boundary: Vec<Dart> = (0..map.dart_count()).filter(|&y| s[map.face(y)] && !s[map.face_left(y)]).collect();
        let step = boundary.iter().map(|&y| cur.weights[y]).min().unwrap_or(1).max(1);
        for y in boundary {
            cur.weights[y] -= step;
            cur.weights[map.alpha(y)] += step;
        }
    }
    Err(Error::Internal("minimize exceeded its flip bound".into()))
}
