use super::WeightedBiorientation;
use crate::map::{homology_basis, simple_cycles, ClosedWalk, CombMap, Dart, FaceRootedMap, HomotopyBasis, Region};
use crate::{Error, Result};

/// Score of a closed dual walk, given by the primal darts it crosses: the step
/// at `x` goes from `face(x)` to `face_left(x)`. Edges crossing from the
/// left of the walk to its right count +1, the others -1.
pub fn delta_score(map: &CombMap, w: &WeightedBiorientation, dual: &[Dart]) -> Result<i64> {
    if !w.is_plain(map) {
        return Err(Error::Precondition("delta score needs a plain orientation".into()));
    }
    let k = dual.len();
    for i in 0..k {
        if map.face_left(dual[i]) != map.face(dual[(i + 1) % k]) {
            return Err(Error::Precondition("dual walk is not closed".into()));
        }
    }
    Ok(dual.iter().map(|&x| if w.is_outgoing(x) { 1 } else { -1 }).sum())
}

/// Total weight hanging off the right side of a vertex-simple cycle minus
/// the total weight on its left side.
pub fn gamma_score(map: &CombMap, w: &WeightedBiorientation, cycle: &ClosedWalk) -> Result<i64> {
    if !cycle.is_vertex_simple(map) {
        return Err(Error::Precondition("gamma score needs a vertex-simple cycle".into()));
    }
    let k = cycle.len();
    let mut score = 0;
    for i in 0..k {
        let out = cycle.darts[i];
        let back = map.alpha(cycle.darts[(i + k - 1) % k]);
        let mut y = map.sigma(out);
        while y != back {
            score -= w.weights[y];
            y = map.sigma(y);
        }
        let mut y = map.sigma(back);
        while y != out {
            score += w.weights[y];
            y = map.sigma(y);
        }
    }
    Ok(score)
}

pub fn basis_gamma(map: &CombMap, w: &WeightedBiorientation, basis: &HomotopyBasis) -> Result<(i64, i64)> {
    Ok((gamma_score(map, w, &basis.b1)?, gamma_score(map, w, &basis.b2)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalanceMode {
    /// Zero score on the two cycles of a homotopy basis.
    Basis,
    /// Zero score on every simple non-contractible cycle.
    Exhaustive,
}

pub fn is_balanced(map: &CombMap, w: &WeightedBiorientation, mode: BalanceMode) -> Result<bool> {
    let basis = homology_basis(map)?;
    match mode {
        BalanceMode::Basis => {
            let d = map.face_degree(0);
            let regular = map.faces().iter().all(|f| f.len() == d)
                && w.weights.iter().all(|&x| x >= 0)
                && (0..map.num_vertices()).all(|v| w.vertex_weight(map, v) == d as i64)
                && (0..map.num_edges()).all(|e| w.edge_weight(map, e) == d as i64 - 2);
            if !regular {
                return Err(Error::Precondition("basis mode needs a d/(d-2)-orientation of a d-angulation".into()));
            }
            Ok(basis_gamma(map, w, &basis)? == (0, 0))
        }
        BalanceMode::Exhaustive => {
            for c in simple_cycles(map) {
                if !basis.homology_vector(&c).is_zero() && gamma_score(map, w, &c)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Weight of the darts of inner edges of `region` that start on `walk`.
pub fn epsilon_at(map: &CombMap, w: &WeightedBiorientation, walk: &ClosedWalk, region: &Region) -> i64 {
    let on: Vec<usize> = walk.vertices(map);
    region
        .edges
        .iter()
        .flat_map(|&e| map.edges()[e])
        .filter(|&x| on.contains(&map.vertex(x)))
        .map(|x| w.weights[x])
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightmostWalk {
    pub tail: Vec<Dart>,
    pub cycle: ClosedWalk,
}

/// Follows the opposite dart and then the first outgoing dart turning
/// counterclockwise from it, until a dart repeats.
pub fn rightmost_walk(map: &CombMap, w: &WeightedBiorientation, start: Dart) -> Result<RightmostWalk> {
    if !w.is_outgoing(start) {
        return Err(Error::Precondition("rightmost walk must start on an outgoing dart".into()));
    }
    let mut pos = vec![usize::MAX; map.dart_count()];
    let mut path = vec![start];
    pos[start] = 0;
    let mut x = start;
    loop {
        let back = map.alpha(x);
        let mut y = map.sigma(back);
        while !w.is_outgoing(y) {
            if y == back {
                return Err(Error::Precondition(format!("vertex {} has no outgoing dart", map.vertex(back))));
            }
            y = map.sigma(y);
        }
        if pos[y] != usize::MAX {
            let cut = pos[y];
            let cycle = ClosedWalk { darts: path.split_off(cut) };
            return Ok(RightmostWalk { tail: path, cycle });
        }
        pos[y] = path.len();
        path.push(y);
        x = y;
    }
}

/// Every vertex has an outgoing dart and every rightmost walk loops on the
/// root face contour.
pub fn is_right_biorientation(frm: &FaceRootedMap, w: &WeightedBiorientation) -> bool {
    let map = &frm.map;
    if (0..map.num_vertices()).any(|v| w.outdegree(map, v) == 0) {
        return false;
    }
    let target = ClosedWalk { darts: map.face_walk_from(frm.root) }.normalized();
    (0..map.dart_count())
        .filter(|&x| w.is_outgoing(x))
        .all(|x| rightmost_walk(map, w, x).is_ok_and(|r| r.cycle.normalized() == target))
}
