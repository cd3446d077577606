//! Canonical balanced orientations of toroidal maps.

use crate::bijection::{is_balanced_mobile, phi_plus};
use crate::map::{
    cut_along_cycle, essential_girth, homology_basis_with, shortest_basis_cycles, ClosedWalk, CombMap, FaceRootedMap,
};
use crate::orientation::{
    find_alpha_beta, for_each_orientation, gamma_score, is_minimal, is_right_biorientation, minimize, OrientationSpec,
    Regime, WeightedBiorientation,
};
use crate::{Error, Result};

/// Four orientations biased towards `B1`, `-B1`, `B2`, `-B2`, with the
/// scores of the other basis cycle in each.
#[derive(Clone, Debug)]
pub struct BiasedQuadruple {
    pub b1: ClosedWalk,
    pub b2: ClosedWalk,
    pub d1: WeightedBiorientation,
    pub d2: WeightedBiorientation,
    pub d3: WeightedBiorientation,
    pub d4: WeightedBiorientation,
    /// Score of `B2` in `d1`.
    pub a: i64,
    /// Score of `B2` in `d2`.
    pub b: i64,
    /// Score of `B1` in `d3`.
    pub c: i64,
    /// Score of `B1` in `d4`.
    pub dd: i64,
    pub k1: i64,
    pub k2: i64,
}

impl BiasedQuadruple {
    pub fn new(map: &CombMap, b1: ClosedWalk, b2: ClosedWalk, d: usize) -> Result<BiasedQuadruple> {
        let d1 = biased_orientation(map, &b1, d)?;
        let d2 = biased_orientation(map, &b1.reversed(map), d)?;
        let d3 = biased_orientation(map, &b2, d)?;
        let d4 = biased_orientation(map, &b2.reversed(map), d)?;
        Ok(BiasedQuadruple {
            a: gamma_score(map, &d1, &b2)?,
            b: gamma_score(map, &d2, &b2)?,
            c: gamma_score(map, &d3, &b1)?,
            dd: gamma_score(map, &d4, &b1)?,
            k1: b1.len() as i64,
            k2: b2.len() as i64,
            b1,
            b2,
            d1,
            d2,
            d3,
            d4,
        })
    }

    /// Coefficients of `d1..d4` in the combination.
    pub fn coefficients(&self) -> [i64; 4] {
        let (a, b, c, dd, k2) = (self.a, self.b, self.c, self.dd, self.k2);
        let k = 2 * self.k1 * self.k2;
        match (a + b).signum() {
            -1 => [(2 * k + b * c) * k2, (2 * k - a * c) * k2, -(a + b) * k, 0],
            0 => [1, 1, 0, 0],
            _ => [(2 * k - b * dd) * k2, (2 * k + a * dd) * k2, 0, (a + b) * k],
        }
    }

    pub fn sigma(&self) -> i64 {
        self.coefficients().iter().sum()
    }
}

/// A d/(d-2)-orientation in which every dart on the left side of `cycle`
/// has weight 0, so that the cycle scores twice its length.
pub fn biased_orientation(map: &CombMap, cycle: &ClosedWalk, d: usize) -> Result<WeightedBiorientation> {
    let annulus = cut_along_cycle(map, cycle)?;
    let a = &annulus.map;
    let n = annulus.torus_darts;
    let outer = |x: usize| x >= n;
    let alpha_v: Vec<i64> =
        a.vertices().iter().map(|vs| if vs.iter().any(|&x| outer(x)) { 0 } else { d as i64 }).collect();
    let beta_e: Vec<i64> = a.edges().iter().map(|&[x, _]| if outer(x) { 0 } else { d as i64 - 2 }).collect();
    let w = find_alpha_beta(a, &alpha_v, &beta_e).map_err(|c| {
        Error::Infeasible(format!(
            "annulus has a vertex set with inner weight {} above {}; is the cycle shortest in its class?",
            c.inner_beta, c.alpha_sum
        ))
    })?;
    let res = WeightedBiorientation { weights: w.weights[..n].to_vec(), regime: Regime::N };
    if gamma_score(map, &res, cycle)? != 2 * cycle.len() as i64 {
        return Err(Error::Internal("biased orientation has the wrong score".into()));
    }
    Ok(res)
}

/// The σd/σ(d-2)-orientation with both basis scores zero.
pub fn combine_biased(map: &CombMap, quad: &BiasedQuadruple) -> Result<WeightedBiorientation> {
    let coef = quad.coefficients();
    if coef.iter().any(|&c| c < 0) {
        return Err(Error::Internal(format!("negative combination coefficient in {coef:?}")));
    }
    let ws = [&quad.d1, &quad.d2, &quad.d3, &quad.d4];
    let weights = (0..map.dart_count()).map(|x| (0..4).map(|i| coef[i] * ws[i].weights[x]).sum()).collect();
    let w = WeightedBiorientation { weights, regime: Regime::N };
    if gamma_score(map, &w, &quad.b1)? != 0 || gamma_score(map, &w, &quad.b2)? != 0 {
        return Err(Error::Internal("combination is not balanced on the basis".into()));
    }
    Ok(w)
}

fn require_d_toroidal(map: &CombMap, d: usize) -> Result<()> {
    if map.genus() != 1 || map.faces().iter().any(|f| f.len() != d) {
        return Err(Error::Precondition(format!("expected a toroidal {d}-angulation")));
    }
    let g = essential_girth(map)?;
    if g != d {
        return Err(Error::Precondition(format!("essential girth is {g}, expected {d}")));
    }
    Ok(())
}

/// The minimal balanced d/(d-2)-orientation of a toroidal d-angulation of
/// essential girth d.
pub fn balanced_dd2(frm: &FaceRootedMap, d: usize) -> Result<WeightedBiorientation> {
    balanced_dd2_from(frm, d, 0)
}

/// Same as [`balanced_dd2`], growing the homotopy basis from `root_vertex`.
pub fn balanced_dd2_from(frm: &FaceRootedMap, d: usize, root_vertex: usize) -> Result<WeightedBiorientation> {
    let map = &frm.map;
    require_d_toroidal(map, d)?;
    let basis = homology_basis_with(map, root_vertex)?;
    let (b1, b2) = shortest_basis_cycles(map, &basis)?;
    let quad = BiasedQuadruple::new(map, b1, b2, d)?;
    let sigma = quad.sigma();
    let min = minimize(frm, &combine_biased(map, &quad)?)?;
    if min.weights.iter().any(|w| w % sigma != 0) {
        return Err(Error::Internal(format!("minimal combination has a weight not divisible by {sigma}")));
    }
    Ok(WeightedBiorientation { weights: min.weights.iter().map(|w| w / sigma).collect(), regime: Regime::N })
}

/// Halves a minimal balanced orientation of a bipartite 2b-angulation.
pub fn halve_bipartite(frm: &FaceRootedMap, d: usize, w: &WeightedBiorientation) -> Result<WeightedBiorientation> {
    if d % 2 != 0 {
        return Err(Error::Precondition("halving needs an even face degree".into()));
    }
    if let Some(x) = w.weights.iter().position(|v| v % 2 != 0) {
        return Err(Error::Precondition(format!(
            "dart {x} has odd weight {}, so the map is not bipartite{}",
            w.weights[x],
            if frm.map.is_bipartite() { " (unexpected)" } else { "" }
        )));
    }
    Ok(WeightedBiorientation { weights: w.weights.iter().map(|v| v / 2).collect(), regime: w.regime })
}

/// The unique orientation with the Z-regime weight constraints whose
/// face-rooted map is a right orientation with root degree `d` and whose
/// mobile is balanced, or `None` if there is none.
pub fn canonical_z_orientation(frm: &FaceRootedMap, d: usize) -> Result<Option<WeightedBiorientation>> {
    if frm.root_degree() != d || frm.map.min_face_degree() < d {
        return Err(Error::Precondition(format!("root face must have degree {d} and all faces at least {d}")));
    }
    let spec = OrientationSpec::z_canonical(&frm.map, d);
    let mut hits = Vec::new();
    let mut failure = None;
    for_each_orientation(&frm.map, &spec, |w| {
        if !is_right_biorientation(frm, w) {
            return true;
        }
        match phi_plus(frm, w).and_then(|t| is_balanced_mobile(&t)) {
            Ok(true) => hits.push(w.clone()),
            Ok(false) => {}
            Err(e) => {
                failure = Some(e);
                return false;
            }
        }
        hits.len() < 2
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(hits.pop()),
        _ => Err(Error::Internal("two canonical orientations found".into())),
    }
}

/// Minimal balanced d/(d-2)-orientations found by exhaustive search.
pub fn balanced_minimal_by_search(frm: &FaceRootedMap, d: usize) -> Result<Vec<WeightedBiorientation>> {
    use crate::orientation::{is_balanced, BalanceMode};
    let spec = OrientationSpec::d_over_d2(&frm.map, d);
    let mut out = Vec::new();
    let mut failure = None;
    for_each_orientation(&frm.map, &spec, |w| {
        if is_minimal(frm, w) {
            match is_balanced(&frm.map, w, BalanceMode::Exhaustive) {
                Ok(true) => out.push(w.clone()),
                Ok(false) => {}
                Err(e) => failure = Some(e),
            }
        }
        failure.is_none()
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
