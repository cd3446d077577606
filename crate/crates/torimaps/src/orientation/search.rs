use super::{OrientationSpec, WeightedBiorientation};
use crate::map::CombMap;

struct Search<'a> {
    map: &'a CombMap,
    spec: &'a OrientationSpec,
    weights: Vec<i64>,
    vsum: Vec<i64>,
    vleft: Vec<i64>,
    fsum: Vec<i64>,
    fleft: Vec<i64>,
}

impl Search<'_> {
    fn vertex_ok(&self, v: usize) -> bool {
        let t = self.spec.alpha_v[v];
        self.vsum[v] <= t && self.vsum[v] + self.vleft[v] * self.spec.hi.max(0) >= t
    }

    fn face_ok(&self, f: usize) -> bool {
        match &self.spec.face_target {
            None => true,
            Some(t) => self.fsum[f] >= t[f] && self.fsum[f] + self.fleft[f] * self.spec.lo.min(0) <= t[f],
        }
    }

    fn set(&mut self, x: usize, w: i64, sign: i64) {
        let v = self.map.vertex(x);
        let f = self.map.face(x);
        self.vsum[v] += sign * w.max(0);
        self.vleft[v] -= sign;
        self.fsum[f] += sign * w.min(0);
        self.fleft[f] -= sign;
        if sign > 0 {
            self.weights[x] = w;
        }
    }

    fn run(&mut self, e: usize, visit: &mut dyn FnMut(&WeightedBiorientation) -> bool) -> bool {
        if e == self.map.num_edges() {
            let w = WeightedBiorientation { weights: self.weights.clone(), regime: self.spec.regime };
            return visit(&w);
        }
        let [x, y] = self.map.edges()[e];
        let beta = self.spec.beta_e[e];
        let lo = if self.spec.regime == super::Regime::N { self.spec.lo.max(0) } else { self.spec.lo };
        let (a, b) = (lo.max(beta - self.spec.hi), self.spec.hi.min(beta - lo));
        for wx in a..=b {
            let wy = beta - wx;
            self.set(x, wx, 1);
            self.set(y, wy, 1);
            let ok = [x, y].iter().all(|&z| self.vertex_ok(self.map.vertex(z)) && self.face_ok(self.map.face(z)));
            let go_on = !ok || self.run(e + 1, visit);
            self.set(y, wy, -1);
            self.set(x, wx, -1);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Visits every weight assignment meeting `spec` in a fixed order; the
/// visitor returns `false` to stop early.
pub fn for_each_orientation(map: &CombMap, spec: &OrientationSpec, mut visit: impl FnMut(&WeightedBiorientation) -> bool) {
    let mut s = Search {
        map,
        spec,
        weights: vec![0; map.dart_count()],
        vsum: vec![0; map.num_vertices()],
        vleft: (0..map.num_vertices()).map(|v| map.vertex_degree(v) as i64).collect(),
        fsum: vec![0; map.num_faces()],
        fleft: (0..map.num_faces()).map(|f| map.face_degree(f) as i64).collect(),
    };
    s.run(0, &mut visit);
}

pub fn enumerate_orientations(map: &CombMap, spec: &OrientationSpec) -> Vec<WeightedBiorientation> {
    let mut out = Vec::new();
    for_each_orientation(map, spec, |w| {
        out.push(w.clone());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::find_alpha_beta;

    #[test]
    fn plain_orientations_of_one_vertex_triangulation() {
        let m = CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap();
        let all = enumerate_orientations(&m, &OrientationSpec::plain(&m, vec![3]));
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|w| w.satisfies(&m, &OrientationSpec::plain(&m, vec![3]))));
        let none = enumerate_orientations(&m, &OrientationSpec::plain(&m, vec![2]));
        assert!(none.is_empty());
        assert!(find_alpha_beta(&m, &[2], &[1, 1, 1]).is_err());
    }
}
