use super::WeightedBiorientation;
use crate::map::{CombMap, Dart, FaceRootedMap};
use crate::{Error, Result};

/// A weighted biorientation blown up into parallel plain edges.
///
/// Dart `x` of the source map becomes the copies `offset[x] .. offset[x] +
/// beta(x)`, listed in counterclockwise order around its vertex; the first
/// `w(x)` copies are outgoing.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub map: CombMap,
    pub outgoing: Vec<bool>,
    pub offset: Vec<usize>,
    pub origin: Vec<Dart>,
}

pub fn beta_expansion(map: &CombMap, w: &WeightedBiorientation) -> Result<Expansion> {
    let n = map.dart_count();
    let beta = |x: Dart| w.weights[x] + w.weights[map.alpha(x)];
    for x in 0..n {
        if w.weights[x] < 0 {
            return Err(Error::Precondition("expansion needs non-negative weights".into()));
        }
        if beta(x) == 0 {
            return Err(Error::Precondition("expansion needs positive edge weights".into()));
        }
    }
    let mut offset = vec![0; n];
    let mut origin = Vec::new();
    for x in 0..n {
        offset[x] = origin.len();
        origin.extend(std::iter::repeat_n(x, beta(x) as usize));
    }
    let total = origin.len();
    let mut alpha = vec![0; total];
    let mut sigma = vec![0; total];
    let mut outgoing = vec![false; total];
    for x in 0..n {
        let b = beta(x) as usize;
        let y = map.alpha(x);
        for j in 0..b {
            let c = offset[x] + j;
            alpha[c] = offset[y] + (b - 1 - j);
            outgoing[c] = (j as i64) < w.weights[x];
            sigma[c] = if j + 1 < b { c + 1 } else { offset[map.sigma(x)] };
        }
    }
    Ok(Expansion { map: CombMap::new(alpha, sigma)?, outgoing, offset, origin })
}

impl Expansion {
    /// Copy of `x` whose face on the right is the image of the face of `x`.
    pub fn image(&self, x: Dart) -> Dart {
        self.offset[x]
    }

    pub fn rooted(&self, frm: &FaceRootedMap) -> FaceRootedMap {
        FaceRootedMap { map: self.map.clone(), root: self.image(frm.root) }
    }

    pub fn orientation(&self) -> WeightedBiorientation {
        WeightedBiorientation::from_outgoing(&self.outgoing)
    }

    /// Collapses parallel groups back, counting outgoing copies.
    pub fn contract(&self, outgoing: &[bool], dart_count: usize) -> WeightedBiorientation {
        let mut weights = vec![0; dart_count];
        for (c, &o) in outgoing.iter().enumerate() {
            weights[self.origin[c]] += o as i64;
        }
        WeightedBiorientation { weights, regime: super::Regime::N }
    }
}
