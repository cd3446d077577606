use super::{Color, Mobile};
use crate::map::{simple_cycles, Dart};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    U,
    UBal,
    HatU,
    HatUBal,
    V,
    VBal,
    HatV,
    HatVBal,
}

impl FamilyTag {
    pub fn balanced(self) -> bool {
        matches!(self, FamilyTag::UBal | FamilyTag::HatUBal | FamilyTag::VBal | FamilyTag::HatVBal)
    }

    pub fn hat(self) -> bool {
        matches!(self, FamilyTag::HatU | FamilyTag::HatUBal | FamilyTag::HatV | FamilyTag::HatVBal)
    }
}

/// Family membership test; `param` is d for the plain families and b for
/// the hat families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MobileFamilyCheck {
    pub tag: FamilyTag,
    pub param: i64,
}

fn side_sum(t: &Mobile, cycle: &[Dart], factor: i64) -> Result<i64> {
    let k = cycle.len();
    let mut score = 0;
    for i in 0..k {
        let out = cycle[i];
        let back = t.alpha(cycle[(i + k - 1) % k]).unwrap();
        if t.vertex(out) != t.vertex(back) {
            return Err(Error::Precondition("mobile cycle is not closed".into()));
        }
        let black = t.dart_color(out) == Color::Black;
        let unit = |y: Dart| factor * t.weights[y] + black as i64;
        let mut y = t.sigma(out);
        while y != back {
            score -= unit(y);
            y = t.sigma(y);
        }
        let mut y = t.sigma(back);
        while y != out {
            score += unit(y);
            y = t.sigma(y);
        }
    }
    Ok(score)
}

/// Right-minus-left score of a directed cycle of the mobile: side weights plus
/// the number of side darts at black vertices, buds included.
pub fn mobile_gamma_score(t: &Mobile, cycle: &[Dart]) -> Result<i64> {
    side_sum(t, cycle, 1)
}

/// Every directed simple cycle of the mobile, as mobile darts.
pub fn mobile_cycles(t: &Mobile) -> Result<Vec<Vec<Dart>>> {
    let (skel, darts) = t.skeleton()?;
    Ok(simple_cycles(&skel).into_iter().map(|c| c.darts.iter().map(|&x| darts[x]).collect()).collect())
}

fn balanced_with(t: &Mobile, factor: i64) -> Result<bool> {
    if t.genus() != 1 {
        return Err(Error::Precondition("balancedness is defined for genus 1 mobiles".into()));
    }
    for c in mobile_cycles(t)? {
        if side_sum(t, &c, factor)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_balanced_mobile(t: &Mobile) -> Result<bool> {
    balanced_with(t, 1)
}

/// Balancedness of the mobile with all weights doubled.
pub fn is_balanced_doubled(t: &Mobile) -> Result<bool> {
    balanced_with(t, 2)
}

pub fn doubled(t: &Mobile) -> Mobile {
    t.with_weights(t.weights.iter().map(|w| 2 * w).collect())
}

/// Halves every weight, or `None` if some weight is odd.
pub fn halved(t: &Mobile) -> Option<Mobile> {
    t.weights.iter().all(|w| w % 2 == 0).then(|| t.with_weights(t.weights.iter().map(|w| w / 2).collect()))
}

pub fn check_family(t: &Mobile, check: MobileFamilyCheck) -> bool {
    let p = check.param;
    let tag = check.tag;
    let (vertex_w, edge_w, excess) = if tag.hat() { (p, p - 1, 2 * p) } else { (p, p - 2, p) };
    if t.genus() != 1 || t.num_faces() != 1 || t.excess() != excess {
        return false;
    }
    for x in 0..t.dart_count() {
        let w = t.weights[x];
        let ok = match t.dart_color(x) {
            Color::White => w > 0,
            Color::Black if t.is_bud(x) => w == 0,
            Color::Black => w <= 0,
        };
        if !ok {
            return false;
        }
    }
    if t.vertices_of(Color::White).any(|v| t.vertex_weight(v) != vertex_w) {
        return false;
    }
    if t.edges().iter().any(|&[x, y]| t.weights[x] + t.weights[y] != edge_w) {
        return false;
    }
    let black_ok = match tag {
        FamilyTag::U | FamilyTag::UBal => {
            t.vertices_of(Color::Black).all(|v| t.degree(v) as i64 == p && t.vertex_weight(v) == 0)
        }
        FamilyTag::HatU | FamilyTag::HatUBal => {
            t.vertices_of(Color::Black).all(|v| t.degree(v) as i64 == 2 * p && t.vertex_weight(v) == 0)
        }
        FamilyTag::V | FamilyTag::VBal => {
            t.weights.iter().all(|&w| (-2..=p).contains(&w))
                && t.vertices_of(Color::Black).all(|v| t.vertex_weight(v) == p - t.degree(v) as i64)
        }
        FamilyTag::HatV | FamilyTag::HatVBal => {
            t.weights.iter().all(|&w| (-1..=p).contains(&w))
                && t.vertices_of(Color::Black)
                    .all(|v| t.degree(v) % 2 == 0 && t.vertex_weight(v) == p - (t.degree(v) / 2) as i64)
        }
    };
    if !black_ok {
        return false;
    }
    if tag.balanced() {
        let bal = if tag.hat() { is_balanced_doubled(t) } else { is_balanced_mobile(t) };
        return bal.unwrap_or(false);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::phi_plus;
    use crate::map::{CombMap, FaceRootedMap};
    use crate::orientation::WeightedBiorientation;

    #[test]
    fn triangulation_image_is_a_balanced_u3_mobile() {
        let m = CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap();
        let mut out = vec![false; 6];
        for &x in &m.faces()[m.face(0)] {
            out[x] = true;
        }
        let frm = FaceRootedMap::new(m, 0).unwrap();
        let t = phi_plus(&frm, &WeightedBiorientation::from_outgoing(&out)).unwrap();
        assert!(check_family(&t, MobileFamilyCheck { tag: FamilyTag::U, param: 3 }));
        let cycles = mobile_cycles(&t).unwrap();
        assert!(!cycles.is_empty() && cycles.len() <= 6);
        for c in &cycles {
            let rev: Vec<Dart> = c.iter().rev().map(|&x| t.alpha(x).unwrap()).collect();
            assert_eq!(mobile_gamma_score(&t, c).unwrap(), -mobile_gamma_score(&t, &rev).unwrap());
        }
    }
}
