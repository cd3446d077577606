use super::{root_d_angle, ClosedWalk, CombMap, Dart, FaceRootedMap};
use crate::{Error, Result};

/// Planar annulus obtained by cutting a torus along a non-contractible cycle.
///
/// Torus darts keep their names; the cycle edges stay on the right copy of
/// the cycle and the left copy gets fresh darts numbered from the torus dart
/// count on. The special face is the hole bounded by the right copy, lying on
/// the left of the cycle.
#[derive(Clone, Debug)]
pub struct Annulus {
    pub map: CombMap,
    pub torus_darts: usize,
    pub cycle: ClosedWalk,
    /// Fresh darts of the left copy: `left_darts[i]` runs parallel to `cycle.darts[i]`.
    pub left_darts: Vec<Dart>,
    pub special_face: usize,
    pub outer_face: usize,
}

pub fn cut_along_cycle(map: &CombMap, cycle: &ClosedWalk) -> Result<Annulus> {
    if map.genus() != 1 || !cycle.is_vertex_simple(map) {
        return Err(Error::Precondition("cut_along_cycle needs a cycle of a toroidal map".into()));
    }
    let basis = super::homology_basis(map)?;
    if basis.homology_vector(cycle).is_zero() {
        return Err(Error::Precondition("cycle is contractible".into()));
    }
    let n = map.dart_count();
    let k = cycle.len();
    let c = &cycle.darts;
    let mut alpha: Vec<Dart> = map.alpha_perm().to_vec();
    let mut sigma: Vec<Dart> = map.sigma_perm().to_vec();
    alpha.resize(n + 2 * k, 0);
    sigma.resize(n + 2 * k, 0);
    let fresh = |i: usize| n + 2 * (i % k);
    let fresh_back = |i: usize| n + 2 * (i % k) + 1;
    for i in 0..k {
        alpha[fresh(i)] = fresh_back(i);
        alpha[fresh_back(i)] = fresh(i);
    }
    for i in 0..k {
        let out = c[i];
        let back = map.alpha(c[(i + k - 1) % k]);
        let first_left = map.sigma(out);
        sigma[out] = back;
        let prev_fresh_back = fresh_back(i + k - 1);
        if first_left == back {
            sigma[fresh(i)] = prev_fresh_back;
        } else {
            sigma[fresh(i)] = first_left;
            let mut y = first_left;
            while map.sigma(y) != back {
                y = map.sigma(y);
            }
            sigma[y] = prev_fresh_back;
        }
        sigma[prev_fresh_back] = fresh(i);
    }
    let annulus = CombMap::new(alpha, sigma)?;
    if annulus.genus() != 0 || annulus.num_faces() != map.num_faces() + 2 {
        return Err(Error::Internal("cutting did not produce an annulus".into()));
    }
    let special_face = annulus.face(map.alpha(c[0]));
    let outer_face = annulus.face(fresh(0));
    Ok(Annulus {
        torus_darts: n,
        cycle: cycle.clone(),
        left_darts: (0..k).map(fresh).collect(),
        special_face,
        outer_face,
        map: annulus,
    })
}

impl Annulus {
    /// Identifies the two copies of the cycle again.
    pub fn glue_back(&self) -> Result<CombMap> {
        let n = self.torus_darts;
        let k = self.cycle.len();
        let c = &self.cycle.darts;
        let mut sigma: Vec<Dart> = (0..n).map(|x| self.map.sigma(x)).collect();
        for i in 0..k {
            let out = c[i];
            let f = self.left_darts[i];
            let prev_back = self.left_darts[(i + k - 1) % k] + 1;
            let first_left = self.map.sigma(f);
            sigma[out] = if first_left == prev_back { self.map.alpha(c[(i + k - 1) % k]) } else { first_left };
            if first_left != prev_back {
                let mut y = first_left;
                while self.map.sigma(y) != prev_back {
                    y = self.map.sigma(y);
                }
                sigma[y] = self.map.alpha(c[(i + k - 1) % k]);
            }
        }
        let alpha = (0..n).map(|x| self.map.alpha(x)).collect();
        CombMap::new(alpha, sigma)
    }
}

/// Planar piece with an outer face `f1` (the face right of `outer`) and a
/// root corner `root` in the face `f0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskPiece {
    pub map: CombMap,
    pub root: Dart,
    pub outer: Dart,
}

impl DiskPiece {
    pub fn outer_face(&self) -> usize {
        self.map.face(self.outer)
    }

    /// Vertices not incident to the outer face.
    pub fn inner_vertex_count(&self) -> usize {
        let f1 = self.outer_face();
        let mut on = vec![false; self.map.num_vertices()];
        for &x in &self.map.faces()[f1] {
            on[self.map.vertex(x)] = true;
        }
        on.iter().filter(|b| !**b).count()
    }

    /// First outer-face dart met by the breadth-first traversal from the root.
    pub fn anchor(&self) -> Dart {
        let label = self.map.bfs_labels(self.root);
        let f1 = self.outer_face();
        *self.map.faces()[f1].iter().min_by_key(|&&x| label[x]).unwrap()
    }

    pub fn code(&self) -> Vec<u32> {
        let f1 = self.outer_face();
        self.map.rooted_code_with(self.root, |x| (self.map.face(x) == f1) as i64)
    }
}

#[derive(Clone, Debug)]
pub struct RootAngleCut {
    pub torus: FaceRootedMap,
    pub disk: DiskPiece,
}

/// Splits a map of M_d along its root d-angle into the torus side (rooted in
/// the new face) and the disk side (rooted at the original root corner).
pub fn cut_at_root_d_angle(frm: &FaceRootedMap, d: usize) -> Result<RootAngleCut> {
    let map = &frm.map;
    let angle = root_d_angle(frm, d)?;
    let w = &angle.walk.darts;
    let (torus, new_of) = map.remove_edges(&angle.region.edges)?;

    let mut interior = vec![false; map.dart_count()];
    for &e in &angle.region.edges {
        for x in map.edges()[e] {
            interior[x] = true;
        }
    }
    let mut ids: Vec<Option<usize>> = vec![None; map.dart_count()];
    let mut count = 0;
    for x in 0..map.dart_count() {
        if interior[x] || w.contains(&x) {
            ids[x] = Some(count);
            count += 1;
        }
    }
    let outer_id = |i: usize| count + (i % d);
    let total = count + d;
    let mut alpha = vec![0; total];
    let mut sigma = vec![0; total];
    for x in 0..map.dart_count() {
        if interior[x] {
            let id = ids[x].unwrap();
            alpha[id] = ids[map.alpha(x)].unwrap();
            if interior[map.sigma(x)] {
                sigma[id] = ids[map.sigma(x)].unwrap();
            }
        }
    }
    for i in 0..d {
        let xi = ids[w[i]].unwrap();
        alpha[xi] = outer_id(i);
        alpha[outer_id(i)] = xi;
        let back = map.alpha(w[(i + d - 1) % d]);
        let mut y = map.sigma(back);
        let mut prev = outer_id(i + d - 1);
        while y != w[i] {
            if !interior[y] {
                return Err(Error::Internal("walk touches its own interior".into()));
            }
            sigma[prev] = ids[y].unwrap();
            prev = ids[y].unwrap();
            y = map.sigma(y);
        }
        sigma[prev] = xi;
        sigma[xi] = outer_id(i + d - 1);
    }
    let disk_map = CombMap::new(alpha, sigma)?;
    if disk_map.genus() != 0 {
        return Err(Error::Internal("disk side is not planar".into()));
    }
    let disk = DiskPiece { root: ids[frm.root].unwrap(), outer: outer_id(0), map: disk_map };
    let anchor = disk.anchor();
    let pos = anchor - count;
    let torus_root = new_of[w[pos]].unwrap();
    Ok(RootAngleCut { torus: FaceRootedMap { map: torus, root: torus_root }, disk })
}

/// Inverse of [`cut_at_root_d_angle`].
pub fn glue_root_d_angle(torus: &FaceRootedMap, disk: &DiskPiece) -> Result<FaceRootedMap> {
    let l = &torus.map;
    let a = &disk.map;
    let f1 = disk.outer_face();
    let d = a.face_degree(f1);
    if torus.root_degree() != d {
        return Err(Error::Precondition("boundary lengths differ".into()));
    }
    let anchor = disk.anchor();
    let nl = l.dart_count();
    let mut image: Vec<Option<usize>> = vec![None; a.dart_count()];
    let mut partner = vec![None; a.dart_count()];
    let mut q = anchor;
    let mut z = torus.root;
    for _ in 0..d {
        image[a.alpha(q)] = Some(z);
        partner[q] = Some(z);
        q = a.phi(q);
        z = l.phi_inv(z);
    }
    let mut next = nl;
    for y in 0..a.dart_count() {
        if a.face(y) != f1 && image[y].is_none() {
            image[y] = Some(next);
            next += 1;
        }
    }
    let mut alpha: Vec<Dart> = (0..nl).map(|x| l.alpha(x)).collect();
    let mut sigma: Vec<Dart> = (0..nl).map(|x| l.sigma(x)).collect();
    alpha.resize(next, 0);
    sigma.resize(next, 0);
    for y in 0..a.dart_count() {
        if a.face(y) == f1 {
            let zq = partner[y].unwrap();
            sigma[l.alpha(zq)] = image[a.sigma(y)].unwrap();
        } else if image[y].unwrap() >= nl {
            let id = image[y].unwrap();
            alpha[id] = image[a.alpha(y)].unwrap();
            sigma[id] = image[a.sigma(y)].unwrap();
        }
    }
    let map = CombMap::new(alpha, sigma)?;
    FaceRootedMap::new(map, image[disk.root].unwrap())
}
