//! Rotation-system maps.
//!
//! A dart `x` sits at vertex `vertex(x)` and points along its edge towards
//! `head(x)`. `sigma` is the counterclockwise rotation around a vertex and the
//! face permutation is `phi = sigma ∘ alpha`. With a counterclockwise `sigma`
//! the `phi`-orbit of `x` runs along the face lying on the right of `x`; every
//! left/right notion in the crate is derived from this.

mod cover;
mod cut;
mod io;
mod region;
mod walk;

pub use cover::{essential_girth, girth, homology_basis, homology_basis_with, shortest_basis_cycles, shortest_cycle_in_class,
    shortest_contractible_walk_len, HomologyVector, HomotopyBasis};
pub use cut::{cut_along_cycle, cut_at_root_d_angle, glue_root_d_angle, Annulus, DiskPiece, RootAngleCut};
pub use io::{parse_map, write_map, ParsedMap};
pub use region::{d_angles, disk_walks, enclosed_region, in_f_d, in_l_d, root_contour, root_d_angle, DAngle, Region};
pub use walk::{simple_cycles, ClosedWalk};

use crate::{Error, Result};
use std::collections::VecDeque;

pub type Dart = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombMap {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    vertex_of: Vec<usize>,
    face_of: Vec<usize>,
    edge_of: Vec<usize>,
    vertices: Vec<Vec<Dart>>,
    faces: Vec<Vec<Dart>>,
    edges: Vec<[Dart; 2]>,
}

fn orbits(n: usize, next: impl Fn(usize) -> usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut of = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let mut x = start;
        while of[x] == usize::MAX {
            of[x] = id;
            cyc.push(x);
            x = next(x);
        }
        cycles.push(cyc);
    }
    (of, cycles)
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl CombMap {
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<CombMap> {
        let n = alpha.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidMap(format!("dart count {n} must be positive and even")));
        }
        if sigma.len() != n {
            return Err(Error::InvalidMap("alpha and sigma have different sizes".into()));
        }
        for (x, &y) in alpha.iter().enumerate() {
            if y >= n || y == x || alpha[y] != x {
                return Err(Error::InvalidMap(format!("alpha is not a fixed-point-free involution at dart {x}")));
            }
        }
        if !is_permutation(&sigma) {
            return Err(Error::InvalidMap("sigma is not a permutation".into()));
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for y in [alpha[x], sigma[x]] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidMap("map is not connected".into()));
        }
        Ok(Self::build_unchecked(alpha, sigma))
    }

    fn build_unchecked(alpha: Vec<Dart>, sigma: Vec<Dart>) -> CombMap {
        let n = alpha.len();
        let mut sigma_inv = vec![0; n];
        for (x, &y) in sigma.iter().enumerate() {
            sigma_inv[y] = x;
        }
        let (vertex_of, vertices) = orbits(n, |x| sigma[x]);
        let (face_of, faces) = orbits(n, |x| sigma[alpha[x]]);
        let mut edge_of = vec![usize::MAX; n];
        let mut edges = Vec::new();
        for x in 0..n {
            if edge_of[x] == usize::MAX {
                edge_of[x] = edges.len();
                edge_of[alpha[x]] = edges.len();
                edges.push([x, alpha[x]]);
            }
        }
        CombMap { alpha, sigma, sigma_inv, vertex_of, face_of, edge_of, vertices, faces, edges }
    }

    /// Builds a map from edge pairs and rotation cycles; darts missing from
    /// every cycle become degree-one vertices.
    pub fn from_cycles(dart_count: usize, alpha_pairs: &[(Dart, Dart)], sigma_cycles: &[Vec<Dart>]) -> Result<CombMap> {
        let mut alpha = vec![usize::MAX; dart_count];
        for &(a, b) in alpha_pairs {
            if a >= dart_count || b >= dart_count || alpha[a] != usize::MAX || alpha[b] != usize::MAX || a == b {
                return Err(Error::InvalidMap(format!("bad alpha pair {a}-{b}")));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if alpha.iter().any(|&y| y == usize::MAX) {
            return Err(Error::InvalidMap("alpha does not cover every dart".into()));
        }
        let mut sigma: Vec<usize> = (0..dart_count).collect();
        let mut used = vec![false; dart_count];
        for cyc in sigma_cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= dart_count || used[x] {
                    return Err(Error::InvalidMap(format!("dart {x} repeated or out of range in sigma")));
                }
                used[x] = true;
                sigma[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        CombMap::new(alpha, sigma)
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }
    pub fn alpha(&self, x: Dart) -> Dart {
        self.alpha[x]
    }
    pub fn sigma(&self, x: Dart) -> Dart {
        self.sigma[x]
    }
    pub fn sigma_inv(&self, x: Dart) -> Dart {
        self.sigma_inv[x]
    }
    pub fn phi(&self, x: Dart) -> Dart {
        self.sigma[self.alpha[x]]
    }
    pub fn phi_inv(&self, x: Dart) -> Dart {
        self.alpha[self.sigma_inv[x]]
    }
    pub fn alpha_perm(&self) -> &[Dart] {
        &self.alpha
    }
    pub fn sigma_perm(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn vertex(&self, x: Dart) -> usize {
        self.vertex_of[x]
    }
    pub fn head(&self, x: Dart) -> usize {
        self.vertex_of[self.alpha[x]]
    }
    /// Face on the right of `x`, i.e. the `phi`-orbit containing `x`.
    pub fn face(&self, x: Dart) -> usize {
        self.face_of[x]
    }
    pub fn face_left(&self, x: Dart) -> usize {
        self.face_of[self.alpha[x]]
    }
    pub fn edge(&self, x: Dart) -> usize {
        self.edge_of[x]
    }

    /// Darts around each vertex in counterclockwise order.
    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }
    /// Darts of each face in `phi` order (face on their right).
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }
    pub fn edges(&self) -> &[[Dart; 2]] {
        &self.edges
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }
    pub fn vertex_degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }
    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn is_loop(&self, x: Dart) -> bool {
        self.vertex(x) == self.head(x)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.num_vertices()];
        for s in 0..self.num_vertices() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &x in &self.vertices[v] {
                    let w = self.head(x);
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dual map on the same darts, with rotation `phi`.
    pub fn dual(&self) -> CombMap {
        let phi: Vec<Dart> = (0..self.dart_count()).map(|x| self.phi(x)).collect();
        Self::build_unchecked(self.alpha.clone(), phi)
    }

    /// Breadth-first relabelling from `root`: returns the new label of every dart.
    pub fn bfs_labels(&self, root: Dart) -> Vec<usize> {
        let n = self.dart_count();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root] = 0;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for y in [self.alpha[x], self.sigma[x]] {
                if label[y] == usize::MAX {
                    label[y] = order.len();
                    order.push(y);
                }
            }
        }
        label
    }

    /// Isomorphism-invariant code of the map rooted at `root`.
    pub fn rooted_code(&self, root: Dart) -> Vec<u32> {
        self.rooted_code_with(root, |_| 0)
    }

    /// Rooted code extended by a per-dart decoration (weights, markers).
    pub fn rooted_code_with(&self, root: Dart, deco: impl Fn(Dart) -> i64) -> Vec<u32> {
        let label = self.bfs_labels(root);
        let mut inv = vec![0; label.len()];
        for (x, &l) in label.iter().enumerate() {
            inv[l] = x;
        }
        let mut code = Vec::with_capacity(3 * inv.len());
        for &x in &inv {
            code.push(label[self.alpha[x]] as u32);
            code.push(label[self.sigma[x]] as u32);
            code.push(deco(x) as i32 as u32);
        }
        code
    }

    /// The same map with darts renamed so that `root` becomes 0 (BFS order).
    pub fn relabeled_from(&self, root: Dart) -> (CombMap, Vec<usize>) {
        let label = self.bfs_labels(root);
        (self.relabeled(&label), label)
    }

    /// Renames every dart `x` to `label[x]`.
    pub fn relabeled(&self, label: &[usize]) -> CombMap {
        let n = self.dart_count();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for x in 0..n {
            alpha[label[x]] = label[self.alpha[x]];
            sigma[label[x]] = label[self.sigma[x]];
        }
        Self::build_unchecked(alpha, sigma)
    }

    /// Deletes the given edges. Returns the smaller map and, for every old
    /// dart, its new name if it survived.
    pub fn remove_edges(&self, removed: &[usize]) -> Result<(CombMap, Vec<Option<Dart>>)> {
        let n = self.dart_count();
        let mut keep = vec![true; n];
        for &e in removed {
            for x in self.edges[e] {
                keep[x] = false;
            }
        }
        let mut new_of = vec![None; n];
        let mut old_of = Vec::new();
        for x in 0..n {
            if keep[x] {
                new_of[x] = Some(old_of.len());
                old_of.push(x);
            }
        }
        if old_of.is_empty() {
            return Err(Error::InvalidMap("removing every edge".into()));
        }
        let mut alpha = vec![0; old_of.len()];
        let mut sigma = vec![0; old_of.len()];
        for (i, &x) in old_of.iter().enumerate() {
            alpha[i] = new_of[self.alpha[x]].expect("edges are removed whole");
            let mut y = self.sigma[x];
            while !keep[y] {
                y = self.sigma[y];
            }
            sigma[i] = new_of[y].unwrap();
        }
        Ok((CombMap::new(alpha, sigma)?, new_of))
    }

    /// The darts of a face in `phi` order starting from `x`.
    pub fn face_walk_from(&self, x: Dart) -> Vec<Dart> {
        let mut out = vec![x];
        let mut y = self.phi(x);
        while y != x {
            out.push(y);
            y = self.phi(y);
        }
        out
    }

    /// Rotation around the vertex of `x`, starting at `x`.
    pub fn rotation_from(&self, x: Dart) -> Vec<Dart> {
        let mut out = vec![x];
        let mut y = self.sigma(x);
        while y != x {
            out.push(y);
            y = self.sigma(y);
        }
        out
    }

    pub fn min_face_degree(&self) -> usize {
        self.faces.iter().map(|f| f.len()).min().unwrap_or(0)
    }
}

/// A map with a marked root dart. The root face is the face on the right of
/// the root dart; for corner-rooted maps the dart also marks the root corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceRootedMap {
    pub map: CombMap,
    pub root: Dart,
}

impl FaceRootedMap {
    pub fn new(map: CombMap, root: Dart) -> Result<FaceRootedMap> {
        if root >= map.dart_count() {
            return Err(Error::InvalidMap(format!("root dart {root} out of range")));
        }
        Ok(FaceRootedMap { map, root })
    }

    pub fn root_face(&self) -> usize {
        self.map.face(self.root)
    }

    pub fn root_degree(&self) -> usize {
        self.map.face_degree(self.root_face())
    }

    /// Code identifying the map up to isomorphisms preserving the root face.
    pub fn face_rooted_code(&self) -> Vec<u32> {
        self.face_rooted_code_with(|_| 0)
    }

    pub fn face_rooted_code_with(&self, deco: impl Fn(Dart) -> i64 + Copy) -> Vec<u32> {
        self.map
            .face_walk_from(self.root)
            .into_iter()
            .map(|r| self.map.rooted_code_with(r, deco))
            .min()
            .unwrap()
    }

    pub fn rooted_code(&self) -> Vec<u32> {
        self.map.rooted_code(self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_vertex_triangulation() -> CombMap {
        CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap()
    }

    #[test]
    fn single_edge_is_planar() {
        let m = CombMap::from_cycles(2, &[(0, 1)], &[vec![0], vec![1]]).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces(), m.genus()), (2, 1, 1, 0));
    }

    #[test]
    fn two_loops_on_torus() {
        let m = CombMap::from_cycles(4, &[(0, 1), (2, 3)], &[vec![0, 2, 1, 3]]).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces(), m.genus()), (1, 2, 1, 1));
    }

    #[test]
    fn one_vertex_triangulation_has_two_triangles() {
        let m = one_vertex_triangulation();
        assert_eq!(m.genus(), 1);
        assert_eq!(m.num_faces(), 2);
        assert!(m.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CombMap::new(vec![0, 1], vec![0, 1]).is_err());
        assert!(CombMap::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3]).is_err());
        assert!(CombMap::new(vec![1, 0], vec![0, 0]).is_err());
    }

    #[test]
    fn dual_swaps_vertices_and_faces() {
        let m = one_vertex_triangulation();
        let d = m.dual();
        assert_eq!(d.num_vertices(), m.num_faces());
        assert_eq!(d.num_faces(), m.num_vertices());
        assert_eq!(d.genus(), 1);
    }

    #[test]
    fn rooted_code_is_label_invariant() {
        let m = one_vertex_triangulation();
        let (r, label) = m.relabeled_from(3);
        assert_eq!(r.rooted_code(0), m.rooted_code(3));
        assert_eq!(label[3], 0);
    }
}
