use super::{essential_girth, homology_basis, ClosedWalk, CombMap, FaceRootedMap, HomotopyBasis};
use crate::{Error, Result};

/// Open region: faces together with the edges and vertices strictly inside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub faces: Vec<usize>,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl Region {
    pub fn contains_face(&self, f: usize) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        subset(&self.faces, &other.faces) && subset(&self.edges, &other.edges) && subset(&self.vertices, &other.vertices)
    }

    pub fn is_disjoint_from(&self, other: &Region) -> bool {
        self.faces.iter().all(|f| !other.contains_face(*f))
    }
}

/// Region on the right of a contractible non-repetitive closed walk; fails
/// unless that region is an open disk.
pub fn enclosed_region(map: &CombMap, basis: &HomotopyBasis, walk: &ClosedWalk) -> Result<Region> {
    if !walk.is_non_repetitive() {
        return Err(Error::Precondition("walk repeats a dart".into()));
    }
    if !basis.homology_vector(walk).is_zero() {
        return Err(Error::Precondition("walk is not contractible".into()));
    }
    let mut walk_dart = vec![false; map.dart_count()];
    let mut walk_edge = vec![false; map.num_edges()];
    for &x in &walk.darts {
        walk_dart[x] = true;
        walk_edge[map.edge(x)] = true;
    }
    let k = walk.len();
    for i in 0..k {
        let mut y = map.sigma(map.alpha(walk.darts[(i + k - 1) % k]));
        while y != walk.darts[i] {
            if walk_dart[y] {
                return Err(Error::Precondition("walk crosses itself".into()));
            }
            y = map.sigma(y);
        }
    }
    let mut inside = vec![false; map.num_faces()];
    let start = map.face(walk.darts[0]);
    inside[start] = true;
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for &y in &map.faces()[f] {
            if walk_edge[map.edge(y)] {
                continue;
            }
            let g = map.face_left(y);
            if !inside[g] {
                inside[g] = true;
                stack.push(g);
            }
        }
    }
    for &x in &walk.darts {
        if !inside[map.face(x)] {
            return Err(Error::Precondition("region on the right is disconnected".into()));
        }
        if !walk_dart[map.alpha(x)] && inside[map.face_left(x)] {
            return Err(Error::Precondition("walk does not separate its two sides".into()));
        }
    }
    let faces: Vec<usize> = (0..map.num_faces()).filter(|&f| inside[f]).collect();
    let edges: Vec<usize> =
        (0..map.num_edges()).filter(|&e| !walk_edge[e] && inside[map.face(map.edges()[e][0])]).collect();
    let mut on_walk = vec![false; map.num_vertices()];
    for &x in &walk.darts {
        on_walk[map.vertex(x)] = true;
    }
    let vertices: Vec<usize> = (0..map.num_vertices())
        .filter(|&v| !on_walk[v] && inside[map.face(map.vertices()[v][0])])
        .collect();
    let chi = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
    if chi != 1 {
        return Err(Error::Precondition(format!("region has Euler characteristic {chi}, not a disk")));
    }
    Ok(Region { faces, edges, vertices })
}

/// All non-repetitive closed walks of length `k` with a disk on their right,
/// each listed once starting from its smallest dart.
pub(crate) fn closed_disk_walks(map: &CombMap, basis: &HomotopyBasis, k: usize, first_only: bool) -> Vec<(ClosedWalk, Region)> {
    let mut out = Vec::new();
    for s in 0..map.dart_count() {
        let mut path = vec![s];
        walk_search(map, basis, s, k, &mut path, first_only, &mut out);
        if first_only && !out.is_empty() {
            break;
        }
    }
    out
}

/// Every contractible non-repetitive closed walk of length `k` bounding a
/// disk on its right, with that disk.
pub fn disk_walks(map: &CombMap, k: usize) -> Result<Vec<(ClosedWalk, Region)>> {
    let basis = homology_basis(map)?;
    Ok(closed_disk_walks(map, &basis, k, false))
}

fn walk_search(
    map: &CombMap,
    basis: &HomotopyBasis,
    s: usize,
    k: usize,
    path: &mut Vec<usize>,
    first_only: bool,
    out: &mut Vec<(ClosedWalk, Region)>,
) {
    let last = *path.last().unwrap();
    if path.len() == k {
        if map.head(last) == map.vertex(s) {
            let walk = ClosedWalk { darts: path.clone() };
            if let Ok(region) = enclosed_region(map, basis, &walk) {
                out.push((walk, region));
            }
        }
        return;
    }
    for y in map.rotation_from(map.alpha(last)) {
        if y > s && !path.contains(&y) {
            path.push(y);
            walk_search(map, basis, s, k, path, first_only, out);
            path.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct DAngle {
    pub walk: ClosedWalk,
    pub region: Region,
    pub maximal: bool,
}

/// Every d-angle of the map, with its interior and maximality flag.
pub fn d_angles(map: &CombMap, d: usize) -> Result<Vec<DAngle>> {
    let basis = homology_basis(map)?;
    let found = closed_disk_walks(map, &basis, d, false);
    let mut out = Vec::with_capacity(found.len());
    for (i, (walk, region)) in found.iter().enumerate() {
        let maximal = !found
            .iter()
            .enumerate()
            .any(|(j, (_, other))| j != i && other != region && region.is_subset_of(other));
        out.push(DAngle { walk: walk.clone(), region: region.clone(), maximal });
    }
    Ok(out)
}

pub fn root_contour(frm: &FaceRootedMap) -> ClosedWalk {
    ClosedWalk { darts: frm.map.face_walk_from(frm.root) }
}

/// The unique maximal d-angle whose interior contains the root face.
pub fn root_d_angle(frm: &FaceRootedMap, d: usize) -> Result<DAngle> {
    if frm.root_degree() != d || essential_girth(&frm.map)? != d {
        return Err(Error::Precondition(format!("map is not in M_{d}")));
    }
    let rf = frm.root_face();
    let hits: Vec<DAngle> = d_angles(&frm.map, d)?
        .into_iter()
        .filter(|a| a.maximal && a.region.contains_face(rf))
        .collect();
    if hits.len() != 1 {
        return Err(Error::Internal(format!("{} maximal d-angles enclose the root face", hits.len())));
    }
    Ok(hits.into_iter().next().unwrap())
}

/// Essential girth d, root face of degree d, and the root contour is a maximal d-angle.
pub fn in_l_d(frm: &FaceRootedMap, d: usize) -> Result<bool> {
    if frm.map.genus() != 1 || frm.root_degree() != d || essential_girth(&frm.map)? != d {
        return Ok(false);
    }
    let a = root_d_angle(frm, d)?;
    Ok(a.walk.normalized() == root_contour(frm).normalized())
}

/// A d-toroidal map (every face of degree d, essential girth d) in which the
/// root contour is the only d-angle enclosing the root face.
pub fn in_f_d(frm: &FaceRootedMap, d: usize) -> Result<bool> {
    if frm.map.faces().iter().any(|f| f.len() != d) {
        return Ok(false);
    }
    in_l_d(frm, d)
}
