use crate::map::{essential_girth, girth, in_f_d, in_l_d, CombMap, DiskPiece, FaceRootedMap};
use crate::{Error, Result};

const NONE: usize = usize::MAX;

/// Allowed face degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceRule {
    /// Every face has degree d.
    All(usize),
    /// Every face has even degree at least the bound.
    EvenAtLeast(usize),
    /// The root face has the given degree, the others at least `min`.
    RootThenAtLeast { root: usize, min: usize },
    /// Every face has degree at least the bound.
    AtLeast(usize),
    /// A single face of the given degree (unicellular maps).
    Single(usize),
}

impl FaceRule {
    fn root_degrees(&self, cap: usize) -> Vec<usize> {
        match *self {
            FaceRule::All(d) | FaceRule::Single(d) => vec![d],
            FaceRule::RootThenAtLeast { root, .. } => vec![root],
            FaceRule::EvenAtLeast(m) => (m.max(1)..=cap).filter(|k| k % 2 == 0).collect(),
            FaceRule::AtLeast(m) => (m.max(1)..=cap).collect(),
        }
    }

    fn other_degrees(&self, cap: usize) -> Vec<usize> {
        match *self {
            FaceRule::All(d) => vec![d],
            FaceRule::Single(_) => vec![],
            FaceRule::RootThenAtLeast { min, .. } | FaceRule::AtLeast(min) => (min.max(1)..=cap).collect(),
            FaceRule::EvenAtLeast(m) => (m.max(1)..=cap).filter(|k| k % 2 == 0).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    EssentialGirth(usize),
    GirthAtLeast(usize),
    Bipartite,
    /// Essential girth d and root face of degree d.
    InM(usize),
    InL(usize),
    InF(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rooting {
    /// One output per rooted map (root dart 0).
    Corner,
    /// One output per map with a distinguished root face.
    Face,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub genus: usize,
    pub vertices: usize,
    pub max_edges: usize,
    pub faces: FaceRule,
    pub filters: Vec<Filter>,
    pub rooting: Rooting,
}

/// Largest dart count accepted by the generators.
pub const DEFAULT_DART_CAP: usize = 32;

impl GenSpec {
    pub fn new(genus: usize, vertices: usize, max_edges: usize, faces: FaceRule) -> GenSpec {
        GenSpec { genus, vertices, max_edges, faces, filters: Vec::new(), rooting: Rooting::Corner }
    }

    pub fn filter(mut self, f: Filter) -> GenSpec {
        self.filters.push(f);
        self
    }

    pub fn face_rooted(mut self) -> GenSpec {
        self.rooting = Rooting::Face;
        self
    }
}

struct Gluing<'a> {
    genus: usize,
    vertices: usize,
    cap: usize,
    others: Vec<usize>,
    alpha: Vec<usize>,
    phi: Vec<usize>,
    visit: &'a mut dyn FnMut(CombMap),
}

impl Gluing<'_> {
    /// Vertices whose rotation is complete, and a lower bound on the genus of
    /// any completion.
    fn partial(&self) -> (usize, i64) {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut closed = 0;
        for s in 0..n {
            if seen[s] || self.alpha[s] == NONE {
                continue;
            }
            let mut x = s;
            let mut ok = true;
            loop {
                seen[x] = true;
                if self.alpha[x] == NONE {
                    ok = false;
                    break;
                }
                x = self.phi[self.alpha[x]];
                if x == s {
                    break;
                }
                if seen[x] {
                    ok = false;
                    break;
                }
            }
            if ok {
                closed += 1;
            }
        }
        let mut on_boundary = vec![false; n];
        let mut boundary = 0;
        let mut open = 0;
        let mut matched = 0;
        for x in 0..n {
            if self.alpha[x] == NONE {
                open += 1;
            } else {
                matched += 1;
            }
        }
        for s in 0..n {
            if self.alpha[s] != NONE || on_boundary[s] {
                continue;
            }
            boundary += 1;
            let mut x = s;
            while !on_boundary[x] {
                on_boundary[x] = true;
                let mut z = self.phi[x];
                while self.alpha[z] != NONE {
                    z = self.phi[self.alpha[z]];
                }
                x = z;
            }
        }
        let faces = self.faces();
        let edges = matched / 2 + open;
        let chi = (closed + open) as i64 - edges as i64 + faces as i64;
        ((closed), (2 - boundary as i64 - chi) / 2)
    }

    fn faces(&self) -> usize {
        let n = self.phi.len();
        let mut seen = vec![false; n];
        let mut f = 0;
        for s in 0..n {
            if !seen[s] {
                f += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = self.phi[x];
                }
            }
        }
        f
    }

    fn viable(&self) -> bool {
        let (closed, g) = self.partial();
        closed <= self.vertices && g <= self.genus as i64
    }

    fn open_face(&mut self, k: usize) -> usize {
        let start = self.alpha.len();
        for i in 0..k {
            self.alpha.push(NONE);
            self.phi.push(start + (i + 1) % k);
        }
        start
    }

    fn close_face(&mut self, k: usize) {
        let n = self.alpha.len() - k;
        self.alpha.truncate(n);
        self.phi.truncate(n);
    }

    fn run(&mut self) {
        let Some(x) = (0..self.alpha.len()).find(|&x| self.alpha[x] == NONE) else {
            self.emit();
            return;
        };
        for y in x + 1..self.alpha.len() {
            if self.alpha[y] == NONE {
                self.alpha[x] = y;
                self.alpha[y] = x;
                if self.viable() {
                    self.run();
                }
                self.alpha[x] = NONE;
                self.alpha[y] = NONE;
            }
        }
        for i in 0..self.others.len() {
            let k = self.others[i];
            if self.alpha.len() + k > self.cap {
                continue;
            }
            let y = self.open_face(k);
            self.alpha[x] = y;
            self.alpha[y] = x;
            if self.viable() {
                self.run();
            }
            self.alpha[x] = NONE;
            self.close_face(k);
        }
    }

    fn emit(&mut self) {
        let sigma: Vec<usize> = (0..self.alpha.len()).map(|x| self.phi[self.alpha[x]]).collect();
        let map = CombMap::new(self.alpha.clone(), sigma).expect("gluing is a valid map");
        if map.genus() == self.genus && map.num_vertices() == self.vertices {
            (self.visit)(map);
        }
    }
}

/// Every rooted map (root dart 0) of the given genus and vertex count with
/// at most `max_darts` darts whose faces obey `rule`, each exactly once.
///
/// Darts are numbered face by face in the order the faces are first reached,
/// each face in `phi` order starting from the dart through which it is
/// reached, so that every rooted map has a single representation.
pub fn for_each_rooted_map(genus: usize, vertices: usize, max_darts: usize, rule: &FaceRule, mut visit: impl FnMut(CombMap)) {
    let others = rule.other_degrees(max_darts);
    for k in rule.root_degrees(max_darts) {
        if k > max_darts {
            continue;
        }
        let mut g = Gluing {
            genus,
            vertices,
            cap: max_darts,
            others: others.clone(),
            alpha: Vec::new(),
            phi: Vec::new(),
            visit: &mut visit,
        };
        g.open_face(k);
        g.run();
    }
}

fn dart_cap() -> usize {
    std::env::var("TORIMAPS_DART_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_DART_CAP)
}

fn passes(frm: &FaceRootedMap, filters: &[Filter]) -> bool {
    let m = &frm.map;
    filters.iter().all(|f| match *f {
        Filter::EssentialGirth(d) => essential_girth(m).is_ok_and(|g| g == d),
        Filter::GirthAtLeast(d) => girth(m) >= d,
        Filter::Bipartite => m.is_bipartite(),
        Filter::InM(d) => frm.root_degree() == d && essential_girth(m).is_ok_and(|g| g == d),
        Filter::InL(d) => in_l_d(frm, d).unwrap_or(false),
        Filter::InF(d) => in_f_d(frm, d).unwrap_or(false),
    })
}

/// Rooted maps for corner rooting; for face rooting, one representative per
/// class, rooted at the root-face dart with the smallest code.
pub fn for_each_map(spec: &GenSpec, mut visit: impl FnMut(&FaceRootedMap)) -> Result<()> {
    let cap = 2 * spec.max_edges;
    if cap > dart_cap() {
        return Err(Error::Precondition(format!("{cap} darts exceed the cap of {}", dart_cap())));
    }
    let mut err = None;
    for_each_rooted_map(spec.genus, spec.vertices, cap, &spec.faces, |map| {
        if err.is_some() {
            return;
        }
        if spec.rooting == Rooting::Face {
            let c0 = map.rooted_code(0);
            if map.face_walk_from(0).iter().any(|&r| map.rooted_code(r) < c0) {
                return;
            }
        }
        match FaceRootedMap::new(map, 0) {
            Ok(frm) => {
                if passes(&frm, &spec.filters) {
                    visit(&frm);
                }
            }
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(()), Err)
}

pub fn generate_maps(spec: &GenSpec) -> Result<Vec<FaceRootedMap>> {
    let mut out = Vec::new();
    for_each_map(spec, |m| out.push(m.clone()))?;
    Ok(out)
}

pub fn count_maps(spec: &GenSpec) -> Result<u64> {
    let mut n = 0;
    for_each_map(spec, |_| n += 1)?;
    Ok(n)
}

/// Planar pieces: girth at least d, root face of degree d, a marked outer
/// face of degree d bounded by a simple cycle, and `inner` vertices off the
/// outer face. With `all_d`, every face has degree d.
pub fn generate_disk_pieces(d: usize, inner: usize, all_d: bool) -> Result<Vec<DiskPiece>> {
    let v = d + inner;
    let max_edges = if d >= 3 { (d * (v - 2)) / (d - 2) } else { return Err(Error::Precondition("disk pieces need d >= 3".into())) };
    let cap = 2 * max_edges;
    if cap > dart_cap() {
        return Err(Error::Precondition(format!("{cap} darts exceed the cap of {}", dart_cap())));
    }
    let rule = if all_d { FaceRule::All(d) } else { FaceRule::RootThenAtLeast { root: d, min: d } };
    let mut out = Vec::new();
    for_each_rooted_map(0, v, cap, &rule, |map| {
        if girth(&map) < d {
            return;
        }
        let f0 = map.face(0);
        for f1 in 0..map.num_faces() {
            let contour = &map.faces()[f1];
            if f1 == f0 || contour.len() != d {
                continue;
            }
            let mut vs: Vec<usize> = contour.iter().map(|&x| map.vertex(x)).collect();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() == d {
                out.push(DiskPiece { map: map.clone(), root: 0, outer: contour[0] });
            }
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_edge_toroidal_maps() {
        let mut n = 0;
        for_each_rooted_map(1, 1, 4, &FaceRule::AtLeast(1), |m| {
            assert_eq!(m.genus(), 1);
            n += 1;
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn rooted_plane_trees_with_two_edges() {
        let mut n = 0;
        for_each_rooted_map(0, 3, 4, &FaceRule::Single(4), |_| n += 1);
        assert_eq!(n, 2);
    }

    #[test]
    fn planar_maps_with_two_edges() {
        let mut n = 0;
        for v in 1..=3 {
            for_each_rooted_map(0, v, 4, &FaceRule::AtLeast(1), |m| {
                if m.num_edges() == 2 {
                    n += 1;
                }
            });
        }
        assert_eq!(n, 9);
    }

    #[test]
    fn one_vertex_triangulation_is_unique() {
        let spec = GenSpec::new(1, 1, 3, FaceRule::All(3)).filter(Filter::EssentialGirth(3));
        assert_eq!(count_maps(&spec).unwrap(), 1);
        assert_eq!(count_maps(&spec.clone().face_rooted()).unwrap(), 1);
    }

    #[test]
    fn triangle_disk_pieces() {
        assert_eq!(generate_disk_pieces(3, 0, true).unwrap().len(), 1);
        assert_eq!(generate_disk_pieces(3, 1, true).unwrap().len(), 3);
    }
}
