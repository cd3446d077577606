use super::{ClosedWalk, CombMap, Dart};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyVector(pub i64, pub i64);

impl HomologyVector {
    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }
}

impl Add for HomologyVector {
    type Output = HomologyVector;
    fn add(self, o: HomologyVector) -> HomologyVector {
        HomologyVector(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for HomologyVector {
    type Output = HomologyVector;
    fn sub(self, o: HomologyVector) -> HomologyVector {
        HomologyVector(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for HomologyVector {
    type Output = HomologyVector;
    fn neg(self) -> HomologyVector {
        HomologyVector(-self.0, -self.1)
    }
}

/// Two directed basis cycles and a homology label for every dart.
#[derive(Clone, Debug)]
pub struct HomotopyBasis {
    pub b1: ClosedWalk,
    pub b2: ClosedWalk,
    pub labels: Vec<HomologyVector>,
    pub tree_edge: Vec<bool>,
}

impl HomotopyBasis {
    pub fn label(&self, x: Dart) -> HomologyVector {
        self.labels[x]
    }

    pub fn homology_vector(&self, walk: &ClosedWalk) -> HomologyVector {
        walk.darts.iter().fold(HomologyVector::default(), |acc, &x| acc + self.labels[x])
    }
}

fn require_torus(map: &CombMap) -> Result<()> {
    if map.genus() != 1 {
        return Err(Error::Precondition(format!("expected a toroidal map, got genus {}", map.genus())));
    }
    Ok(())
}

pub fn homology_basis(map: &CombMap) -> Result<HomotopyBasis> {
    homology_basis_with(map, 0)
}

/// Tree/cotree basis with the spanning tree grown breadth-first from `root_vertex`.
///
/// Tree edges carry the zero label, the two leftover edges carry the unit
/// vectors, and cotree labels are solved so that every face boundary sums
/// to zero.
pub fn homology_basis_with(map: &CombMap, root_vertex: usize) -> Result<HomotopyBasis> {
    require_torus(map)?;
    let nv = map.num_vertices();
    let root_vertex = root_vertex % nv;
    let mut parent: Vec<Option<Dart>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut tree_edge = vec![false; map.num_edges()];
    seen[root_vertex] = true;
    let mut queue = VecDeque::from([root_vertex]);
    while let Some(v) = queue.pop_front() {
        for &x in &map.vertices()[v] {
            let w = map.head(x);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(x);
                tree_edge[map.edge(x)] = true;
                queue.push_back(w);
            }
        }
    }

    let nf = map.num_faces();
    let mut face_parent: Vec<Option<Dart>> = vec![None; nf];
    let mut face_seen = vec![false; nf];
    let mut cotree_edge = vec![false; map.num_edges()];
    let mut order = vec![0];
    face_seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let f = order[i];
        i += 1;
        for &y in &map.faces()[f] {
            let g = map.face_left(y);
            if !tree_edge[map.edge(y)] && !face_seen[g] {
                face_seen[g] = true;
                face_parent[g] = Some(map.alpha(y));
                cotree_edge[map.edge(y)] = true;
                order.push(g);
            }
        }
    }

    let leftover: Vec<usize> =
        (0..map.num_edges()).filter(|&e| !tree_edge[e] && !cotree_edge[e]).collect();
    if leftover.len() != 2 {
        return Err(Error::Internal(format!("{} leftover edges in tree/cotree split", leftover.len())));
    }
    let mut labels = vec![HomologyVector::default(); map.dart_count()];
    let units = [HomologyVector(1, 0), HomologyVector(0, 1)];
    for (k, &e) in leftover.iter().enumerate() {
        let [x, y] = map.edges()[e];
        labels[x] = units[k];
        labels[y] = -units[k];
    }
    for &f in order.iter().skip(1).rev() {
        let p = face_parent[f].unwrap();
        let others = map.faces()[f]
            .iter()
            .filter(|&&y| y != p)
            .fold(HomologyVector::default(), |acc, &y| acc + labels[y]);
        labels[p] = -others;
        labels[map.alpha(p)] = others;
    }

    let basis_cycle = |x: Dart| -> ClosedWalk {
        let mut darts = vec![x];
        darts.extend(tree_path(map, &parent, map.head(x), map.vertex(x)));
        ClosedWalk { darts }
    };
    let b1 = basis_cycle(map.edges()[leftover[0]][0]);
    let b2 = basis_cycle(map.edges()[leftover[1]][0]);
    Ok(HomotopyBasis { b1, b2, labels, tree_edge })
}

fn tree_path(map: &CombMap, parent: &[Option<Dart>], from: usize, to: usize) -> Vec<Dart> {
    let ancestors = |mut v: usize| {
        let mut chain = vec![v];
        while let Some(p) = parent[v] {
            v = map.vertex(p);
            chain.push(v);
        }
        chain
    };
    let up = ancestors(from);
    let down = ancestors(to);
    let lca = *up.iter().find(|v| down.contains(v)).unwrap();
    let mut path = Vec::new();
    let mut v = from;
    while v != lca {
        let p = parent[v].unwrap();
        path.push(map.alpha(p));
        v = map.vertex(p);
    }
    let mut tail = Vec::new();
    let mut v = to;
    while v != lca {
        let p = parent[v].unwrap();
        tail.push(p);
        v = map.vertex(p);
    }
    path.extend(tail.into_iter().rev());
    path
}

type CoverState = (usize, i64, i64);

fn step(map: &CombMap, labels: &[HomologyVector], s: CoverState, y: Dart) -> (CoverState, (Dart, i64, i64)) {
    let l = labels[y];
    let t = (map.head(y), s.1 + l.0, s.2 + l.1);
    let id = if y < map.alpha(y) { (y, s.1, s.2) } else { (map.alpha(y), t.1, t.2) };
    (t, id)
}

/// Shortest cycle in the graph with darts lifted by `labels`, searching only
/// below `cutoff`.
fn lifted_girth(map: &CombMap, labels: &[HomologyVector], cutoff: usize) -> usize {
    let mut best = cutoff;
    for v in 0..map.num_vertices() {
        let mut dist: HashMap<CoverState, (usize, Option<(Dart, i64, i64)>)> = HashMap::new();
        let src = (v, 0, 0);
        dist.insert(src, (0, None));
        let mut queue = VecDeque::from([src]);
        while let Some(s) = queue.pop_front() {
            let (ds, pe) = dist[&s];
            if 2 * ds >= best {
                break;
            }
            for &y in &map.vertices()[s.0] {
                let (t, id) = step(map, labels, s, y);
                if Some(id) == pe {
                    continue;
                }
                match dist.get(&t) {
                    None => {
                        dist.insert(t, (ds + 1, Some(id)));
                        queue.push_back(t);
                    }
                    Some(&(dt, _)) => best = best.min(ds + dt + 1),
                }
            }
        }
    }
    best
}

/// Girth of the universal cover: the length of a shortest contractible
/// closed walk.
pub fn essential_girth(map: &CombMap) -> Result<usize> {
    let basis = homology_basis(map)?;
    let cutoff = map.faces().iter().map(|f| f.len()).max().unwrap() + 1;
    let g = lifted_girth(map, &basis.labels, cutoff);
    if g >= cutoff {
        return Err(Error::Internal("no cycle found in the universal cover".into()));
    }
    Ok(g)
}

/// Length of a shortest cycle of the underlying graph, `usize::MAX` for trees.
pub fn girth(map: &CombMap) -> usize {
    let zero = vec![HomologyVector::default(); map.dart_count()];
    let g = lifted_girth(map, &zero, map.dart_count() + 1);
    if g > map.dart_count() {
        usize::MAX
    } else {
        g
    }
}

fn cover_distances(map: &CombMap, labels: &[HomologyVector], v: usize, radius: usize) -> HashMap<CoverState, usize> {
    let mut dist = HashMap::new();
    dist.insert((v, 0, 0), 0);
    let mut queue = VecDeque::from([(v, 0, 0)]);
    while let Some(s) = queue.pop_front() {
        let ds = dist[&s];
        if ds == radius {
            continue;
        }
        for &y in &map.vertices()[s.0] {
            let (t, _) = step(map, labels, s, y);
            dist.entry(t).or_insert_with(|| {
                queue.push_back(t);
                ds + 1
            });
        }
    }
    dist
}

/// A shortest vertex-simple cycle with the same homology class as `cycle`;
/// ties are broken by the lexicographically smallest dart sequence.
pub fn shortest_cycle_in_class(map: &CombMap, basis: &HomotopyBasis, cycle: &ClosedWalk) -> Result<ClosedWalk> {
    shortest_cycle_with_vector(map, basis, basis.homology_vector(cycle))
}

fn shortest_cycle_with_vector(map: &CombMap, basis: &HomotopyBasis, class: HomologyVector) -> Result<ClosedWalk> {
    if class.is_zero() {
        return Err(Error::Precondition("cycle is contractible".into()));
    }
    let labels = &basis.labels;
    for len in 1..=map.dart_count() {
        let mut best: Option<Vec<Dart>> = None;
        for v in 0..map.num_vertices() {
            let dist = cover_distances(map, labels, v, len);
            // distance from a state to the target (v, class), by translation symmetry
            let to_target = |s: CoverState| dist.get(&(s.0, s.1 - class.0, s.2 - class.1)).copied();
            let mut path = Vec::new();
            let mut used = vec![false; map.num_vertices()];
            used[v] = true;
            search_class_walk(map, labels, (v, 0, 0), (v, class.0, class.1), len, &to_target, &mut path, &mut used, &mut best);
        }
        if let Some(darts) = best {
            return Ok(ClosedWalk { darts });
        }
    }
    Err(Error::Internal("no simple cycle in the class".into()))
}

/// Length of a shortest closed walk in each non-zero class, over walks of at
/// most `radius` steps.
fn class_walk_lengths(map: &CombMap, labels: &[HomologyVector], radius: usize) -> BTreeMap<HomologyVector, usize> {
    let mut best: BTreeMap<HomologyVector, usize> = BTreeMap::new();
    for v in 0..map.num_vertices() {
        for ((u, a, b), len) in cover_distances(map, labels, v, radius) {
            let class = HomologyVector(a, b);
            if u == v && !class.is_zero() {
                let e = best.entry(class).or_insert(len);
                *e = (*e).min(len);
            }
        }
    }
    best
}

/// Two non-homotopic cycles, each as short as any closed walk in its class:
/// `B1` is a shortest non-contractible closed walk and `B2` a shortest closed
/// walk whose class is not parallel to that of `B1`.
pub fn shortest_basis_cycles(map: &CombMap, basis: &HomotopyBasis) -> Result<(ClosedWalk, ClosedWalk)> {
    let lengths = class_walk_lengths(map, &basis.labels, map.dart_count());
    let mut order: Vec<(usize, HomologyVector)> = lengths.into_iter().map(|(c, l)| (l, c)).collect();
    order.sort();
    let (l1, c1) = *order.first().ok_or_else(|| Error::Internal("no non-contractible closed walk".into()))?;
    let (l2, c2) = *order
        .iter()
        .find(|(_, c)| c1.0 * c.1 - c1.1 * c.0 != 0)
        .ok_or_else(|| Error::Internal("no second homotopy class".into()))?;
    let b1 = shortest_cycle_with_vector(map, basis, c1)?;
    let b2 = shortest_cycle_with_vector(map, basis, c2)?;
    if b1.len() != l1 || b2.len() != l2 {
        return Err(Error::Internal("a shortest closed walk of a basis class is not a cycle".into()));
    }
    Ok((b1, b2))
}

#[allow(clippy::too_many_arguments)]
fn search_class_walk(
    map: &CombMap,
    labels: &[HomologyVector],
    at: CoverState,
    target: CoverState,
    remaining: usize,
    to_target: &dyn Fn(CoverState) -> Option<usize>,
    path: &mut Vec<Dart>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<Dart>>,
) {
    if remaining == 0 {
        if at == target && best.as_ref().is_none_or(|b| &path[..] < &b[..]) {
            *best = Some(path.clone());
        }
        return;
    }
    let mut darts = map.vertices()[at.0].clone();
    darts.sort_unstable();
    for y in darts {
        let (t, _) = step(map, labels, at, y);
        if !to_target(t).is_some_and(|d| d < remaining) {
            continue;
        }
        let closing = t == target && remaining == 1;
        if !closing && used[t.0] {
            continue;
        }
        path.push(y);
        if let Some(b) = best.as_ref() {
            if b[..path.len()] < path[..] {
                path.pop();
                return;
            }
        }
        used[t.0] = true;
        search_class_walk(map, labels, t, target, remaining - 1, to_target, path, used, best);
        if !closing {
            used[t.0] = false;
        }
        path.pop();
    }
}

/// Length of a shortest contractible closed walk, computed independently of
/// the cover: non-repetitive closed walks of increasing length are tested for
/// a disk interior on their right.
pub fn shortest_contractible_walk_len(map: &CombMap) -> Result<usize> {
    let basis = homology_basis(map)?;
    for k in 1..=map.dart_count() {
        if !super::region::closed_disk_walks(map, &basis, k, true).is_empty() {
            return Ok(k);
        }
    }
    Err(Error::Internal("no contractible closed walk found".into()))
}
