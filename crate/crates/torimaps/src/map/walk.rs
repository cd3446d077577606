use super::{CombMap, Dart};
use crate::{Error, Result};

/// Closed walk given by the darts it traverses, each leaving from the
/// endpoint reached by the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedWalk {
    pub darts: Vec<Dart>,
}

impl ClosedWalk {
    pub fn new(map: &CombMap, darts: Vec<Dart>) -> Result<ClosedWalk> {
        if darts.is_empty() {
            return Err(Error::Precondition("empty walk".into()));
        }
        for i in 0..darts.len() {
            let next = darts[(i + 1) % darts.len()];
            if darts[i] >= map.dart_count() || next >= map.dart_count() || map.head(darts[i]) != map.vertex(next) {
                return Err(Error::Precondition(format!("walk is not closed at position {i}")));
            }
        }
        Ok(ClosedWalk { darts })
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// No dart used twice (an edge may still be used once in each direction).
    pub fn is_non_repetitive(&self) -> bool {
        let mut d = self.darts.clone();
        d.sort_unstable();
        d.windows(2).all(|w| w[0] != w[1])
    }

    pub fn vertices(&self, map: &CombMap) -> Vec<usize> {
        self.darts.iter().map(|&x| map.vertex(x)).collect()
    }

    pub fn is_vertex_simple(&self, map: &CombMap) -> bool {
        let mut v = self.vertices(map);
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reversed(&self, map: &CombMap) -> ClosedWalk {
        ClosedWalk { darts: self.darts.iter().rev().map(|&x| map.alpha(x)).collect() }
    }

    /// Rotation of the dart sequence starting at its smallest dart.
    pub fn normalized(&self) -> ClosedWalk {
        let i = (0..self.darts.len()).min_by_key(|&i| self.darts[i]).unwrap_or(0);
        let mut darts = self.darts[i..].to_vec();
        darts.extend_from_slice(&self.darts[..i]);
        ClosedWalk { darts }
    }

    pub fn concat(&self, other: &ClosedWalk) -> ClosedWalk {
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        ClosedWalk { darts }
    }
}

/// Every directed vertex-simple cycle, listed once each, starting at its
/// smallest vertex.
pub fn simple_cycles(map: &CombMap) -> Vec<ClosedWalk> {
    let mut out = Vec::new();
    let mut on_path = vec![false; map.num_vertices()];
    for v in 0..map.num_vertices() {
        let mut path = Vec::new();
        on_path[v] = true;
        extend_cycles(map, v, v, &mut path, &mut on_path, &mut out);
        on_path[v] = false;
    }
    out
}

fn extend_cycles(
    map: &CombMap,
    start: usize,
    at: usize,
    path: &mut Vec<Dart>,
    on_path: &mut [bool],
    out: &mut Vec<ClosedWalk>,
) {
    for &x in &map.vertices()[at] {
        let w = map.head(x);
        if w == start {
            if path.len() == 1 && map.alpha(path[0]) == x {
                continue;
            }
            path.push(x);
            out.push(ClosedWalk { darts: path.clone() });
            path.pop();
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(x);
            extend_cycles(map, start, w, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_one_vertex_triangulation_are_its_loops() {
        let m = CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap();
        let c = simple_cycles(&m);
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|w| w.len() == 1));
    }

    #[test]
    fn closedness_is_checked() {
        let m = CombMap::from_cycles(2, &[(0, 1)], &[vec![0], vec![1]]).unwrap();
        assert!(ClosedWalk::new(&m, vec![0]).is_err());
        let w = ClosedWalk::new(&m, vec![0, 1]).unwrap();
        assert!(w.is_non_repetitive());
        assert!(simple_cycles(&m).is_empty());
    }
}
