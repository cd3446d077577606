use crate::bijection::Mobile;
use crate::map::Dart;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelType {
    /// Two vertices of degree 3 joined by three branches.
    I,
    /// One vertex of degree 4 carrying two loops.
    II,
}

/// Core of a toroidal mobile with its branches, each given as the mobile
/// darts of a path between kernel vertices.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub kind: KernelType,
    pub kernel_vertices: Vec<usize>,
    pub branches: Vec<Vec<Dart>>,
    pub core_vertices: Vec<usize>,
}

impl Kernel {
    /// The darts leaving a kernel vertex along a branch: six for type I,
    /// four for type II.
    pub fn half_edges(&self, t: &Mobile) -> Vec<Dart> {
        self.branches.iter().flat_map(|b| [b[0], t.alpha(*b.last().unwrap()).unwrap()]).collect()
    }
}

/// Prunes the trees hanging from the mobile and contracts the remaining
/// chains of degree-2 vertices.
pub fn kernel_decompose(t: &Mobile) -> Result<Kernel> {
    if t.genus() != 1 || t.num_faces() != 1 {
        return Err(Error::Precondition("kernel needs a unicellular toroidal mobile".into()));
    }
    let (skel, darts) = t.skeleton()?;
    let n = skel.dart_count();
    let nv = skel.num_vertices();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..nv).map(|v| skel.vertex_degree(v)).collect();
    let mut stack: Vec<usize> = (0..nv).filter(|&v| deg[v] == 1).collect();
    let mut gone = vec![false; nv];
    while let Some(v) = stack.pop() {
        if gone[v] || deg[v] != 1 {
            continue;
        }
        gone[v] = true;
        let x = skel.vertices()[v].iter().copied().find(|&x| alive[x]).unwrap();
        let y = skel.alpha(x);
        alive[x] = false;
        alive[y] = false;
        deg[v] = 0;
        let u = skel.vertex(y);
        deg[u] -= 1;
        if deg[u] == 1 {
            stack.push(u);
        }
    }
    let core_vertices: Vec<usize> = (0..nv).filter(|&v| deg[v] >= 2).collect();
    let kernel_vertices: Vec<usize> = core_vertices.iter().copied().filter(|&v| deg[v] >= 3).collect();
    let kind = match kernel_vertices.iter().map(|&v| deg[v]).collect::<Vec<_>>().as_slice() {
        [3, 3] => KernelType::I,
        [4] => KernelType::II,
        other => return Err(Error::Internal(format!("unexpected kernel degrees {other:?}"))),
    };
    let is_kernel = |v: usize| deg[v] >= 3;
    let mut used = vec![false; n];
    let mut branches = Vec::new();
    for &v in &kernel_vertices {
        for &x0 in &skel.vertices()[v] {
            if !alive[x0] || used[x0] {
                continue;
            }
            let mut path = vec![x0];
            let mut x = x0;
            loop {
                let y = skel.alpha(x);
                used[x] = true;
                used[y] = true;
                let u = skel.vertex(y);
                if is_kernel(u) {
                    break;
                }
                x = skel.vertices()[u].iter().copied().find(|&z| alive[z] && z != y).unwrap();
                path.push(x);
            }
            branches.push(path.into_iter().map(|x| darts[x]).collect());
        }
    }
    Ok(Kernel { kind, kernel_vertices: kernel_vertices.iter().map(|&v| t.vertex(darts[skel.vertices()[v][0]])).collect(), branches, core_vertices: core_vertices.iter().map(|&v| t.vertex(darts[skel.vertices()[v][0]])).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{FamilyTag, MobileFamilyCheck};
    use crate::enumerate::generate_mobiles;

    #[test]
    fn branches_cover_the_core() {
        for t in generate_mobiles(MobileFamilyCheck { tag: FamilyTag::U, param: 4 }, 2, 8) {
            let k = kernel_decompose(&t).unwrap();
            let expected = match k.kind {
                KernelType::I => 3,
                KernelType::II => 2,
            };
            assert_eq!(k.branches.len(), expected);
            let edges: usize = k.branches.iter().map(Vec::len).sum();
            assert_eq!(edges, k.core_vertices.len() + 1);
            assert_eq!(k.half_edges(&t).len(), 2 * expected);
        }
    }
}
