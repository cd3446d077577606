use crate::map::{CombMap, Dart};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// A bicolored rotation system whose darts are either edge halves or buds
/// (darts without an opposite, allowed at black vertices only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobile {
    sigma: Vec<Dart>,
    alpha: Vec<Option<Dart>>,
    vertex: Vec<usize>,
    rotations: Vec<Vec<Dart>>,
    colors: Vec<Color>,
    pub weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    color: Color,
    rotation: Vec<Dart>,
}

#[derive(Serialize, Deserialize)]
struct MobileJson {
    vertices: Vec<VertexJson>,
    alpha: Vec<Option<Dart>>,
    weights: Vec<i64>,
}

impl Mobile {
    /// Builds a mobile from counterclockwise rotations; `alpha[x] = None`
    /// marks a bud.
    pub fn new(rotations: Vec<Vec<Dart>>, colors: Vec<Color>, alpha: Vec<Option<Dart>>, weights: Vec<i64>) -> Result<Mobile> {
        let n = alpha.len();
        if colors.len() != rotations.len() || weights.len() != n {
            return Err(Error::InvalidMap("mobile arrays have inconsistent sizes".into()));
        }
        let mut sigma = vec![usize::MAX; n];
        let mut vertex = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(Error::InvalidMap(format!("vertex {v} has no darts")));
            }
            for (i, &x) in rot.iter().enumerate() {
                if x >= n || vertex[x] != usize::MAX {
                    return Err(Error::InvalidMap(format!("dart {x} repeated or out of range")));
                }
                vertex[x] = v;
                sigma[x] = rot[(i + 1) % rot.len()];
            }
        }
        if vertex.contains(&usize::MAX) {
            return Err(Error::InvalidMap("dart outside every rotation".into()));
        }
        for x in 0..n {
            match alpha[x] {
                Some(y) => {
                    if y >= n || y == x || alpha[y] != Some(x) {
                        return Err(Error::InvalidMap(format!("alpha is not an involution at {x}")));
                    }
                }
                None => {
                    if colors[vertex[x]] != Color::Black {
                        return Err(Error::InvalidMap(format!("bud {x} at a white vertex")));
                    }
                }
            }
        }
        Ok(Mobile { sigma, alpha, vertex, rotations, colors, weights })
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn sigma(&self, x: Dart) -> Dart {
        self.sigma[x]
    }

    pub fn alpha(&self, x: Dart) -> Option<Dart> {
        self.alpha[x]
    }

    pub fn is_bud(&self, x: Dart) -> bool {
        self.alpha[x].is_none()
    }

    /// Face permutation, buds acting as their own opposite.
    pub fn phi(&self, x: Dart) -> Dart {
        self.sigma[self.alpha[x].unwrap_or(x)]
    }

    pub fn vertex(&self, x: Dart) -> usize {
        self.vertex[x]
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn dart_color(&self, x: Dart) -> Color {
        self.colors[self.vertex[x]]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn vertices_of(&self, c: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vertices()).filter(move |&v| self.colors[v] == c)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.rotations[v].iter().map(|&x| self.weights[x]).sum()
    }

    /// Edges as pairs `(x, alpha x)` with `x < alpha x`.
    pub fn edges(&self) -> Vec<[Dart; 2]> {
        (0..self.dart_count()).filter_map(|x| self.alpha[x].filter(|&y| x < y).map(|y| [x, y])).collect()
    }

    pub fn buds(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.dart_count()).filter(|&x| self.is_bud(x))
    }

    pub fn num_faces(&self) -> usize {
        let mut seen = vec![false; self.dart_count()];
        let mut count = 0;
        for s in 0..self.dart_count() {
            if !seen[s] {
                count += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = self.phi(x);
                }
            }
        }
        count
    }

    pub fn genus(&self) -> usize {
        let chi = self.num_vertices() as i64 - self.edges().len() as i64 + self.num_faces() as i64;
        ((2 - chi) / 2).max(0) as usize
    }

    /// Black-white edges plus twice the white-white edges minus the buds.
    pub fn excess(&self) -> i64 {
        let mut e = 0;
        for [x, y] in self.edges() {
            e += (self.dart_color(x) == Color::White) as i64 + (self.dart_color(y) == Color::White) as i64;
        }
        e - self.buds().count() as i64
    }

    /// The underlying map without buds, and for each of its darts the mobile dart.
    pub fn skeleton(&self) -> Result<(CombMap, Vec<Dart>)> {
        let keep: Vec<Dart> = (0..self.dart_count()).filter(|&x| !self.is_bud(x)).collect();
        let mut id = vec![usize::MAX; self.dart_count()];
        for (i, &x) in keep.iter().enumerate() {
            id[x] = i;
        }
        let mut alpha = Vec::with_capacity(keep.len());
        let mut sigma = Vec::with_capacity(keep.len());
        for &x in &keep {
            alpha.push(id[self.alpha[x].unwrap()]);
            let mut y = self.sigma[x];
            while self.is_bud(y) {
                y = self.sigma[y];
            }
            sigma.push(id[y]);
        }
        Ok((CombMap::new(alpha, sigma)?, keep))
    }

    pub fn with_weights(&self, weights: Vec<i64>) -> Mobile {
        Mobile { weights, ..self.clone() }
    }

    /// Code of the mobile rooted at `root`; equal codes mean an isomorphism
    /// mapping one root to the other.
    pub fn rooted_code(&self, root: Dart) -> Vec<i64> {
        let n = self.dart_count();
        let mut label = vec![usize::MAX; n];
        let mut order = vec![root];
        label[root] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for y in [self.alpha[x], Some(self.sigma[x])].into_iter().flatten() {
                if label[y] == usize::MAX {
                    label[y] = order.len();
                    order.push(y);
                }
            }
        }
        let mut code = Vec::with_capacity(4 * n);
        for &x in &order {
            code.push(self.alpha[x].map_or(-1, |y| label[y] as i64));
            code.push(label[self.sigma[x]] as i64);
            code.push((self.dart_color(x) == Color::Black) as i64);
            code.push(self.weights[x]);
        }
        code.push(order.len() as i64);
        code
    }

    /// Isomorphism-invariant code of the unrooted mobile.
    pub fn canonical_code(&self) -> Vec<i64> {
        (0..self.dart_count()).map(|x| self.rooted_code(x)).min().unwrap_or_default()
    }

    /// Number of automorphisms, i.e. darts with the same rooted code as dart 0.
    pub fn automorphism_count(&self) -> usize {
        let c = self.rooted_code(0);
        (0..self.dart_count()).filter(|&x| self.rooted_code(x) == c).count()
    }

    pub fn to_json(&self) -> String {
        let j = MobileJson {
            vertices: (0..self.num_vertices())
                .map(|v| VertexJson { color: self.colors[v], rotation: self.rotations[v].clone() })
                .collect(),
            alpha: self.alpha.clone(),
            weights: self.weights.clone(),
        };
        serde_json::to_string_pretty(&j).expect("mobile serializes")
    }

    pub fn from_json(text: &str) -> Result<Mobile> {
        let j: MobileJson = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let (rot, col) = j.vertices.into_iter().map(|v| (v.rotation, v.color)).unzip();
        Mobile::new(rot, col, j.alpha, j.weights)
    }
}
