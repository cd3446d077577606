use super::maps::{for_each_rooted_map, FaceRule};
use crate::bijection::{check_family, Color, FamilyTag, Mobile, MobileFamilyCheck};
use crate::map::{CombMap, Dart};
use std::collections::BTreeMap;

/// Local constraints of a mobile family.
struct Rules {
    check: MobileFamilyCheck,
    white_hi: i64,
    black_lo: i64,
    edge: i64,
    excess: i64,
}

impl Rules {
    fn new(check: MobileFamilyCheck) -> Rules {
        let p = check.param;
        let hat = check.tag.hat();
        let v_like = matches!(check.tag, FamilyTag::V | FamilyTag::VBal | FamilyTag::HatV | FamilyTag::HatVBal);
        Rules {
            check,
            white_hi: p,
            black_lo: match (v_like, hat) {
                (false, _) => 0,
                (true, false) => -2,
                (true, true) => -1,
            },
            edge: if hat { p - 1 } else { p - 2 },
            excess: if hat { 2 * p } else { p },
        }
    }

    fn black_degree_ok(&self, deg: usize) -> bool {
        let p = self.check.param as usize;
        match self.check.tag {
            FamilyTag::U | FamilyTag::UBal => deg == p,
            FamilyTag::HatU | FamilyTag::HatUBal => deg == 2 * p,
            FamilyTag::V | FamilyTag::VBal => deg >= p,
            FamilyTag::HatV | FamilyTag::HatVBal => deg % 2 == 0 && deg >= 2 * p,
        }
    }

    /// Admissible numbers of black vertices. Summing weights over the
    /// mobile fixes it for the U families.
    fn black_counts(&self, whites: usize, max_black_darts: usize) -> Vec<usize> {
        let p = self.check.param as usize;
        let n = whites;
        match self.check.tag {
            FamilyTag::U | FamilyTag::UBal if p > 2 && (2 * n) % (p - 2) == 0 && 2 * n / (p - 2) >= 1 => {
                vec![2 * n / (p - 2) - 1]
            }
            FamilyTag::HatU | FamilyTag::HatUBal if p > 1 && n % (p - 1) == 0 && n / (p - 1) >= 1 => vec![n / (p - 1) - 1],
            FamilyTag::U | FamilyTag::UBal | FamilyTag::HatU | FamilyTag::HatUBal => vec![],
            FamilyTag::V | FamilyTag::VBal => (0..=max_black_darts / p.max(1)).collect(),
            FamilyTag::HatV | FamilyTag::HatVBal => (0..=max_black_darts / (2 * p).max(1)).collect(),
        }
    }

    fn black_target(&self, deg: usize) -> i64 {
        let p = self.check.param;
        match self.check.tag {
            FamilyTag::U | FamilyTag::UBal | FamilyTag::HatU | FamilyTag::HatUBal => 0,
            FamilyTag::V | FamilyTag::VBal => p - deg as i64,
            FamilyTag::HatV | FamilyTag::HatVBal => p - (deg / 2) as i64,
        }
    }
}

fn unrooted_code(map: &CombMap) -> Vec<u32> {
    (0..map.dart_count()).map(|r| map.rooted_code(r)).min().unwrap()
}

/// Unicellular toroidal maps with `edges` edges, one per isomorphism class.
pub fn unicellular_toroidal_skeletons(edges: usize) -> Vec<CombMap> {
    let mut seen = BTreeMap::new();
    for_each_rooted_map(1, edges - 1, 2 * edges, &FaceRule::Single(2 * edges), |m| {
        seen.entry(unrooted_code(&m)).or_insert(m);
    });
    seen.into_values().collect()
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(total - k, parts, out, cur);
        cur.pop();
    }
}

struct WeightSearch<'a> {
    t: &'a Mobile,
    rules: &'a Rules,
    edges: Vec<[Dart; 2]>,
    target: Vec<i64>,
    sum: Vec<i64>,
    left: Vec<i64>,
    weights: Vec<i64>,
}

impl WeightSearch<'_> {
    fn vertex_ok(&self, v: usize) -> bool {
        let (s, r, t) = (self.sum[v], self.left[v], self.target[v]);
        match self.t.color(v) {
            Color::White => s + r <= t && s + r * self.rules.white_hi >= t,
            Color::Black => s >= t && s + r * self.rules.black_lo <= t,
        }
    }

    fn range(&self, x: Dart) -> (i64, i64) {
        match self.t.dart_color(x) {
            Color::White => (1, self.rules.white_hi),
            Color::Black => (self.rules.black_lo, 0),
        }
    }

    fn run(&mut self, i: usize, visit: &mut dyn FnMut(Mobile)) {
        if i == self.edges.len() {
            visit(self.t.with_weights(self.weights.clone()));
            return;
        }
        let [x, y] = self.edges[i];
        let (vx, vy) = (self.t.vertex(x), self.t.vertex(y));
        let (lx, hx) = self.range(x);
        let (ly, hy) = self.range(y);
        for wx in lx..=hx {
            let wy = self.rules.edge - wx;
            if wy < ly || wy > hy {
                continue;
            }
            self.weights[x] = wx;
            self.weights[y] = wy;
            self.sum[vx] += wx;
            self.sum[vy] += wy;
            self.left[vx] -= 1;
            self.left[vy] -= 1;
            if self.vertex_ok(vx) && self.vertex_ok(vy) {
                self.run(i + 1, visit);
            }
            self.sum[vx] -= wx;
            self.sum[vy] -= wy;
            self.left[vx] += 1;
            self.left[vy] += 1;
        }
        self.weights[x] = 0;
        self.weights[y] = 0;
    }
}

fn weightings(t: &Mobile, rules: &Rules, visit: &mut dyn FnMut(Mobile)) {
    let nv = t.num_vertices();
    let target = (0..nv)
        .map(|v| match t.color(v) {
            Color::White => rules.white_hi,
            Color::Black => rules.black_target(t.degree(v)),
        })
        .collect();
    let left = (0..nv).map(|v| t.rotation(v).iter().filter(|&&x| !t.is_bud(x)).count() as i64).collect();
    let mut s = WeightSearch {
        t,
        rules,
        edges: t.edges(),
        target,
        sum: vec![0; nv],
        left,
        weights: vec![0; t.dart_count()],
    };
    if (0..nv).all(|v| s.vertex_ok(v)) {
        s.run(0, visit);
    }
}

/// Places `buds[v]` buds into the corners of black vertex `v` in every way.
fn with_buds(skel: &CombMap, colors: &[Color], per_vertex: &[usize], visit: &mut dyn FnMut(Mobile)) {
    let nv = skel.num_vertices();
    let mut options: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut out = Vec::new();
        compositions(per_vertex[v], skel.vertex_degree(v), &mut out, &mut Vec::new());
        options.push(out);
    }
    let mut choice = vec![0; nv];
    loop {
        let mut rotations = Vec::with_capacity(nv);
        let mut next = skel.dart_count();
        for v in 0..nv {
            let comp = &options[v][choice[v]];
            let mut rot = Vec::new();
            for (i, x) in skel.rotation_from(skel.vertices()[v][0]).into_iter().enumerate() {
                rot.push(x);
                for _ in 0..comp[i] {
                    rot.push(next);
                    next += 1;
                }
            }
            rotations.push(rot);
        }
        let mut alpha: Vec<Option<Dart>> = (0..skel.dart_count()).map(|x| Some(skel.alpha(x))).collect();
        alpha.resize(next, None);
        if let Ok(t) = Mobile::new(rotations, colors.to_vec(), alpha, vec![0; next]) {
            visit(t);
        }
        let mut v = 0;
        while v < nv {
            choice[v] += 1;
            if choice[v] < options[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
        if v == nv {
            return;
        }
    }
}

/// Every toroidal mobile of the family with `whites` white vertices and at
/// most `max_black_darts` darts at black vertices (buds included), each
/// isomorphism class once, in canonical-code order.
pub fn generate_mobiles(check: MobileFamilyCheck, whites: usize, max_black_darts: usize) -> Vec<Mobile> {
    let rules = Rules::new(check);
    let mut found: BTreeMap<Vec<i64>, Mobile> = BTreeMap::new();
    for blacks in rules.black_counts(whites, max_black_darts) {
        let edges = whites + blacks + 1;
        if 2 * edges > whites * rules.white_hi.max(1) as usize + max_black_darts {
            continue;
        }
        for skel in unicellular_toroidal_skeletons(edges) {
            let nv = skel.num_vertices();
            let mut pick = vec![false; nv];
            choose_whites(&skel, &rules, whites, 0, &mut pick, &mut |colors| {
                decorate(&skel, colors, &rules, max_black_darts, &mut |t| {
                    weightings(&t, &rules, &mut |m| {
                        if check_family(&m, rules.check) {
                            found.entry(m.canonical_code()).or_insert(m);
                        }
                    });
                });
            });
        }
    }
    found.into_values().collect()
}

fn choose_whites(skel: &CombMap, rules: &Rules, left: usize, v: usize, pick: &mut Vec<bool>, visit: &mut dyn FnMut(&[Color])) {
    let nv = skel.num_vertices();
    if v == nv {
        if left == 0 {
            let colors: Vec<Color> = pick.iter().map(|&w| if w { Color::White } else { Color::Black }).collect();
            visit(&colors);
        }
        return;
    }
    if nv - v < left {
        return;
    }
    if left > 0 && skel.vertex_degree(v) as i64 <= rules.white_hi {
        pick[v] = true;
        choose_whites(skel, rules, left - 1, v + 1, pick, visit);
        pick[v] = false;
    }
    choose_whites(skel, rules, left, v + 1, pick, visit);
}

fn decorate(skel: &CombMap, colors: &[Color], rules: &Rules, max_black_darts: usize, visit: &mut dyn FnMut(Mobile)) {
    let white = |x: Dart| colors[skel.vertex(x)] == Color::White;
    let mut white_ends = 0i64;
    let mut black_ends = 0usize;
    for x in 0..skel.dart_count() {
        if white(x) {
            white_ends += 1;
        } else {
            black_ends += 1;
        }
        let y = skel.alpha(x);
        let ok = match (white(x), white(y)) {
            (true, true) => rules.edge >= 2,
            (true, false) | (false, true) => rules.edge - rules.black_lo >= 1,
            (false, false) => rules.edge <= 0 && rules.edge >= 2 * rules.black_lo,
        };
        if !ok {
            return;
        }
    }
    let buds = white_ends - rules.excess;
    if buds < 0 || black_ends + buds as usize > max_black_darts {
        return;
    }
    let blacks: Vec<usize> = (0..skel.num_vertices()).filter(|&v| colors[v] == Color::Black).collect();
    let mut per_vertex = vec![0; skel.num_vertices()];
    spread(skel, rules, &blacks, 0, buds as usize, &mut per_vertex, &mut |pv| with_buds(skel, colors, pv, visit));
}

fn spread(
    skel: &CombMap,
    rules: &Rules,
    blacks: &[usize],
    i: usize,
    left: usize,
    per_vertex: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if i == blacks.len() {
        if left == 0 {
            visit(per_vertex);
        }
        return;
    }
    let v = blacks[i];
    let k = skel.vertex_degree(v);
    for j in 0..=left {
        if rules.black_degree_ok(k + j) {
            let w = rules.black_target(k + j);
            if w <= 0 && w >= rules.black_lo * k as i64 {
                per_vertex[v] = j;
                spread(skel, rules, blacks, i + 1, left - j, per_vertex, visit);
                per_vertex[v] = 0;
            }
        }
    }
}
