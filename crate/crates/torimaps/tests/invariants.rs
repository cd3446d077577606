//! Exhaustive checks of structural invariants on small enumerated instances.

use std::collections::{BTreeMap, HashSet};

use torimaps::balanced::{balanced_dd2, balanced_dd2_from, canonical_z_orientation, combine_biased, BiasedQuadruple};
use torimaps::bijection::{check_family, halved, phi_plus, psi_plus, Color, FamilyTag, Mobile, MobileFamilyCheck};
use torimaps::enumerate::{
    for_each_rooted_map, generate_maps, generate_mobiles, kernel_decompose, FaceRule, Filter, GenSpec, KernelType,
};
use torimaps::map::{
    d_angles, disk_walks, essential_girth, girth, homology_basis, in_f_d, in_l_d, shortest_basis_cycles, simple_cycles,
};
use torimaps::orientation::{basis_gamma, enumerate_orientations, gamma_score, minimize, OrientationSpec};
use torimaps::series::{quadrangulation_parts, triangulation_parts, PowerSeries};
use torimaps::{CombMap, FaceRootedMap};

fn small_toroidal_maps() -> Vec<CombMap> {
    let mut out = Vec::new();
    for v in 1..=4 {
        for_each_rooted_map(1, v, 6, &FaceRule::AtLeast(1), |m| out.push(m));
    }
    out
}

fn d_angulations(d: usize, max_n: usize) -> Vec<FaceRootedMap> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        if (d * n) % (d - 2) == 0 {
            let spec = GenSpec::new(1, n, d * n / (d - 2), FaceRule::All(d)).filter(Filter::EssentialGirth(d)).face_rooted();
            out.extend(generate_maps(&spec).unwrap());
        }
    }
    out
}

fn int(s: &PowerSeries, n: usize) -> i64 {
    s.to_i64().unwrap()[n]
}

#[test]
fn degree_sums_and_duality() {
    let maps = small_toroidal_maps();
    assert!(!maps.is_empty());
    for m in maps {
        let n = m.dart_count();
        assert_eq!((0..m.num_faces()).map(|f| m.face_degree(f)).sum::<usize>(), n);
        assert_eq!((0..m.num_vertices()).map(|v| m.vertex_degree(v)).sum::<usize>(), n);
        let dual = m.dual();
        assert_eq!(dual.genus(), m.genus());
        assert_eq!(dual.num_vertices(), m.num_faces());
        assert_eq!(dual.num_faces(), m.num_vertices());
    }
}

#[test]
fn essential_girth_is_the_shortest_disk_walk() {
    let mut maps = small_toroidal_maps();
    maps.extend(d_angulations(3, 3).into_iter().map(|f| f.map));
    maps.extend(d_angulations(4, 3).into_iter().map(|f| f.map));
    for m in maps {
        let eg = essential_girth(&m).unwrap();
        assert!(girth(&m) <= eg);
        let shortest = (1..=eg).find(|&k| !disk_walks(&m, k).unwrap().is_empty());
        assert_eq!(shortest, Some(eg));
    }
}

#[test]
fn maximal_d_angles_are_disjoint() {
    let mut cases: Vec<(usize, FaceRootedMap)> = Vec::new();
    for d in [3, 4] {
        cases.extend(d_angulations(d, 3).into_iter().map(|f| (d, f)));
        for n in 1..=2 {
            let spec = GenSpec::new(1, n, 5, FaceRule::RootThenAtLeast { root: d, min: d }).filter(Filter::EssentialGirth(d));
            cases.extend(generate_maps(&spec.face_rooted()).unwrap().into_iter().map(|f| (d, f)));
        }
    }
    for (d, frm) in cases {
        let maximal: Vec<_> = d_angles(&frm.map, d).unwrap().into_iter().filter(|a| a.maximal).collect();
        assert!(!maximal.is_empty());
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                assert!(a.region == b.region || a.region.is_disjoint_from(&b.region));
            }
        }
    }
}

#[test]
fn gamma_is_determined_by_the_basis() {
    for d in [3, 4] {
        for frm in d_angulations(d, 3) {
            let map = &frm.map;
            let basis = homology_basis(map).unwrap();
            let cycles: Vec<_> = simple_cycles(map).into_iter().filter(|c| !basis.homology_vector(c).is_zero()).collect();
            let mut by_class: BTreeMap<(i64, i64), Vec<i64>> = BTreeMap::new();
            for w in enumerate_orientations(map, &OrientationSpec::d_over_d2(map, d)) {
                let scores: Vec<i64> = cycles.iter().map(|c| gamma_score(map, &w, c).unwrap()).collect();
                let key = basis_gamma(map, &w, &basis).unwrap();
                if let Some(prev) = by_class.insert(key, scores.clone()) {
                    assert_eq!(prev, scores);
                }
            }
        }
    }
}

#[test]
fn pipeline_does_not_depend_on_the_basis() {
    for d in [3, 4, 5] {
        for frm in d_angulations(d, 3) {
            let reference = balanced_dd2(&frm, d).unwrap();
            for v in 1..frm.map.num_vertices() {
                assert_eq!(balanced_dd2_from(&frm, d, v).unwrap(), reference);
            }
        }
    }
}

#[test]
fn combination_is_balanced_before_and_after_minimizing() {
    for d in [3, 4] {
        for frm in d_angulations(d, 3) {
            let map = &frm.map;
            let basis = homology_basis(map).unwrap();
            let (b1, b2) = shortest_basis_cycles(map, &basis).unwrap();
            let quad = BiasedQuadruple::new(map, b1, b2, d).unwrap();
            let combined = combine_biased(map, &quad).unwrap();
            let min = minimize(&frm, &combined).unwrap();
            for w in [&combined, &min] {
                assert_eq!(gamma_score(map, w, &quad.b1).unwrap(), 0);
                assert_eq!(gamma_score(map, w, &quad.b2).unwrap(), 0);
            }
        }
    }
}

#[test]
fn bipartite_l4_maps_have_even_canonical_orientations() {
    let hat_v = MobileFamilyCheck { tag: FamilyTag::HatVBal, param: 2 };
    let mut bipartite = 0;
    for n in 1..=3 {
        let spec = GenSpec::new(1, n, 2 * n, FaceRule::RootThenAtLeast { root: 4, min: 4 }).filter(Filter::Bipartite);
        for frm in generate_maps(&spec.face_rooted()).unwrap() {
            if !in_l_d(&frm, 4).unwrap() {
                continue;
            }
            let w = canonical_z_orientation(&frm, 4).unwrap().unwrap();
            assert!(w.weights.iter().all(|x| x % 2 == 0));
            let half = torimaps::WeightedBiorientation { weights: w.weights.iter().map(|x| x / 2).collect(), regime: w.regime };
            let t = phi_plus(&frm, &half).unwrap();
            assert!(check_family(&t, hat_v));
            assert_eq!(halved(&phi_plus(&frm, &w).unwrap()).unwrap().canonical_code(), t.canonical_code());
            bipartite += 1;
        }
    }
    assert!(bipartite > 0);
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[test]
fn parameters_transport_through_the_bijection() {
    let mut cases = Vec::new();
    for d in [3, 4] {
        for frm in d_angulations(d, 3) {
            if in_f_d(&frm, d).unwrap() {
                let w = balanced_dd2(&frm, d).unwrap();
                cases.push((frm, w));
            }
        }
    }
    for d in 1..=3 {
        for n in 1..=2 {
            let spec = GenSpec::new(1, n, 4, FaceRule::RootThenAtLeast { root: d, min: d }).face_rooted();
            for frm in generate_maps(&spec).unwrap() {
                if let Some(w) = canonical_z_orientation(&frm, d).unwrap() {
                    cases.push((frm, w));
                }
            }
        }
    }
    for (frm, w) in cases {
        let t = phi_plus(&frm, &w).unwrap();
        let map = &frm.map;
        assert_eq!(t.vertices_of(Color::White).count(), map.num_vertices());
        let faces = sorted((0..map.num_faces()).filter(|&f| f != frm.root_face()).map(|f| map.face_degree(f)).collect());
        let blacks = sorted(t.vertices_of(Color::Black).map(|v| t.degree(v)).collect());
        assert_eq!(faces, blacks);
    }
}

#[test]
fn generators_have_no_duplicates_and_are_stable() {
    for d in [3, 4] {
        let maps = d_angulations(d, 3);
        let codes: HashSet<_> = maps.iter().map(|m| m.face_rooted_code()).collect();
        assert_eq!(codes.len(), maps.len());
        let again: Vec<_> = d_angulations(d, 3).iter().map(|m| m.face_rooted_code()).collect();
        assert_eq!(again, maps.iter().map(|m| m.face_rooted_code()).collect::<Vec<_>>());
    }
    let check = MobileFamilyCheck { tag: FamilyTag::VBal, param: 2 };
    let mobiles = generate_mobiles(check, 2, 6);
    let codes: HashSet<_> = mobiles.iter().map(Mobile::canonical_code).collect();
    assert_eq!(codes.len(), mobiles.len());
    assert_eq!(generate_mobiles(check, 2, 6), mobiles);
}

/// Rooted maps count mobiles with a marked exposed half-edge, `d / |Aut|` per
/// mobile, and marked kernel half-edges give the series of each kernel type.
struct Marked {
    exposed: [u64; 2],
    kernel: [u64; 2],
    aut_sum: u64,
}

fn marked_counts(mobiles: &[Mobile], d: u64) -> Marked {
    let mut m = Marked { exposed: [0; 2], kernel: [0; 2], aut_sum: 0 };
    for t in mobiles {
        let k = kernel_decompose(t).unwrap();
        let i = (k.kind == KernelType::II) as usize;
        let aut = t.automorphism_count() as u64;
        assert_eq!(d % aut, 0);
        m.exposed[i] += d / aut;
        let codes: HashSet<_> = k.half_edges(t).into_iter().map(|x| t.rooted_code(x)).collect();
        m.kernel[i] += codes.len() as u64;
        m.aut_sum += aut;
    }
    m
}

#[test]
fn marked_half_edges_match_triangulation_series() {
    let parts = triangulation_parts(3).unwrap();
    let check = MobileFamilyCheck { tag: FamilyTag::VBal, param: 3 };
    for n in 1..=3 {
        let mobiles: Vec<Mobile> = generate_mobiles(check, n, 6 * n)
            .into_iter()
            .filter(|t| t.vertices_of(Color::Black).all(|v| t.degree(v) == 3))
            .collect();
        let m = marked_counts(&mobiles, 3);
        assert_eq!(m.exposed[1], 0);
        assert_eq!(m.kernel[1], 0);
        assert_eq!(6 * m.exposed[0], 3 * m.kernel[0]);
        let rooted = GenSpec::new(1, n, 3 * n, FaceRule::All(3)).filter(Filter::InL(3));
        assert_eq!(m.exposed[0], torimaps::enumerate::count_maps(&rooted).unwrap());
        assert_eq!(m.kernel[0] as i64, int(&parts.n, n));
    }
}

#[test]
fn marked_half_edges_match_quadrangulation_series() {
    let parts = quadrangulation_parts(3).unwrap();
    let check = MobileFamilyCheck { tag: FamilyTag::HatVBal, param: 2 };
    for n in 1..=3 {
        let mobiles: Vec<Mobile> = generate_mobiles(check, n, 4 * n)
            .into_iter()
            .filter(|t| t.vertices_of(Color::Black).all(|v| t.degree(v) == 4))
            .collect();
        let m = marked_counts(&mobiles, 4);
        assert_eq!(6 * m.exposed[0], 4 * m.kernel[0]);
        assert_eq!(4 * m.exposed[1], 4 * m.kernel[1]);
        assert_eq!(m.kernel[0] as i64, int(&parts.n_i, n));
        assert_eq!(m.kernel[1] as i64, int(&parts.n_ii, n));
        let rooted = GenSpec::new(1, n, 2 * n, FaceRule::All(4)).filter(Filter::Bipartite).filter(Filter::InL(4));
        assert_eq!(m.exposed[0] + m.exposed[1], torimaps::enumerate::count_maps(&rooted).unwrap());
    }
}

#[test]
fn roundtrip_on_psi_images() {
    let check = MobileFamilyCheck { tag: FamilyTag::UBal, param: 4 };
    for n in 1..=3 {
        for t in generate_mobiles(check, n, 4 * n) {
            let (frm, w) = psi_plus(&t).unwrap();
            assert_eq!(phi_plus(&frm, &w).unwrap().canonical_code(), t.canonical_code());
        }
    }
}
