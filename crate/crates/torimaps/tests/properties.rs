//! Randomized properties over generated instance pools.

use std::sync::OnceLock;

use proptest::prelude::*;
use torimaps::balanced::balanced_dd2;
use torimaps::bijection::{phi_plus, psi_plus, FamilyTag, Mobile, MobileFamilyCheck};
use torimaps::enumerate::{for_each_rooted_map, generate_maps, generate_mobiles, FaceRule, Filter, GenSpec};
use torimaps::map::{homology_basis, in_f_d, parse_map, simple_cycles, write_map, ParsedMap};
use torimaps::orientation::{basis_gamma, enumerate_orientations, gamma_score, minimize, OrientationSpec};
use torimaps::series::PowerSeries;
use torimaps::{CombMap, FaceRootedMap, Regime, WeightedBiorientation};

const ORDER: usize = 8;

fn toroidal_maps() -> &'static [CombMap] {
    static POOL: OnceLock<Vec<CombMap>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for v in 1..=3 {
            for_each_rooted_map(1, v, 5, &FaceRule::AtLeast(1), |m| out.push(m));
        }
        out
    })
}

fn d_angulations() -> &'static [(usize, FaceRootedMap)] {
    static POOL: OnceLock<Vec<(usize, FaceRootedMap)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (d, n) in [(3, 1), (3, 2), (3, 3), (4, 2), (4, 3)] {
            let spec = GenSpec::new(1, n, d * n / (d - 2), FaceRule::All(d)).filter(Filter::EssentialGirth(d)).face_rooted();
            out.extend(generate_maps(&spec).unwrap().into_iter().map(|f| (d, f)));
        }
        out
    })
}

fn oriented_d_angulations() -> &'static [(FaceRootedMap, WeightedBiorientation)] {
    static POOL: OnceLock<Vec<(FaceRootedMap, WeightedBiorientation)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (d, frm) in d_angulations() {
            let spec = OrientationSpec::d_over_d2(&frm.map, *d);
            for w in enumerate_orientations(&frm.map, &spec).into_iter().take(12) {
                out.push((frm.clone(), w));
            }
        }
        out
    })
}

fn mobiles() -> &'static [Mobile] {
    static POOL: OnceLock<Vec<Mobile>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (tag, param) in [(FamilyTag::UBal, 3), (FamilyTag::UBal, 4), (FamilyTag::VBal, 3), (FamilyTag::HatVBal, 2)] {
            let check = MobileFamilyCheck { tag, param };
            for n in 1..=3 {
                out.extend(generate_mobiles(check, n, 4 * n));
            }
        }
        out
    })
}

fn series() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(-20i64..=20, ORDER + 1).prop_map(|c| PowerSeries::from_ints(&c, ORDER))
}

fn unit_series() -> impl Strategy<Value = PowerSeries> {
    (prop_oneof![Just(-1i64), Just(1), Just(2), Just(-3)], prop::collection::vec(-20i64..=20, ORDER))
        .prop_map(|(c0, rest)| PowerSeries::from_ints(&[vec![c0], rest].concat(), ORDER))
}

fn shuffled(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        label.swap(i, seed[i] % (i + 1));
    }
    label
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_form_a_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, PowerSeries::zero(ORDER));
        prop_assert_eq!(&a + &(-&a), PowerSeries::zero(ORDER));
        prop_assert_eq!(&a * &PowerSeries::one(ORDER), a);
    }

    #[test]
    fn division_inverts_multiplication(a in series(), u in unit_series()) {
        prop_assert_eq!((&a * &u).div(&u).unwrap(), a.clone());
        prop_assert_eq!(&u.recip().unwrap() * &u, PowerSeries::one(ORDER));
        prop_assert_eq!(u.pow(3), &(&u * &u) * &u);
    }

    #[test]
    fn rooted_codes_ignore_dart_names(i in any::<prop::sample::Index>(), seed in prop::collection::vec(any::<usize>(), 32)) {
        let m = i.get(toroidal_maps());
        let label = shuffled(m.dart_count(), &seed);
        let r = m.relabeled(&label);
        prop_assert_eq!(r.genus(), m.genus());
        for x in 0..m.dart_count() {
            prop_assert_eq!(r.rooted_code(label[x]), m.rooted_code(x));
        }
    }

    #[test]
    fn text_format_roundtrips(
        i in any::<prop::sample::Index>(),
        root in any::<prop::sample::Index>(),
        corner in any::<bool>(),
        weights in prop::option::of(prop::collection::vec(-3i64..=3, 32)),
    ) {
        let m = i.get(toroidal_maps()).clone();
        let n = m.dart_count();
        let r = root.index(n);
        let parsed = ParsedMap {
            root_face: Some(r),
            root_corner: corner.then_some(r),
            weights: weights.map(|w| w[..n].to_vec()),
            map: m,
        };
        let text = write_map(&parsed);
        let back = parse_map(&text).unwrap();
        prop_assert_eq!(&back, &parsed);
        prop_assert_eq!(write_map(&back), text);
    }

    #[test]
    fn reversal_negates_gamma(
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
        weights in prop::collection::vec(0i64..=3, 32),
    ) {
        let m = i.get(toroidal_maps());
        let basis = homology_basis(m).unwrap();
        let cycles: Vec<_> = simple_cycles(m).into_iter().filter(|c| !basis.homology_vector(c).is_zero()).collect();
        prop_assume!(!cycles.is_empty());
        let c = j.get(&cycles);
        let w = WeightedBiorientation::new(m, weights[..m.dart_count()].to_vec(), Regime::N).unwrap();
        let forward = gamma_score(m, &w, c).unwrap();
        let backward = gamma_score(m, &w, &c.reversed(m)).unwrap();
        prop_assert_eq!(backward, -forward);
    }

    #[test]
    fn minimize_is_idempotent_and_keeps_gamma(i in any::<prop::sample::Index>()) {
        let (frm, w) = i.get(oriented_d_angulations());
        let basis = homology_basis(&frm.map).unwrap();
        let min = minimize(frm, w).unwrap();
        prop_assert_eq!(minimize(frm, &min).unwrap(), min.clone());
        prop_assert_eq!(basis_gamma(&frm.map, &min, &basis).unwrap(), basis_gamma(&frm.map, w, &basis).unwrap());
        for v in 0..frm.map.num_vertices() {
            prop_assert_eq!(min.vertex_weight(&frm.map, v), w.vertex_weight(&frm.map, v));
        }
    }

    #[test]
    fn mobile_json_roundtrips(i in any::<prop::sample::Index>()) {
        let t = i.get(mobiles());
        let back = Mobile::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, t);
    }

    #[test]
    fn closure_inverts_opening_on_mobiles(i in any::<prop::sample::Index>()) {
        let t = i.get(mobiles());
        let (frm, w) = psi_plus(t).unwrap();
        prop_assert_eq!(phi_plus(&frm, &w).unwrap().canonical_code(), t.canonical_code());
    }

    #[test]
    fn opening_inverts_closure_on_maps(i in any::<prop::sample::Index>(), seed in prop::collection::vec(any::<usize>(), 40)) {
        let (d, frm) = i.get(d_angulations());
        prop_assume!(in_f_d(frm, *d).unwrap());
        let w = balanced_dd2(frm, *d).unwrap();
        let t = phi_plus(frm, &w).unwrap();
        let (back, back_w) = psi_plus(&t).unwrap();
        prop_assert_eq!(back.rooted_code(), frm.rooted_code());
        let label = shuffled(frm.map.dart_count(), &seed);
        let renamed = FaceRootedMap::new(frm.map.relabeled(&label), label[frm.root]).unwrap();
        let mut renamed_w = vec![0; label.len()];
        for (x, &l) in label.iter().enumerate() {
            renamed_w[l] = w.weights[x];
        }
        let renamed_w = WeightedBiorientation { weights: renamed_w, regime: w.regime };
        prop_assert_eq!(phi_plus(&renamed, &renamed_w).unwrap().canonical_code(), t.canonical_code());
        prop_assert_eq!(back_w.weights.iter().sum::<i64>(), w.weights.iter().sum::<i64>());
    }
}
