use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use torimaps::balanced::{balanced_dd2, balanced_minimal_by_search, canonical_z_orientation, halve_bipartite};
use torimaps::bijection::{check_family, halved, phi_plus, phi_plus_via_expansion, psi_plus, FamilyTag, Mobile, MobileFamilyCheck};
use torimaps::enumerate::{count_maps, generate_disk_pieces, generate_maps, generate_mobiles, FaceRule, Filter, GenSpec};
use torimaps::map::{
    cut_at_root_d_angle, disk_walks, glue_root_d_angle, homology_basis, in_f_d, in_l_d, simple_cycles, HomologyVector,
};
use torimaps::orientation::{
    enumerate_orientations, epsilon_at, gamma_score, is_balanced, is_right_biorientation, BalanceMode, OrientationSpec,
};
use torimaps::series::{
    closed_form_series, mobile_route_quadrangulation, mobile_route_triangulation, solve_w_system, ClosedForm, PowerSeries,
    XAssignment,
};
use torimaps::{FaceRootedMap, WeightedBiorientation};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn coeff(s: &PowerSeries, n: usize) -> u64 {
    let c = s.coeff(n);
    assert!(c.is_integer(), "fractional coefficient {c}");
    c.to_integer().try_into().expect("coefficient fits in u64")
}

fn edges_of_d_angulation(d: usize, n: usize) -> Option<usize> {
    (d > 2 && (d * n) % (d - 2) == 0).then(|| d * n / (d - 2))
}

/// Face-rooted d-angulations of the torus with essential girth d and n vertices.
fn d_toroidal(d: usize, n: usize) -> std::result::Result<Vec<FaceRootedMap>, String> {
    let Some(e) = edges_of_d_angulation(d, n) else { return Ok(Vec::new()) };
    ok(generate_maps(&GenSpec::new(1, n, e, FaceRule::All(d)).filter(Filter::EssentialGirth(d)).face_rooted()))
}

fn weighted_code(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Vec<u32> {
    frm.face_rooted_code_with(|x| w.weights[x])
}

fn u_bal(d: usize) -> MobileFamilyCheck {
    MobileFamilyCheck { tag: FamilyTag::UBal, param: d as i64 }
}

fn v_bal(d: usize) -> MobileFamilyCheck {
    MobileFamilyCheck { tag: FamilyTag::VBal, param: d as i64 }
}

fn hat_u_bal(b: usize) -> MobileFamilyCheck {
    MobileFamilyCheck { tag: FamilyTag::HatUBal, param: b as i64 }
}

/// Black darts needed by a U-family mobile with n white vertices.
fn u_black_darts(d: usize, n: usize) -> usize {
    d * (2 * n / (d - 2)).max(1)
}

/// Edge cap for the L_d enumeration at d = 1, 2, where the family is infinite.
const L_EDGE_CAP: usize = 5;

fn l_edge_cap(d: usize, n: usize) -> usize {
    if d >= 3 {
        d * n / (d - 2)
    } else {
        L_EDGE_CAP
    }
}

fn l_d_candidates(d: usize, n: usize) -> std::result::Result<Vec<FaceRootedMap>, String> {
    let spec = GenSpec::new(1, n, l_edge_cap(d, n), FaceRule::RootThenAtLeast { root: d, min: d }).face_rooted();
    ok(generate_maps(&spec))
}

fn mobile_roundtrip(t: &Mobile) -> std::result::Result<(), String> {
    let (frm, w) = ok(psi_plus(t))?;
    let back = ok(phi_plus(&frm, &w))?;
    ensure!(back.canonical_code() == t.canonical_code(), "phi(psi(t)) differs from t = {}", t.to_json());
    Ok(())
}

fn map_roundtrip(frm: &FaceRootedMap, w: &WeightedBiorientation) -> std::result::Result<Mobile, String> {
    let t = ok(phi_plus(frm, w))?;
    let (back, wb) = ok(psi_plus(&t))?;
    ensure!(weighted_code(&back, &wb) == weighted_code(frm, w), "psi(phi(M)) differs from M for mobile {}", t.to_json());
    Ok(t)
}

fn criterion_1() -> Check {
    let series = ok(closed_form_series(ClosedForm::T, 3))?;
    let mut found = Vec::new();
    for n in 1..=3 {
        let spec = GenSpec::new(1, n, 3 * n, FaceRule::All(3)).filter(Filter::EssentialGirth(3));
        let count = ok(count_maps(&spec))?;
        ensure!(count == coeff(&series, n), "n = {n}: enumerated {count}, series {}", coeff(&series, n));
        found.push(count);
    }
    Ok(format!("rooted essentially simple triangulations n=1..3: {found:?}"))
}

fn criterion_2() -> Check {
    let series = ok(closed_form_series(ClosedForm::Q, 3))?;
    let mut found = Vec::new();
    for n in 2..=3 {
        let spec = GenSpec::new(1, n, 2 * n, FaceRule::All(4)).filter(Filter::EssentialGirth(4)).filter(Filter::Bipartite);
        let count = ok(count_maps(&spec))?;
        ensure!(count == coeff(&series, n), "n = {n}: enumerated {count}, series {}", coeff(&series, n));
        found.push(count);
    }
    Ok(format!("rooted essentially simple bipartite quadrangulations n=2..3: {found:?}"))
}

fn criterion_3() -> Check {
    let f = ok(closed_form_series(ClosedForm::F, 3))?;
    let mut fq = Vec::new();
    for n in 1..=3 {
        let count = ok(count_maps(&GenSpec::new(1, n, 2 * n, FaceRule::All(4)).filter(Filter::Bipartite)))?;
        ensure!(count == coeff(&f, n), "bipartite quadrangulations n = {n}: enumerated {count}, series {}", coeff(&f, n));
        fq.push(count);
    }
    let g = ok(closed_form_series(ClosedForm::G, 2))?;
    let mut gt = Vec::new();
    for n in 1..=2 {
        let mut count = 0;
        for girth in [2, 3] {
            count += ok(count_maps(&GenSpec::new(1, n, 3 * n, FaceRule::All(3)).filter(Filter::EssentialGirth(girth))))?;
        }
        ensure!(count == coeff(&g, n), "loopless triangulations n = {n}: enumerated {count}, series {}", coeff(&g, n));
        gt.push(count);
    }
    Ok(format!("bipartite quadrangulations n=1..3: {fq:?}; essentially loopless triangulations n=1..2: {gt:?}"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let t = ok(mobile_route_triangulation(20))?;
    ensure!(t == ok(closed_form_series(ClosedForm::T, 20))?, "triangulation route differs");
    let q = ok(mobile_route_quadrangulation(20))?;
    ensure!(q == ok(closed_form_series(ClosedForm::Q, 20))?, "quadrangulation route differs");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("both routes agree to order 20, [z^20]T = {}", t.coeff(20)))
}

fn criterion_5() -> Check {
    let mut f_checked = 0;
    for (d, max_n) in [(3, 3), (4, 3), (5, 3)] {
        for n in 1..=max_n {
            for frm in d_toroidal(d, n)? {
                if !ok(in_f_d(&frm, d))? {
                    continue;
                }
                let spec = OrientationSpec::d_over_d2(&frm.map, d);
                let mut hits = Vec::new();
                for w in enumerate_orientations(&frm.map, &spec) {
                    if is_right_biorientation(&frm, &w) && ok(is_balanced(&frm.map, &w, BalanceMode::Exhaustive))? {
                        hits.push(w);
                    }
                }
                ensure!(hits.len() == 1, "d = {d}, n = {n}: {} balanced right orientations", hits.len());
                let built = ok(balanced_dd2(&frm, d))?;
                ensure!(hits[0] == built, "d = {d}, n = {n}: pipeline output differs from the search");
                ensure!(ok(balanced_minimal_by_search(&frm, d))? == vec![built], "d = {d}: minimal balanced not unique");
                f_checked += 1;
            }
        }
    }
    let mut l_checked = 0;
    for d in 1..=3 {
        for n in 1..=2 {
            for frm in l_d_candidates(d, n)? {
                let member = ok(in_l_d(&frm, d))?;
                let z = ok(canonical_z_orientation(&frm, d))?;
                ensure!(z.is_some() == member, "d = {d}, n = {n}: canonical orientation exists = {}, in L_d = {member}", z.is_some());
                if let Some(w) = z {
                    if ok(in_f_d(&frm, d))? && d >= 3 {
                        ensure!(w.weights == ok(balanced_dd2(&frm, d))?.weights, "d = {d}: Z-canonical differs from the pipeline on F_d");
                    }
                    l_checked += 1;
                }
            }
        }
    }
    Ok(format!("unique canonical orientation on {f_checked} F_d maps and {l_checked} L_d maps"))
}

fn criterion_6() -> Check {
    let mut lines = Vec::new();
    for (d, max_n) in [(3, 3), (4, 3), (5, 3)] {
        for n in 1..=max_n {
            if edges_of_d_angulation(d, n).is_none() {
                continue;
            }
            let mut maps = 0;
            let mut codes = HashSet::new();
            for frm in d_toroidal(d, n)? {
                if !ok(in_f_d(&frm, d))? {
                    continue;
                }
                let w = ok(balanced_dd2(&frm, d))?;
                let t = map_roundtrip(&frm, &w)?;
                ensure!(check_family(&t, u_bal(d)), "mobile of an F_{d} map is not in U_{d}^Bal");
                codes.insert(t.canonical_code());
                maps += 1;
            }
            let mobiles = generate_mobiles(u_bal(d), n, u_black_darts(d, n));
            for t in &mobiles {
                mobile_roundtrip(t)?;
            }
            ensure!(codes.len() == maps, "d = {d}, n = {n}: two maps share a mobile");
            ensure!(maps == mobiles.len(), "d = {d}, n = {n}: {maps} F_d maps but {} mobiles", mobiles.len());
            lines.push(format!("F{d}({n})={maps}"));
        }
    }
    for d in 1..=3 {
        for n in 1..=3 {
            let mut maps = 0;
            for frm in l_d_candidates(d, n)? {
                if let Some(w) = ok(canonical_z_orientation(&frm, d))? {
                    let t = map_roundtrip(&frm, &w)?;
                    ensure!(check_family(&t, v_bal(d)), "mobile of an L_{d} map is not in V_{d}^Bal");
                    maps += 1;
                }
            }
            let cap = 2 * l_edge_cap(d, n) - d;
            let mobiles = generate_mobiles(v_bal(d), n, cap);
            for t in &mobiles {
                mobile_roundtrip(t)?;
            }
            ensure!(maps == mobiles.len(), "d = {d}, n = {n}: {maps} L_d maps but {} mobiles", mobiles.len());
            lines.push(format!("L{d}({n})={maps}"));
        }
    }
    Ok(format!("roundtrips and two-sided counts hold: {}", lines.join(" ")))
}

fn criterion_7() -> Check {
    let (mut eps, mut lin, mut modes) = (0usize, 0usize, 0usize);
    for (d, max_n) in [(3, 3), (4, 3), (5, 3)] {
        for n in 1..=max_n {
            for frm in d_toroidal(d, n)? {
                let map = &frm.map;
                let basis = ok(homology_basis(map))?;
                ensure!(basis.homology_vector(&basis.b1) == HomologyVector(1, 0), "b1 is not the first basis class");
                ensure!(basis.homology_vector(&basis.b2) == HomologyVector(0, 1), "b2 is not the second basis class");
                let mut walks = Vec::new();
                for k in d..=d + 2 {
                    for (walk, region) in ok(disk_walks(map, k))? {
                        walks.push((k, walk, region));
                    }
                }
                let cycles: Vec<_> = simple_cycles(map)
                    .into_iter()
                    .map(|c| (basis.homology_vector(&c), c))
                    .filter(|(h, _)| !h.is_zero())
                    .collect();
                for w in enumerate_orientations(map, &OrientationSpec::d_over_d2(map, d)) {
                    for (k, walk, region) in &walks {
                        let e = epsilon_at(map, &w, walk, region);
                        ensure!(e == *k as i64 - d as i64, "d = {d}: epsilon {e} on a closed walk of length {k}");
                        eps += 1;
                    }
                    let g1 = ok(gamma_score(map, &w, &basis.b1))?;
                    let g2 = ok(gamma_score(map, &w, &basis.b2))?;
                    for (h, c) in &cycles {
                        let g = ok(gamma_score(map, &w, c))?;
                        ensure!(g == h.0 * g1 + h.1 * g2, "d = {d}: gamma {g} on class {h:?}, basis scores ({g1}, {g2})");
                        lin += 1;
                    }
                    let by_basis = ok(is_balanced(map, &w, BalanceMode::Basis))?;
                    let exhaustive = ok(is_balanced(map, &w, BalanceMode::Exhaustive))?;
                    ensure!(by_basis == exhaustive, "d = {d}: basis says {by_basis}, exhaustive says {exhaustive}");
                    modes += 1;
                }
            }
        }
    }
    Ok(format!("epsilon on {eps} walk instances, linearity on {lin} cycle instances, {modes} orientations agree in both modes"))
}

fn criterion_8() -> Check {
    let b = 2;
    let d = 2 * b;
    let (mut bip, mut non_bip) = (0, 0);
    let mut hat_counts = Vec::new();
    for n in 1..=3 {
        let mut hat_maps = 0;
        for frm in d_toroidal(d, n)? {
            let w = ok(balanced_dd2(&frm, d))?;
            let even = w.weights.iter().all(|x| x % 2 == 0);
            let bipartite = frm.map.is_bipartite();
            ensure!(even == bipartite, "n = {n}: weights even = {even}, bipartite = {bipartite}");
            if bipartite {
                bip += 1;
            } else {
                non_bip += 1;
            }
            if !ok(in_f_d(&frm, d))? {
                continue;
            }
            let t = ok(phi_plus(&frm, &w))?;
            let mobile_even = t.weights.iter().all(|x| x % 2 == 0);
            ensure!(mobile_even == bipartite, "n = {n}: mobile even = {mobile_even}, bipartite = {bipartite}");
            if bipartite {
                let h = ok(halve_bipartite(&frm, d, &w))?;
                let th = map_roundtrip(&frm, &h)?;
                ensure!(check_family(&th, hat_u_bal(b)), "halved mobile is not in the hat family");
                let half = halved(&t).ok_or("mobile has an odd weight")?;
                ensure!(half.canonical_code() == th.canonical_code(), "halving the mobile differs from the mobile of the halved orientation");
                hat_maps += 1;
            }
        }
        let mobiles = generate_mobiles(hat_u_bal(b), n, 4 * n);
        for t in &mobiles {
            mobile_roundtrip(t)?;
        }
        ensure!(hat_maps == mobiles.len(), "n = {n}: {hat_maps} bipartite F_4 maps but {} hat mobiles", mobiles.len());
        hat_counts.push(hat_maps);
    }
    Ok(format!("{bip} bipartite and {non_bip} non-bipartite 4-toroidal maps; bipartite F_4 vs hat mobiles n=1..3: {hat_counts:?}"))
}

fn criterion_9() -> Check {
    let d = 3;
    let a_series = ok(solve_w_system(d, &XAssignment::delta(d), 3))?.a;
    let mut a_codes = Vec::new();
    for k in 0..=3 {
        let pieces = ok(generate_disk_pieces(d, k, true))?;
        ensure!(pieces.len() as u64 == coeff(&a_series, k), "A_3 at {k}: enumerated {}, series {}", pieces.len(), coeff(&a_series, k));
        a_codes.push(pieces.iter().map(|p| p.code()).collect::<HashSet<_>>());
    }
    let mut l = vec![0u64; 4];
    for n in 1..=3 {
        l[n] = ok(count_maps(&GenSpec::new(1, n, 3 * n, FaceRule::All(d)).filter(Filter::InL(d))))?;
        let maps = ok(generate_maps(&GenSpec::new(1, n, 3 * n, FaceRule::All(d)).filter(Filter::EssentialGirth(d))))?;
        let mut pairs = HashSet::new();
        for m in &maps {
            let cut = ok(cut_at_root_d_angle(m, d))?;
            let k = cut.disk.inner_vertex_count();
            ensure!(ok(in_l_d(&cut.torus, d))?, "torus side is not in L_3");
            ensure!(a_codes[k].contains(&cut.disk.code()), "disk side is not in A_3");
            let back = ok(glue_root_d_angle(&cut.torus, &cut.disk))?;
            ensure!(back.rooted_code() == m.rooted_code(), "glue(cut(M)) differs from M");
            pairs.insert((cut.torus.rooted_code(), cut.disk.code()));
        }
        ensure!(pairs.len() == maps.len(), "n = {n}: cut is not injective");
        let product: u64 = (0..n).map(|k| l[n - k] * a_codes[k].len() as u64).sum();
        ensure!(maps.len() as u64 == product, "n = {n}: |M_3'| = {}, sum of products = {product}", maps.len());
    }
    Ok(format!("A_3' = {:?}, L_3' = {:?}, cut/glue bijective", a_codes.iter().map(|s| s.len()).collect::<Vec<_>>(), &l[1..]))
}

fn criterion_10() -> Check {
    let mut checked = BTreeMap::new();
    for d in [3, 4] {
        for n in 1..=3 {
            for frm in d_toroidal(d, n)? {
                for w in enumerate_orientations(&frm.map, &OrientationSpec::d_over_d2(&frm.map, d)) {
                    if !is_right_biorientation(&frm, &w) {
                        continue;
                    }
                    let direct = ok(phi_plus(&frm, &w))?;
                    let via = ok(phi_plus_via_expansion(&frm, &w))?;
                    ensure!(direct.canonical_code() == via.canonical_code(), "d = {d}, n = {n}: rule and expansion disagree");
                    *checked.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(format!("agreement on right orientations per d: {checked:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("triangulation counts", criterion_1),
        ("quadrangulation counts", criterion_2),
        ("auxiliary series F and G", criterion_3),
        ("series cross-derivation", criterion_4),
        ("canonical orientation uniqueness", criterion_5),
        ("bijection roundtrips", criterion_6),
        ("score identities", criterion_7),
        ("parity", criterion_8),
        ("decomposition", criterion_9),
        ("expansion rule validation", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
