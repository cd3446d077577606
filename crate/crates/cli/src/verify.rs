use std::collections::HashSet;

use serde_json::json;
use torimaps::balanced::{balanced_dd2, balanced_minimal_by_search, canonical_z_orientation, halve_bipartite};
use torimaps::bijection::{check_family, halved, phi_plus, psi_plus, FamilyTag, Mobile, MobileFamilyCheck};
use torimaps::enumerate::{count_maps, generate_maps, generate_mobiles, FaceRule, Filter, GenSpec};
use torimaps::map::{disk_walks, homology_basis, in_f_d, in_l_d, simple_cycles, write_map};
use torimaps::orientation::{
    enumerate_orientations, epsilon_at, gamma_score, is_balanced, is_right_biorientation, BalanceMode, OrientationSpec,
};
use torimaps::series::{closed_form_series, mobile_route_quadrangulation, mobile_route_triangulation, ClosedForm, PowerSeries};
use torimaps::{FaceRootedMap, WeightedBiorientation};

use crate::error::{CliError, CliResult};
use crate::files::with_orientation;
use crate::{Format, Suite, VerifyArgs};

/// Why a case failed, with the offending instance in file format when there is one.
struct Failure {
    reason: String,
    witness: Option<String>,
}

impl From<torimaps::Error> for Failure {
    fn from(e: torimaps::Error) -> Self {
        Failure { reason: e.to_string(), witness: None }
    }
}

type Outcome = Result<String, Failure>;

struct Case {
    name: String,
    outcome: Outcome,
}

fn fail(reason: impl Into<String>) -> Failure {
    Failure { reason: reason.into(), witness: None }
}

fn fail_on(reason: impl Into<String>, frm: &FaceRootedMap, w: Option<&WeightedBiorientation>) -> Failure {
    let mut p = torimaps::map::ParsedMap::plain(frm.map.clone());
    p.root_face = Some(frm.root);
    if let Some(w) = w {
        p = with_orientation(frm, w);
    }
    Failure { reason: reason.into(), witness: Some(write_map(&p)) }
}

fn fail_on_mobile(reason: impl Into<String>, t: &Mobile) -> Failure {
    Failure { reason: reason.into(), witness: Some(t.to_json()) }
}

fn edges_of_d_angulation(d: usize, n: usize) -> Option<usize> {
    (d > 2 && (d * n) % (d - 2) == 0).then(|| d * n / (d - 2))
}

fn d_toroidal(d: usize, n: usize) -> Result<Vec<FaceRootedMap>, Failure> {
    let Some(e) = edges_of_d_angulation(d, n) else { return Ok(Vec::new()) };
    Ok(generate_maps(&GenSpec::new(1, n, e, FaceRule::All(d)).filter(Filter::EssentialGirth(d)).face_rooted())?)
}

fn f_d_maps(d: usize, n: usize) -> Result<Vec<FaceRootedMap>, Failure> {
    let mut out = Vec::new();
    for frm in d_toroidal(d, n)? {
        if in_f_d(&frm, d)? {
            out.push(frm);
        }
    }
    Ok(out)
}

/// Edge bound for L_d maps; d = 1, 2 have infinitely many and are truncated.
const L_EDGE_CAP: usize = 5;

fn l_edge_cap(d: usize, n: usize) -> usize {
    if d >= 3 {
        d * n / (d - 2)
    } else {
        L_EDGE_CAP
    }
}

fn l_d_candidates(d: usize, n: usize) -> Result<Vec<FaceRootedMap>, Failure> {
    let spec = GenSpec::new(1, n, l_edge_cap(d, n), FaceRule::RootThenAtLeast { root: d, min: d }).face_rooted();
    Ok(generate_maps(&spec)?)
}

fn family(tag: FamilyTag, param: usize) -> MobileFamilyCheck {
    MobileFamilyCheck { tag, param: param as i64 }
}

fn u_black_darts(d: usize, n: usize) -> usize {
    d * (2 * n / (d - 2)).max(1)
}

fn weighted_code(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Vec<u32> {
    frm.face_rooted_code_with(|x| w.weights[x])
}

fn map_roundtrip(frm: &FaceRootedMap, w: &WeightedBiorientation) -> Result<Mobile, Failure> {
    let t = phi_plus(frm, w).map_err(|e| fail_on(e.to_string(), frm, Some(w)))?;
    let (back, wb) = psi_plus(&t).map_err(|e| fail_on_mobile(e.to_string(), &t))?;
    if weighted_code(&back, &wb) != weighted_code(frm, w) {
        return Err(fail_on("closing the mobile does not give the map back", frm, Some(w)));
    }
    Ok(t)
}

fn mobile_roundtrip(t: &Mobile) -> Result<(), Failure> {
    let (frm, w) = psi_plus(t).map_err(|e| fail_on_mobile(e.to_string(), t))?;
    let back = phi_plus(&frm, &w).map_err(|e| fail_on(e.to_string(), &frm, Some(&w)))?;
    if back.canonical_code() != t.canonical_code() {
        return Err(fail_on_mobile("opening the closed mobile does not give it back", t));
    }
    Ok(())
}

fn f_roundtrip(d: usize, n: usize) -> Outcome {
    let mut codes = HashSet::new();
    let maps = f_d_maps(d, n)?;
    for frm in &maps {
        let w = balanced_dd2(frm, d).map_err(|e| fail_on(e.to_string(), frm, None))?;
        let t = map_roundtrip(frm, &w)?;
        if !check_family(&t, family(FamilyTag::UBal, d)) {
            return Err(fail_on("the mobile is not balanced", frm, Some(&w)));
        }
        codes.insert(t.canonical_code());
    }
    let mobiles = generate_mobiles(family(FamilyTag::UBal, d), n, u_black_darts(d, n));
    for t in &mobiles {
        mobile_roundtrip(t)?;
    }
    if codes.len() != maps.len() {
        return Err(fail("two maps share a mobile"));
    }
    if maps.len() != mobiles.len() {
        return Err(fail(format!("{} maps but {} mobiles", maps.len(), mobiles.len())));
    }
    Ok(format!("{} maps, {} mobiles", maps.len(), mobiles.len()))
}

fn hat_roundtrip(d: usize, n: usize) -> Outcome {
    let b = d / 2;
    let mut maps = 0;
    for frm in f_d_maps(d, n)? {
        if !frm.map.is_bipartite() {
            continue;
        }
        let w = balanced_dd2(&frm, d)?;
        let h = halve_bipartite(&frm, d, &w).map_err(|e| fail_on(e.to_string(), &frm, Some(&w)))?;
        let t = map_roundtrip(&frm, &h)?;
        if !check_family(&t, family(FamilyTag::HatUBal, b)) {
            return Err(fail_on("the halved mobile is not balanced", &frm, Some(&h)));
        }
        maps += 1;
    }
    let mobiles = generate_mobiles(family(FamilyTag::HatUBal, b), n, u_black_darts(d, n));
    for t in &mobiles {
        mobile_roundtrip(t)?;
    }
    if maps != mobiles.len() {
        return Err(fail(format!("{maps} bipartite maps but {} mobiles", mobiles.len())));
    }
    Ok(format!("{maps} bipartite maps, {} mobiles", mobiles.len()))
}

fn l_roundtrip(d: usize, n: usize) -> Outcome {
    let mut maps = 0;
    for frm in l_d_candidates(d, n)? {
        if let Some(w) = canonical_z_orientation(&frm, d)? {
            let t = map_roundtrip(&frm, &w)?;
            if !check_family(&t, family(FamilyTag::VBal, d)) {
                return Err(fail_on("the mobile is not balanced", &frm, Some(&w)));
            }
            maps += 1;
        }
    }
    let mobiles = generate_mobiles(family(FamilyTag::VBal, d), n, 2 * l_edge_cap(d, n) - d);
    for t in &mobiles {
        mobile_roundtrip(t)?;
    }
    if maps != mobiles.len() {
        return Err(fail(format!("{maps} maps but {} mobiles", mobiles.len())));
    }
    Ok(format!("{maps} maps, {} mobiles", mobiles.len()))
}

fn f_uniqueness(d: usize, n: usize) -> Outcome {
    let maps = f_d_maps(d, n)?;
    for frm in &maps {
        let spec = OrientationSpec::d_over_d2(&frm.map, d);
        let mut hits = Vec::new();
        for w in enumerate_orientations(&frm.map, &spec) {
            if is_right_biorientation(frm, &w) && is_balanced(&frm.map, &w, BalanceMode::Exhaustive)? {
                hits.push(w);
            }
        }
        if hits.len() != 1 {
            return Err(fail_on(format!("{} balanced right orientations", hits.len()), frm, None));
        }
        let built = balanced_dd2(frm, d).map_err(|e| fail_on(e.to_string(), frm, None))?;
        if hits[0] != built {
            return Err(fail_on("the constructed orientation differs from the search", frm, Some(&built)));
        }
        if balanced_minimal_by_search(frm, d)? != vec![built] {
            return Err(fail_on("minimal balanced orientation is not unique", frm, None));
        }
    }
    Ok(format!("{} maps in F_{d}", maps.len()))
}

fn l_uniqueness(d: usize, n: usize) -> Outcome {
    let mut members = 0;
    for frm in l_d_candidates(d, n)? {
        let member = in_l_d(&frm, d)?;
        let z = canonical_z_orientation(&frm, d).map_err(|e| fail_on(e.to_string(), &frm, None))?;
        if z.is_some() != member {
            return Err(fail_on(format!("canonical orientation found = {}, in L_{d} = {member}", z.is_some()), &frm, None));
        }
        members += member as usize;
    }
    Ok(format!("{members} maps in L_{d}"))
}

fn gamma_linearity(d: usize, n: usize) -> Outcome {
    let (mut cycles_checked, mut orientations) = (0, 0);
    for frm in d_toroidal(d, n)? {
        let map = &frm.map;
        let basis = homology_basis(map)?;
        let cycles: Vec<_> = simple_cycles(map)
            .into_iter()
            .map(|c| (basis.homology_vector(&c), c))
            .filter(|(h, _)| !h.is_zero())
            .collect();
        for w in enumerate_orientations(map, &OrientationSpec::d_over_d2(map, d)) {
            let g1 = gamma_score(map, &w, &basis.b1)?;
            let g2 = gamma_score(map, &w, &basis.b2)?;
            for (h, c) in &cycles {
                let g = gamma_score(map, &w, c)?;
                if g != h.0 * g1 + h.1 * g2 {
                    return Err(fail_on(format!("gamma {g} on class {h:?} with basis scores ({g1}, {g2})"), &frm, Some(&w)));
                }
                cycles_checked += 1;
            }
            if is_balanced(map, &w, BalanceMode::Basis)? != is_balanced(map, &w, BalanceMode::Exhaustive)? {
                return Err(fail_on("basis and exhaustive balance checks disagree", &frm, Some(&w)));
            }
            orientations += 1;
        }
    }
    Ok(format!("{cycles_checked} cycle scores over {orientations} orientations"))
}

fn epsilon(d: usize, n: usize) -> Outcome {
    let mut checked = 0;
    let maps = d_toroidal(d, n)?;
    for frm in &maps {
        let map = &frm.map;
        let mut walks = Vec::new();
        for k in d..=d + 2 {
            for (walk, region) in disk_walks(map, k)? {
                walks.push((k, walk, region));
            }
        }
        for w in enumerate_orientations(map, &OrientationSpec::d_over_d2(map, d)) {
            for (k, walk, region) in &walks {
                let e = epsilon_at(map, &w, walk, region);
                if e != *k as i64 - d as i64 {
                    return Err(fail_on(format!("epsilon {e} on a closed walk of length {k}"), frm, Some(&w)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{} maps, {checked} walk instances", maps.len()))
}

fn parity(d: usize, n: usize) -> Outcome {
    let (mut bip, mut other) = (0, 0);
    for frm in d_toroidal(d, n)? {
        let w = balanced_dd2(&frm, d).map_err(|e| fail_on(e.to_string(), &frm, None))?;
        let even = w.weights.iter().all(|x| x % 2 == 0);
        let bipartite = frm.map.is_bipartite();
        if even != bipartite {
            return Err(fail_on(format!("weights even = {even}, bipartite = {bipartite}"), &frm, Some(&w)));
        }
        if in_f_d(&frm, d)? {
            let t = phi_plus(&frm, &w)?;
            if t.weights.iter().all(|x| x % 2 == 0) != bipartite {
                return Err(fail_on("mobile parity differs from map parity", &frm, Some(&w)));
            }
            if bipartite {
                let h = halve_bipartite(&frm, d, &w)?;
                let half = halved(&t).ok_or_else(|| fail_on("mobile has an odd weight", &frm, Some(&w)))?;
                if half.canonical_code() != phi_plus(&frm, &h)?.canonical_code() {
                    return Err(fail_on("halving the mobile differs from the mobile of the halved orientation", &frm, Some(&w)));
                }
            }
        }
        if bipartite {
            bip += 1;
        } else {
            other += 1;
        }
    }
    Ok(format!("{bip} bipartite, {other} non-bipartite"))
}

fn counting(d: usize, n: usize, series: &PowerSeries) -> Outcome {
    let mut spec = GenSpec::new(1, n, d * n / (d - 2), FaceRule::All(d)).filter(Filter::EssentialGirth(d));
    if d == 4 {
        spec = spec.filter(Filter::Bipartite);
    }
    let count = count_maps(&spec)?;
    let expected = series.coeff(n).to_string();
    if count.to_string() != expected {
        return Err(fail(format!("enumerated {count}, series {expected}")));
    }
    Ok(format!("{count} maps"))
}

fn crosscheck(order: usize) -> Vec<Case> {
    let check = |route: fn(usize) -> torimaps::Result<PowerSeries>, form: ClosedForm| -> Outcome {
        let a = route(order)?;
        let b = closed_form_series(form, order)?;
        match (0..=order).find(|&k| a.coeff(k) != b.coeff(k)) {
            Some(k) => Err(fail(format!("first difference at z^{k}: {} vs {}", a.coeff(k), b.coeff(k)))),
            None => Ok(format!("agree to order {order}")),
        }
    };
    vec![
        Case { name: "triangulation".into(), outcome: check(mobile_route_triangulation, ClosedForm::T) },
        Case { name: "quadrangulation".into(), outcome: check(mobile_route_quadrangulation, ClosedForm::Q) },
    ]
}

fn per_n(max_n: usize, label: &str, mut f: impl FnMut(usize) -> Outcome) -> Vec<Case> {
    (1..=max_n).map(|n| Case { name: format!("{label} n={n}"), outcome: f(n) }).collect()
}

fn cases(a: &VerifyArgs) -> CliResult<Vec<Case>> {
    let (d, max_n) = (a.d, a.max_n);
    let need_d_angulation = || {
        if d < 3 {
            Err(CliError::Usage(format!("this suite needs d >= 3, got {d}")))
        } else {
            Ok(())
        }
    };
    let use_l = a.l_family || d < 3;
    Ok(match a.suite {
        Suite::Roundtrip if a.bipartite => {
            if use_l || d % 2 != 0 {
                return Err(CliError::Usage("--bipartite needs an even d >= 4 and the F_d family".into()));
            }
            per_n(max_n, &format!("bipartite F_{d}"), |n| hat_roundtrip(d, n))
        }
        Suite::Roundtrip if use_l => per_n(max_n, &format!("L_{d}"), |n| l_roundtrip(d, n)),
        Suite::Roundtrip => per_n(max_n, &format!("F_{d}"), |n| f_roundtrip(d, n)),
        Suite::Uniqueness => {
            let mut out = Vec::new();
            if d >= 3 && !a.l_family {
                out.extend(per_n(max_n, &format!("F_{d}"), |n| f_uniqueness(d, n)));
            }
            if use_l || d == 3 {
                out.extend(per_n(max_n, &format!("L_{d}"), |n| l_uniqueness(d, n)));
            }
            out
        }
        Suite::GammaLinearity => {
            need_d_angulation()?;
            per_n(max_n, &format!("d={d}"), |n| gamma_linearity(d, n))
        }
        Suite::Epsilon => {
            need_d_angulation()?;
            per_n(max_n, &format!("d={d}"), |n| epsilon(d, n))
        }
        Suite::Parity => {
            if d < 4 || d % 2 != 0 {
                return Err(CliError::Usage(format!("parity needs an even d >= 4, got {d}")));
            }
            per_n(max_n, &format!("d={d}"), |n| parity(d, n))
        }
        Suite::Counting => {
            let form = match d {
                3 => ClosedForm::T,
                4 => ClosedForm::Q,
                _ => return Err(CliError::Domain(format!("no counting series for d = {d}"))),
            };
            let series = closed_form_series(form, max_n)?;
            let label = if d == 3 { "triangulations" } else { "bipartite quadrangulations" };
            per_n(max_n, label, |n| counting(d, n, &series))
        }
        Suite::SeriesCrosscheck => crosscheck(a.order),
    })
}

pub fn run(a: &VerifyArgs, format: Format) -> CliResult<()> {
    let cases = cases(a)?;
    let failed = cases.iter().filter(|c| c.outcome.is_err()).count();
    match format {
        Format::Text => {
            for c in &cases {
                match &c.outcome {
                    Ok(detail) => println!("PASS {}: {detail}", c.name),
                    Err(f) => {
                        println!("FAIL {}: {}", c.name, f.reason);
                        if let Some(w) = &f.witness {
                            for line in w.lines() {
                                println!("    {line}");
                            }
                        }
                    }
                }
            }
        }
        Format::Json => {
            let items: Vec<_> = cases
                .iter()
                .map(|c| match &c.outcome {
                    Ok(detail) => json!({ "case": c.name, "pass": true, "detail": detail }),
                    Err(f) => json!({ "case": c.name, "pass": false, "detail": f.reason, "witness": f.witness }),
                })
                .collect();
            println!("{}", json!({ "suite": format!("{:?}", a.suite), "passed": failed == 0, "cases": items }));
        }
    }
    if failed > 0 {
        return Err(CliError::Domain(format!("{failed} case(s) failed")));
    }
    Ok(())
}
