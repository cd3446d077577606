use std::fs;

use serde_json::json;
use torimaps::balanced::{balanced_dd2, canonical_z_orientation, halve_bipartite};
use torimaps::bijection::{check_family, phi_plus, psi_plus, FamilyTag, Mobile, MobileFamilyCheck};
use torimaps::enumerate::{for_each_map, FaceRule, Filter, GenSpec, Rooting};
use torimaps::map::{write_map, ParsedMap};
use torimaps::series::{closed_form_series, solve_v_system, solve_w_system, ClosedForm, PowerSeries, XAssignment};
use torimaps::{FaceRootedMap, WeightedBiorientation};

use crate::error::{CliError, CliResult};
use crate::files::{emit, face_rooted, orientation, read_map, read_mobile, with_orientation};
use crate::{BijectArgs, EnumerateArgs, FamilyArg, Format, OrientArgs, SeriesArgs};

fn number(key: &str, value: &str) -> CliResult<usize> {
    value.parse().map_err(|_| CliError::Usage(format!("{key} expects a non-negative integer, got '{value}'")))
}

pub fn parse_faces(text: &str) -> CliResult<FaceRule> {
    if let Some(rest) = text.strip_prefix("root=") {
        let (root, min) = rest
            .split_once(",min=")
            .ok_or_else(|| CliError::Usage(format!("face rule '{text}' should read root=D,min=M")))?;
        return Ok(FaceRule::RootThenAtLeast { root: number("root", root)?, min: number("min", min)? });
    }
    let (key, value) = text.split_once('=').ok_or_else(|| CliError::Usage(format!("face rule '{text}' has no '='")))?;
    let v = number(key, value)?;
    match key {
        "all" => Ok(FaceRule::All(v)),
        "at-least" => Ok(FaceRule::AtLeast(v)),
        "even-at-least" => Ok(FaceRule::EvenAtLeast(v)),
        "single" => Ok(FaceRule::Single(v)),
        _ => Err(CliError::Usage(format!("unknown face rule '{key}'"))),
    }
}

pub fn parse_filter(text: &str) -> CliResult<Filter> {
    if text == "bipartite" {
        return Ok(Filter::Bipartite);
    }
    let (key, value) = text.split_once('=').ok_or_else(|| CliError::Usage(format!("filter '{text}' has no '='")))?;
    let v = number(key, value)?;
    match key {
        "essential-girth" => Ok(Filter::EssentialGirth(v)),
        "girth-at-least" => Ok(Filter::GirthAtLeast(v)),
        "in-m" => Ok(Filter::InM(v)),
        "in-l" => Ok(Filter::InL(v)),
        "in-f" => Ok(Filter::InF(v)),
        _ => Err(CliError::Usage(format!("unknown filter '{key}'"))),
    }
}

/// Edge count forced by Euler's formula when every face has degree `d`.
fn forced_edges(genus: usize, vertices: usize, rule: &FaceRule) -> Option<usize> {
    match *rule {
        FaceRule::All(d) if d > 2 => {
            let num = d * (vertices + 2 * genus).checked_sub(2)?;
            (num % (d - 2) == 0).then(|| num / (d - 2))
        }
        FaceRule::Single(k) if k % 2 == 0 => Some(k / 2),
        _ => None,
    }
}

pub fn enumerate(a: &EnumerateArgs, format: Format) -> CliResult<()> {
    let faces = parse_faces(&a.faces)?;
    let max_edges = match a.max_edges.or_else(|| forced_edges(a.genus, a.vertices, &faces)) {
        Some(e) => e,
        None => return Err(CliError::Usage("--max-edges is required for this face rule".into())),
    };
    let mut spec = GenSpec::new(a.genus, a.vertices, max_edges, faces);
    for f in &a.filters {
        spec = spec.filter(parse_filter(f)?);
    }
    if a.face_rooted {
        spec = spec.face_rooted();
    }
    if let Some(dir) = &a.emit {
        fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut count = 0u64;
    let mut failure = None;
    for_each_map(&spec, |frm| {
        if let (Some(dir), None) = (&a.emit, &failure) {
            let parsed = rooted_text(frm, spec.rooting);
            if let Err(e) = fs::write(dir.join(format!("map_{count:05}.tor")), write_map(&parsed)) {
                failure = Some(CliError::Usage(format!("cannot write into {}: {e}", dir.display())));
            }
        }
        count += 1;
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    match format {
        Format::Text => println!("{count}"),
        Format::Json => println!("{}", json!({ "count": count, "emitted": a.emit.is_some() })),
    }
    Ok(())
}

fn rooted_text(frm: &FaceRootedMap, rooting: Rooting) -> ParsedMap {
    let mut p = ParsedMap::plain(frm.map.clone());
    match rooting {
        Rooting::Corner => p.root_corner = Some(frm.root),
        _ => p.root_face = Some(frm.root),
    }
    p
}

fn weight_tables(frm: &FaceRootedMap, w: &WeightedBiorientation) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    let m = &frm.map;
    (
        (0..m.num_vertices()).map(|v| w.vertex_weight(m, v)).collect(),
        (0..m.num_edges()).map(|e| w.edge_weight(m, e)).collect(),
        (0..m.num_faces()).map(|f| w.face_weight(m, f)).collect(),
    )
}

fn table_line(name: &str, prefix: char, values: &[i64]) -> String {
    let items: Vec<String> = values.iter().enumerate().map(|(i, x)| format!("{prefix}{i}={x}")).collect();
    format!("{name}: {}", items.join(" "))
}

pub fn orient(a: &OrientArgs, format: Format) -> CliResult<()> {
    let parsed = read_map(&a.input)?;
    let frm = face_rooted(&parsed)?;
    let mut w = if a.z_regime {
        canonical_z_orientation(&frm, a.d)?.ok_or_else(|| CliError::Domain(format!("the map is not in L_{}", a.d)))?
    } else {
        balanced_dd2(&frm, a.d)?
    };
    if a.bipartite_halve {
        w = halve_bipartite(&frm, a.d, &w)?;
    }
    let text = write_map(&with_orientation(&frm, &w));
    let (vertices, edges, faces) = weight_tables(&frm, &w);
    match (format, &a.output) {
        (Format::Text, None) => emit(None, &text)?,
        (Format::Text, Some(path)) => {
            emit(Some(path), &text)?;
            println!("{}", table_line("vertex weights", 'v', &vertices));
            println!("{}", table_line("edge weights", 'e', &edges));
            println!("{}", table_line("face weights", 'f', &faces));
        }
        (Format::Json, path) => {
            if let Some(p) = path {
                emit(Some(p), &text)?;
            }
            let report = json!({
                "regime": format!("{:?}", w.regime),
                "weights": w.weights,
                "vertex_weights": vertices,
                "edge_weights": edges,
                "face_weights": faces,
                "map": if path.is_none() { Some(text) } else { None },
            });
            println!("{report}");
        }
    }
    Ok(())
}

fn family_check(family: FamilyArg, param: i64) -> MobileFamilyCheck {
    let tag = match family {
        FamilyArg::U => FamilyTag::U,
        FamilyArg::UBal => FamilyTag::UBal,
        FamilyArg::HatU => FamilyTag::HatU,
        FamilyArg::HatUBal => FamilyTag::HatUBal,
        FamilyArg::V => FamilyTag::V,
        FamilyArg::VBal => FamilyTag::VBal,
        FamilyArg::HatV => FamilyTag::HatV,
        FamilyArg::HatVBal => FamilyTag::HatVBal,
    };
    MobileFamilyCheck { tag, param }
}

fn require_family(a: &BijectArgs, t: &Mobile) -> CliResult<()> {
    if let (Some(family), Some(param)) = (a.family, a.param) {
        if !check_family(t, family_check(family, param)) {
            return Err(CliError::Domain(format!("the mobile is not in the family {family:?} with parameter {param}")));
        }
    }
    Ok(())
}

pub fn biject(a: &BijectArgs, _format: Format) -> CliResult<()> {
    if a.forward {
        let parsed = read_map(&a.input)?;
        let frm = face_rooted(&parsed)?;
        let w = orientation(&parsed)?;
        let t = phi_plus(&frm, &w)?;
        require_family(a, &t)?;
        emit(a.output.as_deref(), &format!("{}\n", t.to_json()))
    } else {
        let t = read_mobile(&a.input)?;
        require_family(a, &t)?;
        let (frm, w) = psi_plus(&t)?;
        emit(a.output.as_deref(), &write_map(&with_orientation(&frm, &w)))
    }
}

fn family_series(family: &str, order: usize, xdelta: Option<usize>) -> CliResult<PowerSeries> {
    let closed = match family {
        "triangulation" => Some(ClosedForm::T),
        "quadrangulation" => Some(ClosedForm::Q),
        "bip-quad-all" => Some(ClosedForm::F),
        "loopless-tri-all" => Some(ClosedForm::G),
        _ => None,
    };
    if let Some(which) = closed {
        if xdelta.is_some() {
            return Err(CliError::Usage(format!("--xdelta does not apply to the family {family}")));
        }
        return Ok(closed_form_series(which, order)?);
    }
    let parse_param = |rest: &str| number(&family[..1], rest);
    if let Some(rest) = family.strip_prefix('W') {
        let d = parse_param(rest)?;
        return Ok(solve_w_system(d, &XAssignment::delta(xdelta.unwrap_or(d)), order)?.a);
    }
    if let Some(rest) = family.strip_prefix('V') {
        let b = parse_param(rest)?;
        return Ok(solve_v_system(b, &XAssignment::delta(xdelta.unwrap_or(2 * b)), order)?.a);
    }
    Err(CliError::Usage(format!("unknown series family '{family}'")))
}

pub fn series(a: &SeriesArgs, format: Format) -> CliResult<()> {
    let s = family_series(&a.family, a.order, a.xdelta)?;
    let coeffs = s.to_integers().map_err(|e| CliError::Internal(format!("non-integral counting series: {e}")))?;
    match format {
        Format::Text => {
            for c in &coeffs {
                println!("{c}");
            }
        }
        Format::Json => {
            let values: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            println!("{}", json!({ "family": a.family, "order": a.order, "coefficients": values }));
        }
    }
    Ok(())
}
