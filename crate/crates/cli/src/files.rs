use std::fs;
use std::path::Path;

use torimaps::bijection::Mobile;
use torimaps::map::{parse_map, ParsedMap};
use torimaps::{FaceRootedMap, Regime, WeightedBiorientation};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_map(path: &Path) -> CliResult<ParsedMap> {
    Ok(parse_map(&read_text(path)?)?)
}

pub fn read_mobile(path: &Path) -> CliResult<Mobile> {
    Ok(Mobile::from_json(&read_text(path)?)?)
}

/// Writes to the file if one is given, else to standard output.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn face_rooted(parsed: &ParsedMap) -> CliResult<FaceRootedMap> {
    let root = parsed.root().ok_or_else(|| CliError::Domain("the map has no root_face or root_corner line".into()))?;
    Ok(FaceRootedMap::new(parsed.map.clone(), root)?)
}

/// The orientation stored with a map; negative weights select the Z-regime.
pub fn orientation(parsed: &ParsedMap) -> CliResult<WeightedBiorientation> {
    let weights = parsed.weights.clone().ok_or_else(|| CliError::Domain("the map has no weights line".into()))?;
    let regime = if weights.iter().any(|&w| w < 0) { Regime::Z } else { Regime::N };
    Ok(WeightedBiorientation::new(&parsed.map, weights, regime)?)
}

pub fn with_orientation(frm: &FaceRootedMap, w: &WeightedBiorientation) -> ParsedMap {
    ParsedMap { map: frm.map.clone(), root_face: Some(frm.root), root_corner: None, weights: Some(w.weights.clone()) }
}
