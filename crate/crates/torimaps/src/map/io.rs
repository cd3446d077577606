use super::{CombMap, Dart};
use crate::{Error, Result};
use std::fmt::Write as _;

/// A map read from the line-oriented text format, with its optional extras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedMap {
    pub map: CombMap,
    pub root_face: Option<Dart>,
    pub root_corner: Option<Dart>,
    pub weights: Option<Vec<i64>>,
}

impl ParsedMap {
    pub fn plain(map: CombMap) -> ParsedMap {
        ParsedMap { map, root_face: None, root_corner: None, weights: None }
    }

    /// The dart marking the root: the corner if given, else the face dart.
    pub fn root(&self) -> Option<Dart> {
        self.root_corner.or(self.root_face)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_dart(tok: &str, line: usize) -> Result<Dart> {
    tok.trim().parse::<usize>().map_err(|_| perr(line, format!("bad dart '{tok}'")))
}

pub fn parse_map(text: &str) -> Result<ParsedMap> {
    let mut darts = None;
    let mut pairs = Vec::new();
    let mut cycles = Vec::new();
    let mut root_face = None;
    let mut root_corner = None;
    let mut weights: Option<Vec<(usize, i64)>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once(':').ok_or_else(|| perr(line, "expected 'key: value'"))?;
        let value = value.trim();
        match key.trim() {
            "darts" => darts = Some(value.parse::<usize>().map_err(|_| perr(line, "bad dart count"))?),
            "alpha" => {
                for tok in value.split_whitespace() {
                    let (a, b) = tok.split_once('-').ok_or_else(|| perr(line, format!("bad pair '{tok}'")))?;
                    pairs.push((parse_dart(a, line)?, parse_dart(b, line)?));
                }
            }
            "sigma" => {
                let mut rest = value;
                while !rest.is_empty() {
                    let open = rest.strip_prefix('(').ok_or_else(|| perr(line, "expected '('"))?;
                    let close = open.find(')').ok_or_else(|| perr(line, "missing ')'"))?;
                    let cyc = open[..close]
                        .split_whitespace()
                        .map(|t| parse_dart(t, line))
                        .collect::<Result<Vec<_>>>()?;
                    if cyc.is_empty() {
                        return Err(perr(line, "empty cycle"));
                    }
                    cycles.push(cyc);
                    rest = open[close + 1..].trim_start();
                }
            }
            "root_face" => root_face = Some(parse_dart(value, line)?),
            "root_corner" => root_corner = Some(parse_dart(value, line)?),
            "weights" => {
                let mut w = Vec::new();
                for tok in value.split_whitespace() {
                    let (d, x) = tok.split_once('=').ok_or_else(|| perr(line, format!("bad weight '{tok}'")))?;
                    let x = x.parse::<i64>().map_err(|_| perr(line, format!("bad weight '{tok}'")))?;
                    w.push((parse_dart(d, line)?, x));
                }
                weights = Some(w);
            }
            other => return Err(perr(line, format!("unknown key '{other}'"))),
        }
    }
    let n = darts.ok_or_else(|| perr(0, "missing 'darts:' line"))?;
    let map = CombMap::from_cycles(n, &pairs, &cycles)?;
    for r in [root_face, root_corner].into_iter().flatten() {
        if r >= n {
            return Err(Error::InvalidMap(format!("root dart {r} out of range")));
        }
    }
    let weights = match weights {
        None => None,
        Some(list) => {
            let mut w = vec![None; n];
            for (d, x) in list {
                if d >= n || w[d].is_some() {
                    return Err(Error::InvalidMap(format!("weight for dart {d} repeated or out of range")));
                }
                w[d] = Some(x);
            }
            Some(w.into_iter().map(|x| x.ok_or_else(|| Error::InvalidMap("missing dart weight".into()))).collect::<Result<Vec<_>>>()?)
        }
    };
    Ok(ParsedMap { map, root_face, root_corner, weights })
}

/// Canonical text form: pairs and cycles each start at their smallest dart
/// and are listed by increasing smallest dart.
pub fn write_map(p: &ParsedMap) -> String {
    let m = &p.map;
    let mut out = String::new();
    writeln!(out, "darts: {}", m.dart_count()).unwrap();
    let pairs: Vec<String> = m.edges().iter().map(|e| format!("{}-{}", e[0].min(e[1]), e[0].max(e[1]))).collect();
    writeln!(out, "alpha: {}", pairs.join(" ")).unwrap();
    let mut cycles: Vec<Vec<Dart>> = m.vertices().iter().map(|c| m.rotation_from(*c.iter().min().unwrap())).collect();
    cycles.sort();
    let body: String = cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    writeln!(out, "sigma: {body}").unwrap();
    if let Some(r) = p.root_face {
        writeln!(out, "root_face: {r}").unwrap();
    }
    if let Some(r) = p.root_corner {
        writeln!(out, "root_corner: {r}").unwrap();
    }
    if let Some(w) = &p.weights {
        let items: Vec<String> = w.iter().enumerate().map(|(d, x)| format!("{d}={x}")).collect();
        writeln!(out, "weights: {}", items.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "# one-vertex triangulation\ndarts: 6\nalpha: 0-1 2-3 4-5\nsigma: (0 2 4 1 3 5)\nroot_face: 0\n";

    #[test]
    fn round_trip_is_exact() {
        let p = parse_map(TRI).unwrap();
        assert_eq!(p.map.num_faces(), 2);
        let text = write_map(&p);
        assert_eq!(parse_map(&text).unwrap(), p);
        assert_eq!(write_map(&parse_map(&text).unwrap()), text);
    }

    #[test]
    fn weights_and_errors() {
        let p = parse_map("darts: 2\nalpha: 0-1\nsigma: (0)(1)\nweights: 0=1 1=0\n").unwrap();
        assert_eq!(p.weights, Some(vec![1, 0]));
        assert!(matches!(parse_map("darts: 2\nalpha: 0-1\nbogus: 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_map("darts: 4\nalpha: 0-1\nsigma: (0 1)\n").is_err());
    }
}
