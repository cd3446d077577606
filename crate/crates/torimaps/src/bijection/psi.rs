use super::{Color, Mobile};
use crate::map::{CombMap, Dart, FaceRootedMap};
use crate::orientation::{Regime, WeightedBiorientation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Open(Dart),
    /// Ingoing bud following the black end of a black-white edge.
    CloseEnd(Dart),
    /// Ingoing bud on the side of a white-white edge, named by the white
    /// dart the walk leaves from.
    CloseWhite(Dart),
}

fn tokens(t: &Mobile) -> Vec<Token> {
    let mut seq = Vec::new();
    let start = 0;
    let mut z = start;
    loop {
        if t.dart_color(z) == Color::White {
            let a = t.alpha(z).unwrap();
            seq.push(if t.dart_color(a) == Color::White { Token::CloseWhite(z) } else { Token::CloseEnd(a) });
        }
        let next = t.phi(z);
        if t.is_bud(next) {
            seq.push(Token::Open(next));
        }
        z = next;
        if z == start {
            return seq;
        }
    }
}

/// Cyclic parenthesis matching; returns the partner of every token and the
/// positions of the unmatched closing tokens in walk order.
fn match_cyclic(seq: &[Token]) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut partner = vec![None; seq.len()];
    let mut stack = Vec::new();
    for pass in 0..2 {
        for (i, tok) in seq.iter().enumerate() {
            if partner[i].is_some() {
                continue;
            }
            match tok {
                Token::Open(_) => {
                    if pass == 0 {
                        stack.push(i);
                    }
                }
                _ => {
                    if let Some(j) = stack.pop() {
                        partner[i] = Some(j);
                        partner[j] = Some(i);
                    }
                }
            }
        }
    }
    let exposed = (0..seq.len()).filter(|&i| partner[i].is_none() && !matches!(seq[i], Token::Open(_))).collect();
    (partner, exposed)
}

/// Closure of a mobile: buds are matched with the ingoing buds that follow
/// edge ends, the leftover ingoing buds are joined into the root face, and
/// white vertices become the vertices of the map.
pub fn psi_plus(t: &Mobile) -> Result<(FaceRootedMap, WeightedBiorientation)> {
    let d = t.excess();
    if d < 1 {
        return Err(Error::Precondition(format!("closure needs a positive excess, got {d}")));
    }
    if t.num_faces() != 1 {
        return Err(Error::Precondition("mobile is not unicellular".into()));
    }
    let seq = tokens(t);
    let (partner, exposed) = match_cyclic(&seq);
    if exposed.len() != d as usize || seq.iter().enumerate().any(|(i, s)| matches!(s, Token::Open(_)) && partner[i].is_none()) {
        return Err(Error::Internal(format!("{} exposed ingoing buds for excess {d}", exposed.len())));
    }

    let n = t.dart_count();
    let mut id = vec![usize::MAX; n];
    let mut black_darts = Vec::new();
    for x in (0..n).filter(|&x| t.dart_color(x) == Color::Black) {
        id[x] = black_darts.len();
        black_darts.push(x);
    }
    let nb = black_darts.len();
    let total = nb + exposed.len();
    let mut root_of = vec![usize::MAX; seq.len()];
    for (k, &i) in exposed.iter().enumerate() {
        root_of[i] = nb + k;
    }
    // the map dart standing for the outgoing bud matched with closing token i
    let owner = |i: usize| match partner[i] {
        Some(j) => match seq[j] {
            Token::Open(b) => id[b],
            _ => unreachable!(),
        },
        None => root_of[i],
    };
    let mut close_white = vec![usize::MAX; n];
    for (i, s) in seq.iter().enumerate() {
        if let Token::CloseWhite(x) = s {
            close_white[*x] = i;
        }
    }

    let mut alpha = vec![usize::MAX; total];
    let mut weights = vec![0; total];
    for (i, s) in seq.iter().enumerate() {
        match *s {
            Token::Open(_) => {}
            Token::CloseEnd(h) => {
                let o = owner(i);
                alpha[o] = id[h];
                alpha[id[h]] = o;
                weights[o] = t.weights[t.alpha(h).unwrap()];
                weights[id[h]] = t.weights[h];
            }
            Token::CloseWhite(x) => {
                let o = owner(i);
                alpha[o] = owner(close_white[t.alpha(x).unwrap()]);
                weights[o] = t.weights[x];
            }
        }
    }
    for [x, y] in t.edges() {
        if t.dart_color(x) == Color::Black && t.dart_color(y) == Color::Black {
            alpha[id[x]] = id[y];
            alpha[id[y]] = id[x];
            weights[id[x]] = t.weights[x];
            weights[id[y]] = t.weights[y];
        }
    }
    if alpha.contains(&usize::MAX) {
        return Err(Error::Internal("closure left a dart unpaired".into()));
    }

    let mut phi = vec![0; total];
    for &x in &black_darts {
        let rot = t.rotation(t.vertex(x));
        let pos = rot.iter().position(|&y| y == x).unwrap();
        phi[id[x]] = id[rot[(pos + rot.len() - 1) % rot.len()]];
    }
    let k = exposed.len();
    for j in 0..k {
        phi[nb + j] = nb + (j + 1) % k;
    }
    let sigma: Vec<Dart> = (0..total).map(|x| phi[alpha[x]]).collect();
    let map = CombMap::new(alpha, sigma)?;
    let whites = t.vertices_of(Color::White).count();
    if map.num_vertices() != whites || map.genus() != t.genus() {
        return Err(Error::Internal(format!(
            "closure has {} vertices and genus {}, expected {whites} and {}",
            map.num_vertices(),
            map.genus(),
            t.genus()
        )));
    }
    let regime = if weights.iter().any(|&w| w < 0) { Regime::Z } else { Regime::N };
    Ok((FaceRootedMap::new(map, nb)?, WeightedBiorientation { weights, regime }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::phi_plus;

    #[test]
    fn closure_inverts_opening_on_one_vertex_triangulation() {
        let m = CombMap::from_cycles(6, &[(0, 1), (2, 3), (4, 5)], &[vec![0, 2, 4, 1, 3, 5]]).unwrap();
        let mut out = vec![false; 6];
        for &x in &m.faces()[m.face(0)] {
            out[x] = true;
        }
        let frm = FaceRootedMap::new(m, 0).unwrap();
        let w = WeightedBiorientation::from_outgoing(&out);
        let t = phi_plus(&frm, &w).unwrap();
        let (back, wb) = psi_plus(&t).unwrap();
        assert_eq!(
            back.face_rooted_code_with(|x| wb.weights[x]),
            frm.face_rooted_code_with(|x| w.weights[x])
        );
    }
}
