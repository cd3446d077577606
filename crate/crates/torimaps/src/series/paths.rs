use super::PowerSeries;
use crate::Result;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Steps {
    PlusMinus,
    Motzkin,
}

/// Walk generating functions `P^(i)` evaluated at a series `t` without
/// constant term.
#[derive(Clone, Debug)]
pub struct PathSeries {
    steps: Steps,
    pub t: PowerSeries,
    /// Non-empty excursions: Dyck for `±1` steps, `t` times Motzkin otherwise.
    pub u: PowerSeries,
    /// Bridges, `P^(0)`.
    pub b: PowerSeries,
}

impl PathSeries {
    /// Walks ending at height `i`.
    pub fn p(&self, i: i64) -> PowerSeries {
        let a = i.unsigned_abs() as u32;
        match self.steps {
            Steps::PlusMinus => {
                let one = PowerSeries::one(self.t.order());
                &(&self.b * &(&one + &self.u).pow(a)) * &self.t.pow(a / 2)
            }
            Steps::Motzkin => &self.b * &self.u.pow(a),
        }
    }
}

/// `±1` walks with `t` marking half the length (rounded down).
pub fn bridge_series(t: &PowerSeries) -> Result<PathSeries> {
    let n = t.order();
    let one = PowerSeries::one(n);
    let u = PowerSeries::fixed_point(n, |u| t * &(&one + u).pow(2))?;
    let b = (&one - &(&t.scale_int(2) * &(&one + &u))).recip()?;
    Ok(PathSeries { steps: Steps::PlusMinus, t: t.clone(), u, b })
}

/// Walks with steps in `{-1, 0, 1}`, `t` marking the length.
pub fn motzkin_series(t: &PowerSeries) -> Result<PathSeries> {
    let n = t.order();
    let one = PowerSeries::one(n);
    let u = PowerSeries::fixed_point(n, |u| t * &(&(&one + u) + &u.pow(2)))?;
    let b = (&(&one - t) - &(&t.scale_int(2) * &u)).recip()?;
    Ok(PathSeries { steps: Steps::Motzkin, t: t.clone(), u, b })
}

/// `counts[n][i]`: walks of length `n` from 0 to `i` with the given steps.
pub fn walk_counts(steps: &[i64], max_len: usize) -> Vec<BTreeMap<i64, u64>> {
    let mut out = vec![BTreeMap::from([(0, 1)])];
    for _ in 0..max_len {
        let mut next = BTreeMap::new();
        for (&h, &c) in out.last().unwrap() {
            for &s in steps {
                *next.entry(h + s).or_insert(0) += c;
            }
        }
        out.push(next);
    }
    out
}
