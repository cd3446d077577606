use super::{bridge_series, motzkin_series, PowerSeries};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Essentially simple triangulations.
    T,
    /// Essentially simple bipartite quadrangulations.
    Q,
    /// Bipartite quadrangulations.
    F,
    /// Essentially loopless triangulations.
    G,
}

fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `1 + c*r` for an integer `c`.
fn affine(c: i64, r: &PowerSeries) -> PowerSeries {
    &PowerSeries::one(r.order()) + &r.scale_int(c)
}

/// Rooted toroidal maps counted by vertices, from the closed form in `r`.
pub fn closed_form_series(which: ClosedForm, order: usize) -> Result<PowerSeries> {
    let z = PowerSeries::var(order);
    let fp = |c: i64, e: u32| PowerSeries::fixed_point(order, |r| &z * &affine(c, r).pow(e));
    match which {
        ClosedForm::T => {
            let r = fp(1, 4)?;
            r.div(&affine(-3, &r).pow(2))
        }
        ClosedForm::Q => {
            let r = fp(1, 3)?;
            r.pow(2).div(&(&affine(2, &r) * &affine(-2, &r).pow(2)))
        }
        ClosedForm::F => {
            let r = fp(3, 2)?;
            (&r.pow(2) * &affine(3, &r)).div(&(&affine(1, &r) * &affine(-3, &r).pow(2)))
        }
        ClosedForm::G => {
            let r = fp(2, 3)?;
            (&r * &affine(2, &r)).div(&affine(-4, &r).pow(2))
        }
    }
}

/// Ingredients of the mobile computation for triangulations, all as
/// series in `z`.
#[derive(Clone, Debug)]
pub struct TriangulationParts {
    pub r: PowerSeries,
    pub s: PowerSeries,
    pub t: PowerSeries,
    pub u: PowerSeries,
    pub b: PowerSeries,
    pub n_ww: PowerSeries,
    pub n_bb: PowerSeries,
    pub n_bw: PowerSeries,
    pub n: PowerSeries,
    pub total: PowerSeries,
}

pub fn triangulation_parts(order: usize) -> Result<TriangulationParts> {
    let z = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let r = &one + &PowerSeries::fixed_point(order, |x| &z * &(&one + x).pow(4))?;
    let s = r.pow(2);
    let t = &(&z * &r) * &s;
    let paths = bridge_series(&t)?;
    let reach = 2 * (order / 3 + 1) + 1;
    let mut odd = PowerSeries::zero(order);
    let mut even = PowerSeries::zero(order);
    for i in -(reach as i64)..=reach as i64 {
        let cube = paths.p(i).pow(3);
        if i % 2 == 0 {
            even = even + &cube;
        } else {
            odd = odd + &cube;
        }
    }
    let n_ww = &(&z.pow(2) * &r.pow(3)) * &odd;
    let n_bb = &(&z.pow(3) * &s.pow(3)) * &odd;
    let n_bw = &z * &even;
    let n = &(&n_bb + &n_bw.scale_int(2)) + &n_ww;
    let total = (&r.pow(3) * &n).scale(&frac(1, 2));
    Ok(TriangulationParts { r, s, t, u: paths.u, b: paths.b, n_ww, n_bb, n_bw, n, total })
}

fn agree(route: &PowerSeries, closed: &PowerSeries, what: &str) -> Result<()> {
    if route != closed {
        return Err(Error::Internal(format!("{what}: mobile route {route} differs from closed form {closed}")));
    }
    Ok(())
}

/// `T(z)` through balanced 3-regular mobiles, checked against the closed form.
pub fn mobile_route_triangulation(order: usize) -> Result<PowerSeries> {
    let parts = triangulation_parts(order)?;
    agree(&parts.total, &closed_form_series(ClosedForm::T, order)?, "triangulations")?;
    Ok(parts.total)
}

/// Ingredients of the mobile computation for quadrangulations.
#[derive(Clone, Debug)]
pub struct QuadrangulationParts {
    pub r: PowerSeries,
    pub t: PowerSeries,
    pub u: PowerSeries,
    pub b: PowerSeries,
    pub n_ia: PowerSeries,
    pub n_ib: PowerSeries,
    pub n_i: PowerSeries,
    pub n_ii: PowerSeries,
    pub total: PowerSeries,
}

pub fn quadrangulation_parts(order: usize) -> Result<QuadrangulationParts> {
    let z = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let r = &one + &PowerSeries::fixed_point(order, |x| &z * &(&one + x).pow(3))?;
    let t = &z * &r.pow(2);
    let paths = motzkin_series(&t)?;
    let reach = (order / 2 + 2) as i64;
    let mut same = PowerSeries::zero(order);
    let mut shifted = PowerSeries::zero(order);
    for i in -reach..=reach {
        let p = paths.p(i);
        same = same + &p.pow(3);
        shifted = shifted + &(&p.pow(2) * &paths.p(i - 1));
    }
    let pre = (&r.pow(2) * &z.pow(3)).scale_int(3);
    let n_ib = &pre * &same;
    let n_ia = &pre * &shifted;
    let n_i = &n_ia.scale_int(2) + &n_ib;
    let n_ii = &z.pow(2) * &paths.b.pow(2);
    let total = &r.pow(4) * &(&n_i.scale(&frac(2, 3)) + &n_ii);
    Ok(QuadrangulationParts { r, t, u: paths.u, b: paths.b, n_ia, n_ib, n_i, n_ii, total })
}

/// `Q(z)` through balanced (4,2)-regular mobiles, checked against the closed form.
pub fn mobile_route_quadrangulation(order: usize) -> Result<PowerSeries> {
    let parts = quadrangulation_parts(order)?;
    agree(&parts.total, &closed_form_series(ClosedForm::Q, order)?, "quadrangulations")?;
    Ok(parts.total)
}

/// `d * A_d * (G_d / 6 + H_d / 4)`.
pub fn assemble_md(d: usize, a: &PowerSeries, g: &PowerSeries, h: &PowerSeries) -> PowerSeries {
    let inner = &g.scale(&frac(1, 6)) + &h.scale(&frac(1, 4));
    (a * &inner).scale_int(d as i64)
}

/// `2b * hatA_2b * (hatG_2b / 6 + hatH_2b / 4)`.
pub fn assemble_hat_m2b(b: usize, a: &PowerSeries, g: &PowerSeries, h: &PowerSeries) -> PowerSeries {
    assemble_md(2 * b, a, g, h)
}
