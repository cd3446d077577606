//! Exact truncated power series and the counting identities built on them.

mod forms;
mod paths;
mod systems;

pub use forms::{
    assemble_hat_m2b, assemble_md, closed_form_series, mobile_route_quadrangulation, mobile_route_triangulation,
    quadrangulation_parts, triangulation_parts, ClosedForm, QuadrangulationParts, TriangulationParts,
};
pub use paths::{bridge_series, motzkin_series, walk_counts, PathSeries};
pub use systems::{h_poly, solve_v_system, solve_w_system, VSystem, WSystem, XAssignment};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Power series in one variable truncated after `z^order`, with exact
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn constant(c: BigRational, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> PowerSeries {
        PowerSeries::constant(BigRational::one(), order)
    }

    /// The variable itself.
    pub fn var(order: usize) -> PowerSeries {
        PowerSeries::monomial(1, order)
    }

    pub fn monomial(k: usize, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    pub fn from_ints(values: &[i64], order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        for (k, &v) in values.iter().enumerate().take(order + 1) {
            s.coeffs[k] = rat(v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the first non-zero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, c: i64) -> PowerSeries {
        self.scale(&rat(c))
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let n = self.order();
        let mut s = PowerSeries::zero(n);
        for i in 0..=n {
            if i + k <= n {
                s.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        s
    }

    pub fn pow(&self, e: u32) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn recip(&self) -> Result<PowerSeries> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Precondition("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &b[k - i];
            }
            b[k] = -s * &inv0;
        }
        Ok(PowerSeries { coeffs: b })
    }

    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        Ok(self * &other.recip()?)
    }

    /// `self(inner(z))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition("composition needs an inner series without constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    /// The series `y` with `y = f(y)`, found by iteration from zero; `f` must
    /// raise the precision by at least one order per application.
    pub fn fixed_point(order: usize, f: impl Fn(&PowerSeries) -> PowerSeries) -> Result<PowerSeries> {
        let mut y = PowerSeries::zero(order);
        for _ in 0..=order + 1 {
            let next = f(&y);
            if next == y {
                return Ok(y);
            }
            y = next;
        }
        if f(&y) == y {
            Ok(y)
        } else {
            Err(Error::Internal("fixed point iteration did not stabilise".into()))
        }
    }

    /// The coefficients as integers, failing on any fractional one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Internal(format!("coefficient of z^{k} is {c}, not an integer")))
                }
            })
            .collect()
    }

    /// Integer coefficients that fit in `i64`.
    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.to_integers()?
            .into_iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::Internal(format!("coefficient {c} overflows i64"))))
            .collect()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl Add<&PowerSeries> for PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        &self + rhs
    }
}

impl Mul<&PowerSeries> for PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        &self * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_of_one_minus_z() {
        let n = 10;
        let s = &PowerSeries::one(n) - &PowerSeries::var(n);
        assert_eq!(&s.recip().unwrap() * &s, PowerSeries::one(n));
    }

    #[test]
    fn quartic_fixed_point() {
        let n = 6;
        let one = PowerSeries::one(n);
        let z = PowerSeries::var(n);
        let r = PowerSeries::fixed_point(n, |r| &z * &(&one + r).pow(4)).unwrap();
        assert_eq!(&r.to_i64().unwrap()[..5], &[0, 1, 4, 22, 140]);
        let residual = &r - &(&z * &(&one + &r).pow(4));
        assert_eq!(residual, PowerSeries::zero(n));
    }

    #[test]
    fn cubic_fixed_point() {
        let n = 3;
        let one = PowerSeries::one(n);
        let z = PowerSeries::var(n);
        let r = PowerSeries::fixed_point(n, |r| &z * &(&one + r).pow(3)).unwrap();
        assert_eq!(r.to_i64().unwrap(), vec![0, 1, 3, 12]);
    }

    #[test]
    fn composition_with_geometric_series() {
        let n = 8;
        let geo = (&PowerSeries::one(n) - &PowerSeries::var(n)).recip().unwrap();
        let two_z = PowerSeries::var(n).scale_int(2);
        let c = geo.compose(&two_z).unwrap();
        let expected = (&PowerSeries::one(n) - &two_z).recip().unwrap();
        assert_eq!(c, expected);
        assert!(geo.compose(&PowerSeries::one(n)).is_err());
    }

    #[test]
    fn display_is_readable() {
        let s = PowerSeries::from_ints(&[1, -2, 0, 1], 3);
        assert_eq!(s.to_string(), "1 - 2*z^1 + z^3 + O(z^4)");
    }
}
