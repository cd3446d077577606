use super::PowerSeries;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Values of the face-degree markers `x_i` on a finite list of degrees;
/// every other marker is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XAssignment {
    values: Vec<(usize, BigRational)>,
}

impl XAssignment {
    pub fn new(values: Vec<(usize, BigRational)>) -> XAssignment {
        let mut values: Vec<_> = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        values.sort_by_key(|(i, _)| *i);
        XAssignment { values }
    }

    /// `x_i = 1` for `i = degree` and zero otherwise.
    pub fn delta(degree: usize) -> XAssignment {
        XAssignment::new(vec![(degree, BigRational::one())])
    }

    /// `x_i = 1` for every listed degree.
    pub fn ones(degrees: &[usize]) -> XAssignment {
        XAssignment::new(degrees.iter().map(|&i| (i, BigRational::one())).collect())
    }

    pub fn get(&self, degree: usize) -> Option<&BigRational> {
        self.values.iter().find(|(i, _)| *i == degree).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, BigRational)> {
        self.values.iter()
    }
}

/// `h_j(w_1, w_2, ...)`, the sum over compositions of `j` of the products of
/// the parts; `w[i - 1]` holds `w_i` and missing variables are zero.
pub fn h_poly(j: usize, w: &[PowerSeries], order: usize) -> PowerSeries {
    let mut h = vec![PowerSeries::one(order)];
    for k in 1..=j {
        let mut s = PowerSeries::zero(order);
        for i in 1..=k.min(w.len()) {
            s = s + &(&w[i - 1] * &h[k - i]);
        }
        h.push(s);
    }
    h.pop().unwrap()
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn multinomial(k: usize, p: usize, q: usize) -> BigInt {
    binomial(k, p) * binomial(k - p, q)
}

/// `[u^{-m}] (a + b u^{-1} + u^{-2})^k`.
fn laurent_coeff(a: &PowerSeries, b: &PowerSeries, k: usize, m: usize, order: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(order);
    for q in 0..=m / 2 {
        let p = m - 2 * q;
        if p + q > k {
            continue;
        }
        let c = BigRational::from_integer(multinomial(k, p, q));
        let term = &a.pow((k - p - q) as u32) * &b.pow(p as u32);
        s = s + &term.scale(&c);
    }
    s
}

fn vector_fixed_point(
    len: usize,
    order: usize,
    step: impl Fn(&[PowerSeries]) -> Vec<PowerSeries>,
) -> Result<Vec<PowerSeries>> {
    let mut cur = vec![PowerSeries::zero(order); len];
    for _ in 0..2 * (order + 2) + len {
        let next = step(&cur);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Internal("series system did not stabilise".into()))
}

/// Solution of the planar system for girth-d pieces.
#[derive(Clone, Debug)]
pub struct WSystem {
    pub d: usize,
    /// `w[j + 1]` is `W_j` for `j` in `-1..=d-1`.
    pub w: Vec<PowerSeries>,
    /// `(1 + W_0)^d`.
    pub a: PowerSeries,
}

impl WSystem {
    pub fn get(&self, j: i64) -> &PowerSeries {
        &self.w[(j + 1) as usize]
    }
}

/// Solves `W_j = z h_{j+2}(W_1..W_{d-1})` for `j < d-2` together with the
/// two face-marker equations, and returns `A_d = (1 + W_0)^d`.
pub fn solve_w_system(d: usize, x: &XAssignment, order: usize) -> Result<WSystem> {
    if d < 3 {
        return Err(Error::Precondition(
            "with numeric face markers the system is only contracting in z for d >= 3".into(),
        ));
    }
    let z = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let idx = |j: i64| (j + 1) as usize;
    let w = vector_fixed_point(d + 1, order, |cur| {
        let mut next = Vec::with_capacity(d + 1);
        let vars: Vec<PowerSeries> = (1..d as i64).map(|i| cur[idx(i)].clone()).collect();
        for j in -1..=(d as i64 - 3) {
            next.push(&z * &h_poly((j + 2) as usize, &vars, order));
        }
        let a = &one + &cur[idx(0)];
        let b = &cur[idx(-1)];
        for j in [d as i64 - 2, d as i64 - 1] {
            let mut s = PowerSeries::zero(order);
            for (i, xi) in x.iter() {
                let m = *i as i64 - j - 2;
                if m < 0 || *i < d {
                    continue;
                }
                s = s + &laurent_coeff(&a, b, i - 1, m as usize, order).scale(xi);
            }
            next.push(s);
        }
        next
    })?;
    let a = (&one + &w[idx(0)]).pow(d as u32);
    Ok(WSystem { d, w, a })
}

/// Solution of the bipartite planar system.
#[derive(Clone, Debug)]
pub struct VSystem {
    pub b: usize,
    /// `v[j]` is `V_j` for `j` in `0..b`.
    pub v: Vec<PowerSeries>,
    /// `(1 + V_0)^{2b}`.
    pub a: PowerSeries,
}

/// Solves `V_j = z h_{j+1}(V_1..V_{b-1})` for `j < b-1` together with the
/// binomial face-marker equation for `V_{b-1}`.
pub fn solve_v_system(b: usize, x: &XAssignment, order: usize) -> Result<VSystem> {
    if b < 2 {
        return Err(Error::Precondition(
            "with numeric face markers the system is only contracting in z for b >= 2".into(),
        ));
    }
    let z = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let v = vector_fixed_point(b, order, |cur| {
        let vars: Vec<PowerSeries> = cur[1..].to_vec();
        let mut next: Vec<PowerSeries> = (0..b - 1).map(|j| &z * &h_poly(j + 1, &vars, order)).collect();
        let base = &one + &cur[0];
        let mut s = PowerSeries::zero(order);
        for (deg, xi) in x.iter() {
            if deg % 2 != 0 || deg / 2 < b {
                continue;
            }
            let i = deg / 2;
            let c = BigRational::from_integer(binomial(2 * i - 1, i - b));
            s = s + &base.pow((b + i - 1) as u32).scale(&(c * xi));
        }
        next.push(s);
        next
    })?;
    let a = (&one + &v[0]).pow(2 * b as u32);
    Ok(VSystem { b, v, a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, order: usize) -> PowerSeries {
        PowerSeries::from_ints(&[n], order)
    }

    #[test]
    fn small_h_polynomials() {
        let (w1, w2, w3) = (c(2, 0), c(3, 0), c(5, 0));
        let w = vec![w1, w2, w3];
        assert_eq!(h_poly(0, &w, 0), c(1, 0));
        assert_eq!(h_poly(2, &w, 0), c(3 + 4, 0));
        assert_eq!(h_poly(3, &w, 0), c(5 + 2 * 2 * 3 + 8, 0));
    }

    #[test]
    fn triangular_w_system() {
        let n = 8;
        let s = solve_w_system(3, &XAssignment::delta(3), n).unwrap();
        let one = PowerSeries::one(n);
        let z = PowerSeries::var(n);
        let (w0, w1) = (s.get(0), s.get(1));
        assert_eq!(*w0, &z * &w1.pow(2));
        assert_eq!(*w1, (&one + w0).pow(2));
        let r = &one + w0;
        assert_eq!(r, &one + &(&z * &w1.pow(2)));
        assert_eq!(*w1, r.pow(2));
        assert_eq!(s.a, r.pow(3));
        assert_eq!(&s.a.to_i64().unwrap()[..4], &[1, 3, 15, 91]);
    }

    #[test]
    fn quadrangular_v_system() {
        let n = 8;
        let s = solve_v_system(2, &XAssignment::delta(4), n).unwrap();
        let one = PowerSeries::one(n);
        let z = PowerSeries::var(n);
        assert_eq!(s.v[0], &z * &s.v[1]);
        assert_eq!(s.v[1], (&one + &s.v[0]).pow(3));
        let r = &one + &s.v[0];
        assert_eq!(r, &one + &(&z * &r.pow(3)));
    }

    #[test]
    fn small_d_systems_are_rejected() {
        assert!(solve_w_system(2, &XAssignment::delta(2), 4).is_err());
        assert!(solve_v_system(1, &XAssignment::delta(2), 4).is_err());
    }
}
