//! Oracles written against the definitions only. Nothing here calls into the
//! library's operator, kernel or root-finding code.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use paired::LaurentPoly;

pub type Coeffs = BTreeMap<i64, Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn coeffs(p: &LaurentPoly) -> Coeffs {
    p.terms().collect()
}

pub fn mul(x: &Coeffs, y: &Coeffs) -> Coeffs {
    let mut out = Coeffs::new();
    for (i, a) in x {
        for (j, b) in y {
            *out.entry(i + j).or_default() += a * b;
        }
    }
    out
}

pub fn add(x: &Coeffs, y: &Coeffs) -> Coeffs {
    let mut out = x.clone();
    for (k, v) in y {
        *out.entry(*k).or_default() += v;
    }
    out
}

pub fn plus(x: &Coeffs) -> Coeffs {
    x.iter().filter(|(k, _)| **k >= 0).map(|(k, v)| (*k, *v)).collect()
}

pub fn minus(x: &Coeffs) -> Coeffs {
    x.iter().filter(|(k, _)| **k < 0).map(|(k, v)| (*k, *v)).collect()
}

/// `a f+ + b f-`
pub fn apply_s(a: &Coeffs, b: &Coeffs, f: &Coeffs) -> Coeffs {
    add(&mul(a, &plus(f)), &mul(b, &minus(f)))
}

/// `P+(a f) + P-(b f)`
pub fn apply_sigma(a: &Coeffs, b: &Coeffs, f: &Coeffs) -> Coeffs {
    add(&plus(&mul(a, f)), &minus(&mul(b, f)))
}

pub fn norm(x: &Coeffs) -> f64 {
    x.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

pub fn dist(x: &Coeffs, y: &Coeffs) -> f64 {
    let neg: Coeffs = y.iter().map(|(k, v)| (*k, -v)).collect();
    norm(&add(x, &neg))
}

pub fn max_abs(x: &Coeffs) -> f64 {
    x.values().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn eval(p: &Coeffs, z: Complex64) -> Complex64 {
    p.iter().map(|(k, v)| v * z.powi(*k as i32)).sum()
}

/// Winding number of `p` around 0 along the unit circle, by summing argument
/// increments on a fine grid.
pub fn winding(p: &Coeffs, m: usize) -> i64 {
    let vals: Vec<Complex64> = (0..=m)
        .map(|j| eval(p, Complex64::from_polar(1.0, TAU * j as f64 / m as f64)))
        .collect();
    let total: f64 = vals.windows(2).map(|w| (w[1] / w[0]).arg()).sum();
    (total / TAU).round() as i64
}

/// `min |p|` on an `m`-point grid.
pub fn grid_min(p: &Coeffs, m: usize) -> f64 {
    (0..m)
        .map(|j| eval(p, Complex64::from_polar(1.0, TAU * j as f64 / m as f64)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Matrix of `op` from `span{e_k : lo <= k <= hi}` into exponents `rlo..=rhi`,
/// built column by column from the naive applier.
pub fn matrix<F: Fn(&Coeffs) -> Coeffs>(op: F, lo: i64, hi: i64, rlo: i64, rhi: i64) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros((rhi - rlo + 1) as usize, (hi - lo + 1) as usize);
    for k in lo..=hi {
        let col = op(&Coeffs::from([(k, c(1.0, 0.0))]));
        for (j, v) in col {
            assert!(j >= rlo && j <= rhi, "row range too small");
            m[((j - rlo) as usize, (k - lo) as usize)] = v;
        }
    }
    m
}

/// Number of singular values below `tol * sigma_max`.
pub fn null_dim(m: &DMatrix<Complex64>, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > tol * top).count();
    m.ncols() - rank
}

/// `dim {f : band(f) in [-n, n], S_{a,b} f = 0}` by brute force.
pub fn kernel_dim(a: &Coeffs, b: &Coeffs, n: i64) -> usize {
    let d = a.keys().chain(b.keys()).map(|k| k.abs()).max().unwrap_or(0);
    let m = matrix(|f| apply_s(a, b, f), -n, n, -n - d, n + d);
    null_dim(&m, 1e-10)
}

/// Index formula for symbols without zeros on the circle:
/// `dim ker S_{a,b} = max(0, wind b - wind a)`.
pub fn winding_kernel_dim(a: &Coeffs, b: &Coeffs) -> usize {
    (winding(b, 1 << 14) - winding(a, 1 << 14)).max(0) as usize
}

/// `v` lies in the span of `basis` (orthonormalized here) within `tol`.
pub fn in_span(v: &Coeffs, basis: &[Coeffs], tol: f64) -> bool {
    let keys: Vec<i64> = {
        let mut k: Vec<i64> = basis.iter().flat_map(|b| b.keys().copied()).chain(v.keys().copied()).collect();
        k.sort();
        k.dedup();
        k
    };
    let col = |x: &Coeffs| nalgebra::DVector::from_iterator(keys.len(), keys.iter().map(|k| *x.get(k).unwrap_or(&c(0.0, 0.0))));
    let mut q: Vec<nalgebra::DVector<Complex64>> = Vec::new();
    for b in basis {
        let mut u = col(b);
        for e in &q {
            let p = e.dotc(&u);
            u -= e * p;
        }
        let n = u.norm();
        if n > 1e-12 {
            q.push(u / Complex64::new(n, 0.0));
        }
    }
    let mut r = col(v);
    let n0 = r.norm().max(f64::MIN_POSITIVE);
    for e in &q {
        let p = e.dotc(&r);
        r -= e * p;
    }
    r.norm() / n0 <= tol
}

pub fn from_real(terms: &[(i64, f64)]) -> Coeffs {
    terms.iter().map(|&(k, v)| (k, c(v, 0.0))).collect()
}

pub fn to_poly(x: &Coeffs) -> LaurentPoly {
    LaurentPoly::from_terms(x.iter().map(|(k, v)| (*k, *v)))
}
