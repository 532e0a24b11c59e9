use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Roots of an analytic polynomial `z^m q(z)` with `q(0) != 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Roots {
    /// Roots of `q`, with multiplicity.
    pub roots: Vec<Complex64>,
    /// The order `m` of the monomial factor.
    pub monomial_order: usize,
    /// Largest relative residual `|q(r)| / sum |q_k| |r|^k`.
    pub max_residual: f64,
}

pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

/// Companion-matrix eigenvalues followed by one Newton step per root.
pub fn poly_roots(p: &LaurentPoly) -> Result<Roots> {
    let Some((lo, _)) = p.band() else {
        return Err(Error::ZeroInput("poly_roots of the zero polynomial"));
    };
    if lo < 0 {
        return Err(Error::Precondition(format!(
            "poly_roots needs an analytic polynomial, got kmin = {lo}"
        )));
    }
    let q = p.dense();
    let roots = polynomial_roots(q)?;
    let max_residual = roots
        .iter()
        .map(|&r| relative_residual(q, r))
        .fold(0.0, f64::max);
    if max_residual > ROOT_RESIDUAL_TOL {
        return Err(Error::Roots(format!(
            "residual {max_residual:e} above tolerance"
        )));
    }
    Ok(Roots {
        roots,
        monomial_order: lo as usize,
        max_residual,
    })
}

/// Roots of `sum q[k] z^k`, `q` lowest degree first with nonzero ends.
pub(crate) fn polynomial_roots(q: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = q.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = q[d];
    if d == 1 {
        return Ok(vec![-q[0] / lead]);
    }
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -q[i] / lead;
    }
    let eig = Schur::try_new(comp, 1e-15, 10_000).and_then(|s| s.eigenvalues());
    let mut roots: Vec<Complex64> = match eig {
        Some(v) => v.iter().copied().collect(),
        None => aberth(q)?,
    };
    for r in roots.iter_mut() {
        *r = newton_step(q, *r);
    }
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(roots)
}

fn horner(q: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in q.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn newton_step(q: &[Complex64], r: Complex64) -> Complex64 {
    let (v, dv) = horner(q, r);
    if dv.norm() == 0.0 {
        return r;
    }
    let next = r - v / dv;
    if next.re.is_finite() && next.im.is_finite() && horner(q, next).0.norm() <= v.norm() {
        next
    } else {
        r
    }
}

fn relative_residual(q: &[Complex64], r: Complex64) -> f64 {
    let scale: f64 = q
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
        .sum();
    horner(q, r).0.norm() / scale.max(f64::MIN_POSITIVE)
}

fn aberth(q: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = q.len() - 1;
    let radius = q
        .iter()
        .take(d)
        .map(|c| (c / q[d]).norm())
        .fold(0.0, f64::max)
        .max(1e-3)
        + 1.0;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner(q, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-16 {
            return Ok(z);
        }
    }
    if z.iter().all(|r| r.re.is_finite() && r.im.is_finite()) {
        Ok(z)
    } else {
        Err(Error::Roots("Aberth iteration diverged".into()))
    }
}

/// `min over roots | |r| - 1 |`, the distance of the zero set to the circle.
/// Infinite for nonzero monomials; `0` for the zero symbol.
pub fn circle_distance(p: &LaurentPoly) -> Result<f64> {
    let Some((lo, _)) = p.band() else {
        return Ok(0.0);
    };
    let r = poly_roots(&p.shift(-lo))?;
    Ok(r
        .roots
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(f64::INFINITY, f64::min))
}
