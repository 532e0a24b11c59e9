use num_complex::Complex64;
use serde::Serialize;

use super::laurent::LaurentPoly;
use super::rational::RationalSymbol;
use super::roots::poly_roots;
use crate::error::{Error, Result};

/// Blaschke zeros must satisfy `|z0| < 1 - BOUNDARY_MARGIN`.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// Roots with `| |r| - 1 | <= CIRCLE_TOL` are treated as lying on the circle
/// and go to the outer factor.
pub const CIRCLE_TOL: f64 = 1e-7;

/// `p = inner * outer` for an analytic polynomial `p`.
///
/// `inner = gamma z^m prod B_r` over the roots strictly inside the disk;
/// `outer` is a polynomial without zeros in the open disk with `outer(0) > 0`.
/// Unimodular constants live in the inner factor.
#[derive(Clone, Debug, Serialize)]
pub struct InnerOuterFactorization {
    pub inner: RationalSymbol,
    pub outer: RationalSymbol,
    pub unimodular_constant: Complex64,
    pub monomial_order: usize,
    /// Zeros of the Blaschke part (inside the disk).
    pub inner_zeros: Vec<Complex64>,
    /// Zeros assigned to the outer factor (on or outside the circle).
    pub outer_zeros: Vec<Complex64>,
}

impl InnerOuterFactorization {
    /// The outer factor as a polynomial (it always has denominator 1).
    pub fn outer_poly(&self) -> &LaurentPoly {
        self.outer.num()
    }

    pub fn inner_is_constant(&self) -> bool {
        self.monomial_order == 0 && self.inner_zeros.is_empty()
    }

    /// `inner(0)`; zero when the monomial order is positive.
    pub fn inner_at_zero(&self) -> Complex64 {
        self.inner.eval(Complex64::new(0.0, 0.0))
    }

    /// `max | |inner| - 1 |` on an `m`-point grid.
    pub fn inner_deviation(&self, m: usize) -> f64 {
        self.inner.unimodular_deviation(m)
    }

    /// `max |inner * outer - p|` on an `m`-point grid.
    pub fn product_residual(&self, p: &LaurentPoly, m: usize) -> f64 {
        let prod = self.inner.mul(&self.outer).samples(m);
        let want = super::grid::eval_on_grid(p, m);
        prod.iter()
            .zip(&want)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn inner_outer_factor(p: &LaurentPoly) -> Result<InnerOuterFactorization> {
    let Some((_, hi)) = p.band() else {
        return Err(Error::ZeroInput("inner-outer factorization of zero"));
    };
    let roots = poly_roots(p)?;
    let lead = p.coeff(hi);
    let one = Complex64::new(1.0, 0.0);

    let (inside, outside): (Vec<Complex64>, Vec<Complex64>) = roots
        .roots
        .iter()
        .partition(|r| r.norm() < 1.0 - CIRCLE_TOL);

    let mut outer_raw = LaurentPoly::constant(Complex64::new(lead.norm(), 0.0));
    let mut gamma = lead / lead.norm();
    let mut blaschke_num = LaurentPoly::one();
    let mut blaschke_den = LaurentPoly::one();
    for &r in &inside {
        let phase = r / r.norm();
        outer_raw = outer_raw.mul(&LaurentPoly::from_dense(0, vec![one, -r.conj()]));
        gamma *= -phase;
        blaschke_num = blaschke_num.mul(&LaurentPoly::from_dense(0, vec![r, -one]).scale(one / phase));
        blaschke_den = blaschke_den.mul(&LaurentPoly::from_dense(0, vec![one, -r.conj()]));
    }
    for &r in &outside {
        outer_raw = outer_raw.mul(&LaurentPoly::from_dense(0, vec![-r, one]));
    }
    let at0 = outer_raw.coeff(0);
    let u = at0 / at0.norm();
    let outer = outer_raw.scale(one / u);
    gamma *= u;

    let inner_num = blaschke_num
        .shift(roots.monomial_order as i64)
        .scale(gamma);
    let inner = RationalSymbol::new(inner_num, blaschke_den)?;

    Ok(InnerOuterFactorization {
        inner,
        outer: RationalSymbol::from_poly(outer),
        unimodular_constant: gamma,
        monomial_order: roots.monomial_order,
        inner_zeros: inside,
        outer_zeros: outside,
    })
}

/// `constant * prod_j (|z_j|/z_j) (z_j - z) / (1 - conj(z_j) z)`, with the
/// factor `z` for `z_j = 0`.
pub fn blaschke(zeros: &[Complex64], constant: Complex64) -> Result<RationalSymbol> {
    if (constant.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "Blaschke constant must be unimodular, got |c| = {}",
            constant.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut num = LaurentPoly::constant(constant);
    let mut den = LaurentPoly::one();
    for &z0 in zeros {
        let m = z0.norm();
        if m >= 1.0 - BOUNDARY_MARGIN {
            return Err(Error::ZeroOutsideDisk {
                modulus: m,
                margin: BOUNDARY_MARGIN,
            });
        }
        if m == 0.0 {
            num = num.shift(1);
            continue;
        }
        let phase = m / z0;
        num = num.mul(&LaurentPoly::from_dense(0, vec![z0 * phase, -phase]));
        den = den.mul(&LaurentPoly::from_dense(0, vec![one, -z0.conj()]));
    }
    RationalSymbol::new(num, den)
}
