use serde::Serialize;

use super::c;
use crate::error::{Error, Result};
use crate::operators::PairedSpec;
use crate::symbols::grid::{eval_on_grid, pow2_at_least};
use crate::symbols::{
    classify, inner_outer_factor, poly_roots, rational_to_coeffs_auto, AnalyticityClass, CoeffVector,
    LaurentPoly, RationalSymbol,
};

/// Tolerance for the kernel elements built from rational expressions.
const ELEMENT_TOL: f64 = 1e-9;
const MAX_GRID: usize = 1 << 22;

/// `f = f+ + f-` with `f+ = (b_i - b_i(0)) b_o / z` and
/// `f- = -a conj(z) (1 - b_i(0) conj(b_i))`, a kernel element of `S_{a,b}` for
/// coanalytic `a` and analytic `b` with nonconstant inner factor `b_i`.
pub fn kernel_element_inner(a: &LaurentPoly, b: &LaurentPoly) -> Result<CoeffVector> {
    if a.is_zero() || !classify(a).is_coanalytic() {
        return Err(Error::Precondition("a must be a nonzero coanalytic symbol".into()));
    }
    if b.is_zero() || !classify(b).is_analytic() {
        return Err(Error::Precondition("b must be a nonzero analytic symbol".into()));
    }
    let f = inner_outer_factor(b)?;
    if f.inner_is_constant() {
        return Err(Error::Precondition("inner factor of b is constant".into()));
    }
    let bi0 = f.inner_at_zero();
    let bo = f.outer_poly();
    // b - b_i(0) b_o vanishes at 0
    let top = b - &bo.scale(bi0);
    let f_plus = LaurentPoly::from_terms(top.terms().filter(|(k, _)| *k > 0)).shift(-1);

    let one = RationalSymbol::constant(c(1.0));
    let minus = one
        .sub(&f.inner.conj().scale(bi0))
        .mul_poly(&a.shift(-1))
        .neg();
    let band = 2 * (a.radius() + b.radius() + 1);
    let f_minus = rational_to_coeffs_auto(&minus, band)?.coeffs.riesz_minus();
    let out = &f_plus + &f_minus;
    let residual = (&a.mul(&f_plus) + &b.mul(&f_minus)).norm_l2();
    if residual > ELEMENT_TOL * out.norm_l2().max(1.0) {
        return Err(Error::Membership { residual });
    }
    Ok(out)
}

/// `f = b - a` (`f+ = b`, `f- = -a`) for coanalytic vanishing `a`, analytic `b`.
pub fn kernel_element_iii(a: &LaurentPoly, b: &LaurentPoly) -> Result<CoeffVector> {
    if a.is_zero() || classify(a) != AnalyticityClass::CoanalyticVanishing {
        return Err(Error::Precondition("a must be coanalytic vanishing".into()));
    }
    if b.is_zero() || !classify(b).is_analytic() {
        return Err(Error::Precondition("b must be a nonzero analytic symbol".into()));
    }
    Ok(b - a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairConvention {
    /// Both Riesz parts nonzero; the Smirnov-quotient construction.
    Generic,
    /// `phi- = 0`: `a = 0`, `b = -z`.
    AnalyticOnly,
    /// `phi+ = 0`: `a = 1`, `b = 0`.
    CoanalyticOnly,
}

/// Factorization data behind a [`KernelPair`]: `phi+ = I+ O+`,
/// `phi- = I- O-`, `1/O+ = upper_h1/upper_h2`, `1/(conj(z) conj(O-)) = lower_h1/lower_h2`.
#[derive(Clone, Debug, Serialize)]
pub struct PairProvenance {
    pub i_plus: RationalSymbol,
    pub o_plus: RationalSymbol,
    pub i_minus: RationalSymbol,
    pub o_minus: RationalSymbol,
    pub upper_h1: RationalSymbol,
    pub upper_h2: RationalSymbol,
    pub lower_h1: RationalSymbol,
    pub lower_h2: RationalSymbol,
}

/// The pair `(a, b)` whose paired kernel is the one containing `phi`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelPair {
    pub a: RationalSymbol,
    pub b: RationalSymbol,
    pub convention: PairConvention,
    pub provenance: Option<PairProvenance>,
    /// `||a phi+ + b phi-||` after coefficient conversion.
    pub residual: f64,
}

impl KernelPair {
    /// Same-kernel criterion against a Laurent pair, denominators cleared.
    pub fn same_kernel_as(&self, spec: &PairedSpec) -> bool {
        super::same_kernel_test_rational(&self.a, &self.b, spec)
    }
}

/// `||a phi+ + b phi-||` as `||(N_a D_b phi+ + N_b D_a phi-) / (D_a D_b)||`,
/// integrated on a grid fine enough to resolve the pole closest to the circle.
fn annihilation_residual(a: &RationalSymbol, b: &RationalSymbol, phi: &CoeffVector) -> Result<f64> {
    let cleared = &a.num().mul(b.den()).mul(&phi.riesz_plus()) + &b.num().mul(a.den()).mul(&phi.riesz_minus());
    if cleared.is_zero() {
        return Ok(0.0);
    }
    let den = a.den().mul(b.den());
    let mut delta: f64 = 1.0;
    if den.radius() > 0 {
        for r in poly_roots(&den)?.roots {
            delta = delta.min((r.norm() - 1.0).abs());
        }
    }
    if delta <= 0.0 {
        return Err(Error::Conditioning { min_modulus: 0.0 });
    }
    let radius = (cleared.radius() + den.radius()) as usize;
    let m = pow2_at_least((64.0 / delta).min(MAX_GRID as f64) as usize)
        .max(pow2_at_least(16 * radius))
        .max(4096);
    let num_vals = eval_on_grid(&cleared, m);
    let den_vals = eval_on_grid(&den, m);
    let mean_sq = num_vals
        .iter()
        .zip(&den_vals)
        .map(|(n, d)| (n / d).norm_sqr())
        .sum::<f64>()
        / m as f64;
    Ok(mean_sq.sqrt())
}

/// Builds `a = conj(I+) H1+ conj(h2+)` and `b = -conj(I-) z conj(h1+) H2+`
/// with `H1+ = h1+ = 1`, `H2+ = O+`, `h2+ = conj(z) conj(O-)`.
pub fn pair_from_function(phi: &CoeffVector) -> Result<KernelPair> {
    if phi.is_zero() {
        return Err(Error::ZeroInput("pair_from_function needs phi != 0"));
    }
    let phi_p = phi.riesz_plus();
    let phi_m = phi.riesz_minus();
    let one = RationalSymbol::constant(c(1.0));
    let zero = RationalSymbol::from_poly(LaurentPoly::zero());

    if phi_m.is_zero() || phi_p.is_zero() {
        let (a, b, convention) = if phi_m.is_zero() {
            (zero, RationalSymbol::from_poly(LaurentPoly::basis(1).scale(c(-1.0))), PairConvention::AnalyticOnly)
        } else {
            (one, zero, PairConvention::CoanalyticOnly)
        };
        let residual = annihilation_residual(&a, &b, phi)?;
        return Ok(KernelPair {
            a,
            b,
            convention,
            provenance: None,
            residual,
        });
    }

    let fp = inner_outer_factor(&phi_p)?;
    // psi = conj(z) conj(phi-) is an analytic polynomial
    let psi = phi_m.conj_reflect().shift(-1);
    let fm = inner_outer_factor(&psi)?;
    let i_plus = fp.inner.clone();
    let o_plus = fp.outer.clone();
    let i_minus = fm.inner.conj();
    let o_psi = fm.outer.clone();
    let o_minus = o_psi.conj().shift(-1);

    let upper_h1 = one.clone();
    let upper_h2 = o_plus.clone();
    let lower_h1 = one.clone();
    let lower_h2 = o_minus.conj().shift(-1);

    let a = i_plus.conj().mul(&upper_h1).mul(&lower_h2.conj());
    let b = i_minus
        .conj()
        .shift(1)
        .mul(&lower_h1.conj())
        .mul(&upper_h2)
        .neg();
    let residual = annihilation_residual(&a, &b, phi)?;
    if residual > ELEMENT_TOL * phi.norm_l2().max(1.0) {
        return Err(Error::Membership { residual });
    }
    Ok(KernelPair {
        a,
        b,
        convention: PairConvention::Generic,
        provenance: Some(PairProvenance {
            i_plus,
            o_plus,
            i_minus,
            o_minus,
            upper_h1,
            upper_h2,
            lower_h1,
            lower_h2,
        }),
        residual,
    })
}
