//! Paired operators `S_{a,b} = a P+ + b P-` and `Sigma_{a,b} = P+ a + P- b`,
//! Toeplitz and Hankel operators, acting exactly on trigonometric
//! polynomials (the output band grows, nothing is truncated).

mod residuals;
mod section;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{is_nondegenerate, CoeffVector, LaurentPoly, NondegeneracyReport};

pub use residuals::{
    commutator_residual, composition_residual, sigma_composition_residual, CommutatorReport,
    CompositionReport,
};
pub use section::{
    block_decompose, exact_action_matrix, exact_matrix, finite_section, norm_bounds, norm_report,
    op_norm,
    BlockDecomposition, FiniteSection, MatrixJson, NormBounds, NormReport, SectionKind,
    SectionSource,
};

/// An ordered symbol pair `(a, b)`, naming both `S_{a,b}` and `Sigma_{a,b}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairedSpec {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub nondegenerate: bool,
}

impl PairedSpec {
    pub fn new(a: LaurentPoly, b: LaurentPoly) -> Self {
        let nondegenerate = is_nondegenerate(&a, &b).nondegenerate;
        PairedSpec { a, b, nondegenerate }
    }

    pub fn nondegeneracy(&self) -> NondegeneracyReport {
        is_nondegenerate(&self.a, &self.b)
    }

    /// Fails with [`Error::Degenerate`] unless `a`, `b`, `a - b` are all nonzero.
    pub fn require_nondegenerate(&self) -> Result<()> {
        let r = self.nondegeneracy();
        if r.nondegenerate {
            Ok(())
        } else {
            Err(Error::Degenerate { reasons: r.failures })
        }
    }

    /// `(conj a, conj b)`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.conj_reflect(), self.b.conj_reflect())
    }

    /// `(b, a)`.
    pub fn swapped(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone())
    }

    /// `(conj b, conj a)`, the target of the map `J`.
    pub fn swapped_conj(&self) -> Self {
        Self::new(self.b.conj_reflect(), self.a.conj_reflect())
    }

    /// Largest `|k|` over the nonzero coefficients of `a` and `b`.
    pub fn radius(&self) -> i64 {
        self.a.radius().max(self.b.radius())
    }
}

#[derive(Deserialize)]
struct PairedSpecJson {
    a: LaurentPoly,
    b: LaurentPoly,
}

impl<'de> Deserialize<'de> for PairedSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PairedSpecJson::deserialize(d)?;
        Ok(PairedSpec::new(raw.a, raw.b))
    }
}

pub fn riesz_plus(v: &CoeffVector) -> CoeffVector {
    v.riesz_plus()
}

pub fn riesz_minus(v: &CoeffVector) -> CoeffVector {
    v.riesz_minus()
}

pub fn mul_apply(a: &LaurentPoly, v: &CoeffVector) -> CoeffVector {
    a.mul(v)
}

/// `a P+ v + b P- v`.
pub fn apply_s(spec: &PairedSpec, v: &CoeffVector) -> CoeffVector {
    &spec.a.mul(&v.riesz_plus()) + &spec.b.mul(&v.riesz_minus())
}

/// `P+(a v) + P-(b v)`.
pub fn apply_sigma(spec: &PairedSpec, v: &CoeffVector) -> CoeffVector {
    &spec.a.mul(v).riesz_plus() + &spec.b.mul(v).riesz_minus()
}

/// `P+(G f)` for analytic `f`.
pub fn toeplitz_apply(g: &LaurentPoly, f: &CoeffVector) -> Result<CoeffVector> {
    if f.kmin().is_some_and(|k| k < 0) {
        return Err(Error::Precondition("Toeplitz operator needs f in H^2".into()));
    }
    Ok(g.mul(f).riesz_plus())
}

/// `H_eta f = P-(eta f)` for analytic `f`.
pub fn hankel_apply(eta: &LaurentPoly, f: &CoeffVector) -> Result<CoeffVector> {
    if f.kmin().is_some_and(|k| k < 0) {
        return Err(Error::Precondition(
            "hankel_apply needs band(f) inside [0, inf)".into(),
        ));
    }
    Ok(eta.mul(f).riesz_minus())
}

/// `H~_eta f = P+(eta f)` for `f` with band inside `(-inf, -1]`.
pub fn hankel_tilde_apply(eta: &LaurentPoly, f: &CoeffVector) -> Result<CoeffVector> {
    if f.kmax().is_some_and(|k| k > -1) {
        return Err(Error::Precondition(
            "hankel_tilde_apply needs band(f) inside (-inf, -1]".into(),
        ));
    }
    Ok(eta.mul(f).riesz_plus())
}

/// `f -> conj(f)` on the circle, as a coefficient map.
pub fn conj_vec(v: &CoeffVector) -> CoeffVector {
    v.conj_reflect()
}

/// `|| conj(S_{a,b} v) - z S_{conj b, conj a} (conj(z) conj(v)) ||`, zero up to rounding.
pub fn conjugation_relation_residual(spec: &PairedSpec, v: &CoeffVector) -> f64 {
    let lhs = conj_vec(&apply_s(spec, v));
    let rhs = apply_s(&spec.swapped_conj(), &conj_vec(v).shift(-1)).shift(1);
    (&lhs - &rhs).norm_l2()
}
