use serde::Serialize;

use super::{adjoint_kernel_basis, kernel_basis_with, require_member, KernelBasis, KernelOptions};
use crate::error::{Error, Result};
use crate::operators::{apply_s, apply_sigma, PairedSpec};
use crate::symbols::{circle_distance, rational_to_coeffs_auto, CoeffVector, LaurentPoly, RationalSymbol};

const J_TOL: f64 = 1e-10;
/// Round-trip and case-agreement tolerance for the inverse of `J~`.
pub const JTILDE_TOL: f64 = 1e-9;
/// A Laurent polynomial counts as invertible in `L^inf` when its roots stay
/// this far from the circle.
pub const INVERTIBILITY_MARGIN: f64 = 1e-8;

/// `J phi = conj(z) conj(phi)`, mapping `k_{a,b}` onto `ker S_{conj b, conj a}`.
pub fn j_map(phi: &CoeffVector, spec: &PairedSpec) -> Result<CoeffVector> {
    require_member(spec, phi, J_TOL)?;
    Ok(phi.conj_reflect().shift(-1))
}

/// `J~ psi = (conj a - conj b) psi`, mapping `ker S_{a,b}^*` into `ker S_{conj a, conj b}`.
pub fn jtilde_map(psi: &CoeffVector, spec: &PairedSpec) -> Result<CoeffVector> {
    let residual = apply_sigma(&spec.conj(), psi).norm_l2() / psi.norm_l2().max(1.0);
    if residual > J_TOL {
        return Err(Error::Membership { residual });
    }
    let d = (&spec.a - &spec.b).conj_reflect();
    Ok(d.mul(psi))
}

/// Which symbol is inverted in the inverse of `J~`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InverseCase {
    /// `phi / (conj a - conj b)`
    #[serde(rename = "a-b")]
    AMinusB,
    /// `P- phi / conj a`
    #[serde(rename = "a")]
    A,
    /// `-P+ phi / conj b`
    #[serde(rename = "b")]
    B,
}

impl InverseCase {
    pub const ALL: [InverseCase; 3] = [InverseCase::AMinusB, InverseCase::A, InverseCase::B];

    fn symbol(self, spec: &PairedSpec) -> LaurentPoly {
        match self {
            InverseCase::AMinusB => &spec.a - &spec.b,
            InverseCase::A => spec.a.clone(),
            InverseCase::B => spec.b.clone(),
        }
    }
}

fn distance(p: &LaurentPoly) -> Result<f64> {
    if p.is_zero() {
        return Ok(0.0);
    }
    circle_distance(p)
}

/// The cases whose designated symbol has no roots within
/// [`INVERTIBILITY_MARGIN`] of the circle.
pub fn invertible_cases(spec: &PairedSpec) -> Result<Vec<InverseCase>> {
    let mut out = Vec::new();
    for case in InverseCase::ALL {
        if distance(&case.symbol(spec))? > INVERTIBILITY_MARGIN {
            out.push(case);
        }
    }
    Ok(out)
}

pub fn jtilde_inverse(phi: &CoeffVector, spec: &PairedSpec, case: InverseCase) -> Result<CoeffVector> {
    let sym = case.symbol(spec);
    let dist = distance(&sym)?;
    if dist <= INVERTIBILITY_MARGIN {
        return Err(Error::NotInvertible { distance: dist });
    }
    let num = match case {
        InverseCase::AMinusB => phi.clone(),
        InverseCase::A => phi.riesz_minus(),
        InverseCase::B => phi.riesz_plus().scale_real(-1.0),
    };
    let min_band = 2 * (phi.radius() + spec.radius() + 1);
    let r = RationalSymbol::new(num, sym.conj_reflect())?;
    Ok(rational_to_coeffs_auto(&r, min_band)?.coeffs.chop(1e-15))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JtildeInverseReport {
    pub cases: Vec<InverseCase>,
    pub results: Vec<CoeffVector>,
    /// Largest pairwise `||difference||` between the case formulas.
    pub discrepancy: f64,
}

/// Every applicable inverse formula, with their mutual disagreement.
pub fn jtilde_inverse_all(phi: &CoeffVector, spec: &PairedSpec) -> Result<JtildeInverseReport> {
    let cases = invertible_cases(spec)?;
    if cases.is_empty() {
        return Err(Error::NotInvertible { distance: 0.0 });
    }
    let results = cases
        .iter()
        .map(|&c| jtilde_inverse(phi, spec, c))
        .collect::<Result<Vec<_>>>()?;
    let mut discrepancy: f64 = 0.0;
    for (i, x) in results.iter().enumerate() {
        for y in &results[i + 1..] {
            discrepancy = discrepancy.max((x - y).norm_l2());
        }
    }
    Ok(JtildeInverseReport {
        cases,
        results,
        discrepancy,
    })
}

/// Kernel dimensions behind the Coburn-type dichotomy for `(a, b)`.
#[derive(Clone, Debug, Serialize)]
pub struct CoburnReport {
    pub spec: PairedSpec,
    #[serde(rename = "N")]
    pub band: usize,
    /// `dim k_{a,b}`
    pub dim_ab: usize,
    /// `dim k_{b,a}`
    pub dim_ba: usize,
    /// `dim k_{conj a, conj b}`
    pub dim_conj: usize,
    /// `dim ker S_{a,b}^*`
    pub dim_adjoint: usize,
    pub invertible_cases: Vec<InverseCase>,
    /// `min(dim_ab, dim_ba) = 0`
    pub dichotomy: bool,
    /// `dim_ba = dim_conj`
    pub j_dims_match: bool,
    /// `dim_adjoint = dim_conj`, checked only when some case is invertible.
    pub jtilde_dims_match: Option<bool>,
    pub holds: bool,
    #[serde(skip)]
    pub kernels: [KernelBasis; 4],
}

pub fn coburn_check(spec: &PairedSpec, band: usize, opts: &KernelOptions) -> Result<CoburnReport> {
    if spec.a.is_zero() || spec.b.is_zero() {
        return Err(Error::Precondition(
            "the dichotomy does not apply when a = 0 or b = 0".into(),
        ));
    }
    spec.require_nondegenerate()?;
    // all four kernels on one common band
    let single = KernelOptions {
        escalations: 0,
        ..opts.clone()
    };
    let mut last = None;
    let mut found = None;
    for step in 0..=opts.escalations {
        let n = band + step * opts.escalation_step;
        let attempt = (|| -> Result<[KernelBasis; 4]> {
            Ok([
                kernel_basis_with(spec, n, &single)?,
                kernel_basis_with(&spec.swapped(), n, &single)?,
                kernel_basis_with(&spec.conj(), n, &single)?,
                adjoint_kernel_basis(spec, n, &single)?,
            ])
        })();
        match attempt {
            Ok(k) => {
                found = Some((n, k));
                break;
            }
            Err(e @ (Error::Ambiguous { .. } | Error::Membership { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let Some((band, [ab, ba, cj, adj])) = found else {
        return Err(last.expect("at least one attempt"));
    };
    let cases = invertible_cases(spec)?;
    let dichotomy = ab.dim().min(ba.dim()) == 0;
    let j_dims_match = ba.dim() == cj.dim();
    let jtilde_dims_match = (!cases.is_empty()).then(|| adj.dim() == cj.dim());
    Ok(CoburnReport {
        spec: spec.clone(),
        band,
        dim_ab: ab.dim(),
        dim_ba: ba.dim(),
        dim_conj: cj.dim(),
        dim_adjoint: adj.dim(),
        invertible_cases: cases,
        dichotomy,
        j_dims_match,
        jtilde_dims_match,
        holds: dichotomy && j_dims_match && jtilde_dims_match != Some(false),
        kernels: [ab, ba, cj, adj],
    })
}

/// Both sides of: for `f` in `k_{a,b}`, `eta f` is in `k_{a,b}` iff
/// `f` lies in `ker H_eta ⊕ ker H~_eta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaInvarianceReport {
    /// `eta f` in `k_{a,b}`
    pub invariant: bool,
    /// `H_eta P+ f = 0`
    pub hankel_vanishes: bool,
    /// `H~_eta P- f = 0`
    pub hankel_tilde_vanishes: bool,
    /// `S_{eta,eta} f` in `k_{a,b}`
    pub s_eta_member: bool,
    /// The two sides agree.
    pub consistent: bool,
}

pub fn eta_invariance_test(spec: &PairedSpec, eta: &LaurentPoly, f: &CoeffVector) -> Result<EtaInvarianceReport> {
    require_member(spec, f, J_TOL)?;
    let eta_l1: f64 = eta.terms().map(|(_, c)| c.norm()).sum();
    let tol = 1e-12 * (eta_l1 * f.norm_l2()).max(1.0);
    let ef = eta.mul(f);
    let invariant = apply_s(spec, &ef).norm_l2() <= tol;
    let hankel_vanishes = eta.mul(&f.riesz_plus()).riesz_minus().norm_l2() <= tol;
    let hankel_tilde_vanishes = eta.mul(&f.riesz_minus()).riesz_plus().norm_l2() <= tol;
    let seta = apply_s(&PairedSpec::new(eta.clone(), eta.clone()), f);
    let s_eta_member = apply_s(spec, &seta).norm_l2() <= tol;
    Ok(EtaInvarianceReport {
        invariant,
        hankel_vanishes,
        hankel_tilde_vanishes,
        s_eta_member,
        consistent: invariant == (hankel_vanishes && hankel_tilde_vanishes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_basis;
    use crate::symbols::parse_symbol;

    fn p(s: &str) -> LaurentPoly {
        parse_symbol(s).unwrap()
    }

    fn spec(a: &str, b: &str) -> PairedSpec {
        PairedSpec::new(p(a), p(b))
    }

    #[test]
    fn j_examples() {
        let s = spec("z^-1", "1");
        let phi = p("1 - z^-1");
        let j = j_map(&phi, &s).unwrap();
        assert_eq!(j, p("z^-1 - 1"));
        assert!(apply_s(&s.swapped_conj(), &j).is_zero());
        // J twice with the swapped spec is the identity
        assert_eq!(j_map(&j, &s.swapped_conj()).unwrap(), phi);
        let alpha = num_complex::Complex64::new(0.3, -2.0);
        assert_eq!(j_map(&phi.scale(alpha), &s).unwrap(), j.scale(alpha.conj()));
        assert!(j_map(&LaurentPoly::zero(), &s).unwrap().is_zero());
        assert!(j_map(&p("1"), &s).is_err());
    }

    #[test]
    fn jtilde_examples() {
        let s = spec("z", "1");
        let phi = jtilde_map(&p("1"), &s).unwrap();
        assert_eq!(phi, p("z^-1 - 1"));
        assert!(apply_s(&s.conj(), &phi).is_zero());
        assert!(jtilde_map(&p("z"), &s).is_err());
        let cases = invertible_cases(&s).unwrap();
        assert_eq!(cases, vec![InverseCase::A, InverseCase::B]);
        let inv = jtilde_inverse_all(&phi, &s).unwrap();
        assert!(inv.discrepancy <= 1e-12);
        for r in &inv.results {
            assert!((r - &p("1")).norm_l2() <= 1e-12);
        }
        assert!(matches!(
            jtilde_inverse(&phi, &s, InverseCase::AMinusB),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn jtilde_overlap_case() {
        let s = spec("2", "1");
        assert_eq!(invertible_cases(&s).unwrap().len(), 3);
        let opts = KernelOptions::default();
        assert_eq!(adjoint_kernel_basis(&s, 8, &opts).unwrap().dim(), 0);
        assert_eq!(kernel_basis(&s.conj(), 8).unwrap().dim(), 0);
    }

    #[test]
    fn coburn_examples() {
        let o = KernelOptions::default();
        let r = coburn_check(&spec("1", "z"), 16, &o).unwrap();
        assert_eq!((r.dim_ab, r.dim_ba), (1, 0));
        assert!(r.holds);
        let r = coburn_check(&spec("z^-1", "z"), 16, &o).unwrap();
        assert_eq!((r.dim_ab, r.dim_ba), (2, 0));
        assert!(r.holds);
        let r = coburn_check(&spec("1", "1 - z"), 16, &o).unwrap();
        assert_eq!((r.dim_ab, r.dim_ba), (0, 0));
        assert!(r.holds);
        assert!(coburn_check(&spec("0", "z"), 8, &o).is_err());
    }

    #[test]
    fn eta_examples() {
        let s = spec("z^-1", "z");
        let r = eta_invariance_test(&s, &p("3"), &p("z - z^-1")).unwrap();
        assert!(r.invariant && r.hankel_vanishes && r.hankel_tilde_vanishes && r.consistent);
        let r = eta_invariance_test(&s, &p("z^2"), &p("1 - z^-2")).unwrap();
        assert!(!r.invariant && !r.hankel_tilde_vanishes && r.consistent);
        let r = eta_invariance_test(&spec("z^-1", "1"), &p("z"), &p("1 - z^-1")).unwrap();
        assert!(r.hankel_vanishes && !r.hankel_tilde_vanishes && !r.invariant && r.consistent);
        assert!(eta_invariance_test(&s, &p("z"), &p("1")).is_err());
    }
}
