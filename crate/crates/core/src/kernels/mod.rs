//! Paired kernels `k_{a,b} = ker S_{a,b}` on bounded Fourier bands, and the
//! structure results around them.

mod elements;
mod maps;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{largest_principal_angle, null_space, orthonormalize, CMatrix};
use crate::operators::{apply_s, apply_sigma, exact_matrix, PairedSpec};
use crate::symbols::{CoeffVector, LaurentPoly, RationalSymbol};

pub use elements::{
    kernel_element_inner, kernel_element_iii, pair_from_function, KernelPair, PairConvention,
    PairProvenance,
};
pub use maps::{
    coburn_check, eta_invariance_test, invertible_cases, j_map, jtilde_inverse,
    jtilde_inverse_all, jtilde_map, CoburnReport, EtaInvarianceReport, InverseCase,
    JtildeInverseReport, INVERTIBILITY_MARGIN, JTILDE_TOL,
};

/// Thresholds for the band-limited null space computation.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelOptions {
    /// Singular values below `null_threshold * sigma_max` are null.
    pub null_threshold: f64,
    /// Required ratio between the smallest kept and the largest null singular value.
    pub gap: f64,
    /// Each basis vector must satisfy `||S v|| <= membership_tol * ||v||`.
    pub membership_tol: f64,
    /// On an ambiguous or inexact split, retry this many times with a wider band.
    pub escalations: usize,
    pub escalation_step: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            null_threshold: 1e-8,
            gap: 10.0,
            membership_tol: 1e-10,
            escalations: 0,
            escalation_step: 16,
        }
    }
}

impl KernelOptions {
    pub fn escalating(escalations: usize) -> Self {
        KernelOptions {
            escalations,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelOperator {
    /// `ker S_{a,b}`
    #[serde(rename = "S")]
    Paired,
    /// `ker S_{a,b}^* = ker Sigma_{conj a, conj b}`
    #[serde(rename = "S*")]
    Adjoint,
}

/// Orthonormal basis of the kernel restricted to the band `[-N, N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis {
    pub spec: PairedSpec,
    pub operator: KernelOperator,
    pub band: usize,
    pub basis: Vec<CoeffVector>,
    /// All singular values of the exact action matrix, ascending.
    pub singular_values: Vec<f64>,
    /// Dimension unchanged at band `N + 2`.
    pub stabilized: bool,
    /// Largest `||Op v||` over the basis.
    pub max_residual: f64,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn projections(&self) -> KernelProjections {
        kernel_projections(self)
    }
}

impl Serialize for KernelBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            spec: &'a PairedSpec,
            operator: KernelOperator,
            #[serde(rename = "N")]
            n: usize,
            dim: usize,
            stabilized: bool,
            singular_values: &'a [f64],
            max_residual: f64,
            basis: &'a [CoeffVector],
        }
        Out {
            spec: &self.spec,
            operator: self.operator,
            n: self.band,
            dim: self.dim(),
            stabilized: self.stabilized,
            singular_values: &self.singular_values,
            max_residual: self.max_residual,
            basis: &self.basis,
        }
        .serialize(s)
    }
}

fn action(spec: &PairedSpec, op: KernelOperator, band: usize) -> CMatrix {
    let n = band as i64;
    let d = spec.radius();
    match op {
        KernelOperator::Paired => exact_matrix(-n..=n, -(n + d), n + d, |v| apply_s(spec, v)),
        KernelOperator::Adjoint => {
            let adj = spec.conj();
            exact_matrix(-n..=n, -(n + d), n + d, |v| apply_sigma(&adj, v))
        }
    }
}

fn apply_op(spec: &PairedSpec, op: KernelOperator, v: &CoeffVector) -> CoeffVector {
    match op {
        KernelOperator::Paired => apply_s(spec, v),
        KernelOperator::Adjoint => apply_sigma(&spec.conj(), v),
    }
}

/// Rotates `v` so its largest coefficient is real and positive; among
/// near-equal candidates the exponent closest to 0 wins, nonnegative first.
fn fix_phase(v: CoeffVector) -> CoeffVector {
    let top = v.norm_max();
    let Some((_, c)) = v
        .terms()
        .filter(|(_, c)| c.norm() >= top * (1.0 - 1e-9))
        .min_by_key(|(k, _)| (k.abs(), *k < 0))
    else {
        return v;
    };
    v.scale(c.conj() / c.norm())
}

fn null_basis(m: &CMatrix, lo: i64, opts: &KernelOptions) -> Result<(Vec<CoeffVector>, Vec<f64>)> {
    let ns = null_space(m, opts.null_threshold, opts.gap)?;
    let basis = ns
        .vectors
        .iter()
        .map(|v| LaurentPoly::from_dense(lo, v.iter().copied().collect()).chop(1e-15))
        .collect::<Vec<_>>();
    let basis = if basis.len() == 1 {
        basis.into_iter().map(fix_phase).collect()
    } else {
        basis
    };
    Ok((basis, ns.singular_values))
}

fn kernel_at(spec: &PairedSpec, op: KernelOperator, band: usize, opts: &KernelOptions) -> Result<KernelBasis> {
    let m = action(spec, op, band);
    let (basis, singular_values) = null_basis(&m, -(band as i64), opts)?;
    let max_residual = basis
        .iter()
        .map(|v| apply_op(spec, op, v).norm_l2() / v.norm_l2())
        .fold(0.0, f64::max);
    if max_residual > opts.membership_tol {
        return Err(Error::Membership {
            residual: max_residual,
        });
    }
    let stabilized = match null_space(&action(spec, op, band + 2), opts.null_threshold, opts.gap) {
        Ok(ns) => ns.vectors.len() == basis.len(),
        Err(_) => false,
    };
    Ok(KernelBasis {
        spec: spec.clone(),
        operator: op,
        band,
        basis,
        singular_values,
        stabilized,
        max_residual,
    })
}

fn kernel_escalating(spec: &PairedSpec, op: KernelOperator, band: usize, opts: &KernelOptions) -> Result<KernelBasis> {
    spec.require_nondegenerate()?;
    if band < 1 {
        return Err(Error::Precondition("kernel band needs N >= 1".into()));
    }
    let mut last = None;
    for step in 0..=opts.escalations {
        match kernel_at(spec, op, band + step * opts.escalation_step, opts) {
            Ok(k) => return Ok(k),
            Err(e @ (Error::Ambiguous { .. } | Error::Membership { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `{v : band(v) in [-N, N], S_{a,b} v = 0}` with the default thresholds.
pub fn kernel_basis(spec: &PairedSpec, band: usize) -> Result<KernelBasis> {
    kernel_basis_with(spec, band, &KernelOptions::default())
}

pub fn kernel_basis_with(spec: &PairedSpec, band: usize, opts: &KernelOptions) -> Result<KernelBasis> {
    kernel_escalating(spec, KernelOperator::Paired, band, opts)
}

/// `ker S_{a,b}^*`, computed as the kernel of the exact action of
/// `Sigma_{conj a, conj b}`.
pub fn adjoint_kernel_basis(spec: &PairedSpec, band: usize, opts: &KernelOptions) -> Result<KernelBasis> {
    kernel_escalating(spec, KernelOperator::Adjoint, band, opts)
}

/// `P+` and `P-` of each basis vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelProjections {
    pub plus: Vec<CoeffVector>,
    pub minus: Vec<CoeffVector>,
}

pub fn kernel_projections(k: &KernelBasis) -> KernelProjections {
    KernelProjections {
        plus: k.basis.iter().map(|v| v.riesz_plus()).collect(),
        minus: k.basis.iter().map(|v| v.riesz_minus()).collect(),
    }
}

/// Comparison of `ker T_G` with `P+ ker S_{G,1}` on the band `[0, N]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeReport {
    #[serde(rename = "N")]
    pub band: usize,
    pub toeplitz_dim: usize,
    pub paired_dim: usize,
    /// Largest principal angle between the two subspaces.
    pub angle: f64,
}

fn toeplitz_kernel(g: &LaurentPoly, band: usize, opts: &KernelOptions) -> Result<Vec<CoeffVector>> {
    let n = band as i64;
    let hi = n + g.kmax().unwrap_or(0).max(0);
    let m = exact_matrix(0..=n, 0, hi, |v| g.mul(v).riesz_plus());
    let (basis, _) = null_basis(&m, 0, opts)?;
    let worst = basis
        .iter()
        .map(|v| g.mul(v).riesz_plus().norm_l2() / v.norm_l2())
        .fold(0.0, f64::max);
    if worst > opts.membership_tol {
        return Err(Error::Membership { residual: worst });
    }
    Ok(basis)
}

pub fn toeplitz_kernel_bridge(g: &LaurentPoly, band: usize, opts: &KernelOptions) -> Result<BridgeReport> {
    if g.is_zero() {
        return Err(Error::ZeroInput("Toeplitz symbol"));
    }
    let spec = PairedSpec::new(g.clone(), LaurentPoly::one());
    let mut last = None;
    for step in 0..=opts.escalations {
        let n = band + step * opts.escalation_step;
        let single = KernelOptions {
            escalations: 0,
            ..opts.clone()
        };
        let attempt = toeplitz_kernel(g, n, &single).and_then(|t| {
            let k = kernel_basis_with(&spec, n, &single)?;
            Ok((t, k))
        });
        match attempt {
            Ok((t, k)) => {
                let plus = orthonormalize(&kernel_projections(&k).plus, 0, n as i64);
                return Ok(BridgeReport {
                    band: n,
                    toeplitz_dim: t.len(),
                    paired_dim: plus.len(),
                    angle: largest_principal_angle(&t, &plus),
                });
            }
            Err(e @ (Error::Ambiguous { .. } | Error::Membership { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Relative tolerance of [`same_kernel_test`].
pub const SAME_KERNEL_TOL: f64 = 1e-12;
/// Relative tolerance of [`same_kernel_test_rational`].
pub const SAME_KERNEL_RATIONAL_TOL: f64 = 1e-9;

/// `max |a b~ - a~ b|` over the coefficients, relative to the larger product.
pub fn same_kernel_discrepancy(x: &PairedSpec, y: &PairedSpec) -> f64 {
    let l = x.a.mul(&y.b);
    let r = y.a.mul(&x.b);
    let scale = l.norm_max().max(r.norm_max()).max(f64::MIN_POSITIVE);
    (&l - &r).norm_max() / scale
}

/// The kernel equality criterion `a b~ = a~ b`. Meaningful only when the
/// kernels are nontrivial, which the caller establishes.
pub fn same_kernel_test(x: &PairedSpec, y: &PairedSpec) -> bool {
    same_kernel_discrepancy(x, y) <= SAME_KERNEL_TOL
}

/// [`same_kernel_discrepancy`] for a rational pair against a Laurent pair,
/// after clearing denominators: `num(a) den(b) b~ - a~ num(b) den(a)`.
pub fn same_kernel_discrepancy_rational(a: &RationalSymbol, b: &RationalSymbol, y: &PairedSpec) -> f64 {
    let l = a.num().mul(b.den()).mul(&y.b);
    let r = y.a.mul(b.num()).mul(a.den());
    let scale = l.norm_max().max(r.norm_max()).max(f64::MIN_POSITIVE);
    (&l - &r).norm_max() / scale
}

pub fn same_kernel_test_rational(a: &RationalSymbol, b: &RationalSymbol, y: &PairedSpec) -> bool {
    same_kernel_discrepancy_rational(a, b, y) <= SAME_KERNEL_RATIONAL_TOL
}

/// `||S_{a,b} f|| / max(1, ||f||)`.
pub fn membership_residual(spec: &PairedSpec, f: &CoeffVector) -> f64 {
    apply_s(spec, f).norm_l2() / f.norm_l2().max(1.0)
}

pub(crate) fn require_member(spec: &PairedSpec, f: &CoeffVector, tol: f64) -> Result<()> {
    let residual = membership_residual(spec, f);
    if residual > tol {
        Err(Error::Membership { residual })
    } else {
        Ok(())
    }
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
