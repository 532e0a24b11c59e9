use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{
    coburn_check, eta_invariance_test, j_map, jtilde_inverse_all, jtilde_map,
    kernel_basis_with, kernel_element_iii, kernel_element_inner, pair_from_function,
    same_kernel_discrepancy, same_kernel_test, toeplitz_kernel_bridge, KernelBasis, KernelOptions,
    JTILDE_TOL,
};
use crate::linalg::largest_principal_angle;
use crate::operators::{
    apply_s, apply_sigma, commutator_residual, composition_residual, conjugation_relation_residual,
    finite_section, hankel_apply, hankel_tilde_apply, norm_bounds, op_norm,
    sigma_composition_residual, PairedSpec, SectionKind, SectionSource,
};
use crate::symbols::{
    blaschke, inner_outer_factor, poly_roots, rational_to_coeffs_auto, CoeffVector, LaurentPoly,
    RationalSymbol,
};

/// Whether a composition quadruple satisfies the analyticity hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conformance {
    Conforming,
    Nonconforming,
}

/// One replayable check. Every field needed to recompute the verdict is stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Case {
    /// Sandwich, monotonicity in `N`, zero characterization and norm-sum gap.
    NormBounds {
        spec: PairedSpec,
        bands: Vec<usize>,
        grid: usize,
        allowance: f64,
        slack: f64,
    },
    /// `op_norm(spec, N) = expected` for each band.
    NormValue {
        spec: PairedSpec,
        bands: Vec<usize>,
        expected: f64,
        tol: f64,
    },
    Composition {
        s: PairedSpec,
        t: PairedSpec,
        sigma: bool,
        conformance: Conformance,
        band: usize,
        tol: f64,
        witness_floor: f64,
    },
    CommutatorIdentity {
        s: PairedSpec,
        t: PairedSpec,
        band: usize,
        tol: f64,
    },
    /// `[eta, S_{a,b}] = 0` iff `eta` is constant.
    Commutant {
        eta: LaurentPoly,
        spec: PairedSpec,
        band: usize,
        tol: f64,
        witness_floor: f64,
    },
    /// The equivalent statements around `ker H_eta ⊕ ker H~_eta`.
    EtaF {
        spec: PairedSpec,
        eta: LaurentPoly,
        f: CoeffVector,
        tol: f64,
    },
    /// `P±(eta f) = eta P± f` for `eta = alpha conj(theta) h`,
    /// `theta = z^k B`, `alpha = prod B_mu`, `h = h0 prod (1 - conj(mu) z)`,
    /// `f = f- + theta f+`. With `expect_identity = false` the hypothesis
    /// `eta` coanalytic is deliberately broken and the identity must fail.
    ModelSpace {
        theta_zeros: Vec<Complex64>,
        theta_order: u32,
        alpha_zeros: Vec<Complex64>,
        h0: LaurentPoly,
        f_minus: CoeffVector,
        f_plus: CoeffVector,
        min_band: i64,
        tol: f64,
        expect_identity: bool,
    },
    KernelDim {
        spec: PairedSpec,
        band: usize,
        expected: usize,
        escalations: usize,
    },
    /// `a` analytic, `b` coanalytic: trivial kernel.
    KernelTrivial {
        spec: PairedSpec,
        band: usize,
        escalations: usize,
    },
    KernelInner {
        a: LaurentPoly,
        b: LaurentPoly,
        tol: f64,
    },
    KernelIii {
        a: LaurentPoly,
        b: LaurentPoly,
        tol: f64,
    },
    /// Equality criterion in both directions, uniqueness and inclusion.
    SameKernel {
        x: PairedSpec,
        y: PairedSpec,
        band: usize,
        escalations: usize,
        angle_tol: f64,
    },
    PairRoundTrip {
        phi: CoeffVector,
        source: Option<PairedSpec>,
        tol: f64,
    },
    EtaInvariance {
        spec: PairedSpec,
        eta: LaurentPoly,
        f: CoeffVector,
    },
    Coburn {
        spec: PairedSpec,
        band: usize,
        escalations: usize,
        tol: f64,
    },
    Conjugation {
        spec: PairedSpec,
        v: CoeffVector,
        tol: f64,
    },
    AdjointCompression {
        spec: PairedSpec,
        band: usize,
        tol: f64,
    },
    AdjointPairing {
        spec: PairedSpec,
        u: CoeffVector,
        v: CoeffVector,
        tol: f64,
    },
    InnerOuter {
        p: LaurentPoly,
        grid: usize,
        tol: f64,
    },
    Bridge {
        g: LaurentPoly,
        band: usize,
        escalations: usize,
        tol: f64,
    },
}

/// Result of evaluating a [`Case`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub passed: bool,
    /// Largest quantity that the check requires to be small.
    pub residual: f64,
    pub measurements: BTreeMap<String, f64>,
    /// Measurements aggregated across trials.
    pub stats: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            ..Default::default()
        }
    }

    /// Records a small-expected quantity and requires `value <= tol`.
    fn small(&mut self, key: &str, value: f64, tol: f64) {
        self.measurements.insert(key.into(), value);
        self.residual = self.residual.max(value);
        if !(value <= tol) {
            self.fail(format!("{key} = {value:e} exceeds {tol:e}"));
        }
    }

    /// Records a quantity that must be at least `floor`.
    fn large(&mut self, key: &str, value: f64, floor: f64) {
        self.measurements.insert(key.into(), value);
        if !(value >= floor) {
            self.fail(format!("{key} = {value:e} below {floor:e}"));
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.fail(what.into());
        }
    }

    fn measure(&mut self, key: &str, value: f64) {
        self.measurements.insert(key.into(), value);
    }

    fn stat(&mut self, key: &str, value: f64) {
        self.stats.insert(key.into(), value);
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.notes.push(msg);
    }
}

fn l1(p: &LaurentPoly) -> f64 {
    p.terms().map(|(_, c)| c.norm()).sum()
}

fn opts(escalations: usize) -> KernelOptions {
    KernelOptions::escalating(escalations)
}

/// `dim ker S_{a,b} = max(0, wind b - wind a)` when neither symbol vanishes
/// on the circle; `None` otherwise.
pub fn winding_dim(spec: &PairedSpec) -> Option<usize> {
    let wind = |p: &LaurentPoly| -> Option<i64> {
        let (lo, hi) = p.band()?;
        if lo == hi {
            return Some(lo);
        }
        let roots = poly_roots(&p.shift(-lo)).ok()?.roots;
        if roots.iter().any(|z| (z.norm() - 1.0).abs() <= 1e-6) {
            return None;
        }
        Some(lo + roots.iter().filter(|z| z.norm() < 1.0).count() as i64)
    };
    let d = wind(&spec.b)? - wind(&spec.a)?;
    Some(d.max(0) as usize)
}

/// Largest deviation of the Gram matrix of `vs` from the identity.
fn gram_deviation(vs: &[CoeffVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, x) in vs.iter().enumerate() {
        for (j, y) in vs.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((x.inner(y) - want).norm());
        }
    }
    worst
}

/// `sin` of the smallest principal angle between two spans: 0 when they share
/// a nonzero vector.
/// `||S v|| / ((||a||_1 + ||b||_1) ||v||)` for each basis vector.
fn cross_residuals(basis: &[CoeffVector], spec: &PairedSpec) -> Vec<f64> {
    let scale = (l1(&spec.a) + l1(&spec.b)).max(f64::MIN_POSITIVE);
    basis
        .iter()
        .map(|v| apply_s(spec, v).norm_l2() / (scale * v.norm_l2()))
        .collect()
}

pub fn evaluate(case: &Case) -> Result<Outcome> {
    let mut o = Outcome::new();
    match case {
        Case::NormBounds {
            spec,
            bands,
            grid,
            allowance,
            slack,
        } => {
            let b = norm_bounds(spec, *grid);
            let norms = bands
                .iter()
                .map(|&n| op_norm(spec, n))
                .collect::<Result<Vec<_>>>()?;
            let top = *norms.last().unwrap_or(&0.0);
            o.measure("op_norm", top);
            o.measure("M", b.m);
            o.small("upper_excess", (top - b.upper() - slack).max(0.0), 0.0);
            o.small("lower_shortfall", ((1.0 - allowance) * b.m - top).max(0.0), 0.0);
            let drop = norms
                .windows(2)
                .map(|w| w[0] - w[1])
                .fold(0.0, f64::max);
            o.small("monotonicity_drop", drop, 1e-12 * top.max(1.0));
            let zero_spec = spec.a.is_zero() && spec.b.is_zero();
            let small8 = op_norm(spec, 8)? <= 1e-12;
            o.require(small8 == zero_spec, "S = 0 characterization");
            if !spec.a.is_zero() && !spec.b.is_zero() {
                let gap = b.sum_ab - top;
                o.stat("norm_sum_gap", gap);
                o.stat("sandwich_position", (top - b.m) / (b.upper() - b.m).max(f64::MIN_POSITIVE));
                o.large("norm_sum_gap", gap, f64::MIN_POSITIVE);
            }
        }
        Case::NormValue {
            spec,
            bands,
            expected,
            tol,
        } => {
            let dev = bands
                .iter()
                .map(|&n| op_norm(spec, n).map(|v| (v - expected).abs()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            o.small("norm_deviation", dev, *tol);
        }
        Case::Composition {
            s,
            t,
            sigma,
            conformance,
            band,
            tol,
            witness_floor,
        } => {
            let r = if *sigma {
                sigma_composition_residual(s, t, *band)?
            } else {
                composition_residual(s, t, *band)?
            };
            o.small("formula_discrepancy", r.discrepancy, *tol);
            o.measure("witness", r.witness as f64);
            match conformance {
                Conformance::Conforming => o.small("composition_residual", r.residual, *tol),
                Conformance::Nonconforming => {
                    o.large("composition_residual", r.residual, *witness_floor);
                    o.stat("nonconforming_residual", r.residual);
                }
            }
        }
        Case::CommutatorIdentity { s, t, band, tol } => {
            let r = commutator_residual(s, t, *band)?;
            o.measure("commutator_norm", r.commutator_norm);
            o.small("identity_discrepancy", r.identity_discrepancy, *tol);
        }
        Case::Commutant {
            eta,
            spec,
            band,
            tol,
            witness_floor,
        } => {
            let mult = PairedSpec::new(eta.clone(), eta.clone());
            let r = commutator_residual(&mult, spec, *band)?;
            let constant = eta.band().is_none_or(|(lo, hi)| lo == 0 && hi == 0);
            if constant {
                o.small("commutator_norm", r.commutator_norm, *tol);
            } else {
                o.large("commutator_norm", r.commutator_norm, *witness_floor);
                o.stat("nonconstant_commutator", r.commutator_norm);
            }
        }
        Case::EtaF { spec, eta, f, tol } => {
            let scale = (l1(eta) * f.norm_l2() * (l1(&spec.a) + l1(&spec.b))).max(1.0);
            let t = tol * scale;
            let (fp, fm) = (f.riesz_plus(), f.riesz_minus());
            let ef = eta.mul(f);
            let d1 = (&eta.mul(&apply_s(spec, f)) - &apply_s(spec, &ef)).norm_l2();
            let d2 = hankel_apply(eta, &fp)?
                .norm_l2()
                .max(hankel_tilde_apply(eta, &fm)?.norm_l2());
            let (efp, efm) = (eta.mul(&fp).chop(t), eta.mul(&fm).chop(t));
            let s3 = efp.kmin().is_none_or(|k| k >= 0) && efm.kmax().is_none_or(|k| k <= -1);
            let d4 = (&eta.mul(&fp) - &ef.riesz_plus()).norm_l2();
            let d5 = (&eta.mul(&fm) - &ef.riesz_minus()).norm_l2();
            let verdicts = [d1 <= t, d2 <= t, s3, d4 <= t, d5 <= t];
            for (k, v) in [("commutes", d1), ("hankel_pair", d2), ("plus_projection", d4), ("minus_projection", d5)] {
                o.measure(k, v);
            }
            o.measure("holds", verdicts[0] as u8 as f64);
            o.stat("holds", verdicts[0] as u8 as f64);
            o.require(
                verdicts.iter().all(|&v| v == verdicts[0]),
                format!("statements disagree: {verdicts:?}"),
            );
        }
        Case::ModelSpace {
            theta_zeros,
            theta_order,
            alpha_zeros,
            h0,
            f_minus,
            f_plus,
            min_band,
            tol,
            expect_identity,
        } => {
            let theta = blaschke(theta_zeros, Complex64::new(1.0, 0.0))?.shift(*theta_order as i64);
            let eta = model_space_eta(theta_zeros, *theta_order, alpha_zeros, h0)?;
            let eta_c = rational_to_coeffs_auto(&eta, *min_band)?.coeffs;
            let upper = rational_to_coeffs_auto(&theta.mul_poly(f_plus), *min_band)?.coeffs;
            let f = f_minus + &upper;
            let ef = eta_c.mul(&f);
            let scale = (eta_c.norm_l2() * f.norm_l2()).max(1.0);
            let plus = (&ef.riesz_plus() - &eta_c.mul(&f.riesz_plus())).norm_l2() / scale;
            let minus = (&ef.riesz_minus() - &eta_c.mul(&f.riesz_minus())).norm_l2() / scale;
            let upper_part = (&f.riesz_plus() - &upper).norm_l2() / scale;
            o.small("f_plus_part", upper_part, *tol);
            if *expect_identity {
                o.small("plus_identity", plus, *tol);
                o.small("minus_identity", minus, *tol);
            } else {
                o.large("identity_defect", plus.max(minus), *tol);
                o.stat("control_defect", plus.max(minus));
            }
        }
        Case::KernelDim {
            spec,
            band,
            expected,
            escalations,
        } => {
            let k = kernel_basis_with(spec, *band, &opts(*escalations))?;
            o.measure("dim", k.dim() as f64);
            o.require(k.dim() == *expected, format!("dim {} != {expected}", k.dim()));
            o.require(k.stabilized, "dimension not stabilized at N + 2");
            o.small("max_residual", k.max_residual, 1e-10);
            o.small("gram_deviation", gram_deviation(&k.basis), 1e-12);
        }
        Case::KernelTrivial {
            spec,
            band,
            escalations,
        } => {
            let k = kernel_basis_with(spec, *band, &opts(*escalations))?;
            o.measure("dim", k.dim() as f64);
            o.require(k.is_trivial(), format!("kernel dimension {}", k.dim()));
            o.notes.push("invariance under analytic/coanalytic pairs is vacuous here".into());
        }
        Case::KernelInner { a, b, tol } => {
            let f = kernel_element_inner(a, b)?;
            let spec = PairedSpec::new(a.clone(), b.clone());
            o.small("membership", apply_s(&spec, &f).norm_l2() / f.norm_l2().max(1.0), *tol);
            o.large("norm", f.norm_l2(), 1e-8);
        }
        Case::KernelIii { a, b, tol } => {
            let f = kernel_element_iii(a, b)?;
            let spec = PairedSpec::new(a.clone(), b.clone());
            let z = LaurentPoly::basis(1);
            let shifted = PairedSpec::new(a.mul(&z), b.mul(&z));
            o.small("residual", apply_s(&spec, &f).norm_l2(), *tol);
            o.small("shifted_residual", apply_s(&shifted, &f).norm_l2(), *tol);
            o.large("norm", f.norm_l2(), 1e-8);
        }
        Case::SameKernel {
            x,
            y,
            band,
            escalations,
            angle_tol,
        } => {
            let kx = kernel_basis_with(x, *band, &opts(*escalations))?;
            let ky = kernel_basis_with(y, *band, &opts(*escalations))?;
            let criterion = same_kernel_test(x, y);
            o.measure("criterion_discrepancy", same_kernel_discrepancy(x, y));
            o.measure("dim_x", kx.dim() as f64);
            o.measure("dim_y", ky.dim() as f64);
            if kx.is_trivial() || ky.is_trivial() {
                o.notes.push("a kernel is trivial; criterion not applicable".into());
                o.stat("applicable", 0.0);
                return Ok(o);
            }
            o.stat("applicable", 1.0);
            let x_in_y = cross_residuals(&kx.basis, y);
            let y_in_x = cross_residuals(&ky.basis, x);
            let x_sub = x_in_y.iter().all(|&r| r <= *angle_tol);
            let y_sub = y_in_x.iter().all(|&r| r <= *angle_tol);
            let equal = x_sub && y_sub;
            o.measure("largest_angle", largest_principal_angle(&kx.basis, &ky.basis));
            o.measure("cross_x_in_y", x_in_y.iter().copied().fold(0.0, f64::max));
            o.measure("cross_y_in_x", y_in_x.iter().copied().fold(0.0, f64::max));
            o.stat("criterion", criterion as u8 as f64);
            o.stat("dims_agree", (kx.dim() == ky.dim()) as u8 as f64);
            o.require(equal == criterion, format!("kernels equal = {equal}, criterion = {criterion}"));
            let shared = x_in_y.iter().chain(&y_in_x).any(|&r| r <= *angle_tol);
            o.require(!shared || criterion, "kernels share a vector but the criterion fails");
            o.require(!(x_sub || y_sub) || equal, "strict nontrivial inclusion");
        }
        Case::PairRoundTrip { phi, source, tol } => {
            let k = pair_from_function(phi)?;
            o.small("annihilation_residual", k.residual, tol * phi.norm_l2().max(1.0));
            if let Some(src) = source {
                let same = k.same_kernel_as(src);
                o.measure("same_kernel", same as u8 as f64);
                o.require(same, "constructed pair fails the criterion against its source");
            }
        }
        Case::EtaInvariance { spec, eta, f } => {
            let r = eta_invariance_test(spec, eta, f)?;
            o.measure("invariant", r.invariant as u8 as f64);
            o.stat("invariant", r.invariant as u8 as f64);
            o.require(r.consistent, "eta f membership disagrees with the Hankel criterion");
            o.require(!r.invariant || r.s_eta_member, "S_{eta,eta} f left the kernel");
        }
        Case::Coburn {
            spec,
            band,
            escalations,
            tol,
        } => coburn(&mut o, spec, *band, *escalations, *tol)?,
        Case::Conjugation { spec, v, tol } => {
            let scale = ((l1(&spec.a) + l1(&spec.b)) * v.norm_l2()).max(1.0);
            o.small("conjugation_residual", conjugation_relation_residual(spec, v) / scale, *tol);
        }
        Case::AdjointCompression { spec, band, tol } => {
            let src = SectionSource::Pair(spec.clone());
            let s = finite_section(&src, SectionKind::S, *band)?.matrix;
            let adj = SectionSource::Pair(spec.conj());
            let sig = finite_section(&adj, SectionKind::Sigma, *band)?.matrix;
            let diff = (s.adjoint() - sig).iter().map(|c| c.norm()).fold(0.0, f64::max);
            o.small("compression_max", diff, *tol);
        }
        Case::AdjointPairing { spec, u, v, tol } => {
            let lhs = apply_s(spec, u).inner(v);
            let rhs = u.inner(&apply_sigma(&spec.conj(), v));
            let scale = ((l1(&spec.a) + l1(&spec.b)) * u.norm_l2() * v.norm_l2()).max(1.0);
            o.small("pairing_residual", (lhs - rhs).norm() / scale, *tol);
        }
        Case::InnerOuter { p, grid, tol } => {
            let f = inner_outer_factor(p)?;
            let sup = crate::symbols::sup_norm(p, *grid).max(1.0);
            o.small("inner_deviation", f.inner_deviation(*grid), *tol);
            o.small("product_residual", f.product_residual(p, *grid) / sup, *tol);
            let o0 = f.outer.eval(Complex64::new(0.0, 0.0));
            o.measure("outer_at_zero", o0.re);
            o.require(o0.re > 0.0 && o0.im.abs() <= 1e-12 * o0.re, "outer(0) not positive");
            o.stat("inner_zeros", f.inner_zeros.len() as f64 + f.monomial_order as f64);
        }
        Case::Bridge {
            g,
            band,
            escalations,
            tol,
        } => {
            let r = toeplitz_kernel_bridge(g, *band, &opts(*escalations))?;
            o.measure("toeplitz_dim", r.toeplitz_dim as f64);
            o.measure("paired_dim", r.paired_dim as f64);
            o.stat("band", r.band as f64);
            o.stat("dim", r.toeplitz_dim as f64);
            o.require(r.toeplitz_dim == r.paired_dim, "dimensions differ");
            o.small("angle", r.angle, *tol);
        }
    }
    Ok(o)
}

fn coburn(o: &mut Outcome, spec: &PairedSpec, band: usize, escalations: usize, tol: f64) -> Result<()> {
    let r = coburn_check(spec, band, &opts(escalations))?;
    let [_, ba, cj, adj] = &r.kernels;
    for (k, v) in [
        ("dim_ab", r.dim_ab),
        ("dim_ba", r.dim_ba),
        ("dim_conj", r.dim_conj),
        ("dim_adjoint", r.dim_adjoint),
    ] {
        o.measure(k, v as f64);
    }
    o.stat("band", r.band as f64);
    o.stat("nontrivial_adjoint", (r.dim_adjoint > 0) as u8 as f64);
    o.require(r.dichotomy, "both k_{a,b} and k_{b,a} nontrivial");
    o.require(r.j_dims_match, "dim k_{b,a} != dim k_{conj a, conj b}");
    o.require(r.jtilde_dims_match != Some(false), "dim ker S* != dim k_{conj a, conj b}");

    // band kernels can only undercount: rational kernel elements decay slowly
    if let Some(full) = winding_dim(spec) {
        o.measure("winding_dim", full as f64);
        o.require(r.dim_ab <= full, format!("band dim {} exceeds index bound {full}", r.dim_ab));
        o.stat("band_resolves_kernel", (r.dim_ab == full) as u8 as f64);
    }

    // J on k_{b,a}: isometric onto k_{conj a, conj b}
    let images = ba
        .basis
        .iter()
        .map(|v| j_map(v, &ba.spec))
        .collect::<Result<Vec<_>>>()?;
    o.small("j_gram_deviation", gram_deviation(&images), 1e-12);
    let j_res = images
        .iter()
        .map(|w| apply_s(&cj.spec, w).norm_l2())
        .fold(0.0, f64::max);
    o.small("j_membership", j_res, 1e-10);
    if !images.is_empty() {
        o.measure("j_angle", largest_principal_angle(&images, &cj.basis));
    }

    // J~ round trips on ker S*
    if !r.invertible_cases.is_empty() {
        jtilde_round_trips(o, spec, adj, tol)?;
    }
    Ok(())
}

fn jtilde_round_trips(o: &mut Outcome, spec: &PairedSpec, adj: &KernelBasis, tol: f64) -> Result<()> {
    let target = spec.conj();
    let mut round: f64 = 0.0;
    let mut agree: f64 = 0.0;
    let mut member: f64 = 0.0;
    for psi in &adj.basis {
        let phi = jtilde_map(psi, spec)?;
        member = member.max(apply_s(&target, &phi).norm_l2() / phi.norm_l2().max(1.0));
        let rep = jtilde_inverse_all(&phi, spec)?;
        for back in &rep.results {
            round = round.max((back - psi).norm_l2());
        }
        agree = agree.max(rep.discrepancy);
        if rep.cases.len() > 1 {
            o.stat("jtilde_overlap", rep.cases.len() as f64);
        }
    }
    if !adj.basis.is_empty() {
        o.stat("jtilde_round_trips", adj.basis.len() as f64);
        o.small("jtilde_membership", member, tol.max(JTILDE_TOL));
        o.small("jtilde_round_trip", round, tol.max(JTILDE_TOL));
        o.small("jtilde_case_agreement", agree, tol.max(JTILDE_TOL));
    }
    Ok(())
}

/// `Ambiguous` and `Membership` mean the band computation could not separate
/// kernel from non-kernel; everything else is a failed check.
pub fn is_ambiguity(e: &Error) -> bool {
    matches!(e, Error::Ambiguous { .. } | Error::Membership { .. })
}

/// `a` coanalytic vanishing, `b` analytic: `p (b - a)` lies in `k_{a,b}` for
/// analytic `p` of degree below `-kmax(a)`.
pub fn known_kernel_element(spec: &PairedSpec, p: &LaurentPoly) -> CoeffVector {
    p.mul(&(&spec.b - &spec.a))
}

/// `alpha conj(theta) h` with `theta = z^k B`, `alpha = prod B_mu` and
/// `h = h0 prod (1 - conj(mu) z)`.
pub fn model_space_eta(
    theta_zeros: &[Complex64],
    theta_order: u32,
    alpha_zeros: &[Complex64],
    h0: &LaurentPoly,
) -> Result<RationalSymbol> {
    let one = Complex64::new(1.0, 0.0);
    let theta = blaschke(theta_zeros, one)?.shift(theta_order as i64);
    let alpha = blaschke(alpha_zeros, one)?;
    let h = alpha_zeros.iter().fold(h0.clone(), |acc, mu| {
        acc.mul(&LaurentPoly::from_dense(0, vec![one, -mu.conj()]))
    });
    Ok(alpha.mul(&theta.conj()).mul_poly(&h))
}
