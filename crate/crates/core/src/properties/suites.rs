use num_complex::Complex64;

use super::cases::{known_kernel_element, Case, Conformance};
use super::generator::{DegreeRange, Family, Sampler, BLASCHKE_RADIUS};
use super::SuiteConfig;
use crate::error::{Error, Result};
use crate::operators::PairedSpec;
use crate::symbols::{circle_distance, classify, parse_symbol, LaurentPoly};

/// Suite names in merge order.
pub const SUITES: [&str; 10] = [
    "brown_halmos",
    "coburn",
    "commutant",
    "eta_f",
    "identities",
    "inner_outer",
    "kernels",
    "model_space",
    "norm_bounds",
    "toeplitz_bridge",
];

pub(crate) fn default_trials(suite: &str) -> usize {
    match suite {
        "coburn" => 200,
        "identities" | "toeplitz_bridge" => 50,
        _ => 100,
    }
}

pub(crate) fn default_degrees(suite: &str) -> DegreeRange {
    match suite {
        "norm_bounds" | "inner_outer" => DegreeRange::new(0, 6),
        "kernels" => DegreeRange::new(0, 5),
        _ => DegreeRange::new(0, 4),
    }
}

type Labeled = Vec<(String, Case)>;

fn p(s: &str) -> LaurentPoly {
    parse_symbol(s).expect("pinned symbol parses")
}

fn pair(a: &str, b: &str) -> PairedSpec {
    PairedSpec::new(p(a), p(b))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Checks with fixed inputs, evaluated once per suite run.
pub(crate) fn pinned(suite: &str, cfg: &SuiteConfig) -> Labeled {
    let tol = &cfg.tolerances;
    let esc = cfg.escalations;
    let mut out: Labeled = Vec::new();
    let mut push = |label: &str, case: Case| out.push((label.to_string(), case));
    match suite {
        "norm_bounds" => {
            let value = |spec, bands: &[usize], expected, tol| Case::NormValue {
                spec,
                bands: bands.to_vec(),
                expected,
                tol,
            };
            push("extremal (1, z)", value(pair("1", "z"), &[8], std::f64::consts::SQRT_2, 1e-9));
            push("lower bound (1, 1)", value(pair("1", "1"), &[1, 8, 32, 128], 1.0, tol.exact));
            push("b = 0: (3, 0)", value(pair("3", "0"), &[8, 32], 3.0, tol.exact));
            push("zero operator", value(pair("0", "0"), &[8], 0.0, tol.exact));
        }
        "brown_halmos" => {
            let comp = |s, t, sigma, conformance| Case::Composition {
                s,
                t,
                sigma,
                conformance,
                band: cfg.band.min(16),
                tol: tol.exact,
                witness_floor: tol.numeric,
            };
            push("conforming", comp(pair("z^-1", "z"), pair("1 + z", "z^-1"), false, Conformance::Conforming));
            push("a = b", comp(pair("2", "2"), pair("z^-1", "z"), false, Conformance::Conforming));
            push("witness f = 1", comp(pair("1", "0"), pair("z^-1", "0"), false, Conformance::Nonconforming));
            push("witness f = conj z", comp(pair("1", "0"), pair("0", "z"), false, Conformance::Nonconforming));
            push("sigma conforming", comp(pair("z^-1", "z"), pair("1 + z", "z^-2"), true, Conformance::Conforming));
            push("sigma nonconforming", comp(pair("z", "1"), pair("1", "0"), true, Conformance::Nonconforming));
        }
        "commutant" => {
            let comm = |eta, spec| Case::Commutant {
                eta,
                spec,
                band: 16,
                tol: tol.exact,
                witness_floor: tol.numeric,
            };
            push("eta = z", comm(p("z"), pair("1", "z")));
            push("eta = 2", comm(p("2 + 0 z"), pair("1", "z")));
        }
        "eta_f" => {
            let ef = |spec, eta, f| Case::EtaF {
                spec,
                eta,
                f,
                tol: tol.exact,
            };
            push("eta = z, f = e_-2", ef(pair("z^-1", "z"), p("z"), p("z^-2")));
            push("eta = z, f = e_-1", ef(pair("z^-1", "z"), p("z"), p("z^-1")));
            push(
                "eta = conj z^2, model-space f",
                ef(pair("1", "z"), p("z^-2"), p("z^2 + 3 z^3 - z^-1 + 2 z^-4")),
            );
        }
        "model_space" => {
            let ms = |f_minus, f_plus| Case::ModelSpace {
                theta_zeros: vec![],
                theta_order: 2,
                alpha_zeros: vec![],
                h0: p("1"),
                f_minus,
                f_plus,
                min_band: 64,
                tol: tol.exact,
                expect_identity: true,
            };
            push("theta = z^2, f = z^3", ms(LaurentPoly::zero(), p("z")));
            push("theta = z^2, f = conj z", ms(p("z^-1"), LaurentPoly::zero()));
        }
        "kernels" => {
            let dim = |spec, band, expected| Case::KernelDim {
                spec,
                band,
                expected,
                escalations: 0,
            };
            push("(conj z, z) N = 2", dim(pair("z^-1", "z"), 2, 2));
            push("(conj z, z) N = 32", dim(pair("z^-1", "z"), 32, 2));
            push("(conj z, 1)", dim(pair("z^-1", "1"), 32, 1));
            push("(1, 1 - z) N = 32", dim(pair("1", "1 - z"), 32, 0));
            push("(1, 1 - z) N = 64", dim(pair("1", "1 - z"), 64, 0));
            push(
                "element (ii)",
                Case::KernelInner {
                    a: p("z^-1"),
                    b: p("z"),
                    tol: 1e-9,
                },
            );
            push(
                "element (iii)",
                Case::KernelIii {
                    a: p("z^-3"),
                    b: p("z^2 + 1"),
                    tol: tol.exact,
                },
            );
            let same = |x, y| Case::SameKernel {
                x,
                y,
                band: cfg.band,
                escalations: esc,
                angle_tol: tol.numeric,
            };
            push("criterion eta = 1 + 2z", same(pair("z^-1", "z"), pair("z^-1 + 2", "z + 2 z^2")));
            push("criterion (conj z, z) vs (conj z^2, z^2)", same(pair("z^-1", "z"), pair("z^-2", "z^2")));
            let rt = |phi, source| Case::PairRoundTrip { phi, source, tol: 1e-9 };
            push("pair 1 - conj z", rt(p("1 - z^-1"), Some(pair("z^-1", "1"))));
            push("pair 1 - conj z^2", rt(p("1 - z^-2"), Some(pair("z^-1", "z"))));
            push("pair z - 1/2", rt(p("z - 0.5"), None));
            let inv = |spec, eta, f| Case::EtaInvariance { spec, eta, f };
            push("invariance eta = 3", inv(pair("z^-1", "z"), p("3"), p("z - z^-1")));
            push("invariance eta = z^2", inv(pair("z^-1", "z"), p("z^2"), p("1 - z^-2")));
            push("invariance eta = z", inv(pair("z^-1", "1"), p("z"), p("1 - z^-1")));
            push(
                "vacuous invariance",
                Case::KernelTrivial {
                    spec: pair("1 + z", "2 + z^-1"),
                    band: cfg.band,
                    escalations: esc,
                },
            );
        }
        "coburn" => {
            for (label, a, b) in [
                ("(1, z)", "1", "z"),
                ("(conj z, z)", "z^-1", "z"),
                ("(1, 1 - z)", "1", "1 - z"),
                ("(z, 1)", "z", "1"),
            ] {
                push(
                    label,
                    Case::Coburn {
                        spec: pair(a, b),
                        band: cfg.band,
                        escalations: esc,
                        tol: 1e-9,
                    },
                );
            }
        }
        "inner_outer" => {
            for s in [
                "z - 1",
                "z + 1",
                "z - i",
                "(z - 1)*(z - 0.5)",
                "(z + 1)*(z + 0.3i)",
                "z^2 + 1",
                "z^3 - 1",
                "(z - 1)*(z - 2)",
                "z*(z + i)",
                "(z - 0.6 - 0.8i)*(z + 0.25)",
            ] {
                push(
                    &format!("circle root {s}"),
                    Case::InnerOuter {
                        p: p(s),
                        grid: cfg.grid_points,
                        tol: tol.numeric,
                    },
                );
            }
        }
        "toeplitz_bridge" => {
            for s in ["z^-1", "z", "z^-2"] {
                push(
                    &format!("G = {s}"),
                    Case::Bridge {
                        g: p(s),
                        band: cfg.band,
                        escalations: esc,
                        tol: tol.numeric,
                    },
                );
            }
        }
        _ => {}
    }
    out
}

fn nonconforming_pair(s: &mut Sampler, range: DegreeRange, sigma: bool) -> Result<PairedSpec> {
    // conforming means (analytic, coanalytic) for S and (coanalytic, analytic) for Sigma
    for _ in 0..1000 {
        let t = s.pair(Family::General, Family::General, range)?;
        let (ca, cb) = (classify(&t.a), classify(&t.b));
        let conforming = if sigma {
            ca.is_coanalytic() && cb.is_analytic()
        } else {
            ca.is_analytic() && cb.is_coanalytic()
        };
        if !conforming {
            return Ok(t);
        }
        s.resamples += 1;
    }
    Err(Error::Precondition("resample budget exhausted".into()))
}

/// Random checks for one trial.
pub(crate) fn trial_cases(suite: &str, s: &mut Sampler, trial: usize, cfg: &SuiteConfig) -> Result<Labeled> {
    let range = cfg.degree_range.unwrap_or_else(|| default_degrees(suite));
    let tol = &cfg.tolerances;
    let esc = cfg.escalations;
    let mut out: Labeled = Vec::new();
    match suite {
        "norm_bounds" => {
            let a = s.symbol(Family::General, range)?;
            let b = s.symbol(Family::General, range)?;
            out.push((
                "sandwich".into(),
                Case::NormBounds {
                    spec: PairedSpec::new(a, b),
                    bands: vec![8, 16, 32, 64, 128],
                    grid: cfg.grid_points,
                    allowance: 0.05,
                    slack: 1e-9,
                },
            ));
        }
        "brown_halmos" => {
            let band = cfg.band.min(16);
            let comp = |s, t, sigma, conformance| Case::Composition {
                s,
                t,
                sigma,
                conformance,
                band,
                tol: tol.exact,
                witness_floor: tol.numeric,
            };
            let sp = s.pair(Family::General, Family::General, range)?;
            let conf = s.pair(Family::Analytic, Family::Coanalytic, range)?;
            out.push(("conforming".into(), comp(sp.clone(), conf, false, Conformance::Conforming)));
            let non = nonconforming_pair(s, range, false)?;
            out.push(("nonconforming".into(), comp(sp, non, false, Conformance::Nonconforming)));
            let sg = s.pair(Family::Coanalytic, Family::Analytic, range)?;
            let t = s.pair(Family::General, Family::General, range)?;
            out.push(("sigma conforming".into(), comp(sg, t.clone(), true, Conformance::Conforming)));
            let sg = nonconforming_pair(s, range, true)?;
            out.push(("sigma nonconforming".into(), comp(sg, t, true, Conformance::Nonconforming)));
        }
        "commutant" => {
            let spec = s.pair(Family::General, Family::General, range)?;
            let eta = if trial % 4 == 0 {
                LaurentPoly::constant(s.gaussian())
            } else {
                s.nonconstant(Family::General, range)?
            };
            out.push((
                "commutant".into(),
                Case::Commutant {
                    eta,
                    spec: spec.clone(),
                    band: 16,
                    tol: tol.exact,
                    witness_floor: tol.numeric,
                },
            ));
            let t = s.pair(Family::General, Family::General, range)?;
            out.push((
                "commutator identity".into(),
                Case::CommutatorIdentity {
                    s: spec,
                    t,
                    band: 16,
                    tol: tol.exact,
                },
            ));
        }
        "eta_f" => {
            let spec = s.pair(Family::General, Family::General, range)?;
            let eta = s.nonconstant(Family::General, range)?;
            let (lo, hi) = eta.band().unwrap_or((0, 0));
            // eta f+ stays analytic and eta f- coanalytic vanishing
            let plus_member = s.symbol(Family::Analytic, range)?.shift((-lo).max(0));
            let minus_member = s.symbol(Family::CoanalyticVanishing, range)?.shift(-hi.max(0));
            let (label, f) = match trial % 3 {
                0 => ("random", s.symbol(Family::General, range)?),
                1 => ("member", &plus_member + &minus_member),
                // the extreme coefficient of the broken part survives in eta f
                _ if hi >= 1 => {
                    let broken = s.symbol(Family::CoanalyticVanishing, range)?;
                    ("half member", &plus_member + &broken.restrict(i64::MIN, -1))
                }
                _ => ("half member", &s.symbol(Family::Analytic, range)? + &minus_member),
            };
            out.push((
                label.into(),
                Case::EtaF {
                    spec,
                    eta,
                    f,
                    tol: tol.exact,
                },
            ));
        }
        "model_space" => out.push(("identity".into(), model_space_case(s, trial, cfg)?)),
        "kernels" => kernel_cases(s, trial, cfg, range, &mut out)?,
        "coburn" => {
            let spec = s.pair(Family::General, Family::General, range)?;
            out.push((
                "dichotomy".into(),
                Case::Coburn {
                    spec,
                    band: cfg.band,
                    escalations: esc,
                    tol: 1e-9,
                },
            ));
        }
        "identities" => {
            let spec = s.pair(Family::General, Family::General, range)?;
            let v = s.symbol(Family::General, DegreeRange::new(0, 8))?;
            let u = s.symbol(Family::General, DegreeRange::new(0, 8))?;
            out.push((
                "conjugation".into(),
                Case::Conjugation {
                    spec: spec.clone(),
                    v: v.clone(),
                    tol: tol.exact,
                },
            ));
            out.push((
                "adjoint compression".into(),
                Case::AdjointCompression {
                    spec: spec.clone(),
                    band: 16,
                    tol: 1e-14,
                },
            ));
            out.push((
                "adjoint pairing".into(),
                Case::AdjointPairing {
                    spec,
                    u,
                    v,
                    tol: tol.exact,
                },
            ));
        }
        "inner_outer" => {
            let range = DegreeRange::new(range.min.max(1), range.max.max(1));
            let mut q = s.symbol(Family::Analytic, range)?;
            for _ in 0..1000 {
                if q.radius() == 0 || circle_distance(&q)? > 1e-6 {
                    break;
                }
                s.resamples += 1;
                q = s.symbol(Family::Analytic, range)?;
            }
            out.push((
                "factorization".into(),
                Case::InnerOuter {
                    p: q,
                    grid: cfg.grid_points,
                    tol: tol.numeric,
                },
            ));
        }
        "toeplitz_bridge" => {
            let k = s.int(0, 3);
            let g = s.symbol(Family::Analytic, range)?.shift(-k);
            out.push((
                "bridge".into(),
                Case::Bridge {
                    g,
                    band: cfg.band,
                    escalations: esc,
                    tol: tol.numeric,
                },
            ));
        }
        other => return Err(Error::Precondition(format!("unknown suite {other:?}"))),
    }
    Ok(out)
}

/// `theta = z^k B` with two random zeros, `alpha` with at most one zero,
/// `deg(alpha h) <= k` so that `alpha conj(theta) h` is coanalytic.
fn model_space_case(s: &mut Sampler, trial: usize, cfg: &SuiteConfig) -> Result<Case> {
    let theta_zeros = vec![s.disk_point(BLASCHKE_RADIUS), s.disk_point(BLASCHKE_RADIUS)];
    let alpha_zeros = if s.coin() {
        vec![s.disk_point(BLASCHKE_RADIUS)]
    } else {
        vec![]
    };
    let h0_deg = s.int(0, 3 - alpha_zeros.len() as i64);
    let h0 = s.poly(0, h0_deg);
    let q_deg = h0_deg as u32 + alpha_zeros.len() as u32;
    let control = trial % 4 == 3 && q_deg > 0;
    let theta_order = if control { 0 } else { q_deg + s.int(0, 1) as u32 };
    let lo = s.int(1, 4);
    let f_minus = s.poly(-lo, -1);
    let f_plus = s.symbol(Family::Analytic, DegreeRange::new(0, 3))?;
    Ok(Case::ModelSpace {
        theta_zeros,
        theta_order,
        alpha_zeros,
        h0,
        f_minus,
        f_plus,
        min_band: 2 * cfg.band as i64,
        tol: cfg.tolerances.numeric,
        expect_identity: !control,
    })
}

fn kernel_cases(s: &mut Sampler, trial: usize, cfg: &SuiteConfig, range: DegreeRange, out: &mut Labeled) -> Result<()> {
    let tol = &cfg.tolerances;
    let esc = cfg.escalations;
    let small = DegreeRange::new(range.min.max(1), range.max.clamp(1, 4));

    // random phi with parts of degree <= 5
    let d = range.max.max(1) as i64;
    let (hi, lo) = (s.int(0, d), s.int(1, d));
    let phi = &s.poly(0, hi) + &s.poly(-lo, -1);
    out.push((
        "pair from random phi".into(),
        Case::PairRoundTrip {
            phi,
            source: None,
            tol: 1e-9,
        },
    ));

    // known kernel: a coanalytic vanishing, b analytic, phi = p (b - a)
    let known = s.pair(Family::CoanalyticVanishing, Family::Analytic, small)?;
    let room = -known.a.kmax().unwrap_or(-1) - 1;
    let mult_deg = s.int(0, room);
    let mult = s.poly(0, mult_deg);
    if trial % 2 == 0 {
        out.push((
            "pair from known kernel".into(),
            Case::PairRoundTrip {
                phi: known_kernel_element(&known, &mult),
                source: Some(known.clone()),
                tol: 1e-9,
            },
        ));
    }

    match trial % 4 {
        0 => {
            let spec = s.pair(Family::Analytic, Family::Coanalytic, small)?;
            out.push((
                "trivial kernel".into(),
                Case::KernelTrivial {
                    spec,
                    band: cfg.band,
                    escalations: esc,
                },
            ));
            let a = s.symbol(Family::Coanalytic, small)?;
            let lambda = s.disk_point(BLASCHKE_RADIUS);
            let b = s
                .symbol(Family::Analytic, DegreeRange::new(0, 3))?
                .mul(&LaurentPoly::from_dense(0, vec![-lambda, c(1.0, 0.0)]));
            out.push(("element (ii)".into(), Case::KernelInner { a, b, tol: 1e-9 }));
        }
        1 => {
            out.push((
                "element (iii)".into(),
                Case::KernelIii {
                    a: known.a.clone(),
                    b: known.b.clone(),
                    tol: tol.exact,
                },
            ));
            let eta = s.nonconstant(Family::General, DegreeRange::new(1, 2))?;
            let y = PairedSpec::new(eta.mul(&known.a), eta.mul(&known.b));
            out.push((
                "criterion, multiplied pair".into(),
                Case::SameKernel {
                    x: known.clone(),
                    y,
                    band: cfg.band,
                    escalations: esc,
                    angle_tol: tol.numeric,
                },
            ));
        }
        2 => {
            let other = s.pair(Family::CoanalyticVanishing, Family::Analytic, small)?;
            out.push((
                "criterion, unrelated pair".into(),
                Case::SameKernel {
                    x: known.clone(),
                    y: other,
                    band: cfg.band,
                    escalations: esc,
                    angle_tol: tol.numeric,
                },
            ));
        }
        _ => {
            let f = known_kernel_element(&known, &mult);
            let eta = if s.coin() {
                s.nonconstant(Family::General, DegreeRange::new(1, 2))?
            } else {
                // shifts by z^j with j <= -kmax(a) - 1 - deg(mult) keep f in the kernel
                LaurentPoly::basis(s.int(0, (room - mult.kmax().unwrap_or(0)).max(0)))
            };
            out.push((
                "eta invariance".into(),
                Case::EtaInvariance {
                    spec: known.clone(),
                    eta,
                    f,
                },
            ));
        }
    }
    Ok(())
}
