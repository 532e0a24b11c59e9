mod common;

use std::f64::consts::TAU;

use common::*;
use num_complex::Complex64;
use paired::kernels::{
    adjoint_kernel_basis, coburn_check, eta_invariance_test, j_map, jtilde_map, kernel_basis, kernel_element_iii,
    kernel_element_inner, kernel_projections, pair_from_function, same_kernel_test, toeplitz_kernel_bridge,
    KernelOptions,
};
use paired::operators::{
    apply_s, block_decompose, conjugation_relation_residual, finite_section, hankel_apply, hankel_tilde_apply,
    SectionKind, SectionSource,
};
use paired::symbols::{
    blaschke, inner_outer_factor, model_space_basis, poly_roots, rational_to_coeffs, RationalSymbol,
};
use paired::{parse_symbol, LaurentPoly, PairedSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> LaurentPoly {
    parse_symbol(s).unwrap()
}

fn pair(a: &str, b: &str) -> PairedSpec {
    PairedSpec::new(p(a), p(b))
}

fn circle(m: usize) -> impl Iterator<Item = Complex64> {
    (0..m).map(move |j| Complex64::from_polar(1.0, TAU * (j as f64 + 0.37) / m as f64))
}

fn naive_s(spec: &PairedSpec, f: &LaurentPoly) -> Coeffs {
    common::apply_s(&coeffs(&spec.a), &coeffs(&spec.b), &coeffs(f))
}

/// `f -> conj(f)` on the circle: `k -> -k` with conjugated coefficients.
fn conj_fn(x: &Coeffs) -> Coeffs {
    x.iter().map(|(k, v)| (-k, v.conj())).collect()
}

fn shift(x: &Coeffs, s: i64) -> Coeffs {
    x.iter().map(|(k, v)| (k + s, *v)).collect()
}

/// `x` is a nonzero multiple of `y`.
fn parallel(x: &Coeffs, y: &Coeffs) -> bool {
    norm(x) > 0.0 && in_span(x, &[y.clone()], 1e-10)
}

#[test]
fn roots_satisfy_the_polynomial() {
    let q = p("z^2 - z - 6");
    let r = poly_roots(&q).unwrap();
    assert_eq!(r.roots.len(), 2);
    for z in &r.roots {
        assert!(eval(&coeffs(&q), *z).norm() <= 1e-10);
    }
    let r = poly_roots(&p("z^2 - 1")).unwrap();
    let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
    let r = poly_roots(&p("z^3")).unwrap();
    assert!(r.roots.is_empty());
    assert_eq!(r.monomial_order, 3);
}

#[test]
fn inner_outer_on_the_grid() {
    let q = p("z - 0.5");
    let f = inner_outer_factor(&q).unwrap();
    let outer = coeffs(f.outer_poly());
    for z in circle(2048) {
        let i = f.inner.eval(z);
        assert!((i.norm() - 1.0).abs() <= 1e-10);
        assert!((i * eval(&outer, z) - eval(&coeffs(&q), z)).norm() <= 1e-10);
    }
    let o0 = eval(&outer, c(0.0, 0.0));
    assert!(o0.re > 0.0 && o0.im.abs() < 1e-14);
    assert_eq!(winding(&outer, 4096), 0);

    let f = inner_outer_factor(&p("z - 2")).unwrap();
    assert!(f.inner_is_constant());
    assert!((f.inner_at_zero() + 1.0).norm() < 1e-12);
    assert!(dist(&coeffs(f.outer_poly()), &from_real(&[(0, 2.0), (1, -1.0)])) < 1e-12);
}

#[test]
fn blaschke_has_unit_modulus() {
    let b = blaschke(&[c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
    for z in circle(4096) {
        assert!((b.eval(z).norm() - 1.0).abs() <= 1e-10);
    }
    let z = blaschke(&[c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
    for w in circle(16) {
        assert!((z.eval(w) - w).norm() < 1e-15);
    }
}

#[test]
fn geometric_series_coefficients() {
    let r = RationalSymbol::new(p("1"), p("1 - 0.5 z")).unwrap();
    let got = rational_to_coeffs(&r, 64).unwrap().coeffs;
    let want: Coeffs = (0..=64).map(|k| (k, c(0.5f64.powi(k as i32), 0.0))).collect();
    assert!(max_abs(&add(&coeffs(&got), &want.iter().map(|(k, v)| (*k, -v)).collect())) <= 1e-12);
}

#[test]
fn model_space_of_one_blaschke_factor() {
    let theta = blaschke(&[c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
    let basis = model_space_basis(&theta, 64).unwrap();
    assert_eq!(basis.len(), 1);
    let v = coeffs(&basis[0]);
    let kernel: Coeffs = (0..=64).map(|k| (k, c(0.5f64.powi(k as i32), 0.0))).collect();
    assert!(parallel(&v, &kernel));
    let m = 4096;
    for j in 0..=3 {
        let ip: Complex64 = circle(m)
            .map(|z| {
                let th = (z - 0.5) / (1.0 - 0.5 * z);
                eval(&v, z) * (th * z.powi(j)).conj()
            })
            .sum::<Complex64>()
            / m as f64;
        assert!(ip.norm() <= 1e-8, "j = {j}: {ip}");
    }
}

#[test]
fn apply_on_kernel_vectors() {
    let spec = pair("z^-1", "z");
    let f = p("1 - z^-2");
    assert!(norm(&naive_s(&spec, &f)) <= 1e-15);
    assert!(apply_s(&spec, &f).norm_l2() <= 1e-15);
    let v = p("z - z^-2 + 3i z^-3");
    let hz2 = hankel_apply(&p("z^-2"), &p("1")).unwrap();
    assert!(dist(&coeffs(&hz2), &from_real(&[(-2, 1.0)])) == 0.0);
    assert!(hankel_apply(&p("z"), &p("1")).unwrap().is_zero());
    let ht = hankel_tilde_apply(&p("z^2"), &p("z^-2")).unwrap();
    assert!(dist(&coeffs(&ht), &from_real(&[(0, 1.0)])) == 0.0);
    assert!(conjugation_relation_residual(&pair("1", "z"), &v) <= 1e-12);
}

#[test]
fn conjugation_relation_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut rand_poly = |lo: i64, hi: i64| -> Coeffs {
        (lo..=hi)
            .map(|k| (k, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
            .collect()
    };
    let mut cases: Vec<(Coeffs, Coeffs, Coeffs)> = (0..50)
        .map(|_| (rand_poly(-3, 3), rand_poly(-2, 4), rand_poly(-5, 5)))
        .collect();
    cases.push((coeffs(&p("z^-1")), coeffs(&p("z^2 + 1")), coeffs(&p("z + z^-3"))));
    for (a, b, v) in cases {
        let lhs = conj_fn(&common::apply_s(&a, &b, &v));
        let rhs = shift(&common::apply_s(&conj_fn(&b), &conj_fn(&a), &shift(&conj_fn(&v), -1)), 1);
        assert!(dist(&lhs, &rhs) <= 1e-12);
        let spec = PairedSpec::new(to_poly(&a), to_poly(&b));
        assert!(conjugation_relation_residual(&spec, &to_poly(&v)) <= 1e-12);
    }
}

#[test]
fn finite_section_columns() {
    let spec = pair("1", "z");
    let sec = finite_section(&SectionSource::Pair(spec.clone()), SectionKind::S, 1).unwrap();
    let (a, b) = (coeffs(&spec.a), coeffs(&spec.b));
    let direct = matrix(|f| plus_minus_window(&common::apply_s(&a, &b, f), 1), -1, 1, -1, 1);
    assert_eq!(sec.matrix, direct);
    assert_eq!(sec.row_exponents, vec![-1, 0, 1]);
    let col = |k: usize| sec.matrix.column(k).iter().copied().collect::<Vec<_>>();
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    assert_eq!(col(0), vec![zero, one, zero]);
    assert_eq!(col(1), vec![zero, one, zero]);
    assert_eq!(col(2), vec![zero, zero, one]);
}

fn plus_minus_window(x: &Coeffs, n: i64) -> Coeffs {
    x.iter().filter(|(k, _)| k.abs() <= n).map(|(k, v)| (*k, *v)).collect()
}

#[test]
fn block_entries_are_inner_products() {
    let spec = pair("z", "z^-1");
    let blocks = block_decompose(&spec, 2).unwrap();
    assert_eq!(blocks.residual, 0.0);
    let (a, b) = (coeffs(&spec.a), coeffs(&spec.b));
    let entry = |sym: &Coeffs, j: i64, k: i64| *mul(sym, &Coeffs::from([(k, c(1.0, 0.0))])).get(&j).unwrap_or(&c(0.0, 0.0));
    for (r, j) in (-2..=-1).enumerate() {
        for (l, k) in (0..=2).enumerate() {
            assert_eq!(blocks.bottom_left[(r, l)], entry(&a, j, k));
        }
    }
    let nonzero = blocks.bottom_left.iter().filter(|v| v.norm() > 0.0).count();
    assert_eq!(nonzero, 0);
    for (r, j) in (0..=2).enumerate() {
        for (l, k) in (-2..=-1).enumerate() {
            assert_eq!(blocks.top_right[(r, l)], entry(&b, j, k));
        }
    }
    let nonzero = blocks.top_right.iter().filter(|v| v.norm() > 0.0).count();
    assert_eq!(nonzero, 0);

    let spec = pair("z^-1", "z");
    let blocks = block_decompose(&spec, 2).unwrap();
    let (a, b) = (coeffs(&spec.a), coeffs(&spec.b));
    assert_eq!(blocks.bottom_left[(1, 0)], entry(&a, -1, 0));
    assert_eq!(blocks.bottom_left.iter().filter(|v| v.norm() > 0.0).count(), 1);
    assert_eq!(blocks.top_right[(0, 1)], entry(&b, 0, -1));
    assert_eq!(blocks.top_right.iter().filter(|v| v.norm() > 0.0).count(), 1);
}

#[test]
fn kernel_dimensions_by_brute_force() {
    let spec = pair("z^-1", "z");
    let (a, b) = (coeffs(&spec.a), coeffs(&spec.b));
    for n in [2usize, 4, 8] {
        let k = kernel_basis(&spec, n).unwrap();
        assert_eq!(k.dim(), kernel_dim(&a, &b, n as i64));
        assert_eq!(k.dim(), 2);
        let basis: Vec<Coeffs> = k.basis.iter().map(coeffs).collect();
        assert!(in_span(&from_real(&[(0, 1.0), (-2, -1.0)]), &basis, 1e-10));
        assert!(in_span(&from_real(&[(1, 1.0), (-1, -1.0)]), &basis, 1e-10));
    }
    let k = kernel_basis(&pair("z^-1", "1"), 16).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(parallel(&coeffs(&k.basis[0]), &from_real(&[(0, 1.0), (-1, -1.0)])));
    let proj = kernel_projections(&k);
    assert!(parallel(&coeffs(&proj.plus[0]), &from_real(&[(0, 1.0)])));
    assert!(parallel(&coeffs(&proj.minus[0]), &from_real(&[(-1, -1.0)])));
    let ratio = proj.plus[0].coeff(0) / proj.minus[0].coeff(-1);
    assert!((ratio + 1.0).norm() < 1e-12);
}

#[test]
fn toeplitz_kernels_by_direct_solve() {
    let opts = KernelOptions::default();
    for (g, dim) in [("z^-1", 1usize), ("z^-2", 2)] {
        let r = toeplitz_kernel_bridge(&p(g), 16, &opts).unwrap();
        let gc = coeffs(&p(g));
        let t = matrix(|f| plus(&mul(&gc, f)), 0, 16, 0, 16);
        assert_eq!(null_dim(&t, 1e-10), dim);
        assert_eq!((r.toeplitz_dim, r.paired_dim), (dim, dim));
        assert!(r.angle < 1e-10);
    }
}

#[test]
fn different_kernels_are_told_apart() {
    let (x, y) = (pair("z^-1", "z"), pair("z^-2", "z^2"));
    assert!(!same_kernel_test(&x, &y));
    let kx: Vec<Coeffs> = kernel_basis(&x, 8).unwrap().basis.iter().map(coeffs).collect();
    let ky: Vec<Coeffs> = kernel_basis(&y, 8).unwrap().basis.iter().map(coeffs).collect();
    assert_eq!((kx.len(), ky.len()), (2, 4));
    assert!(!kx.iter().all(|v| in_span(v, &ky, 1e-8)) || !ky.iter().all(|v| in_span(v, &kx, 1e-8)));
    assert!(same_kernel_test(&x, &pair("z^-1 + 2", "z + 2 z^2")));
}

#[test]
fn kernel_elements_by_substitution() {
    for (a, b, want) in [("z^-1", "z", "1 - z^-2"), ("z^-2", "z^2", "z - z^-3")] {
        let spec = pair(a, b);
        let f = kernel_element_inner(&spec.a, &spec.b).unwrap();
        assert!(norm(&naive_s(&spec, &f)) <= 1e-12);
        assert!(parallel(&coeffs(&f), &coeffs(&p(want))));
    }
    let f = kernel_element_iii(&p("z^-1"), &p("1")).unwrap();
    assert!(parallel(&coeffs(&f), &coeffs(&p("1 - z^-1"))));
    let spec = pair("z^-3", "z^2 + 1");
    let f = kernel_element_iii(&spec.a, &spec.b).unwrap();
    assert!(!f.is_zero());
    assert!(norm(&naive_s(&spec, &f)) <= 1e-12);
}

#[test]
fn pairs_from_functions() {
    let k = pair_from_function(&p("1 - z^-1")).unwrap();
    assert!(k.residual <= 1e-9);
    assert!(k.same_kernel_as(&pair("z^-1", "1")));
    let k = pair_from_function(&p("1 - z^-2")).unwrap();
    assert!(k.same_kernel_as(&pair("z^-1", "z")));
    for s in ["z - 0.5", "1 - z^-1", "1 - z^-2", "2 + z - 3i z^-2"] {
        let phi = p(s);
        let k = pair_from_function(&phi).unwrap();
        let (fp, fm) = (plus(&coeffs(&phi)), minus(&coeffs(&phi)));
        for z in circle(1024) {
            assert!((k.a.eval(z) * eval(&fp, z) + k.b.eval(z) * eval(&fm, z)).norm() <= 1e-9, "{s}");
        }
    }
}

#[test]
fn j_maps_by_direct_arithmetic() {
    let spec = pair("z^-1", "1");
    let j = j_map(&p("1 - z^-1"), &spec).unwrap();
    assert!(dist(&coeffs(&j), &from_real(&[(-1, 1.0), (0, -1.0)])) <= 1e-15);
    assert!(norm(&naive_s(&pair("1", "z"), &j)) <= 1e-15);

    let spec = pair("z", "1");
    let adj = adjoint_kernel_basis(&spec, 16, &KernelOptions::default()).unwrap();
    assert_eq!(adj.dim(), 1);
    assert!(parallel(&coeffs(&adj.basis[0]), &from_real(&[(0, 1.0)])));
    let jt = jtilde_map(&p("1"), &spec).unwrap();
    assert!(dist(&coeffs(&jt), &from_real(&[(-1, 1.0), (0, -1.0)])) <= 1e-15);
    assert!(norm(&naive_s(&spec.conj(), &jt)) <= 1e-15);

    for (a, b, want) in [("z", "1", 1usize), ("1", "z", 0)] {
        let spec = pair(a, b);
        let (ac, bc) = (coeffs(&spec.a.conj_reflect()), coeffs(&spec.b.conj_reflect()));
        let star = matrix(|f| apply_sigma(&ac, &bc, f), -12, 12, -13, 13);
        assert_eq!(null_dim(&star, 1e-10), want);
        let adj = adjoint_kernel_basis(&spec, 12, &KernelOptions::default()).unwrap();
        assert_eq!(adj.dim(), want);
    }
}

#[test]
fn coburn_dimensions_by_direct_solve() {
    let opts = KernelOptions::default();
    for (a, b, dims) in [("1", "z", (1, 0)), ("z^-1", "z", (2, 0))] {
        let spec = pair(a, b);
        let r = coburn_check(&spec, 16, &opts).unwrap();
        let (ac, bc) = (coeffs(&spec.a), coeffs(&spec.b));
        assert_eq!((kernel_dim(&ac, &bc, 16), kernel_dim(&bc, &ac, 16)), dims);
        assert_eq!((r.dim_ab, r.dim_ba), dims);
        assert!(r.holds && r.dichotomy);
    }
}

#[test]
fn eta_invariance_both_sides() {
    for (spec, eta, f) in [
        (pair("z^-1", "z"), p("z^2"), p("1 - z^-2")),
        (pair("z^-1", "1"), p("z"), p("1 - z^-1")),
    ] {
        let r = eta_invariance_test(&spec, &eta, &f).unwrap();
        assert!(norm(&naive_s(&spec, &(&eta * &f))) > 0.5);
        let ht = minus(&coeffs(&f));
        assert!(norm(&plus(&mul(&coeffs(&eta), &ht))) > 0.5);
        assert!(!r.invariant && !r.hankel_tilde_vanishes && r.consistent);
    }
    let r = eta_invariance_test(&pair("z^-1", "z"), &p("3"), &p("z - z^-1")).unwrap();
    assert!(r.invariant && r.hankel_vanishes && r.hankel_tilde_vanishes && r.consistent);
}
