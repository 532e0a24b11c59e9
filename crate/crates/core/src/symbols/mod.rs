//! Symbol algebra on the unit circle: Laurent polynomials, rational symbols,
//! Blaschke products and inner-outer factorization.

mod factor;
pub mod grid;
mod laurent;
mod model_space;
mod parse;
mod rational;
mod roots;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

pub use factor::{blaschke, inner_outer_factor, InnerOuterFactorization, BOUNDARY_MARGIN};
pub use laurent::{CoeffVector, LaurentPoly};
pub use model_space::model_space_basis;
pub use parse::parse_symbol;
pub use rational::{rational_to_coeffs, rational_to_coeffs_auto, RationalCoeffs, RationalSymbol, MAX_AUTO_BAND};
pub use roots::{circle_distance, poly_roots, Roots};

/// Where the Fourier support of a symbol sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticityClass {
    /// Band inside `[0, 0]`.
    Constant,
    /// `kmin >= 0`, i.e. in H^inf.
    Analytic,
    /// `kmax <= -1`, conj(H^inf_0).
    CoanalyticVanishing,
    /// `kmax <= 0`, conj(H^inf).
    Coanalytic,
    Neither,
}

impl AnalyticityClass {
    pub fn is_analytic(self) -> bool {
        matches!(self, Self::Analytic | Self::Constant)
    }

    pub fn is_coanalytic(self) -> bool {
        matches!(
            self,
            Self::Coanalytic | Self::CoanalyticVanishing | Self::Constant
        )
    }
}

/// Classifies by Fourier band. The zero symbol counts as constant.
pub fn classify(a: &LaurentPoly) -> AnalyticityClass {
    match a.band() {
        None => AnalyticityClass::Constant,
        Some((0, 0)) => AnalyticityClass::Constant,
        Some((lo, _)) if lo >= 0 => AnalyticityClass::Analytic,
        Some((_, hi)) if hi <= -1 => AnalyticityClass::CoanalyticVanishing,
        Some((_, hi)) if hi <= 0 => AnalyticityClass::Coanalytic,
        _ => AnalyticityClass::Neither,
    }
}

pub fn lp_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.mul(b)
}

pub fn conj_reflect(a: &LaurentPoly) -> LaurentPoly {
    a.conj_reflect()
}

/// Outcome of the nondegeneracy test with the failed conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    pub failures: Vec<String>,
}

/// A nonzero Laurent polynomial vanishes at finitely many points of the
/// circle, so "nonzero a.e." is "not identically zero".
pub fn is_nondegenerate(a: &LaurentPoly, b: &LaurentPoly) -> NondegeneracyReport {
    let mut failures = Vec::new();
    if a.is_zero() {
        failures.push("a = 0".to_string());
    }
    if b.is_zero() {
        failures.push("b = 0".to_string());
    }
    if (a - b).is_zero() {
        failures.push("a - b = 0".to_string());
    }
    NondegeneracyReport {
        nondegenerate: failures.is_empty(),
        failures,
    }
}

pub const SUP_OVERSAMPLING: usize = 16;
pub const SUP_MIN_POINTS: usize = 256;

/// Grid size used by [`sup_norm`] for a given request.
pub fn sup_grid_size(a: &LaurentPoly, grid_points: usize) -> usize {
    let width = a.band().map_or(1, |(lo, hi)| (hi - lo + 1) as usize);
    grid_points
        .max(SUP_MIN_POINTS)
        .max(SUP_OVERSAMPLING * (width + 1))
}

/// `max |a|` on the circle: grid maximum followed by golden-section refinement
/// around the best grid points. A lower bound for the true sup-norm with error
/// `O(h^2)` in the grid spacing `h`.
pub fn sup_norm(a: &LaurentPoly, grid_points: usize) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let m = sup_grid_size(a, grid_points);
    let vals: Vec<f64> = grid::eval_on_grid(a, m).iter().map(|v| v.norm()).collect();
    let top = vals.iter().cloned().fold(0.0, f64::max);
    let h = TAU / m as f64;

    // local maxima within a few percent of the top, best first
    let mut cands: Vec<usize> = (0..m)
        .filter(|&j| {
            let l = vals[(j + m - 1) % m];
            let r = vals[(j + 1) % m];
            vals[j] >= l && vals[j] >= r && vals[j] >= 0.95 * top
        })
        .collect();
    cands.sort_by(|&x, &y| vals[y].total_cmp(&vals[x]));
    cands.truncate(8);

    let mut best = top;
    for j in cands {
        let center = h * j as f64;
        best = best.max(golden_max(|t| a.eval_angle(t).norm(), center - h, center + h));
    }
    best
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    f1.max(f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        parse_symbol(s).unwrap()
    }

    #[test]
    fn sup_norm_examples() {
        assert!((sup_norm(&p("z"), 256) - 1.0).abs() < 1e-14);
        assert!((sup_norm(&p("1+z"), 256) - 2.0).abs() < 1e-14);
        assert!((sup_norm(&p("1+0.5z"), 256) - 1.5).abs() < 1e-14);
        assert_eq!(sup_norm(&LaurentPoly::zero(), 256), 0.0);
    }

    #[test]
    fn sup_norm_refines_off_grid_maximum() {
        // |1 + e^{i(t - t0)}| peaks at t0, chosen between grid points
        let t0 = 0.123456789;
        let a = LaurentPoly::from_dense(
            0,
            vec![
                num_complex::Complex64::new(1.0, 0.0),
                num_complex::Complex64::from_polar(1.0, -t0),
            ],
        );
        assert!((sup_norm(&a, 256) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&p("z^2+3")), AnalyticityClass::Analytic);
        assert_eq!(classify(&p("z^-1")), AnalyticityClass::CoanalyticVanishing);
        assert_eq!(classify(&p("z+z^-1")), AnalyticityClass::Neither);
        assert_eq!(classify(&p("1+z^-2")), AnalyticityClass::Coanalytic);
        assert_eq!(classify(&p("4")), AnalyticityClass::Constant);
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(is_nondegenerate(&p("1"), &p("z")).nondegenerate);
        let r = is_nondegenerate(&p("1"), &p("1"));
        assert!(!r.nondegenerate);
        assert_eq!(r.failures, vec!["a - b = 0"]);
        let r = is_nondegenerate(&p("0"), &p("1"));
        assert_eq!(r.failures, vec!["a = 0"]);
    }
}
