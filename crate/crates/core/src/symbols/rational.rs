use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{coeffs_from_samples, eval_on_grid, pow2_at_least};
use super::laurent::{CoeffVector, LaurentPoly};
use super::roots::{circle_distance, poly_roots};
use crate::error::{Error, Result};

/// Distance from the circle below which a denominator root is rejected.
pub const DENOMINATOR_MARGIN: f64 = 1e-8;

/// `num / den` with `den` an analytic polynomial, `den(0) != 0`, monic and
/// zero-free on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalSymbol {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalSymbol {
    /// Normalizes `den` (monomial factors move into the numerator, leading
    /// coefficient 1) and checks that it has no zeros on the circle.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        let Some((lo, hi)) = den.band() else {
            return Err(Error::ZeroInput("rational symbol with zero denominator"));
        };
        let lead = den.coeff(hi);
        let inv = Complex64::new(1.0, 0.0) / lead;
        let den = den.shift(-lo).scale(inv);
        let num = num.shift(-lo).scale(inv);
        let dist = circle_distance(&den)?;
        if dist <= DENOMINATOR_MARGIN {
            return Err(Error::Conditioning { min_modulus: dist });
        }
        Ok(RationalSymbol { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalSymbol {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `1 / p` for a Laurent polynomial without zeros on the circle.
    pub fn reciprocal(p: &LaurentPoly) -> Result<Self> {
        Self::new(LaurentPoly::one(), p.clone())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial itself when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        (self.den == LaurentPoly::one()).then_some(&self.num)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalSymbol {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalSymbol {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalSymbol {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        RationalSymbol {
            num: &self.num.mul(&other.den) + &other.num.mul(&self.den),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        RationalSymbol {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        RationalSymbol {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    /// `conj(r(z))` on the circle. With `d = deg den`,
    /// `conj(N/D) = z^d conj(N)(z) / (z^d conj(D)(z))`, and `z^d conj(D)` is the
    /// conjugate-reversed polynomial, whose roots `1/conj(r)` stay off the circle.
    pub fn conj(&self) -> Self {
        let d = self.den.kmax().unwrap_or(0);
        let den = self.den.conj_reflect().shift(d);
        let lead = den.coeff(den.kmax().unwrap_or(0));
        let inv = Complex64::new(1.0, 0.0) / lead;
        RationalSymbol {
            num: self.num.conj_reflect().shift(d).scale(inv),
            den: den.scale(inv),
        }
    }

    /// `max | |r(z)| - 1 |` over `m` grid points.
    pub fn unimodular_deviation(&self, m: usize) -> f64 {
        let n = eval_on_grid(&self.num, m);
        let d = eval_on_grid(&self.den, m);
        n.iter()
            .zip(&d)
            .map(|(a, b)| ((a / b).norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn samples(&self, m: usize) -> Vec<Complex64> {
        let n = eval_on_grid(&self.num, m);
        let d = eval_on_grid(&self.den, m);
        n.iter().zip(&d).map(|(a, b)| a / b).collect()
    }
}

impl From<LaurentPoly> for RationalSymbol {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

#[derive(Deserialize)]
struct RationalJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl<'de> Deserialize<'de> for RationalSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RationalJson::deserialize(d)?;
        RationalSymbol::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

/// Fourier coefficients of a rational symbol on `[-N, N]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalCoeffs {
    pub coeffs: CoeffVector,
    pub grid_points: usize,
    /// `max |r - truncated series|` on the half-step shifted grid.
    pub reconstruction_error: f64,
}

/// Upper limit for [`rational_to_coeffs_auto`].
pub const MAX_AUTO_BAND: i64 = 1 << 15;

/// [`rational_to_coeffs`] with the band chosen from the pole locations so the
/// discarded tail is below double precision, never less than `min_band`.
pub fn rational_to_coeffs_auto(r: &RationalSymbol, min_band: i64) -> Result<RationalCoeffs> {
    let decay = if r.den.radius() == 0 {
        0
    } else {
        // slowest geometric rate among the poles
        let rho = poly_roots(&r.den)?
            .roots
            .iter()
            .map(|z| z.norm().min(1.0 / z.norm()))
            .fold(0.0, f64::max);
        if rho >= 1.0 {
            return Err(Error::Conditioning { min_modulus: 0.0 });
        }
        (40.0 / -rho.ln()).ceil().min(MAX_AUTO_BAND as f64) as i64
    };
    let band = decay
        .saturating_add(r.num.radius())
        .min(MAX_AUTO_BAND)
        .max(min_band);
    rational_to_coeffs(r, band)
}

/// Samples `r` on a fine grid and inverts the DFT, keeping `[-N, N]`. The
/// truncation error decays geometrically in `N` at a rate set by the distance
/// of the poles to the circle.
pub fn rational_to_coeffs(r: &RationalSymbol, band: i64) -> Result<RationalCoeffs> {
    let band = band.max(0);
    let num_radius = r.num.radius() + r.den.radius();
    let m = pow2_at_least((8 * (band as usize + 1)).max(1024).max(4 * (num_radius as usize + 1)));

    let den_vals = eval_on_grid(&r.den, m);
    let den_max = den_vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let den_min = den_vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    if den_min <= 1e-12 * den_max {
        return Err(Error::Conditioning {
            min_modulus: den_min,
        });
    }
    let num_vals = eval_on_grid(&r.num, m);
    let samples: Vec<Complex64> = num_vals.iter().zip(&den_vals).map(|(a, b)| a / b).collect();
    let scale = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let coeffs = coeffs_from_samples(&samples, -band, band).chop(4.0 * f64::EPSILON * scale);

    // compare on the grid shifted by half a step
    let half = std::f64::consts::PI / m as f64;
    let rotate = |p: &LaurentPoly| {
        LaurentPoly::from_terms(p.terms().map(|(k, c)| (k, c * Complex64::from_polar(1.0, half * k as f64))))
    };
    let approx = eval_on_grid(&rotate(&coeffs), m);
    let exact_n = eval_on_grid(&rotate(&r.num), m);
    let exact_d = eval_on_grid(&rotate(&r.den), m);
    let reconstruction_error = approx
        .iter()
        .zip(exact_n.iter().zip(&exact_d))
        .map(|(a, (n, d))| (a - n / d).norm())
        .fold(0.0, f64::max);

    Ok(RationalCoeffs {
        coeffs,
        grid_points: m,
        reconstruction_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::parse_symbol;

    fn p(s: &str) -> LaurentPoly {
        parse_symbol(s).unwrap()
    }

    #[test]
    fn trivial_rationals() {
        let r = RationalSymbol::from_poly(p("z"));
        let c = rational_to_coeffs(&r, 8).unwrap();
        assert!((&c.coeffs - &p("z")).norm_max() < 1e-15);
        let c = rational_to_coeffs(&RationalSymbol::from_poly(p("5")), 8).unwrap();
        assert!((&c.coeffs - &p("5")).norm_max() < 1e-14);
    }

    #[test]
    fn geometric_series_oracle() {
        let r = RationalSymbol::reciprocal(&p("1 - 0.5z")).unwrap();
        for band in [64, 100] {
            let c = rational_to_coeffs(&r, band).unwrap();
            for k in -band..=band {
                let want = if k >= 0 { 0.5f64.powi(k as i32) } else { 0.0 };
                assert!((c.coeffs.coeff(k) - want).norm() <= 1e-12, "k={k}");
            }
            assert!(c.reconstruction_error < 1e-12);
        }
    }

    #[test]
    fn truncation_error_decays_with_band() {
        let r = RationalSymbol::reciprocal(&p("1 - 0.9z")).unwrap();
        let e8 = rational_to_coeffs(&r, 8).unwrap().reconstruction_error;
        let e32 = rational_to_coeffs(&r, 32).unwrap().reconstruction_error;
        let e128 = rational_to_coeffs(&r, 128).unwrap().reconstruction_error;
        assert!(e8 > e32 && e32 > e128);
        assert!(e128 < 1e-4);
    }

    #[test]
    fn rejects_circle_poles() {
        assert!(matches!(
            RationalSymbol::reciprocal(&p("1 - z")),
            Err(Error::Conditioning { .. })
        ));
    }

    #[test]
    fn normalization_moves_monomials() {
        let r = RationalSymbol::new(p("1"), p("2z - z^2")).unwrap();
        assert_eq!(r.den(), &p("z - 2"));
        assert_eq!(r.num(), &p("-z^-1"));
        let z = Complex64::new(0.3, 0.8);
        assert!((r.eval(z) - 1.0 / (2.0 * z - z * z)).norm() < 1e-14);
    }

    #[test]
    fn conj_matches_pointwise_conjugate() {
        let r = RationalSymbol::new(p("z^-1 + 2i z"), p("3 - z")).unwrap();
        let c = r.conj();
        for t in [0.1, 1.7, 3.0, 5.5] {
            let z = Complex64::from_polar(1.0, t);
            assert!((c.eval(z) - r.eval(z).conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn json_round_trip() {
        let r = RationalSymbol::new(p("1 + z^-1"), p("z - 3")).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"num":{"coeffs":"#));
        let back: RationalSymbol = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
