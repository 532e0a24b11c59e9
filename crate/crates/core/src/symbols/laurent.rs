use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A Laurent polynomial `sum c_k z^k` with finitely many nonzero terms.
///
/// Stored densely from the lowest nonzero exponent. Exact zeros at either end
/// are trimmed, so the zero polynomial is an empty coefficient list and two
/// equal polynomials always have equal storage.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    min: i64,
    coeffs: Vec<Complex64>,
}

/// Finite-band element of L^2 in the Fourier basis. Same storage as
/// [`LaurentPoly`]; the alias marks the role (vector, not symbol).
pub type CoeffVector = LaurentPoly;

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_dense(0, vec![c])
    }

    /// `c z^k`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::from_dense(k, vec![c])
    }

    /// Basis vector `e_k = z^k`.
    pub fn basis(k: i64) -> Self {
        Self::monomial(k, Complex64::new(1.0, 0.0))
    }

    /// Coefficients `coeffs[j]` at exponent `min + j`.
    pub fn from_dense(min: i64, coeffs: Vec<Complex64>) -> Self {
        let mut p = LaurentPoly { min, coeffs };
        p.trim();
        p
    }

    pub fn from_real(min: i64, coeffs: &[f64]) -> Self {
        Self::from_dense(min, coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        let zero = Complex64::new(0.0, 0.0);
        let lead = self.coeffs.iter().position(|c| *c != zero);
        match lead {
            None => {
                self.coeffs.clear();
                self.min = 0;
            }
            Some(start) => {
                let end = self.coeffs.iter().rposition(|c| *c != zero).unwrap();
                self.coeffs.truncate(end + 1);
                self.coeffs.drain(..start);
                self.min += start as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(kmin, kmax)`, or `None` for the zero polynomial.
    pub fn band(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.min, self.min + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn kmin(&self) -> Option<i64> {
        self.band().map(|b| b.0)
    }

    pub fn kmax(&self) -> Option<i64> {
        self.band().map(|b| b.1)
    }

    /// Largest `|k|` over nonzero terms (0 for the zero polynomial).
    pub fn radius(&self) -> i64 {
        self.band().map_or(0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let j = k - self.min;
        if j < 0 || j as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[j as usize]
        }
    }

    /// Dense coefficients starting at `kmin`.
    pub fn dense(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let zero = Complex64::new(0.0, 0.0);
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c != zero)
            .map(move |(j, c)| (self.min + j as i64, *c))
    }

    /// Coefficients on the exponent window `lo..=hi` (zero padded).
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Complex64> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let Some((lo, _)) = self.band() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(lo as i32)
    }

    /// Value at `e^{i theta}`.
    pub fn eval_angle(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_dense(self.min, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min: self.min + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Coefficient convolution, i.e. the pointwise product on the circle.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_dense(self.min + other.min, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let (lo, hi) = match (self.band(), other.band()) {
            (None, None) => return Self::zero(),
            (Some(b), None) | (None, Some(b)) => b,
            (Some(x), Some(y)) => (x.0.min(y.0), x.1.max(y.1)),
        };
        let coeffs = (lo..=hi).map(|k| f(self.coeff(k), other.coeff(k))).collect();
        Self::from_dense(lo, coeffs)
    }

    /// The symbol `conj(a(z))` on the circle: `c'_k = conj(c_{-k})`.
    pub fn conj_reflect(&self) -> Self {
        let Some((_, hi)) = self.band() else {
            return Self::zero();
        };
        let coeffs = self.coeffs.iter().rev().map(|c| c.conj()).collect();
        LaurentPoly { min: -hi, coeffs }
    }

    /// Keeps exponents `k >= 0`.
    pub fn riesz_plus(&self) -> Self {
        self.restrict(0, i64::MAX)
    }

    /// Keeps exponents `k <= -1`.
    pub fn riesz_minus(&self) -> Self {
        self.restrict(i64::MIN, -1)
    }

    /// Zeroes every exponent outside `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let Some((a, b)) = self.band() else {
            return Self::zero();
        };
        let (lo, hi) = (lo.max(a), hi.min(b));
        if lo > hi {
            return Self::zero();
        }
        let s = (lo - self.min) as usize;
        let e = (hi - self.min) as usize;
        Self::from_dense(lo, self.coeffs[s..=e].to_vec())
    }

    pub fn norm_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `<self, other> = sum self_k conj(other_k)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (Some(x), Some(y)) = (self.band(), other.band()) else {
            return Complex64::new(0.0, 0.0);
        };
        let (lo, hi) = (x.0.max(y.0), x.1.min(y.1));
        (lo..=hi).map(|k| self.coeff(k) * other.coeff(k).conj()).sum()
    }

    /// Drops coefficients with modulus `<= tol`.
    pub fn chop(&self, tol: f64) -> Self {
        Self::from_dense(
            self.min,
            self.coeffs
                .iter()
                .map(|c| if c.norm() <= tol { Complex64::new(0.0, 0.0) } else { *c })
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Polynomial coefficients of `z^{-kmin} p`, lowest degree first, and `kmin`.
    pub fn polynomial_part(&self) -> (i64, Vec<Complex64>) {
        (self.min, self.coeffs.clone())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_real(-1.0)
    }
}

/// Prints an expression `parse_symbol` reads back exactly, e.g. `2 - z` or
/// `(1-2i)*z^-1 + 3i`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let (negative, mag) = if c.im == 0.0 {
                let m = c.re.abs();
                (c.re < 0.0, if m == 1.0 { String::new() } else { m.to_string() })
            } else if c.re == 0.0 {
                let m = c.im.abs();
                (c.im < 0.0, if m == 1.0 { "i".into() } else { format!("{m}i") })
            } else {
                (false, format!("({}{}{}i)", c.re, if c.im < 0.0 { "-" } else { "+" }, c.im.abs()))
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            match (mag.is_empty(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// JSON form `{"coeffs": [[k, re, im], ...]}`, exponents ascending, zeros omitted.
#[derive(Serialize, Deserialize)]
struct CoeffsJson {
    coeffs: Vec<(i64, f64, f64)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CoeffsJson {
            coeffs: self.terms().map(|(k, c)| (k, c.re, c.im)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CoeffsJson::deserialize(d)?;
        let p = LaurentPoly::from_terms(
            raw.coeffs
                .into_iter()
                .map(|(k, re, im)| (k, Complex64::new(re, im))),
        );
        if !p.is_finite() {
            return Err(serde::de::Error::custom("non-finite coefficient"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn display_reads_back() {
        let p = LaurentPoly::from_real(0, &[2.0, -1.0]);
        assert_eq!(p.to_string(), "2 - z");
        let q = LaurentPoly::from_terms([
            (-1, Complex64::new(1.0, -2.0)),
            (0, Complex64::new(0.0, 3.0)),
            (2, Complex64::new(-0.125, 0.0)),
        ]);
        assert_eq!(q.to_string(), "(1-2i)*z^-1 + 3i - 0.125*z^2");
        for v in [p, q, LaurentPoly::zero(), LaurentPoly::basis(-3).scale(c(-1.0))] {
            assert_eq!(crate::symbols::parse_symbol(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn mul_examples() {
        let a = LaurentPoly::from_real(0, &[1.0, 1.0]);
        let b = LaurentPoly::from_real(0, &[1.0, -1.0]);
        assert_eq!(a.mul(&b), LaurentPoly::from_real(0, &[1.0, 0.0, -1.0]));
        assert_eq!(LaurentPoly::basis(-1).mul(&LaurentPoly::basis(1)), LaurentPoly::one());
        assert_eq!(a.mul(&LaurentPoly::one()), a);
        assert!(a.mul(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn conj_reflect_examples() {
        assert_eq!(LaurentPoly::basis(1).conj_reflect(), LaurentPoly::basis(-1));
        let s = LaurentPoly::from_real(-1, &[1.0, 0.0, 1.0]);
        assert_eq!(s.conj_reflect(), s);
        let i = LaurentPoly::constant(Complex64::new(0.0, 1.0));
        assert_eq!(i.conj_reflect(), LaurentPoly::constant(Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn trimming_is_canonical() {
        let p = LaurentPoly::from_dense(-3, vec![c(0.0), c(0.0), c(2.0), c(0.0)]);
        assert_eq!(p.band(), Some((-1, -1)));
        let z = LaurentPoly::from_dense(5, vec![c(0.0)]);
        assert_eq!(z, LaurentPoly::zero());
        assert_eq!(z.band(), None);
    }

    #[test]
    fn projections_split() {
        let v = LaurentPoly::from_real(-1, &[1.0, 1.0]);
        assert_eq!(v.riesz_plus(), LaurentPoly::one());
        assert_eq!(v.riesz_minus(), LaurentPoly::basis(-1));
        assert_eq!(&v.riesz_plus() + &v.riesz_minus(), v);
        assert!(LaurentPoly::basis(1).riesz_minus().is_zero());
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::from_real(-1, &[1.0, 1.0]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":[[-1,1.0,0.0],[0,1.0,0.0]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
