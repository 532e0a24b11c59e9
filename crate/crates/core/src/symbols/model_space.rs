use num_complex::Complex64;

use super::laurent::{CoeffVector, LaurentPoly};
use super::rational::RationalSymbol;
use super::roots::polynomial_roots;
use crate::error::{Error, Result};
use crate::linalg::orthonormalize;

const INNER_TOL: f64 = 1e-8;
const CLUSTER_TOL: f64 = 1e-4;

/// Orthonormal basis of `K_theta = H^2 ⊖ theta H^2` on exponents `0..=band`,
/// for a finite Blaschke product `theta` (times `z^m` and a constant).
///
/// The spanning set is `z^j` (`j < m`) for the zero at the origin and the
/// reproducing kernels `1/(1 - conj(l) z)` for the other zeros `l`; a double
/// zero adds `z/(1 - conj(l) z)^2`. Higher multiplicities are rejected.
pub fn model_space_basis(theta: &RationalSymbol, band: usize) -> Result<Vec<CoeffVector>> {
    let deviation = theta.unimodular_deviation(1024);
    if deviation > INNER_TOL {
        return Err(Error::NotInner { deviation });
    }
    let num = theta.num();
    let Some((lo, _)) = num.band() else {
        return Err(Error::NotInner { deviation: 1.0 });
    };
    if lo < 0 {
        return Err(Error::Precondition("theta must be analytic".into()));
    }
    let den_roots = polynomial_roots(theta.den().dense())?;
    let mut zeros = polynomial_roots(num.dense())?;
    // common factors of num and den cancel
    for d in den_roots {
        if let Some(i) = zeros.iter().position(|z| (z - d).norm() < CLUSTER_TOL) {
            zeros.remove(i);
        }
    }
    let mut order0 = lo as usize;
    // (sum, count) per cluster of nearby zeros
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in zeros {
        if z.norm() >= 1.0 {
            return Err(Error::NotInner { deviation });
        }
        if z.norm() < CLUSTER_TOL {
            order0 += 1;
            continue;
        }
        match clusters
            .iter_mut()
            .find(|(s, n)| (*s / *n as f64 - z).norm() < CLUSTER_TOL)
        {
            Some(c) => {
                c.0 += z;
                c.1 += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    if order0 > band + 1 {
        return Err(Error::Precondition(format!(
            "band {band} too small for z^{order0}"
        )));
    }

    let mut span: Vec<CoeffVector> = (0..order0 as i64).map(LaurentPoly::basis).collect();
    for (sum, mult) in clusters {
        let l = sum / mult as f64;
        if mult > 2 {
            return Err(Error::Unsupported(format!(
                "Blaschke zero of multiplicity {mult}"
            )));
        }
        let lc = l.conj();
        span.push(LaurentPoly::from_dense(
            0,
            (0..=band).map(|k| lc.powi(k as i32)).collect(),
        ));
        if mult == 2 {
            span.push(LaurentPoly::from_dense(
                0,
                (0..=band)
                    .map(|k| {
                        if k == 0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            lc.powi(k as i32 - 1) * k as f64
                        }
                    })
                    .collect(),
            ));
        }
    }
    Ok(orthonormalize(&span, 0, band as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{blaschke, parse_symbol, rational_to_coeffs};

    #[test]
    fn monomial_theta() {
        let t = RationalSymbol::from_poly(parse_symbol("z^2").unwrap());
        let b = model_space_basis(&t, 16).unwrap();
        assert_eq!(b, vec![LaurentPoly::basis(0), LaurentPoly::basis(1)]);
        let t = RationalSymbol::from_poly(parse_symbol("z").unwrap());
        assert_eq!(model_space_basis(&t, 16).unwrap(), vec![LaurentPoly::basis(0)]);
    }

    #[test]
    fn single_zero_orthogonality_oracle() {
        let theta = blaschke(&[Complex64::new(0.5, 0.0)], Complex64::new(1.0, 0.0)).unwrap();
        let n = 64;
        let b = model_space_basis(&theta, n).unwrap();
        assert_eq!(b.len(), 1);
        let v = &b[0];
        let ratio = v.coeff(1) / v.coeff(0);
        assert!((ratio - 0.5).norm() < 1e-14);
        for j in 0..=3 {
            let tz = rational_to_coeffs(&theta.shift(j), 2 * n as i64).unwrap().coeffs;
            assert!(v.inner(&tz).norm() <= 1e-8, "j={j}");
        }
    }

    #[test]
    fn double_zero_and_rejections() {
        let l = Complex64::new(0.3, -0.2);
        let theta = blaschke(&[l, l], Complex64::new(1.0, 0.0)).unwrap();
        let b = model_space_basis(&theta, 80).unwrap();
        assert_eq!(b.len(), 2);
        let theta3 = blaschke(&[l, l, l], Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            model_space_basis(&theta3, 80),
            Err(Error::Unsupported(_))
        ));
        let not_inner = RationalSymbol::from_poly(parse_symbol("1 + z").unwrap());
        assert!(matches!(
            model_space_basis(&not_inner, 8),
            Err(Error::NotInner { .. })
        ));
    }
}
