use serde::Serialize;

use super::{apply_s, apply_sigma, PairedSpec};
use crate::error::{Error, Result};
use crate::symbols::{CoeffVector, LaurentPoly};

/// Column-wise comparison of a composition against the closed-form defect,
/// over `e_k`, `k = -N..=N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionReport {
    #[serde(rename = "N")]
    pub n: usize,
    /// `max_k || (lhs - rhs) e_k ||` where `rhs` is the plain paired operator.
    pub residual: f64,
    /// Column exponent attaining `residual`.
    pub witness: i64,
    /// `max_k || T e_k ||` for the closed-form defect `T`.
    pub formula_norm: f64,
    /// `max_k || (lhs - rhs - T) e_k ||`.
    pub discrepancy: f64,
}

fn column_report(
    band: usize,
    lhs: impl Fn(&CoeffVector) -> CoeffVector,
    rhs: impl Fn(&CoeffVector) -> CoeffVector,
    defect: impl Fn(&CoeffVector) -> CoeffVector,
) -> Result<CompositionReport> {
    if band < 1 {
        return Err(Error::Precondition("composition check needs N >= 1".into()));
    }
    let n = band as i64;
    let mut rep = CompositionReport {
        n: band,
        residual: 0.0,
        witness: -n,
        formula_norm: 0.0,
        discrepancy: 0.0,
    };
    for k in -n..=n {
        let e = LaurentPoly::basis(k);
        let r = &lhs(&e) - &rhs(&e);
        let t = defect(&e);
        let rn = r.norm_l2();
        if rn > rep.residual {
            rep.residual = rn;
            rep.witness = k;
        }
        rep.formula_norm = rep.formula_norm.max(t.norm_l2());
        rep.discrepancy = rep.discrepancy.max((&r - &t).norm_l2());
    }
    Ok(rep)
}

/// `S_{a,b} S_{a~,b~} - S_{a a~, b b~}` against `(a - b)(P+ b~ P- - P- a~ P+)`.
pub fn composition_residual(s: &PairedSpec, t: &PairedSpec, band: usize) -> Result<CompositionReport> {
    let prod = PairedSpec::new(s.a.mul(&t.a), s.b.mul(&t.b));
    let amb = &s.a - &s.b;
    column_report(
        band,
        |v| apply_s(s, &apply_s(t, v)),
        |v| apply_s(&prod, v),
        |v| {
            let x = &t.b.mul(&v.riesz_minus()).riesz_plus() - &t.a.mul(&v.riesz_plus()).riesz_minus();
            amb.mul(&x)
        },
    )
}

/// `Sigma_{a,b} Sigma_{a~,b~} - Sigma_{a a~, b b~}` against
/// `(P+ a P- - P- b P+)(b~ - a~)`.
pub fn sigma_composition_residual(
    s: &PairedSpec,
    t: &PairedSpec,
    band: usize,
) -> Result<CompositionReport> {
    let prod = PairedSpec::new(s.a.mul(&t.a), s.b.mul(&t.b));
    let tmb = &t.b - &t.a;
    column_report(
        band,
        |v| apply_sigma(s, &apply_sigma(t, v)),
        |v| apply_sigma(&prod, v),
        |v| {
            let w = tmb.mul(v);
            &s.a.mul(&w.riesz_minus()).riesz_plus() - &s.b.mul(&w.riesz_plus()).riesz_minus()
        },
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorReport {
    #[serde(rename = "N")]
    pub n: usize,
    /// `max_k || [S_{a,b}, S_{a~,b~}] e_k ||`.
    pub commutator_norm: f64,
    /// `max_k` column norm of `[S, S~]` minus its closed form in Hankel-type terms.
    pub identity_discrepancy: f64,
}

/// `[S_{a,b}, S_{a~,b~}]` against
/// `(a~ - b~)(P- a P+ - P+ b P-) - (a - b)(P- a~ P+ - P+ b~ P-)`.
pub fn commutator_residual(s: &PairedSpec, t: &PairedSpec, band: usize) -> Result<CommutatorReport> {
    let amb = &s.a - &s.b;
    let tamb = &t.a - &t.b;
    let hankel_pair = |x: &PairedSpec, v: &CoeffVector| {
        &x.a.mul(&v.riesz_plus()).riesz_minus() - &x.b.mul(&v.riesz_minus()).riesz_plus()
    };
    let r = column_report(
        band,
        |v| apply_s(s, &apply_s(t, v)),
        |v| apply_s(t, &apply_s(s, v)),
        |v| &tamb.mul(&hankel_pair(s, v)) - &amb.mul(&hankel_pair(t, v)),
    )?;
    Ok(CommutatorReport {
        n: band,
        commutator_norm: r.residual,
        identity_discrepancy: r.discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::parse_symbol;

    fn spec(a: &str, b: &str) -> PairedSpec {
        PairedSpec::new(parse_symbol(a).unwrap(), parse_symbol(b).unwrap())
    }

    #[test]
    fn composition_examples() {
        let r = composition_residual(&spec("1", "z"), &spec("1", "z^-1"), 4).unwrap();
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.discrepancy, 0.0);
        let r = composition_residual(&spec("z", "1"), &spec("z^-1", "1"), 4).unwrap();
        assert!(r.residual > 0.0);
        assert_eq!(r.witness, 0);
        assert!(r.discrepancy <= 1e-14);
    }

    #[test]
    fn composition_identity_generic() {
        let s = PairedSpec::new(
            parse_symbol("(1+i) z^-2 + 0.3 - z^3").unwrap(),
            parse_symbol("2 z^-1 - 0.5i z + z^2").unwrap(),
        );
        let t = spec("0.7 z^-3 + 1 + z", "-i + 0.2 z^-2 + 3 z^2");
        let r = composition_residual(&s, &t, 6).unwrap();
        assert!(r.residual > 1e-3);
        assert!(r.discrepancy <= 1e-12);
        let r = sigma_composition_residual(&s, &t, 6).unwrap();
        assert!(r.residual > 1e-3);
        assert!(r.discrepancy <= 1e-12);
    }

    #[test]
    fn commutator_examples() {
        let r = commutator_residual(&spec("1", "z"), &spec("2", "z^2"), 5).unwrap();
        assert!(r.commutator_norm > 0.0);
        assert!(r.identity_discrepancy <= 1e-13);
        let a = spec("1 + z", "3 - z^-1");
        let r = commutator_residual(&a, &a, 5).unwrap();
        assert_eq!(r.commutator_norm, 0.0);
    }
}
