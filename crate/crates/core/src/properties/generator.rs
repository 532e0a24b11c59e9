use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::PairedSpec;
use crate::symbols::{blaschke, circle_distance, LaurentPoly, RationalSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// band `[lo, lo + d]` with `lo` uniform in `[-d, 0]`
    General,
    /// band `[0, d]`
    Analytic,
    /// band `[-d, 0]`
    Coanalytic,
    /// band `[-d, -1]`
    CoanalyticVanishing,
    /// finite Blaschke product with `d` zeros in `|z| <= 0.8`
    Blaschke,
    /// general, resampled until every root is `1e-3` away from the circle
    InvertibleOnT,
}

/// Inclusive degree interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRange {
    pub min: u32,
    pub max: u32,
}

impl DegreeRange {
    pub const fn new(min: u32, max: u32) -> Self {
        DegreeRange { min, max }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub degree_range: DegreeRange,
    pub coefficient_scale: f64,
    pub family: Family,
    pub trials: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            degree_range: DegreeRange::new(0, 4),
            coefficient_scale: 1.0,
            family: Family::General,
            trials: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratedSymbol {
    Laurent(LaurentPoly),
    Blaschke(RationalSymbol),
}

/// Zeros of sampled Blaschke products lie in `|z| <= BLASCHKE_RADIUS`.
pub const BLASCHKE_RADIUS: f64 = 0.8;
/// `invertible_on_T` keeps roots at least this far from the circle.
pub const INVERTIBLE_MARGIN: f64 = 1e-3;
const MAX_RESAMPLES: usize = 1000;

/// Per-trial substream: `seed XOR trial`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial as u64)
}

/// The symbol of `cfg.family` for trial `trial`.
pub fn gen_symbol(cfg: &GeneratorConfig, trial: usize) -> Result<GeneratedSymbol> {
    let mut s = Sampler::new(trial_rng(cfg.seed, trial), cfg.coefficient_scale);
    if cfg.family == Family::Blaschke {
        let n = s.degree(cfg.degree_range) as usize;
        return Ok(GeneratedSymbol::Blaschke(s.blaschke(n)?));
    }
    Ok(GeneratedSymbol::Laurent(s.symbol(cfg.family, cfg.degree_range)?))
}

/// Random draws for one trial. Counts resampled (rejected) draws.
pub struct Sampler {
    rng: ChaCha8Rng,
    scale: f64,
    pub resamples: usize,
}

impl Sampler {
    pub fn new(rng: ChaCha8Rng, scale: f64) -> Self {
        Sampler {
            rng,
            scale,
            resamples: 0,
        }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    /// Complex standard Gaussian (unit variance) times the coefficient scale.
    pub fn gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * (self.scale * std::f64::consts::FRAC_1_SQRT_2)
    }

    /// Gaussian coefficients on every exponent of `lo..=hi`.
    pub fn poly(&mut self, lo: i64, hi: i64) -> LaurentPoly {
        let coeffs = (lo..=hi).map(|_| self.gaussian()).collect();
        LaurentPoly::from_dense(lo, coeffs)
    }

    pub fn degree(&mut self, range: DegreeRange) -> i64 {
        self.int(range.min as i64, range.max.max(range.min) as i64)
    }

    /// Uniform point in the disk `|z| <= r`.
    pub fn disk_point(&mut self, r: f64) -> Complex64 {
        let rho = r * self.uniform().sqrt();
        Complex64::from_polar(rho, std::f64::consts::TAU * self.uniform())
    }

    pub fn unimodular(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.uniform())
    }

    pub fn blaschke(&mut self, zeros: usize) -> Result<RationalSymbol> {
        let zs: Vec<Complex64> = (0..zeros).map(|_| self.disk_point(BLASCHKE_RADIUS)).collect();
        let c = self.unimodular();
        blaschke(&zs, c)
    }

    pub fn symbol(&mut self, family: Family, range: DegreeRange) -> Result<LaurentPoly> {
        let d = self.degree(range);
        Ok(match family {
            Family::General => {
                let lo = self.int(-d, 0);
                self.poly(lo, lo + d)
            }
            Family::Analytic => self.poly(0, d),
            Family::Coanalytic => self.poly(-d, 0),
            Family::CoanalyticVanishing => self.poly(-d.max(1), -1),
            Family::InvertibleOnT => {
                let lo = self.int(-d, 0);
                let mut p = self.poly(lo, lo + d);
                let mut tries = 0;
                while circle_distance(&p)? <= INVERTIBLE_MARGIN {
                    tries += 1;
                    self.resamples += 1;
                    if tries > MAX_RESAMPLES {
                        return Err(Error::Precondition("resample budget exhausted".into()));
                    }
                    p = self.poly(lo, lo + d);
                }
                p
            }
            Family::Blaschke => {
                return Err(Error::Precondition(
                    "Blaschke products are rational; use Sampler::blaschke".into(),
                ))
            }
        })
    }

    /// A pair from the given families, resampled until nondegenerate.
    pub fn pair(&mut self, fa: Family, fb: Family, range: DegreeRange) -> Result<PairedSpec> {
        for _ in 0..MAX_RESAMPLES {
            let spec = PairedSpec::new(self.symbol(fa, range)?, self.symbol(fb, range)?);
            if spec.nondegenerate {
                return Ok(spec);
            }
            self.resamples += 1;
        }
        Err(Error::Precondition("resample budget exhausted".into()))
    }

    /// A nonzero symbol that is not constant.
    pub fn nonconstant(&mut self, family: Family, range: DegreeRange) -> Result<LaurentPoly> {
        for _ in 0..MAX_RESAMPLES {
            let p = self.symbol(family, range)?;
            if p.band().is_some_and(|(lo, hi)| lo != 0 || hi != 0) {
                return Ok(p);
            }
            self.resamples += 1;
        }
        Err(Error::Precondition("resample budget exhausted".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{classify, AnalyticityClass};

    fn cfg(family: Family) -> GeneratorConfig {
        GeneratorConfig {
            seed: 7,
            degree_range: DegreeRange::new(1, 5),
            family,
            ..GeneratorConfig::default()
        }
    }

    #[test]
    fn families_respect_bands() {
        for t in 0..50 {
            let GeneratedSymbol::Laurent(p) = gen_symbol(&cfg(Family::Analytic), t).unwrap() else {
                panic!()
            };
            assert!(classify(&p).is_analytic());
            let GeneratedSymbol::Laurent(p) =
                gen_symbol(&cfg(Family::CoanalyticVanishing), t).unwrap()
            else {
                panic!()
            };
            assert_eq!(classify(&p), AnalyticityClass::CoanalyticVanishing);
            let GeneratedSymbol::Laurent(p) = gen_symbol(&cfg(Family::General), t).unwrap() else {
                panic!()
            };
            assert!(p.radius() <= 5);
        }
    }

    #[test]
    fn deterministic() {
        for f in [Family::General, Family::Blaschke, Family::InvertibleOnT] {
            assert_eq!(gen_symbol(&cfg(f), 3).unwrap(), gen_symbol(&cfg(f), 3).unwrap());
        }
        assert_ne!(
            gen_symbol(&cfg(Family::General), 3).unwrap(),
            gen_symbol(&cfg(Family::General), 4).unwrap()
        );
    }

    #[test]
    fn invertible_family_root_distance() {
        for t in 0..30 {
            let GeneratedSymbol::Laurent(p) = gen_symbol(&cfg(Family::InvertibleOnT), t).unwrap()
            else {
                panic!()
            };
            assert!(circle_distance(&p).unwrap() > INVERTIBLE_MARGIN);
            let min = crate::symbols::grid::eval_on_grid(&p, 4096)
                .iter()
                .map(|v| v.norm())
                .fold(f64::INFINITY, f64::min);
            assert!(min > 0.0);
        }
    }

    #[test]
    fn blaschke_family_is_inner() {
        for t in 0..10 {
            let GeneratedSymbol::Blaschke(b) = gen_symbol(&cfg(Family::Blaschke), t).unwrap() else {
                panic!()
            };
            assert!(b.unimodular_deviation(1024) < 1e-12);
        }
    }
}
