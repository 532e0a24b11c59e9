use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::{apply_s, apply_sigma, PairedSpec};
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, CMatrix};
use crate::symbols::{sup_norm, CoeffVector, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionKind {
    S,
    Sigma,
    Toeplitz,
    Hankel,
    HankelTilde,
    Mult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionSource {
    Pair(PairedSpec),
    Symbol(LaurentPoly),
}

/// `Pi_N Op Pi_N` in the exponent basis.
///
/// Index sets by kind: `S`, `Sigma`, `Mult` use `-N..=N` for rows and columns;
/// `Toeplitz` uses `0..=N`; `Hankel` maps columns `0..=N` to rows `-N..=-1`;
/// `HankelTilde` maps columns `-N..=-1` to rows `0..=N`. Entry `(j, k)` is
/// `<Op e_k, e_j>` for `j = row_exponents[i]`, `k = col_exponents[l]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSection {
    pub source: SectionSource,
    pub kind: SectionKind,
    pub band: usize,
    pub row_exponents: Vec<i64>,
    pub col_exponents: Vec<i64>,
    pub matrix: CMatrix,
}

pub fn finite_section(source: &SectionSource, kind: SectionKind, band: usize) -> Result<FiniteSection> {
    if band < 1 {
        return Err(Error::Precondition("finite section needs N >= 1".into()));
    }
    let n = band as i64;
    let full: Vec<i64> = (-n..=n).collect();
    let plus: Vec<i64> = (0..=n).collect();
    let minus: Vec<i64> = (-n..=-1).collect();

    let (rows, cols, op): (Vec<i64>, Vec<i64>, Box<dyn Fn(&CoeffVector) -> CoeffVector + '_>) =
        match (kind, source) {
            (SectionKind::S, SectionSource::Pair(s)) => (full.clone(), full, Box::new(move |v| apply_s(s, v))),
            (SectionKind::Sigma, SectionSource::Pair(s)) => {
                (full.clone(), full, Box::new(move |v| apply_sigma(s, v)))
            }
            (SectionKind::Mult, SectionSource::Symbol(a)) => (full.clone(), full, Box::new(move |v| a.mul(v))),
            (SectionKind::Toeplitz, SectionSource::Symbol(g)) => {
                (plus.clone(), plus, Box::new(move |v| g.mul(v).riesz_plus()))
            }
            (SectionKind::Hankel, SectionSource::Symbol(e)) => {
                (minus, plus, Box::new(move |v| e.mul(v).riesz_minus()))
            }
            (SectionKind::HankelTilde, SectionSource::Symbol(e)) => {
                (plus, minus, Box::new(move |v| e.mul(v).riesz_plus()))
            }
            (k, _) => {
                return Err(Error::Precondition(format!(
                    "section kind {k:?} does not match its source"
                )))
            }
        };
    let mut matrix = CMatrix::zeros(rows.len(), cols.len());
    for (l, &k) in cols.iter().enumerate() {
        let out = op(&LaurentPoly::basis(k));
        for (i, &j) in rows.iter().enumerate() {
            matrix[(i, l)] = out.coeff(j);
        }
    }
    Ok(FiniteSection {
        source: source.clone(),
        kind,
        band,
        row_exponents: rows,
        col_exponents: cols,
        matrix,
    })
}

/// Matrix of an operator on the columns `e_k`, `k in cols`, keeping the output
/// exponents `rows_lo..=rows_hi` (callers choose a window containing every
/// output band, so nothing is lost).
pub fn exact_matrix(
    cols: impl Iterator<Item = i64>,
    rows_lo: i64,
    rows_hi: i64,
    op: impl Fn(&CoeffVector) -> CoeffVector,
) -> CMatrix {
    let outs: Vec<CoeffVector> = cols.map(|k| op(&LaurentPoly::basis(k))).collect();
    debug_assert!(outs
        .iter()
        .filter_map(|o| o.band())
        .all(|(lo, hi)| lo >= rows_lo && hi <= rows_hi));
    crate::linalg::columns_to_matrix(&outs, rows_lo, rows_hi)
}

/// `S_{a,b}` on band `[-N, N]` with untruncated output: a `(2(N+d)+1) x (2N+1)`
/// matrix, `d` the symbol radius. Rows are exponents `-(N+d)..=N+d`.
pub fn exact_action_matrix(spec: &PairedSpec, band: usize) -> CMatrix {
    let n = band as i64;
    let d = spec.radius();
    exact_matrix(-n..=n, -(n + d), n + d, |v| apply_s(spec, v))
}

/// Largest singular value of the `S` section; nondecreasing in `N`, tends to
/// `||S_{a,b}||` from below.
pub fn op_norm(spec: &PairedSpec, band: usize) -> Result<f64> {
    let sec = finite_section(&SectionSource::Pair(spec.clone()), SectionKind::S, band)?;
    Ok(spectral_norm(&sec.matrix))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormBounds {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "sqrt2M")]
    pub sqrt2_m: f64,
    #[serde(rename = "sumAB")]
    pub sum_ab: f64,
}

impl NormBounds {
    pub fn upper(&self) -> f64 {
        self.sqrt2_m.min(self.sum_ab)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub spec: PairedSpec,
    #[serde(rename = "N")]
    pub n: usize,
    pub sigma_max: f64,
    pub bounds: NormBounds,
}

pub fn norm_bounds(spec: &PairedSpec, grid_points: usize) -> NormBounds {
    let a = sup_norm(&spec.a, grid_points);
    let b = sup_norm(&spec.b, grid_points);
    let m = a.max(b);
    NormBounds {
        m,
        sqrt2_m: SQRT_2 * m,
        sum_ab: a + b,
    }
}

pub fn norm_report(spec: &PairedSpec, band: usize, grid_points: usize) -> Result<NormReport> {
    Ok(NormReport {
        spec: spec.clone(),
        n: band,
        sigma_max: op_norm(spec, band)?,
        bounds: norm_bounds(spec, grid_points),
    })
}

/// The `S` section split along `H^2 ⊕ conj(H^2_0)`, compared entrywise with
/// blocks built directly from the coefficients (`<a e_k, e_j> = a_{j-k}`).
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    /// rows `0..=N`, cols `0..=N`: Toeplitz section of `a`.
    pub top_left: CMatrix,
    /// rows `0..=N`, cols `-N..=-1`: `H~_b`.
    pub top_right: CMatrix,
    /// rows `-N..=-1`, cols `0..=N`: `H_a`.
    pub bottom_left: CMatrix,
    /// rows `-N..=-1`, cols `-N..=-1`: `P- b P-`.
    pub bottom_right: CMatrix,
    pub residual: f64,
}

pub fn block_decompose(spec: &PairedSpec, band: usize) -> Result<BlockDecomposition> {
    let sec = finite_section(&SectionSource::Pair(spec.clone()), SectionKind::S, band)?;
    let n = band;
    let m = &sec.matrix;
    // storage is ascending -N..=N, so exponent 0 sits at position n
    let top_left = m.view((n, n), (n + 1, n + 1)).into_owned();
    let top_right = m.view((n, 0), (n + 1, n)).into_owned();
    let bottom_left = m.view((0, n), (n, n + 1)).into_owned();
    let bottom_right = m.view((0, 0), (n, n)).into_owned();

    let direct = |sym: &LaurentPoly, rows: &[i64], cols: &[i64]| {
        CMatrix::from_fn(rows.len(), cols.len(), |i, l| sym.coeff(rows[i] - cols[l]))
    };
    let ni = band as i64;
    let plus: Vec<i64> = (0..=ni).collect();
    let minus: Vec<i64> = (-ni..=-1).collect();
    let pairs = [
        (&top_left, direct(&spec.a, &plus, &plus)),
        (&bottom_left, direct(&spec.a, &minus, &plus)),
        (&top_right, direct(&spec.b, &plus, &minus)),
        (&bottom_right, direct(&spec.b, &minus, &minus)),
    ];
    let residual = pairs
        .iter()
        .map(|(got, want)| (*got - want).iter().map(|c| c.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    Ok(BlockDecomposition {
        top_left,
        top_right,
        bottom_left,
        bottom_right,
        residual,
    })
}

/// `{"n": rows, "m": cols, "entries": [[i, j, re, im], ...]}`, zeros omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(mat: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..mat.nrows() {
            for j in 0..mat.ncols() {
                let c = mat[(i, j)];
                if c.re != 0.0 || c.im != 0.0 {
                    entries.push((i, j, c.re, c.im));
                }
            }
        }
        MatrixJson {
            n: mat.nrows(),
            m: mat.ncols(),
            entries,
        }
    }
}

impl From<&MatrixJson> for CMatrix {
    fn from(j: &MatrixJson) -> Self {
        let mut m = CMatrix::zeros(j.n, j.m);
        for &(r, c, re, im) in &j.entries {
            m[(r, c)] = num_complex::Complex64::new(re, im);
        }
        m
    }
}
