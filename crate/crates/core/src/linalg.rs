//! Dense complex linear algebra on coefficient vectors: orthonormalization,
//! thresholded null spaces and principal angles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbols::{CoeffVector, LaurentPoly};

pub type CMatrix = DMatrix<Complex64>;

/// Stacks vectors as columns over the exponent window `lo..=hi`.
pub fn columns_to_matrix(cols: &[CoeffVector], lo: i64, hi: i64) -> CMatrix {
    let rows = (hi - lo + 1).max(0) as usize;
    let mut m = CMatrix::zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (k, c) in v.terms() {
            if k >= lo && k <= hi {
                m[((k - lo) as usize, j)] = c;
            }
        }
    }
    m
}

pub fn column_to_vector(col: impl Iterator<Item = Complex64>, lo: i64) -> CoeffVector {
    LaurentPoly::from_dense(lo, col.collect())
}

/// Modified Gram-Schmidt with reorthogonalization; dependent vectors are dropped.
pub fn orthonormalize(vectors: &[CoeffVector], lo: i64, hi: i64) -> Vec<CoeffVector> {
    let m = columns_to_matrix(vectors, lo, hi);
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).into_owned();
        let start = v.norm();
        for _ in 0..2 {
            for q in &out {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
        }
        let n = v.norm();
        if n > 1e-12 * start.max(f64::MIN_POSITIVE) && n > 0.0 {
            out.push(v / Complex64::new(n, 0.0));
        }
    }
    out.into_iter()
        .map(|v| column_to_vector(v.iter().copied(), lo))
        .collect()
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Null space by singular-value thresholding.
#[derive(Clone, Debug)]
pub struct NullSpace {
    /// Orthonormal null vectors (columns of `V`).
    pub vectors: Vec<DVector<Complex64>>,
    /// All singular values, ascending. Only `min(rows, cols)` of them exist;
    /// the rest of the right singular space (if any) is null with value 0.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

/// Singular values below `rel_threshold * sigma_max` are null. A singular
/// value within a factor `gap` of the threshold, on either side, makes the
/// split ambiguous.
pub fn null_space(m: &CMatrix, rel_threshold: f64, gap: f64) -> Result<NullSpace> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(NullSpace {
            vectors: Vec::new(),
            singular_values: Vec::new(),
            threshold: 0.0,
        });
    }
    // pad wide matrices so V is square
    let work = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("V requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = sv.last().copied().unwrap_or(0.0);
    let threshold = rel_threshold * sigma_max;

    let null_count = sv.iter().take_while(|&&s| s < threshold).count();
    if sv.iter().any(|&s| s >= threshold / gap && s < threshold * gap) {
        return Err(Error::Ambiguous {
            threshold,
            gap,
            singular_values: sv,
        });
    }
    let vectors = order[..null_count]
        .iter()
        .map(|&i| v_t.row(i).transpose().map(|c| c.conj()))
        .collect();
    Ok(NullSpace {
        vectors,
        singular_values: sv,
        threshold,
    })
}

/// Largest principal angle between the spans of two vector families.
/// `pi/2` when the dimensions differ; `0` when both are empty.
pub fn largest_principal_angle(a: &[CoeffVector], b: &[CoeffVector]) -> f64 {
    let all = a.iter().chain(b).filter_map(|v| v.band());
    let (lo, hi) = all.fold((0, 0), |(l, h), (x, y)| (l.min(x), h.max(y)));
    let qa = orthonormalize(a, lo, hi);
    let qb = orthonormalize(b, lo, hi);
    if qa.len() != qb.len() {
        return std::f64::consts::FRAC_PI_2;
    }
    if qa.is_empty() {
        return 0.0;
    }
    let ma = columns_to_matrix(&qa, lo, hi);
    let mb = columns_to_matrix(&qb, lo, hi);
    // sin of the largest angle = || (I - Qa Qa^*) Qb ||
    let resid = &mb - &ma * (ma.adjoint() * &mb);
    spectral_norm(&resid).min(1.0).asin()
}
