//! GRS-family constructors (GRS, extended GRS, extended subcodes of GRS,
//! Roth-Lempel) and the subset-sum predicates that govern their MDS/NMDS
//! status.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::code::{CodeClass, CodeTag, LinearCode, SUBSET_GUARD};
use crate::comb::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;

/// An ordered evaluation set S of distinct field elements together with a
/// nonzero multiplier vector v. Ordering makes every generator matrix
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    field: Arc<Field>,
    points: Vec<Fe>,
    multipliers: Vec<Fe>,
}

impl EvalConfig {
    pub fn new(field: &Arc<Field>, points: Vec<Fe>, multipliers: Vec<Fe>) -> Result<EvalConfig> {
        validate_points(field, &points)?;
        if multipliers.len() != points.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                got: multipliers.len(),
            });
        }
        for &v in &multipliers {
            if !field.contains(v) {
                return Err(Error::FieldMismatch(format!(
                    "multiplier {v} outside {}",
                    field.token()
                )));
            }
            if v.is_zero() {
                return Err(Error::BadInput("multipliers must be nonzero".into()));
            }
        }
        Ok(EvalConfig {
            field: Arc::clone(field),
            points,
            multipliers,
        })
    }

    /// All-ones multiplier shorthand.
    pub fn with_unit_multipliers(field: &Arc<Field>, points: Vec<Fe>) -> Result<EvalConfig> {
        let ones = vec![field.one(); points.len()];
        EvalConfig::new(field, points, ones)
    }

    /// Convenience constructor from integer encodings with unit multipliers.
    pub fn from_ints(field: &Arc<Field>, points: &[u64]) -> Result<EvalConfig> {
        let pts = points
            .iter()
            .map(|&x| field.element(x))
            .collect::<Result<Vec<Fe>>>()?;
        EvalConfig::with_unit_multipliers(field, pts)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    pub fn multipliers(&self) -> &[Fe] {
        &self.multipliers
    }
}

fn validate_points(field: &Arc<Field>, points: &[Fe]) -> Result<()> {
    for &a in points {
        if !field.contains(a) {
            return Err(Error::FieldMismatch(format!(
                "evaluation point {a} outside {}",
                field.token()
            )));
        }
    }
    let mut seen = points.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadInput("evaluation points must be distinct".into()));
    }
    if points.len() as u64 > field.q() {
        return Err(Error::BadDimension(format!(
            "{} points cannot be distinct in a field of size {}",
            points.len(),
            field.q()
        )));
    }
    Ok(())
}

/// Generator matrix with rows (v_j a_j^i) for i = 0..k-1.
pub fn grs_matrix(cfg: &EvalConfig, k: usize) -> Result<Matrix> {
    let n = cfg.n();
    if k < 1 || k > n {
        return Err(Error::BadDimension(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let f = cfg.field();
    let rows: Vec<Vec<Fe>> = (0..k)
        .map(|i| {
            cfg.points()
                .iter()
                .zip(cfg.multipliers())
                .map(|(&a, &v)| f.mul(v, f.pow(a, i as u64)))
                .collect()
        })
        .collect();
    Matrix::from_rows(f, rows)
}

/// The [n, k, n-k+1] generalized Reed-Solomon code.
pub fn grs(cfg: &EvalConfig, k: usize) -> Result<LinearCode> {
    LinearCode::from_generator(grs_matrix(cfg, k)?)
}

/// Generator of the extended GRS code: one extra coordinate carrying the
/// x^{k-1} coefficient, i.e. a final column e_k.
pub fn egrs_matrix(cfg: &EvalConfig, k: usize) -> Result<Matrix> {
    let base = grs_matrix(cfg, k)?;
    let f = cfg.field();
    let mut ext = Matrix::zeros(f, k, 1);
    ext[(k - 1, 0)] = f.one();
    base.hstack(&ext)
}

/// The [n+1, k, n-k+2] extended GRS code.
pub fn egrs(cfg: &EvalConfig, k: usize) -> Result<LinearCode> {
    LinearCode::from_generator(egrs_matrix(cfg, k)?)
}

/// Generator of the extended subcode of GRS: rows for exponents
/// 0..k-2 and k, and a final column carrying the x^k coefficient.
pub fn esgrs_matrix(cfg: &EvalConfig, k: usize) -> Result<Matrix> {
    let n = cfg.n();
    let q = cfg.field().q() as usize;
    if !(3 <= k && k + 2 <= n && n <= q) {
        return Err(Error::BadDimension(format!(
            "need 3 <= k <= n-2 <= q-2, got k={k}, n={n}, q={q}"
        )));
    }
    let f = cfg.field();
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
    for i in (0..=k - 2).chain([k]) {
        let mut row: Vec<Fe> = cfg
            .points()
            .iter()
            .zip(cfg.multipliers())
            .map(|(&a, &v)| f.mul(v, f.pow(a, i as u64)))
            .collect();
        row.push(if i == k { f.one() } else { f.zero() });
        rows.push(row);
    }
    Matrix::from_rows(f, rows)
}

/// The [n+1, k] extended subcode of GRS; MDS or NMDS depending on whether S
/// is k-zero-sum free.
pub fn esgrs(cfg: &EvalConfig, k: usize) -> Result<LinearCode> {
    LinearCode::from_generator(esgrs_matrix(cfg, k)?)
}

/// Generator of the Roth-Lempel code: unit multipliers, rows for exponents
/// 0..k-1, and two extra columns (0,..,0,1)^T at the x^{k-1} row and
/// (0,..,0,1,delta)^T pairing x^{k-2} with delta times x^{k-1}.
pub fn roth_lempel_matrix(
    field: &Arc<Field>,
    points: &[Fe],
    k: usize,
    delta: Fe,
) -> Result<Matrix> {
    validate_points(field, points)?;
    if !field.contains(delta) {
        return Err(Error::FieldMismatch(format!(
            "delta {delta} outside {}",
            field.token()
        )));
    }
    let n = points.len();
    let q = field.q() as usize;
    if !(3 <= k && k <= n && n <= q) {
        return Err(Error::BadDimension(format!(
            "need 3 <= k <= n <= q, got k={k}, n={n}, q={q}"
        )));
    }
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row: Vec<Fe> = points.iter().map(|&a| field.pow(a, i as u64)).collect();
        row.push(if i == k - 1 { field.one() } else { field.zero() });
        row.push(if i == k - 2 {
            field.one()
        } else if i == k - 1 {
            delta
        } else {
            field.zero()
        });
        rows.push(row);
    }
    Matrix::from_rows(field, rows)
}

/// The [n+2, k] Roth-Lempel code.
pub fn roth_lempel(field: &Arc<Field>, points: &[Fe], k: usize, delta: Fe) -> Result<LinearCode> {
    LinearCode::from_generator(roth_lempel_matrix(field, points, k, delta)?)
}

/// True iff no k-subset of S sums to delta, by exhaustive subset enumeration.
pub fn is_nk_delta_set(field: &Arc<Field>, points: &[Fe], k: usize, delta: Fe) -> Result<bool> {
    validate_points(field, points)?;
    let n = points.len();
    if k < 1 || k > n {
        return Err(Error::BadDimension(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let count = binomial(n as u64, k as u64);
    if count > SUBSET_GUARD {
        return Err(Error::TooLarge(format!(
            "C({n}, {k}) = {count} subset sums exceed the guard"
        )));
    }
    let mut ok = true;
    for_each_combination(n, k, |idx| {
        let mut sum = Fe::ZERO;
        for &i in idx {
            sum = field.add(sum, points[i]);
        }
        if sum == delta {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(ok)
}

/// True iff S is k-zero-sum free, i.e. an (n, k, 0)-set.
pub fn is_zero_sum_free(field: &Arc<Field>, points: &[Fe], k: usize) -> Result<bool> {
    is_nk_delta_set(field, points, k, Fe::ZERO)
}

/// Analytic classification of the extended subcode of GRS: MDS exactly when
/// S is k-zero-sum free, NMDS otherwise. Lengths below refer to the [n+1, k]
/// code.
pub fn esgrs_classify(cfg: &EvalConfig, k: usize) -> Result<CodeClass> {
    let n = cfg.n();
    let q = cfg.field().q() as usize;
    if !(3 <= k && k + 2 <= n && n <= q) {
        return Err(Error::BadDimension(format!(
            "need 3 <= k <= n-2 <= q-2, got k={k}, n={n}, q={q}"
        )));
    }
    let free = is_zero_sum_free(cfg.field(), cfg.points(), k)?;
    let (n, k32) = (n as u32, k as u32);
    Ok(if free {
        CodeClass {
            tag: CodeTag::Mds,
            d: n - k32 + 2,
            d_dual: Some(k32 + 1),
        }
    } else {
        CodeClass {
            tag: CodeTag::Nmds,
            d: n - k32 + 1,
            d_dual: Some(k32),
        }
    })
}
