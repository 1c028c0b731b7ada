//! Linear-code core: canonical generator matrices, duality, minimum distance,
//! weight distributions, puncturing/shortening, MDS/NMDS classification, and
//! Schur squares.
//!
//! A code is identified with the RREF of its generator matrix, so code
//! equality is matrix equality.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::comb::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::{star_product, Matrix};

/// Feasibility guard for q^k message enumeration.
pub const ENUM_GUARD: u128 = 100_000_000;
/// Feasibility guard for subset enumeration.
pub const SUBSET_GUARD: u128 = 10_000_000;

/// MDS/NMDS/other classification of one code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeTag {
    Mds,
    Nmds,
    Other,
}

impl fmt::Display for CodeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeTag::Mds => write!(f, "MDS"),
            CodeTag::Nmds => write!(f, "NMDS"),
            CodeTag::Other => write!(f, "OTHER"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeClass {
    pub tag: CodeTag,
    pub d: u32,
    /// Minimum distance of the dual; `None` for the full space, whose dual is
    /// trivial.
    pub d_dual: Option<u32>,
}

/// Cheap monomial invariants used as a first rejection stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BasicInvariants {
    pub weight_distribution: Vec<u64>,
    pub square_dim: usize,
    pub dual_square_dim: usize,
}

/// Schur-square distances, only computed when the cheap stage ties.
/// `None` marks an enumeration beyond the guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SquareDistances {
    pub square: Option<u32>,
    pub dual_square: Option<u32>,
}

/// An [n, k] linear code held as a canonical (RREF) generator matrix.
/// The dimension k may be zero only for degenerate values produced by
/// `dual` and `shorten`.
#[derive(Clone)]
pub struct LinearCode {
    gen: Matrix,
    dist_cache: OnceLock<u32>,
    wdist_cache: OnceLock<Vec<u64>>,
    class_cache: OnceLock<CodeClass>,
    basic_cache: OnceLock<BasicInvariants>,
    sqdist_cache: OnceLock<SquareDistances>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} code\n{:?}", self.n(), self.k(), self.field().q(), self.gen)
    }
}

impl LinearCode {
    /// Canonicalize a spanning matrix into a code. The matrix must have at
    /// least one nonzero entry.
    pub fn from_generator(m: Matrix) -> Result<LinearCode> {
        if m.is_zero() || m.rows() == 0 {
            return Err(Error::ZeroMatrix);
        }
        let (rref, pivots) = m.rref();
        let k = pivots.len();
        let rows: Vec<Vec<Fe>> = (0..k).map(|r| rref.row(r).to_vec()).collect();
        let gen = Matrix::from_rows(m.field(), rows)?;
        Ok(LinearCode::from_canonical(gen))
    }

    fn from_canonical(gen: Matrix) -> LinearCode {
        LinearCode {
            gen,
            dist_cache: OnceLock::new(),
            wdist_cache: OnceLock::new(),
            class_cache: OnceLock::new(),
            basic_cache: OnceLock::new(),
            sqdist_cache: OnceLock::new(),
        }
    }

    /// The zero code of length n: no codewords besides 0.
    pub(crate) fn zero_code(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode::from_canonical(Matrix::zeros(field, 0, n))
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<Fe>> {
        if msg.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: msg.len(),
            });
        }
        let f = self.field();
        let mut word = vec![Fe::ZERO; self.n()];
        for (i, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(self.gen.row(i)) {
                *w = f.add(*w, f.mul(m, g));
            }
        }
        Ok(word)
    }

    /// Pivot column of each generator row; the generator is RREF, so this is
    /// the first nonzero entry.
    pub(crate) fn pivots(&self) -> Vec<usize> {
        (0..self.k())
            .map(|r| {
                self.gen
                    .row(r)
                    .iter()
                    .position(|e| !e.is_zero())
                    .expect("canonical generators have no zero rows")
            })
            .collect()
    }

    /// Membership by reduction against the RREF pivots.
    pub fn contains_word(&self, word: &[Fe]) -> Result<bool> {
        if word.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        let f = self.field();
        let mut w = word.to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            if !w[pc].is_zero() {
                let factor = w[pc];
                for (wj, &gj) in w.iter_mut().zip(self.gen.row(r)) {
                    *wj = f.sub(*wj, f.mul(factor, gj));
                }
            }
        }
        Ok(w.iter().all(|e| e.is_zero()))
    }

    /// The [n, n-k] dual code.
    pub fn dual(&self) -> LinearCode {
        let kern = self.gen.kernel_basis();
        if kern.rows() == 0 {
            return LinearCode::zero_code(self.field(), self.n());
        }
        LinearCode::from_generator(kern).expect("kernel basis rows are nonzero")
    }

    fn guard_enumeration(&self) -> Result<()> {
        let total = (self.field().q() as u128).checked_pow(self.k() as u32);
        match total {
            Some(t) if t <= ENUM_GUARD => Ok(()),
            _ => Err(Error::TooLarge(format!(
                "message enumeration q^k = {}^{} exceeds the guard",
                self.field().q(),
                self.k()
            ))),
        }
    }

    /// Visit every codeword (including zero) exactly once.
    fn scan_codewords<F>(&self, mut visit: F)
    where
        F: FnMut(&[Fe]),
    {
        let k = self.k();
        let n = self.n();
        let f = self.field().clone();
        let mut scratch = vec![vec![Fe::ZERO; n]; k + 1];
        // depth-first over message digits; scratch[level+1] holds the partial
        // combination of the first level+1 rows
        fn rec<F: FnMut(&[Fe])>(
            code: &LinearCode,
            f: &Field,
            level: usize,
            scratch: &mut Vec<Vec<Fe>>,
            visit: &mut F,
        ) {
            let k = code.k();
            if level == k {
                visit(&scratch[k]);
                return;
            }
            let row: Vec<Fe> = code.gen.row(level).to_vec();
            for c in f.elements() {
                let (prev, next) = scratch.split_at_mut(level + 1);
                let prev = &prev[level];
                let dst = &mut next[0];
                if c.is_zero() {
                    dst.copy_from_slice(prev);
                } else {
                    for (d, (&p, &g)) in dst.iter_mut().zip(prev.iter().zip(&row)) {
                        *d = f.add(p, f.mul(c, g));
                    }
                }
                rec(code, f, level + 1, scratch, visit);
            }
        }
        if k == 0 {
            visit(&scratch[0]);
            return;
        }
        rec(self, &f, 0, &mut scratch, &mut visit);
    }

    /// Exact minimum distance by message-space enumeration.
    pub fn min_distance(&self) -> Result<u32> {
        if let Some(&d) = self.dist_cache.get() {
            return Ok(d);
        }
        if self.k() == 0 {
            return Err(Error::BadDimension(
                "the zero code has no nonzero codewords".into(),
            ));
        }
        let d = if self.k() == self.n() {
            1
        } else {
            self.guard_enumeration()?;
            let mut best = self.n() as u32 + 1;
            self.scan_codewords(|word| {
                let w = word.iter().filter(|e| !e.is_zero()).count() as u32;
                if w != 0 && w < best {
                    best = w;
                }
            });
            best
        };
        let _ = self.dist_cache.set(d);
        Ok(d)
    }

    /// Weight distribution (counts by Hamming weight 0..=n); sums to q^k.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        if let Some(w) = self.wdist_cache.get() {
            return Ok(w.clone());
        }
        if self.k() == 0 {
            return Err(Error::BadDimension("zero code".into()));
        }
        self.guard_enumeration()?;
        let mut counts = vec![0u64; self.n() + 1];
        self.scan_codewords(|word| {
            let w = word.iter().filter(|e| !e.is_zero()).count();
            counts[w] += 1;
        });
        let _ = self.wdist_cache.set(counts.clone());
        Ok(counts)
    }

    /// Classification per the defining distance conditions: MDS means
    /// d = n-k+1; NMDS means d = n-k together with dual distance k.
    pub fn classify(&self) -> Result<CodeClass> {
        if let Some(&c) = self.class_cache.get() {
            return Ok(c);
        }
        let n = self.n() as u32;
        let k = self.k() as u32;
        let d = self.min_distance()?;
        let d_dual = if self.k() == self.n() {
            None
        } else {
            Some(self.dual().min_distance()?)
        };
        let tag = if d == n - k + 1 {
            CodeTag::Mds
        } else if d == n - k && d_dual == Some(k) {
            CodeTag::Nmds
        } else {
            CodeTag::Other
        };
        let class = CodeClass { tag, d, d_dual };
        let _ = self.class_cache.set(class);
        Ok(class)
    }

    fn guard_subsets(&self, size: usize) -> Result<()> {
        let c = binomial(self.n() as u64, size as u64);
        if c > SUBSET_GUARD {
            return Err(Error::TooLarge(format!(
                "C({}, {size}) = {c} column subsets exceed the guard",
                self.n()
            )));
        }
        Ok(())
    }

    /// MDS by the column criterion: every k columns of the generator are
    /// linearly independent.
    pub fn is_mds_by_columns(&self) -> Result<bool> {
        let k = self.k();
        self.guard_subsets(k)?;
        let mut ok = true;
        for_each_combination(self.n(), k, |idx| {
            if !self.gen.cols_independent(idx).expect("indices valid") {
                ok = false;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(ok)
    }

    /// NMDS by the column criterion: every k-1 columns independent, some k
    /// columns dependent, and every k+1 columns of full rank k.
    pub fn is_nmds_by_columns(&self) -> Result<bool> {
        let n = self.n();
        let k = self.k();
        self.guard_subsets(k)?;
        if k + 1 <= n {
            self.guard_subsets(k + 1)?;
        }

        let mut cond1 = true;
        if k >= 1 {
            for_each_combination(n, k - 1, |idx| {
                if !self.gen.cols_independent(idx).expect("indices valid") {
                    cond1 = false;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
        if !cond1 {
            return Ok(false);
        }

        let mut cond2 = false;
        for_each_combination(n, k, |idx| {
            if !self.gen.cols_independent(idx).expect("indices valid") {
                cond2 = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if !cond2 {
            return Ok(false);
        }

        let mut cond3 = true;
        if k + 1 <= n {
            for_each_combination(n, k + 1, |idx| {
                let sub = self.gen.select_cols(idx).expect("indices valid");
                if sub.rank() != k {
                    cond3 = false;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
        Ok(cond3)
    }

    /// Delete coordinate i from every codeword.
    pub fn puncture(&self, i: usize) -> Result<LinearCode> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i, len: self.n() });
        }
        if self.n() < 2 {
            return Err(Error::BadDimension("cannot puncture a length-1 code".into()));
        }
        let deleted = self.gen.delete_col(i)?;
        if deleted.is_zero() {
            return Ok(LinearCode::zero_code(self.field(), self.n() - 1));
        }
        LinearCode::from_generator(deleted)
    }

    /// Keep the codewords vanishing at coordinate i, then delete it.
    pub fn shorten(&self, i: usize) -> Result<LinearCode> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i, len: self.n() });
        }
        if self.n() < 2 {
            return Err(Error::BadDimension("cannot shorten a length-1 code".into()));
        }
        let f = self.field().clone();
        let mut m = self.gen.clone();
        let pivot_row = (0..m.rows()).find(|&r| !m[(r, i)].is_zero());
        if let Some(pr) = pivot_row {
            let inv = f.inv(m[(pr, i)]).expect("nonzero");
            for r in 0..m.rows() {
                if r != pr && !m[(r, i)].is_zero() {
                    let factor = f.mul(m[(r, i)], inv);
                    for c in 0..m.cols() {
                        let sub = f.mul(factor, m[(pr, c)]);
                        let cur = m[(r, c)];
                        m[(r, c)] = f.sub(cur, sub);
                    }
                }
            }
            let rows: Vec<Vec<Fe>> = (0..m.rows())
                .filter(|&r| r != pr)
                .map(|r| {
                    m.row(r)
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| c != i)
                        .map(|(_, &e)| e)
                        .collect()
                })
                .collect();
            if rows.is_empty() || rows.iter().all(|r| r.iter().all(|e| e.is_zero())) {
                return Ok(LinearCode::zero_code(&f, self.n() - 1));
            }
            LinearCode::from_generator(Matrix::from_rows(&f, rows)?)
        } else {
            // no codeword uses coordinate i; dimension is preserved
            self.puncture(i)
        }
    }

    /// Span of all pairwise star products of generator rows.
    pub fn schur_square(&self) -> Result<LinearCode> {
        let f = self.field();
        if self.k() == 0 {
            return Ok(self.clone());
        }
        let mut rows = Vec::new();
        for i in 0..self.k() {
            for j in i..self.k() {
                rows.push(star_product(f, self.gen.row(i), self.gen.row(j))?);
            }
        }
        LinearCode::from_generator(Matrix::from_rows(f, rows)?)
    }

    pub(crate) fn basic_invariants(&self) -> Result<&BasicInvariants> {
        if let Some(inv) = self.basic_cache.get() {
            return Ok(inv);
        }
        let wd = self.weight_distribution()?;
        let square_dim = self.schur_square()?.k();
        let dual = self.dual();
        let dual_square_dim = if dual.k() == 0 { 0 } else { dual.schur_square()?.k() };
        let inv = BasicInvariants {
            weight_distribution: wd,
            square_dim,
            dual_square_dim,
        };
        let _ = self.basic_cache.set(inv);
        Ok(self.basic_cache.get().expect("just set"))
    }

    pub(crate) fn square_distances(&self) -> Result<SquareDistances> {
        if let Some(&d) = self.sqdist_cache.get() {
            return Ok(d);
        }
        let square = self.schur_square()?;
        let dual = self.dual();
        let sq = square.min_distance().ok();
        let dsq = if dual.k() == 0 {
            None
        } else {
            dual.schur_square()?.min_distance().ok()
        };
        let d = SquareDistances {
            square: sq,
            dual_square: dsq,
        };
        let _ = self.sqdist_cache.set(d);
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn extended_hamming() -> LinearCode {
        let f = Field::prime(2).unwrap();
        let g = Matrix::from_int_rows(
            &f,
            &[
                &[1, 0, 0, 0, 0, 1, 1, 1],
                &[0, 1, 0, 0, 1, 0, 1, 1],
                &[0, 0, 1, 0, 1, 1, 0, 1],
                &[0, 0, 0, 1, 1, 1, 1, 0],
            ],
        )
        .unwrap();
        LinearCode::from_generator(g).unwrap()
    }

    fn random_code(rng: &mut ChaCha8Rng, field: &Arc<Field>, n: usize, k: usize) -> LinearCode {
        loop {
            let data: Vec<Fe> = (0..n * k).map(|_| field.el(rng.gen())).collect();
            let m = Matrix::new(field, k, n, data).unwrap();
            if m.is_zero() {
                continue;
            }
            let c = LinearCode::from_generator(m).unwrap();
            if c.k() == k {
                return c;
            }
        }
    }

    #[test]
    fn from_generator_reduces_and_validates() {
        let f = Field::prime(2).unwrap();
        let c = extended_hamming();
        assert_eq!((c.n(), c.k()), (8, 4));
        let ident = LinearCode::from_generator(Matrix::identity(&f, 3)).unwrap();
        assert_eq!((ident.n(), ident.k()), (3, 3));
        // duplicated row drops the dimension
        let dup = Matrix::from_int_rows(&f, &[&[1, 0, 1], &[1, 0, 1]]).unwrap();
        assert_eq!(LinearCode::from_generator(dup).unwrap().k(), 1);
        assert!(matches!(
            LinearCode::from_generator(Matrix::zeros(&f, 2, 3)),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn extended_hamming_is_nmds_and_self_dual() {
        let c = extended_hamming();
        let class = c.classify().unwrap();
        assert_eq!(class.tag, CodeTag::Nmds);
        assert_eq!(class.d, 4);
        assert_eq!(class.d_dual, Some(4));
        // RREF comparison shows self-duality
        assert_eq!(c.dual(), c);
        assert!(c.is_nmds_by_columns().unwrap());
        // some 4 columns are dependent, so the MDS column criterion fails
        assert!(!c.is_mds_by_columns().unwrap());
    }

    #[test]
    fn dual_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = Field::prime(7).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(2..7);
            let k = rng.gen_range(1..=n);
            let c = random_code(&mut rng, &f, n, k);
            let dd = c.dual().dual();
            assert_eq!(dd, c);
            // duality pairing
            for r in 0..c.k() {
                for s in 0..c.dual().k() {
                    let ip = crate::matrix::inner_product(&f, c.generator().row(r), c.dual().generator().row(s)).unwrap();
                    assert!(ip.is_zero());
                }
            }
        }
    }

    #[test]
    fn min_distance_examples() {
        let f = Field::prime(11).unwrap();
        // repetition code
        let rep = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 1, 1, 1, 1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(rep.min_distance().unwrap(), 5);
        assert_eq!(rep.classify().unwrap().tag, CodeTag::Mds);
        // full space
        let full = LinearCode::from_generator(Matrix::identity(&f, 4)).unwrap();
        assert_eq!(full.min_distance().unwrap(), 1);
        assert_eq!(full.classify().unwrap().tag, CodeTag::Mds);
        assert_eq!(full.classify().unwrap().d_dual, None);
    }

    #[test]
    fn weight_distribution_sums_to_qk() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = Field::prime(5).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(2..7);
            let k = rng.gen_range(1..=n);
            let c = random_code(&mut rng, &f, n, k);
            let wd = c.weight_distribution().unwrap();
            assert_eq!(wd[0], 1);
            let total: u64 = wd.iter().sum();
            assert_eq!(total as u128, (5u128).pow(c.k() as u32));
            // Singleton bound
            let d = c.min_distance().unwrap();
            assert!(d as usize <= c.n() - c.k() + 1);
        }
    }

    #[test]
    fn classification_guard() {
        let f = Field::prime(13).unwrap();
        let c = LinearCode::from_generator(Matrix::identity(&f, 12)).unwrap();
        // identity is fine (shortcut), but its dual is trivial: d_dual is None
        assert_eq!(c.classify().unwrap().d_dual, None);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let big = random_code(&mut rng, &f, 12, 9);
        assert!(matches!(big.min_distance(), Err(Error::TooLarge(_))));
    }

    #[test]
    fn column_criteria_agree_with_classification() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for q in [2u64, 3, 5, 7] {
            let f = Field::prime(q).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(2..7);
                let k = rng.gen_range(1..=n);
                let c = random_code(&mut rng, &f, n, k);
                let class = c.classify().unwrap();
                assert_eq!(
                    c.is_mds_by_columns().unwrap(),
                    class.tag == CodeTag::Mds,
                    "MDS column criterion disagrees on {c:?}"
                );
                assert_eq!(
                    c.is_nmds_by_columns().unwrap(),
                    class.tag == CodeTag::Nmds,
                    "NMDS column criterion disagrees on {c:?}"
                );
            }
        }
    }

    #[test]
    fn column_examples() {
        let f = Field::prime(2).unwrap();
        let c = extended_hamming();
        // the identity block columns are independent
        assert!(c.generator().cols_independent(&[0, 1, 2, 3]).unwrap());
        // a zero coordinate breaks the MDS column criterion
        let withzero = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 0, 1], &[0, 0, 1]]).unwrap(),
        )
        .unwrap();
        assert!(!withzero.is_mds_by_columns().unwrap());
    }

    #[test]
    fn puncture_and_shorten() {
        let f = Field::prime(11).unwrap();
        let rep = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 1, 1, 1]]).unwrap(),
        )
        .unwrap();
        let p = rep.puncture(2).unwrap();
        assert_eq!((p.n(), p.k()), (3, 1));
        assert_eq!(p.min_distance().unwrap(), 3);
        // shortening a repetition code kills it
        assert_eq!(rep.shorten(0).unwrap().k(), 0);
        // a zero coordinate: shortening there preserves the dimension
        let withzero = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 0, 2], &[0, 0, 5]]).unwrap(),
        )
        .unwrap();
        let s = withzero.shorten(1).unwrap();
        assert_eq!(s.k(), withzero.k());
        assert!(matches!(
            rep.puncture(9),
            Err(Error::IndexOutOfRange { index: 9, len: 4 })
        ));
    }

    #[test]
    fn shorten_dual_is_puncture_of_dual() {
        // Punc_i(C dual) = (Short_i(C)) dual, by set equality of RREFs
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f = Field::prime(7).unwrap();
        let mut checked = 0;
        while checked < 25 {
            let n = rng.gen_range(3..7);
            let k = rng.gen_range(1..n);
            let c = random_code(&mut rng, &f, n, k);
            let i = rng.gen_range(0..n);
            let lhs = c.dual().puncture(i);
            let rhs = c.shorten(i).map(|s| s.dual());
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a, b);
                    checked += 1;
                }
                // degenerate shapes (zero codes) are skipped
                _ => continue,
            }
        }
    }

    #[test]
    fn schur_square_basics() {
        let f = Field::prime(11).unwrap();
        let rep = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 1, 1]]).unwrap(),
        )
        .unwrap();
        let sq = rep.schur_square().unwrap();
        assert_eq!((sq.n(), sq.k()), (3, 1));
        assert_eq!(sq.min_distance().unwrap(), 3);
    }

    #[test]
    fn mds_and_nmds_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for q in [5u64, 7] {
            let f = Field::prime(q).unwrap();
            let mut seen_mds = 0;
            for _ in 0..60 {
                let n = rng.gen_range(2..7);
                let k = rng.gen_range(1..n);
                let c = random_code(&mut rng, &f, n, k);
                let tag = c.classify().unwrap().tag;
                let dual_tag = c.dual().classify().unwrap().tag;
                assert_eq!(tag == CodeTag::Mds, dual_tag == CodeTag::Mds);
                assert_eq!(tag == CodeTag::Nmds, dual_tag == CodeTag::Nmds);
                if tag == CodeTag::Mds {
                    seen_mds += 1;
                }
            }
            assert!(seen_mds > 0);
        }
    }

    #[test]
    fn contains_and_encode() {
        let c = extended_hamming();
        let f = c.field().clone();
        let msg: Vec<Fe> = vec![f.one(), f.zero(), f.one(), f.one()];
        let word = c.encode(&msg).unwrap();
        assert!(c.contains_word(&word).unwrap());
        let mut bad = word.clone();
        bad[0] = f.add(bad[0], f.one());
        assert!(!c.contains_word(&bad).unwrap());
    }
}
