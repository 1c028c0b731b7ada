//! Covering radius, error distance, and deep holes via exact coset-leader
//! tables: the definition-level brute-force oracle behind every analytic
//! criterion in the crate.

use std::ops::ControlFlow;

use crate::code::LinearCode;
use crate::comb::for_each_combination;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::matrix::Matrix;

/// Feasibility guard for q^{n-k} syndrome tables.
pub const TABLE_GUARD: u128 = 10_000_000;

/// Which route produced a deep-hole verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Definition,
    MdsExtension,
    Class1,
    Class2,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Criterion::Definition => write!(f, "definition"),
            Criterion::MdsExtension => write!(f, "mds-extension"),
            Criterion::Class1 => write!(f, "class1"),
            Criterion::Class2 => write!(f, "class2"),
        }
    }
}

/// A certificate recording why a vector is (or is not) a deep hole.
#[derive(Clone, Debug)]
pub struct DeepHoleReport {
    pub vector: Vec<Fe>,
    pub error_distance: u32,
    pub rho: u32,
    pub is_deep_hole: bool,
    pub criterion: Criterion,
    /// Set for k = n codes, where every vector is at distance zero.
    pub degenerate: bool,
}

/// Exact coset-leader weights for every syndrome of one code.
pub struct SyndromeTable {
    code: LinearCode,
    parity: Matrix,
    leader_weight: Vec<u8>,
    rho: u32,
}

impl SyndromeTable {
    /// Build by breadth-first weight enumeration: vectors of weight
    /// 0, 1, 2, ... are generated until every syndrome has been seen, so the
    /// first weight recorded for a syndrome is its coset-leader weight.
    pub fn build(code: &LinearCode) -> Result<SyndromeTable> {
        let n = code.n();
        let k = code.k();
        let f = code.field().clone();
        let q = f.q();
        let r = n - k;
        let total = (q as u128).checked_pow(r as u32);
        let total = match total {
            Some(t) if t <= TABLE_GUARD => t as usize,
            _ => {
                return Err(Error::TooLarge(format!(
                    "syndrome table q^(n-k) = {q}^{r} exceeds the guard"
                )))
            }
        };
        let parity = code.dual().generator().clone();
        let mut leader = vec![u8::MAX; total];
        leader[0] = 0;
        let mut seen = 1usize;
        let mut rho = 0u32;

        let cols: Vec<Vec<Fe>> = (0..n).map(|c| parity.col(c)).collect();
        let mut w = 1usize;
        while seen < total {
            debug_assert!(w <= n, "weight shells must cover all syndromes");
            // enumerate supports of size w, then nonzero values per support
            for_each_combination(n, w, |support| {
                let mut values = vec![1u64; w];
                loop {
                    let mut syn = vec![Fe::ZERO; r];
                    for (slot, &coord) in support.iter().enumerate() {
                        let val = Fe(values[slot]);
                        for (s, hc) in syn.iter_mut().zip(&cols[coord]) {
                            *s = f.add(*s, f.mul(val, *hc));
                        }
                    }
                    let mut idx = 0usize;
                    for &s in syn.iter().rev() {
                        idx = idx * q as usize + s.enc() as usize;
                    }
                    if leader[idx] == u8::MAX {
                        leader[idx] = w as u8;
                        seen += 1;
                        rho = w as u32;
                        if seen == total {
                            return ControlFlow::Break(());
                        }
                    }
                    // next value tuple over the nonzero elements
                    let mut pos = 0;
                    loop {
                        if pos == w {
                            return ControlFlow::Continue(());
                        }
                        values[pos] += 1;
                        if values[pos] < q {
                            break;
                        }
                        values[pos] = 1;
                        pos += 1;
                    }
                }
            });
            if seen == total {
                break;
            }
            w += 1;
        }
        Ok(SyndromeTable {
            code: code.clone(),
            parity,
            leader_weight: leader,
            rho,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn covering_radius(&self) -> u32 {
        self.rho
    }

    pub fn leader_weights(&self) -> &[u8] {
        &self.leader_weight
    }

    fn syndrome_index(&self, u: &[Fe]) -> Result<usize> {
        let syn = self.parity.mul_vec(u)?;
        let q = self.code.field().q() as usize;
        let mut idx = 0usize;
        for &s in syn.iter().rev() {
            idx = idx * q + s.enc() as usize;
        }
        Ok(idx)
    }

    /// Distance from u to the nearest codeword: the leader weight of its
    /// syndrome class.
    pub fn error_distance(&self, u: &[Fe]) -> Result<u32> {
        if u.len() != self.code.n() {
            return Err(Error::LengthMismatch {
                expected: self.code.n(),
                got: u.len(),
            });
        }
        let field = self.code.field();
        for &e in u {
            if !field.contains(e) {
                return Err(Error::FieldMismatch(format!(
                    "entry {e} outside {}",
                    field.token()
                )));
            }
        }
        Ok(self.leader_weight[self.syndrome_index(u)?] as u32)
    }

    pub fn is_deep_hole(&self, u: &[Fe]) -> Result<bool> {
        Ok(self.error_distance(u)? == self.rho)
    }

    pub fn report(&self, u: &[Fe]) -> Result<DeepHoleReport> {
        let dist = self.error_distance(u)?;
        Ok(DeepHoleReport {
            vector: u.to_vec(),
            error_distance: dist,
            rho: self.rho,
            is_deep_hole: dist == self.rho,
            criterion: Criterion::Definition,
            degenerate: self.rho == 0,
        })
    }

    /// A canonical representative of the coset with the given syndrome index:
    /// zero on the free coordinates of the parity RREF.
    fn coset_representative(&self, idx: usize) -> Vec<Fe> {
        let q = self.code.field().q() as usize;
        let n = self.code.n();
        let r = self.parity.rows();
        let mut syn = Vec::with_capacity(r);
        let mut v = idx;
        for _ in 0..r {
            syn.push(Fe((v % q) as u64));
            v /= q;
        }
        // the parity matrix is the dual generator, already in RREF, so
        // placing syndrome values on its pivot columns solves H x = s
        let (_, pivots) = self.parity.rref();
        let mut x = vec![Fe::ZERO; n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = syn[row];
        }
        debug_assert_eq!(self.syndrome_index(&x).unwrap(), idx);
        x
    }
}

/// Covering radius: the maximum coset-leader weight.
pub fn covering_radius(code: &LinearCode) -> Result<u32> {
    Ok(SyndromeTable::build(code)?.covering_radius())
}

/// All (or the first `limit`) vectors at distance exactly rho from the code,
/// walking deep-hole syndrome classes and their codeword translates in
/// deterministic order. For k = n every vector trivially lies at distance
/// zero; the codewords themselves are reported with the degenerate flag.
pub fn enumerate_deep_holes(code: &LinearCode, limit: usize) -> Result<Vec<DeepHoleReport>> {
    let table = SyndromeTable::build(code)?;
    let rho = table.covering_radius();
    let f = code.field().clone();
    let mut out = Vec::new();

    let total_words = (f.q() as u128).pow(code.k() as u32);
    if limit == usize::MAX {
        let classes = table
            .leader_weight
            .iter()
            .filter(|&&w| w as u32 == rho)
            .count() as u128;
        if classes * total_words > 100_000_000 {
            return Err(Error::TooLarge(
                "deep-hole set too large to materialize; pass a limit".into(),
            ));
        }
    }

    'outer: for idx in 0..table.leader_weight.len() {
        if table.leader_weight[idx] as u32 != rho {
            continue;
        }
        let rep = table.coset_representative(idx);
        // walk rep + c over all codewords c in message order
        let k = code.k();
        let mut msg = vec![Fe::ZERO; k];
        loop {
            let word = code.encode(&msg)?;
            let vector: Vec<Fe> = rep.iter().zip(&word).map(|(&a, &b)| f.add(a, b)).collect();
            out.push(DeepHoleReport {
                vector,
                error_distance: rho,
                rho,
                is_deep_hole: true,
                criterion: Criterion::Definition,
                degenerate: rho == 0,
            });
            if out.len() >= limit {
                break 'outer;
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                msg[pos] = Fe(msg[pos].enc() + 1);
                if msg[pos].enc() < f.q() {
                    break;
                }
                msg[pos] = Fe::ZERO;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{esgrs, EvalConfig};
    use crate::field::Field;
    use crate::matrix::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn extended_hamming() -> LinearCode {
        let f = Field::prime(2).unwrap();
        LinearCode::from_generator(
            Matrix::from_int_rows(
                &f,
                &[
                    &[1, 0, 0, 0, 0, 1, 1, 1],
                    &[0, 1, 0, 0, 1, 0, 1, 1],
                    &[0, 0, 1, 0, 1, 1, 0, 1],
                    &[0, 0, 0, 1, 1, 1, 1, 0],
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn example4_code() -> LinearCode {
        let f = Field::prime(11).unwrap();
        let cfg = EvalConfig::from_ints(&f, &[3, 4, 5, 6, 7]).unwrap();
        esgrs(&cfg, 3).unwrap()
    }

    #[test]
    fn extended_hamming_table() {
        let c = extended_hamming();
        let t = SyndromeTable::build(&c).unwrap();
        assert_eq!(t.leader_weights().len(), 16);
        assert_eq!(t.covering_radius(), 2);
        let f = c.field().clone();
        let u: Vec<Fe> = [0u64, 1, 1, 1, 0, 1, 0, 0].iter().map(|&x| f.el(x)).collect();
        assert_eq!(t.error_distance(&u).unwrap(), 2);
        assert!(t.is_deep_hole(&u).unwrap());
        // codewords are at distance zero
        let zero = vec![f.zero(); 8];
        assert_eq!(t.error_distance(&zero).unwrap(), 0);
    }

    #[test]
    fn example4_table() {
        let c = example4_code();
        let t = SyndromeTable::build(&c).unwrap();
        assert_eq!(t.leader_weights().len(), 1331);
        assert_eq!(t.covering_radius(), 3);
        let f = c.field().clone();
        let u: Vec<Fe> = [7u64, 10, 5, 5, 1, 4].iter().map(|&x| f.el(x)).collect();
        assert_eq!(t.error_distance(&u).unwrap(), 3);
    }

    #[test]
    fn full_space_has_radius_zero() {
        let f = Field::prime(5).unwrap();
        let c = LinearCode::from_generator(Matrix::identity(&f, 3)).unwrap();
        let t = SyndromeTable::build(&c).unwrap();
        assert_eq!(t.leader_weights().len(), 1);
        assert_eq!(t.covering_radius(), 0);
        let holes = enumerate_deep_holes(&c, 7).unwrap();
        assert_eq!(holes.len(), 7);
        assert!(holes.iter().all(|h| h.degenerate && h.is_deep_hole));
    }

    #[test]
    fn deep_hole_enumeration_contains_paper_vectors() {
        let c = extended_hamming();
        let f = c.field().clone();
        let holes = enumerate_deep_holes(&c, usize::MAX).unwrap();
        let target: Vec<Fe> = [0u64, 1, 1, 1, 0, 1, 0, 0].iter().map(|&x| f.el(x)).collect();
        assert!(holes.iter().any(|h| h.vector == target));
        // every reported vector really sits at distance rho
        let t = SyndromeTable::build(&c).unwrap();
        for h in holes.iter().take(50) {
            assert_eq!(t.error_distance(&h.vector).unwrap(), t.covering_radius());
        }
    }

    #[test]
    fn example4_deep_holes_present() {
        let c = example4_code();
        let f = c.field().clone();
        let holes = enumerate_deep_holes(&c, usize::MAX).unwrap();
        for last in [4u64, 3, 8, 1] {
            let target: Vec<Fe> = [7u64, 10, 5, 5, 1, last].iter().map(|&x| f.el(x)).collect();
            assert!(
                holes.iter().any(|h| h.vector == target),
                "missing deep hole ending in {last}"
            );
        }
    }

    #[test]
    fn deep_hole_set_is_union_of_cosets() {
        let c = example4_code();
        let f = c.field().clone();
        let t = SyndromeTable::build(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let holes = enumerate_deep_holes(&c, 20).unwrap();
        for h in &holes {
            let msg: Vec<Fe> = (0..c.k()).map(|_| f.el(rng.gen())).collect();
            let cw = c.encode(&msg).unwrap();
            let translated: Vec<Fe> = h
                .vector
                .iter()
                .zip(&cw)
                .map(|(&a, &b)| f.add(a, b))
                .collect();
            assert!(t.is_deep_hole(&translated).unwrap());
        }
    }

    #[test]
    fn distance_never_exceeds_radius() {
        let c = example4_code();
        let f = c.field().clone();
        let t = SyndromeTable::build(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..500 {
            let u: Vec<Fe> = (0..c.n()).map(|_| f.el(rng.gen())).collect();
            assert!(t.error_distance(&u).unwrap() <= t.covering_radius());
        }
    }

    #[test]
    fn covering_radius_over_an_extension_field() {
        // the whole covering stack on GF(9): [6,3] extended subcode,
        // radius n-k+1 = 3
        let f = Field::new(3, 2, None).unwrap();
        let cfg = EvalConfig::from_ints(&f, &[0, 1, 2, 3, 7]).unwrap();
        let code = esgrs(&cfg, 3).unwrap();
        let t = SyndromeTable::build(&code).unwrap();
        assert_eq!(t.covering_radius(), 3);
        assert_eq!(t.leader_weights().len(), 729);
        let holes = enumerate_deep_holes(&code, 5).unwrap();
        for h in &holes {
            assert_eq!(t.error_distance(&h.vector).unwrap(), 3);
        }
    }

    #[test]
    fn table_guard() {
        let f = Field::prime(13).unwrap();
        let c = LinearCode::from_generator(
            Matrix::from_int_rows(&f, &[&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(SyndromeTable::build(&c), Err(Error::TooLarge(_))));
    }
}
