//! Desk-scale monomial-equivalence testing between linear codes, and
//! non-GRS certification by exhaustion over GRS/EGRS candidates plus
//! square-code invariants.
//!
//! The equivalence group is coordinate permutations composed with nonzero
//! diagonal scalings; field automorphisms are deliberately excluded.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::code::LinearCode;
use crate::comb::for_each_combination;
use crate::constructions::{egrs, grs, EvalConfig};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;

/// Guard on the ordered-frame search space n^{k+1}.
pub const FRAME_GUARD: u128 = 10_000_000;
/// Guard on the total candidate work of the GRS/EGRS exhaustion.
pub const GRS_SWEEP_GUARD: u128 = 10_000_000_000;

/// A monomial map certifying equivalence: code B is obtained from code A by
/// `new[j] = scale[j] * old[perm[j]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    pub perm: Vec<usize>,
    pub scale: Vec<Fe>,
}

/// Apply a monomial map to a code: coordinate j of the image reads
/// coordinate perm[j] of the original scaled by scale[j].
pub fn apply_monomial(code: &LinearCode, perm: &[usize], scale: &[Fe]) -> Result<LinearCode> {
    let n = code.n();
    if perm.len() != n || scale.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: perm.len().min(scale.len()) });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n {
            return Err(Error::IndexOutOfRange { index: p, len: n });
        }
        if seen[p] {
            return Err(Error::BadInput("permutation has a repeated index".into()));
        }
        seen[p] = true;
    }
    let f = code.field();
    for &s in scale {
        if s.is_zero() || !f.contains(s) {
            return Err(Error::BadInput("scales must be nonzero field elements".into()));
        }
    }
    let gen = code.generator();
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(code.k());
    for r in 0..code.k() {
        let row = gen.row(r);
        rows.push((0..n).map(|j| f.mul(scale[j], row[perm[j]])).collect());
    }
    LinearCode::from_generator(Matrix::from_rows(f, rows)?)
}

fn check_witness(a: &LinearCode, b: &LinearCode, w: &EquivWitness) -> bool {
    apply_monomial(a, &w.perm, &w.scale).map_or(false, |image| &image == b)
}

/// Normalize a nonzero column to its projective representative (first
/// nonzero entry scaled to one) and return the leading scalar.
fn normalize(f: &Field, col: &[Fe]) -> Option<(Vec<u64>, Fe)> {
    let lead = col.iter().copied().find(|e| !e.is_zero())?;
    let inv = f.inv(lead).expect("nonzero");
    Some((col.iter().map(|&e| f.mul(e, inv).enc()).collect(), lead))
}

/// Staged fast rejection on monomial invariants: weight distribution and
/// Schur-square dimensions first (cheap), then Schur-square distances of the
/// code and its dual only when the cheap stage ties. Distances beyond the
/// enumeration guard are skipped on both sides symmetrically.
fn fast_reject(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    let ia = a.basic_invariants()?;
    let ib = b.basic_invariants()?;
    if ia != ib {
        return Ok(true);
    }
    let da = a.square_distances()?;
    let db = b.square_distances()?;
    Ok(da != db)
}

/// Decide monomial equivalence. Fast rejection on monomial invariants first,
/// then a projective frame search: fix k+1 columns of A in general position,
/// try every ordered (k+1)-tuple of B's columns, solve for the unique
/// transformation, and accept iff it maps A's projective column multiset
/// onto B's. When A has no frame (possible for NMDS codes) a backtracking
/// search over pivot images with explicit scale enumeration is used instead.
pub fn monomial_equivalent(a: &LinearCode, b: &LinearCode) -> Result<Option<EquivWitness>> {
    if a.n() != b.n() || a.k() != b.k() || a.field().as_ref() != b.field().as_ref() {
        return Err(Error::ShapeMismatch(format!(
            "[{},{}]_{} vs [{},{}]_{}",
            a.n(), a.k(), a.field().q(), b.n(), b.k(), b.field().q()
        )));
    }
    let n = a.n();
    let k = a.k();
    if (n as u128).checked_pow(k as u32 + 1).is_none_or(|v| v > FRAME_GUARD) {
        return Err(Error::TooLarge(format!(
            "frame search n^(k+1) = {n}^{} exceeds the guard",
            k + 1
        )));
    }

    if k == n {
        // both are the full space
        let witness = EquivWitness {
            perm: (0..n).collect(),
            scale: vec![a.field().one(); n],
        };
        return Ok(Some(witness));
    }

    if fast_reject(a, b)? {
        return Ok(None);
    }

    match find_frame(a) {
        Some(frame) => frame_search(a, b, &frame),
        None => pivot_scale_search(a, b),
    }
}

/// Lexicographically first (k+1)-column tuple of A in general position:
/// every k-subset of it is independent.
fn find_frame(a: &LinearCode) -> Option<Vec<usize>> {
    let gen = a.generator();
    let n = a.n();
    let k = a.k();
    let mut found = None;
    for_each_combination(n, k + 1, |idx| {
        let mut general = true;
        for drop in 0..=k {
            let sub: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &c)| c)
                .collect();
            if !gen.cols_independent(&sub).expect("valid indices") {
                general = false;
                break;
            }
        }
        if general {
            found = Some(idx.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Map T applied to A's columns must land on B's projective columns with a
/// consistent bijection; build the witness when it does.
fn match_columns(a: &LinearCode, b: &LinearCode, t: &Matrix) -> Option<EquivWitness> {
    let f = a.field().clone();
    let n = a.n();
    let a_gen = a.generator();
    let b_gen = b.generator();

    // bucket B's columns by projective representative
    let mut b_buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut b_zero: Vec<usize> = Vec::new();
    let mut b_leads: Vec<Fe> = vec![Fe::ZERO; n];
    for j in 0..n {
        let col = b_gen.col(j);
        match normalize(&f, &col) {
            Some((key, lead)) => {
                b_buckets.entry(key).or_default().push(j);
                b_leads[j] = lead;
            }
            None => b_zero.push(j),
        }
    }

    let mut assignment: Vec<Option<(usize, Fe)>> = vec![None; n]; // B index -> (A index, scale)
    let mut a_zero: Vec<usize> = Vec::new();
    let mut bucket_cursor: HashMap<Vec<u64>, usize> = HashMap::new();
    for ja in 0..n {
        let image = t.mul_vec(&a_gen.col(ja)).expect("shape fixed");
        match normalize(&f, &image) {
            Some((key, lead)) => {
                let bucket = b_buckets.get(&key)?;
                let cursor = bucket_cursor.entry(key).or_insert(0);
                if *cursor >= bucket.len() {
                    return None; // multiset multiplicities differ
                }
                let jb = bucket[*cursor];
                *cursor += 1;
                // image = lead * rep, B col = b_lead * rep, so
                // T a = (lead / b_lead) b; the witness scale inverts that
                let mu = f.mul(lead, f.inv(b_leads[jb]).expect("nonzero"));
                assignment[jb] = Some((ja, f.inv(mu).expect("nonzero")));
            }
            None => a_zero.push(ja),
        }
    }
    if a_zero.len() != b_zero.len() {
        return None;
    }
    for (&jb, &ja) in b_zero.iter().zip(&a_zero) {
        assignment[jb] = Some((ja, f.one()));
    }
    if assignment.iter().any(|s| s.is_none()) {
        return None;
    }
    let perm: Vec<usize> = assignment.iter().map(|s| s.unwrap().0).collect();
    let scale: Vec<Fe> = assignment.iter().map(|s| s.unwrap().1).collect();
    let witness = EquivWitness { perm, scale };
    check_witness(a, b, &witness).then_some(witness)
}

fn frame_search(a: &LinearCode, b: &LinearCode, frame: &[usize]) -> Result<Option<EquivWitness>> {
    let f = a.field().clone();
    let k = a.k();
    let n = a.n();
    let a_gen = a.generator();
    let b_gen = b.generator();

    let c_mat = a_gen.select_cols(&frame[..k])?;
    let c_inv = c_mat.inverse()?.expect("frame columns are independent");
    let alpha = c_inv.mul_vec(&a_gen.col(frame[k]))?;
    debug_assert!(alpha.iter().all(|e| !e.is_zero()));
    let alpha_inv: Vec<Fe> = alpha.iter().map(|&x| f.inv(x).expect("nonzero")).collect();

    let b_cols: Vec<Vec<Fe>> = (0..n).map(|j| b_gen.col(j)).collect();

    // ordered (k+1)-tuples of distinct B columns, lexicographic
    let mut tuple = vec![0usize; k + 1];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        k: usize,
        n: usize,
        f: &Field,
        a: &LinearCode,
        b: &LinearCode,
        b_cols: &[Vec<Fe>],
        c_inv: &Matrix,
        alpha_inv: &[Fe],
        tuple: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Result<Option<EquivWitness>> {
        if depth == k + 1 {
            // solve beta from the first k chosen columns
            let d_mat_cols: Vec<usize> = tuple[..k].to_vec();
            let d_mat = b.generator().select_cols(&d_mat_cols)?;
            let Some(d_inv) = d_mat.inverse()? else {
                return Ok(None);
            };
            let beta = d_inv.mul_vec(&b_cols[tuple[k]])?;
            if beta.iter().any(|e| e.is_zero()) {
                return Ok(None);
            }
            // T maps frame column i to (beta_i / alpha_i) d_i
            let mut t_cols = Matrix::zeros(a.field(), k, k);
            for i in 0..k {
                let gamma = f.mul(beta[i], alpha_inv[i]);
                for r in 0..k {
                    t_cols[(r, i)] = f.mul(gamma, b_cols[tuple[i]][r]);
                }
            }
            let t = t_cols.mul(c_inv)?;
            return Ok(match_columns(a, b, &t));
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            used[j] = true;
            tuple[depth] = j;
            let hit = rec(depth + 1, k, n, f, a, b, b_cols, c_inv, alpha_inv, tuple, used)?;
            used[j] = false;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
    rec(0, k, n, &f, a, b, &b_cols, &c_inv, &alpha_inv, &mut tuple, &mut used)
}

/// Fallback when A has no projective frame: A's generator is in RREF, so its
/// pivot columns are unit vectors and the image of each pivot column, with an
/// explicit scale, determines one column of the transformation.
fn pivot_scale_search(a: &LinearCode, b: &LinearCode) -> Result<Option<EquivWitness>> {
    let f = a.field().clone();
    let k = a.k();
    let n = a.n();
    let q = f.q();
    let work = (n as u128).pow(k as u32) * (q as u128 - 1).pow(k as u32 - 1) * (n as u128);
    if work > 2_000_000_000 {
        return Err(Error::TooLarge(format!(
            "frameless fallback search needs {work} steps"
        )));
    }
    debug_assert_eq!(a.pivots().len(), k);
    let b_cols: Vec<Vec<Fe>> = (0..n).map(|j| b.generator().col(j)).collect();

    let mut tuple = vec![0usize; k];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        k: usize,
        n: usize,
        q: u64,
        f: &Field,
        a: &LinearCode,
        b: &LinearCode,
        b_cols: &[Vec<Fe>],
        tuple: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Result<Option<EquivWitness>> {
        if depth == k {
            // scales gamma_2..gamma_k free, gamma_1 = 1 up to global scale
            let mut scales = vec![1u64; k];
            loop {
                let mut t = Matrix::zeros(a.field(), k, k);
                for i in 0..k {
                    for r in 0..k {
                        t[(r, i)] = f.mul(Fe(scales[i]), b_cols[tuple[i]][r]);
                    }
                }
                if t.rank() == k {
                    if let Some(w) = match_columns(a, b, &t) {
                        return Ok(Some(w));
                    }
                }
                let mut pos = 1;
                loop {
                    if pos >= k {
                        return Ok(None);
                    }
                    scales[pos] += 1;
                    if scales[pos] < q {
                        break;
                    }
                    scales[pos] = 1;
                    pos += 1;
                }
            }
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            used[j] = true;
            tuple[depth] = j;
            let hit = rec(depth + 1, k, n, q, f, a, b, b_cols, tuple, used)?;
            used[j] = false;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
    rec(0, k, n, q, &f, a, b, &b_cols, &mut tuple, &mut used)
}

/// Which evaluation family matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrsKind {
    Grs,
    Egrs,
}

#[derive(Clone, Debug)]
pub struct GrsMatch {
    pub kind: GrsKind,
    pub points: Vec<Fe>,
    pub witness: EquivWitness,
}

/// Search for a GRS or EGRS code monomially equivalent to C, exhausting all
/// evaluation sets of the right size with unit multipliers (monomial
/// equivalence absorbs the multiplier vector, since scaling coordinate i by
/// v_i maps the unit-multiplier code onto the general one). Returns the
/// first witness in deterministic enumeration order, or None: a certified
/// non-GRS verdict.
pub fn equivalent_to_some_grs(code: &LinearCode) -> Result<Option<GrsMatch>> {
    let n = code.n();
    let k = code.k();
    let field = code.field().clone();
    let q = field.q();

    let mut candidates: Vec<(GrsKind, Vec<Fe>)> = Vec::new();
    if n as u64 <= q {
        for_each_combination(q as usize, n, |idx| {
            candidates.push((GrsKind::Grs, idx.iter().map(|&i| Fe(i as u64)).collect()));
            ControlFlow::Continue(())
        });
    }
    if n >= 2 && (n - 1) as u64 <= q && k <= n - 1 {
        for_each_combination(q as usize, n - 1, |idx| {
            candidates.push((GrsKind::Egrs, idx.iter().map(|&i| Fe(i as u64)).collect()));
            ControlFlow::Continue(())
        });
    }

    let frame_work = (n as u128).pow(k as u32 + 1);
    let total_work = (candidates.len() as u128).saturating_mul(frame_work);
    if total_work > GRS_SWEEP_GUARD {
        return Err(Error::TooLarge(format!(
            "GRS exhaustion needs {total_work} frame steps"
        )));
    }

    // force the cached invariants of C before the parallel sweep
    code.basic_invariants()?;
    code.square_distances()?;

    let verdict = candidates
        .par_iter()
        .find_map_first(|(kind, points)| {
            let build = || -> Result<Option<GrsMatch>> {
                let cfg = EvalConfig::with_unit_multipliers(&field, points.clone())?;
                let cand = match kind {
                    GrsKind::Grs => grs(&cfg, k)?,
                    GrsKind::Egrs => egrs(&cfg, k)?,
                };
                let witness = monomial_equivalent(code, &cand)?;
                Ok(witness.map(|w| GrsMatch {
                    kind: *kind,
                    points: points.clone(),
                    witness: w,
                }))
            };
            match build() {
                Ok(None) => None,
                Ok(Some(m)) => Some(Ok(m)),
                Err(e) => Some(Err(e)),
            }
        })
        .transpose()?;
    Ok(verdict)
}

/// Minimum distance of the Schur square of the dual: the invariant that
/// separates the extended-subcode family from extended GRS codes at length
/// q+1.
pub fn square_code_distinguisher(code: &LinearCode) -> Result<u32> {
    code.dual().schur_square()?.min_distance()
}
