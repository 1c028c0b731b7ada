//! Analytic deep-hole criteria for extended subcodes of GRS: the polynomial-
//! space membership filter, the first-class criterion through (n, k, delta)-
//! sets, and the second-class criterion through elementary symmetric
//! functions and forbidden coefficient sets.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::code::{LinearCode, SUBSET_GUARD};
use crate::comb::{binomial, for_each_combination};
use crate::constructions::{is_nk_delta_set, EvalConfig};
use crate::error::{Error, Result};
use crate::field::{Fe, Field, Poly};
use crate::matrix::Matrix;

/// i-th elementary symmetric function of the listed elements: 1 at i = 0,
/// subset-product sums for 1 <= i <= |S|, and 0 outside that range.
pub fn sigma(field: &Field, i: i64, elements: &[Fe]) -> Fe {
    let n = elements.len() as i64;
    if i == 0 {
        return field.one();
    }
    if i < 0 || i > n {
        return Fe::ZERO;
    }
    // e[j] accumulates sigma_j while elements are folded in one at a time
    let mut e = vec![Fe::ZERO; elements.len() + 1];
    e[0] = field.one();
    for (t, &a) in elements.iter().enumerate() {
        for j in (1..=t + 1).rev() {
            e[j] = field.add(e[j], field.mul(a, e[j - 1]));
        }
    }
    e[i as usize]
}

/// Both routes of the generalized Vandermonde identity: the raw determinant
/// of the rows a_j^{t_i}, and the factored form (the full Vandermonde product
/// times a determinant of elementary symmetric functions over the skipped
/// exponents). The two must agree; the common value is returned.
pub fn gen_vandermonde_det(
    field: &std::sync::Arc<Field>,
    points: &[Fe],
    exponents: &[usize],
) -> Result<Fe> {
    if exponents.len() != points.len() {
        return Err(Error::PartitionViolation(format!(
            "need as many exponents as points, got {} and {}",
            exponents.len(),
            points.len()
        )));
    }
    if points.is_empty() {
        return Err(Error::PartitionViolation("empty point set".into()));
    }
    let mut exps = exponents.to_vec();
    exps.sort_unstable();
    if exps.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::PartitionViolation("duplicate exponents".into()));
    }
    if exps[0] != 0 {
        return Err(Error::PartitionViolation("exponent 0 must be present".into()));
    }
    let s = points.len();
    let m = exps[s - 1] + 1;

    // raw determinant
    let rows: Vec<Vec<Fe>> = exps
        .iter()
        .map(|&t| points.iter().map(|&a| field.pow(a, t as u64)).collect())
        .collect();
    let raw = Matrix::from_rows(field, rows)?.det()?;

    // factored form
    let mut vand = field.one();
    for i in 0..s {
        for j in i + 1..s {
            vand = field.mul(vand, field.sub(points[j], points[i]));
        }
    }
    let skipped: Vec<usize> = (0..m).filter(|t| !exps.contains(t)).collect();
    let sp = skipped.len();
    let factored = if sp == 0 {
        vand
    } else {
        let srows: Vec<Vec<Fe>> = (0..sp)
            .map(|i| {
                skipped
                    .iter()
                    .map(|&r| sigma(field, s as i64 - r as i64 + i as i64, points))
                    .collect()
            })
            .collect();
        let sdet = Matrix::from_rows(field, srows)?.det()?;
        field.mul(vand, sdet)
    };

    if raw != factored {
        return Err(Error::MismatchDetected(format!(
            "raw determinant {raw} differs from factored form {factored}"
        )));
    }
    Ok(raw)
}

/// Cheap necessary filter: a candidate offset polynomial that still lies in
/// the evaluation space cannot yield a deep hole. Returns true when the
/// polynomial passes (is outside the space).
pub fn vk_filter(gprime: &Poly, k: usize) -> bool {
    !gprime.in_vk(k)
}

/// The deep-hole vector (v_1 g(a_1), ..., v_n g(a_n), u_scalar) tested by all
/// shape-based criteria. `u_scalar` is the product of the appended coordinate
/// with its multiplier, the only combination the criteria depend on.
pub fn shape_vector(cfg: &EvalConfig, g: &Poly, u_scalar: Fe) -> Result<Vec<Fe>> {
    let f = cfg.field();
    if !f.contains(u_scalar) {
        return Err(Error::FieldMismatch(format!(
            "{u_scalar} outside {}",
            f.token()
        )));
    }
    let mut out = Vec::with_capacity(cfg.n() + 1);
    for (&a, &v) in cfg.points().iter().zip(cfg.multipliers()) {
        out.push(f.mul(v, g.eval(a)?));
    }
    out.push(u_scalar);
    Ok(out)
}

/// First-class criterion, for g = g_{k-1} x^{k-1} + f with nonzero g_{k-1}
/// and f in the evaluation space: the shape vector is a deep hole iff
/// u_scalar equals f_k, or S is an (n, k, g_{k-1} (u_scalar - f_k)^{-1})-set.
pub fn class1_is_deep_hole(
    cfg: &EvalConfig,
    k: usize,
    g_km1: Fe,
    f: &Poly,
    u_scalar: Fe,
) -> Result<bool> {
    if g_km1.is_zero() {
        return Err(Error::BadInput("g_{k-1} must be nonzero".into()));
    }
    if !f.in_vk(k) {
        return Err(Error::BadInput(
            "f must lie in the k-dimensional evaluation space".into(),
        ));
    }
    let field = cfg.field();
    if !field.contains(g_km1) || !field.contains(u_scalar) {
        return Err(Error::FieldMismatch("scalar outside the configuration field".into()));
    }
    let f_k = f.coeff(k);
    if u_scalar == f_k {
        return Ok(true);
    }
    let delta = field.mul(g_km1, field.inv(field.sub(u_scalar, f_k))?);
    is_nk_delta_set(field, cfg.points(), k, delta)
}

/// The set of g_{k-1} coefficients excluded by the second-class criterion,
/// split into its k-subset and (k+1)-subset branches.
#[derive(Clone, Debug)]
pub struct ForbiddenSet {
    pub l1: BTreeSet<Fe>,
    pub l2: BTreeSet<Fe>,
    pub union: BTreeSet<Fe>,
    /// The a-priori bound C(n+1, k+1) on the union size.
    pub bound: u128,
}

impl ForbiddenSet {
    pub fn contains(&self, g_km1: Fe) -> bool {
        self.union.contains(&g_km1)
    }

    /// Field elements admissible as g_{k-1}.
    pub fn admissible(&self, field: &Field) -> Vec<Fe> {
        field.elements().filter(|e| !self.union.contains(e)).collect()
    }
}

/// Materialize the forbidden set for fixed g_{k+1} != 0 and
/// c = u_scalar - f_k. L1 ranges over k-subsets with the sigma expression
/// g_{k+1} (sigma_2 - sigma_1^2) + c sigma_1; L2 over (k+1)-subsets with
/// g_{k+1} sigma_2.
pub fn forbidden_set(cfg: &EvalConfig, k: usize, g_kp1: Fe, c: Fe) -> Result<ForbiddenSet> {
    if g_kp1.is_zero() {
        return Err(Error::BadInput("g_{k+1} must be nonzero".into()));
    }
    let field = cfg.field();
    if !field.contains(g_kp1) || !field.contains(c) {
        return Err(Error::FieldMismatch("scalar outside the configuration field".into()));
    }
    let n = cfg.n();
    if k + 1 > n {
        return Err(Error::BadDimension(format!("need k+1 <= n, got k={k}, n={n}")));
    }
    let work = binomial(n as u64, k as u64) + binomial(n as u64, k as u64 + 1);
    if work > SUBSET_GUARD {
        return Err(Error::TooLarge(format!("{work} subsets exceed the guard")));
    }

    let points = cfg.points();
    let mut l1 = BTreeSet::new();
    for_each_combination(n, k, |idx| {
        let sub: Vec<Fe> = idx.iter().map(|&i| points[i]).collect();
        let s1 = sigma(field, 1, &sub);
        let s2 = sigma(field, 2, &sub);
        let val = field.add(
            field.mul(g_kp1, field.sub(s2, field.mul(s1, s1))),
            field.mul(c, s1),
        );
        l1.insert(val);
        ControlFlow::Continue(())
    });
    let mut l2 = BTreeSet::new();
    for_each_combination(n, k + 1, |idx| {
        let sub: Vec<Fe> = idx.iter().map(|&i| points[i]).collect();
        l2.insert(field.mul(g_kp1, sigma(field, 2, &sub)));
        ControlFlow::Continue(())
    });
    let union: BTreeSet<Fe> = l1.union(&l2).copied().collect();
    let bound = binomial(n as u64 + 1, k as u64 + 1);
    assert!(union.len() as u128 <= bound);
    Ok(ForbiddenSet { l1, l2, union, bound })
}

/// Second-class criterion, for g = g_{k+1} x^{k+1} + g_{k-1} x^{k-1} + f with
/// nonzero g_{k+1}: the shape vector is a deep hole iff g_{k-1} avoids the
/// forbidden set.
pub fn class2_is_deep_hole(
    cfg: &EvalConfig,
    k: usize,
    g_kp1: Fe,
    g_km1: Fe,
    f: &Poly,
    u_scalar: Fe,
) -> Result<bool> {
    if g_kp1.is_zero() {
        return Err(Error::BadInput("g_{k+1} must be nonzero".into()));
    }
    if !f.in_vk(k) {
        return Err(Error::BadInput(
            "f must lie in the k-dimensional evaluation space".into(),
        ));
    }
    let field = cfg.field();
    if !field.contains(g_km1) || !field.contains(u_scalar) {
        return Err(Error::FieldMismatch("scalar outside the configuration field".into()));
    }
    let c = field.sub(u_scalar, f.coeff(k));
    let forbidden = forbidden_set(cfg, k, g_kp1, c)?;
    Ok(!forbidden.contains(g_km1))
}

/// Deep-hole test through the extension route: u is a deep hole of the
/// extended-subcode iff adjoining it as a generator row yields an MDS code of
/// one higher dimension (checked by the column criterion).
pub fn mds_extension_deep_hole_test(code: &LinearCode, u: &[Fe]) -> Result<bool> {
    if u.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: u.len(),
        });
    }
    let augmented = code.generator().append_row(u)?;
    let (rref, pivots) = augmented.rref();
    if pivots.len() != code.k() + 1 {
        return Ok(false); // u already lies in the code
    }
    let rows: Vec<Vec<Fe>> = (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect();
    let cu = LinearCode::from_generator(Matrix::from_rows(code.field(), rows)?)?;
    cu.is_mds_by_columns()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::SyndromeTable;
    use crate::constructions::esgrs;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example4_cfg() -> EvalConfig {
        let f = Field::prime(11).unwrap();
        EvalConfig::from_ints(&f, &[3, 4, 5, 6, 7]).unwrap()
    }

    #[test]
    fn sigma_piecewise() {
        let f = Field::prime(11).unwrap();
        let pts: Vec<Fe> = [3u64, 4, 5].iter().map(|&x| f.el(x)).collect();
        assert_eq!(sigma(&f, 0, &pts), f.one());
        assert_eq!(sigma(&f, -1, &pts), f.zero());
        assert_eq!(sigma(&f, 4, &pts), f.zero());
        // direct subset-sum oracle: 12 + 15 + 20 = 47 = 3 (mod 11)
        let mut oracle = 0u64;
        let raw = [3u64, 4, 5];
        for i in 0..3 {
            for j in i + 1..3 {
                oracle += raw[i] * raw[j];
            }
        }
        assert_eq!(oracle % 11, 3);
        assert_eq!(sigma(&f, 2, &pts), f.el(3));
    }

    #[test]
    fn sigma_matches_polynomial_expansion() {
        // sigma_i(S) = (-1)^i [x^{|S|-i}] prod (x - a), by an independent
        // expansion oracle
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for q in [11u64, 13] {
            let f = Field::prime(q).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(1..6);
                let mut pool: Vec<u64> = (0..q).collect();
                for i in (1..pool.len()).rev() {
                    pool.swap(i, rng.gen_range(0..=i));
                }
                let pts: Vec<Fe> = pool[..n].iter().map(|&x| f.el(x)).collect();
                // expand prod (x - a) coefficient by coefficient
                let mut coeffs = vec![f.one()]; // ascending
                for &a in &pts {
                    let mut next = vec![Fe::ZERO; coeffs.len() + 1];
                    for (i, &c) in coeffs.iter().enumerate() {
                        next[i + 1] = f.add(next[i + 1], c);
                        next[i] = f.sub(next[i], f.mul(a, c));
                    }
                    coeffs = next;
                }
                for i in 0..=n {
                    let lhs = sigma(&f, i as i64, &pts);
                    let coeff = coeffs[n - i];
                    let rhs = if i % 2 == 0 { coeff } else { f.neg(coeff) };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn vandermonde_identity_plain_and_gapped() {
        let f = Field::prime(11).unwrap();
        let pts: Vec<Fe> = [3u64, 4, 5].iter().map(|&x| f.el(x)).collect();
        // no gaps: plain Vandermonde
        let plain = gen_vandermonde_det(&f, &pts, &[0, 1, 2]).unwrap();
        assert_eq!(plain, f.el(2)); // (4-3)(5-3)(5-4) = 2
        // gapped exponents agree with the raw determinant by construction
        gen_vandermonde_det(&f, &pts, &[0, 1, 3]).unwrap();
        gen_vandermonde_det(&f, &pts, &[0, 2, 3]).unwrap();
        // violations
        assert!(matches!(
            gen_vandermonde_det(&f, &pts, &[1, 2, 3]),
            Err(Error::PartitionViolation(_))
        ));
        assert!(matches!(
            gen_vandermonde_det(&f, &pts, &[0, 1]),
            Err(Error::PartitionViolation(_))
        ));
    }

    #[test]
    fn class2_proof_minor_shape() {
        // skipping exponent k-1 = 2 only: the sigma matrix is the 1x1 [s1]
        let f = Field::prime(11).unwrap();
        let pts: Vec<Fe> = [3u64, 4, 5].iter().map(|&x| f.el(x)).collect();
        let det = gen_vandermonde_det(&f, &pts, &[0, 1, 3]).unwrap();
        let s1 = sigma(&f, 1, &pts);
        let s2 = sigma(&f, 2, &pts);
        let mut vand = f.one();
        for i in 0..3 {
            for j in i + 1..3 {
                vand = f.mul(vand, f.sub(pts[j], pts[i]));
            }
        }
        assert_eq!(det, f.mul(vand, s1));
        // the minor of the class-2 computation skips exponents k-1 and k,
        // giving det [[s1, 1], [s2, s1]] = s1^2 - s2
        let det2 = gen_vandermonde_det(&f, &pts, &[0, 1, 4]).unwrap();
        let expect = f.mul(vand, f.sub(f.mul(s1, s1), s2));
        assert_eq!(det2, expect);
    }

    #[test]
    fn vk_filter_examples() {
        let f = Field::prime(11).unwrap();
        let g1 = Poly::from_ints(&f, &[0, 0, 3]); // 3 x^{k-1} for k = 3
        assert!(vk_filter(&g1, 3));
        let inside = Poly::from_ints(&f, &[7, 10, 0, 4]);
        assert!(!vk_filter(&inside, 3));
        let high = Poly::from_ints(&f, &[0, 0, 0, 0, 1]); // x^{k+1}
        assert!(vk_filter(&high, 3));
    }

    #[test]
    fn class1_example_values() {
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let fpoly = Poly::from_ints(&f, &[7, 10, 0, 4]); // 4x^3 + 10x + 7
        let g2 = f.el(3);
        // branch 1: u_scalar = f_3 = 4
        assert!(class1_is_deep_hole(&cfg, 3, g2, &fpoly, f.el(4)).unwrap());
        // branch 2: u_scalar = 3 gives delta = 3 (3-4)^{-1} = 8, a valid set
        assert!(class1_is_deep_hole(&cfg, 3, g2, &fpoly, f.el(3)).unwrap());
        // the accepted u_scalar values are exactly {4, 3, 8, 1}
        let accepted: Vec<u64> = f
            .elements()
            .filter(|&u| class1_is_deep_hole(&cfg, 3, g2, &fpoly, u).unwrap())
            .map(|u| u.enc())
            .collect();
        let mut want = vec![4u64, 3, 8, 1];
        want.sort_unstable();
        assert_eq!(accepted, want);
        // bad inputs
        assert!(class1_is_deep_hole(&cfg, 3, f.zero(), &fpoly, f.el(4)).is_err());
        let not_in_space = Poly::from_ints(&f, &[0, 0, 1]);
        assert!(class1_is_deep_hole(&cfg, 3, g2, &not_in_space, f.el(4)).is_err());
    }

    #[test]
    fn class1_agrees_with_definition() {
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let code = esgrs(&cfg, 3).unwrap();
        let table = SyndromeTable::build(&code).unwrap();
        let fpoly = Poly::from_ints(&f, &[7, 10, 0, 4]);
        let g2 = f.el(3);
        let g = Poly::from_ints(&f, &[7, 10, 3, 4]); // g_2 x^2 added
        for u in f.elements() {
            let analytic = class1_is_deep_hole(&cfg, 3, g2, &fpoly, u).unwrap();
            let vector = shape_vector(&cfg, &g, u).unwrap();
            let definition = table.is_deep_hole(&vector).unwrap();
            assert_eq!(analytic, definition, "u_scalar={u}");
        }
    }

    #[test]
    fn forbidden_set_example5() {
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        // g_4 = 2, f_3 = 3; u_scalar = 0 gives c = -3 = 8
        let fs = forbidden_set(&cfg, 3, f.el(2), f.el(8)).unwrap();
        let union: Vec<u64> = fs.union.iter().map(|e| e.enc()).collect();
        let expect: Vec<u64> = (0..11).filter(|&x| x != 8).collect();
        assert_eq!(union, expect);
        assert_eq!(fs.admissible(&f), vec![f.el(8)]);
        // u_scalar = 4 gives c = 1 and the whole field is forbidden
        let fs2 = forbidden_set(&cfg, 3, f.el(2), f.el(1)).unwrap();
        assert_eq!(fs2.union.len(), 11);
        assert!(fs2.admissible(&f).is_empty());
        // bounds
        assert_eq!(fs.bound, 15);
        assert!(fs.union.len() as u128 <= fs.bound);
        assert!(forbidden_set(&cfg, 3, f.zero(), f.one()).is_err());
    }

    #[test]
    fn class2_example5_and_definition() {
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let code = esgrs(&cfg, 3).unwrap();
        let table = SyndromeTable::build(&code).unwrap();
        let fpoly = Poly::from_ints(&f, &[2, 5, 0, 3]); // 3x^3 + 5x + 2
        // g = 2x^4 + 3x^3 + 8x^2 + 5x + 2, u_scalar = 0
        assert!(class2_is_deep_hole(&cfg, 3, f.el(2), f.el(8), &fpoly, f.zero()).unwrap());
        let g = Poly::from_ints(&f, &[2, 5, 8, 3, 2]);
        let vector = shape_vector(&cfg, &g, f.zero()).unwrap();
        assert_eq!(
            vector.iter().map(|e| e.enc()).collect::<Vec<_>>(),
            vec![2, 7, 4, 7, 1, 0]
        );
        assert!(table.is_deep_hole(&vector).unwrap());
        // u_scalar = 4 admits no g_2 at all
        for g2 in f.elements() {
            assert!(!class2_is_deep_hole(&cfg, 3, f.el(2), g2, &fpoly, f.el(4)).unwrap());
        }
    }

    #[test]
    fn class2_specialization_recovers_class1() {
        // setting g_{k+1} = 0 formally reduces the forbidden set to
        // {0} union {c sigma_1(S_k)}; cross-check the criteria agree there
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..40 {
            let fpoly = Poly::from_ints(
                &f,
                &[rng.gen_range(0..11), rng.gen_range(0..11), 0, rng.gen_range(0..11)],
            );
            let u = f.el(rng.gen_range(0..11));
            let c = f.sub(u, fpoly.coeff(3));
            let mut reduced: BTreeSet<Fe> = BTreeSet::new();
            reduced.insert(Fe::ZERO);
            for_each_combination(cfg.n(), 3, |idx| {
                let sub: Vec<Fe> = idx.iter().map(|&i| cfg.points()[i]).collect();
                reduced.insert(f.mul(c, sigma(&f, 1, &sub)));
                ControlFlow::Continue(())
            });
            for g2 in f.nonzero_elements() {
                let class1 = class1_is_deep_hole(&cfg, 3, g2, &fpoly, u).unwrap();
                assert_eq!(class1, !reduced.contains(&g2), "g2={g2} u={u}");
            }
        }
    }

    #[test]
    fn filter_is_necessary() {
        // a vector whose polynomial stays inside the evaluation space is a
        // codeword up to the last coordinate, hence never a deep hole
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let code = esgrs(&cfg, 3).unwrap();
        let table = SyndromeTable::build(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..30 {
            let g = Poly::new(
                &f,
                vec![
                    f.el(rng.gen()),
                    f.el(rng.gen()),
                    Fe::ZERO,
                    f.el(rng.gen()),
                ],
            )
            .unwrap();
            assert!(!vk_filter(&g, 3));
            for u in f.elements() {
                let vector = shape_vector(&cfg, &g, u).unwrap();
                assert!(table.error_distance(&vector).unwrap() <= 1);
                assert!(!table.is_deep_hole(&vector).unwrap());
            }
        }
    }

    #[test]
    fn extension_route_examples() {
        let cfg = example4_cfg();
        let f = cfg.field().clone();
        let code = esgrs(&cfg, 3).unwrap();
        let u: Vec<Fe> = [7u64, 10, 5, 5, 1, 4].iter().map(|&x| f.el(x)).collect();
        assert!(mds_extension_deep_hole_test(&code, &u).unwrap());
        // a codeword never extends the dimension
        let cw = code.encode(&[f.el(1), f.el(2), f.el(3)]).unwrap();
        assert!(!mds_extension_deep_hole_test(&code, &cw).unwrap());
    }
}
