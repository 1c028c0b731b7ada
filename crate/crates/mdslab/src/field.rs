//! Exact arithmetic in GF(p^m) for prime p and small m, plus univariate
//! polynomials over the field.
//!
//! Elements are stored in canonical integer encoding: the residue itself for
//! prime fields, and `sum c_i * p^i` for an extension element with coefficient
//! vector `(c_0, ..., c_{m-1})` modulo a fixed monic irreducible polynomial.
//! That encoding also fixes the enumeration order used by every search in the
//! crate.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Multiplication/addition lookup tables are built for fields up to this size.
const TABLE_LIMIT: u64 = 256;

/// A canonical field element: its integer encoding in `[0, q)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    #[inline]
    pub fn enc(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(p^m), with validated modulus and cached arithmetic
/// tables for small q.
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    /// Ascending coefficients of the monic irreducible modulus, length m+1.
    /// Empty for prime fields.
    modulus: Vec<u64>,
    add_tab: Vec<u32>,
    mul_tab: Vec<u32>,
    neg_tab: Vec<u32>,
    inv_tab: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.token())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Build GF(p^m). When `m > 1` and no modulus is given, the
    /// lexicographically smallest monic irreducible of degree m is chosen,
    /// so the representation is reproducible.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m < 1 {
            return Err(Error::BadInput("extension degree must be >= 1".into()));
        }
        let q = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or_else(|| {
            Error::TooLarge(format!("field size {p}^{m} overflows"))
        })?;
        if q > u32::MAX as u64 {
            return Err(Error::TooLarge(format!("field size {q} exceeds supported range")));
        }

        let modulus = if m == 1 {
            if modulus.is_some() {
                return Err(Error::BadInput(
                    "prime fields take no modulus polynomial".into(),
                ));
            }
            Vec::new()
        } else {
            match modulus {
                Some(coeffs) => {
                    if coeffs.len() != m as usize + 1 {
                        return Err(Error::BadInput(format!(
                            "modulus must have degree {m} (got {} coefficients)",
                            coeffs.len()
                        )));
                    }
                    if coeffs.iter().any(|&c| c >= p) {
                        return Err(Error::BadInput("modulus coefficients must lie in [0, p)".into()));
                    }
                    if coeffs[m as usize] != 1 {
                        return Err(Error::BadInput("modulus must be monic".into()));
                    }
                    if !poly_is_irreducible(coeffs, p) {
                        return Err(Error::ReducibleModulus { p });
                    }
                    coeffs.to_vec()
                }
                None => smallest_irreducible(p, m),
            }
        };

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            neg_tab: Vec::new(),
            inv_tab: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(Arc::new(field))
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Arc<Field>> {
        Field::new(p, 1, None)
    }

    /// GF(q) for a prime power q, with the default modulus for extensions.
    pub fn gf(q: u64) -> Result<Arc<Field>> {
        let (p, m) = factor_prime_power(q)
            .ok_or_else(|| Error::CompositeCharacteristic(q))?;
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients (ascending); empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Strict constructor: the encoding must already be canonical.
    pub fn element(&self, enc: u64) -> Result<Fe> {
        if enc < self.q {
            Ok(Fe(enc))
        } else {
            Err(Error::FieldMismatch(format!(
                "{enc} is not a canonical element encoding of {}",
                self.token()
            )))
        }
    }

    /// Total constructor: reduces the integer modulo q. For prime fields this
    /// is reduction mod p; for extensions it picks the element with encoding
    /// `i mod q`.
    pub fn el(&self, i: u64) -> Fe {
        Fe(i % self.q)
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(Fe)
    }

    /// Nonzero elements in enumeration order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.q).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if !self.add_tab.is_empty() {
            Fe(self.add_tab[(a.0 * self.q + b.0) as usize] as u64)
        } else if self.m == 1 {
            let s = a.0 + b.0;
            Fe(if s >= self.p { s - self.p } else { s })
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if !self.neg_tab.is_empty() {
            Fe(self.neg_tab[a.0 as usize] as u64)
        } else if self.m == 1 {
            Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let digits = self.decode(a);
            let neg: Vec<u64> = digits.iter().map(|&c| (self.p - c) % self.p).collect();
            self.encode(&neg)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if !self.mul_tab.is_empty() {
            Fe(self.mul_tab[(a.0 * self.q + b.0) as usize] as u64)
        } else if self.m == 1 {
            Fe((a.0 as u128 * b.0 as u128 % self.p as u128) as u64)
        } else {
            self.mul_slow(a, b)
        }
    }

    /// Multiplicative inverse by extended Euclid (polynomial version in
    /// extension fields).
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.inv_tab.is_empty() {
            return Ok(Fe(self.inv_tab[a.0 as usize] as u64));
        }
        if self.m == 1 {
            Ok(Fe(prime_inv(a.0, self.p)))
        } else {
            let digits = self.decode(a);
            let inv = poly_mod_inverse(&digits, &self.modulus, self.p);
            Ok(self.encode(&inv))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Text token used by the code file format.
    pub fn token(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("GF({}^{}; modulus={})", self.p, self.m, coeffs.join(","))
        }
    }

    /// Parse a `GF(p)` or `GF(p^m; modulus=c0,c1,...,cm)` token.
    pub fn parse_token(s: &str) -> Result<Arc<Field>> {
        let s = s.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad field token {s:?}")))?;
        match inner.split_once(';') {
            None => {
                let p: u64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field token {s:?}")))?;
                match inner.trim().split_once('^') {
                    None => Field::prime(p),
                    Some(_) => Err(Error::Parse(
                        "extension field token requires an explicit modulus".into(),
                    )),
                }
            }
            Some((pm, rest)) => {
                let (p_str, m_str) = pm
                    .trim()
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad field token {s:?}")))?;
                let p: u64 = p_str
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad characteristic in {s:?}")))?;
                let m: u32 = m_str
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad extension degree in {s:?}")))?;
                let coeffs_str = rest
                    .trim()
                    .strip_prefix("modulus=")
                    .ok_or_else(|| Error::Parse(format!("missing modulus in {s:?}")))?;
                let coeffs: Vec<u64> = coeffs_str
                    .split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad modulus coefficients in {s:?}")))?;
                Field::new(p, m, Some(&coeffs))
            }
        }
    }

    fn decode(&self, a: Fe) -> Vec<u64> {
        let mut digits = vec![0u64; self.m as usize];
        let mut v = a.0;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> Fe {
        let mut enc = 0u64;
        for &d in digits.iter().rev() {
            enc = enc * self.p + d % self.p;
        }
        Fe(enc)
    }

    fn add_slow(&self, a: Fe, b: Fe) -> Fe {
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let (da, db) = (self.decode(a), self.decode(b));
        let prod = poly_mul(&da, &db, self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut digits = vec![0u64; self.m as usize];
        digits[..rem.len()].copy_from_slice(&rem);
        self.encode(&digits)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q as u64 {
            for b in 0..q as u64 {
                let (s, m) = if self.m == 1 {
                    (((a + b) % self.p), (a * b % self.p))
                } else {
                    (
                        self.add_slow(Fe(a), Fe(b)).0,
                        self.mul_slow(Fe(a), Fe(b)).0,
                    )
                };
                add[(a * self.q + b) as usize] = s as u32;
                mul[(a * self.q + b) as usize] = m as u32;
            }
        }
        for a in 0..q as u64 {
            let n = if self.m == 1 {
                if a == 0 { 0 } else { self.p - a }
            } else {
                let digits = self.decode(Fe(a));
                let nd: Vec<u64> = digits.iter().map(|&c| (self.p - c) % self.p).collect();
                self.encode(&nd).0
            };
            neg[a as usize] = n as u32;
            if a != 0 {
                let v = if self.m == 1 {
                    prime_inv(a, self.p)
                } else {
                    let digits = self.decode(Fe(a));
                    self.encode(&poly_mod_inverse(&digits, &self.modulus, self.p)).0
                };
                inv[a as usize] = v as u32;
            }
        }
        self.add_tab = add;
        self.mul_tab = mul;
        self.neg_tab = neg;
        self.inv_tab = inv;
    }
}

/// Structural field identity check used by every multi-operand operation.
pub fn same_field(a: &Field, b: &Field) -> bool {
    a == b
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut m = 0;
            while v % p == 0 {
                v /= p;
                m += 1;
            }
            return if v == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn prime_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(p as i128)) as u64
}

// --- polynomial arithmetic over GF(p) on raw coefficient slices (ascending) ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a by the monic polynomial b.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * bc) % p) % p;
        }
        debug_assert_eq!(r[r.len() - 1], 0);
        poly_trim(&mut r);
    }
    r
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let mut bt: Vec<u64> = b.to_vec();
    poly_trim(&mut bt);
    let db = bt.len() - 1;
    let lead_inv = prime_inv(bt[db], p);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        let c = lead * lead_inv % p;
        quot[shift] = c;
        for (i, &bc) in bt.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (c * bc) % p) % p;
        }
        debug_assert_eq!(r[r.len() - 1], 0);
        poly_trim(&mut r);
    }
    poly_trim(&mut quot);
    (quot, r)
}

/// Inverse of a modulo the monic irreducible m, via extended polynomial Euclid.
fn poly_mod_inverse(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, p);
        let qs1 = poly_mul(&q, &s1, p);
        let s_new = poly_sub(&s0, &qs1, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    // r0 is a nonzero constant gcd; scale s0 by its inverse
    debug_assert_eq!(r0.len(), 1);
    let c = prime_inv(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
    poly_trim(&mut out);
    poly_rem(&out, m, p)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

/// Irreducibility by trial division against all monic polynomials of degree
/// at most deg/2.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // monic divisor candidates: d lower coefficients, counted in base p
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut cand = vec![0u64; d + 1];
            cand[d] = 1;
            let mut v = enc;
            for c in cand.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            if poly_rem(f, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over GF(p),
/// ordered by the base-p encoding of the non-leading coefficients.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let d = m as usize;
    let count = p.pow(m);
    for enc in 0..count {
        let mut cand = vec![0u64; d + 1];
        cand[d] = 1;
        let mut v = enc;
        for c in cand.iter_mut().take(d) {
            *c = v % p;
            v /= p;
        }
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

/// A univariate polynomial over one field, ascending coefficients with
/// trailing zeros stripped. The zero polynomial has no coefficients and its
/// degree is `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Fe>,
    field: Arc<Field>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let encs: Vec<u64> = self.coeffs.iter().map(|c| c.0).collect();
        write!(f, "Poly{encs:?}")
    }
}

impl Poly {
    pub fn new(field: &Arc<Field>, coeffs: Vec<Fe>) -> Result<Poly> {
        for &c in &coeffs {
            if !field.contains(c) {
                return Err(Error::FieldMismatch(format!(
                    "coefficient {c} outside {}",
                    field.token()
                )));
            }
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Poly {
            coeffs,
            field: Arc::clone(field),
        })
    }

    /// Convenience constructor from integer encodings (reduced mod q).
    pub fn from_ints(field: &Arc<Field>, encs: &[u64]) -> Poly {
        let coeffs = encs.iter().map(|&e| field.el(e)).collect();
        Poly::new(field, coeffs).expect("el() yields canonical elements")
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly {
            coeffs: Vec::new(),
            field: Arc::clone(field),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, a: Fe) -> Result<Fe> {
        if !self.field.contains(a) {
            return Err(Error::FieldMismatch(format!(
                "{a} is not an element of {}",
                self.field.token()
            )));
        }
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, a), c);
        }
        Ok(acc)
    }

    /// Membership in the k-dimensional space of polynomials of degree at most
    /// k whose x^{k-1} coefficient vanishes.
    pub fn in_vk(&self, k: usize) -> bool {
        assert!(k >= 2, "the space is only defined for k >= 2");
        self.degree().is_none_or(|d| d <= k) && self.coeff(k - 1).is_zero()
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch("polynomial addition across fields".into()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        Poly::new(&self.field, coeffs).expect("scaling preserves canonicity")
    }
}
