//! Exact arithmetic in prime fields `F_q` and extension fields `F_{q^n}`.
//!
//! Extension field elements are coefficient vectors over `F_q`, constant term
//! first, reduced modulo a monic irreducible polynomial. Addition is
//! coefficient-wise, so it coincides with the vector-space sum over `F_q`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("NotIrreducible: modulus is not a monic irreducible polynomial of degree {0}")]
    NotIrreducible(usize),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("FieldMismatch: {0}")]
    FieldMismatch(String),
}

/// Common interface used by the generic linear algebra in [`crate::linalg`].
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Canonical inclusion of a base-field residue.
    #[allow(clippy::wrong_self_convention)]
    fn from_base(&self, c: u32) -> Self::Elem;
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_q`. Residues are stored as `u32`; products go through `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q > u32::MAX as u64 || !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(Self { q: q as u32 })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.q as u64) as u32
    }

    /// Maps a signed integer into `[0, q)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a as u64 % self.q as u64;
        let mut acc = 1u64 % self.q as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.q as u64;
            }
            base = base * base % self.q as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.q)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + self.q as u64 - *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if (*a).is_multiple_of(self.q) {
            return None;
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (t0, t1) = (t1, t0 - k * t1);
        }
        Some(self.from_i64(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_base(&self, c: u32) -> u32 {
        c % self.q
    }
}

/// Dense univariate polynomial over `F_q`, constant term first, no trailing zeros.
type UPoly = Vec<u32>;

fn trim(p: &mut UPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn upoly_sub(fq: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let mut out: UPoly = (0..a.len().max(b.len()))
        .map(|i| fq.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

fn upoly_mul(fq: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let q = fq.order() as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % q;
        }
    }
    let mut out: UPoly = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

/// Returns `(quotient, remainder)`; `b` must be nonzero.
fn upoly_divrem(fq: &PrimeField, a: &[u32], b: &[u32]) -> (UPoly, UPoly) {
    let mut rem: UPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = fq.inv(&b[db]).expect("nonzero leading coefficient");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u32; rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = fq.mul(rem.last().unwrap(), &lead_inv);
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = fq.sub(&rem[shift + i], &fq.mul(&c, &bc));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn upoly_gcd(fq: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = upoly_divrem(fq, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// `base^e mod modulus` by square-and-multiply.
fn upoly_powmod(fq: &PrimeField, base: &[u32], mut e: u64, modulus: &[u32]) -> UPoly {
    let mut acc: UPoly = vec![1];
    let (_, mut b) = upoly_divrem(fq, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly_divrem(fq, &upoly_mul(fq, &acc, &b), modulus).1;
        }
        b = upoly_divrem(fq, &upoly_mul(fq, &b, &b), modulus).1;
        e >>= 1;
    }
    acc
}

/// Irreducibility test for a monic polynomial of degree `n`: no factor of degree
/// `d <= n/2`, checked as `gcd(x^{q^d} - x, f) = 1` for each such `d`.
pub fn is_irreducible(fq: &PrimeField, poly: &[u32]) -> bool {
    let mut f = poly.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let n = f.len() - 1;
    let x: UPoly = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        // xp <- xp^q mod f, so after d steps xp = x^{q^d}
        xp = upoly_powmod(fq, &xp, fq.order() as u64, &f);
        let g = upoly_gcd(fq, &f, &upoly_sub(fq, &xp, &x));
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `n` over `F_q`, ordering candidates
/// by the integer `c_0 + c_1 q + ... + c_{n-1} q^{n-1}` (most significant
/// coefficient compared first). Returned as `n + 1` coefficients, constant first.
pub fn find_irreducible(fq: &PrimeField, n: usize) -> Vec<u32> {
    assert!(n >= 1, "extension degree must be positive");
    let q = fq.order();
    let mut coeffs = vec![0u32; n];
    loop {
        let mut cand = coeffs.clone();
        cand.push(1);
        if is_irreducible(fq, &cand) {
            return cand;
        }
        // increment, least significant digit = constant term
        let mut i = 0;
        loop {
            assert!(i < n, "an irreducible of every degree exists");
            coeffs[i] += 1;
            if coeffs[i] == q {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// An element of `F_{q^n}`: `n` residues mod `q`, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felem(pub Vec<u32>);

impl Felem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Felem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Serialized field descriptor `{"q": .., "n": .., "modulus": [c0, .., 1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// The extension field `F_{q^n} = F_q[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeField,
    n: usize,
    modulus: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// Second operand of [`ExtField::arith`].
#[derive(Debug, Clone)]
pub enum Operand<'a> {
    Elem(&'a Felem),
    Exponent(u64),
    None,
}

impl ExtField {
    /// `F_{q^n}` with the deterministic least irreducible modulus.
    pub fn new(q: u64, n: usize) -> Result<Self, FieldError> {
        let base = PrimeField::new(q)?;
        let modulus = find_irreducible(&base, n);
        Ok(Self { base, n, modulus })
    }

    /// `F_{q^n}` with an explicit modulus (constant term first, monic).
    pub fn with_modulus(q: u64, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let base = PrimeField::new(q)?;
        let n = modulus.len().saturating_sub(1);
        if n == 0
            || modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= base.order())
            || !is_irreducible(&base, &modulus)
        {
            return Err(FieldError::NotIrreducible(n));
        }
        Ok(Self { base, n, modulus })
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self, FieldError> {
        match (&d.modulus, d.n) {
            (Some(m), n) => {
                let f = Self::with_modulus(d.q, m.clone())?;
                if n.is_some_and(|n| n != f.n) {
                    return Err(FieldError::NotIrreducible(n.unwrap()));
                }
                Ok(f)
            }
            (None, n) => Self::new(d.q, n.unwrap_or(1)),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            q: self.base.order() as u64,
            n: Some(self.n),
            modulus: Some(self.modulus.clone()),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q^n`, saturating at `u64::MAX`.
    pub fn order(&self) -> u64 {
        (self.q() as u64).saturating_pow(self.n as u32)
    }

    pub fn contains(&self, a: &Felem) -> bool {
        a.0.len() == self.n && a.0.iter().all(|&c| c < self.q())
    }

    pub fn elem(&self, coeffs: Vec<u32>) -> Result<Felem, FieldError> {
        let e = Felem(coeffs);
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(FieldError::FieldMismatch(format!(
                "element {e:?} is not in F_{}^{}",
                self.q(),
                self.n
            )))
        }
    }

    /// Generator class `x` of the quotient ring (equals the constant when `n = 1`
    /// reduces `x` modulo a linear modulus).
    pub fn primitive_x(&self) -> Felem {
        let (_, r) = upoly_divrem(&self.base, &[0, 1], &self.modulus);
        self.from_upoly(r)
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_upoly(&self, mut p: UPoly) -> Felem {
        p.resize(self.n, 0);
        Felem(p)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Felem {
        Felem((0..self.n).map(|_| self.base.random(rng)).collect())
    }

    /// Enumerates all `q^n` elements; intended for small fields only.
    pub fn elements(&self) -> impl Iterator<Item = Felem> + '_ {
        let total = self.order();
        (0..total).map(move |mut k| {
            let q = self.q() as u64;
            Felem(
                (0..self.n)
                    .map(|_| {
                        let c = (k % q) as u32;
                        k /= q;
                        c
                    })
                    .collect(),
            )
        })
    }

    pub fn pow(&self, a: &Felem, mut e: u64) -> Felem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Checked arithmetic entry point: validates membership before operating.
    pub fn arith(&self, op: ArithOp, a: &Felem, b: Operand<'_>) -> Result<Felem, FieldError> {
        let check = |x: &Felem| {
            if self.contains(x) {
                Ok(())
            } else {
                Err(FieldError::FieldMismatch(format!(
                    "operand {x:?} does not belong to F_{}^{}",
                    self.q(),
                    self.n
                )))
            }
        };
        check(a)?;
        let other = || match b {
            Operand::Elem(x) => check(x).map(|_| x),
            _ => Err(FieldError::FieldMismatch("missing element operand".into())),
        };
        match op {
            ArithOp::Add => Ok(Field::add(self, a, other()?)),
            ArithOp::Sub => Ok(Field::sub(self, a, other()?)),
            ArithOp::Mul => Ok(Field::mul(self, a, other()?)),
            ArithOp::Inv => Field::inv(self, a).ok_or(FieldError::DivisionByZero),
            ArithOp::Pow => match b {
                Operand::Exponent(e) => Ok(self.pow(a, e)),
                _ => Err(FieldError::FieldMismatch("pow needs an exponent".into())),
            },
        }
    }
}

impl Field for ExtField {
    type Elem = Felem;

    fn zero(&self) -> Felem {
        Felem(vec![0; self.n])
    }

    fn one(&self) -> Felem {
        let mut v = vec![0; self.n];
        v[0] = 1;
        Felem(v)
    }

    fn add(&self, a: &Felem, b: &Felem) -> Felem {
        Felem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }

    fn sub(&self, a: &Felem, b: &Felem) -> Felem {
        Felem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.sub(x, y)).collect())
    }

    fn neg(&self, a: &Felem) -> Felem {
        Felem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }

    fn mul(&self, a: &Felem, b: &Felem) -> Felem {
        if self.n == 1 {
            return Felem(vec![self.base.mul(&a.0[0], &b.0[0])]);
        }
        let prod = upoly_mul(&self.base, &a.0, &b.0);
        let (_, r) = upoly_divrem(&self.base, &prod, &self.modulus);
        self.from_upoly(r)
    }

    fn inv(&self, a: &Felem) -> Option<Felem> {
        if self.is_zero(a) {
            return None;
        }
        if self.n == 1 {
            return self.base.inv(&a.0[0]).map(|v| Felem(vec![v]));
        }
        // extended Euclid: track s with s*a = r (mod modulus)
        let fq = &self.base;
        let mut r0: UPoly = self.modulus.clone();
        let mut r1: UPoly = a.0.clone();
        trim(&mut r1);
        let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quo, rem) = upoly_divrem(fq, &r0, &r1);
            let s2 = upoly_sub(fq, &s0, &upoly_mul(fq, &quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = fq.inv(&r0[0])?;
        let s: UPoly = s0.iter().map(|v| fq.mul(v, &c)).collect();
        let (_, s) = upoly_divrem(fq, &s, &self.modulus);
        Some(self.from_upoly(s))
    }

    fn is_zero(&self, a: &Felem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn from_base(&self, c: u32) -> Felem {
        let mut v = vec![0; self.n];
        v[0] = c % self.q();
        Felem(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trial_division_prime(q: u64) -> bool {
        q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
    }

    #[test]
    fn prime_field_construction() {
        assert_eq!(PrimeField::new(2).unwrap().order(), 2);
        assert_eq!(PrimeField::new(4), Err(FieldError::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert!(trial_division_prime(7919));
        assert_eq!(PrimeField::new(7919).unwrap().order(), 7919);
        for q in 2..200 {
            assert_eq!(PrimeField::new(q).is_ok(), trial_division_prime(q), "q = {q}");
        }
    }

    /// Brute-force oracle: a monic polynomial of degree <= 3 is irreducible iff it
    /// has no root; for higher degrees check all products of lower-degree monics.
    fn brute_irreducible(q: u32, poly: &[u32]) -> bool {
        let fq = PrimeField::new(q as u64).unwrap();
        let n = poly.len() - 1;
        for d in 1..=n / 2 {
            for k in 0..(q as u64).pow(d as u32) {
                let mut cand: Vec<u32> = (0..d)
                    .map(|i| ((k / (q as u64).pow(i as u32)) % q as u64) as u32)
                    .collect();
                cand.push(1);
                let (_, r) = upoly_divrem(&fq, poly, &cand);
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(find_irreducible(&f2, 1), vec![0, 1]);
        assert_eq!(find_irreducible(&f2, 2), vec![1, 1, 1]);
        assert_eq!(find_irreducible(&f3, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(&f2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn irreducibility_agrees_with_trial_division() {
        for q in [2u32, 3, 5] {
            let fq = PrimeField::new(q as u64).unwrap();
            for n in 1..=4usize {
                if (q as u64).pow(n as u32) > 700 {
                    continue;
                }
                for k in 0..(q as u64).pow(n as u32) {
                    let mut p: Vec<u32> = (0..n)
                        .map(|i| ((k / (q as u64).pow(i as u32)) % q as u64) as u32)
                        .collect();
                    p.push(1);
                    assert_eq!(is_irreducible(&fq, &p), brute_irreducible(q, &p), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn f4_multiplication() {
        let f4 = ExtField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let alpha = Felem(vec![0, 1]);
        assert_eq!(f4.mul(&alpha, &alpha), Felem(vec![1, 1]));
    }

    #[test]
    fn checked_arith() {
        let f3 = ExtField::new(3, 1).unwrap();
        let two = Felem(vec![2]);
        assert_eq!(f3.arith(ArithOp::Add, &two, Operand::Elem(&two)), Ok(Felem(vec![1])));
        let one = f3.one();
        assert_eq!(f3.arith(ArithOp::Inv, &one, Operand::None), Ok(one.clone()));
        assert_eq!(
            f3.arith(ArithOp::Inv, &f3.zero(), Operand::None),
            Err(FieldError::DivisionByZero)
        );
        let foreign = Felem(vec![1, 0]);
        assert!(matches!(
            f3.arith(ArithOp::Mul, &one, Operand::Elem(&foreign)),
            Err(FieldError::FieldMismatch(_))
        ));
        assert_eq!(f3.arith(ArithOp::Pow, &two, Operand::Exponent(3)), Ok(two.clone()));
    }

    #[test]
    fn explicit_modulus_validation() {
        assert!(ExtField::with_modulus(2, vec![1, 0, 1]).is_err()); // (x+1)^2
        assert!(ExtField::with_modulus(2, vec![1, 1, 1]).is_ok());
        assert!(ExtField::with_modulus(3, vec![1, 0, 2]).is_err()); // not monic
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 5] {
            for n in 1..=3 {
                let f = ExtField::new(q, n).unwrap();
                for _ in 0..1000 {
                    let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                    assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
                    assert_eq!(f.add(&a, &f.add(&b, &c)), f.add(&f.add(&a, &b), &c));
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    assert_eq!(f.add(&a, &b), f.add(&b, &a));
                    assert_eq!(
                        f.mul(&a, &f.add(&b, &c)),
                        f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                    );
                    assert_eq!(f.add(&f.sub(&a, &b), &b), a);
                    if !f.is_zero(&a) {
                        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_exhaustive() {
        for q in [2u64, 3, 5, 7] {
            for n in 1..=6 {
                let f = ExtField::new(q, n).unwrap();
                if f.order() > 64 {
                    continue;
                }
                for a in f.elements() {
                    assert_eq!(f.pow(&a, f.order()), a, "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn degree_one_matches_integers() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let f = ExtField::new(q, 1).unwrap();
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    let (x, y) = (Felem(vec![a]), Felem(vec![b]));
                    let q32 = q as u32;
                    assert_eq!(f.add(&x, &y).0[0], (a + b) % q32);
                    assert_eq!(f.sub(&x, &y).0[0], (a + q32 - b) % q32);
                    assert_eq!(f.mul(&x, &y).0[0], (a * b) % q32);
                }
                if a != 0 {
                    let inv = f.inv(&Felem(vec![a])).unwrap().0[0];
                    assert_eq!(a * inv % q as u32, 1);
                }
            }
        }
    }
}
