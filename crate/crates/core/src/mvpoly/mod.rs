//! Multivariate polynomials over a prime field, reduced Gröbner bases, and the
//! ideal of code-coefficient constraints attached to a (network, target) pair.

mod groebner;
mod ideal;

pub use groebner::{buchberger, verify_certificate, GroebnerBasis, GroebnerError, GroebnerOptions};
pub use ideal::{
    evaluate_at_code, pin, solvable, solvable_with, symbolic_transfer, IdealError, IdealJ,
    Indeterminate, SolvabilityReport, Verdict,
};

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::ff::{Field, PrimeField};

/// Exponent vector over the ring's ordered variable list.
pub type Monomial = Vec<u16>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Lexicographic with `x_0 > x_1 > ...`.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

pub fn degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// `b / a`, assuming `a | b`.
fn quotient(b: &[u16], a: &[u16]) -> Monomial {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// A polynomial with terms sorted in descending monomial order and no zero
/// coefficients. The order is fixed by the [`PolyRing`] that built it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MvPoly {
    terms: Vec<(Monomial, u32)>,
}

impl MvPoly {
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial and coefficient.
    pub fn lt(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }
}

/// `F_q[x_0, .., x_{k-1}]` with a monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, nvars: usize, order: MonomialOrder) -> Self {
        Self { field, nvars, order }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self { order, ..self.clone() }
    }

    pub fn zero(&self) -> MvPoly {
        MvPoly::default()
    }

    pub fn constant(&self, c: u32) -> MvPoly {
        let c = self.field.from_base(c);
        if c == 0 {
            return self.zero();
        }
        MvPoly { terms: vec![(vec![0; self.nvars], c)] }
    }

    pub fn one(&self) -> MvPoly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> MvPoly {
        let mut m = vec![0; self.nvars];
        m[i] = 1;
        MvPoly { terms: vec![(m, 1)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, u32)>) -> MvPoly {
        let mut terms: Vec<(Monomial, u32)> = terms.into_iter().collect();
        assert!(terms.iter().all(|(m, _)| m.len() == self.nvars), "monomial arity");
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = self.field.from_base(c);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        MvPoly { terms: out }
    }

    /// Re-sorts a polynomial built under another order.
    pub fn adopt(&self, p: &MvPoly) -> MvPoly {
        self.from_terms(p.terms.iter().cloned())
    }

    fn merge(&self, p: &MvPoly, q: &MvPoly, qscale: u32, qshift: Option<&[u16]>) -> MvPoly {
        let f = &self.field;
        let shifted = |m: &Monomial| -> Monomial {
            match qshift {
                Some(s) => m.iter().zip(s).map(|(a, b)| a + b).collect(),
                None => m.clone(),
            }
        };
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let (mut i, mut j) = (0, 0);
        let mut qhead: Option<Monomial> = q.terms.first().map(|t| shifted(&t.0));
        while i < p.terms.len() || j < q.terms.len() {
            let ord = match (p.terms.get(i), &qhead) {
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((pm, _)), Some(qm)) => self.order.cmp(pm, qm),
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(p.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = f.mul(&q.terms[j].1, &qscale);
                    out.push((qhead.take().unwrap(), c));
                    j += 1;
                    qhead = q.terms.get(j).map(|t| shifted(&t.0));
                }
                Ordering::Equal => {
                    let c = f.add(&p.terms[i].1, &f.mul(&q.terms[j].1, &qscale));
                    let m = qhead.take().unwrap();
                    if c != 0 {
                        out.push((m, c));
                    }
                    i += 1;
                    j += 1;
                    qhead = q.terms.get(j).map(|t| shifted(&t.0));
                }
            }
        }
        MvPoly { terms: out }
    }

    pub fn add(&self, p: &MvPoly, q: &MvPoly) -> MvPoly {
        self.merge(p, q, 1, None)
    }

    pub fn sub(&self, p: &MvPoly, q: &MvPoly) -> MvPoly {
        self.merge(p, q, self.field.neg(&1), None)
    }

    pub fn neg(&self, p: &MvPoly) -> MvPoly {
        self.scale(p, self.field.neg(&1))
    }

    pub fn scale(&self, p: &MvPoly, c: u32) -> MvPoly {
        let c = self.field.from_base(c);
        if c == 0 {
            return self.zero();
        }
        MvPoly { terms: p.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, &c))).collect() }
    }

    /// `p + c * mono * q`.
    pub fn add_scaled_shifted(&self, p: &MvPoly, c: u32, mono: &[u16], q: &MvPoly) -> MvPoly {
        if c == 0 || q.is_zero() {
            return p.clone();
        }
        self.merge(p, q, c, Some(mono))
    }

    pub fn mul_term(&self, p: &MvPoly, mono: &[u16], c: u32) -> MvPoly {
        self.add_scaled_shifted(&self.zero(), c, mono, p)
    }

    pub fn mul(&self, p: &MvPoly, q: &MvPoly) -> MvPoly {
        let (small, big) = if p.len() <= q.len() { (p, q) } else { (q, p) };
        small
            .terms
            .iter()
            .fold(self.zero(), |acc, (m, c)| self.add_scaled_shifted(&acc, *c, m, big))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, p: &MvPoly) -> MvPoly {
        match p.lt() {
            Some((_, c)) => self.scale(p, self.field.inv(&c).expect("nonzero leading coefficient")),
            None => p.clone(),
        }
    }

    /// Substitutes `values[i]` for every variable with `Some` value; the remaining
    /// variables keep their relative order in `target`.
    pub fn substitute(&self, p: &MvPoly, values: &[Option<u32>], target: &PolyRing) -> MvPoly {
        let f = &self.field;
        target.from_terms(p.terms.iter().map(|(m, c)| {
            let mut coeff = *c;
            let mut mono = Vec::with_capacity(target.nvars);
            for (i, &e) in m.iter().enumerate() {
                match values[i] {
                    Some(v) => coeff = f.mul(&coeff, &f.pow(v, e as u64)),
                    None => mono.push(e),
                }
            }
            (mono, coeff)
        }))
    }

    /// Evaluates at a point of `K^k` for any field `K` containing `F_q`.
    pub fn eval<K: Field>(&self, p: &MvPoly, field: &K, point: &[K::Elem]) -> K::Elem {
        p.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let mut t = field.from_base(*c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[i]);
                }
            }
            field.add(&acc, &t)
        })
    }

    /// Canonical text form: `c*x[..]^e*x[..]^e + ...`, descending terms.
    pub fn format(&self, p: &MvPoly, names: &[String]) -> String {
        if p.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write!(out, "{c}").unwrap();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    write!(out, "*{}^{e}", names[i]).unwrap();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64, n: usize, order: MonomialOrder) -> PolyRing {
        PolyRing::new(PrimeField::new(q).unwrap(), n, order)
    }

    #[test]
    fn grevlex_and_lex_orders() {
        let g = MonomialOrder::Grevlex;
        // x0*x2 vs x1^2 (same degree): grevlex compares last variable, smaller wins
        assert_eq!(g.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(g.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }

    #[test]
    fn arithmetic_identities() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let (x, y) = (r.var(0), r.var(1));
        let p = r.add(&r.mul(&x, &y), &r.constant(2));
        let q = r.sub(&x, &r.one());
        let pq = r.mul(&p, &q);
        assert_eq!(r.mul(&q, &p), pq);
        assert_eq!(r.sub(&pq, &pq), r.zero());
        // (x+1)^3 = x^3 + 1 in characteristic 3
        let xp1 = r.add(&x, &r.one());
        let cube = r.mul(&xp1, &r.mul(&xp1, &xp1));
        assert_eq!(cube, r.add(&r.mul(&x, &r.mul(&x, &x)), &r.one()));
        assert_eq!(r.eval(&pq, r.field(), &[1, 2]), 0);
    }

    #[test]
    fn formatting() {
        let r = ring(2, 2, MonomialOrder::Grevlex);
        let names = vec!["x[A,0,1]".to_owned(), "x[B,1,0]".to_owned()];
        let p = r.add(&r.mul(&r.var(0), &r.var(1)), &r.one());
        assert_eq!(r.format(&p, &names), "1*x[A,0,1]^1*x[B,1,0]^1 + 1");
        assert_eq!(r.format(&r.zero(), &names), "0");
    }
}
