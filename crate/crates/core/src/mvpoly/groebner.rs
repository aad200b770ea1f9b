//! Buchberger's algorithm producing the reduced Gröbner basis, with optional
//! cofactor tracking so that every basis element carries a certificate
//! `g = sum_i c_i f_i` in terms of the input generators.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ff::Field;

use super::{coprime, degree, divides, lcm, quotient, MonomialOrder, MvPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Aborted: exceeded {0} S-polynomial reductions")]
    Aborted(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub order: MonomialOrder,
    /// Cap on S-polynomial reductions before giving up.
    pub max_reductions: u64,
    pub track_cofactors: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        Self { order: MonomialOrder::Grevlex, max_reductions: 1_000_000, track_cofactors: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Monic, sorted by descending leading monomial.
    pub basis: Vec<MvPoly>,
    /// `cofactors[k][i]` multiplies input generator `i` in the certificate of `basis[k]`.
    pub cofactors: Option<Vec<Vec<MvPoly>>>,
    /// S-polynomial reductions performed.
    pub reductions: u64,
}

impl GroebnerBasis {
    /// The basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_trivial(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit()
    }
}

#[derive(Debug, Clone)]
struct Tracked {
    poly: MvPoly,
    cof: Option<Vec<MvPoly>>,
}

impl Tracked {
    fn scale(&self, ring: &PolyRing, c: u32) -> Tracked {
        Tracked {
            poly: ring.scale(&self.poly, c),
            cof: self.cof.as_ref().map(|v| v.iter().map(|p| ring.scale(p, c)).collect()),
        }
    }

    /// `self + c * mono * other`
    fn add_scaled_shifted(&mut self, ring: &PolyRing, c: u32, mono: &[u16], other: &Tracked) {
        self.poly = ring.add_scaled_shifted(&self.poly, c, mono, &other.poly);
        if let (Some(mine), Some(theirs)) = (self.cof.as_mut(), other.cof.as_ref()) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a = ring.add_scaled_shifted(a, c, mono, b);
            }
        }
    }

    fn monic(&self, ring: &PolyRing) -> Tracked {
        match self.poly.lt() {
            Some((_, c)) => self.scale(ring, ring.field().inv(&c).expect("nonzero")),
            None => self.clone(),
        }
    }
}

/// Full reduction of `t` modulo `basis` (every term, not just the leading one).
fn reduce(ring: &PolyRing, mut t: Tracked, basis: &[Tracked], skip: Option<usize>) -> Tracked {
    let f = ring.field();
    let mut done: Vec<(super::Monomial, u32)> = Vec::new();
    while let Some((lm, lc)) = t.poly.lt().map(|(m, c)| (m.clone(), c)) {
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .find(|(_, g)| g.poly.lt().is_some_and(|(gm, _)| divides(gm, &lm)));
        match divisor {
            Some((_, g)) => {
                let (gm, gc) = g.poly.lt().unwrap();
                let c = f.neg(&f.mul(&lc, &f.inv(&gc).expect("nonzero")));
                let shift = quotient(&lm, gm);
                t.add_scaled_shifted(ring, c, &shift, g);
            }
            None => {
                // move the leading term to the remainder
                done.push(t.poly.terms.remove(0));
            }
        }
    }
    // `t.poly + done` equals the tracked combination throughout
    Tracked { poly: MvPoly { terms: done }, cof: t.cof }
}

fn s_polynomial(ring: &PolyRing, a: &Tracked, b: &Tracked) -> Tracked {
    let f = ring.field();
    let (am, ac) = a.poly.lt().unwrap();
    let (bm, bc) = b.poly.lt().unwrap();
    let l = lcm(am, bm);
    let zero_cof = a.cof.as_ref().map(|v| vec![ring.zero(); v.len()]);
    let mut s = Tracked { poly: ring.zero(), cof: zero_cof };
    s.add_scaled_shifted(ring, f.inv(&ac).unwrap(), &quotient(&l, am), a);
    s.add_scaled_shifted(ring, f.neg(&f.inv(&bc).unwrap()), &quotient(&l, bm), b);
    s
}

fn unit_result(ring: &PolyRing, t: &Tracked, reductions: u64) -> GroebnerBasis {
    let t = t.monic(ring);
    GroebnerBasis { basis: vec![t.poly], cofactors: t.cof.map(|c| vec![c]), reductions }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, in the ring's
/// variables, under `opts.order`. Pairs with coprime leading monomials are
/// skipped; pairs are processed smallest-lcm first.
pub fn buchberger(ring: &PolyRing, gens: &[MvPoly], opts: GroebnerOptions) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring.with_order(opts.order);
    let k = gens.len();
    let mut work: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| Tracked {
            poly: ring.adopt(g),
            cof: opts.track_cofactors.then(|| {
                (0..k).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()
            }),
        })
        .filter(|t| !t.poly.is_zero())
        .collect();

    if work.is_empty() {
        return Ok(GroebnerBasis {
            basis: Vec::new(),
            cofactors: opts.track_cofactors.then(Vec::new),
            reductions: 0,
        });
    }
    if let Some(t) = work.iter().find(|t| t.poly.is_unit()) {
        return Ok(unit_result(&ring, t, 0));
    }

    let mut basis: Vec<Tracked> = Vec::new();
    let mut reductions = 0u64;
    // seed: reduce each generator against those already accepted
    for t in work.drain(..) {
        let r = reduce(&ring, t, &basis, None);
        if r.poly.is_zero() {
            continue;
        }
        let r = r.monic(&ring);
        if r.poly.is_unit() {
            return Ok(unit_result(&ring, &r, reductions));
        }
        basis.push(r);
    }

    let mut pairs: BTreeSet<(u32, Vec<u16>, usize, usize)> = BTreeSet::new();
    let order = opts.order;
    let pair_key = |basis: &[Tracked], i: usize, j: usize| {
        let l = lcm(basis[i].poly.lt().unwrap().0, basis[j].poly.lt().unwrap().0);
        (degree(&l), l, i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&basis, i, j));
        }
    }

    // smallest lcm under the monomial order, degree as the primary key
    while let Some(next) = pairs
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| order.cmp(&a.1, &b.1)).then((a.2, a.3).cmp(&(b.2, b.3))))
        .cloned()
    {
        pairs.remove(&next);
        let (_, _, i, j) = next;
        let (mi, mj) = (basis[i].poly.lt().unwrap().0, basis[j].poly.lt().unwrap().0);
        if coprime(mi, mj) {
            continue;
        }
        reductions += 1;
        if reductions > opts.max_reductions {
            return Err(GroebnerError::Aborted(opts.max_reductions));
        }
        let s = s_polynomial(&ring, &basis[i], &basis[j]);
        let r = reduce(&ring, s, &basis, None);
        if r.poly.is_zero() {
            continue;
        }
        let r = r.monic(&ring);
        if r.poly.is_unit() {
            return Ok(unit_result(&ring, &r, reductions));
        }
        basis.push(r);
        let n = basis.len() - 1;
        for i in 0..n {
            pairs.insert(pair_key(&basis, i, n));
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Tracked> = Vec::new();
    for (idx, t) in basis.iter().enumerate() {
        let lm = t.poly.lt().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(o, other)| {
            let om = other.poly.lt().unwrap().0;
            o != idx && divides(om, lm) && (om != lm || o < idx)
        });
        if !redundant {
            keep.push(t.clone());
        }
    }
    // inter-reduce
    for idx in 0..keep.len() {
        let t = keep[idx].clone();
        keep[idx] = reduce(&ring, t, &keep, Some(idx)).monic(&ring);
    }
    keep.sort_by(|a, b| order.cmp(b.poly.lt().unwrap().0, a.poly.lt().unwrap().0));

    let cofactors = opts
        .track_cofactors
        .then(|| keep.iter().map(|t| t.cof.clone().expect("tracked")).collect());
    Ok(GroebnerBasis { basis: keep.into_iter().map(|t| t.poly).collect(), cofactors, reductions })
}

/// Checks `basis[k] = sum_i cofactors[k][i] * gens[i]` for every `k`.
pub fn verify_certificate(ring: &PolyRing, gens: &[MvPoly], gb: &GroebnerBasis) -> bool {
    let Some(cofs) = &gb.cofactors else {
        return false;
    };
    let gens: Vec<MvPoly> = gens.iter().map(|g| ring.adopt(g)).collect();
    gb.basis.iter().zip(cofs).all(|(g, cs)| {
        cs.len() == gens.len() && {
            let combo = cs
                .iter()
                .zip(&gens)
                .fold(ring.zero(), |acc, (c, f)| ring.add(&acc, &ring.mul(&ring.adopt(c), f)));
            combo == ring.adopt(g)
        }
    })
}
