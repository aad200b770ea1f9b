//! Targets up to equivalence: `T ~ Q (I P) Π` with `Q` invertible and `Π` a
//! column permutation, and the classes that decide which construction applies.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::code::TargetMatrix;
use crate::ff::{Field, PrimeField};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("RankDeficient: no invertible {0}-column subset")]
    RankDeficient(usize),
    #[error("NotBinary: target lives over F_{0}")]
    NotBinary(u32),
    #[error("InvalidShape: need 1 < l < s, got l = {l}, s = {s}")]
    InvalidShape { l: usize, s: usize },
    #[error("AllOnesColumnVector: T ~ (I 1) with a single extra column admits no zero")]
    AllOnesColumnVector,
    #[error("NotInClass: target is not equivalent to (I u) with u a unit column")]
    NotInClass,
}

/// A witness `T = Q (I P) Π`. The permutation is stored as `perm`, where
/// column `k` of `Q (I P)` is column `perm[k]` of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub q: Matrix<u32>,
    pub p: Matrix<u32>,
    pub perm: Vec<usize>,
}

#[derive(Serialize)]
pub struct EquivalenceJson {
    #[serde(rename = "Q")]
    q: Vec<Vec<u32>>,
    #[serde(rename = "Pi")]
    pi: Vec<usize>,
    #[serde(rename = "P")]
    p: Vec<Vec<u32>>,
}

impl Equivalence {
    /// `Q (I P) Π` as an `l x s` matrix.
    pub fn reconstruct(&self, fq: &PrimeField) -> Matrix<u32> {
        let l = self.q.rows();
        let ip = linalg::identity(fq, l).hcat(&self.p);
        let w = linalg::mul(fq, &self.q, &ip);
        let mut out = Matrix::filled(l, self.perm.len(), 0);
        for (k, &c) in self.perm.iter().enumerate() {
            for i in 0..l {
                out.set(i, c, *w.get(i, k));
            }
        }
        out
    }

    pub fn reconstructs(&self, t: &TargetMatrix) -> bool {
        self.reconstruct(t.field()) == *t.matrix()
    }

    pub fn p_has_zero(&self) -> bool {
        (0..self.p.rows()).any(|i| self.p.row(i).contains(&0))
    }

    pub fn to_json_value(&self) -> EquivalenceJson {
        EquivalenceJson { q: self.q.to_rows(), pi: self.perm.clone(), p: self.p.to_rows() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    IdentityLike(Equivalence),
    SumLike(Equivalence),
    AllUnits(Equivalence),
    HasZero(Equivalence),
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::IdentityLike(_) => "IdentityLike",
            Classification::SumLike(_) => "SumLike",
            Classification::AllUnits(_) => "AllUnits",
            Classification::HasZero(_) => "HasZero",
        }
    }

    pub fn witness(&self) -> &Equivalence {
        match self {
            Classification::IdentityLike(w)
            | Classification::SumLike(w)
            | Classification::AllUnits(w)
            | Classification::HasZero(w) => w,
        }
    }
}

/// The witness with identity block on `cols` (ascending), if `T_cols` is invertible.
fn witness_for(t: &TargetMatrix, cols: &[usize]) -> Option<Equivalence> {
    let fq = t.field();
    let q = t.matrix().select_columns(cols);
    let qinv = linalg::inverse(fq, &q)?;
    let rest: Vec<usize> = (0..t.s()).filter(|c| !cols.contains(c)).collect();
    let p = if rest.is_empty() {
        Matrix::filled(t.l(), 0, 0)
    } else {
        linalg::mul(fq, &qinv, &t.matrix().select_columns(&rest))
    };
    let perm = cols.iter().chain(&rest).copied().collect();
    Some(Equivalence { q, p, perm })
}

fn invertible_subsets(t: &TargetMatrix) -> impl Iterator<Item = Equivalence> + '_ {
    (0..t.s()).combinations(t.l()).filter_map(move |cols| witness_for(t, &cols))
}

/// Identity block on the lexicographically first invertible column subset.
pub fn canonicalize(t: &TargetMatrix) -> Result<Equivalence, EquivError> {
    invertible_subsets(t).next().ok_or(EquivError::RankDeficient(t.l()))
}

pub fn classify(t: &TargetMatrix) -> Result<Classification, EquivError> {
    let canonical = canonicalize(t)?;
    if t.l() == t.s() {
        return Ok(Classification::IdentityLike(canonical));
    }
    if t.l() == 1 {
        return Ok(Classification::SumLike(canonical));
    }
    if let Some(w) = invertible_subsets(t).find(|w| !w.p_has_zero()) {
        return Ok(Classification::AllUnits(w));
    }
    Ok(Classification::HasZero(canonical))
}

/// Over `F_2` with `1 < l < s`, an equivalent form `(I P)` whose `P` has a zero.
pub fn binary_zero_transform(t: &TargetMatrix) -> Result<Equivalence, EquivError> {
    let fq = t.field();
    if fq.order() != 2 {
        return Err(EquivError::NotBinary(fq.order()));
    }
    let (l, s) = (t.l(), t.s());
    if l <= 1 || l >= s {
        return Err(EquivError::InvalidShape { l, s });
    }
    let base = canonicalize(t)?;
    if base.p_has_zero() {
        return Ok(base);
    }
    if s - l == 1 {
        return Err(EquivError::AllOnesColumnVector);
    }
    // Q' is the identity with its last column set to all-ones; Q'^2 = I over F_2
    // and Q' maps the all-ones column to e_l.
    let qp = Matrix::from_fn(l, l, |i, j| u32::from(i == j || j == l - 1));
    let q = linalg::mul(fq, &base.q, &qp);
    // (Q' | Q'P̄) with columns l and l+1 swapped is (I P)
    let mut p = Matrix::filled(l, s - l, 0);
    for i in 0..l {
        p.set(i, 0, 1);
        for j in 1..s - l {
            p.set(i, j, u32::from(i == l - 1));
        }
    }
    let mut perm = base.perm.clone();
    perm.swap(l - 1, l);
    Ok(Equivalence { q, p, perm })
}

/// For `l = s - 1`: `T = Q (I u')` with `Q` the first `s - 1` columns of `T`
/// and every entry of `u'` nonzero.
pub fn factor_iu(t: &TargetMatrix) -> Result<(Matrix<u32>, Vec<u32>), EquivError> {
    let (l, s) = (t.l(), t.s());
    if l + 1 != s {
        return Err(EquivError::InvalidShape { l, s });
    }
    let fq = t.field();
    let q = t.matrix().select_columns(&(0..l).collect::<Vec<_>>());
    let qinv = linalg::inverse(fq, &q).ok_or(EquivError::NotInClass)?;
    let last = t.matrix().select_columns(&[l]);
    let u = linalg::mul(fq, &qinv, &last).column(0);
    if u.iter().any(|v| fq.is_zero(v)) {
        return Err(EquivError::NotInClass);
    }
    Ok((q, u))
}
