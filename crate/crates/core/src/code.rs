//! Scalar linear network codes over `F_{q^n}`, their transfer matrices and
//! the solution check.
//!
//! A code assigns
//! * `a[(τ, e)]`: the coefficient of source `σ_τ`'s message on its out-edge `e`,
//! * `f[(ê, e)]`: the coefficient of in-edge `ê` in out-edge `e` of the same node,
//! * `b[(e, j)]`: the coefficient of receiver in-edge `e` in output row `j`.
//!
//! Absent coefficients are zero. With `A_τ`, `F`, `B` assembled from these,
//! source `τ` reaches the receiver through `M_τ = A_τ (I - F)^{-1} B^t`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{ExtField, Felem, Field, FieldDescriptor, FieldError, PrimeField};
use crate::linalg::{self, Matrix};
use crate::netmodel::{EdgeId, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("InconsistentCode: {0}")]
    InconsistentCode(String),
    #[error("ArityMismatch: expected {expected} messages, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("FieldMismatch: {0}")]
    FieldMismatch(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("InvalidShape: need 1 <= l <= s, got {rows}x{cols}")]
    InvalidShape { rows: usize, cols: usize },
    #[error("NotFullRank: target has rank {rank} < {rows}")]
    NotFullRank { rank: usize, rows: usize },
    #[error("ZeroColumn: column {0} is zero")]
    ZeroColumn(usize),
    #[error("EntryOutOfRange: entry {0} is not a residue mod {1}")]
    EntryOutOfRange(u32, u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The `l x s` matrix `T` over `F_q` of a demanded linear function `f(x) = T x^t`.
/// Full row rank, no zero column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetMatrix {
    field: PrimeField,
    matrix: Matrix<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetFile {
    pub field: FieldDescriptor,
    pub matrix: Vec<Vec<u32>>,
}

impl TargetMatrix {
    pub fn new(q: u64, rows: Vec<Vec<u32>>) -> Result<Self, TargetError> {
        let field = PrimeField::new(q)?;
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(TargetError::InvalidShape { rows: rows.len(), cols: rows.first().map_or(0, Vec::len) });
        }
        Self::from_matrix(field, Matrix::from_rows(rows))
    }

    pub fn from_matrix(field: PrimeField, matrix: Matrix<u32>) -> Result<Self, TargetError> {
        let (l, s) = (matrix.rows(), matrix.cols());
        if l == 0 || l > s {
            return Err(TargetError::InvalidShape { rows: l, cols: s });
        }
        for i in 0..l {
            for &v in matrix.row(i) {
                if v >= field.order() {
                    return Err(TargetError::EntryOutOfRange(v, field.order()));
                }
            }
        }
        if let Some(j) = (0..s).find(|&j| matrix.column(j).iter().all(|&v| v == 0)) {
            return Err(TargetError::ZeroColumn(j));
        }
        let rank = linalg::rank(&field, &matrix);
        if rank < l {
            return Err(TargetError::NotFullRank { rank, rows: l });
        }
        Ok(Self { field, matrix })
    }

    pub fn parse(text: &str) -> Result<Self, TargetError> {
        let file: TargetFile = serde_json::from_str(text).map_err(|e| TargetError::Parse(e.to_string()))?;
        if file.field.n.is_some_and(|n| n != 1) || file.field.modulus.is_some() {
            return Err(TargetError::Parse("target must live over a prime field".into()));
        }
        Self::new(file.field.q, file.matrix)
    }

    pub fn to_file(&self) -> TargetFile {
        TargetFile {
            field: FieldDescriptor { q: self.field.order() as u64, n: None, modulus: None },
            matrix: self.matrix.to_rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("target serializes")
    }

    /// Identity target of size `s`.
    pub fn identity(q: u64, s: usize) -> Result<Self, TargetError> {
        Self::new(q, (0..s).map(|i| (0..s).map(|j| u32::from(i == j)).collect()).collect())
    }

    /// All-ones `1 x s` row (the sum of the sources).
    pub fn sum(q: u64, s: usize) -> Result<Self, TargetError> {
        Self::new(q, vec![vec![1; s]])
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Number of demanded outputs `l`.
    pub fn l(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of sources `s`.
    pub fn s(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &Matrix<u32> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        *self.matrix.get(i, j)
    }

    /// `rank(T_K)` for a set of source indices.
    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        linalg::rank(&self.field, &self.matrix.select_columns(cols))
    }
}

/// Concrete coefficients of a scalar linear code over `F_{q^n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: ExtField,
    outputs: usize,
    a: BTreeMap<(usize, EdgeId), Felem>,
    f: BTreeMap<(EdgeId, EdgeId), Felem>,
    b: BTreeMap<(EdgeId, usize), Felem>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub field: FieldDescriptor,
    /// Number of decoder output rows.
    pub l: usize,
    pub a: Vec<(usize, EdgeId, Felem)>,
    pub f: Vec<(EdgeId, EdgeId, Felem)>,
    pub b: Vec<(EdgeId, usize, Felem)>,
}

impl LinearCode {
    /// The all-zero code with `outputs` decoder rows.
    pub fn zero(field: ExtField, outputs: usize) -> Self {
        Self { field, outputs, a: BTreeMap::new(), f: BTreeMap::new(), b: BTreeMap::new() }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    fn put<K: Ord>(field: &ExtField, map: &mut BTreeMap<K, Felem>, key: K, v: Felem) {
        if field.is_zero(&v) {
            map.remove(&key);
        } else {
            map.insert(key, v);
        }
    }

    pub fn set_a(&mut self, source: usize, edge: EdgeId, v: Felem) {
        Self::put(&self.field, &mut self.a, (source, edge), v);
    }

    pub fn set_f(&mut self, from: EdgeId, to: EdgeId, v: Felem) {
        Self::put(&self.field, &mut self.f, (from, to), v);
    }

    pub fn set_b(&mut self, edge: EdgeId, row: usize, v: Felem) {
        Self::put(&self.field, &mut self.b, (edge, row), v);
    }

    pub fn a(&self, source: usize, edge: EdgeId) -> Felem {
        self.a.get(&(source, edge)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn f(&self, from: EdgeId, to: EdgeId) -> Felem {
        self.f.get(&(from, to)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn b(&self, edge: EdgeId, row: usize) -> Felem {
        self.b.get(&(edge, row)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn a_entries(&self) -> impl Iterator<Item = (&(usize, EdgeId), &Felem)> {
        self.a.iter()
    }

    pub fn f_entries(&self) -> impl Iterator<Item = (&(EdgeId, EdgeId), &Felem)> {
        self.f.iter()
    }

    pub fn b_entries(&self) -> impl Iterator<Item = (&(EdgeId, usize), &Felem)> {
        self.b.iter()
    }

    /// Checks every coefficient key against the network's adjacency.
    pub fn check(&self, net: &Network) -> Result<(), CodeError> {
        let bad = |msg: String| Err(CodeError::InconsistentCode(msg));
        let m = net.num_edges();
        for &(tau, e) in self.a.keys() {
            if tau >= net.num_sources() || e >= m || net.edge(e).tail != net.sources()[tau] {
                return bad(format!("a-coefficient ({tau}, {e}) is not on an out-edge of source {tau}"));
            }
        }
        for &(ei, ej) in self.f.keys() {
            if ei >= m || ej >= m || !net.consecutive(ei, ej) {
                return bad(format!("f-coefficient ({ei}, {ej}) is not a consecutive edge pair"));
            }
        }
        for &(e, j) in self.b.keys() {
            if e >= m || net.edge(e).head != net.receiver() || j >= self.outputs {
                return bad(format!("b-coefficient ({e}, {j}) is not on a receiver in-edge"));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            field: self.field.descriptor(),
            l: self.outputs,
            a: self.a.iter().map(|(&(t, e), v)| (t, e, v.clone())).collect(),
            f: self.f.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect(),
            b: self.b.iter().map(|(&(e, j), v)| (e, j, v.clone())).collect(),
        }
    }

    pub fn from_file(file: CodeFile) -> Result<Self, CodeError> {
        let field = ExtField::from_descriptor(&file.field)?;
        let mut code = Self::zero(field, file.l);
        for (t, e, v) in file.a {
            let v = code.field.elem(v.0)?;
            code.set_a(t, e, v);
        }
        for (i, j, v) in file.f {
            let v = code.field.elem(v.0)?;
            code.set_f(i, j, v);
        }
        for (e, j, v) in file.b {
            let v = code.field.elem(v.0)?;
            code.set_b(e, j, v);
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("code serializes")
    }

    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let file: CodeFile = serde_json::from_str(text).map_err(|e| CodeError::Parse(e.to_string()))?;
        Self::from_file(file)
    }
}

/// The coding matrices `A_1..A_s` (each `1 x |E|`), `F` (`|E| x |E|`) and `B` (`l x |E|`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMatrices {
    pub a: Vec<Matrix<Felem>>,
    pub f: Matrix<Felem>,
    pub b: Matrix<Felem>,
}

pub fn assemble_matrices(net: &Network, code: &LinearCode) -> Result<CodeMatrices, CodeError> {
    code.check(net)?;
    let fld = code.field();
    let m = net.num_edges();
    let mut a: Vec<Matrix<Felem>> = (0..net.num_sources()).map(|_| linalg::zeros(fld, 1, m)).collect();
    for (&(tau, e), v) in code.a_entries() {
        a[tau].set(0, e, v.clone());
    }
    let mut f = linalg::zeros(fld, m, m);
    for (&(i, j), v) in code.f_entries() {
        f.set(i, j, v.clone());
    }
    let mut b = linalg::zeros(fld, code.outputs(), m);
    for (&(e, j), v) in code.b_entries() {
        b.set(j, e, v.clone());
    }
    Ok(CodeMatrices { a, f, b })
}

/// `(I - F)^{-1} = I + F + ... + F^{m-1}` for a nilpotent `m x m` matrix `F`.
pub fn neumann_inverse<F: Field>(fld: &F, f: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let m = f.rows();
    let mut sum = linalg::identity(fld, m);
    let mut power = linalg::identity(fld, m);
    for _ in 1..m {
        power = linalg::mul(fld, &power, f);
        if linalg::is_zero_matrix(fld, &power) {
            break;
        }
        sum = linalg::add(fld, &sum, &power);
    }
    sum
}

/// Stacked transfer rows `M_τ`, one `1 x l` row per source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    pub rows: Matrix<Felem>,
}

impl TransferMatrix {
    pub fn row(&self, tau: usize) -> &[Felem] {
        self.rows.row(tau)
    }
}

pub fn transfer_from_matrices(fld: &ExtField, mats: &CodeMatrices) -> TransferMatrix {
    let g = neumann_inverse(fld, &mats.f);
    let gbt = linalg::mul(fld, &g, &mats.b.transpose());
    let l = mats.b.rows();
    let mut rows = linalg::zeros(fld, mats.a.len(), l);
    for (tau, a) in mats.a.iter().enumerate() {
        let r = linalg::mul(fld, a, &gbt);
        for j in 0..l {
            rows.set(tau, j, r.get(0, j).clone());
        }
    }
    TransferMatrix { rows }
}

pub fn transfer_matrix(net: &Network, code: &LinearCode) -> Result<TransferMatrix, CodeError> {
    let mats = assemble_matrices(net, code)?;
    Ok(transfer_from_matrices(code.field(), &mats))
}

/// Runs the code on one message per source; returns the `l` decoder outputs.
pub fn simulate(net: &Network, code: &LinearCode, messages: &[Felem]) -> Result<Vec<Felem>, CodeError> {
    if messages.len() != net.num_sources() {
        return Err(CodeError::ArityMismatch { expected: net.num_sources(), got: messages.len() });
    }
    code.check(net)?;
    let fld = code.field();
    for m in messages {
        if !fld.contains(m) {
            return Err(CodeError::FieldMismatch(format!("message {m:?} is not in the code's field")));
        }
    }
    let mut z: Vec<Felem> = Vec::with_capacity(net.num_edges());
    for (e, edge) in net.edges().iter().enumerate() {
        let u = edge.tail;
        let mut val = match net.source_index(u) {
            Some(tau) => fld.mul(&code.a(tau, e), &messages[tau]),
            None => fld.zero(),
        };
        for &ein in net.in_edges(u) {
            val = fld.add(&val, &fld.mul(&code.f(ein, e), &z[ein]));
        }
        z.push(val);
    }
    Ok((0..code.outputs())
        .map(|j| {
            net.in_edges(net.receiver())
                .iter()
                .fold(fld.zero(), |acc, &e| fld.add(&acc, &fld.mul(&code.b(e, j), &z[e])))
        })
        .collect())
}

fn check_pairing(net: &Network, code: &LinearCode, target: &TargetMatrix) -> Result<(), CodeError> {
    if code.field().q() != target.q() {
        return Err(CodeError::FieldMismatch(format!(
            "code over characteristic {} but target over F_{}",
            code.field().q(),
            target.q()
        )));
    }
    if target.s() != net.num_sources() || target.l() != code.outputs() {
        return Err(CodeError::DimensionMismatch(format!(
            "target is {}x{}, network has {} sources, code has {} outputs",
            target.l(),
            target.s(),
            net.num_sources(),
            code.outputs()
        )));
    }
    Ok(())
}

/// True iff `M_τ = (T_τ)^t` for every source `τ`.
pub fn is_solution(net: &Network, code: &LinearCode, target: &TargetMatrix) -> Result<bool, CodeError> {
    check_pairing(net, code, target)?;
    let tm = transfer_matrix(net, code)?;
    let fld = code.field();
    Ok((0..target.s()).all(|tau| {
        (0..target.l()).all(|j| *tm.rows.get(tau, j) == fld.from_base(target.entry(j, tau)))
    }))
}

/// Simulates every message tuple and compares against `T α^t`. Returns `None`
/// when `q^{n s}` exceeds `limit`.
pub fn exhaustive_check(
    net: &Network,
    code: &LinearCode,
    target: &TargetMatrix,
    limit: u64,
) -> Result<Option<bool>, CodeError> {
    check_pairing(net, code, target)?;
    let fld = code.field();
    let s = net.num_sources();
    let total = fld.order().checked_pow(s as u32).filter(|&t| t <= limit);
    let Some(total) = total else {
        return Ok(None);
    };
    let elems: Vec<Felem> = fld.elements().collect();
    let k = elems.len() as u64;
    for idx in 0..total {
        let mut rest = idx;
        let msgs: Vec<Felem> = (0..s)
            .map(|_| {
                let e = elems[(rest % k) as usize].clone();
                rest /= k;
                e
            })
            .collect();
        let out = simulate(net, code, &msgs)?;
        for (j, got) in out.iter().enumerate() {
            let want = (0..s).fold(fld.zero(), |acc, tau| {
                fld.add(&acc, &fld.mul(&fld.from_base(target.entry(j, tau)), &msgs[tau]))
            });
            if *got != want {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}
