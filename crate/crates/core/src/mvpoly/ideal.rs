//! The ideal generated by the entries of `(T_τ)^t - M_τ`, where the code
//! coefficients are indeterminates. The target is linearly solvable over some
//! extension `F_{q^n}` exactly when this ideal is proper, i.e. when its reduced
//! Gröbner basis is not `{1}`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::code::{LinearCode, TargetMatrix};
use crate::ff::{Felem, Field, PrimeField};
use crate::netmodel::{EdgeId, Network};

use super::groebner::{buchberger, GroebnerBasis, GroebnerError, GroebnerOptions};
use super::{MonomialOrder, MvPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("UnknownIndeterminate: {0}")]
    UnknownIndeterminate(Indeterminate),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// One code coefficient viewed as a variable. The derived order (all `A`, then
/// all `F`, then all `B`, each lexicographic in its indices) is the variable
/// order of the polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indeterminate {
    /// Coefficient of source `source`'s message on its out-edge `edge`.
    A { source: usize, edge: EdgeId },
    /// Coefficient of in-edge `from` on out-edge `to`.
    F { from: EdgeId, to: EdgeId },
    /// Coefficient of receiver in-edge `edge` in output row `row`.
    B { edge: EdgeId, row: usize },
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Indeterminate::A { source, edge } => write!(f, "x[A,{source},{edge}]"),
            Indeterminate::F { from, to } => write!(f, "x[F,{from},{to}]"),
            Indeterminate::B { edge, row } => write!(f, "x[B,{edge},{row}]"),
        }
    }
}

impl Indeterminate {
    /// Parses the `KIND,i,j` form used on the command line.
    pub fn parse(text: &str) -> Option<Self> {
        let parts: Vec<&str> = text.trim().trim_start_matches("x[").trim_end_matches(']').split(',').collect();
        let [kind, i, j] = parts.as_slice() else {
            return None;
        };
        let (i, j) = (i.trim().parse().ok()?, j.trim().parse().ok()?);
        match kind.trim() {
            "A" => Some(Indeterminate::A { source: i, edge: j }),
            "F" => Some(Indeterminate::F { from: i, to: j }),
            "B" => Some(Indeterminate::B { edge: i, row: j }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealJ {
    ring: PolyRing,
    vars: Vec<Indeterminate>,
    generators: Vec<MvPoly>,
    pinned: Vec<(Indeterminate, u32)>,
}

impl IdealJ {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn vars(&self) -> &[Indeterminate] {
        &self.vars
    }

    pub fn var_index(&self, v: &Indeterminate) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }

    /// Generators ordered source-major, then by output row.
    pub fn generators(&self) -> &[MvPoly] {
        &self.generators
    }

    pub fn pinned(&self) -> &[(Indeterminate, u32)] {
        &self.pinned
    }

    pub fn var_names(&self) -> Vec<String> {
        self.vars.iter().map(ToString::to_string).collect()
    }

    pub fn format(&self, p: &MvPoly) -> String {
        self.ring.format(p, &self.var_names())
    }

    /// Polynomial for one variable.
    pub fn var(&self, v: &Indeterminate) -> Option<MvPoly> {
        self.var_index(v).map(|i| self.ring.var(i))
    }
}

/// Builds the generators `T_{j,τ} - (M_τ)_j` symbolically. The row vector
/// `A_τ (I - F)^{-1}` is obtained by forward substitution along the canonical
/// edge order, which expands the same finite series `A_τ (I + F + F^2 + ...)`.
pub fn symbolic_transfer(net: &Network, target: &TargetMatrix) -> Result<IdealJ, IdealError> {
    if target.s() != net.num_sources() || target.q() != net.q() {
        return Err(IdealError::DimensionMismatch(format!(
            "target {}x{} over F_{} vs network with {} sources over F_{}",
            target.l(),
            target.s(),
            target.q(),
            net.num_sources(),
            net.q()
        )));
    }
    let l = target.l();
    let mut vars = Vec::new();
    for (tau, &src) in net.sources().iter().enumerate() {
        for &e in net.out_edges(src) {
            vars.push(Indeterminate::A { source: tau, edge: e });
        }
    }
    for (from, to) in net.consecutive_pairs() {
        vars.push(Indeterminate::F { from, to });
    }
    for &e in net.in_edges(net.receiver()) {
        for row in 0..l {
            vars.push(Indeterminate::B { edge: e, row });
        }
    }
    vars.sort_unstable();
    let ring = PolyRing::new(*net.field(), vars.len(), MonomialOrder::Grevlex);
    let index: BTreeMap<Indeterminate, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let x = |v: Indeterminate| ring.var(index[&v]);

    let mut generators = Vec::with_capacity(l * net.num_sources());
    for (tau, &src) in net.sources().iter().enumerate() {
        // w[e] = (A_τ (I - F)^{-1})_e
        let mut w: Vec<MvPoly> = Vec::with_capacity(net.num_edges());
        for (e, edge) in net.edges().iter().enumerate() {
            let mut val = if edge.tail == src { x(Indeterminate::A { source: tau, edge: e }) } else { ring.zero() };
            for &ein in net.in_edges(edge.tail) {
                if !w[ein].is_zero() {
                    val = ring.add(&val, &ring.mul(&w[ein], &x(Indeterminate::F { from: ein, to: e })));
                }
            }
            w.push(val);
        }
        for row in 0..l {
            let m = net.in_edges(net.receiver()).iter().fold(ring.zero(), |acc, &e| {
                ring.add(&acc, &ring.mul(&w[e], &x(Indeterminate::B { edge: e, row })))
            });
            generators.push(ring.sub(&ring.constant(target.entry(row, tau)), &m));
        }
    }
    Ok(IdealJ { ring, vars, generators, pinned: Vec::new() })
}

/// Substitutes constants for some indeterminates, removing them from the ring.
pub fn pin(ideal: &IdealJ, assignments: &[(Indeterminate, u32)]) -> Result<IdealJ, IdealError> {
    let fq: &PrimeField = ideal.ring.field();
    let mut values: Vec<Option<u32>> = vec![None; ideal.vars.len()];
    for (v, c) in assignments {
        let i = ideal.var_index(v).ok_or(IdealError::UnknownIndeterminate(*v))?;
        values[i] = Some(fq.from_base(*c));
    }
    let vars: Vec<Indeterminate> =
        ideal.vars.iter().zip(&values).filter(|(_, val)| val.is_none()).map(|(v, _)| *v).collect();
    let target = PolyRing::new(*fq, vars.len(), ideal.ring.order());
    let generators = ideal.generators.iter().map(|g| ideal.ring.substitute(g, &values, &target)).collect();
    let mut pinned = ideal.pinned.clone();
    pinned.extend(assignments.iter().map(|&(v, c)| (v, fq.from_base(c))));
    Ok(IdealJ { ring: target, vars, generators, pinned })
}

/// Evaluates every generator at the coefficients of a concrete code (pinned
/// indeterminates are already constants).
pub fn evaluate_at_code(ideal: &IdealJ, code: &LinearCode) -> Vec<Felem> {
    let fld = code.field();
    let point: Vec<Felem> = ideal
        .vars
        .iter()
        .map(|v| match *v {
            Indeterminate::A { source, edge } => code.a(source, edge),
            Indeterminate::F { from, to } => code.f(from, to),
            Indeterminate::B { edge, row } => code.b(edge, row),
        })
        .collect();
    ideal.generators.iter().map(|g| ideal.ring.eval(g, fld, &point)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A linear solution exists over some extension `F_{q^n}`.
    Solvable,
    /// No linear solution over any extension.
    Unsolvable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Solvable => "solvable",
            Verdict::Unsolvable => "unsolvable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolvabilityReport {
    pub verdict: Verdict,
    pub ideal: IdealJ,
    pub basis: GroebnerBasis,
}

pub fn solvable_with(
    net: &Network,
    target: &TargetMatrix,
    pins: &[(Indeterminate, u32)],
    opts: GroebnerOptions,
) -> Result<SolvabilityReport, IdealError> {
    let ideal = pin(&symbolic_transfer(net, target)?, pins)?;
    let basis = buchberger(ideal.ring(), ideal.generators(), opts)?;
    let verdict = if basis.is_trivial() { Verdict::Unsolvable } else { Verdict::Solvable };
    Ok(SolvabilityReport { verdict, ideal, basis })
}

pub fn solvable(net: &Network, target: &TargetMatrix) -> Result<Verdict, IdealError> {
    Ok(solvable_with(net, target, &[], GroebnerOptions::default())?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::tests::{n1, n1_code};
    use crate::mvpoly::verify_certificate;

    fn t1() -> TargetMatrix {
        TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
    }

    const A: fn(usize, usize) -> Indeterminate = |source, edge| Indeterminate::A { source, edge };
    const F: fn(usize, usize) -> Indeterminate = |from, to| Indeterminate::F { from, to };
    const B: fn(usize, usize) -> Indeterminate = |edge, row| Indeterminate::B { edge, row };

    fn pinned_n1() -> IdealJ {
        let j = symbolic_transfer(&n1(), &t1()).unwrap();
        pin(&j, &[(A(1, 0), 1), (A(1, 1), 1)]).unwrap()
    }

    #[test]
    fn variable_order() {
        let j = symbolic_transfer(&n1(), &t1()).unwrap();
        let names: Vec<String> = j.var_names();
        assert_eq!(
            names,
            vec![
                "x[A,0,2]", "x[A,1,0]", "x[A,1,1]", "x[A,2,3]", "x[F,0,2]", "x[F,1,3]", "x[B,2,0]",
                "x[B,2,1]", "x[B,3,0]", "x[B,3,1]"
            ]
        );
        assert_eq!(j.generators().len(), 6);
        assert!(j.generators().iter().all(|g| g.total_degree() as usize <= n1().num_edges() + 1));
    }

    #[test]
    fn pinned_n1_generators_match_hand_derivation() {
        let j = pinned_n1();
        let r = j.ring();
        let v = |x: Indeterminate| j.var(&x).unwrap();
        let prod = |a: Indeterminate, b: Indeterminate| r.mul(&v(a), &v(b));
        // e0 = s2->s1, e1 = s2->s3, e2 = s1->rho, e3 = s3->rho
        let expected = vec![
            r.sub(&r.one(), &prod(A(0, 2), B(2, 0))),
            r.neg(&prod(A(0, 2), B(2, 1))),
            r.neg(&r.add(&prod(F(0, 2), B(2, 0)), &prod(F(1, 3), B(3, 0)))),
            r.sub(&r.one(), &r.add(&prod(F(0, 2), B(2, 1)), &prod(F(1, 3), B(3, 1)))),
            r.sub(&r.one(), &prod(A(2, 3), B(3, 0))),
            r.neg(&prod(A(2, 3), B(3, 1))),
        ];
        assert_eq!(j.generators(), expected.as_slice());
        assert_eq!(j.vars().len(), 8);
    }

    #[test]
    fn pinned_n1_basis_is_one() {
        let j = pinned_n1();
        let opts = GroebnerOptions { track_cofactors: true, ..Default::default() };
        let gb = buchberger(j.ring(), j.generators(), opts).unwrap();
        assert!(gb.is_trivial());
        assert!(verify_certificate(j.ring(), j.generators(), &gb));
    }

    #[test]
    fn explicit_unit_combination() {
        // 1 = g3 + x[F,0,2]x[B,2,1] g0 - x[F,0,2]x[B,2,0] g1 + x[F,1,3]x[B,3,1] g4 - x[F,1,3]x[B,3,0] g5
        let j = pinned_n1();
        let r = j.ring();
        let g = j.generators();
        let v = |x: Indeterminate| j.var(&x).unwrap();
        let m = |a, b| r.mul(&v(a), &v(b));
        let mut sum = g[3].clone();
        sum = r.add(&sum, &r.mul(&m(F(0, 2), B(2, 1)), &g[0]));
        sum = r.sub(&sum, &r.mul(&m(F(0, 2), B(2, 0)), &g[1]));
        sum = r.add(&sum, &r.mul(&m(F(1, 3), B(3, 1)), &g[4]));
        sum = r.sub(&sum, &r.mul(&m(F(1, 3), B(3, 0)), &g[5]));
        assert_eq!(sum, r.one());
    }

    #[test]
    fn pin_errors_and_identity() {
        let j = symbolic_transfer(&n1(), &t1()).unwrap();
        assert_eq!(pin(&j, &[]).unwrap().generators(), j.generators());
        assert!(matches!(pin(&j, &[(A(0, 0), 1)]), Err(IdealError::UnknownIndeterminate(_))));
    }

    #[test]
    fn pin_to_non_root_gives_constant() {
        let net = Network::parse(
            r#"{"field":{"q":2},"nodes":["a","r"],"sources":["a"],"receiver":"r","edges":[["a","r"]]}"#,
        )
        .unwrap();
        let t = TargetMatrix::new(2, vec![vec![1]]).unwrap();
        let j = symbolic_transfer(&net, &t).unwrap();
        assert_eq!(j.format(&j.generators()[0]), "1*x[A,0,0]^1*x[B,0,0]^1 + 1");
        let p = pin(&j, &[(A(0, 0), 0)]).unwrap();
        assert!(p.generators()[0].is_unit());
        let gb = buchberger(p.ring(), p.generators(), GroebnerOptions::default()).unwrap();
        assert!(gb.is_trivial());
        assert_eq!(solvable(&net, &t).unwrap(), Verdict::Solvable);
    }

    #[test]
    fn verdicts_on_n1() {
        assert_eq!(solvable(&n1(), &t1()).unwrap(), Verdict::Unsolvable);
        let t = TargetMatrix::new(2, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(solvable(&n1(), &t).unwrap(), Verdict::Solvable);
    }

    #[test]
    fn evaluation_matches_solution_check() {
        let t = TargetMatrix::new(2, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let j = symbolic_transfer(&n1(), &t).unwrap();
        let vals = evaluate_at_code(&j, &n1_code());
        assert!(vals.iter().all(|v| v.0 == vec![0]));
        let j1 = symbolic_transfer(&n1(), &t1()).unwrap();
        assert!(evaluate_at_code(&j1, &n1_code()).iter().any(|v| v.0 != vec![0]));
    }

    #[test]
    fn parse_indeterminate() {
        assert_eq!(Indeterminate::parse("A,1,0"), Some(A(1, 0)));
        assert_eq!(Indeterminate::parse("x[F,0,2]"), Some(F(0, 2)));
        assert_eq!(Indeterminate::parse("Q,0,2"), None);
    }
}
