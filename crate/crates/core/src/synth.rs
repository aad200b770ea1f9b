//! Code construction for the solvable classes: sums (`l = 1`), invertible
//! targets (`l = s`), and the alignment construction for `T ~ (I u)` with `u`
//! a unit column (`l = s - 1`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::code::{self, CodeError, LinearCode, TargetMatrix};
use crate::cuts::{self, CutError, CutReport};
use crate::equiv::{self, Classification};
use crate::ff::{ExtField, Felem, Field, FieldError};
use crate::flow;
use crate::linalg::{self, Matrix};
use crate::mvpoly::{self, IdealError, Verdict};
use crate::netmodel::{EdgeId, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("CutViolation: min-cut ratio {}/{} < 1 on cut {:?}", .0.value.numer(), .0.value.denom(), .0.witness)]
    CutViolation(CutReport),
    #[error("ClassMismatch: {0}")]
    ClassMismatch(String),
    #[error("RandomBudgetExhausted: no admissible draw after {attempts} trials up to degree {max_degree} (seed {seed})")]
    RandomBudgetExhausted { seed: u64, max_degree: usize, attempts: u64 },
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SumTree,
    Routing,
    Alignment,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SumTree => "SumTree",
            Method::Routing => "Routing",
            Method::Alignment => "Alignment",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthResult {
    pub code: LinearCode,
    /// Extension degree of the code's field.
    pub n: usize,
    /// Random draws consumed (0 for the deterministic constructions).
    pub attempts: u64,
    pub method: Method,
    pub seed: Option<u64>,
}

/// Budget for the randomized stage of the alignment construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthOptions {
    pub seed: u64,
    /// First extension degree tried; `None` picks `max(1, ceil(log_q(2 s |E|)))`.
    pub start_degree: Option<usize>,
    pub max_degree: usize,
    pub trials_per_degree: u64,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self { seed: 0, start_degree: None, max_degree: 16, trials_per_degree: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Solved(SynthResult),
    /// No linear solution over any extension field.
    Unsolvable,
    /// A solution exists but no constructor applies.
    SolvableNoConstructor,
}

fn check_shapes(net: &Network, t: &TargetMatrix) -> Result<(), SynthError> {
    if t.s() != net.num_sources() || t.q() != net.q() {
        return Err(SynthError::ShapeMismatch(format!(
            "{}x{} target over F_{} for a network with {} sources over F_{}",
            t.l(),
            t.s(),
            t.q(),
            net.num_sources(),
            net.q()
        )));
    }
    Ok(())
}

fn require_cut(net: &Network, t: &TargetMatrix) -> Result<(), SynthError> {
    let report = cuts::mincut_ratio(net, t)?;
    if report.value < 1.into() {
        return Err(SynthError::CutViolation(report));
    }
    Ok(())
}

fn base(t: &TargetMatrix, fld: &ExtField, i: usize, j: usize) -> Felem {
    fld.from_base(t.entry(i, j))
}

/// Every node forwards the sum of what it receives on its least out-edge.
pub fn synthesize_sum(net: &Network, t: &TargetMatrix) -> Result<SynthResult, SynthError> {
    check_shapes(net, t)?;
    if t.l() != 1 {
        return Err(SynthError::ShapeMismatch(format!("sum construction needs l = 1, got {}", t.l())));
    }
    let fld = ExtField::new(t.q() as u64, 1)?;
    let rho = net.receiver();
    // valid networks have every node reaching the receiver, so each non-receiver
    // node has an out-edge
    let selected: Vec<Option<EdgeId>> =
        (0..net.nodes().len()).map(|v| if v == rho { None } else { net.out_edges(v).first().copied() }).collect();
    let on_tree = |e: EdgeId| selected[net.edge(e).tail] == Some(e);
    let mut code = LinearCode::zero(fld.clone(), 1);
    for (tau, &v) in net.sources().iter().enumerate() {
        code.set_a(tau, selected[v].expect("sources are not the receiver"), base(t, &fld, 0, tau));
    }
    for (e, edge) in net.edges().iter().enumerate() {
        if !on_tree(e) {
            continue;
        }
        for &ein in net.in_edges(edge.tail) {
            if on_tree(ein) {
                code.set_f(ein, e, fld.one());
            }
        }
        if edge.head == rho {
            code.set_b(e, 0, fld.one());
        }
    }
    Ok(SynthResult { code, n: 1, attempts: 0, method: Method::SumTree, seed: None })
}

/// Routes every source message on its own edge-disjoint path and decodes with `T`.
pub fn synthesize_routing(net: &Network, t: &TargetMatrix) -> Result<SynthResult, SynthError> {
    check_shapes(net, t)?;
    let s = t.s();
    if t.l() != s {
        return Err(SynthError::ShapeMismatch(format!("routing needs l = s, got {}x{s}", t.l())));
    }
    let (flow, paths) = flow::disjoint_paths(net, net.sources());
    if flow.value < s {
        let identity = TargetMatrix::identity(t.q() as u64, s).expect("identity is a valid target");
        return Err(SynthError::CutViolation(cuts::mincut_ratio(net, &identity)?));
    }
    let fld = ExtField::new(t.q() as u64, 1)?;
    let mut code = LinearCode::zero(fld.clone(), s);
    for (i, path) in paths.iter().enumerate() {
        let path = path.as_ref().expect("flow value s gives every source a path");
        code.set_a(i, path[0], fld.one());
        for w in path.windows(2) {
            code.set_f(w[0], w[1], fld.one());
        }
        let last = *path.last().expect("paths are nonempty");
        for j in 0..s {
            code.set_b(last, j, base(t, &fld, j, i));
        }
    }
    Ok(SynthResult { code, n: 1, attempts: 0, method: Method::Routing, seed: None })
}

/// `max(1, ceil(log_q(2 s |E|)))`.
pub fn start_degree(q: u32, s: usize, m: usize) -> usize {
    let goal = (2 * s * m) as u64;
    let mut n = 1;
    let mut size = q as u64;
    while size < goal {
        size *= q as u64;
        n += 1;
    }
    n
}

/// One uniformly random code on the network; zero draws are allowed.
fn random_code(net: &Network, fld: &ExtField, l: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    let mut code = LinearCode::zero(fld.clone(), l);
    for (tau, &v) in net.sources().iter().enumerate() {
        for &e in net.out_edges(v) {
            code.set_a(tau, e, fld.random(rng));
        }
    }
    for (i, j) in net.consecutive_pairs() {
        code.set_f(i, j, fld.random(rng));
    }
    for &e in net.in_edges(net.receiver()) {
        for j in 0..l {
            code.set_b(e, j, fld.random(rng));
        }
    }
    code
}

fn drop_row(m: &Matrix<Felem>, i: usize) -> Matrix<Felem> {
    m.select_rows(&(0..m.rows()).filter(|&r| r != i).collect::<Vec<_>>())
}

/// The alignment step on an admissible draw: rescales the code so that its
/// stacked transfer matrix becomes `(I; u'^t)`, then absorbs `Q` into the decoder.
fn align(net: &Network, draw: &LinearCode, qm: &Matrix<u32>, u: &[u32]) -> Result<LinearCode, SynthError> {
    let fld = draw.field();
    let s = net.num_sources();
    let l = s - 1;
    let mt = code::transfer_matrix(net, draw)?.rows;
    let top = drop_row(&mt, l);
    let top_inv = linalg::inverse(fld, &top).expect("admissible draws have M_(s) invertible");
    let last = mt.select_rows(&[l]);
    let coeffs = linalg::mul(fld, &last, &top_inv);
    let d: Vec<Felem> = coeffs.row(0).to_vec();
    assert!(
        d.iter().all(|x| !fld.is_zero(x)),
        "every D_ii is nonzero when all deletion submatrices are invertible"
    );
    let mats = code::assemble_matrices(net, draw)?;
    // B̄ = D^{-1} U (M_(s)^t)^{-1} B
    let scale = Matrix::from_fn(l, l, |i, j| {
        if i == j {
            fld.mul(&fld.inv(&d[i]).expect("nonzero"), &fld.from_base(u[i]))
        } else {
            fld.zero()
        }
    });
    let b_bar = linalg::mul(fld, &linalg::mul(fld, &scale, &top_inv.transpose()), &mats.b);
    let qf = qm.map(|&v| fld.from_base(v));
    let decode = linalg::mul(fld, &qf, &b_bar);

    let mut out = LinearCode::zero(fld.clone(), l);
    for (&(tau, e), v) in draw.a_entries() {
        // Ā_i = u'_i^{-1} D_ii A_i for i < s, Ā_s = A_s
        let c = if tau < l {
            fld.mul(&fld.inv(&fld.from_base(u[tau])).expect("u' has unit entries"), &d[tau])
        } else {
            fld.one()
        };
        out.set_a(tau, e, fld.mul(&c, v));
    }
    for (&(i, j), v) in draw.f_entries() {
        out.set_f(i, j, v.clone());
    }
    for &e in net.in_edges(net.receiver()) {
        for j in 0..l {
            out.set_b(e, j, decode.get(j, e).clone());
        }
    }

    let mut aligned = out.clone();
    for &e in net.in_edges(net.receiver()) {
        for j in 0..l {
            aligned.set_b(e, j, b_bar.get(j, e).clone());
        }
    }
    let stacked = code::transfer_matrix(net, &aligned)?.rows;
    let expect = Matrix::from_fn(s, l, |i, j| {
        if i < l {
            if i == j { fld.one() } else { fld.zero() }
        } else {
            fld.from_base(u[j])
        }
    });
    assert_eq!(stacked, expect, "aligned transfer matrix is (I; u'^t)");
    Ok(out)
}

/// All `s` deletion submatrices `M_(i)` of the stacked transfer matrix are invertible.
fn admissible(net: &Network, draw: &LinearCode) -> Result<bool, SynthError> {
    let fld = draw.field();
    let mt = code::transfer_matrix(net, draw)?.rows;
    Ok((0..mt.rows()).all(|i| !fld.is_zero(&linalg::determinant(fld, &drop_row(&mt, i)))))
}

/// Alignment construction for `l = s - 1` and `T ~ (I u)` with `u` a unit column.
pub fn synthesize_units(net: &Network, t: &TargetMatrix, opts: SynthOptions) -> Result<SynthResult, SynthError> {
    check_shapes(net, t)?;
    if t.l() + 1 != t.s() {
        return Err(SynthError::ClassMismatch(format!("alignment needs l = s - 1, got {}x{}", t.l(), t.s())));
    }
    let (qm, u) = equiv::factor_iu(t).map_err(|e| SynthError::ClassMismatch(e.to_string()))?;
    require_cut(net, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n0 = opts.start_degree.unwrap_or_else(|| start_degree(t.q(), t.s(), net.num_edges())).max(1);
    let mut attempts = 0;
    for n in n0..=opts.max_degree {
        let fld = ExtField::new(t.q() as u64, n)?;
        for _ in 0..opts.trials_per_degree {
            attempts += 1;
            let draw = random_code(net, &fld, t.l(), &mut rng);
            if !admissible(net, &draw)? {
                continue;
            }
            let code = align(net, &draw, &qm, &u)?;
            assert!(code::is_solution(net, &code, t)?, "aligned code computes T");
            return Ok(SynthResult { code, n, attempts, method: Method::Alignment, seed: Some(opts.seed) });
        }
    }
    Err(SynthError::RandomBudgetExhausted { seed: opts.seed, max_degree: opts.max_degree, attempts })
}

/// Checks the cut condition, then picks a construction by class, falling back
/// to the Gröbner test.
pub fn synthesize(net: &Network, t: &TargetMatrix, opts: SynthOptions) -> Result<Outcome, SynthError> {
    check_shapes(net, t)?;
    require_cut(net, t)?;
    let (l, s) = (t.l(), t.s());
    if l == 1 {
        return Ok(Outcome::Solved(synthesize_sum(net, t)?));
    }
    if l == s {
        return Ok(Outcome::Solved(synthesize_routing(net, t)?));
    }
    if l + 1 == s {
        let class = equiv::classify(t).map_err(|e| SynthError::ClassMismatch(e.to_string()))?;
        if matches!(class, Classification::AllUnits(_)) {
            return Ok(Outcome::Solved(synthesize_units(net, t, opts)?));
        }
    }
    Ok(match mvpoly::solvable(net, t)? {
        Verdict::Solvable => Outcome::SolvableNoConstructor,
        Verdict::Unsolvable => Outcome::Unsolvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::tests::n1;

    fn star(s: usize, q: u32) -> Network {
        let names: Vec<String> = (0..s).map(|i| format!("s{i}")).collect();
        let mut nodes = names.clone();
        nodes.push("r".into());
        let edges = names.iter().map(|n| (n.clone(), "r".to_string())).collect();
        Network::new(q as u64, nodes, names, "r".into(), edges).unwrap()
    }

    fn verified(net: &Network, t: &TargetMatrix, r: &SynthResult) {
        assert!(code::is_solution(net, &r.code, t).unwrap());
        if let Some(ok) = code::exhaustive_check(net, &r.code, t, 4096).unwrap() {
            assert!(ok);
        }
    }

    #[test]
    fn sum_on_star_and_n1() {
        let t = TargetMatrix::sum(2, 3).unwrap();
        let r = synthesize_sum(&star(3, 2), &t).unwrap();
        assert_eq!(r.method, Method::SumTree);
        verified(&star(3, 2), &t, &r);
        let r = synthesize_sum(&n1(), &t).unwrap();
        assert_eq!(code::exhaustive_check(&n1(), &r.code, &t, 4096).unwrap(), Some(true));
    }

    #[test]
    fn weighted_sum_over_f3() {
        let t = TargetMatrix::new(3, vec![vec![1, 2]]).unwrap();
        let net = star(2, 3);
        verified(&net, &t, &synthesize_sum(&net, &t).unwrap());
    }

    #[test]
    fn routing_on_star() {
        let t = TargetMatrix::new(2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let net = star(2, 2);
        let r = synthesize_routing(&net, &t).unwrap();
        assert_eq!(r.method, Method::Routing);
        verified(&net, &t, &r);
    }

    #[test]
    fn routing_cut_violation() {
        let net = Network::parse(
            r#"{"field":{"q":2},"nodes":["a","b","v","r"],"sources":["a","b"],"receiver":"r",
            "edges":[["a","v"],["b","v"],["v","r"]]}"#,
        )
        .unwrap();
        let t = TargetMatrix::identity(2, 2).unwrap();
        match synthesize_routing(&net, &t) {
            Err(SynthError::CutViolation(r)) => assert_eq!(r.witness.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn alignment_on_star() {
        let t = TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let net = star(3, 2);
        let opts = SynthOptions { start_degree: Some(1), ..SynthOptions::default() };
        let r = synthesize_units(&net, &t, opts).unwrap();
        assert_eq!(r.method, Method::Alignment);
        assert!(r.n <= 2);
        verified(&net, &t, &r);
    }

    #[test]
    fn alignment_rejects_has_zero() {
        let t = TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(matches!(
            synthesize_units(&n1(), &t, SynthOptions::default()),
            Err(SynthError::ClassMismatch(_))
        ));
    }

    #[test]
    fn dispatcher() {
        let t1 = TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(synthesize(&n1(), &t1, SynthOptions::default()).unwrap(), Outcome::Unsolvable);
        let sum = TargetMatrix::sum(2, 3).unwrap();
        match synthesize(&n1(), &sum, SynthOptions::default()).unwrap() {
            Outcome::Solved(r) => assert_eq!(r.method, Method::SumTree),
            other => panic!("{other:?}"),
        }
        let id = TargetMatrix::identity(2, 3).unwrap();
        match synthesize(&star(3, 2), &id, SynthOptions::default()).unwrap() {
            Outcome::Solved(r) => assert_eq!(r.method, Method::Routing),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn start_degree_rule() {
        assert_eq!(start_degree(2, 3, 3), 5);
        assert_eq!(start_degree(3, 1, 1), 1);
        assert_eq!(start_degree(5, 2, 3), 2);
    }
}
