//! Networks with min-cut ratio 1 on which a target has no linear solution:
//! the three-source network `N_1` with `T_1`, and the family `N_P` built from
//! any equivalent form `(I P)` whose `P` contains a zero.

use serde::Serialize;
use thiserror::Error;

use crate::code::TargetMatrix;
use crate::cuts::{self, CutError, CutReport};
use crate::equiv::{self, Classification, Equivalence};
use crate::ff::PrimeField;
use crate::linalg::{self, Matrix};
use crate::mvpoly::{self, IdealError, Verdict};
use crate::netmodel::Network;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CounterexError {
    #[error("ClassMismatch: {0}")]
    ClassMismatch(String),
    #[error("ConstructionMismatch: {0}")]
    ConstructionMismatch(String),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Indices refer to the columns of `T̂ = (I P)`; `kappa[k]` is the source of
/// the returned network (a column of the original target) that plays `σ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub tau: usize,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub j1: usize,
    pub p: usize,
    #[serde(rename = "K_bar")]
    pub k_bar: Vec<usize>,
    pub kappa: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CounterexampleBundle {
    pub network: Network,
    pub target: TargetMatrix,
    pub t_hat: Matrix<u32>,
    pub construction: Construction,
    pub mincut: CutReport,
}

fn n1_network(q: u32) -> Network {
    let nodes: Vec<String> = ["s1", "s2", "s3", "rho"].map(String::from).to_vec();
    let edges = [("s2", "s1"), ("s2", "s3"), ("s1", "rho"), ("s3", "rho")]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .to_vec();
    Network::new(q as u64, nodes.clone(), nodes[..3].to_vec(), "rho".into(), edges).expect("N1 is valid")
}

fn self_check(network: &Network, target: &TargetMatrix) -> Result<CutReport, CounterexError> {
    let mincut = cuts::mincut_ratio(network, target)?;
    if mincut.value != 1.into() {
        return Err(CounterexError::ConstructionMismatch(format!(
            "min-cut ratio is {}/{}, expected 1",
            mincut.value.numer(),
            mincut.value.denom()
        )));
    }
    if mvpoly::solvable(network, target)? != Verdict::Unsolvable {
        return Err(CounterexError::ConstructionMismatch("the target is linearly solvable".into()));
    }
    Ok(mincut)
}

/// `N_1` with `T_1 = [[1,0,1],[0,1,0]]` over `F_q`.
pub fn build_n1(q: u32) -> Result<CounterexampleBundle, CounterexError> {
    let network = n1_network(q);
    let target = TargetMatrix::new(q as u64, vec![vec![1, 0, 1], vec![0, 1, 0]])
        .map_err(|e| CounterexError::ClassMismatch(e.to_string()))?;
    let construction = Construction { tau: 2, k: vec![0], j1: 0, p: 1, k_bar: vec![], kappa: vec![0, 1, 2] };
    let mincut = self_check(&network, &target)?;
    Ok(CounterexampleBundle { network, t_hat: target.matrix().clone(), target, construction, mincut })
}

/// Builds `N_P` from a witness `T = Q (I P) Π` with a zero in `P`, relabeled so
/// that it pairs with `T` itself.
pub fn build_np(t: &TargetMatrix, witness: &Equivalence) -> Result<CounterexampleBundle, CounterexError> {
    let (l, s) = (t.l(), t.s());
    if l <= 1 || l >= s {
        return Err(CounterexError::ClassMismatch(format!("need 1 < l < s, got l = {l}, s = {s}")));
    }
    if !witness.reconstructs(t) {
        return Err(CounterexError::ClassMismatch("witness does not reconstruct the target".into()));
    }
    if !witness.p_has_zero() {
        return Err(CounterexError::ClassMismatch("witness P has no zero entry".into()));
    }
    let fq: &PrimeField = t.field();
    let t_hat = linalg::identity(fq, l).hcat(&witness.p);
    let tau = (l..s).find(|&c| t_hat.column(c).contains(&0)).expect("P has a zero");
    let k: Vec<usize> = (0..l).filter(|&i| *t_hat.get(i, tau) != 0).collect();
    let j1 = k[0];
    let p = (0..l).find(|i| !k.contains(i)).expect("column tau has a zero");
    let k_bar: Vec<usize> = (0..s).filter(|c| !k.contains(c) && *c != tau && *c != p).collect();
    let kappa = witness.perm.clone();

    // σ_k of the construction is source kappa[k] of T
    let name = |k: usize| format!("s{}", kappa[k] + 1);
    let mut nodes: Vec<String> = (0..s).map(|c| format!("s{}", c + 1)).collect();
    let sources = nodes.clone();
    nodes.push("v".into());
    nodes.push("rho".into());
    let mut edges = vec![(name(p), name(j1)), (name(p), "v".into()), (name(tau), "v".into())];
    edges.extend(k[1..].iter().map(|&j| (name(tau), name(j))));
    edges.extend(k.iter().map(|&j| (name(j), "rho".into())));
    edges.push(("v".into(), "rho".into()));
    edges.extend(k_bar.iter().map(|&j| (name(j), "rho".into())));
    let network = Network::new(fq.order() as u64, nodes, sources, "rho".into(), edges)
        .map_err(|e| CounterexError::ConstructionMismatch(e.to_string()))?;

    let mincut = self_check(&network, t)?;
    Ok(CounterexampleBundle {
        network,
        target: t.clone(),
        t_hat,
        construction: Construction { tau, k, j1, p, k_bar, kappa },
        mincut,
    })
}

/// `N_P` for any target that has a zero-containing equivalent form: a `HasZero`
/// witness, or over `F_2` the dichotomy transform of an all-ones form.
pub fn build_for_target(t: &TargetMatrix) -> Result<CounterexampleBundle, CounterexError> {
    let class = equiv::classify(t).map_err(|e| CounterexError::ClassMismatch(e.to_string()))?;
    match class {
        Classification::HasZero(w) => build_np(t, &w),
        Classification::AllUnits(_) if t.q() == 2 => {
            let w = equiv::binary_zero_transform(t).map_err(|e| CounterexError::ClassMismatch(e.to_string()))?;
            build_np(t, &w)
        }
        other => Err(CounterexError::ClassMismatch(format!("target is {}", other.name()))),
    }
}

/// Rows `{j1, p}` and columns `{j1, p, τ}` of `T̂`.
pub fn induced_gadget_target(bundle: &CounterexampleBundle) -> TargetMatrix {
    let c = &bundle.construction;
    let m = bundle.t_hat.select_rows(&[c.j1, c.p]).select_columns(&[c.j1, c.p, c.tau]);
    TargetMatrix::from_matrix(*bundle.target.field(), m).expect("gadget target is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn n1_bundle() {
        for q in [2, 3] {
            let b = build_n1(q).unwrap();
            assert_eq!(b.mincut.value, Ratio::from_integer(1));
            assert_eq!(b.mincut.witness, vec![2, 3]);
        }
    }

    #[test]
    fn gadget_from_t1() {
        let t = TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let b = build_for_target(&t).unwrap();
        assert_eq!(b.network.nodes().len(), 5);
        assert_eq!(b.network.num_edges(), 5);
        let c = &b.construction;
        assert_eq!((c.tau, c.k.clone(), c.j1, c.p, c.k_bar.clone()), (2, vec![0], 0, 1, vec![]));
        assert_eq!(induced_gadget_target(&b), t);
    }

    #[test]
    fn four_source_example() {
        let t = TargetMatrix::new(2, vec![vec![1, 0, 1, 1], vec![0, 1, 0, 1]]).unwrap();
        let b = build_for_target(&t).unwrap();
        let c = &b.construction;
        assert_eq!((c.tau, c.k.clone(), c.p, c.k_bar.clone()), (2, vec![0], 1, vec![3]));
        assert_eq!(b.mincut.value, Ratio::from_integer(1));
    }

    #[test]
    fn gadget_over_f3_keeps_entry() {
        let t = TargetMatrix::new(3, vec![vec![1, 0, 2], vec![0, 1, 0]]).unwrap();
        let b = build_for_target(&t).unwrap();
        assert_eq!(*induced_gadget_target(&b).matrix(), Matrix::from_rows(vec![vec![1, 0, 2], vec![0, 1, 0]]));
    }

    #[test]
    fn all_units_is_rejected() {
        let t = TargetMatrix::new(3, vec![vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        assert!(matches!(build_for_target(&t), Err(CounterexError::ClassMismatch(_))));
    }
}
