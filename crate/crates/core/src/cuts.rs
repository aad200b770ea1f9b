//! Cuts, separated source sets `K_C`, and the min-cut ratio
//! `min over cuts C of |C| / rank(T_{K_C})`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::code::TargetMatrix;
use crate::flow;
use crate::netmodel::{EdgeId, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("DimensionMismatch: target has {target} columns but the network has {network} sources")]
    DimensionMismatch { target: usize, network: usize },
    #[error("FieldMismatch: target over F_{target} but network over F_{network}")]
    FieldMismatch { target: u32, network: u32 },
}

/// A minimizing cut: `value = |witness| / rank(T_separated)` as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub value: Ratio<usize>,
    pub witness: Vec<EdgeId>,
    /// 0-based indices of the separated sources, ascending.
    pub separated: Vec<usize>,
}

#[derive(Serialize)]
struct RatioJson {
    num: usize,
    den: usize,
}

#[derive(Serialize)]
pub struct CutReportJson {
    value: RatioJson,
    witness: Vec<EdgeId>,
    separated: Vec<usize>,
}

impl CutReport {
    pub fn to_json_value(&self) -> CutReportJson {
        CutReportJson {
            value: RatioJson { num: *self.value.numer(), den: *self.value.denom() },
            witness: self.witness.clone(),
            separated: self.separated.clone(),
        }
    }

    /// Orders by value, then by more separated sources, then lexicographically by witness.
    fn better_than(&self, other: &CutReport) -> bool {
        let key = |r: &CutReport| (r.value, std::cmp::Reverse(r.separated.len()), r.witness.clone());
        key(self) < key(other)
    }
}

/// Sources every one of whose paths to the receiver meets `cut`.
pub fn separated_sources(net: &Network, cut: &[EdgeId]) -> Vec<usize> {
    let removed: BTreeSet<EdgeId> = cut.iter().copied().collect();
    let reach = net.reaches_receiver_without(&removed);
    net.sources()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| !reach[v])
        .map(|(tau, _)| tau)
        .collect()
}

fn check_pair(net: &Network, target: &TargetMatrix) -> Result<(), CutError> {
    if target.s() != net.num_sources() {
        return Err(CutError::DimensionMismatch { target: target.s(), network: net.num_sources() });
    }
    if target.q() != net.q() {
        return Err(CutError::FieldMismatch { target: target.q(), network: net.q() });
    }
    Ok(())
}

fn evaluate(net: &Network, target: &TargetMatrix, mut witness: Vec<EdgeId>) -> Option<CutReport> {
    witness.sort_unstable();
    let separated = separated_sources(net, &witness);
    if separated.is_empty() {
        return None;
    }
    // no zero columns, so a nonempty K_C has positive rank
    let rank = target.rank_of_columns(&separated);
    Some(CutReport { value: Ratio::new(witness.len(), rank), witness, separated })
}

/// Exact min-cut ratio via one unit-capacity max-flow per nonempty source subset.
pub fn mincut_ratio(net: &Network, target: &TargetMatrix) -> Result<CutReport, CutError> {
    check_pair(net, target)?;
    let s = net.num_sources();
    let mut best: Option<CutReport> = None;
    for mask in 1u64..(1u64 << s) {
        let from: Vec<_> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| net.sources()[i]).collect();
        let cut = flow::max_flow(net, &from).min_cut(net);
        if let Some(r) = evaluate(net, target, cut) {
            if best.as_ref().is_none_or(|b| r.better_than(b)) {
                best = Some(r);
            }
        }
    }
    Ok(best.expect("the set of receiver in-edges is always a cut"))
}

/// Reference value by enumerating all `2^|E|` edge subsets.
pub fn mincut_ratio_brute_force(net: &Network, target: &TargetMatrix) -> Result<CutReport, CutError> {
    check_pair(net, target)?;
    let m = net.num_edges();
    assert!(m < 26, "brute force is limited to small networks");
    let mut best: Option<CutReport> = None;
    for mask in 1u64..(1u64 << m) {
        let cut: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if let Some(r) = evaluate(net, target, cut) {
            if best.as_ref().is_none_or(|b| r.better_than(b)) {
                best = Some(r);
            }
        }
    }
    Ok(best.expect("the set of all edges is a cut"))
}

/// The necessary condition `min-cut(N, T) >= 1`.
pub fn check_necessary(net: &Network, target: &TargetMatrix) -> Result<bool, CutError> {
    Ok(mincut_ratio(net, target)?.value >= Ratio::from_integer(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::tests::n1;

    fn t1() -> TargetMatrix {
        TargetMatrix::new(2, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn separated_on_n1() {
        let net = n1();
        assert_eq!(separated_sources(&net, &[2, 3]), vec![0, 1, 2]);
        assert!(separated_sources(&net, &[]).is_empty());
        assert_eq!(separated_sources(&net, &[2]), vec![0]);
    }

    #[test]
    fn n1_min_cut_is_one() {
        let r = mincut_ratio(&n1(), &t1()).unwrap();
        assert_eq!(r.value, Ratio::from_integer(1));
        assert_eq!(r.witness, vec![2, 3]);
        assert!(check_necessary(&n1(), &t1()).unwrap());
        assert_eq!(mincut_ratio_brute_force(&n1(), &t1()).unwrap().value, r.value);
    }

    #[test]
    fn star_with_identity() {
        let net = Network::parse(
            r#"{"field":{"q":2},"nodes":["a","b","c","r"],"sources":["a","b","c"],"receiver":"r",
            "edges":[["a","r"],["b","r"],["c","r"]]}"#,
        )
        .unwrap();
        let t = TargetMatrix::identity(2, 3).unwrap();
        assert_eq!(mincut_ratio(&net, &t).unwrap().value, Ratio::from_integer(1));
    }

    #[test]
    fn shared_edge_fails_for_identity() {
        let net = Network::parse(
            r#"{"field":{"q":2},"nodes":["a","b","v","r"],"sources":["a","b"],"receiver":"r",
            "edges":[["a","v"],["b","v"],["v","r"]]}"#,
        )
        .unwrap();
        let t = TargetMatrix::identity(2, 2).unwrap();
        let r = mincut_ratio(&net, &t).unwrap();
        assert_eq!(r.value, Ratio::new(1, 2));
        assert_eq!(r.witness, vec![2]);
        assert!(!check_necessary(&net, &t).unwrap());
        let sum = TargetMatrix::sum(2, 2).unwrap();
        assert!(check_necessary(&net, &sum).unwrap());
    }

    #[test]
    fn single_source_always_passes() {
        let net = Network::parse(
            r#"{"field":{"q":5},"nodes":["a","v","r"],"sources":["a"],"receiver":"r",
            "edges":[["a","v"],["v","r"],["a","r"]]}"#,
        )
        .unwrap();
        assert!(check_necessary(&net, &TargetMatrix::new(5, vec![vec![1]]).unwrap()).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let t = TargetMatrix::identity(2, 2).unwrap();
        assert!(matches!(mincut_ratio(&n1(), &t), Err(CutError::DimensionMismatch { .. })));
    }
}
