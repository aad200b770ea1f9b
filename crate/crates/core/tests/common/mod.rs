#![allow(dead_code)]

use std::path::PathBuf;

use lincomp::code::{self, LinearCode, TargetMatrix};
use lincomp::ff::{ExtField, Felem, Field, PrimeField};
use lincomp::linalg::{self, Matrix};
use lincomp::Network;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn n1() -> Network {
    Network::parse(&fixture("n1.json")).unwrap()
}

pub fn t1(q: u64) -> TargetMatrix {
    TargetMatrix::new(q, vec![vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
}

/// A random valid DAG with `s` sources, up to `relays` relay nodes and at most
/// `max_edges` edges. Every node gets an out-edge to a later node in a random
/// topological order, so every node reaches the receiver.
pub fn random_network<R: Rng>(rng: &mut R, q: u32, s: usize, relays: usize, max_edges: usize) -> Network {
    loop {
        let mut order: Vec<String> = (0..s).map(|i| format!("s{i}")).collect();
        order.extend((0..relays).map(|i| format!("v{i}")));
        order.shuffle(rng);
        // the first node has no in-edges, so it must be a source
        if order[0].starts_with('v') {
            continue;
        }
        order.push("r".into());
        let k = order.len();
        let mut edges = Vec::new();
        for i in 0..k - 1 {
            let j = rng.gen_range(i + 1..k);
            edges.push((order[i].clone(), order[j].clone()));
        }
        for i in 1..k - 1 {
            if order[i].starts_with('v') && !edges.iter().any(|(_, h)| *h == order[i]) {
                let j = rng.gen_range(0..i);
                edges.push((order[j].clone(), order[i].clone()));
            }
        }
        if edges.len() > max_edges {
            continue;
        }
        let extra = rng.gen_range(0..=max_edges - edges.len());
        for _ in 0..extra {
            let i = rng.gen_range(0..k - 1);
            let j = rng.gen_range(i + 1..k);
            edges.push((order[i].clone(), order[j].clone()));
        }
        let sources: Vec<String> = (0..s).map(|i| format!("s{i}")).collect();
        let mut nodes = sources.clone();
        nodes.extend((0..relays).map(|i| format!("v{i}")));
        nodes.push("r".into());
        return Network::new(q as u64, nodes, sources, "r".into(), edges).expect("generator builds valid DAGs");
    }
}

/// Every valid `l x s` target over `F_q`, in index order.
pub fn all_targets(q: u32, l: usize, s: usize) -> Vec<TargetMatrix> {
    let total = (q as u64).pow((l * s) as u32);
    (0..total)
        .filter_map(|mut idx| {
            let rows = (0..l)
                .map(|_| {
                    (0..s)
                        .map(|_| {
                            let v = (idx % q as u64) as u32;
                            idx /= q as u64;
                            v
                        })
                        .collect()
                })
                .collect();
            TargetMatrix::new(q as u64, rows).ok()
        })
        .collect()
}

pub fn random_invertible<R: Rng>(rng: &mut R, fq: &PrimeField, n: usize) -> Matrix<u32> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| fq.random(rng));
        if linalg::inverse(fq, &m).is_some() {
            return m;
        }
    }
}

/// A random target `Q (I u) Π` with `u` a unit column, `l = s - 1`.
pub fn random_all_units<R: Rng>(rng: &mut R, q: u32, s: usize) -> TargetMatrix {
    let fq = PrimeField::new(q as u64).unwrap();
    let l = s - 1;
    let qm = random_invertible(rng, &fq, l);
    let u = Matrix::from_fn(l, 1, |_, _| rng.gen_range(1..q));
    let w = linalg::mul(&fq, &qm, &linalg::identity(&fq, l).hcat(&u));
    let mut perm: Vec<usize> = (0..s).collect();
    perm.shuffle(rng);
    let m = Matrix::from_fn(l, s, |i, j| *w.get(i, perm[j]));
    TargetMatrix::from_matrix(fq, m).unwrap()
}

/// A random valid target of the given shape.
pub fn random_target<R: Rng>(rng: &mut R, q: u32, l: usize, s: usize) -> TargetMatrix {
    loop {
        let rows = (0..l).map(|_| (0..s).map(|_| rng.gen_range(0..q)).collect()).collect();
        if let Ok(t) = TargetMatrix::new(q as u64, rows) {
            return t;
        }
    }
}

/// Transfer matrix obtained by simulating each unit message; independent of the
/// matrix formula in the library.
pub fn transfer_by_simulation(net: &Network, code: &LinearCode) -> Vec<Vec<Felem>> {
    let fld = code.field();
    let s = net.num_sources();
    (0..s)
        .map(|tau| {
            let msgs: Vec<Felem> = (0..s).map(|i| if i == tau { fld.one() } else { fld.zero() }).collect();
            code::simulate(net, code, &msgs).unwrap()
        })
        .collect()
}

/// Whether a code computes the target, judged by unit-message simulation.
pub fn computes(net: &Network, code: &LinearCode, t: &TargetMatrix) -> bool {
    let fld = code.field();
    transfer_by_simulation(net, code)
        .iter()
        .enumerate()
        .all(|(tau, row)| row.iter().enumerate().all(|(j, v)| *v == fld.from_base(t.entry(j, tau))))
}

/// Coefficient slots of a code on `net` with `l` outputs: (kind, i, j).
pub fn code_slots(net: &Network, l: usize) -> Vec<(char, usize, usize)> {
    let mut slots = Vec::new();
    for (tau, &v) in net.sources().iter().enumerate() {
        for &e in net.out_edges(v) {
            slots.push(('A', tau, e));
        }
    }
    for (i, j) in net.consecutive_pairs() {
        slots.push(('F', i, j));
    }
    for &e in net.in_edges(net.receiver()) {
        for j in 0..l {
            slots.push(('B', e, j));
        }
    }
    slots
}

pub fn code_from_digits(fld: &ExtField, l: usize, slots: &[(char, usize, usize)], digits: &[u32]) -> LinearCode {
    let mut code = LinearCode::zero(fld.clone(), l);
    for (&(kind, i, j), &d) in slots.iter().zip(digits) {
        let v = fld.from_base(d);
        match kind {
            'A' => code.set_a(i, j, v),
            'F' => code.set_f(i, j, v),
            _ => code.set_b(i, j, v),
        }
    }
    code
}

/// Searches all `F_q` codes whose pinned slots take the given values; returns
/// the number of codes tried and whether one computes `t`.
pub fn search_prime_field_codes(net: &Network, t: &TargetMatrix, pins: &[((char, usize, usize), u32)]) -> (u64, bool) {
    let q = t.q();
    let fld = ExtField::new(q as u64, 1).unwrap();
    let slots = code_slots(net, t.l());
    let free: Vec<usize> = (0..slots.len()).filter(|&i| !pins.iter().any(|(s, _)| *s == slots[i])).collect();
    let total = (q as u64).pow(free.len() as u32);
    let mut digits = vec![0u32; slots.len()];
    for (slot, v) in pins {
        let i = slots.iter().position(|s| s == slot).expect("pinned slot exists");
        digits[i] = *v;
    }
    for idx in 0..total {
        let mut rest = idx;
        for &i in &free {
            digits[i] = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        let code = code_from_digits(&fld, t.l(), &slots, &digits);
        if computes(net, &code, t) {
            return (idx + 1, true);
        }
    }
    (total, false)
}

/// [`random_network`] with the relay count drawn from `relays`.
pub fn random_net<R: Rng>(rng: &mut R, q: u32, s: usize, relays: std::ops::Range<usize>, max_edges: usize) -> Network {
    let k = rng.gen_range(relays);
    random_network(rng, q, s, k, max_edges)
}

/// [`random_target`] with `l` drawn from `1..=s`.
pub fn random_target_any<R: Rng>(rng: &mut R, q: u32, s: usize) -> TargetMatrix {
    let l = rng.gen_range(1..=s);
    random_target(rng, q, l, s)
}
