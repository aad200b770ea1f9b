//! Unit-capacity max-flow (Edmonds–Karp) from a set of sources to the receiver.

use std::collections::VecDeque;

use crate::netmodel::{EdgeId, Network, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: usize,
    /// Units of flow on each network edge (0 or 1).
    pub edge_flow: Vec<u8>,
    /// Nodes reachable from the super-source in the final residual graph.
    pub source_side: Vec<bool>,
}

impl FlowResult {
    /// Network edges leaving the source side of the residual cut; a minimum
    /// edge cut between the chosen sources and the receiver.
    pub fn min_cut(&self, net: &Network) -> Vec<EdgeId> {
        net.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.source_side[e.tail] && !self.source_side[e.head])
            .map(|(i, _)| i)
            .collect()
    }
}

struct Arc {
    to: usize,
    cap: usize,
    /// index of the reverse arc in `arcs`
    rev: usize,
}

/// Max-flow from a super-source attached (with unbounded capacity) to every node
/// in `from` down to the receiver, every network edge carrying capacity 1.
pub fn max_flow(net: &Network, from: &[NodeId]) -> FlowResult {
    run(net, from, net.num_edges() + 1)
}

/// Edge-disjoint paths to the receiver, at most one starting at each node of
/// `from`. Returns the flow and, for every node of `from` that got a path, the
/// path's edges in order; `paths[k]` belongs to `from[k]`.
pub fn disjoint_paths(net: &Network, from: &[NodeId]) -> (FlowResult, Vec<Option<Vec<EdgeId>>>) {
    let flow = run(net, from, 1);
    let mut used = vec![false; net.num_edges()];
    let mut starts = vec![0usize; net.nodes().len()];
    let mut paths = Vec::with_capacity(from.len());
    // a node of `from` carries a unit iff its out-flow exceeds its in-flow
    let out = |v: NodeId| net.out_edges(v).iter().filter(|&&e| flow.edge_flow[e] == 1).count();
    let inn = |v: NodeId| net.in_edges(v).iter().filter(|&&e| flow.edge_flow[e] == 1).count();
    for &v in from {
        if out(v) <= inn(v) + starts[v] {
            paths.push(None);
            continue;
        }
        starts[v] += 1;
        let mut path = Vec::new();
        let mut u = v;
        while u != net.receiver() {
            let e = *net
                .out_edges(u)
                .iter()
                .find(|&&e| flow.edge_flow[e] == 1 && !used[e])
                .expect("flow conservation leaves an unused outgoing unit");
            used[e] = true;
            path.push(e);
            u = net.edge(e).head;
        }
        paths.push(Some(path));
    }
    (flow, paths)
}

fn run(net: &Network, from: &[NodeId], source_cap: usize) -> FlowResult {
    let n = net.nodes().len();
    let super_source = n;
    let mut arcs: Vec<Arc> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let add = |arcs: &mut Vec<Arc>, adj: &mut Vec<Vec<usize>>, u: usize, v: usize, cap: usize| {
        let id = arcs.len();
        arcs.push(Arc { to: v, cap, rev: id + 1 });
        arcs.push(Arc { to: u, cap: 0, rev: id });
        adj[u].push(id);
        adj[v].push(id + 1);
        id
    };
    let edge_arc: Vec<usize> = net
        .edges()
        .iter()
        .map(|e| add(&mut arcs, &mut adj, e.tail, e.head, 1))
        .collect();
    for &v in from {
        add(&mut arcs, &mut adj, super_source, v, source_cap);
    }

    let sink = net.receiver();
    let mut value = 0;
    loop {
        // BFS for a shortest augmenting path
        let mut parent_arc = vec![usize::MAX; n + 1];
        let mut visited = vec![false; n + 1];
        visited[super_source] = true;
        let mut queue = VecDeque::from([super_source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &a in &adj[u] {
                let v = arcs[a].to;
                if arcs[a].cap > 0 && !visited[v] {
                    visited[v] = true;
                    parent_arc[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !visited[sink] {
            let edge_flow = edge_arc.iter().map(|&a| (1 - arcs[a].cap) as u8).collect();
            visited.truncate(n);
            return FlowResult { value, edge_flow, source_side: visited };
        }
        // every augmenting path has bottleneck 1 (it must cross a network edge)
        let mut v = sink;
        while v != super_source {
            let a = parent_arc[v];
            arcs[a].cap -= 1;
            let r = arcs[a].rev;
            arcs[r].cap += 1;
            v = arcs[r].to;
        }
        value += 1;
    }
}
