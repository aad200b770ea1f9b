//! Single-receiver networks: a directed acyclic multigraph with an ordered
//! source list and one receiver.
//!
//! Edges are identified by their position in the canonical order, which is a
//! topological order: whenever `head(e_i) = tail(e_j)` we have `i < j`. Any
//! matrix indexed by consecutive edge pairs is therefore strictly upper
//! triangular.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{FieldDescriptor, PrimeField};

/// Position of an edge in the canonical order, 0-based.
pub type EdgeId = usize;
/// Position of a node in the node list.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("CyclicGraph: the graph contains a directed cycle")]
    CyclicGraph,
    #[error("ReceiverIsSource: receiver {0:?} is declared as a source")]
    ReceiverIsSource(String),
    #[error("UnreachableNode: node {0:?} has no directed path to the receiver")]
    UnreachableNode(String),
    #[error("OrphanNonSource: node {0:?} has no in-edges but is not a source")]
    OrphanNonSource(String),
    #[error("UnknownNode: {0:?}")]
    UnknownNode(String),
}

impl NetworkError {
    /// Short variant name, as printed by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Parse(_) => "ParseError",
            Self::CyclicGraph => "CyclicGraph",
            Self::ReceiverIsSource(_) => "ReceiverIsSource",
            Self::UnreachableNode(_) => "UnreachableNode",
            Self::OrphanNonSource(_) => "OrphanNonSource",
            Self::UnknownNode(_) => "UnknownNode",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    field: PrimeField,
    nodes: Vec<String>,
    sources: Vec<NodeId>,
    receiver: NodeId,
    edges: Vec<Edge>,
    in_edges: Vec<Vec<EdgeId>>,
    out_edges: Vec<Vec<EdgeId>>,
    /// `source_index[v] = Some(τ)` when node `v` is source `σ_τ`.
    source_index: Vec<Option<usize>>,
}

/// On-disk network description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub field: FieldDescriptor,
    pub nodes: Vec<String>,
    pub sources: Vec<String>,
    pub receiver: String,
    pub edges: Vec<[String; 2]>,
}

impl Network {
    /// Validates the description and sorts edges into canonical order
    /// (Kahn's algorithm over edges, ties broken by input position).
    pub fn new(
        q: u64,
        nodes: Vec<String>,
        sources: Vec<String>,
        receiver: String,
        edges: Vec<(String, String)>,
    ) -> Result<Self, NetworkError> {
        let field = PrimeField::new(q).map_err(|e| NetworkError::Parse(e.to_string()))?;
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, name) in nodes.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(NetworkError::Parse(format!("duplicate node {name:?}")));
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| NetworkError::UnknownNode(name.to_owned()))
        };
        let receiver_id = lookup(&receiver)?;
        let mut source_ids = Vec::with_capacity(sources.len());
        let mut source_index = vec![None; nodes.len()];
        for (tau, name) in sources.iter().enumerate() {
            let id = lookup(name)?;
            if source_index[id].is_some() {
                return Err(NetworkError::Parse(format!("duplicate source {name:?}")));
            }
            source_index[id] = Some(tau);
            source_ids.push(id);
        }
        if source_ids.is_empty() {
            return Err(NetworkError::Parse("at least one source is required".into()));
        }
        if source_index[receiver_id].is_some() {
            return Err(NetworkError::ReceiverIsSource(receiver));
        }
        let raw: Vec<Edge> = edges
            .iter()
            .map(|(t, h)| Ok(Edge { tail: lookup(t)?, head: lookup(h)? }))
            .collect::<Result<_, NetworkError>>()?;

        let edges = canonical_order(nodes.len(), &raw).ok_or(NetworkError::CyclicGraph)?;

        let mut in_edges = vec![Vec::new(); nodes.len()];
        let mut out_edges = vec![Vec::new(); nodes.len()];
        for (id, e) in edges.iter().enumerate() {
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }

        // every node must reach the receiver: reverse BFS from it
        let mut seen = vec![false; nodes.len()];
        seen[receiver_id] = true;
        let mut queue = VecDeque::from([receiver_id]);
        while let Some(v) = queue.pop_front() {
            for &e in &in_edges[v] {
                let u = edges[e].tail;
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(NetworkError::UnreachableNode(nodes[v].clone()));
        }
        if let Some(v) = (0..nodes.len()).find(|&v| in_edges[v].is_empty() && source_index[v].is_none())
        {
            return Err(NetworkError::OrphanNonSource(nodes[v].clone()));
        }

        Ok(Self {
            field,
            nodes,
            sources: source_ids,
            receiver: receiver_id,
            edges,
            in_edges,
            out_edges,
            source_index,
        })
    }

    pub fn from_file(file: NetworkFile) -> Result<Self, NetworkError> {
        if file.field.n.is_some_and(|n| n != 1) || file.field.modulus.is_some() {
            return Err(NetworkError::Parse(
                "network alphabet must be a prime field {\"q\": p}".into(),
            ));
        }
        Self::new(
            file.field.q,
            file.nodes,
            file.sources,
            file.receiver,
            file.edges.into_iter().map(|[t, h]| (t, h)).collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        let file: NetworkFile =
            serde_json::from_str(text).map_err(|e| NetworkError::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            field: FieldDescriptor { q: self.field.order() as u64, n: None, modulus: None },
            nodes: self.nodes.clone(),
            sources: self.sources.iter().map(|&s| self.nodes[s].clone()).collect(),
            receiver: self.nodes[self.receiver].clone(),
            edges: self
                .edges
                .iter()
                .map(|e| [self.nodes[e.tail].clone(), self.nodes[e.head].clone()])
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("network serializes")
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId, NetworkError> {
        self.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| NetworkError::UnknownNode(name.to_owned()))
    }

    pub fn node_name(&self, v: NodeId) -> &str {
        &self.nodes[v]
    }

    /// Source nodes `σ_1..σ_s` in declared order.
    pub fn sources(&self) -> &[NodeId] {
        &self.sources
    }

    pub fn num_sources(&self) -> usize {
        self.sources.len()
    }

    /// Index `τ` of the source at node `v`, if any.
    pub fn source_index(&self, v: NodeId) -> Option<usize> {
        self.source_index[v]
    }

    pub fn receiver(&self) -> NodeId {
        self.receiver
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges_of(&self, name: &str) -> Result<&[EdgeId], NetworkError> {
        Ok(self.in_edges(self.node_id(name)?))
    }

    pub fn out_edges_of(&self, name: &str) -> Result<&[EdgeId], NetworkError> {
        Ok(self.out_edges(self.node_id(name)?))
    }

    /// Whether `e_i` feeds `e_j` directly (`head(e_i) = tail(e_j)`).
    pub fn consecutive(&self, ei: EdgeId, ej: EdgeId) -> bool {
        self.edges[ei].head == self.edges[ej].tail
    }

    /// All consecutive edge pairs `(ê, e)` in lexicographic order.
    pub fn consecutive_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut pairs = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for &ej in &self.out_edges[e.head] {
                pairs.push((ei, ej));
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// Nodes that can still reach the receiver once `removed` edges are deleted.
    pub fn reaches_receiver_without(&self, removed: &BTreeSet<EdgeId>) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.receiver] = true;
        let mut queue = VecDeque::from([self.receiver]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.in_edges[v] {
                if removed.contains(&e) {
                    continue;
                }
                let u = self.edges[e].tail;
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Edge-level Kahn ordering; `None` on a cycle.
fn canonical_order(num_nodes: usize, raw: &[Edge]) -> Option<Vec<Edge>> {
    let mut pending_in = vec![0usize; num_nodes];
    let mut out_by_node: Vec<Vec<usize>> = vec![Vec::new(); num_nodes];
    for (i, e) in raw.iter().enumerate() {
        pending_in[e.head] += 1;
        out_by_node[e.tail].push(i);
    }
    let mut ready: BTreeSet<usize> = (0..raw.len()).filter(|&i| pending_in[raw[i].tail] == 0).collect();
    let mut order = Vec::with_capacity(raw.len());
    while let Some(i) = ready.pop_first() {
        order.push(raw[i]);
        let h = raw[i].head;
        pending_in[h] -= 1;
        if pending_in[h] == 0 {
            ready.extend(out_by_node[h].iter().copied());
        }
    }
    (order.len() == raw.len()).then_some(order)
}
