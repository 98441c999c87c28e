//! Weighted multigraphs with stable vertex and edge ids, plus the cut
//! primitives everything else is built on.

use std::collections::BTreeSet;

use thiserror::Error;

/// Exact edge weight. Callers that read decimal input are expected to scale
/// it to integers before building a graph; all comparisons in this crate are
/// exact integer comparisons.
pub type Weight = i64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a graph needs at least two vertices and one edge")]
    EmptyGraph,
    #[error("side is empty")]
    EmptySide,
    #[error("side contains every vertex")]
    FullSide,
    #[error("edge set does not split the graph into exactly two parts")]
    NotACutSet,
    #[error("no edge with id {0}")]
    MissingEdge(usize),
}

/// An edge keeps the endpoints it was built with; `id` equals its index in
/// the owning graph's edge list and never changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub weight: Weight,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.u {
            self.v
        } else {
            self.u
        }
    }

    fn touches(&self, v: usize) -> bool {
        self.u == v || self.v == v
    }
}

/// All edges joining one pair of vertices, bundled. `u < v`, edge ids
/// ascending, `weight` is the exact sum of the member weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClosure {
    pub u: usize,
    pub v: usize,
    pub edge_ids: Vec<usize>,
    pub weight: Weight,
}

/// A cut in canonical form: `side` is the side that does not contain
/// vertex 0, `edge_ids` the edges with exactly one endpoint in `side`.
/// The connectivity flags describe the subgraphs induced by `side` and its
/// complement; both true means this is a connected sides cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: BTreeSet<usize>,
    pub edge_ids: BTreeSet<usize>,
    pub weight: Weight,
    pub side_connected: bool,
    pub coside_connected: bool,
}

impl Cut {
    pub fn is_connected_sides(&self) -> bool {
        self.side_connected && self.coside_connected
    }
}

/// Undirected multigraph on vertices `0..n`. Self loops are rejected,
/// parallel edges are allowed, and ids stay stable for the lifetime of the
/// value, so cuts computed downstream always refer back to input edges.
#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn build(n: usize, edges: &[(usize, usize, Weight)]) -> Result<Self, GraphError> {
        if n < 2 || edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut list = Vec::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v, weight)) in edges.iter().enumerate() {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(Edge { id, u, v, weight });
            incidence[u].push(id);
            incidence[v].push(id);
        }
        Ok(Multigraph {
            n,
            edges: list,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// Ids of the edges incident to `v`, in input order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.incidence[v]
            .iter()
            .map(|&id| self.edges[id].other(v))
            .collect()
    }

    /// Number of distinct neighbors of `v`, counting each parallel closure
    /// once.
    pub fn series_degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// The parallel closure between `u` and `v`, or `None` when they are not
    /// adjacent.
    pub fn closure(&self, u: usize, v: usize) -> Option<ParallelClosure> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let mut edge_ids: Vec<usize> = self.incidence[a]
            .iter()
            .copied()
            .filter(|&id| self.edges[id].touches(b))
            .collect();
        if edge_ids.is_empty() {
            return None;
        }
        edge_ids.sort_unstable();
        let weight = edge_ids.iter().map(|&id| self.edges[id].weight).sum();
        Some(ParallelClosure {
            u: a,
            v: b,
            edge_ids,
            weight,
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &id in &self.incidence[v] {
                let w = self.edges[id].other(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Whether removing the edge separates its endpoints.
    pub fn is_bridge(&self, id: usize) -> Result<bool, GraphError> {
        let e = *self.edges.get(id).ok_or(GraphError::MissingEdge(id))?;
        let mut seen = vec![false; self.n];
        let mut stack = vec![e.u];
        seen[e.u] = true;
        while let Some(v) = stack.pop() {
            for &other_id in &self.incidence[v] {
                if other_id == id {
                    continue;
                }
                let w = self.edges[other_id].other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(!seen[e.v])
    }

    /// Whether the subgraph induced by `side` is connected. A singleton side
    /// counts as connected.
    pub fn is_connected_induced(&self, side: &BTreeSet<usize>) -> Result<bool, GraphError> {
        let start = *side.iter().next().ok_or(GraphError::EmptySide)?;
        for &v in side {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut member = vec![false; self.n];
        for &v in side {
            member[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &id in &self.incidence[v] {
                let w = self.edges[id].other(v);
                if member[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        Ok(count == side.len())
    }

    /// The cut determined by a side, in canonical form. `side` must be a
    /// proper nonempty subset of the vertices.
    pub fn cut_of_side(&self, side: &BTreeSet<usize>) -> Result<Cut, GraphError> {
        if side.is_empty() {
            return Err(GraphError::EmptySide);
        }
        for &v in side {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if side.len() == self.n {
            return Err(GraphError::FullSide);
        }
        let canonical: BTreeSet<usize> = if side.contains(&0) {
            (0..self.n).filter(|v| !side.contains(v)).collect()
        } else {
            side.clone()
        };
        let mut member = vec![false; self.n];
        for &v in &canonical {
            member[v] = true;
        }
        let mut edge_ids = BTreeSet::new();
        let mut weight = 0;
        for e in &self.edges {
            if member[e.u] != member[e.v] {
                edge_ids.insert(e.id);
                weight += e.weight;
            }
        }
        let coside: BTreeSet<usize> = (0..self.n).filter(|v| !member[*v]).collect();
        let side_connected = self.is_connected_induced(&canonical)?;
        let coside_connected = self.is_connected_induced(&coside)?;
        Ok(Cut {
            side: canonical,
            edge_ids,
            weight,
            side_connected,
            coside_connected,
        })
    }

    /// Reconstructs a cut from its edge set: removing the edges must leave
    /// exactly two connected components. Weights are re-read from the graph,
    /// so the result is trustworthy even when the set came from elsewhere.
    pub fn cut_from_edge_set(&self, edge_ids: &BTreeSet<usize>) -> Result<Cut, GraphError> {
        for &id in edge_ids {
            if id >= self.edges.len() {
                return Err(GraphError::MissingEdge(id));
            }
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &id in &self.incidence[v] {
                    if edge_ids.contains(&id) {
                        continue;
                    }
                    let w = self.edges[id].other(v);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        if next != 2 {
            return Err(GraphError::NotACutSet);
        }
        let side: BTreeSet<usize> = (0..self.n).filter(|&v| comp[v] != comp[0]).collect();
        let cut = self.cut_of_side(&side)?;
        if &cut.edge_ids != edge_ids {
            // The set must be exactly the crossing edges, with nothing extra.
            return Err(GraphError::NotACutSet);
        }
        Ok(cut)
    }

    /// Copy of the graph with one edge weight replaced.
    pub fn with_edge_weight(&self, id: usize, weight: Weight) -> Result<Self, GraphError> {
        if id >= self.edges.len() {
            return Err(GraphError::MissingEdge(id));
        }
        let mut g = self.clone();
        g.edges[id].weight = weight;
        Ok(g)
    }

    /// Contracts one edge: its endpoints merge into `min(u, v)`, the edge
    /// and every edge parallel to it disappear, and the survivors are
    /// renumbered compactly. The maps give new ids in terms of old ones.
    pub fn contract_edge(&self, id: usize) -> Result<EdgeContraction, GraphError> {
        let e = *self.edges.get(id).ok_or(GraphError::MissingEdge(id))?;
        let keep = e.u.min(e.v);
        let drop = e.u.max(e.v);
        let vertex_map: Vec<usize> = (0..self.n)
            .map(|v| {
                if v == drop {
                    keep
                } else if v > drop {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for old in &self.edges {
            let u = vertex_map[old.u];
            let v = vertex_map[old.v];
            if u == v {
                continue; // a parallel sibling of the contracted edge
            }
            edge_map.push(old.id);
            edges.push((u, v, old.weight));
        }
        let graph = Multigraph::build(self.n - 1, &edges)?;
        Ok(EdgeContraction {
            graph,
            edge_map,
            vertex_map,
        })
    }
}

/// Result of [`Multigraph::contract_edge`]: the contracted graph plus maps
/// back to the original ids (`edge_map[new_id] = old_id`).
#[derive(Debug, Clone)]
pub struct EdgeContraction {
    pub graph: Multigraph,
    pub edge_map: Vec<usize>,
    pub vertex_map: Vec<usize>,
}
