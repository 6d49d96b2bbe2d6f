//! Bipartite cubic graphs, their automorphism groups and arc-transitivity
//! classification.

mod classify;
mod search;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::permgroup::Permutation;

pub use classify::{
    base_arc, classify, stabilizer_sequence, symmetric_sign, t_arc_count, Arc, Classification, Sign, Verdict,
};
pub use search::{
    automorphism_group, automorphism_group_colored, is_isomorphic, AutomorphismGroup, SearchLimits,
    DEFAULT_MAX_VERTICES,
};

const NONE: u32 = u32::MAX;

/// A simple undirected graph of maximum degree 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<[u32; 3]>,
}

impl Graph {
    /// Builds a graph from adjacency lists, rejecting loops, repeated or
    /// one-sided edges and degrees above 3.
    pub fn from_adjacency(lists: &[Vec<usize>]) -> Result<Self> {
        let n = lists.len();
        let mut adj = vec![[NONE; 3]; n];
        for (v, list) in lists.iter().enumerate() {
            if list.len() > 3 {
                return domain(format!("vertex {v} has degree {} > 3", list.len()));
            }
            for (k, &w) in list.iter().enumerate() {
                if w >= n {
                    return domain(format!("vertex {v} lists neighbour {w} outside 0..{n}"));
                }
                if w == v {
                    return domain(format!("loop at vertex {v}"));
                }
                if list[..k].contains(&w) {
                    return domain(format!("repeated edge {v}-{w}"));
                }
                if !lists[w].contains(&v) {
                    return domain(format!("edge {v}-{w} is listed only at {v}"));
                }
                adj[v][k] = w as u32;
            }
        }
        Ok(Graph { adj })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return domain(format!("edge {u}-{v} outside 0..{n}"));
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        Graph::from_adjacency(&lists)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().take_while(|&&w| w != NONE).map(|&w| w as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&(v as u32))
    }

    /// Edges `(u, v)` with `u < v`, in order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn raw(&self) -> &[[u32; 3]] {
        &self.adj
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || bfs_order(self, 0).len() == self.len()
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.len()
            && (0..self.len()).all(|u| self.neighbors(u).all(|v| self.has_edge(p.apply(u), p.apply(v))))
    }

    /// The graph with vertex `v` renamed `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        let mut adj = vec![[NONE; 3]; self.len()];
        for u in 0..self.len() {
            for (k, v) in self.neighbors(u).enumerate() {
                adj[p.apply(u)][k] = p.apply(v) as u32;
            }
        }
        Graph { adj }
    }
}

fn bfs_order(g: &Graph, start: usize) -> Vec<usize> {
    let mut seen = vec![false; g.len()];
    seen[start] = true;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}

/// A simple, connected, trivalent, bipartite graph with its two vertex
/// types labelled 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCubicGraph {
    graph: Graph,
    types: Vec<u8>,
    types_from_polytope: bool,
}

/// Checks, in order: simple, connected, trivalent, bipartite (and that the
/// given types, if any, form the bipartition with equal halves).
pub fn validate(lists: &[Vec<usize>], types: Option<&[u8]>) -> Result<BipartiteCubicGraph> {
    let graph = Graph::from_adjacency(lists)?;
    BipartiteCubicGraph::new(graph, types)
}

impl BipartiteCubicGraph {
    pub fn new(graph: Graph, types: Option<&[u8]>) -> Result<Self> {
        let n = graph.len();
        if n == 0 {
            return domain("empty graph");
        }
        if !graph.is_connected() {
            return domain("graph is disconnected");
        }
        if let Some(v) = (0..n).find(|&v| graph.degree(v) != 3) {
            return domain(format!("vertex {v} has degree {}", graph.degree(v)));
        }
        let mut side = vec![0u8; n];
        side[0] = 1;
        for u in bfs_order(&graph, 0) {
            for v in graph.neighbors(u) {
                if side[v] == 0 {
                    side[v] = 3 - side[u];
                } else if side[v] == side[u] {
                    return domain(format!("odd cycle through edge {u}-{v}: graph is not bipartite"));
                }
            }
        }
        let types = match types {
            None => side,
            Some(t) => {
                if t.len() != n {
                    return domain(format!("{} type labels for {n} vertices", t.len()));
                }
                if let Some(v) = (0..n).find(|&v| t[v] != 1 && t[v] != 2) {
                    return domain(format!("vertex {v} has type {}, expected 1 or 2", t[v]));
                }
                if let Some((u, v)) = graph.edges().into_iter().find(|&(u, v)| t[u] == t[v]) {
                    return domain(format!("edge {u}-{v} joins two vertices of type {}", t[u]));
                }
                t.to_vec()
            }
        };
        if 2 * types.iter().filter(|&&t| t == 1).count() != n {
            return domain("the two types have different sizes");
        }
        Ok(BipartiteCubicGraph { graph, types, types_from_polytope: false })
    }

    /// Marks type 1 as the 1-faces of a source polytope, which fixes the
    /// order of a semisymmetric type pair.
    pub fn with_polytope_types(mut self) -> Self {
        self.types_from_polytope = true;
        self
    }

    pub fn types_from_polytope(&self) -> bool {
        self.types_from_polytope
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn types(&self) -> &[u8] {
        &self.types
    }

    pub fn type_of(&self, v: usize) -> u8 {
        self.types[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v)
    }

    pub fn vertices_of_type(&self, j: u8) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.types[v] == j)
    }

    /// The same graph with types 1 and 2 exchanged.
    pub fn swapped_types(&self) -> Self {
        BipartiteCubicGraph {
            graph: self.graph.clone(),
            types: self.types.iter().map(|&t| 3 - t).collect(),
            types_from_polytope: self.types_from_polytope,
        }
    }

    /// The graph with vertex `v` renamed `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Self {
        let mut types = vec![0; self.len()];
        for v in 0..self.len() {
            types[p.apply(v)] = self.types[v];
        }
        BipartiteCubicGraph { graph: self.graph.relabel(p), types, types_from_polytope: self.types_from_polytope }
    }

    /// One line per vertex: `id type: n1 n2 n3`.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.len() {
            let nb: Vec<String> = self.neighbors(v).map(|w| w.to_string()).collect();
            let _ = writeln!(out, "{v} {}: {}", self.types[v], nb.join(" "));
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, u8, Vec<usize>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected 'id type: n1 n2 n3'", lineno + 1));
            let (head, tail) = line.split_once(':').ok_or_else(bad)?;
            let mut head = head.split_whitespace();
            let id: usize = head.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            let ty: u8 = head.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            let nb =
                tail.split_whitespace().map(|x| x.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            rows.push((id, ty, nb));
        }
        let n = rows.len();
        let mut lists = vec![Vec::new(); n];
        let mut types = vec![0u8; n];
        let mut seen = vec![false; n];
        for (id, ty, nb) in rows {
            if id >= n || std::mem::replace(&mut seen[id], true) {
                return Err(Error::Parse(format!("vertex ids must be 0..{n} without repeats, got {id}")));
            }
            lists[id] = nb;
            types[id] = ty;
        }
        validate(&lists, Some(&types))
    }

    /// DOT with circles for type 1 and boxes for type 2.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph medial {\n");
        for v in 0..self.len() {
            let shape = if self.types[v] == 1 { "circle" } else { "box" };
            let _ = writeln!(out, "  {v} [shape={shape}];");
        }
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_graph6(&self) -> String {
        graph6_encode(&self.graph)
    }

    /// Imports graph6; types come from the bipartition with vertex 0 as type 1.
    pub fn from_graph6(s: &str) -> Result<Self> {
        let lists = graph6_decode(s)?;
        validate(&lists, None)
    }
}

fn graph6_size(n: usize) -> Vec<u8> {
    if n < 63 {
        vec![n as u8 + 63]
    } else if n < 258_048 {
        vec![126, ((n >> 12) & 63) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]
    } else {
        let mut v = vec![126, 126];
        for k in (0..6).rev() {
            v.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
        v
    }
}

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.len();
    let mut bytes = graph6_size(n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                bytes.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        bytes.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 is printable ASCII")
}

pub fn graph6_decode(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) || bytes.is_empty() {
        return Err(Error::Parse("graph6 must be nonempty printable ASCII in 63..=126".into()));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 header".into()));
        }
        ((val(bytes[1]) << 12) | (val(bytes[2]) << 6) | val(bytes[3]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 header".into()));
        }
        ((2..8).fold(0, |acc, k| (acc << 6) | val(bytes[k])), &bytes[8..])
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {needed}", rest.len())));
    }
    let mut lists = vec![Vec::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (val(rest[k / 6]) >> (5 - k % 6)) & 1 == 1 {
                lists[i].push(j);
                lists[j].push(i);
            }
            k += 1;
        }
    }
    Ok(lists)
}

/// The incidence graph of the 27 cubelets (type 2) and 27 columns (type 1)
/// of a 3×3×3 cube.
pub fn gray_oracle() -> BipartiteCubicGraph {
    let cubelet = |x: usize, y: usize, z: usize| 27 + 9 * x + 3 * y + z;
    let mut lists = vec![Vec::new(); 54];
    let mut types = vec![1u8; 54];
    for t in types.iter_mut().skip(27) {
        *t = 2;
    }
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                for (dir, c) in [cubelet(k, a, b), cubelet(a, k, b), cubelet(a, b, k)].into_iter().enumerate() {
                    let col = 9 * dir + 3 * a + b;
                    lists[col].push(c);
                    lists[c].push(col);
                }
            }
        }
    }
    validate(&lists, Some(&types)).expect("the cube incidence graph is cubic and bipartite")
}

/// Edge lookup from unordered vertex pairs to indices into `Graph::edges`.
pub(crate) fn edge_index(g: &Graph) -> HashMap<(usize, usize), usize> {
    g.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> Vec<Vec<usize>> {
        (0..6).map(|i| vec![(i + 5) % 6, (i + 1) % 6]).collect()
    }

    #[test]
    fn validation_order() {
        let k4: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        let err = validate(&k4, None).unwrap_err().to_string();
        assert!(err.contains("bipartite"), "{err}");
        let mut two = hexagon();
        two.extend(hexagon().into_iter().map(|l| l.into_iter().map(|x| x + 6).collect()));
        let err = validate(&two, None).unwrap_err().to_string();
        assert!(err.contains("disconnected"), "{err}");
        let err = validate(&hexagon(), None).unwrap_err().to_string();
        assert!(err.contains("degree"), "{err}");
        assert!(validate(&[vec![0]], None).is_err());
        assert!(validate(&[vec![1], vec![]], None).is_err());
    }

    #[test]
    fn gray_oracle_shape() {
        let g = gray_oracle();
        assert_eq!(g.len(), 54);
        assert_eq!(g.vertices_of_type(1).count(), 27);
        assert_eq!(g.graph().edges().len(), 81);
    }

    #[test]
    fn exports_round_trip() {
        let g = gray_oracle();
        assert_eq!(BipartiteCubicGraph::from_adjacency_text(&g.to_adjacency_text()).unwrap(), g);
        let back = BipartiteCubicGraph::from_graph6(&g.to_graph6()).unwrap();
        assert_eq!(back.graph().edges(), g.graph().edges());
        assert!(g.to_dot().contains("shape=box"));
    }

    #[test]
    fn graph6_reference_strings() {
        // the path 0-1-2 and K4 in the standard encoding
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(graph6_encode(&p3), "Bg");
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(graph6_encode(&k4), "C~");
        assert_eq!(graph6_decode("C~").unwrap().len(), 4);
        assert!(graph6_decode("C").is_err());
    }
}
