use std::fmt;

use super::{edge_index, AutomorphismGroup, BipartiteCubicGraph, Graph};
use crate::error::{domain, inconsistency, Result};
use crate::permgroup::Permutation;

/// Tutte's bound for cubic symmetric graphs.
const MAX_SYMMETRIC_T: usize = 5;
/// Bound on per-type arc transitivity for semisymmetric cubic graphs.
const MAX_SEMI_T: usize = 7;

/// A t-arc `[v0, ..., vt]`: consecutive vertices adjacent, no immediate
/// backtracking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc(Vec<usize>);

impl Arc {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return domain("an arc needs at least one vertex");
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.len()) {
            return domain(format!("vertex {v} outside the graph"));
        }
        for i in 1..vertices.len() {
            if !g.has_edge(vertices[i - 1], vertices[i]) {
                return domain(format!("{} and {} are not adjacent", vertices[i - 1], vertices[i]));
            }
            if i >= 2 && vertices[i] == vertices[i - 2] {
                return domain(format!("arc backtracks at position {i}"));
            }
        }
        Ok(Arc(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// The `t` of a t-arc.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn reversed(&self) -> Arc {
        Arc(self.0.iter().rev().copied().collect())
    }
}

/// The t-arc from `start` that always steps to the first listed neighbour
/// other than the previous vertex.
pub fn base_arc(g: &Graph, start: usize, t: usize) -> Arc {
    let mut v = vec![start];
    for i in 0..t {
        let last = v[i];
        let prev = if i == 0 { usize::MAX } else { v[i - 1] };
        let next = g.neighbors(last).find(|&w| w != prev).expect("degree at least 2 along the arc");
        v.push(next);
    }
    Arc(v)
}

/// Number of t-arcs starting at vertices of type `j` (all vertices when
/// `j` is `None`), counted by dynamic programming over directed edges.
pub fn t_arc_count(g: &BipartiteCubicGraph, j: Option<u8>, t: usize) -> u64 {
    let starts = |v: usize| j.is_none_or(|j| g.type_of(v) == j);
    if t == 0 {
        return (0..g.len()).filter(|&v| starts(v)).count() as u64;
    }
    let raw = g.graph().raw();
    // ways[3v + k]: number of continuations of the arc ending in v -> raw[v][k]
    let mut ways = vec![1u64; 3 * g.len()];
    for _ in 1..t {
        let mut next = vec![0u64; ways.len()];
        for v in 0..g.len() {
            for k in 0..3 {
                let w = raw[v][k] as usize;
                next[3 * v + k] = (0..3).filter(|&l| raw[w][l] as usize != v).map(|l| ways[3 * w + l]).sum();
            }
        }
        ways = next;
    }
    (0..g.len()).filter(|&v| starts(v)).map(|v| ways[3 * v..3 * v + 3].iter().sum::<u64>()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Symmetric {
        t: usize,
        sign: Sign,
    },
    /// `ordered` is false when the types carry no polytope provenance, in
    /// which case `(t1, t2)` and `(t2, t1)` are equally valid.
    Semisymmetric {
        t1: usize,
        t2: usize,
        ordered: bool,
    },
    NotEdgeTransitive,
    Undecided {
        reason: String,
    },
}

impl Verdict {
    pub fn is_undecided(&self) -> bool {
        matches!(self, Verdict::Undecided { .. })
    }

    /// Whether `(a, b)` names this semisymmetric type, allowing either order
    /// when the pair is unordered.
    pub fn is_semisymmetric_pair(&self, a: usize, b: usize) -> bool {
        match *self {
            Verdict::Semisymmetric { t1, t2, ordered } => (t1, t2) == (a, b) || (!ordered && (t2, t1) == (a, b)),
            _ => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Symmetric { t, sign } => write!(f, "{t}{sign}"),
            Verdict::Semisymmetric { t1, t2, ordered: true } => write!(f, "ss-({t1},{t2})"),
            Verdict::Semisymmetric { t1, t2, ordered: false } => write!(f, "ss-({t1},{t2})|({t2},{t1})"),
            Verdict::NotEdgeTransitive => f.write_str("not-edge-transitive"),
            Verdict::Undecided { .. } => f.write_str("undecided"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub vertices: usize,
    pub aut_order: Option<u128>,
    pub vertex_orbits: Option<usize>,
    pub edge_orbits: Option<usize>,
    /// `[|B_0|, ..., |B_t|]` for symmetric verdicts; for semisymmetric ones,
    /// the vertex stabilizer order on each type.
    pub stabilizer_orders: Vec<u128>,
}

impl Classification {
    pub fn undecided(vertices: usize, reason: impl Into<String>) -> Self {
        Classification {
            verdict: Verdict::Undecided { reason: reason.into() },
            vertices,
            aut_order: None,
            vertex_orbits: None,
            edge_orbits: None,
            stabilizer_orders: Vec::new(),
        }
    }
}

fn edge_orbit_count(g: &Graph, gens: &[Permutation]) -> usize {
    let index = edge_index(g);
    let edges = g.edges();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in gens {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (p.apply(u), p.apply(v));
            let j = index[&(a.min(b), a.max(b))];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    (0..edges.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Largest `r <= cap` such that `aut` is transitive on r-arcs from the
/// orbit of `start`, given that this orbit holds `starts` vertices.
fn arc_transitivity(g: &BipartiteCubicGraph, aut: &AutomorphismGroup, start: usize, starts: u128, cap: usize) -> usize {
    let arc = base_arc(g.graph(), start, cap);
    let chain = aut.group().chain_with_base(arc.vertices());
    let order = aut.order();
    (1..=cap)
        .take_while(|&r| order / chain.stabilizer_order(r + 1) == starts * 3 * (1u128 << (r - 1)))
        .last()
        .unwrap_or(0)
}

pub fn classify(g: &BipartiteCubicGraph, aut: &AutomorphismGroup) -> Result<Classification> {
    let n = g.len();
    let vertex_orbits = aut.group().orbits().len();
    let edge_orbits = edge_orbit_count(g.graph(), aut.group().generators());
    let mut out = Classification {
        verdict: Verdict::NotEdgeTransitive,
        vertices: n,
        aut_order: Some(aut.order()),
        vertex_orbits: Some(vertex_orbits),
        edge_orbits: Some(edge_orbits),
        stabilizer_orders: Vec::new(),
    };
    if edge_orbits != 1 {
        return Ok(out);
    }
    if vertex_orbits == 1 {
        let t = arc_transitivity(g, aut, 0, n as u128, MAX_SYMMETRIC_T);
        if t == 0 {
            return inconsistency("vertex- and edge-transitive cubic graph is not arc-transitive");
        }
        let sign = symmetric_sign(g, aut, t)?;
        out.stabilizer_orders = stabilizer_sequence(g, aut, &base_arc(g.graph(), 0, t))?;
        out.verdict = Verdict::Symmetric { t, sign };
    } else if vertex_orbits == 2 {
        let mut ts = [0usize; 2];
        for (k, j) in [1u8, 2].into_iter().enumerate() {
            let start = g.vertices_of_type(j).next().expect("both types are present");
            ts[k] = arc_transitivity(g, aut, start, (n / 2) as u128, MAX_SEMI_T);
            out.stabilizer_orders.push(aut.order() / (n as u128 / 2));
        }
        out.verdict = Verdict::Semisymmetric { t1: ts[0], t2: ts[1], ordered: g.types_from_polytope() };
    }
    Ok(out)
}

/// The sign of a symmetric cubic graph whose automorphism group acts
/// sharply transitively on t-arcs.
pub fn symmetric_sign(g: &BipartiteCubicGraph, aut: &AutomorphismGroup, t: usize) -> Result<Sign> {
    let arc = base_arc(g.graph(), 0, t);
    let v = arc.vertices();
    let (last, prev) = (v[t], v[t - 1]);
    let succ: Vec<usize> = g.neighbors(last).filter(|&y| y != prev).collect();
    let group = aut.group();
    let chain = group.chain_with_base(v);
    if chain.stabilizer_order(t + 1) != 1 {
        return inconsistency(format!("the stabilizer of a {t}-arc is not trivial"));
    }
    let shunt = |y: usize| {
        let mut image = v[1..].to_vec();
        image.push(y);
        chain.element_mapping_base(&image)
    };
    let (Some(tau1), Some(tau2), Some(alpha)) =
        (shunt(succ[0]), shunt(succ[1]), chain.element_mapping_base(&arc.reversed().0))
    else {
        return inconsistency(format!("the group is not transitive on {t}-arcs"));
    };
    let conj = alpha.then(&tau1).then(&alpha);
    match (conj == tau1.inverse(), conj == tau2.inverse()) {
        (true, false) => Ok(Sign::Plus),
        (false, true) => Ok(Sign::Minus),
        _ => inconsistency("conjugating a shunt by the arc reverser gives neither inverse shunt"),
    }
}

/// `[|B_0|, ..., |B_t|]` where `B_j` fixes `v_0, ..., v_{t-j}` pointwise;
/// checked against `[1, 2, ..., 2^{t-1}, 3·2^{t-1}]`.
pub fn stabilizer_sequence(g: &BipartiteCubicGraph, aut: &AutomorphismGroup, arc: &Arc) -> Result<Vec<u128>> {
    Arc::new(g.graph(), arc.vertices().to_vec())?;
    let t = arc.length();
    if t == 0 {
        return domain("the base arc must have length at least 1");
    }
    let chain = aut.group().chain_with_base(arc.vertices());
    let seq: Vec<u128> = (0..=t).map(|j| chain.stabilizer_order(t - j + 1)).collect();
    let expected: Vec<u128> = (0..t).map(|j| 1u128 << j).chain([3u128 << (t - 1)]).collect();
    if seq != expected {
        return inconsistency(format!("stabilizer orders {seq:?}, expected {expected:?}"));
    }
    Ok(seq)
}
