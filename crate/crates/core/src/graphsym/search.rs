//! Automorphisms and isomorphisms by colour refinement with
//! individualization, collecting a strong generating set top-down.

use std::time::{Duration, Instant};

use super::{BipartiteCubicGraph, Graph, NONE};
use crate::error::{domain, Error, Result};
use crate::permgroup::{Permutation, PermutationGroup};

/// Largest graph searched unless the caller raises the limit.
pub const DEFAULT_MAX_VERTICES: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_vertices: DEFAULT_MAX_VERTICES, deadline: None }
    }
}

impl SearchLimits {
    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::Overflow(format!("{n} vertices exceeds the search limit of {}", self.max_vertices)));
        }
        Ok(())
    }

    fn tick(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Overflow("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

/// Refines `colors` to the coarsest equitable partition below it. Colours
/// are ranks of structural keys, so equivalent inputs on isomorphic graphs
/// get identical colours. Returns the number of cells.
fn refine(adj: &[[u32; 3]], colors: &mut [u32], buf: &mut Vec<([u32; 4], u32)>) -> usize {
    let mut cells = 0;
    loop {
        buf.clear();
        for (v, nb) in adj.iter().enumerate() {
            let mut key = [colors[v], NONE, NONE, NONE];
            for (k, &w) in nb.iter().enumerate() {
                if w != NONE {
                    key[k + 1] = colors[w as usize];
                }
            }
            key[1..].sort_unstable();
            buf.push((key, v as u32));
        }
        buf.sort_unstable();
        let mut c = 0u32;
        for i in 0..buf.len() {
            if i > 0 && buf[i].0 != buf[i - 1].0 {
                c += 1;
            }
            colors[buf[i].1 as usize] = c;
        }
        let fresh = c as usize + 1;
        if fresh == cells {
            return cells;
        }
        cells = fresh;
    }
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let mut out: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
    out[v] -= 1;
    out
}

/// One node on the leftmost path of the search tree.
struct Level {
    colors: Vec<u32>,
    cells: usize,
    hist: Vec<u32>,
    target: u32,
    cell: Vec<usize>,
}

impl Level {
    fn new(colors: Vec<u32>, cells: usize) -> Level {
        let mut hist = vec![0u32; cells];
        for &c in &colors {
            hist[c as usize] += 1;
        }
        let target = (0..cells).filter(|&c| hist[c] > 1).min_by_key(|&c| (hist[c], c)).map_or(NONE, |c| c as u32);
        let cell = (0..colors.len()).filter(|&v| colors[v] == target).collect();
        Level { colors, cells, hist, target, cell }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.colors.len()
    }

    fn matches(&self, colors: &[u32], cells: usize) -> bool {
        if cells != self.cells {
            return false;
        }
        let mut hist = vec![0u32; cells];
        for &c in colors {
            hist[c as usize] += 1;
        }
        hist == self.hist
    }
}

/// Search state for maps from `left` onto `right`.
struct Engine<'a> {
    left: &'a Graph,
    right: &'a Graph,
    limits: SearchLimits,
    buf: Vec<([u32; 4], u32)>,
}

impl<'a> Engine<'a> {
    fn new(left: &'a Graph, right: &'a Graph, limits: SearchLimits) -> Self {
        Engine { left, right, limits, buf: Vec::new() }
    }

    fn path(&mut self, initial: &[u32]) -> Vec<Level> {
        let mut colors = initial.to_vec();
        let cells = refine(self.left.raw(), &mut colors, &mut self.buf);
        let mut levels = vec![Level::new(colors, cells)];
        while !levels.last().unwrap().is_discrete() {
            let top = levels.last().unwrap();
            let mut colors = individualize(&top.colors, top.cell[0]);
            let cells = refine(self.left.raw(), &mut colors, &mut self.buf);
            levels.push(Level::new(colors, cells));
        }
        levels
    }

    fn right_child(&mut self, colors: &[u32], w: usize) -> (Vec<u32>, usize) {
        let mut c = individualize(colors, w);
        let cells = refine(self.right.raw(), &mut c, &mut self.buf);
        (c, cells)
    }

    fn right_root(&mut self, initial: &[u32]) -> (Vec<u32>, usize) {
        let mut c = initial.to_vec();
        let cells = refine(self.right.raw(), &mut c, &mut self.buf);
        (c, cells)
    }

    fn leaf(&self, left: &Level, right: &[u32]) -> Option<Permutation> {
        let n = right.len();
        let mut pos = vec![0u32; n];
        for (w, &c) in right.iter().enumerate() {
            pos[c as usize] = w as u32;
        }
        let images: Vec<u32> = left.colors.iter().map(|&c| pos[c as usize]).collect();
        let ok = (0..n).all(|u| {
            let pu = images[u] as usize;
            self.left.neighbors(u).all(|v| self.right.has_edge(pu, images[v] as usize))
        });
        ok.then(|| Permutation::from_images_unchecked(images))
    }

    /// Searches below `levels[i]`, with `right` the partition matched to it.
    fn extend(&mut self, levels: &[Level], i: usize, right: &[u32]) -> Result<Option<Permutation>> {
        self.limits.tick()?;
        let here = &levels[i];
        if here.is_discrete() {
            return Ok(self.leaf(here, right));
        }
        let candidates: Vec<usize> = (0..right.len()).filter(|&w| right[w] == here.target).collect();
        for w in candidates {
            let (c, cells) = self.right_child(right, w);
            if levels[i + 1].matches(&c, cells) {
                if let Some(p) = self.extend(levels, i + 1, &c)? {
                    return Ok(Some(p));
                }
            }
        }
        Ok(None)
    }
}

fn orbit_marks(n: usize, seed: usize, gens: &[Permutation]) -> (Vec<bool>, Vec<usize>) {
    let mut mark = vec![false; n];
    mark[seed] = true;
    let mut orbit = vec![seed];
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for g in gens {
            let q = g.apply(p);
            if !mark[q] {
                mark[q] = true;
                orbit.push(q);
            }
        }
    }
    (mark, orbit)
}

/// Generators and order of the automorphisms of `g` preserving `initial`.
fn colored_automorphisms(
    g: &Graph,
    initial: &[u32],
    limits: SearchLimits,
) -> Result<(Vec<Permutation>, u128, Vec<Level>)> {
    let n = g.len();
    limits.admit(n)?;
    let mut engine = Engine::new(g, g, limits);
    let levels = engine.path(initial);
    let depth = levels.len() - 1;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for i in (0..depth).rev() {
        let base = levels[i].cell[0];
        let (mut in_orbit, mut orbit) = orbit_marks(n, base, &gens);
        let mut failed = vec![false; n];
        for &v in &levels[i].cell {
            if in_orbit[v] || failed[v] {
                continue;
            }
            let (c, cells) = engine.right_child(&levels[i].colors, v);
            let found = if levels[i + 1].matches(&c, cells) { engine.extend(&levels, i + 1, &c)? } else { None };
            match found {
                Some(p) => {
                    gens.push(p);
                    (in_orbit, orbit) = orbit_marks(n, base, &gens);
                }
                None => {
                    for u in orbit_marks(n, v, &gens).1 {
                        failed[u] = true;
                    }
                }
            }
        }
        order *= orbit.len() as u128;
    }
    Ok((gens, order, levels))
}

/// Automorphisms of a graph of maximum degree 3 that preserve a vertex
/// colouring.
pub fn automorphism_group_colored(g: &Graph, colors: &[u32], limits: SearchLimits) -> Result<PermutationGroup> {
    if colors.len() != g.len() {
        return domain(format!("{} colours for {} vertices", colors.len(), g.len()));
    }
    let (gens, order, _) = colored_automorphisms(g, colors, limits)?;
    PermutationGroup::with_order(g.len(), gens, order)
}

/// The automorphism group of a bipartite cubic graph together with its
/// type-preserving subgroup.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    group: PermutationGroup,
    preserving: PermutationGroup,
    swap: Option<Permutation>,
}

impl AutomorphismGroup {
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn type_preserving(&self) -> &PermutationGroup {
        &self.preserving
    }

    /// An automorphism exchanging the two types, if one exists.
    pub fn swap(&self) -> Option<&Permutation> {
        self.swap.as_ref()
    }

    pub fn swaps_types(&self) -> bool {
        self.swap.is_some()
    }
}

fn type_colors(g: &BipartiteCubicGraph) -> Vec<u32> {
    g.types().iter().map(|&t| t as u32).collect()
}

pub fn automorphism_group(g: &BipartiteCubicGraph, limits: SearchLimits) -> Result<AutomorphismGroup> {
    let n = g.len();
    let colors = type_colors(g);
    let (gens, order, levels) = colored_automorphisms(g.graph(), &colors, limits)?;
    let preserving = PermutationGroup::with_order(n, gens.clone(), order)?;

    // A type swap exists iff the swapped colouring matches; candidates for
    // the first base point are tried once per orbit of the preserving group.
    let swapped: Vec<u32> = colors.iter().map(|&c| 3 - c).collect();
    let mut engine = Engine::new(g.graph(), g.graph(), limits);
    let (root, cells) = engine.right_root(&swapped);
    let mut swap = None;
    if levels[0].matches(&root, cells) {
        if levels[0].is_discrete() {
            swap = engine.leaf(&levels[0], &root);
        } else {
            let mut tried = vec![false; n];
            let target = levels[0].target;
            for w in (0..n).filter(|&w| root[w] == target) {
                if tried[w] {
                    continue;
                }
                for u in orbit_marks(n, w, &gens).1 {
                    tried[u] = true;
                }
                let (c, cells) = engine.right_child(&root, w);
                if levels[1].matches(&c, cells) {
                    if let Some(p) = engine.extend(&levels, 1, &c)? {
                        swap = Some(p);
                        break;
                    }
                }
            }
        }
    }
    let group = match &swap {
        Some(s) => {
            let mut all = gens;
            all.push(s.clone());
            PermutationGroup::with_order(n, all, 2 * order)?
        }
        None => preserving.clone(),
    };
    Ok(AutomorphismGroup { group, preserving, swap })
}

/// An isomorphism `g → h` (types kept or exchanged), if one exists.
pub fn is_isomorphic(
    g: &BipartiteCubicGraph,
    h: &BipartiteCubicGraph,
    limits: SearchLimits,
) -> Result<Option<Permutation>> {
    limits.admit(g.len().max(h.len()))?;
    if g.len() != h.len() {
        return Ok(None);
    }
    let mut engine = Engine::new(g.graph(), h.graph(), limits);
    let levels = engine.path(&type_colors(g));
    let target = type_colors(h);
    for right in [target.clone(), target.iter().map(|&c| 3 - c).collect()] {
        let (root, cells) = engine.right_root(&right);
        if levels[0].matches(&root, cells) {
            if let Some(p) = engine.extend(&levels, 0, &root)? {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::{gray_oracle, validate};
    use super::*;

    #[test]
    fn hexagon_has_dihedral_group() {
        let g = Graph::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        let aut = automorphism_group_colored(&g, &[0; 6], SearchLimits::default()).unwrap();
        assert_eq!(aut.order(), 12);
        assert!(aut.generators().iter().all(|p| g.is_automorphism(p)));
    }

    #[test]
    fn k33_and_cube() {
        let k33: Vec<Vec<usize>> = (0..6).map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] }).collect();
        let aut = automorphism_group(&validate(&k33, None).unwrap(), SearchLimits::default()).unwrap();
        assert_eq!(aut.order(), 72);
        assert_eq!(aut.type_preserving().order(), 36);
        let cube: Vec<Vec<usize>> = (0..8).map(|v| (0..3).map(|b| v ^ (1 << b)).collect()).collect();
        let aut = automorphism_group(&validate(&cube, None).unwrap(), SearchLimits::default()).unwrap();
        assert_eq!(aut.order(), 48);
    }

    #[test]
    fn gray_graph() {
        let g = gray_oracle();
        let aut = automorphism_group(&g, SearchLimits::default()).unwrap();
        assert_eq!(aut.order(), 1296);
        assert!(!aut.swaps_types());
        assert!(aut.group().generators().iter().all(|p| g.graph().is_automorphism(p)));
    }

    #[test]
    fn isomorphism_witness() {
        let g = gray_oracle();
        let p = Permutation::from_images((0..54).map(|v| (v * 7 + 3) % 54).collect()).unwrap();
        let h = g.relabel(&p);
        let w = is_isomorphic(&g, &h, SearchLimits::default()).unwrap().unwrap();
        assert!((0..54).all(|u| g.neighbors(u).all(|v| h.graph().has_edge(w.apply(u), w.apply(v)))));
        let k33: Vec<Vec<usize>> = (0..6).map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] }).collect();
        let k33 = validate(&k33, None).unwrap();
        assert!(is_isomorphic(&g, &k33, SearchLimits::default()).unwrap().is_none());
    }

    #[test]
    fn vertex_limit_is_overflow() {
        let g = gray_oracle();
        let err = automorphism_group(&g, SearchLimits::default().with_max_vertices(10)).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }
}
