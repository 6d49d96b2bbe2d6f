//! Permutations and permutation groups backed by a base and strong
//! generating set.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first. A group's
//! stabilizer chain is built lazily, deterministically from the given
//! generators when the order is unknown, or by seeded random sifting when the
//! order is supplied up front.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};

const ABSENT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return domain(format!("image array {images:?} is not a bijection"));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || std::mem::replace(&mut touched[x], true) {
                    return domain(format!("bad cycle {cycle:?} on {n} points"));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
            let points = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body.1.trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    /// Parses a one-line image array such as `[1 2 0]`.
    pub fn parse_one_line(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("malformed image array {s:?}")))?;
        let images = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// The product that applies `self` first and then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn one_line(&self) -> String {
        let body: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("[{}]", body.join(" "))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Indices into the chain's generator pool.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `back[p]` is the pool index of the generator that first reached `p`.
    back: Vec<u32>,
}

/// A base and strong generating set with Schreier trees at each level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pool: Vec<Permutation>,
    pool_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    fn empty(degree: usize, prefix: &[usize]) -> Self {
        let mut chain = StabChain { degree, pool: Vec::new(), pool_inv: Vec::new(), levels: Vec::new() };
        for &b in prefix {
            chain.push_level(b);
        }
        chain
    }

    fn push_level(&mut self, base: usize) {
        let mut back = vec![ABSENT; self.degree];
        back[base] = ROOT;
        self.levels.push(Level { base: base as u32, gens: Vec::new(), orbit: vec![base as u32], back });
    }

    fn recompute_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        for &p in &level.orbit {
            level.back[p as usize] = ABSENT;
        }
        level.back[level.base as usize] = ROOT;
        level.orbit.clear();
        level.orbit.push(level.base);
        let mut head = 0;
        while head < level.orbit.len() {
            let p = level.orbit[head] as usize;
            head += 1;
            for &g in &level.gens {
                let q = self.pool[g].apply(p);
                if level.back[q] == ABSENT {
                    level.back[q] = g as u32;
                    level.orbit.push(q as u32);
                }
            }
        }
    }

    /// Adds `g` as a strong generator for the levels `0..=depth`.
    fn add_generator(&mut self, g: Permutation, depth: usize) {
        let idx = self.pool.len();
        self.pool_inv.push(g.inverse());
        self.pool.push(g);
        for i in 0..=depth {
            self.levels[i].gens.push(idx);
            self.recompute_orbit(i);
        }
    }

    /// Sifts `g`; returns the residue and the level at which it dropped out
    /// (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g, 0)
    }

    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let mut p = h.apply(level.base as usize);
            if level.back[p] == ABSENT {
                return (h, i);
            }
            while level.back[p] != ROOT {
                let k = level.back[p] as usize;
                h = h.then(&self.pool_inv[k]);
                p = self.pool_inv[k].apply(p);
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    /// The coset representative `u` at level `i` with `base^u = p`.
    fn transversal(&self, i: usize, mut p: usize) -> Permutation {
        let level = &self.levels[i];
        let mut word = Vec::new();
        while level.back[p] != ROOT {
            let k = level.back[p] as usize;
            word.push(k);
            p = self.pool_inv[k].apply(p);
        }
        word.iter().rev().fold(Permutation::identity(self.degree), |acc, &k| acc.then(&self.pool[k]))
    }

    /// Inserts `g` if it does not sift; returns whether the chain grew.
    fn absorb(&mut self, g: &Permutation) -> bool {
        let (h, depth) = self.sift(g);
        if depth < self.levels.len() {
            self.add_generator(h, depth);
            return true;
        }
        match h.first_moved_point() {
            None => false,
            Some(p) => {
                self.push_level(p);
                let d = self.levels.len() - 1;
                self.add_generator(h, d);
                true
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.pool
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, _) = self.sift(g);
            h.is_identity()
        }
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_order(&self, k: usize) -> u128 {
        self.levels.iter().skip(k).map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        match self.levels.get(k) {
            None => Vec::new(),
            Some(level) => level.gens.iter().map(|&g| self.pool[g].clone()).collect(),
        }
    }

    /// The chain of the pointwise stabilizer of the first `k` base points.
    pub fn tail(&self, k: usize) -> StabChain {
        let mut out = StabChain::empty(self.degree, &[]);
        let mut remap: HashMap<usize, usize> = HashMap::new();
        for level in self.levels.iter().skip(k) {
            for &g in &level.gens {
                remap.entry(g).or_insert_with(|| {
                    out.pool.push(self.pool[g].clone());
                    out.pool_inv.push(self.pool_inv[g].clone());
                    out.pool.len() - 1
                });
            }
            out.levels.push(Level {
                base: level.base,
                gens: level.gens.iter().map(|g| remap[g]).collect(),
                orbit: level.orbit.clone(),
                back: level
                    .back
                    .iter()
                    .map(|&b| if b == ABSENT || b == ROOT { b } else { remap[&(b as usize)] as u32 })
                    .collect(),
            });
        }
        out
    }

    /// The element mapping the first `images.len()` base points to `images`,
    /// if one exists; unique when the remaining stabilizer is trivial.
    pub fn element_mapping_base(&self, images: &[usize]) -> Option<Permutation> {
        assert!(images.len() <= self.levels.len());
        // find h = u_k ... u_1 with b_i^h = images_i, sifting the targets
        let mut targets: Vec<usize> = images.to_vec();
        let mut acc = Permutation::identity(self.degree);
        for i in 0..images.len() {
            let p = targets[i];
            if self.levels[i].back[p] == ABSENT {
                return None;
            }
            let u = self.transversal(i, p);
            let u_inv = u.inverse();
            for t in targets.iter_mut().skip(i + 1) {
                *t = u_inv.apply(*t);
            }
            acc = u.then(&acc);
        }
        Some(acc)
    }

    fn deterministic(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain::empty(degree, prefix);
        for g in gens {
            if g.is_identity() {
                continue;
            }
            if !chain.levels.iter().any(|l| g.apply(l.base as usize) != l.base as usize) {
                chain.push_level(g.first_moved_point().unwrap());
            }
        }
        if chain.levels.is_empty() {
            return chain;
        }
        for g in gens.iter().filter(|g| !g.is_identity()) {
            let depth = chain.levels.iter().position(|l| g.apply(l.base as usize) != l.base as usize).unwrap();
            chain.add_generator(g.clone(), depth);
        }
        let mut i = chain.levels.len();
        'outer: while i > 0 {
            i -= 1;
            let orbit = chain.levels[i].orbit.clone();
            let level_gens = chain.levels[i].gens.clone();
            for &p in &orbit {
                let up = chain.transversal(i, p as usize);
                for &s in &level_gens {
                    let q = chain.pool[s].apply(p as usize);
                    let schreier = up.then(&chain.pool[s]).then(&chain.transversal(i, q).inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, depth) = chain.sift_from(&schreier, i + 1);
                    if depth < chain.levels.len() {
                        chain.add_generator(h, depth);
                        i = depth + 1;
                        continue 'outer;
                    }
                    if let Some(pt) = h.first_moved_point() {
                        chain.push_level(pt);
                        let d = chain.levels.len() - 1;
                        chain.add_generator(h, d);
                        i = d + 1;
                        continue 'outer;
                    }
                }
            }
        }
        chain
    }

    fn random(degree: usize, gens: &[Permutation], prefix: &[usize], order: u128, seed: u64) -> Self {
        let mut chain = StabChain::empty(degree, prefix);
        for g in gens {
            chain.absorb(g);
        }
        let mut source = RandomElements::new(degree, gens, seed);
        while chain.order() < order {
            let g = source.next();
            chain.absorb(&g);
        }
        assert_eq!(chain.order(), order, "random Schreier-Sims overshot the supplied order");
        chain
    }
}

/// Product-replacement random elements.
struct RandomElements {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl RandomElements {
    fn new(degree: usize, gens: &[Permutation], seed: u64) -> Self {
        let mut state: Vec<Permutation> = gens.to_vec();
        if state.is_empty() {
            state.push(Permutation::identity(degree));
        }
        let mut i = 0;
        while state.len() < 10 {
            state.push(state[i].clone());
            i += 1;
        }
        let mut r = RandomElements { state, acc: Permutation::identity(degree), rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..60 {
            r.next();
        }
        r
    }

    fn next(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen_bool(0.5) { self.state[j].clone() } else { self.state[j].inverse() };
        self.state[i] = if self.rng.gen_bool(0.5) { self.state[i].then(&rhs) } else { rhs.then(&self.state[i]) };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}

const SEED: u64 = 0x5eed_0f3c_6300;

/// A permutation group given by generators.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    gens: Vec<Permutation>,
    known_order: Option<u128>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermutationGroup { degree: self.degree, gens: self.gens.clone(), known_order: self.known_order, chain }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return domain(format!("generator of degree {} in a group of degree {degree}", g.degree()));
        }
        Ok(PermutationGroup { degree, gens, known_order: None, chain: OnceLock::new() })
    }

    /// A group whose order is known in advance; the chain is then built by
    /// random sifting until the order is reached.
    pub fn with_order(degree: usize, gens: Vec<Permutation>, order: u128) -> Result<Self> {
        let mut g = Self::new(degree, gens)?;
        g.known_order = Some(order);
        Ok(g)
    }

    pub fn from_chain(chain: StabChain, gens: Vec<Permutation>) -> Self {
        let order = chain.order();
        let lock = OnceLock::new();
        let degree = chain.degree();
        let _ = lock.set(chain);
        PermutationGroup { degree, gens, known_order: Some(order), chain: lock }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| self.build_chain(&[]))
    }

    fn build_chain(&self, prefix: &[usize]) -> StabChain {
        match self.known_order {
            Some(order) => StabChain::random(self.degree, &self.gens, prefix, order, SEED),
            None => StabChain::deterministic(self.degree, &self.gens, prefix),
        }
    }

    /// A stabilizer chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        let order = self.order();
        StabChain::random(self.degree, &self.gens, prefix, order, SEED ^ prefix.len() as u64)
    }

    pub fn order(&self) -> u128 {
        self.known_order.unwrap_or_else(|| self.chain().order())
    }

    pub fn is_member(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn orbit(&self, seed: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[seed] = true;
        let mut out = vec![seed];
        let mut head = 0;
        while head < out.len() {
            let p = out[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                }
            }
        }
        out
    }

    /// Orbit of a tuple under componentwise action.
    pub fn orbit_tuple(&self, seed: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::from([seed.to_vec()]);
        let mut out = vec![seed.to_vec()];
        let mut head = 0;
        while head < out.len() {
            let t = out[head].clone();
            head += 1;
            for g in &self.gens {
                let image: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
                if seen.insert(image.clone()) {
                    out.push(image);
                }
            }
        }
        out
    }

    /// The orbits on points, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if label[p] != usize::MAX {
                continue;
            }
            let mut orbit = self.orbit(p);
            for &q in &orbit {
                label[q] = out.len();
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Number of distinct orbits met by the given seed tuples.
    pub fn orbits_count(&self, seeds: &[Vec<usize>]) -> usize {
        let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut count = 0;
        for s in seeds {
            if owner.contains_key(s) {
                continue;
            }
            for t in self.orbit_tuple(s) {
                owner.insert(t, count);
            }
            count += 1;
        }
        count
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermutationGroup {
        if let Some(&p) = points.iter().find(|&&p| p >= self.degree) {
            panic!("point {p} outside the domain of degree {}", self.degree);
        }
        let chain = self.chain_with_base(points).tail(points.len());
        let gens = chain.strong_generators().to_vec();
        PermutationGroup::from_chain(chain, gens)
    }

    /// An element carrying `from` to `to` componentwise, if any.
    pub fn element_mapping(&self, from: &[usize], to: &[usize]) -> Option<Permutation> {
        assert_eq!(from.len(), to.len());
        let chain = self.chain_with_base(from);
        chain.element_mapping_base(to)
    }
}
