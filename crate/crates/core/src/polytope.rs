//! String C-groups, chiral rotation groups, and the polytopes of type
//! {3,q,3} they determine, down to the medial layer graph.
//!
//! Every group is held in its right regular representation: point `x` is
//! a group element, point 0 the identity, and the permutation of an
//! element `h` is `y ↦ y·h`. Subgroups are then orbits of 0 and left cosets
//! `xH` are orbits under the generators of `H`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::catalog::{CatalogKey, SchlafliType};
use crate::error::{domain, inconsistency, Error, Result};
use crate::fpgroup::{coset_enumeration, CosetTable, DEFAULT_MAX_COSETS};
use crate::graphsym::{BipartiteCubicGraph, Graph};
use crate::matgroup::{self, regularity_test, MatrixContext, MatrixGroup, Symmetry, DEFAULT_MAX_ELEMENTS};
use crate::permgroup::{Permutation, PermutationGroup};

/// Largest group order for which duality automorphisms are searched.
pub const DEFAULT_MAX_DUALITY_ORDER: usize = 100_000;
/// Largest group order for which the diamond condition is checked.
pub const DIAMOND_CHECK_LIMIT: usize = 2000;

const ROOT: u32 = u32::MAX;

/// A finite group acting on itself by right multiplication.
#[derive(Clone, Debug)]
pub struct RegularGroup {
    gens: Vec<Permutation>,
    /// BFS tree from the identity: `x = parent[x] · gens[via[x]]`.
    parent: Vec<u32>,
    via: Vec<u8>,
    /// Points in BFS order.
    order: Vec<u32>,
}

impl RegularGroup {
    /// Wraps generators already acting regularly; only transitivity is
    /// checked, so the caller vouches that point stabilizers are trivial.
    pub fn from_regular_action(gens: Vec<Permutation>) -> Result<Self> {
        let Some(n) = gens.first().map(Permutation::degree) else {
            return domain("a regular group needs at least one generator");
        };
        if gens.iter().any(|g| g.degree() != n) {
            return domain("generators act on different domains");
        }
        if gens.len() > u8::MAX as usize {
            return domain("too many generators");
        }
        let mut parent = vec![ROOT; n];
        let mut via = vec![0u8; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let x = order[head] as usize;
            head += 1;
            for (i, g) in gens.iter().enumerate() {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x as u32;
                    via[y] = i as u8;
                    order.push(y as u32);
                }
            }
        }
        if order.len() != n {
            return domain(format!("generators reach {} of {n} points; the action is not transitive", order.len()));
        }
        Ok(RegularGroup { gens, parent, via, order })
    }

    /// The action on the cosets of the trivial subgroup.
    pub fn from_coset_table(t: &CosetTable) -> Result<Self> {
        if !t.is_complete() {
            return Err(Error::State("coset table is incomplete".into()));
        }
        if t.subgroup_generators().iter().any(|w| !w.is_empty()) {
            return domain("the coset table must be over the trivial subgroup");
        }
        let gens = (0..t.num_generators())
            .map(|g| Permutation::from_images_unchecked(t.action(g).into_iter().map(|x| x as u32).collect()))
            .collect();
        Self::from_regular_action(gens)
    }

    pub fn from_matrix_group(g: &MatrixGroup) -> Result<Self> {
        Self::from_regular_action(g.permutation_group().generators().to_vec())
    }

    /// Enumerates the group generated by `gens` on any domain and returns
    /// its regular representation, with generators in the same order.
    pub fn from_permutations(gens: &[Permutation], max_elements: usize) -> Result<Self> {
        let Some(d) = gens.first().map(Permutation::degree) else {
            return domain("a group needs at least one generator");
        };
        if gens.iter().any(|g| g.degree() != d) {
            return domain("generators act on different domains");
        }
        let mut elements = vec![Permutation::identity(d)];
        let mut index: HashMap<Permutation, u32> = HashMap::from([(elements[0].clone(), 0)]);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for (g, img) in gens.iter().zip(images.iter_mut()) {
                let y = x.then(g);
                let next = elements.len() as u32;
                let k = *index.entry(y.clone()).or_insert_with(|| {
                    elements.push(y);
                    next
                });
                if elements.len() > max_elements {
                    return Err(Error::Overflow(format!("group has more than {max_elements} elements")));
                }
                img.push(k);
            }
        }
        Self::from_regular_action(images.into_iter().map(Permutation::from_images_unchecked).collect())
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn permutation_group(&self) -> PermutationGroup {
        PermutationGroup::with_order(self.order(), self.gens.clone(), self.order() as u128)
            .expect("generators share the domain")
    }

    /// Generator indices spelling `x` from the identity.
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[x] != ROOT {
            w.push(self.via[x] as usize);
            x = self.parent[x] as usize;
        }
        w.reverse();
        w
    }

    /// The point `x·y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.word(y).into_iter().fold(x, |p, g| self.gens[g].apply(p))
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.element(x).inverse().apply(0)
    }

    /// The permutation `y ↦ y·x`.
    pub fn element(&self, x: usize) -> Permutation {
        self.word(x).into_iter().fold(Permutation::identity(self.order()), |acc, g| acc.then(&self.gens[g]))
    }

    /// Points of the subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[Permutation]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    /// Labels every element by its left coset `xH`; returns labels and the
    /// number of cosets.
    pub fn left_cosets(&self, gens: &[Permutation]) -> (Vec<u32>, usize) {
        let n = self.order();
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for g in gens {
                    let y = g.apply(x);
                    if label[y] == u32::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// The automorphism sending generator `i` to the element `images[i]`,
    /// as a map on points, if it exists.
    pub fn automorphism(&self, images: &[usize]) -> Option<Vec<u32>> {
        assert_eq!(images.len(), self.gens.len());
        let n = self.order();
        let right: Vec<Permutation> = images.iter().map(|&y| self.element(y)).collect();
        let mut phi = vec![0u32; n];
        for &x in &self.order[1..] {
            let x = x as usize;
            phi[x] = right[self.via[x] as usize].apply(phi[self.parent[x] as usize] as usize) as u32;
        }
        let mut hit = vec![false; n];
        for &p in &phi {
            if std::mem::replace(&mut hit[p as usize], true) {
                return None;
            }
        }
        for x in 0..n {
            for (g, r) in self.gens.iter().zip(&right) {
                if phi[g.apply(x)] as usize != r.apply(phi[x] as usize) {
                    return None;
                }
            }
        }
        Some(phi)
    }

    fn is_involution(&self, x: usize) -> bool {
        x != 0 && self.mul(x, x) == 0
    }
}

fn bitset(n: usize, points: &[usize]) -> Vec<u64> {
    let mut b = vec![0u64; n.div_ceil(64)];
    for &p in points {
        b[p / 64] |= 1 << (p % 64);
    }
    b
}

fn meet_size(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn subset_name(mask: usize, letters: &[&str]) -> String {
    let names: Vec<&str> = (0..letters.len()).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
    format!("<{}>", names.join(","))
}

/// A group generated by involutions `ρ0..ρ3` satisfying the string
/// relations and the intersection condition.
#[derive(Clone, Debug)]
pub struct StringCGroup {
    group: RegularGroup,
    schlafli: SchlafliType,
}

/// Validates `ρ0..ρ3` given on any common domain.
pub fn validate_string_cgroup(rho: &[Permutation; 4], max_elements: usize) -> Result<StringCGroup> {
    StringCGroup::new(RegularGroup::from_permutations(rho, max_elements)?)
}

impl StringCGroup {
    /// Validates a regular group whose four generators are `ρ0..ρ3`.
    pub fn new(group: RegularGroup) -> Result<Self> {
        if group.gens.len() != 4 {
            return domain(format!("expected 4 generators, got {}", group.gens.len()));
        }
        let rho: Vec<usize> = group.gens.iter().map(|g| g.apply(0)).collect();
        for (j, &r) in rho.iter().enumerate() {
            if !group.is_involution(r) {
                return domain(format!("rho{j} is not an involution"));
            }
        }
        for (i, j) in [(0, 2), (0, 3), (1, 3)] {
            if !group.is_involution(group.mul(rho[i], rho[j])) {
                return domain(format!("(rho{i} rho{j})^2 is not the identity"));
            }
        }
        let entries: Vec<u32> = (0..3).map(|j| group.element(group.mul(rho[j], rho[j + 1])).order() as u32).collect();
        let schlafli = SchlafliType::new(entries)?;
        let letters = ["rho0", "rho1", "rho2", "rho3"];
        check_intersections(&group, &group.gens, &letters, |_, _| true)?;
        Ok(StringCGroup { group, schlafli })
    }

    /// Rejects the group unless its type is `ty`.
    pub fn expect_type(self, ty: &SchlafliType) -> Result<Self> {
        if &self.schlafli != ty {
            return domain(format!("type {} where {ty} was claimed", self.schlafli));
        }
        Ok(self)
    }

    pub fn group(&self) -> &RegularGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn schlafli(&self) -> &SchlafliType {
        &self.schlafli
    }

    /// `ρj` as a permutation of the group's elements.
    pub fn rho(&self, j: usize) -> &Permutation {
        &self.group.gens[j]
    }

    /// Whether some involutory automorphism sends `ρj` to `ρ(3-j)`.
    pub fn is_self_dual(&self, max_order: usize) -> Result<bool> {
        if self.order() > max_order {
            return Err(Error::Overflow(format!("group order {} exceeds {max_order}", self.order())));
        }
        let images: Vec<usize> = (0..4).map(|j| self.rho(3 - j).apply(0)).collect();
        Ok(self.group.automorphism(&images).is_some())
    }
}

/// Checks `|<I> ∩ <J>| = |<I ∩ J>|` for all generator subsets where
/// `relevant(I, J)` holds.
fn check_intersections(
    group: &RegularGroup,
    gens: &[Permutation],
    letters: &[&str],
    relevant: impl Fn(usize, usize) -> bool,
) -> Result<()> {
    let n = group.order();
    let k = gens.len();
    let sets: Vec<(usize, Vec<u64>)> = (0..1usize << k)
        .map(|mask| {
            let sub: Vec<Permutation> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()).collect();
            let pts = group.subgroup(&sub);
            (pts.len(), bitset(n, &pts))
        })
        .collect();
    for i in 0..1usize << k {
        for j in i + 1..1usize << k {
            if !relevant(i, j) {
                continue;
            }
            let meet = meet_size(&sets[i].1, &sets[j].1);
            if meet != sets[i & j].0 {
                return domain(format!(
                    "intersection condition fails: {} ∩ {} has order {meet}, but {} has order {}",
                    subset_name(i, letters),
                    subset_name(j, letters),
                    subset_name(i & j, letters),
                    sets[i & j].0
                ));
            }
        }
    }
    Ok(())
}

/// How a chiral polytope is self-dual, if it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiralDuality {
    /// A polarity fixing the two flag orbits.
    Proper,
    /// A duality exchanging the two flag orbits.
    Improper,
}

/// A group generated by `σ1, σ2, σ3` with the relations and intersection
/// condition of a chiral or directly regular 4-polytope.
#[derive(Clone, Debug)]
pub struct RotationGroup {
    group: RegularGroup,
    schlafli: SchlafliType,
}

/// Validates `σ1..σ3` given on any common domain.
pub fn validate_rotation_group(sigma: &[Permutation; 3], max_elements: usize) -> Result<RotationGroup> {
    RotationGroup::new(RegularGroup::from_permutations(sigma, max_elements)?)
}

impl RotationGroup {
    /// Validates a regular group whose three generators are `σ1..σ3`.
    pub fn new(group: RegularGroup) -> Result<Self> {
        if group.gens.len() != 3 {
            return domain(format!("expected 3 generators, got {}", group.gens.len()));
        }
        let s: Vec<usize> = group.gens.iter().map(|g| g.apply(0)).collect();
        if let Some(j) = s.iter().position(|&x| x == 0) {
            return domain(format!("sigma{} is trivial", j + 1));
        }
        let entries: Vec<u32> = group.gens.iter().map(|g| g.order() as u32).collect();
        let schlafli = SchlafliType::new(entries)?;
        let s12 = group.mul(s[0], s[1]);
        let s23 = group.mul(s[1], s[2]);
        let s123 = group.mul(s12, s[2]);
        for (name, x) in [("sigma1 sigma2", s12), ("sigma2 sigma3", s23), ("sigma1 sigma2 sigma3", s123)] {
            if !group.is_involution(x) {
                return domain(format!("({name})^2 is not the identity"));
            }
        }
        // <s1>∩<s2>, <s2>∩<s3> and <s1,s2>∩<s2,s3>
        let letters = ["sigma1", "sigma2", "sigma3"];
        check_intersections(&group, &group.gens, &letters, |i, j| {
            matches!((i, j), (0b001, 0b010) | (0b010, 0b100) | (0b011, 0b110))
        })?;
        Ok(RotationGroup { group, schlafli })
    }

    pub fn expect_type(self, ty: &SchlafliType) -> Result<Self> {
        if &self.schlafli != ty {
            return domain(format!("type {} where {ty} was claimed", self.schlafli));
        }
        Ok(self)
    }

    pub fn group(&self) -> &RegularGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn schlafli(&self) -> &SchlafliType {
        &self.schlafli
    }

    /// `σj` for `j` in 1..=3.
    pub fn sigma(&self, j: usize) -> &Permutation {
        &self.group.gens[j - 1]
    }

    fn points(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.group.gens[i].apply(0))
    }

    /// Looks for an involution `r` of the group itself with `ρ1 = r`,
    /// `ρ0 = σ1 r`, `ρ2 = r σ2`, `ρ3 = r σ2 σ3` forming a string C-group.
    pub fn reflection_recovery(&self) -> Option<StringCGroup> {
        let g = &self.group;
        let [s1, s2, s3] = self.points();
        let s23 = g.mul(s2, s3);
        for r in 1..g.order() {
            if !g.is_involution(r) {
                continue;
            }
            let rho = [g.mul(s1, r), r, g.mul(r, s2), g.mul(r, s23)];
            if !rho.iter().all(|&x| g.is_involution(x)) {
                continue;
            }
            if ![(0, 2), (0, 3), (1, 3)].iter().all(|&(i, j)| g.is_involution(g.mul(rho[i], rho[j]))) {
                continue;
            }
            let perms = rho.iter().map(|&x| g.element(x)).collect();
            if let Ok(c) = RegularGroup::from_regular_action(perms).and_then(StringCGroup::new) {
                return Some(c);
            }
        }
        None
    }

    /// Whether an involutory automorphism sends `σ1 ↦ σ1⁻¹`, `σ2 ↦ σ1²σ2`,
    /// `σ3 ↦ σ3`.
    pub fn is_directly_regular(&self) -> bool {
        let g = &self.group;
        let [s1, s2, s3] = self.points();
        let images = [g.inverse(s1), g.mul(g.mul(s1, s1), s2), s3];
        g.automorphism(&images).is_some_and(|phi| (0..g.order()).all(|x| phi[phi[x] as usize] as usize == x))
    }

    /// Proper self-duality: an involutory automorphism `σj ↦ σ(4-j)⁻¹`.
    /// Improper: an automorphism `σ1 ↦ σ3⁻¹, σ2 ↦ σ1σ2σ1⁻¹, σ3 ↦ σ1`.
    pub fn self_duality(&self, max_order: usize) -> Result<Option<ChiralDuality>> {
        if self.order() > max_order {
            return Err(Error::Overflow(format!("group order {} exceeds {max_order}", self.order())));
        }
        let g = &self.group;
        let [s1, s2, s3] = self.points();
        let proper = [g.inverse(s3), g.inverse(s2), g.inverse(s1)];
        if let Some(phi) = g.automorphism(&proper) {
            if (0..g.order()).all(|x| phi[phi[x] as usize] as usize == x) {
                return Ok(Some(ChiralDuality::Proper));
            }
        }
        let improper = [g.inverse(s3), g.mul(g.mul(s1, s2), g.inverse(s1)), s1];
        Ok(g.automorphism(&improper).map(|_| ChiralDuality::Improper))
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Regular(StringCGroup),
    Chiral(RotationGroup),
}

/// A polytope of type {3,q,3} given by its (rotation) group, with the
/// cosets of the 1-face and 2-face stabilizers.
#[derive(Clone, Debug)]
pub struct Polytope {
    source: String,
    kind: Kind,
    faces: [(Vec<u32>, usize); 2],
}

impl Polytope {
    pub fn regular(source: impl Into<String>, c: StringCGroup) -> Result<Self> {
        Self::assemble(source.into(), Kind::Regular(c))
    }

    pub fn chiral(source: impl Into<String>, r: RotationGroup) -> Result<Self> {
        Self::assemble(source.into(), Kind::Chiral(r))
    }

    /// Regular if reflections can be recovered inside the group, chiral if
    /// the group is not directly regular; otherwise the full group is not
    /// determined by the rotation group and the input is rejected.
    pub fn from_rotation_group(source: impl Into<String>, r: RotationGroup) -> Result<Self> {
        if let Some(c) = r.reflection_recovery() {
            return Self::regular(source, c);
        }
        if r.is_directly_regular() {
            return domain(
                "the polytope is directly regular but no reflections lie in the given group; \
                 supply the full group instead",
            );
        }
        Self::chiral(source, r)
    }

    fn assemble(source: String, kind: Kind) -> Result<Self> {
        let mut p = Polytope { source, kind, faces: [(Vec::new(), 0), (Vec::new(), 0)] };
        let ty = p.schlafli().entries().to_vec();
        if ty.len() != 3 || ty[0] != 3 || ty[2] != 3 {
            return domain(format!("expected type {{3,q,3}}, got {}", p.schlafli()));
        }
        let expected = match p.kind {
            Kind::Regular(_) => 12,
            Kind::Chiral(_) => 6,
        };
        for j in [1, 2] {
            let stab = p.group().subgroup(&p.face_stabilizer(j)).len();
            if stab != expected {
                return inconsistency(format!("the {j}-face stabilizer has order {stab}, expected {expected}"));
            }
            p.faces[j - 1] = p.group().left_cosets(&p.face_stabilizer(j));
        }
        Ok(p)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn symmetry(&self) -> Symmetry {
        match self.kind {
            Kind::Regular(_) => Symmetry::Regular,
            Kind::Chiral(_) => Symmetry::Chiral,
        }
    }

    pub fn group(&self) -> &RegularGroup {
        match &self.kind {
            Kind::Regular(c) => c.group(),
            Kind::Chiral(r) => r.group(),
        }
    }

    pub fn string_c_group(&self) -> Option<&StringCGroup> {
        match &self.kind {
            Kind::Regular(c) => Some(c),
            Kind::Chiral(_) => None,
        }
    }

    pub fn rotation_group(&self) -> Option<&RotationGroup> {
        match &self.kind {
            Kind::Chiral(r) => Some(r),
            Kind::Regular(_) => None,
        }
    }

    /// `|Γ|` for a regular polytope, `|Γ⁺|` for a chiral one.
    pub fn order(&self) -> usize {
        self.group().order()
    }

    pub fn schlafli(&self) -> &SchlafliType {
        match &self.kind {
            Kind::Regular(c) => c.schlafli(),
            Kind::Chiral(r) => r.schlafli(),
        }
    }

    /// Generators of the stabilizer of the base j-face, `j` in 0..=3.
    pub fn face_stabilizer(&self, j: usize) -> Vec<Permutation> {
        match &self.kind {
            Kind::Regular(c) => (0..4).filter(|&i| i != j).map(|i| c.rho(i).clone()).collect(),
            Kind::Chiral(r) => {
                let s = |k| r.sigma(k).clone();
                match j {
                    0 => vec![s(2), s(3)],
                    1 => vec![s(1).then(&s(2)), s(3)],
                    2 => vec![s(1), s(2).then(&s(3))],
                    3 => vec![s(1), s(2)],
                    _ => panic!("face rank {j} outside 0..=3"),
                }
            }
        }
    }

    /// Numbers of 1-faces and 2-faces.
    pub fn face_counts(&self) -> [usize; 2] {
        [self.faces[0].1, self.faces[1].1]
    }

    /// Vertex count of the medial layer graph.
    pub fn medial_vertex_count(&self) -> usize {
        self.faces[0].1 + self.faces[1].1
    }

    /// 1-faces (type 1) and 2-faces (type 2), adjacent when incident.
    pub fn medial_layer_graph(&self) -> Result<BipartiteCubicGraph> {
        let (l1, n1) = &self.faces[0];
        let (l2, n2) = &self.faces[1];
        let mut pairs: Vec<(u32, u32)> = l1.iter().zip(l2).map(|(&a, &b)| (a, b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut lists = vec![Vec::new(); n1 + n2];
        for (a, b) in pairs {
            let (a, b) = (a as usize, *n1 + b as usize);
            lists[a].push(b);
            lists[b].push(a);
        }
        let types: Vec<u8> = (0..n1 + n2).map(|v| if v < *n1 { 1 } else { 2 }).collect();
        let graph =
            Graph::from_adjacency(&lists).map_err(|e| Error::Inconsistency(format!("medial layer graph: {e}")))?;
        BipartiteCubicGraph::new(graph, Some(&types))
            .map(BipartiteCubicGraph::with_polytope_types)
            .map_err(|e| Error::Inconsistency(format!("medial layer graph: {e}")))
    }

    /// Whether the base edge of the medial graph lies on a cycle of length
    /// `2q`, as the 1- and 2-faces around an edge of the polytope do.
    pub fn has_section_cycle(&self, g: &BipartiteCubicGraph) -> bool {
        let q = self.schlafli().entries()[1] as usize;
        let start = self.faces[1].0[0] as usize + self.faces[0].1;
        let end = self.faces[0].0[0] as usize;
        let mut path = vec![start];
        fn walk(g: &Graph, path: &mut Vec<usize>, end: usize, steps: usize) -> bool {
            let last = *path.last().unwrap();
            if steps == 0 {
                return last == end;
            }
            for w in g.neighbors(last) {
                if path.contains(&w) || (path.len() == 1 && w == end) {
                    continue;
                }
                path.push(w);
                if walk(g, path, end, steps - 1) {
                    return true;
                }
                path.pop();
            }
            false
        }
        walk(g.graph(), &mut path, end, 2 * q - 1)
    }

    /// Every pair of incident faces of ranks `j-1` and `j+1` has exactly
    /// two `j`-faces between them (the least and greatest faces included).
    pub fn check_diamond(&self) -> Result<()> {
        if self.order() > DIAMOND_CHECK_LIMIT {
            return Err(Error::Overflow(format!("diamond check is limited to order {DIAMOND_CHECK_LIMIT}")));
        }
        let n = self.order();
        let labels: Vec<Vec<u32>> = (0..4)
            .map(|j| self.group().left_cosets(&self.face_stabilizer(j)).0)
            .chain([vec![0u32; n], vec![0u32; n]])
            .collect();
        // index j+1 holds rank j; ranks -1 and 4 are indices 0 and 5
        let rank = |r: i32| -> &Vec<u32> {
            match r {
                -1 => &labels[4],
                4 => &labels[5],
                r => &labels[r as usize],
            }
        };
        let incidence =
            |a: i32, b: i32| -> HashSet<(u32, u32)> { rank(a).iter().zip(rank(b)).map(|(&x, &y)| (x, y)).collect() };
        for j in 0..4 {
            let below = incidence(j - 1, j);
            let above = incidence(j, j + 1);
            for (a, c) in incidence(j - 1, j + 1) {
                let middle = below.iter().filter(|&&(x, b)| x == a && above.contains(&(b, c))).count();
                if middle != 2 {
                    return inconsistency(format!(
                        "{middle} faces of rank {j} lie between a face of rank {} and one of rank {}",
                        j - 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// Self-duality of the polytope, regular or chiral.
    pub fn is_self_dual(&self, max_order: usize) -> Result<bool> {
        match &self.kind {
            Kind::Regular(c) => c.is_self_dual(max_order),
            Kind::Chiral(r) => Ok(r.self_duality(max_order)?.is_some()),
        }
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} {}, group order {}, {} + {} medial vertices)",
            self.source,
            self.symmetry(),
            self.schlafli(),
            self.order(),
            self.faces[0].1,
            self.faces[1].1
        )
    }
}

/// Limits for building an instance from a catalog key.
#[derive(Clone, Copy, Debug)]
pub struct BuildLimits {
    pub max_cosets: usize,
    pub max_elements: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits { max_cosets: DEFAULT_MAX_COSETS, max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

/// The group of a rank-4 catalog key in its regular representation: the
/// string C-group for presentations and regular Eisenstein instances, the
/// rotation group for chiral ones.
pub fn build(key: &CatalogKey, limits: &BuildLimits) -> Result<Polytope> {
    let source = key.to_string();
    match key {
        CatalogKey::Eisenstein { m, scalars } => {
            let ctx = MatrixContext::new(*m, scalars)?;
            match regularity_test(&ctx) {
                Symmetry::Regular => {
                    let full = matgroup::reflection_group(&ctx, limits.max_elements)?;
                    Polytope::regular(source, StringCGroup::new(RegularGroup::from_matrix_group(&full)?)?)
                }
                Symmetry::Chiral => {
                    let rot = matgroup::rotation_group(&ctx, limits.max_elements)?;
                    Polytope::from_rotation_group(source, RotationGroup::new(RegularGroup::from_matrix_group(&rot)?)?)
                }
            }
        }
        CatalogKey::Toroidal(_) => domain("toroidal keys are rank-3 maps, not 4-polytopes"),
        _ => {
            let p = key.presentation()?;
            let table = coset_enumeration(&p, &[], limits.max_cosets)?;
            if !table.is_complete() {
                return Err(Error::Overflow(format!(
                    "coset enumeration for {source} did not close within {} cosets",
                    limits.max_cosets
                )));
            }
            Polytope::regular(source, StringCGroup::new(RegularGroup::from_coset_table(&table)?)?)
        }
    }
}
