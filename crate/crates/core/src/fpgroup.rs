//! Finitely presented groups and coset enumeration.
//!
//! Enumeration follows the HLT strategy: relators are scanned from every live
//! coset in order, defining new cosets to fill gaps. When the row limit is hit
//! a lookahead pass scans everything without defining, coincidences are
//! collapsed and the table is compacted; only if that frees nothing does the
//! run report overflow.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{domain, inconsistency, Error, Result};
use crate::permgroup::{Permutation, PermutationGroup};

/// Default row limit for enumerations.
pub const DEFAULT_MAX_COSETS: usize = 10_000_000;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word in the generators of a presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The word spelling the generators in `gens` in order.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&g| Letter::new(g)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rewrites generator `i` as `map[i]`.
    pub fn substitute(&self, map: &[usize]) -> Self {
        Word(self.0.iter().map(|l| Letter { gen: map[l.gen], inverse: l.inverse }).collect())
    }
}

/// A group presentation `<gens | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return domain("a presentation needs at least one generator");
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return domain(format!("bad generator name {n:?}"));
            }
            if names[..i].contains(n) {
                return domain(format!("duplicate generator name {n:?}"));
            }
        }
        for r in &relators {
            if r.is_empty() {
                return domain("relators must be nonempty words");
            }
            if let Some(l) = r.0.iter().find(|l| l.gen >= names.len()) {
                return domain(format!("relator uses undeclared generator #{}", l.gen));
            }
        }
        Ok(Presentation { names, relators })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Presentation::new(self.names.clone(), rels)
    }

    /// Parses `gens: a b c; rels: a^2, (ab)^3, ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (g, r) = text.split_once(';').ok_or_else(|| Error::Parse("expected 'gens: ...; rels: ...'".into()))?;
        let g = g.trim().strip_prefix("gens:").ok_or_else(|| Error::Parse("missing 'gens:'".into()))?;
        let r = r.trim().strip_prefix("rels:").ok_or_else(|| Error::Parse("missing 'rels:'".into()))?;
        let names: Vec<String> = g.split_whitespace().map(String::from).collect();
        let tmp = Presentation::new(names.clone(), Vec::new())?;
        let rels = r
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| tmp.parse_word(s))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names, rels)
    }

    /// Parses a word such as `r0 r1 r2 r1^-1`, `(ab)^3` or `a^-2 b`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().collect();
        let mut p = WordParser { names: &self.names, chars: &chars, pos: 0 };
        let w = p.sequence()?;
        p.skip_ws();
        if p.pos != chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in word {s:?}", chars[p.pos])));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w.0[i];
            let mut j = i;
            while j < w.len() && w.0[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * if l.inverse { -1 } else { 1 };
            let name = &self.names[l.gen];
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "gens: {}; rels: {}", self.names.join(" "), rels.join(", "))
    }
}

struct WordParser<'a> {
    names: &'a [String],
    chars: &'a [char],
    pos: usize,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.chars.get(self.pos) {
                None | Some(')') => return Ok(Word(out)),
                _ => out.extend(self.atom()?.0),
            }
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let base = if self.chars[self.pos] == '(' {
            self.pos += 1;
            let w = self.sequence()?;
            if self.chars.get(self.pos) != Some(&')') {
                return Err(Error::Parse("missing ')'".into()));
            }
            self.pos += 1;
            w
        } else {
            // longest generator name matching here
            let rest: String = self.chars[self.pos..].iter().collect();
            let (idx, len) = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .map(|(i, n)| (i, n.chars().count()))
                .max_by_key(|&(_, l)| l)
                .ok_or_else(|| Error::Parse(format!("unknown generator at {rest:?}")))?;
            self.pos += len;
            Word(vec![Letter::new(idx)])
        };
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            let start = self.pos;
            if self.chars.get(self.pos) == Some(&'-') {
                self.pos += 1;
            }
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let e: i64 = text.parse().map_err(|_| Error::Parse(format!("bad exponent {text:?}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// Outcome of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    /// The row limit was reached; `defined` rows were in use.
    Overflowed {
        limit: usize,
        defined: usize,
    },
}

/// A coset table: the action of each generator on the cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    num_gens: usize,
    /// Column of each letter: `2g` forward, `2g + 1` inverse (aliased for involutions).
    col: Vec<usize>,
    ncols: usize,
    rows: Vec<u32>,
    index: usize,
    subgroup: Vec<Word>,
    status: TableStatus,
}

const UNDEF: u32 = u32::MAX;

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Number of cosets (the subgroup index) of a complete table.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset * self.ncols + self.col[2 * l.gen + l.inverse as usize]] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.0.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Image array of generator `g` on the cosets.
    pub fn action(&self, g: usize) -> Vec<usize> {
        (0..self.index).map(|c| self.act(c, Letter::new(g))).collect()
    }

    pub fn to_csv(&self, p: &Presentation) -> String {
        let mut out = String::from("coset");
        for name in p.generator_names() {
            let _ = write!(out, ",{name},{name}^-1");
        }
        out.push('\n');
        for c in 0..self.index {
            let _ = write!(out, "{c}");
            for g in 0..self.num_gens {
                let _ = write!(out, ",{},{}", self.act(c, Letter::new(g)), self.act(c, Letter::new(g).inv()));
            }
            out.push('\n');
        }
        out
    }
}

/// Enumerates the cosets of `<subgens>` in the group presented by `p`.
pub fn coset_enumeration(p: &Presentation, subgens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return domain("max_cosets must be at least 1");
    }
    for w in subgens {
        if let Some(l) = w.0.iter().find(|l| l.gen >= p.num_generators()) {
            return domain(format!("subgroup generator uses undeclared generator #{}", l.gen));
        }
    }
    let n = p.num_generators();
    // involutions share a column with their inverse
    let involution: Vec<bool> =
        (0..n).map(|g| p.relators().iter().any(|r| r.len() == 2 && r.0[0].gen == g && r.0[1] == r.0[0])).collect();
    let mut col = vec![0; 2 * n];
    let mut ncols = 0;
    for g in 0..n {
        col[2 * g] = ncols;
        ncols += 1;
        if involution[g] {
            col[2 * g + 1] = col[2 * g];
        } else {
            col[2 * g + 1] = ncols;
            ncols += 1;
        }
    }
    let mut inv = vec![0; ncols];
    for g in 0..n {
        inv[col[2 * g]] = col[2 * g + 1];
        inv[col[2 * g + 1]] = col[2 * g];
    }
    let to_cols = |w: &Word| -> Vec<usize> { w.0.iter().map(|l| col[2 * l.gen + l.inverse as usize]).collect() };
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !(r.len() == 2 && r.0[0] == r.0[1] && involution[r.0[0].gen]))
        .map(to_cols)
        .collect();
    let subs: Vec<Vec<usize>> = subgens.iter().map(to_cols).collect();

    let mut e = Enumerator::new(ncols, inv, max_cosets);
    let status = e.run(&rels, &subs);
    let (rows, index) = match status {
        TableStatus::Complete => e.standardized(),
        TableStatus::Overflowed { .. } => (Vec::new(), 0),
    };
    Ok(CosetTable { num_gens: n, col, ncols, rows, index, subgroup: subgens.to_vec(), status })
}

struct NeedSpace;

struct Enumerator {
    ncols: usize,
    inv: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    nrows: usize,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(ncols: usize, inv: Vec<usize>, max: usize) -> Self {
        Enumerator { ncols, inv, table: vec![UNDEF; ncols], parent: vec![0], nrows: 1, live: 1, max, queue: Vec::new() }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.ncols + x] = d;
    }

    #[inline]
    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<usize, NeedSpace> {
        if self.nrows >= self.max {
            return Err(NeedSpace);
        }
        let d = self.nrows;
        self.nrows += 1;
        self.live += 1;
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(d as u32);
        self.set(c, x, d as u32);
        self.set(d, self.inv[x], c as u32);
        Ok(d)
    }

    fn run(&mut self, rels: &[Vec<usize>], subs: &[Vec<usize>]) -> TableStatus {
        let mut sub_done = 0;
        let mut c = 0;
        loop {
            let step = if sub_done < subs.len() {
                self.scan_and_fill(0, &subs[sub_done]).map(|_| sub_done += 1)
            } else if c >= self.nrows {
                return TableStatus::Complete;
            } else {
                self.process(c, rels).map(|_| c += 1)
            };
            if step.is_err() {
                let before = self.live;
                self.lookahead(rels);
                c = self.compact(c);
                if self.nrows >= self.max && self.live >= before {
                    return TableStatus::Overflowed { limit: self.max, defined: self.nrows };
                }
            }
        }
    }

    fn process(&mut self, c: usize, rels: &[Vec<usize>]) -> std::result::Result<(), NeedSpace> {
        if !self.is_live(c) {
            return Ok(());
        }
        for r in rels {
            self.scan_and_fill(c, r)?;
            if !self.is_live(c) {
                return Ok(());
            }
        }
        for x in 0..self.ncols {
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> std::result::Result<(), NeedSpace> {
        self.scan_impl(c, w, true)
    }

    /// Scans `w` from `c` without defining new cosets.
    fn scan(&mut self, c: usize, w: &[usize]) {
        let _ = self.scan_impl(c, w, false);
    }

    fn scan_impl(&mut self, c: usize, w: &[usize], fill: bool) -> std::result::Result<(), NeedSpace> {
        let mut f = c;
        let mut i: isize = 0;
        let mut b = c;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, self.inv[w[j as usize]]) != UNDEF {
                b = self.get(b, self.inv[w[j as usize]]) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, self.inv[x], f as u32);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.nrows {
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r);
            }
            c += 1;
        }
    }

    fn rep(&mut self, k: usize) -> usize {
        let mut r = k;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = k;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k1 = self.rep(k);
        let l1 = self.rep(l);
        if k1 == l1 {
            return;
        }
        let (lo, hi) = if k1 < l1 { (k1, l1) } else { (l1, k1) };
        self.parent[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head] as usize;
            head += 1;
            for x in 0..self.ncols {
                let d = self.get(e, x);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                let xi = self.inv[x];
                // drop the back pointer d --x^-1--> e
                if self.get(d, xi) as usize == e {
                    self.set(d, xi, UNDEF);
                }
                let mu = self.rep(e);
                let nu = self.rep(d);
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, xi) != UNDEF {
                    let t = self.get(nu, xi) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, xi, mu as u32);
                }
            }
        }
        self.queue.clear();
    }

    /// Removes dead rows, preserving order; returns the new position of `c`.
    fn compact(&mut self, c: usize) -> usize {
        let mut newpos = vec![UNDEF; self.nrows];
        let mut next = 0u32;
        for (r, slot) in newpos.iter_mut().enumerate() {
            if self.parent[r] as usize == r {
                *slot = next;
                next += 1;
            }
        }
        let new_c = newpos[c..self.nrows].iter().find(|&&p| p != UNDEF).map_or(next as usize, |&p| p as usize);
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for r in 0..self.nrows {
            if newpos[r] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(r, x);
                table.push(if d == UNDEF { UNDEF } else { newpos[d as usize] });
            }
        }
        self.table = table;
        self.nrows = next as usize;
        self.live = self.nrows;
        self.parent = (0..next).collect();
        new_c
    }

    /// Compacts and renumbers cosets in breadth-first order from coset 0.
    fn standardized(&mut self) -> (Vec<u32>, usize) {
        self.compact(0);
        let n = self.nrows;
        let mut order = vec![UNDEF; n];
        let mut seq = vec![0u32];
        order[0] = 0;
        let mut head = 0;
        while head < seq.len() {
            let c = seq[head] as usize;
            head += 1;
            for x in 0..self.ncols {
                let d = self.get(c, x) as usize;
                if order[d] == UNDEF {
                    order[d] = seq.len() as u32;
                    seq.push(d as u32);
                }
            }
        }
        let mut rows = vec![0; n * self.ncols];
        for (new, &old) in seq.iter().enumerate() {
            for x in 0..self.ncols {
                rows[new * self.ncols + x] = order[self.get(old as usize, x) as usize];
            }
        }
        (rows, n)
    }
}

/// The action of each generator on the cosets of a complete table. When the
/// table is over the trivial subgroup the group order is the index.
pub fn permutation_representation(t: &CosetTable) -> Result<PermutationGroup> {
    if !t.is_complete() {
        return Err(Error::State("coset table is incomplete".into()));
    }
    let gens: Vec<Permutation> = (0..t.num_generators())
        .map(|g| Permutation::from_images_unchecked(t.action(g).into_iter().map(|x| x as u32).collect()))
        .collect();
    if t.subgroup.iter().all(|w| w.is_empty()) {
        PermutationGroup::with_order(t.index(), gens, t.index() as u128)
    } else {
        PermutationGroup::new(t.index(), gens)
    }
}

/// Order of the subgroup of a complete table, given the order of the group.
pub fn subgroup_order(t: &CosetTable, full_order: u128) -> Result<u128> {
    if !t.is_complete() {
        return Err(Error::State("coset table is incomplete".into()));
    }
    let index = t.index() as u128;
    if !full_order.is_multiple_of(index) {
        return inconsistency(format!("index {index} does not divide group order {full_order}"));
    }
    Ok(full_order / index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Presentation {
        Presentation::parse("gens: a b; rels: a^2, b^2, (ab)^3").unwrap()
    }

    fn check_table(p: &Presentation, t: &CosetTable) {
        for c in 0..t.index() {
            for r in p.relators() {
                assert_eq!(t.trace(c, r), c);
            }
        }
        for w in t.subgroup_generators() {
            assert_eq!(t.trace(0, w), 0);
        }
    }

    #[test]
    fn parse_and_format() {
        let p = s3();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].len(), 6);
        assert_eq!(p.to_string(), "gens: a b; rels: a^2, b^2, a b a b a b");
        let q = Presentation::parse("gens: r0 r1; rels: r0^2, (r0 r1)^-2").unwrap();
        assert_eq!(q.format_word(&q.relators()[1]), "r1^-1 r0^-1 r1^-1 r0^-1");
        assert_eq!(q.parse_word("r0 r1 r1^-1").unwrap().len(), 3);
        assert!(Presentation::parse("gens: a; rels: b").is_err());
        assert!(Presentation::parse("gens: a a; rels: a").is_err());
        assert!(q.parse_word("(r0").is_err());
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let p = s3();
        let t = coset_enumeration(&p, &[], 1000).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.index(), 6);
        check_table(&p, &t);
        let g = permutation_representation(&t).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(subgroup_order(&t, 6).unwrap(), 1);
    }

    #[test]
    fn subgroup_cosets() {
        let p = s3();
        let a = p.parse_word("a").unwrap();
        let t = coset_enumeration(&p, &[a], 1000).unwrap();
        assert_eq!(t.index(), 3);
        check_table(&p, &t);
        assert_eq!(subgroup_order(&t, 6).unwrap(), 2);
        assert!(subgroup_order(&t, 7).is_err());
        let g = permutation_representation(&t).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn non_involutory_generators() {
        // cyclic group of order 7, and <a, b | a^3, b^2, (ab)^5> = A5 via a 3-cycle presentation
        let p = Presentation::parse("gens: a; rels: a^7").unwrap();
        assert_eq!(coset_enumeration(&p, &[], 100).unwrap().index(), 7);
        let p = Presentation::parse("gens: a b; rels: a^2, b^3, (ab)^5").unwrap();
        let t = coset_enumeration(&p, &[], 1000).unwrap();
        assert_eq!(t.index(), 60);
        check_table(&p, &t);
        let p = Presentation::parse("gens: x y; rels: x^4, y^4, x y x^-1 y^-1").unwrap();
        assert_eq!(coset_enumeration(&p, &[], 1000).unwrap().index(), 16);
    }

    #[test]
    fn overflow_is_reported() {
        let p = Presentation::parse("gens: a b; rels: a^2, b^2").unwrap();
        let t = coset_enumeration(&p, &[], 500).unwrap();
        assert!(matches!(t.status(), TableStatus::Overflowed { limit: 500, .. }));
        assert!(permutation_representation(&t).is_err());
        assert!(coset_enumeration(&p, &[], 0).is_err());
    }

    #[test]
    fn tight_limits_use_lookahead() {
        // S5 as [3,3,3] needs more than 120 rows under plain HLT
        let p = Presentation::parse(
            "gens: a b c d; rels: a^2, b^2, c^2, d^2, (ab)^3, (bc)^3, (cd)^3, (ac)^2, (ad)^2, (bd)^2",
        )
        .unwrap();
        let loose = coset_enumeration(&p, &[], 100_000).unwrap();
        assert_eq!(loose.index(), 120);
        let tight = coset_enumeration(&p, &[], 130).unwrap();
        assert!(tight.is_complete());
        assert_eq!(tight.index(), 120);
        check_table(&p, &tight);
    }

    #[test]
    fn csv_export() {
        let p = s3();
        let t = coset_enumeration(&p, &[p.parse_word("a").unwrap()], 100).unwrap();
        let csv = t.to_csv(&p);
        assert!(csv.starts_with("coset,a,a^-1,b,b^-1\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let p = Presentation::parse("gens: a b; rels: a^2, b^3, (ab)^7, (a b a b^-1)^4").unwrap();
        let t1 = coset_enumeration(&p, &[], 100_000).unwrap();
        let t2 = coset_enumeration(&p, &[], 100_000).unwrap();
        assert_eq!(t1.index(), 168);
        assert_eq!(t1.rows, t2.rows);
    }
}
