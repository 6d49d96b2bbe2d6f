//! Named presentations: string Coxeter groups, regular toroidal maps, the
//! universal locally toroidal polytopes and the order-1296 polytope with
//! tetrahedral facets.

use std::fmt;
use std::str::FromStr;

use crate::eisenstein::Eisenstein;
use crate::error::{domain, Error, Result};
use crate::fpgroup::{Presentation, Word};

/// A string Schläfli symbol `{p1,...}` of rank 3 or 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchlafliType(Vec<u32>);

impl SchlafliType {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if !(2..=3).contains(&entries.len()) {
            return domain(format!("Schläfli symbols of rank 3 or 4 only, got {entries:?}"));
        }
        if entries.iter().any(|&p| p < 2) {
            return domain(format!("Schläfli entries must be at least 2, got {entries:?}"));
        }
        Ok(SchlafliType(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn reflection_names(rank: usize) -> Vec<String> {
    (0..rank).map(|i| format!("r{i}")).collect()
}

fn power(gens: &[usize], e: i64) -> Word {
    Word::from_gens(gens).pow(e)
}

/// The string Coxeter group with the given Schläfli symbol.
pub fn coxeter(ty: &SchlafliType) -> Presentation {
    let rank = ty.rank();
    let mut rels: Vec<Word> = (0..rank).map(|i| power(&[i], 2)).collect();
    for (i, &p) in ty.entries().iter().enumerate() {
        rels.push(power(&[i, i + 1], p as i64));
    }
    for i in 0..rank {
        for j in i + 2..rank {
            rels.push(power(&[i, j], 2));
        }
    }
    Presentation::new(reflection_names(rank), rels).expect("Coxeter relators are well formed")
}

/// The rank-4 string Coxeter group `[p1,p2,p3]`.
pub fn coxeter_string(p1: u32, p2: u32, p3: u32) -> Result<Presentation> {
    Ok(coxeter(&SchlafliType::new(vec![p1, p2, p3])?))
}

/// Which of the two dual toroidal families a map belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapFamily {
    /// Triangle faces, six at each vertex: `{3,6}`.
    Triangular,
    /// Hexagon faces, three at each vertex: `{6,3}`.
    Hexagonal,
}

impl MapFamily {
    pub fn schlafli(self) -> SchlafliType {
        match self {
            MapFamily::Triangular => SchlafliType(vec![3, 6]),
            MapFamily::Hexagonal => SchlafliType(vec![6, 3]),
        }
    }
}

/// Parameters `(s,t)` of a toroidal map `{3,6}_(s,t)` or `{6,3}_(s,t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToroidalParams {
    pub s: u32,
    pub t: u32,
    pub family: MapFamily,
}

impl ToroidalParams {
    pub fn new(s: u32, t: u32, family: MapFamily) -> Result<Self> {
        let p = ToroidalParams { s, t, family };
        if p.v() <= 1 {
            return domain(format!("toroidal parameters ({s},{t}) are degenerate"));
        }
        Ok(p)
    }

    /// `s² + st + t²`: vertices of `{3,6}_(s,t)`, faces of `{6,3}_(s,t)`.
    pub fn v(&self) -> u64 {
        let (s, t) = (self.s as u64, self.t as u64);
        s * s + s * t + t * t
    }

    pub fn is_regular(&self) -> bool {
        self.s == 0 || self.t == 0 || self.s == self.t
    }

    pub fn dual(&self) -> Self {
        let family = match self.family {
            MapFamily::Triangular => MapFamily::Hexagonal,
            MapFamily::Hexagonal => MapFamily::Triangular,
        };
        ToroidalParams { family, ..*self }
    }

    /// Vertex, edge and face counts of the map.
    pub fn face_counts(&self) -> [u64; 3] {
        let v = self.v();
        match self.family {
            MapFamily::Triangular => [v, 3 * v, 2 * v],
            MapFamily::Hexagonal => [2 * v, 3 * v, v],
        }
    }

    pub fn group_order(&self) -> u64 {
        12 * self.v()
    }
}

impl fmt::Display for ToroidalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_({},{})", self.family.schlafli(), self.s, self.t)
    }
}

/// The extra relator cutting `[3,6]` or `[6,3]` down to the toroidal map.
///
/// Words are in the map's own generators `r0 r1 r2`. The `{6,3}` words are
/// the `{3,6}` words read through the duality `r0 <-> r2`.
pub fn toroidal_relator(p: &ToroidalParams) -> Result<Word> {
    if !p.is_regular() {
        return Err(Error::Domain(format!(
            "{p} is chiral; only (s,0), (0,s) and (s,s) have a reflection presentation"
        )));
    }
    let k = p.s.max(p.t) as i64;
    let triangular = if p.s == p.t { power(&[0, 1, 2, 1, 2], 2 * k) } else { power(&[0, 1, 2], 2 * k) };
    Ok(match p.family {
        MapFamily::Triangular => triangular,
        MapFamily::Hexagonal => triangular.substitute(&[2, 1, 0]),
    })
}

/// The rank-3 presentation of a regular toroidal map.
pub fn toroidal_map(p: &ToroidalParams) -> Result<Presentation> {
    coxeter(&p.family.schlafli()).with_relators([toroidal_relator(p)?])
}

/// Facet parameters, vertex-figure parameters and medial graph vertex count.
pub type UniversalRow = ((u32, u32), (u32, u32), u64);

/// The `(s, t)` pairs whose universal locally toroidal polytope is known
/// to be finite, with the vertex count of its medial layer graph.
pub const FINITE_UNIVERSAL: [UniversalRow; 7] = [
    ((1, 1), (1, 1), 18),
    ((1, 1), (3, 0), 54),
    ((2, 0), (2, 0), 40),
    ((2, 0), (2, 2), 120),
    ((3, 0), (3, 0), 486),
    ((3, 0), (2, 2), 6912),
    ((3, 0), (4, 0), 40320),
];

impl CatalogKey {
    /// The universal key `universal:3,6:s:t`.
    pub fn universal(s: (u32, u32), t: (u32, u32)) -> Result<Self> {
        Ok(CatalogKey::Universal(
            ToroidalParams::new(s.0, s.1, MapFamily::Triangular)?,
            ToroidalParams::new(t.0, t.1, MapFamily::Hexagonal)?,
        ))
    }
}

/// `{{3,6}_s, {6,3}_t}`: `[3,6,3]` with the facet relator on `r0 r1 r2` and
/// the vertex-figure relator on `r1 r2 r3`.
pub fn universal_locally_toroidal(s: &ToroidalParams, t: &ToroidalParams) -> Result<Presentation> {
    if s.family != MapFamily::Triangular || t.family != MapFamily::Hexagonal {
        return domain("facets must be {3,6}_s and vertex-figures {6,3}_t");
    }
    let facet = toroidal_relator(s)?;
    let vertex = toroidal_relator(t)?.substitute(&[1, 2, 3]);
    coxeter(&SchlafliType(vec![3, 6, 3])).with_relators([facet, vertex])
}

/// `{{3,3},{3,6}_(3,0)}`, whose group has order 1296.
pub fn simplex_toroidal_1296() -> Presentation {
    let vf = ToroidalParams { s: 3, t: 0, family: MapFamily::Triangular };
    let vertex = toroidal_relator(&vf).expect("(3,0) is regular").substitute(&[1, 2, 3]);
    coxeter(&SchlafliType(vec![3, 3, 6])).with_relators([vertex]).expect("well formed")
}

/// An instance addressable from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKey {
    /// `coxeter:p1,p2,p3`
    Coxeter(SchlafliType),
    /// `toroidal:3,6:s,t` or `toroidal:6,3:s,t`
    Toroidal(ToroidalParams),
    /// `universal:3,6:s1,s2:t1,t2`
    Universal(ToroidalParams, ToroidalParams),
    /// `p1296`
    P1296,
    /// `eisenstein:m=<expr>:A=<gen>,<gen>`
    Eisenstein { m: Eisenstein, scalars: Vec<Eisenstein> },
}

impl CatalogKey {
    /// The presentation behind a presentation-based key.
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            CatalogKey::Coxeter(ty) => Ok(coxeter(ty)),
            CatalogKey::Toroidal(p) => toroidal_map(p),
            CatalogKey::Universal(s, t) => universal_locally_toroidal(s, t),
            CatalogKey::P1296 => Ok(simplex_toroidal_1296()),
            CatalogKey::Eisenstein { .. } => domain("eisenstein keys are matrix groups, not presentations"),
        }
    }
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("expected 'a,b', got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_family(s: &str) -> Result<MapFamily> {
    match s {
        "3,6" => Ok(MapFamily::Triangular),
        "6,3" => Ok(MapFamily::Hexagonal),
        _ => Err(Error::Parse(format!("map family must be 3,6 or 6,3, got {s:?}"))),
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(key: &str) -> Result<Self> {
        let parts: Vec<&str> = key.trim().split(':').collect();
        match parts.as_slice() {
            ["p1296"] => Ok(CatalogKey::P1296),
            ["coxeter", entries] => {
                let e = entries
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CatalogKey::Coxeter(SchlafliType::new(e)?))
            }
            ["toroidal", fam, st] => {
                let (s, t) = parse_pair(st)?;
                Ok(CatalogKey::Toroidal(ToroidalParams::new(s, t, parse_family(fam)?)?))
            }
            ["universal", "3,6", s, t] => {
                let (s1, s2) = parse_pair(s)?;
                let (t1, t2) = parse_pair(t)?;
                Ok(CatalogKey::Universal(
                    ToroidalParams::new(s1, s2, MapFamily::Triangular)?,
                    ToroidalParams::new(t1, t2, MapFamily::Hexagonal)?,
                ))
            }
            ["eisenstein", m, a] => {
                let m = m.strip_prefix("m=").ok_or_else(|| Error::Parse("expected m=<expr>".into()))?;
                let a = a.strip_prefix("A=").ok_or_else(|| Error::Parse("expected A=<gens>".into()))?;
                let m: Eisenstein = m.parse()?;
                let scalars = a
                    .split(',')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(str::parse)
                    .collect::<Result<Vec<Eisenstein>>>()?;
                Ok(CatalogKey::Eisenstein { m, scalars })
            }
            _ => Err(Error::Parse(format!("unrecognized key {key:?}"))),
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Coxeter(ty) => {
                let e: Vec<String> = ty.entries().iter().map(u32::to_string).collect();
                write!(f, "coxeter:{}", e.join(","))
            }
            CatalogKey::Toroidal(p) => {
                let fam = match p.family {
                    MapFamily::Triangular => "3,6",
                    MapFamily::Hexagonal => "6,3",
                };
                write!(f, "toroidal:{fam}:{},{}", p.s, p.t)
            }
            CatalogKey::Universal(s, t) => write!(f, "universal:3,6:{},{}:{},{}", s.s, s.t, t.s, t.t),
            CatalogKey::P1296 => write!(f, "p1296"),
            CatalogKey::Eisenstein { m, scalars } => {
                let a: Vec<String> = scalars.iter().map(|x| x.to_string()).collect();
                write!(f, "eisenstein:m={m}:A={}", a.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::coset_enumeration;

    fn order(p: &Presentation) -> usize {
        let t = coset_enumeration(p, &[], 1_000_000).unwrap();
        assert!(t.is_complete());
        t.index()
    }

    #[test]
    fn coxeter_groups() {
        assert_eq!(order(&coxeter_string(3, 3, 3).unwrap()), 120);
        assert_eq!(coxeter_string(3, 3, 6).unwrap().relators().len(), 10);
        assert!(coxeter_string(3, 1, 3).is_err());
        let inf = coset_enumeration(&coxeter_string(3, 6, 3).unwrap(), &[], 100_000).unwrap();
        assert!(!inf.is_complete());
    }

    #[test]
    fn toroidal_orders() {
        for fam in [MapFamily::Triangular, MapFamily::Hexagonal] {
            for (s, t) in [(1, 1), (2, 0), (3, 0), (2, 2), (0, 3)] {
                let p = ToroidalParams::new(s, t, fam).unwrap();
                assert_eq!(order(&toroidal_map(&p).unwrap()) as u64, p.group_order(), "{p}");
            }
        }
        let chiral = ToroidalParams::new(2, 1, MapFamily::Triangular).unwrap();
        assert!(toroidal_relator(&chiral).is_err());
        assert!(ToroidalParams::new(1, 0, MapFamily::Triangular).is_err());
    }

    /// Reduced words of length 3..=5 in three involutions, first letter
    /// different from the last.
    fn candidate_words() -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2]];
        let mut out = Vec::new();
        for _ in 1..5 {
            let mut next = Vec::new();
            for w in &all {
                for g in 0..3 {
                    if *w.last().unwrap() != g {
                        let mut v = w.clone();
                        v.push(g);
                        if v.len() >= 3 && v[0] != g {
                            out.push(v.clone());
                        }
                        next.push(v);
                    }
                }
            }
            all = next;
        }
        out
    }

    #[test]
    fn relator_search_recovers_frozen_words() {
        let base = coxeter(&MapFamily::Triangular.schlafli());
        let quotient = |w: &[usize], e: i64| {
            let t = coset_enumeration(&base.with_relators([power(w, e)]).unwrap(), &[], 5000).unwrap();
            if t.is_complete() {
                t.index() as u64
            } else {
                0
            }
        };
        let mut axis = Vec::new();
        let mut diagonal = Vec::new();
        for w in candidate_words() {
            if (2..=4u64).all(|s| quotient(&w, 2 * s as i64) == 12 * s * s) {
                axis.push(w.clone());
            }
            if (1..=3u64).all(|s| quotient(&w, 2 * s as i64) == 36 * s * s) {
                diagonal.push(w);
            }
        }
        assert!(axis.contains(&vec![0, 1, 2]), "{axis:?}");
        assert!(diagonal.contains(&vec![0, 1, 2, 1, 2]), "{diagonal:?}");
    }

    #[test]
    fn universal_orders() {
        let tri = |s, t| ToroidalParams::new(s, t, MapFamily::Triangular).unwrap();
        let hex = |s, t| ToroidalParams::new(s, t, MapFamily::Hexagonal).unwrap();
        assert_eq!(order(&universal_locally_toroidal(&tri(1, 1), &hex(1, 1)).unwrap()), 108);
        assert_eq!(order(&universal_locally_toroidal(&tri(1, 1), &hex(3, 0)).unwrap()), 324);
        assert_eq!(order(&universal_locally_toroidal(&tri(3, 0), &hex(1, 1)).unwrap()), 324);
        assert_eq!(order(&universal_locally_toroidal(&tri(2, 0), &hex(2, 0)).unwrap()), 240);
        assert!(universal_locally_toroidal(&hex(1, 1), &hex(1, 1)).is_err());
    }

    #[test]
    fn order_1296() {
        let p = simplex_toroidal_1296();
        assert_eq!(order(&p), 1296);
        let facet = Word::from_gens(&[0]);
        let sub = [facet, Word::from_gens(&[1]), Word::from_gens(&[2])];
        assert_eq!(coset_enumeration(&p, &sub, 10_000).unwrap().index(), 1296 / 24);
        let vf = [Word::from_gens(&[1]), Word::from_gens(&[2]), Word::from_gens(&[3])];
        assert_eq!(coset_enumeration(&p, &vf, 10_000).unwrap().index(), 12);
    }

    #[test]
    fn keys_round_trip() {
        for k in ["universal:3,6:1,1:3,0", "p1296", "coxeter:3,3,3", "toroidal:3,6:2,0", "eisenstein:m=2-2w:A="] {
            let key: CatalogKey = k.parse().unwrap();
            assert_eq!(key.to_string(), k);
        }
        let key: CatalogKey = "eisenstein:m=(1-w)*(1+3w):A=-1".parse().unwrap();
        assert!(matches!(key, CatalogKey::Eisenstein { ref scalars, .. } if scalars.len() == 1));
        assert!("universal:6,3:1,1:1,1".parse::<CatalogKey>().is_err());
        assert!("bogus".parse::<CatalogKey>().is_err());
        assert!(CatalogKey::P1296.presentation().is_ok());
    }
}
