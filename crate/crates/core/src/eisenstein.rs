//! Arithmetic in the Eisenstein integers `Z[w]`, `w` a primitive cube root of
//! unity, together with residue rings `Z[w]/(m)`, their unit groups and
//! admissible scalar subgroups.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive};

use crate::error::{domain, inconsistency, Error, Result};

/// Integer types usable as coordinates of an Eisenstein integer.
pub trait EisensteinScalar:
    PrimInt + Signed + Integer + Roots + Hash + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
}

impl EisensteinScalar for i32 {}
impl EisensteinScalar for i64 {}
impl EisensteinScalar for i128 {}

/// The concrete Eisenstein integer used throughout the pipeline.
pub type Eisenstein = EisensteinInt<i64>;

/// The Eisenstein integer `a + b w`, where `w^2 = -1 - w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt<T> {
    pub a: T,
    pub b: T,
}

impl<T: EisensteinScalar> EisensteinInt<T> {
    pub fn new(a: T, b: T) -> Self {
        EisensteinInt { a, b }
    }

    pub fn from_int(a: T) -> Self {
        EisensteinInt { a, b: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(T::zero())
    }

    pub fn one() -> Self {
        Self::from_int(T::one())
    }

    /// The primitive cube root of unity `w`.
    pub fn omega() -> Self {
        EisensteinInt { a: T::zero(), b: T::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a^2 - ab + b^2`, equal to `x * conj(x)`.
    pub fn norm(&self) -> T {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    /// Complex conjugate: `a + b w^2 = (a - b) - b w`.
    pub fn conj(&self) -> Self {
        EisensteinInt { a: self.a - self.b, b: -self.b }
    }

    /// The six units `±1, ±w, ±w^2`, in the order `1, -w^2, w, -1, w^2, -w`
    /// (successive rotations by 60 degrees).
    pub fn units() -> [Self; 6] {
        let o = T::one();
        let z = T::zero();
        [
            EisensteinInt { a: o, b: z },
            EisensteinInt { a: o, b: o },
            EisensteinInt { a: z, b: o },
            EisensteinInt { a: -o, b: z },
            EisensteinInt { a: -o, b: -o },
            EisensteinInt { a: z, b: -o },
        ]
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == T::one()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let num = *self * d.conj();
        let n = d.norm();
        if num.a % n == T::zero() && num.b % n == T::zero() {
            Some(EisensteinInt { a: num.a / n, b: num.b / n })
        } else {
            None
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        x.div_exact(self).is_some()
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        Self::units().iter().any(|u| *u * *self == *other)
    }

    /// The associate with `a > 0`, `b >= 0` and the smallest `b`.
    pub fn canonical_associate(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::units()
            .iter()
            .map(|u| *u * *self)
            .filter(|x| x.a > T::zero() && x.b >= T::zero())
            .min_by(|x, y| x.b.cmp(&y.b))
            .expect("every nonzero element has an associate in the closed sector")
    }

    /// Remainder of division by `m` of minimal norm; ties broken by the
    /// lexicographically smallest `(a, b)`.
    pub fn rem_min(&self, m: &Self) -> Self {
        assert!(!m.is_zero(), "reduction modulo zero");
        let num = *self * m.conj();
        let n = m.norm();
        let qa = num.a.div_floor(&n);
        let qb = num.b.div_floor(&n);
        let one = T::one();
        let two = one + one;
        let mut best: Option<(T, T, T)> = None;
        let mut da = -one;
        while da <= two {
            let mut db = -one;
            while db <= two {
                let q = EisensteinInt { a: qa + da, b: qb + db };
                let r = *self - q * *m;
                let key = (r.norm(), r.a, r.b);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
                db = db + one;
            }
            da = da + one;
        }
        let (_, a, b) = best.unwrap();
        EisensteinInt { a, b }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn cast<U: EisensteinScalar>(&self) -> Option<EisensteinInt<U>> {
        Some(EisensteinInt { a: U::from(self.a)?, b: U::from(self.b)? })
    }
}

impl<T: EisensteinScalar> Add for EisensteinInt<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EisensteinInt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<T: EisensteinScalar> Sub for EisensteinInt<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        EisensteinInt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<T: EisensteinScalar> Neg for EisensteinInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        EisensteinInt { a: -self.a, b: -self.b }
    }
}

impl<T: EisensteinScalar> Mul for EisensteinInt<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = self.b * o.b;
        EisensteinInt { a: self.a * o.a - bd, b: self.a * o.b + self.b * o.a - bd }
    }
}

impl<T: EisensteinScalar> fmt::Display for EisensteinInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a, self.b);
        if b.is_zero() {
            return write!(f, "{}", a);
        }
        let coef = |b: T| -> String {
            if b == T::one() {
                String::new()
            } else {
                b.abs().to_string()
            }
        };
        if a.is_zero() {
            if b == -T::one() {
                return write!(f, "-w");
            }
            if b.is_negative() {
                return write!(f, "-{}w", coef(b.abs()));
            }
            return write!(f, "{}w", coef(b));
        }
        let sign = if b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}w", a, sign, coef(b.abs()))
    }
}

impl<T: EisensteinScalar> fmt::Debug for EisensteinInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses sums, differences and products of integers, `w`, and parenthesised
/// subexpressions, e.g. `2-2w`, `(1-w)(1+3w)`, `3*(1-w)`.
impl<T: EisensteinScalar> FromStr for EisensteinInt<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty Eisenstein integer".into()));
        }
        let mut p = ExprParser { chars: &chars, pos: 0 };
        let v = p.expr()?;
        if p.pos != chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in {s:?}", chars[p.pos])));
        }
        v.cast::<T>().ok_or_else(|| Error::Parse(format!("{s:?} overflows")))
    }
}

struct ExprParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<EisensteinInt<i128>> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<EisensteinInt<i128>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(c) if c == '(' || c == 'w' || c.is_ascii_digit() => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<EisensteinInt<i128>> {
        let base = match self.peek() {
            Some('-') => {
                self.pos += 1;
                return Ok(-self.factor()?);
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                v
            }
            Some('w') => {
                self.pos += 1;
                EisensteinInt::omega()
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let n: i128 = text.parse().map_err(|_| Error::Parse(format!("bad number {text}")))?;
                EisensteinInt::from_int(n)
            }
            Some(c) => return Err(Error::Parse(format!("unexpected '{c}'"))),
            None => return Err(Error::Parse("unexpected end of input".into())),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = text.parse().map_err(|_| Error::Parse(format!("bad exponent {text:?}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// `unit * prod(prime^exponent)`, primes canonical and pairwise non-associated.
#[derive(Clone, PartialEq, Eq)]
pub struct Factorization<T> {
    pub unit: EisensteinInt<T>,
    pub parts: Vec<(EisensteinInt<T>, u32)>,
}

impl<T: EisensteinScalar> Factorization<T> {
    pub fn product(&self) -> EisensteinInt<T> {
        self.parts.iter().fold(self.unit, |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &EisensteinInt<T>> {
        self.parts.iter().map(|(p, _)| p)
    }

    /// Exponent of the ramified prime `1 - w`.
    pub fn ramified_exponent(&self) -> u32 {
        self.parts.iter().find(|(p, _)| p.norm() == T::from_u8(3).unwrap()).map_or(0, |(_, e)| *e)
    }
}

impl<T: EisensteinScalar> fmt::Debug for Factorization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: EisensteinScalar> fmt::Display for Factorization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, e) in &self.parts {
            write!(f, " * ({})^{}", p, e)?;
        }
        Ok(())
    }
}

fn rational_prime_factors<T: EisensteinScalar>(mut n: T) -> Vec<T> {
    let mut out = Vec::new();
    let mut p = T::from_u8(2).unwrap();
    while p * p <= n {
        if n % p == T::zero() {
            out.push(p);
            while n % p == T::zero() {
                n = n / p;
            }
        }
        p = p + T::one();
    }
    if n > T::one() {
        out.push(n);
    }
    out
}

/// A prime of norm `p` for a rational prime `p = 1 (mod 3)`.
fn split_prime<T: EisensteinScalar>(p: T) -> EisensteinInt<T> {
    let three = T::from_u8(3).unwrap();
    let four = T::from_u8(4).unwrap();
    let mut b = T::one();
    while three * b * b <= four * p {
        let disc = four * p - three * b * b;
        let r = disc.sqrt();
        if r * r == disc && (b + r) % (T::one() + T::one()) == T::zero() {
            let a = (b + r) / (T::one() + T::one());
            let x = EisensteinInt::new(a, b);
            debug_assert_eq!(x.norm(), p);
            return x;
        }
        b = b + T::one();
    }
    unreachable!("rational prime {p} = 1 mod 3 is a norm")
}

/// Prime factorization in `Z[w]`.
pub fn factor<T: EisensteinScalar>(m: &EisensteinInt<T>) -> Result<Factorization<T>> {
    if m.is_zero() {
        return domain("cannot factor 0");
    }
    let three = T::from_u8(3).unwrap();
    let mut primes: Vec<EisensteinInt<T>> = Vec::new();
    for p in rational_prime_factors(m.norm()) {
        if p == three {
            primes.push(EisensteinInt::new(T::one(), -T::one()).canonical_associate());
        } else if p % three == T::one() {
            let pi = split_prime(p);
            primes.push(pi.canonical_associate());
            primes.push(pi.conj().canonical_associate());
        } else {
            primes.push(EisensteinInt::from_int(p));
        }
    }
    let mut rest = *m;
    let mut parts = Vec::new();
    for pi in primes {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&pi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            parts.push((pi, e));
        }
    }
    if !rest.is_unit() {
        return inconsistency(format!("cofactor {rest} of {m} is not a unit"));
    }
    parts.sort_by_key(|(x, _)| (x.norm(), x.a, x.b));
    Ok(Factorization { unit: rest, parts })
}

/// Index of an element of a [`ResidueRing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue(pub u32);

/// The ring `Z[w]/(m)` with full addition and multiplication tables.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: EisensteinInt<i64>,
    elements: Vec<EisensteinInt<i64>>,
    index: HashMap<EisensteinInt<i64>, u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<Option<u32>>,
}

impl ResidueRing {
    pub fn new(m: EisensteinInt<i64>) -> Result<Self> {
        if m.is_zero() {
            return domain("residue ring modulo 0 is infinite");
        }
        let n = m.norm();
        if n > 4096 {
            return domain(format!("residue ring of order {n} exceeds the supported size"));
        }
        let bound = (n as f64).sqrt().ceil() as i64 + 2;
        let mut elements = Vec::with_capacity(n as usize);
        for a in -bound..=bound {
            for b in -bound..=bound {
                let x = EisensteinInt::new(a, b);
                if x.rem_min(&m) == x {
                    elements.push(x);
                }
            }
        }
        if elements.len() as i64 != n {
            return inconsistency(format!("found {} canonical residues modulo {m}, expected {n}", elements.len()));
        }
        elements.sort_by_key(|x| (x.a, x.b));
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, x)| (*x, i as u32)).collect();
        let size = elements.len();
        let lookup = |x: EisensteinInt<i64>| index[&x.rem_min(&m)];
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for i in 0..size {
            for j in 0..size {
                add[i * size + j] = lookup(elements[i] + elements[j]);
                mul[i * size + j] = lookup(elements[i] * elements[j]);
            }
        }
        let neg = elements.iter().map(|x| lookup(-*x)).collect();
        let one = lookup(EisensteinInt::one());
        let inv = (0..size).map(|i| (0..size as u32).find(|&j| mul[i * size + j as usize] == one)).collect();
        Ok(ResidueRing { modulus: m, elements, index, add, mul, neg, inv })
    }

    pub fn modulus(&self) -> EisensteinInt<i64> {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Residue> {
        (0..self.len() as u32).map(Residue)
    }

    /// Canonical representative of a residue.
    pub fn value(&self, r: Residue) -> EisensteinInt<i64> {
        self.elements[r.0 as usize]
    }

    pub fn reduce(&self, x: EisensteinInt<i64>) -> Residue {
        Residue(self.index[&x.rem_min(&self.modulus)])
    }

    pub fn zero(&self) -> Residue {
        self.reduce(EisensteinInt::zero())
    }

    pub fn one(&self) -> Residue {
        self.reduce(EisensteinInt::one())
    }

    #[inline]
    pub fn add(&self, x: Residue, y: Residue) -> Residue {
        Residue(self.add[x.0 as usize * self.len() + y.0 as usize])
    }

    #[inline]
    pub fn mul(&self, x: Residue, y: Residue) -> Residue {
        Residue(self.mul[x.0 as usize * self.len() + y.0 as usize])
    }

    #[inline]
    pub fn neg(&self, x: Residue) -> Residue {
        Residue(self.neg[x.0 as usize])
    }

    pub fn sub(&self, x: Residue, y: Residue) -> Residue {
        self.add(x, self.neg(y))
    }

    pub fn inverse(&self, x: Residue) -> Option<Residue> {
        self.inv[x.0 as usize].map(Residue)
    }

    pub fn is_unit(&self, x: Residue) -> bool {
        self.inv[x.0 as usize].is_some()
    }

    /// Complex conjugation, defined on the ring only when `m` divides `conj(m)`.
    pub fn conjugate(&self, x: Residue) -> Option<Residue> {
        if self.modulus.divides(&self.modulus.conj()) {
            Some(self.reduce(self.value(x).conj()))
        } else {
            None
        }
    }
}

/// All units of the residue ring.
pub fn unit_group(ring: &ResidueRing) -> BTreeSet<Residue> {
    ring.elements().filter(|&x| ring.is_unit(x)).collect()
}

/// An admissible scalar group: a subgroup of the units containing `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarGroup {
    modulus: EisensteinInt<i64>,
    members: BTreeSet<Residue>,
}

impl ScalarGroup {
    pub fn modulus(&self) -> EisensteinInt<i64> {
        self.modulus
    }

    pub fn members(&self) -> &BTreeSet<Residue> {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, r: Residue) -> bool {
        self.members.contains(&r)
    }

    /// Whether the group is invariant under complex conjugation; `None` when
    /// conjugation is not defined modulo `m`.
    pub fn is_conjugation_invariant(&self, ring: &ResidueRing) -> Option<bool> {
        let mut out = true;
        for &x in &self.members {
            out &= self.members.contains(&ring.conjugate(x)?);
        }
        Some(out)
    }
}

fn closure(ring: &ResidueRing, gens: &[Residue]) -> BTreeSet<Residue> {
    let mut members: BTreeSet<Residue> = BTreeSet::from([ring.one()]);
    let mut frontier = vec![ring.one()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ring.mul(x, g);
            if members.insert(y) {
                frontier.push(y);
            }
        }
    }
    members
}

/// The group generated by `gens` and `-1`.
pub fn scalar_subgroup(ring: &ResidueRing, gens: &[Residue]) -> Result<ScalarGroup> {
    if let Some(g) = gens.iter().find(|&&g| !ring.is_unit(g)) {
        return domain(format!("{} is not a unit modulo {}", ring.value(*g), ring.modulus()));
    }
    let mut all = gens.to_vec();
    all.push(ring.neg(ring.one()));
    Ok(ScalarGroup { modulus: ring.modulus(), members: closure(ring, &all) })
}

/// Every admissible scalar group modulo `m`, ordered by size then members.
pub fn admissible_subgroups(ring: &ResidueRing) -> Vec<ScalarGroup> {
    let units: Vec<Residue> = unit_group(ring).into_iter().collect();
    let minus_one = ring.neg(ring.one());
    let mut seen: BTreeSet<Vec<Residue>> = BTreeSet::new();
    let start = closure(ring, &[minus_one]);
    let mut queue = vec![start.clone()];
    seen.insert(start.into_iter().collect());
    while let Some(h) = queue.pop() {
        for &u in &units {
            if h.contains(&u) {
                continue;
            }
            let mut gens: Vec<Residue> = h.iter().copied().collect();
            gens.push(u);
            let bigger = closure(ring, &gens);
            let key: Vec<Residue> = bigger.iter().copied().collect();
            if seen.insert(key) {
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<ScalarGroup> = seen
        .into_iter()
        .map(|members| ScalarGroup { modulus: ring.modulus(), members: members.into_iter().collect() })
        .collect();
    out.sort_by(|x, y| (x.order(), &x.members).cmp(&(y.order(), &y.members)));
    out
}

/// Number of vertices of the medial layer graph built from `(m, A)`:
/// `2 * norm(m)^3 / (12 |A|) * prod_{pi | m} (1 - norm(pi)^-2)`.
pub fn vertex_count(m: &EisensteinInt<i64>, a: &ScalarGroup) -> Result<u64> {
    if m.is_zero() {
        return domain("modulus must be nonzero");
    }
    let n = m.norm();
    if n % 3 != 0 || n / 3 <= 1 {
        return domain(format!("norm({m}) = {n} is not 3k with k > 1"));
    }
    if !a.modulus().is_associate(m) {
        return domain(format!("scalar group is defined modulo {}, not {m}", a.modulus()));
    }
    let f = factor(m)?;
    let mut num: u128 = 2 * (n as u128).pow(3);
    let mut den: u128 = 12 * a.order() as u128;
    for (pi, _) in &f.parts {
        let q = pi.norm() as u128;
        num *= q * q - 1;
        den *= q * q;
    }
    if !num.is_multiple_of(den) {
        return inconsistency(format!("vertex count {num}/{den} is not integral for |A| = {}", a.order()));
    }
    Ok((num / den) as u64)
}
