//! 2×2 matrices over `Z[w]/(m)` and the rotation groups they generate modulo
//! an admissible scalar group.

use std::collections::HashMap;
use std::fmt;

use crate::eisenstein::{scalar_subgroup, Eisenstein, Residue, ResidueRing, ScalarGroup};
use crate::error::{domain, Error, Result};
use crate::permgroup::{Permutation, PermutationGroup};

/// Default cap on the number of projective elements generated.
pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;

/// An integral 2×2 matrix over `Z[w]`, row-major.
pub type IntMatrix = [Eisenstein; 4];

fn e(a: i64, b: i64) -> Eisenstein {
    Eisenstein::new(a, b)
}

/// The frozen integral rotation generators.
///
/// They come from the reflections `z -> 1/conj(z)`, `z -> 1 - conj(z)`,
/// `z -> w conj(z)` and `z -> conj(z)` of the `{3,6,3}` honeycomb in upper
/// half-space; each rotation is a product of two adjacent reflections,
/// rescaled by a unit so that its determinant is `±1`.
pub fn integral_generators() -> [IntMatrix; 3] {
    let w = e(0, 1);
    let w2 = e(-1, -1);
    [[e(0, 0), e(1, 0), e(-1, 0), e(1, 0)], [-w, w2, e(0, 0), w2], [w2, e(0, 0), e(0, 0), w]]
}

pub fn int_mul(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

/// The rotation relations: words in `s1 s2 s3` (as indices 0..3) with the
/// period each must have modulo `±1`.
pub const RELATIONS: [(&str, &[usize], u32); 6] = [
    ("s1^3", &[0], 3),
    ("s2^6", &[1], 6),
    ("s3^3", &[2], 3),
    ("(s1 s2)^2", &[0, 1], 2),
    ("(s2 s3)^2", &[1, 2], 2),
    ("(s1 s2 s3)^2", &[0, 1, 2], 2),
];

/// A 2×2 matrix over a residue ring, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMatrix(pub [Residue; 4]);

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({},{},{},{})", a.0, b.0, c.0, d.0)
    }
}

/// Matrix arithmetic modulo `m` together with a scalar group.
#[derive(Clone, Debug)]
pub struct MatrixContext {
    ring: ResidueRing,
    scalars: ScalarGroup,
}

impl MatrixContext {
    pub fn new(m: Eisenstein, scalar_gens: &[Eisenstein]) -> Result<Self> {
        let ring = ResidueRing::new(m)?;
        let gens: Vec<Residue> = scalar_gens.iter().map(|&x| ring.reduce(x)).collect();
        let scalars = scalar_subgroup(&ring, &gens)?;
        Ok(MatrixContext { ring, scalars })
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn scalars(&self) -> &ScalarGroup {
        &self.scalars
    }

    pub fn identity(&self) -> ResidueMatrix {
        let (z, o) = (self.ring.zero(), self.ring.one());
        ResidueMatrix([o, z, z, o])
    }

    pub fn reduce(&self, x: &IntMatrix) -> Result<ResidueMatrix> {
        let m = ResidueMatrix(x.map(|v| self.ring.reduce(v)));
        if !self.ring.is_unit(self.det(&m)) {
            return domain(format!("matrix {x:?} is singular modulo {}", self.ring.modulus()));
        }
        Ok(m)
    }

    pub fn det(&self, x: &ResidueMatrix) -> Residue {
        let r = &self.ring;
        let [a, b, c, d] = x.0;
        r.sub(r.mul(a, d), r.mul(b, c))
    }

    pub fn mul(&self, x: &ResidueMatrix, y: &ResidueMatrix) -> ResidueMatrix {
        let r = &self.ring;
        let [a, b, c, d] = x.0;
        let [p, q, s, t] = y.0;
        ResidueMatrix([
            r.add(r.mul(a, p), r.mul(b, s)),
            r.add(r.mul(a, q), r.mul(b, t)),
            r.add(r.mul(c, p), r.mul(d, s)),
            r.add(r.mul(c, q), r.mul(d, t)),
        ])
    }

    pub fn scale(&self, k: Residue, x: &ResidueMatrix) -> ResidueMatrix {
        ResidueMatrix(x.0.map(|v| self.ring.mul(k, v)))
    }

    pub fn pow(&self, x: &ResidueMatrix, e: u32) -> ResidueMatrix {
        (0..e).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    /// Smallest member of `{a x : a in A}`.
    pub fn canonical(&self, x: &ResidueMatrix) -> ResidueMatrix {
        self.scalars.members().iter().map(|&a| self.scale(a, x)).min().expect("A is nonempty")
    }

    /// Whether `x` is a scalar matrix with scalar in `A`.
    pub fn is_projective_identity(&self, x: &ResidueMatrix) -> bool {
        let z = self.ring.zero();
        let [a, b, c, d] = x.0;
        b == z && c == z && a == d && self.scalars.contains(a)
    }
}

/// Whether `m` meets the construction's hypothesis `norm(m) = 3k` with `k > 1`.
pub fn check_modulus(m: &Eisenstein) -> Result<()> {
    let n = m.norm();
    if n == 0 || n % 3 != 0 || n == 3 {
        return domain(format!("modulus {m} must have norm 3k with k > 1, got norm {n}"));
    }
    Ok(())
}

/// The frozen generators reduced modulo `m`, validated against every rotation
/// relation modulo `±1`.
pub fn find_generators(m: &Eisenstein) -> Result<[ResidueMatrix; 3]> {
    check_modulus(m)?;
    let ctx = MatrixContext::new(*m, &[])?;
    let ints = integral_generators();
    let gens = [ctx.reduce(&ints[0])?, ctx.reduce(&ints[1])?, ctx.reduce(&ints[2])?];
    for (name, word, period) in RELATIONS {
        let prod = word.iter().fold(ctx.identity(), |acc, &i| ctx.mul(&acc, &gens[i]));
        if !ctx.is_projective_identity(&ctx.pow(&prod, period)) {
            return Err(Error::Config(format!("relation {name} fails modulo {m}")));
        }
    }
    Ok(gens)
}

/// A matrix, optionally followed by entrywise conjugation: the map
/// `x -> M conj^k(x)`. Products compose as `(M, a)(N, b) = (M conj^a(N), a + b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveElement {
    pub matrix: ResidueMatrix,
    pub conjugating: bool,
}

impl ProjectiveElement {
    pub fn linear(matrix: ResidueMatrix) -> Self {
        ProjectiveElement { matrix, conjugating: false }
    }
}

impl MatrixContext {
    fn conj_matrix(&self, x: &ResidueMatrix) -> Result<ResidueMatrix> {
        let mut out = [self.ring.zero(); 4];
        for (o, &v) in out.iter_mut().zip(x.0.iter()) {
            *o = self
                .ring
                .conjugate(v)
                .ok_or_else(|| Error::Domain(format!("conjugation is undefined modulo {}", self.ring.modulus())))?;
        }
        Ok(ResidueMatrix(out))
    }

    pub fn mul_elements(&self, x: &ProjectiveElement, y: &ProjectiveElement) -> Result<ProjectiveElement> {
        let right = if x.conjugating { self.conj_matrix(&y.matrix)? } else { y.matrix };
        Ok(ProjectiveElement { matrix: self.mul(&x.matrix, &right), conjugating: x.conjugating ^ y.conjugating })
    }

    pub fn canonical_element(&self, x: &ProjectiveElement) -> ProjectiveElement {
        ProjectiveElement { matrix: self.canonical(&x.matrix), conjugating: x.conjugating }
    }

    /// The reflection `x -> conj(x)`, available for regular instances only.
    pub fn conjugation(&self) -> Result<ProjectiveElement> {
        if regularity_test(self) != Symmetry::Regular {
            return domain(format!("conjugation does not act on the chiral instance modulo {}", self.ring.modulus()));
        }
        Ok(ProjectiveElement { matrix: self.identity(), conjugating: true })
    }
}

/// The finite group generated by some projective elements.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<ProjectiveElement>,
    /// Right multiplication by each generator, as a permutation of `elements`.
    action: PermutationGroup,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Canonical representatives; index 0 is the identity.
    pub fn elements(&self) -> &[ProjectiveElement] {
        &self.elements
    }

    /// The right-regular action, one permutation per generator.
    pub fn permutation_group(&self) -> &PermutationGroup {
        &self.action
    }

    pub fn into_permutation_group(self) -> PermutationGroup {
        self.action
    }

    /// Elements as residue 4-tuples, one per line, with a trailing `c` on
    /// conjugating elements.
    pub fn dump(&self, ctx: &MatrixContext) -> String {
        let mut out = String::new();
        for x in &self.elements {
            let v: Vec<String> = x.matrix.0.iter().map(|&r| ctx.ring().value(r).to_string()).collect();
            out.push_str(&v.join(" "));
            if x.conjugating {
                out.push_str(" c");
            }
            out.push('\n');
        }
        out
    }
}

/// Breadth-first closure of `gens` modulo the scalar group, with its Cayley
/// action.
pub fn generate_group(ctx: &MatrixContext, gens: &[ProjectiveElement], max_elements: usize) -> Result<MatrixGroup> {
    let id = ctx.canonical_element(&ProjectiveElement::linear(ctx.identity()));
    let mut elements = vec![id];
    let mut index: HashMap<ProjectiveElement, u32> = HashMap::from([(id, 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        head += 1;
        for (g, img) in gens.iter().zip(images.iter_mut()) {
            let y = ctx.canonical_element(&ctx.mul_elements(&x, g)?);
            let next = index.len() as u32;
            let k = *index.entry(y).or_insert_with(|| {
                elements.push(y);
                next
            });
            if elements.len() > max_elements {
                return Err(Error::Overflow(format!(
                    "more than {max_elements} elements modulo {}",
                    ctx.ring().modulus()
                )));
            }
            img.push(k);
        }
    }
    let n = elements.len();
    let perms: Vec<Permutation> = images.into_iter().map(Permutation::from_images_unchecked).collect();
    let action = PermutationGroup::with_order(n, perms, n as u128)?;
    Ok(MatrixGroup { elements, action })
}

/// `<s1, s2, s3>` modulo `A`: the rotation group.
pub fn rotation_group(ctx: &MatrixContext, max_elements: usize) -> Result<MatrixGroup> {
    let gens = find_generators(&ctx.ring().modulus())?.map(ProjectiveElement::linear);
    generate_group(ctx, &gens, max_elements)
}

/// The four reflections `r0..r3` of a regular instance, with `r3` the
/// conjugation and `s1 = r0 r1`, `s2 = r1 r2`, `s3 = r2 r3`.
pub fn reflections(ctx: &MatrixContext) -> Result<[ProjectiveElement; 4]> {
    let [s1, s2, s3] = find_generators(&ctx.ring().modulus())?.map(ProjectiveElement::linear);
    let r3 = ctx.conjugation()?;
    let r2 = ctx.mul_elements(&s3, &r3)?;
    let r1 = ctx.mul_elements(&s2, &r2)?;
    let r0 = ctx.mul_elements(&s1, &r1)?;
    Ok([r0, r1, r2, r3])
}

/// `<r0, r1, r2, r3>` modulo `A`: the full group of a regular instance.
pub fn reflection_group(ctx: &MatrixContext, max_elements: usize) -> Result<MatrixGroup> {
    generate_group(ctx, &reflections(ctx)?, max_elements)
}

/// Whether the polytope from `(m, A)` is regular or chiral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Regular,
    Chiral,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Regular => "regular",
            Symmetry::Chiral => "chiral",
        })
    }
}

/// Regular iff `m` divides its conjugate and `A` is conjugation invariant.
pub fn regularity_test(ctx: &MatrixContext) -> Symmetry {
    match ctx.scalars().is_conjugation_invariant(ctx.ring()) {
        Some(true) => Symmetry::Regular,
        _ => Symmetry::Chiral,
    }
}
