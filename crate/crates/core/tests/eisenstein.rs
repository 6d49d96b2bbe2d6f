use medial::eisenstein::{admissible_subgroups, factor, unit_group, vertex_count, ResidueRing};
use medial::Eisenstein;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Eisenstein> {
    (-40i64..=40, -40i64..=40).prop_map(|(a, b)| Eisenstein::new(a, b))
}

fn moduli(max_norm: i64) -> Vec<Eisenstein> {
    let mut out = Vec::new();
    for a in 0..=20i64 {
        for b in -20..=20i64 {
            let m = Eisenstein::new(a, b);
            if m.norm() >= 2 && m.norm() <= max_norm && m.canonical_associate() == m {
                out.push(m);
            }
        }
    }
    out
}

fn is_rational_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Euler's phi over `Z[w]`, computed by trial division on norms.
fn phi(m: Eisenstein) -> usize {
    let f = factor(&m).unwrap();
    f.parts.iter().map(|(pi, e)| (pi.norm() as usize).pow(e - 1) * (pi.norm() as usize - 1)).product()
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in small(), y in small()) {
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        prop_assert_eq!((x * x.conj()).norm(), x.norm() * x.norm());
        prop_assert_eq!(x * x.conj(), Eisenstein::from_int(x.norm()));
    }

    #[test]
    fn ring_axioms(x in small(), y in small(), z in small()) {
        prop_assert_eq!((x + y) * z, x * z + y * z);
        prop_assert_eq!((x * y) * z, x * (y * z));
        let w = Eisenstein::omega();
        prop_assert_eq!(w * w + w + Eisenstein::one(), Eisenstein::zero());
    }

    #[test]
    fn factorization_recomposes(x in small()) {
        prop_assume!(!x.is_zero());
        let f = factor(&x).unwrap();
        prop_assert_eq!(f.product(), x);
        prop_assert!(f.unit.is_unit());
        for (pi, _) in &f.parts {
            let n = pi.norm();
            let split_or_ramified = is_rational_prime(n);
            let inert = (2..=n).find(|p| p * p == n).is_some_and(|p| is_rational_prime(p) && p % 3 == 2);
            prop_assert!(split_or_ramified || inert, "{} has norm {}", pi, n);
            prop_assert_eq!(pi.canonical_associate(), *pi);
        }
    }

    #[test]
    fn remainder_is_congruent_and_small(x in small(), m in small()) {
        prop_assume!(!m.is_zero());
        let r = x.rem_min(&m);
        prop_assert!(m.divides(&(x - r)));
        prop_assert!(4 * r.norm() <= 3 * m.norm());
    }

    #[test]
    fn display_parses_back(x in small()) {
        let back: Eisenstein = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn residue_ring_matches_brute_force() {
    for m in moduli(200) {
        let ring = ResidueRing::new(m).unwrap();
        assert_eq!(ring.len() as i64, m.norm(), "modulus {m}");
        // units by exhaustive search for an inverse
        let units = ring.elements().filter(|&x| ring.elements().any(|y| ring.mul(x, y) == ring.one())).count();
        assert_eq!(units, unit_group(&ring).len(), "modulus {m}");
        assert_eq!(units, phi(m), "modulus {m}");
    }
}

#[test]
fn residue_operations_agree_with_integers() {
    let m: Eisenstein = "4+5w".parse().unwrap();
    let ring = ResidueRing::new(m).unwrap();
    for x in ring.elements().step_by(7) {
        for y in ring.elements().step_by(5) {
            let (a, b) = (ring.value(x), ring.value(y));
            assert_eq!(ring.mul(x, y), ring.reduce(a * b));
            assert_eq!(ring.add(x, y), ring.reduce(a + b));
            assert!(m.divides(&(ring.value(ring.mul(x, y)) - a * b)));
        }
    }
}

#[test]
fn vertex_counts_are_integral_for_admissible_groups() {
    let mut checked = 0;
    for m in moduli(300).into_iter().filter(|m| m.norm() % 3 == 0 && m.norm() > 3) {
        let ring = ResidueRing::new(m).unwrap();
        for a in admissible_subgroups(&ring) {
            let n = vertex_count(&m, &a).unwrap();
            assert!(n > 0);
            assert_eq!(a.order() % 2, 0, "-1 lies in every admissible group");
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn known_vertex_counts() {
    for (m, n) in [("3", 54), ("2-2w", 120), ("3-3w", 1458)] {
        let m: Eisenstein = m.parse().unwrap();
        let ring = ResidueRing::new(m).unwrap();
        let a = medial::eisenstein::scalar_subgroup(&ring, &[]).unwrap();
        assert_eq!(vertex_count(&m, &a).unwrap(), n);
    }
}
