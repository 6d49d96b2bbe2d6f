use std::collections::HashSet;

use medial::catalog::{coxeter_string, toroidal_map, MapFamily, ToroidalParams};
use medial::fpgroup::{coset_enumeration, permutation_representation, subgroup_order, Presentation, TableStatus};
use medial::permgroup::{Permutation, PermutationGroup};
use proptest::prelude::*;

fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
    let n = gens[0].degree();
    let mut seen = HashSet::from([Permutation::identity(n)]);
    let mut queue = vec![Permutation::identity(n)];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn generators() -> impl Strategy<Value = Vec<Permutation>> {
    (3usize..=7).prop_flat_map(|n| prop::collection::vec(perm(n), 1..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_closure(gens in generators()) {
        let elements = closure(&gens);
        let g = PermutationGroup::new(gens[0].degree(), gens.clone()).unwrap();
        prop_assert_eq!(g.order(), elements.len() as u128);
        for x in elements.iter().take(50) {
            prop_assert!(g.is_member(x));
        }
    }

    #[test]
    fn membership_rejects_outsiders(gens in generators(), x in perm(7)) {
        prop_assume!(gens[0].degree() == 7);
        let elements = closure(&gens);
        let g = PermutationGroup::new(7, gens).unwrap();
        prop_assert_eq!(g.is_member(&x), elements.contains(&x));
    }

    #[test]
    fn orbit_stabilizer(gens in generators()) {
        let g = PermutationGroup::new(gens[0].degree(), gens).unwrap();
        let stab = g.pointwise_stabilizer(&[0]);
        prop_assert_eq!(g.order(), g.orbit(0).len() as u128 * stab.order());
        prop_assert!(stab.generators().iter().all(|s| s.apply(0) == 0));
    }

    #[test]
    fn known_order_agrees(gens in generators()) {
        let n = gens[0].degree();
        let order = closure(&gens).len() as u128;
        let g = PermutationGroup::with_order(n, gens, order).unwrap();
        prop_assert_eq!(g.order(), order);
    }

    #[test]
    fn inverse_and_powers(x in perm(9), e in -5i64..=5) {
        prop_assert!(x.then(&x.inverse()).is_identity());
        prop_assert_eq!(x.pow(e).then(&x.pow(-e)), Permutation::identity(9));
        prop_assert!(x.pow(x.order() as i64).is_identity());
        prop_assert_eq!(Permutation::parse_one_line(&x.one_line()).unwrap(), x);
    }

    #[test]
    fn word_format_round_trip(letters in prop::collection::vec((0usize..3, prop::bool::ANY), 0..12)) {
        let p = Presentation::parse("gens: r0 r1 r2; rels: r0^2").unwrap();
        let word = medial::fpgroup::Word(
            letters.iter().map(|&(g, inv)| {
                let l = medial::fpgroup::Letter::new(g);
                if inv { l.inv() } else { l }
            }).collect(),
        );
        let back = p.parse_word(&p.format_word(&word)).unwrap();
        prop_assert_eq!(back.inverse().inverse(), word.clone());
        prop_assert_eq!(back, word);
    }
}

#[test]
fn symmetric_group_on_three_letters() {
    let p = Presentation::parse("gens: a b; rels: a^2, b^2, (ab)^3").unwrap();
    let t = coset_enumeration(&p, &[], 1000).unwrap();
    assert_eq!(t.index(), 6);
    let a = p.parse_word("a").unwrap();
    let half = coset_enumeration(&p, &[a], 1000).unwrap();
    assert_eq!(half.index(), 3);
    assert_eq!(subgroup_order(&half, 6).unwrap(), 2);
    let rep = permutation_representation(&half).unwrap();
    assert_eq!(rep.order(), 6);
}

#[test]
fn simplex_group() {
    let p = coxeter_string(3, 3, 3).unwrap();
    let t = coset_enumeration(&p, &[], 10_000).unwrap();
    assert_eq!(t.index(), 120);
    assert_eq!(permutation_representation(&t).unwrap().order(), 120);
    let facet = ["r0", "r1", "r2"].map(|g| p.parse_word(g).unwrap());
    assert_eq!(coset_enumeration(&p, &facet, 10_000).unwrap().index(), 5);
}

#[test]
fn toroidal_map_groups() {
    for (s, t) in [(1, 1), (2, 0), (3, 0), (2, 2), (4, 0), (0, 3)] {
        for family in [MapFamily::Triangular, MapFamily::Hexagonal] {
            let params = ToroidalParams::new(s, t, family).unwrap();
            let p = toroidal_map(&params).unwrap();
            let full = coset_enumeration(&p, &[], 100_000).unwrap();
            assert!(full.is_complete());
            assert_eq!(full.index() as u64, params.group_order(), "{params}");
            // vertices, edges and faces are cosets of the maximal parabolic subgroups
            let counts = [["r1", "r2"], ["r0", "r2"], ["r0", "r1"]].map(|pair| {
                let sub = pair.map(|g| p.parse_word(g).unwrap());
                coset_enumeration(&p, &sub, 100_000).unwrap().index() as u64
            });
            assert_eq!(counts, params.face_counts(), "{params}");
        }
    }
}

#[test]
fn chiral_maps_have_no_reflection_presentation() {
    let params = ToroidalParams::new(2, 1, MapFamily::Triangular).unwrap();
    assert!(!params.is_regular());
    assert!(matches!(toroidal_map(&params), Err(medial::Error::Domain(_))));
}

#[test]
fn coset_limit_is_reported() {
    let p = Presentation::parse("gens: a b; rels: a^2, b^3").unwrap();
    let t = coset_enumeration(&p, &[], 500).unwrap();
    assert!(matches!(t.status(), TableStatus::Overflowed { limit: 500, .. }));
    assert!(permutation_representation(&t).is_err());
}
