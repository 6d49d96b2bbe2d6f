//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use medial::catalog::{toroidal_map, CatalogKey, MapFamily, ToroidalParams, FINITE_UNIVERSAL};
use medial::eisenstein::{scalar_subgroup, vertex_count, ResidueRing};
use medial::fpgroup::{coset_enumeration, Presentation, DEFAULT_MAX_COSETS};
use medial::graphsym::{
    automorphism_group, base_arc, classify, gray_oracle, is_isomorphic, stabilizer_sequence, symmetric_sign,
    t_arc_count, validate, AutomorphismGroup, BipartiteCubicGraph, SearchLimits, Verdict,
};
use medial::permgroup::{Permutation, PermutationGroup};
use medial::polytope::{build, BuildLimits, Polytope, DEFAULT_MAX_DUALITY_ORDER};
use medial::Eisenstein;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn key(s: &str) -> CatalogKey {
    s.parse().expect("valid key")
}

fn polytope(k: &CatalogKey) -> Result<Polytope, String> {
    build(k, &BuildLimits::default()).map_err(|e| format!("{k}: {e}"))
}

fn analyse(g: &BipartiteCubicGraph, max_vertices: usize) -> Result<(AutomorphismGroup, Verdict), String> {
    let aut =
        automorphism_group(g, SearchLimits::default().with_max_vertices(max_vertices)).map_err(|e| e.to_string())?;
    let c = classify(g, &aut).map_err(|e| e.to_string())?;
    Ok((aut, c.verdict))
}

fn expected_verdict(row: usize) -> Verdict {
    let sym = |t| Verdict::Symmetric { t, sign: medial::graphsym::Sign::Plus };
    let ss = |t1, t2| Verdict::Semisymmetric { t1, t2, ordered: true };
    [sym(3), ss(4, 3), sym(3), ss(3, 3), sym(3), ss(3, 3)][row].clone()
}

fn table_row(row: usize, max_vertices: usize) -> Result<(usize, Verdict), String> {
    let (s, t, _) = FINITE_UNIVERSAL[row];
    let p = polytope(&CatalogKey::universal(s, t).map_err(|e| e.to_string())?)?;
    let g = p.medial_layer_graph().map_err(|e| e.to_string())?;
    let n = g.len();
    match automorphism_group(&g, SearchLimits::default().with_max_vertices(max_vertices)) {
        Ok(aut) => Ok((n, classify(&g, &aut).map_err(|e| e.to_string())?.verdict)),
        Err(medial::Error::Overflow(reason)) => Ok((n, Verdict::Undecided { reason })),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut seen = Vec::new();
    for (row, &(_, _, expected_n)) in FINITE_UNIVERSAL.iter().enumerate().take(5) {
        let (n, v) = table_row(row, medial::graphsym::DEFAULT_MAX_VERTICES)?;
        ensure(n as u64 == expected_n && v == expected_verdict(row), || {
            format!("instance {}: got ({n}, {v}), expected ({expected_n}, {})", row + 1, expected_verdict(row))
        })?;
        seen.push(format!("({n}, {v})"));
    }
    Ok(format!("{} in {:.2?}", seen.join(" "), start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let (n6, v6) = table_row(5, 10_000)?;
    ensure(n6 == 6912 && v6 == expected_verdict(5), || format!("N = 6912: ({n6}, {v6})"))?;
    let t6 = start.elapsed();
    let (n7, v7) = table_row(6, medial::graphsym::DEFAULT_MAX_VERTICES)?;
    ensure(n7 == 40320 && v7.is_undecided(), || format!("N = 40320: ({n7}, {v7})"))?;
    Ok(format!("({n6}, {v6}) in {t6:.2?}; ({n7}, {v7}) under default limits"))
}

fn criterion_3() -> Check {
    let p = polytope(&key("eisenstein:m=3:A="))?;
    let g = p.medial_layer_graph().map_err(|e| e.to_string())?;
    let cube = gray_oracle();
    let w = is_isomorphic(&g, &cube, SearchLimits::default())
        .map_err(|e| e.to_string())?
        .ok_or("no isomorphism to the cube graph")?;
    let images: HashSet<usize> = (0..g.len()).map(|v| w.apply(v)).collect();
    ensure(images.len() == cube.len(), || "witness is not a bijection".into())?;
    ensure((0..g.len()).all(|u| g.neighbors(u).all(|v| cube.graph().has_edge(w.apply(u), w.apply(v)))), || {
        "witness does not preserve edges".into()
    })?;
    let (aut, verdict) = analyse(&cube, 10_000)?;
    ensure(aut.order() == 1296, || format!("|Aut| = {}", aut.order()))?;
    ensure(p.order() == 324, || format!("|H| = {}", p.order()))?;
    ensure(aut.order() / p.order() as u128 == 4 && aut.order() % p.order() as u128 == 0, || "index is not 4".into())?;
    ensure(verdict.is_semisymmetric_pair(4, 3), || format!("cube graph verdict {verdict}"))?;
    Ok(format!("bijection on 54 vertices, |Aut| = 1296, |H| = 324, index 4, {verdict}"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (m, group, aut_order, n) in [("3", 324, 1296, 54), ("2-2w", 720, 720, 120), ("3-3w", 8748, 34992, 1458)] {
        let k = key(&format!("eisenstein:m={m}:A="));
        let p = polytope(&k)?;
        let g = p.medial_layer_graph().map_err(|e| e.to_string())?;
        let modulus: Eisenstein = m.parse().map_err(|e: medial::Error| e.to_string())?;
        let ring = ResidueRing::new(modulus).map_err(|e| e.to_string())?;
        let a = scalar_subgroup(&ring, &[]).map_err(|e| e.to_string())?;
        let formula = vertex_count(&modulus, &a).map_err(|e| e.to_string())?;
        let (aut, _) = analyse(&g, 10_000)?;
        ensure(p.order() == group && aut.order() == aut_order && g.len() == n && formula == n as u64, || {
            format!("m = {m}: |H| = {}, |Aut| = {}, N = {}, formula {formula}", p.order(), aut.order(), g.len())
        })?;
        parts.push(format!("m={m}: |H|={group} |Aut|={aut_order} N={n}"));
    }
    Ok(format!("{} in {:.2?}", parts.join("; "), start.elapsed()))
}

fn criterion_5() -> Check {
    let mut parts = Vec::new();
    for (s, t) in [(1, 1), (2, 0), (3, 0), (2, 2)] {
        let params = ToroidalParams::new(s, t, MapFamily::Triangular).map_err(|e| e.to_string())?;
        let v = (s * s + s * t + t * t) as u64;
        let p = toroidal_map(&params).map_err(|e| e.to_string())?;
        let table = coset_enumeration(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
        ensure(table.is_complete(), || format!("({s},{t}) enumeration incomplete"))?;
        let full = table.index() as u64;
        let even =
            [p.parse_word("r0 r1").map_err(|e| e.to_string())?, p.parse_word("r1 r2").map_err(|e| e.to_string())?];
        let index = coset_enumeration(&p, &even, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?.index() as u64;
        ensure(params.v() == v && params.face_counts() == [v, 3 * v, 2 * v], || format!("({s},{t}) counts"))?;
        ensure(full == 12 * v && index == 2, || format!("({s},{t}): |G| = {full}, rotation index {index}"))?;
        parts.push(format!("({s},{t}): v={v} e={} f={} rot={} full={full}", 3 * v, 2 * v, full / index));
    }
    Ok(parts.join("; "))
}

fn criterion_6() -> Check {
    let mut graphs: Vec<(String, BipartiteCubicGraph)> = Vec::new();
    for row in [0, 2, 4] {
        let (s, t, _) = FINITE_UNIVERSAL[row];
        let p = polytope(&CatalogKey::universal(s, t).map_err(|e| e.to_string())?)?;
        graphs.push((p.source().to_string(), p.medial_layer_graph().map_err(|e| e.to_string())?));
    }
    let k33: Vec<Vec<usize>> = (0..6).map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] }).collect();
    graphs.push(("K33".into(), validate(&k33, None).map_err(|e| e.to_string())?));
    let cube: Vec<Vec<usize>> = (0..8).map(|v| (0..3).map(|b| v ^ (1 << b)).collect()).collect();
    graphs.push(("cube".into(), validate(&cube, None).map_err(|e| e.to_string())?));
    let mut parts = Vec::new();
    for (name, g) in &graphs {
        let (aut, verdict) = analyse(g, 10_000)?;
        let Verdict::Symmetric { t, sign } = verdict else {
            return Err(format!("{name}: verdict {verdict}"));
        };
        let n = g.len() as u128;
        ensure(aut.order() == (3 * n) << (t - 1), || format!("{name}: |Aut| = {}", aut.order()))?;
        let arc = base_arc(g.graph(), 0, t);
        let seq = stabilizer_sequence(g, &aut, &arc).map_err(|e| format!("{name}: {e}"))?;
        let chain = aut.group().chain_with_base(arc.vertices());
        ensure(chain.stabilizer_order(t + 1) == 1, || format!("{name}: base arc stabilizer not trivial"))?;
        for r in 1..=t + 1 {
            let orbit = aut.order() / chain.stabilizer_order(r + 1);
            let arcs = t_arc_count(g, None, r) as u128;
            ensure((r <= t) == (orbit == arcs), || format!("{name}: {r}-arc orbit {orbit} of {arcs}"))?;
        }
        let again = symmetric_sign(g, &aut, t).map_err(|e| format!("{name}: {e}"))?;
        ensure(again == sign, || format!("{name}: sign changed"))?;
        parts.push(format!("{name}: {verdict} {seq:?}"));
    }
    Ok(parts.join("; "))
}

fn criterion_7() -> Check {
    let mut keys: Vec<(CatalogKey, usize)> = [1usize, 3, 5, 6]
        .iter()
        .map(|&r| (CatalogKey::universal(FINITE_UNIVERSAL[r].0, FINITE_UNIVERSAL[r].1).expect("valid"), 100_000))
        .collect();
    for m in ["3", "2-2w", "3-3w", "(1-w)*(1+3w)"] {
        keys.push((key(&format!("eisenstein:m={m}:A=")), 10_000));
    }
    let mut parts = Vec::new();
    for (k, cap) in keys {
        let p = polytope(&k)?;
        match p.is_self_dual(DEFAULT_MAX_DUALITY_ORDER) {
            Ok(true) => return Err(format!("{k} is self-dual")),
            Ok(false) | Err(medial::Error::Overflow(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
        let g = p.medial_layer_graph().map_err(|e| e.to_string())?;
        let aut = automorphism_group(&g, SearchLimits::default().with_max_vertices(cap)).map_err(|e| e.to_string())?;
        let orbits = aut.group().orbits().len();
        ensure(orbits == 2, || format!("{k}: {orbits} vertex orbits"))?;
        parts.push(format!("{k}: N={}", g.len()));
    }
    Ok(format!("2 vertex orbits for {}", parts.join(", ")))
}

fn closure_order(gens: &[Permutation]) -> usize {
    let n = gens[0].degree();
    let mut seen: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    let mut queue = vec![Permutation::identity(n)];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn criterion_8() -> Check {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 40 {
        let degree = rng.gen_range(3..=8);
        let gens: Vec<Permutation> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut images: Vec<usize> = (0..degree).collect();
                for i in (1..degree).rev() {
                    images.swap(i, rng.gen_range(0..=i));
                }
                Permutation::from_images(images).expect("shuffle is a permutation")
            })
            .collect();
        let naive = closure_order(&gens);
        if naive > 5000 {
            continue;
        }
        let group = PermutationGroup::new(degree, gens).map_err(|e| e.to_string())?;
        ensure(group.order() == naive as u128, || format!("order {} vs closure {naive}", group.order()))?;
        checked += 1;
    }
    let s3 = Presentation::parse("gens: a b; rels: a^2, b^2, (a b)^3").map_err(|e| e.to_string())?;
    let simplex = medial::catalog::coxeter_string(3, 3, 3).map_err(|e| e.to_string())?;
    for (p, order) in [(s3, 6), (simplex, 120)] {
        let t = coset_enumeration(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
        ensure(t.is_complete() && t.index() == order, || format!("{p}: {} cosets, expected {order}", t.index()))?;
    }
    for (s, t) in [(1, 1), (2, 0), (3, 0), (2, 2), (4, 0)] {
        let params = ToroidalParams::new(s, t, MapFamily::Triangular).map_err(|e| e.to_string())?;
        let table = coset_enumeration(&toroidal_map(&params).map_err(|e| e.to_string())?, &[], DEFAULT_MAX_COSETS)
            .map_err(|e| e.to_string())?;
        ensure(table.is_complete() && table.index() as u64 == 12 * params.v(), || format!("toroidal ({s},{t})"))?;
    }
    let mut rings = 0;
    for a in 0..8i64 {
        for b in 0..8i64 {
            let m = Eisenstein::new(a, b);
            if m.norm() < 2 || m.norm() > 60 {
                continue;
            }
            let ring = ResidueRing::new(m).map_err(|e| e.to_string())?;
            ensure(ring.len() == brute_force_classes(m), || format!("ring modulo {m} has {} classes", ring.len()))?;
            rings += 1;
        }
    }
    Ok(format!("{checked} random groups vs closure, S3/simplex/toroidal enumerations, {rings} residue rings"))
}

/// Counts classes of `Z[w]/m` by greedy representative search in a box.
fn brute_force_classes(m: Eisenstein) -> usize {
    let n = m.norm();
    let mut reps: Vec<Eisenstein> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let x = Eisenstein::new(a, b);
            if !reps.iter().any(|&r| m.divides(&(x - r))) {
                reps.push(x);
            }
        }
    }
    reps.len()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("small universal instances", criterion_1),
        ("6912-vertex instance, undecided 40320-vertex instance", criterion_2),
        ("m = 3 graph against the cubelet/column graph", criterion_3),
        ("Eisenstein orders and vertex counts", criterion_4),
        ("toroidal counts", criterion_5),
        ("arc-transitivity structure of symmetric verdicts", criterion_6),
        ("non-self-dual instances have 2 vertex orbits", criterion_7),
        ("oracle equivalences", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
