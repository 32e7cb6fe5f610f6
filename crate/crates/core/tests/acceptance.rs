//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; the only numeric budget is the wall-clock limit below.

mod common;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force_zigzags, engine_zigzags, face_names, glue_bipyramids, random_tree};
use trizig::eulerian::{face_cycle_embedding, round_trip_check, triangulate_embedding, DirectedEmbedding, DirectedEdge, FaceCycle};
use trizig::generators::{bipyramid, bipyramid_canonical_zorientation, bipyramid_listed_zigzags, bipyramid_oracle_zigzags, platonic, Platonic};
use trizig::triangulation::{Triangulation, VertexId};
use trizig::tree::{tree_build, validate_tree, TreeSpec};
use trizig::zigzag::{all_z_orientations, classify, enumerate_zigzags, is_homogeneous, make_z_orientation, Pass, Type, ZOrientation, Zigzag};

/// Whole-suite wall-clock budget.
const RUNTIME_BUDGET: Duration = Duration::from_secs(30);
/// Number of random tree builds in criteria 4, 7 and 8.
const RANDOM_TREES: u64 = 20;
const MAX_TREE_NODES: usize = 8;
/// Random orientations tried when there are more than four zigzags.
const RANDOM_ORIENTATIONS: usize = 16;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census(n: usize) -> usize {
    if n % 2 == 1 {
        1
    } else if n % 4 == 2 {
        2
    } else {
        4
    }
}

fn criterion_1() -> Outcome {
    let want = [1, 4, 1, 2, 1, 4, 1, 2, 1, 4];
    let got: Vec<usize> = (3..=12).map(|n| enumerate_zigzags(&bipyramid(n).unwrap()).unwrap().len()).collect();
    ensure(got == want && (3..=12).all(|n| got[n - 3] == census(n)), || format!("counts {got:?}"))
}

fn criterion_2() -> Outcome {
    for n in 3..=12 {
        let engine = enumerate_zigzags(&bipyramid(n).unwrap()).unwrap();
        ensure(engine == bipyramid_oracle_zigzags(n).unwrap(), || format!("BP_{n} differs from the listed zigzags"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 3..=12 {
        let t = bipyramid(n).unwrap();
        let tau = bipyramid_canonical_zorientation(n).unwrap();
        let c = classify(&t, &tau).unwrap();
        let base_directed = (1..=n).all(|i| {
            let (u, v) = (i.to_string(), (i % n + 1).to_string());
            let e = t.edge_between(&u, &v).unwrap();
            c.direction(&t, e).map(|p| (t.name(p.from).as_str() == u, t.name(p.to).as_str() == v)) == Some((true, true))
        });
        ensure(
            c.count_edges(Type::I) == 2 * n
                && c.count_edges(Type::II) == n
                && base_directed
                && c.count_vertices(Type::I) == 2
                && c.count_faces(Type::I) == 2 * n
                && is_homogeneous(&t, &tau).unwrap(),
            || format!("BP_{n} classification"),
        )?;
    }
    Ok(())
}

fn random_trees() -> Vec<TreeSpec> {
    (0..RANDOM_TREES)
        .map(|seed| random_tree(&mut ChaCha8Rng::seed_from_u64(seed), MAX_TREE_NODES))
        .collect()
}

fn criterion_4(trees: &[(Triangulation, ZOrientation)]) -> Outcome {
    for n in 3..=12 {
        let ok = round_trip_check(&bipyramid(n).unwrap(), &bipyramid_canonical_zorientation(n).unwrap());
        ensure(ok, || format!("BP_{n}"))?;
    }
    for (h, p) in [(3, 4), (3, 6)] {
        let g = glue_bipyramids(h, p);
        ensure(round_trip_check(&g.triangulation, &g.orientation), || format!("G(BP_{h},BP_{p})"))?;
    }
    for (i, (t, tau)) in trees.iter().enumerate() {
        ensure(round_trip_check(t, tau), || format!("random tree {i}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let v = |s: &str| VertexId::new(s).unwrap();
    let arc = |a: &str, b: &str| DirectedEdge { from: v(a), to: v(b) };
    let triangle = DirectedEmbedding::new(
        [],
        vec![arc("1", "2"), arc("2", "3"), arc("3", "1")],
        vec![
            FaceCycle { name: Some("a".into()), arcs: vec![0, 1, 2] },
            FaceCycle { name: Some("b".into()), arcs: vec![0, 1, 2] },
        ],
    );
    let (t, _) = triangulate_embedding(&triangle).map_err(|e| e.to_string())?;
    ensure(t.face_set() == bipyramid(3).unwrap().face_set(), || "triangle does not give BP_3".into())?;

    // the two listed zigzags of BP_6 with the second one reversed
    let bp6 = bipyramid(6).unwrap();
    let listed = bipyramid_listed_zigzags(6).unwrap();
    let to_z = |seq: &[(String, String)]| {
        Zigzag::new(seq.iter().map(|(a, b)| Pass::new(bp6.index_of(a).unwrap(), bp6.index_of(b).unwrap())).collect())
    };
    let tau = ZOrientation::from_zigzags(&bp6, &[to_z(&listed[0]), to_z(&listed[1]).reversed()]).unwrap();
    ensure(classify(&bp6, &tau).unwrap().count_faces(Type::II) == 12, || "BP_6 faces are not all type II".into())?;
    let d = face_cycle_embedding(&bp6, &tau).map_err(|e| e.to_string())?;
    let (t, tau) = triangulate_embedding(&d).map_err(|e| e.to_string())?;
    let counts = (t.vertex_count(), t.edge_count(), t.face_count(), t.euler_characteristic());
    ensure(
        counts == (20, 54, 36, 2) && t.validate().is_valid() && is_homogeneous(&t, &tau).unwrap(),
        || format!("T(BP_6) counts {counts:?}"),
    )
}

fn criterion_6() -> Outcome {
    for (h, p, want) in [(3, 4, (9, 21, 14)), (3, 6, (11, 27, 18))] {
        let g = glue_bipyramids(h, p);
        let t = &g.triangulation;
        let zs = enumerate_zigzags(t).unwrap();
        let c = classify(t, &g.orientation).unwrap();
        ensure(
            (t.vertex_count(), t.edge_count(), t.face_count()) == want
                && t.euler_characteristic() == 2
                && zs.len() == 1
                && is_homogeneous(t, &g.orientation).unwrap()
                && c.count_vertices(Type::I) == 4
                && zs[0] == g.predicted.canonical()
                && zs[0].len() == 2 * want.1,
            || format!("G(BP_{h},BP_{p}): {}", g.report),
        )?;
    }
    Ok(())
}

/// Violations of the structural properties under one orientation.
fn property_violations(t: &Triangulation, tau: &ZOrientation) -> Vec<String> {
    let mut out = Vec::new();
    let mut passes = vec![0usize; t.edge_count()];
    for z in tau.zigzags() {
        for p in z.passes() {
            passes[t.edge_index(p.edge()).unwrap()] += 1;
        }
    }
    if passes.iter().any(|&k| k != 2) {
        out.push("edges not double covered".into());
    }
    let c = match classify(t, tau) {
        Ok(c) => c,
        Err(e) => {
            out.push(format!("face dichotomy: {e}"));
            return out;
        }
    };
    for v in 0..t.vertex_count() {
        let (i, o) = c.balance(v);
        if i != o {
            out.push(format!("vertex {} in {i} out {o}", t.name(v)));
        }
    }
    let r = classify(t, &tau.reversed()).unwrap();
    let flipped = t.edges().iter().all(|&e| {
        c.edge_type(t, e) == r.edge_type(t, e) && c.direction(t, e).map(Pass::reversed) == r.direction(t, e)
    });
    if !flipped || r.vertex_types != c.vertex_types || r.face_types != c.face_types {
        out.push("classification not reversal-stable".into());
    }
    out
}

fn orientations(t: &Triangulation, rng: &mut ChaCha8Rng) -> Vec<ZOrientation> {
    use rand::Rng;
    let k = enumerate_zigzags(t).unwrap().len();
    if k <= 4 {
        all_z_orientations(t).unwrap()
    } else {
        (0..RANDOM_ORIENTATIONS)
            .map(|_| make_z_orientation(t, &(0..k).map(|_| rng.gen()).collect::<Vec<bool>>()).unwrap())
            .collect()
    }
}

fn criterion_7(trees: &[(Triangulation, ZOrientation)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances: Vec<(String, Triangulation)> =
        (3..=12).map(|n| (format!("BP_{n}"), bipyramid(n).unwrap())).collect();
    for s in [Platonic::Tetrahedron, Platonic::Octahedron, Platonic::Icosahedron] {
        instances.push((s.to_string(), platonic(s).unwrap()));
    }
    for (h, p) in [(3, 4), (3, 6)] {
        instances.push((format!("G(BP_{h},BP_{p})"), glue_bipyramids(h, p).triangulation));
    }
    for (i, (t, _)) in trees.iter().enumerate() {
        instances.push((format!("tree {i}"), t.clone()));
    }
    let mut violations = Vec::new();
    for (name, t) in &instances {
        for z in brute_force_zigzags(&face_names(t)) {
            if common::self_reversed(&z) {
                violations.push(format!("{name}: self-reversed zigzag"));
            }
        }
        for tau in orientations(t, &mut rng) {
            violations.extend(property_violations(t, &tau).into_iter().map(|v| format!("{name}: {v}")));
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))
}

fn criterion_8(specs: &[TreeSpec], trees: &[(Triangulation, ZOrientation)]) -> Outcome {
    for (i, (spec, (t, tau))) in specs.iter().zip(trees).enumerate() {
        let c = classify(t, tau).unwrap();
        ensure(
            t.validate().is_valid()
                && t.euler_characteristic() == 2
                && enumerate_zigzags(t).unwrap().len() == 1
                && is_homogeneous(t, tau).unwrap()
                && c.count_vertices(Type::I) == 2 * spec.labels.len(),
            || format!("random tree {i}"),
        )?;
    }
    let root_too_small = TreeSpec::new().node("r", 3).node("x", 4).node("y", 4).edge("r", "x").edge("r", "y");
    let leaf_two = TreeSpec::new().node("r", 5).node("x", 2).edge("r", "x");
    for bad in [root_too_small, leaf_two] {
        ensure(!validate_tree(&bad).is_valid() && tree_build(&bad).is_err(), || "invalid tree accepted".into())?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for (s, k, len) in [(Platonic::Tetrahedron, 3, 4), (Platonic::Octahedron, 4, 6), (Platonic::Icosahedron, 6, 10)] {
        let t = platonic(s).unwrap();
        let oracle = brute_force_zigzags(&face_names(&t));
        ensure(
            oracle.len() == k && oracle.iter().all(|z| z.len() == len) && engine_zigzags(&t) == oracle,
            || format!("{s}: oracle finds {} zigzags", oracle.len()),
        )?;
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let specs = random_trees();
    let trees: Vec<(Triangulation, ZOrientation)> = specs
        .iter()
        .map(|s| {
            let (t, tau, _) = tree_build(s).unwrap_or_else(|e| panic!("tree build failed for\n{}{e}", s.to_tree()));
            (t, tau)
        })
        .collect();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 bipyramid zigzag census", criterion_1()),
        ("2 oracle equality", criterion_2()),
        ("3 canonical classification", criterion_3()),
        ("4 embedding round trip", criterion_4(&trees)),
        ("5 coning embeddings", criterion_5()),
        ("6 gluing", criterion_6()),
        ("7 property suite", criterion_7(&trees)),
        ("8 tree construction", criterion_8(&specs, &trees)),
        ("9 Platonic census", criterion_9()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(()) => println!("PASS criterion {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed <= RUNTIME_BUDGET;
    println!(
        "{} runtime {:.2}s (budget {}s)",
        if in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        RUNTIME_BUDGET.as_secs()
    );
    if failed > 0 || !in_budget {
        std::process::exit(1);
    }
}
