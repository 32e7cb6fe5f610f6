mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trizig::cyclic::{least_rotated, rotated};
use trizig::eulerian::{extract_directed_embedding, round_trip_check, triangulate_embedding, DirectedEmbedding};
use trizig::generators::{bipyramid, platonic, Platonic};
use trizig::surgery::{are_concordant, find_special_pairs};
use trizig::triangulation::Triangulation;
use trizig::tree::{tree_build, TreeSpec};
use trizig::zigzag::{
    classify, enumerate_zigzags, make_z_orientation, zigzag_predecessor, zigzag_successor, Type, ZOrientation,
};

fn instance(kind: u8, n: usize) -> Triangulation {
    match kind {
        0 => platonic(Platonic::Tetrahedron).unwrap(),
        1 => platonic(Platonic::Octahedron).unwrap(),
        2 => platonic(Platonic::Icosahedron).unwrap(),
        _ => bipyramid(n).unwrap(),
    }
}

fn orientation(t: &Triangulation, seed: u64) -> ZOrientation {
    let k = enumerate_zigzags(t).unwrap().len();
    let bits: Vec<bool> = (0..k).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
    make_z_orientation(t, &bits).unwrap()
}

fn small_tree(seed: u64) -> TreeSpec {
    common::random_tree(&mut ChaCha8Rng::seed_from_u64(seed), 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_counts(kind in 0u8..6, n in 3usize..=16) {
        let t = instance(kind, n);
        prop_assert_eq!(3 * t.face_count(), 2 * t.edge_count());
        prop_assert_eq!(t.euler_characteristic(), 2);
        for &e in t.edges() {
            prop_assert_eq!(t.faces_of_edge(e).len(), 2);
        }
        for v in 0..t.vertex_count() {
            let link = t.link_indices(v).unwrap();
            prop_assert_eq!(link.len(), t.degree(v));
            prop_assert_eq!(link.len(), t.faces_at(v).len());
        }
        for (i, &a) in t.edges().iter().enumerate() {
            for &b in &t.edges()[i + 1..] {
                let shared = t.faces_of_edge(a).iter().filter(|f| t.faces_of_edge(b).contains(f)).count();
                prop_assert!(shared <= 1);
            }
        }
    }

    #[test]
    fn tri_round_trip(kind in 0u8..6, n in 3usize..=16, shift in 0usize..3) {
        let t = instance(kind, n);
        let text: String = t
            .to_tri()
            .lines()
            .map(|l| {
                let vs: Vec<&str> = l.split_whitespace().skip(1).collect();
                let r = rotated(&vs, shift);
                format!("f {} {} {}\n", r[0], r[1], r[2])
            })
            .collect();
        let back = Triangulation::parse(&text).unwrap();
        prop_assert_eq!(back.face_set(), t.face_set());
        prop_assert_eq!(Triangulation::parse(&back.to_tri()).unwrap().face_set(), t.face_set());
    }

    #[test]
    fn successor_and_predecessor_are_inverse(kind in 0u8..6, n in 3usize..=12) {
        let t = instance(kind, n);
        for z in enumerate_zigzags(&t).unwrap() {
            for s in z.states() {
                let next = zigzag_successor(&t, s).unwrap();
                prop_assert_eq!(zigzag_predecessor(&t, next).unwrap(), s);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_rotation_and_direction(kind in 0u8..6, n in 3usize..=12, r in 0usize..64) {
        let t = instance(kind, n);
        for z in enumerate_zigzags(&t).unwrap() {
            let turned = z.rotated_to(r % z.len());
            prop_assert_eq!(turned.canonical(), z.canonical());
            prop_assert_eq!(turned.reversed().canonical(), z.canonical());
            prop_assert!(z.is_zigzag_of(&t));
        }
    }

    #[test]
    fn least_rotation_is_minimal(v in proptest::collection::vec(0u8..4, 1..20)) {
        let best = least_rotated(&v);
        for i in 0..v.len() {
            prop_assert!(best <= rotated(&v, i));
        }
    }

    #[test]
    fn double_cover_balance_and_face_dichotomy(kind in 0u8..6, n in 3usize..=14, seed in any::<u64>()) {
        let t = instance(kind, n);
        let tau = orientation(&t, seed);
        let mut passes = vec![0; t.edge_count()];
        for z in tau.zigzags() {
            prop_assert!(z.reversed().normalized() != z.normalized());
            for e in z.edges() {
                passes[t.edge_index(e).unwrap()] += 1;
            }
        }
        prop_assert!(passes.iter().all(|&k| k == 2));
        let c = classify(&t, &tau).unwrap();
        for v in 0..t.vertex_count() {
            let (i, o) = c.balance(v);
            prop_assert_eq!(i, o);
        }
        prop_assert_eq!(c.count_faces(Type::I) + c.count_faces(Type::II), t.face_count());
        // type I: two type I edges; type II: none, and the edges form a directed cycle
        for (fi, f) in t.faces().iter().enumerate() {
            let ones = f.edges().iter().filter(|&&e| c.edge_type(&t, e) == Some(Type::I)).count();
            if c.face_types[fi] == Type::II {
                prop_assert_eq!(ones, 0);
                let dirs: Vec<_> = f.edges().iter().map(|&e| c.direction(&t, e).unwrap()).collect();
                for d in &dirs {
                    prop_assert_eq!(dirs.iter().filter(|x| x.from == d.to).count(), 1);
                }
            } else {
                prop_assert_eq!(ones, 2);
            }
        }
    }

    #[test]
    fn classification_is_reversal_stable(kind in 0u8..6, n in 3usize..=14, seed in any::<u64>()) {
        let t = instance(kind, n);
        let tau = orientation(&t, seed);
        let c = classify(&t, &tau).unwrap();
        let r = classify(&t, &tau.reversed()).unwrap();
        prop_assert_eq!(&c.vertex_types, &r.vertex_types);
        prop_assert_eq!(&c.face_types, &r.face_types);
        for &e in t.edges() {
            prop_assert_eq!(c.edge_type(&t, e), r.edge_type(&t, e));
            prop_assert_eq!(c.direction(&t, e).map(|p| p.reversed()), r.direction(&t, e));
        }
    }

    #[test]
    fn special_pairs_are_reversal_stable(k in 1usize..=6, tree in any::<bool>(), seed in any::<u64>()) {
        let (t, tau) = if tree {
            let (t, tau, _) = tree_build(&small_tree(seed)).unwrap();
            (t, tau)
        } else {
            let t = bipyramid(2 * k + 1).unwrap();
            let tau = orientation(&t, seed);
            (t, tau)
        };
        let pairs = find_special_pairs(&t, &tau).unwrap();
        prop_assert_eq!(&pairs, &find_special_pairs(&t, &tau.reversed()).unwrap());
        for p in &pairs {
            for q in &pairs {
                if !p.shares_edge(q) {
                    prop_assert_eq!(
                        are_concordant(&t, &tau, p, q).unwrap(),
                        are_concordant(&t, &tau, q, p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn odd_bipyramid_base_pairs_are_special(k in 1usize..=6) {
        let n = 2 * k + 1;
        let t = bipyramid(n).unwrap();
        let tau = orientation(&t, 0);
        prop_assert_eq!(find_special_pairs(&t, &tau).unwrap().len(), n);
    }

    #[test]
    fn embedding_round_trip(n in 3usize..=14, seed in any::<u64>()) {
        let t = bipyramid(n).unwrap();
        let tau = orientation(&t, seed);
        if trizig::zigzag::is_homogeneous(&t, &tau).unwrap() {
            prop_assert!(round_trip_check(&t, &tau));
            let d = extract_directed_embedding(&t, &tau).unwrap();
            prop_assert_eq!(&DirectedEmbedding::parse(&d.to_eul()).unwrap(), &d);
            let (t2, _) = triangulate_embedding(&d).unwrap();
            prop_assert_eq!(t2.face_set(), t.face_set());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tree_builds_are_sound_and_deterministic(seed in any::<u64>()) {
        let spec = small_tree(seed);
        let (t, tau, log) = tree_build(&spec).unwrap();
        let (t2, tau2, _) = tree_build(&spec).unwrap();
        prop_assert_eq!(t.face_set(), t2.face_set());
        prop_assert_eq!(tau.bits(), tau2.bits());
        prop_assert_eq!(log.steps.len() + 1, spec.labels.len());
        let labels: BTreeMap<_, _> = spec.labels.clone();
        let expected_vertices = labels.values().map(|&l| l + 2).sum::<usize>() - 2 * log.steps.len();
        prop_assert_eq!(t.vertex_count(), expected_vertices);
        prop_assert_eq!(enumerate_zigzags(&t).unwrap().len(), 1);
        prop_assert!(trizig::zigzag::is_homogeneous(&t, &tau).unwrap());
        prop_assert_eq!(classify(&t, &tau).unwrap().count_vertices(Type::I), 2 * spec.labels.len());
        prop_assert!(round_trip_check(&t, &tau));
    }

    #[test]
    fn tree_spec_text_round_trip(seed in any::<u64>()) {
        let spec = small_tree(seed);
        prop_assert_eq!(TreeSpec::parse(&spec.to_tree()).unwrap(), spec);
    }
}
