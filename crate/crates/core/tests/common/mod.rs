//! Helpers shared by the integration test targets, including a brute-force
//! zigzag walker that works on name triples and shares no code with the
//! library engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use trizig::generators::{bipyramid, bipyramid_canonical_zorientation};
use trizig::surgery::{check_compatibility, glue, resolve_host_site, resolve_site, GlueOutcome, Operand, SpecialPair};
use trizig::tree::TreeSpec;
use trizig::triangulation::Triangulation;
use trizig::zigzag::{ZOrientation, Zigzag};

pub type NamedPass = (String, String);

/// Walker state: the pass `x -> y` and the face on which the walk turns next.
type State = (String, String, [String; 3]);

fn sorted(mut f: [String; 3]) -> [String; 3] {
    f.sort();
    f
}

fn third(f: &[String; 3], a: &str, b: &str) -> String {
    f.iter().find(|v| *v != a && *v != b).unwrap().clone()
}

/// Every zigzag of the face list, each as a named pass sequence in the
/// brute-force canonical form of [`canonical`], sorted and deduplicated over
/// reversal. Panics if some zigzag is its own reversal.
pub fn brute_force_zigzags(faces: &[[String; 3]]) -> Vec<Vec<NamedPass>> {
    let faces: Vec<[String; 3]> = faces.iter().cloned().map(sorted).collect();
    let mut by_edge: BTreeMap<(String, String), Vec<[String; 3]>> = BTreeMap::new();
    for f in &faces {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            by_edge.entry((f[i].clone(), f[j].clone())).or_default().push(f.clone());
        }
    }
    let other_face = |a: &str, b: &str, f: &[String; 3]| -> [String; 3] {
        let key = if a < b { (a.to_owned(), b.to_owned()) } else { (b.to_owned(), a.to_owned()) };
        let fs = &by_edge[&key];
        assert_eq!(fs.len(), 2, "edge {a}{b} is not in exactly two faces");
        fs.iter().find(|g| *g != f).unwrap().clone()
    };

    let mut states: BTreeSet<State> = BTreeSet::new();
    for f in &faces {
        for a in f {
            for b in f {
                if a != b {
                    states.insert((a.clone(), b.clone(), f.clone()));
                }
            }
        }
    }
    let mut seen: BTreeSet<State> = BTreeSet::new();
    let mut out: BTreeSet<Vec<NamedPass>> = BTreeSet::new();
    for start in &states {
        if seen.contains(start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut s = start.clone();
        loop {
            seen.insert(s.clone());
            let (x, y, f) = s.clone();
            walk.push((x, y.clone()));
            let z = third(&f, &walk.last().unwrap().0, &y);
            let g = other_face(&y, &z, &f);
            s = (y, z, g);
            if &s == start {
                break;
            }
            assert!(walk.len() <= states.len(), "walk does not close");
        }
        assert!(!self_reversed(&walk), "zigzag equals its own reversal");
        let c = canonical(&walk);
        out.insert(c);
    }
    out.into_iter().collect()
}

pub fn reverse(w: &[NamedPass]) -> Vec<NamedPass> {
    w.iter().rev().map(|(a, b)| (b.clone(), a.clone())).collect()
}

fn canonical_one_way(w: &[NamedPass]) -> Vec<NamedPass> {
    (0..w.len())
        .map(|i| w[i..].iter().chain(&w[..i]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Least rotation over both directions, comparing passes as name pairs.
pub fn canonical(w: &[NamedPass]) -> Vec<NamedPass> {
    canonical_one_way(w).min(canonical_one_way(&reverse(w)))
}

/// Whether the walk equals its own reversal up to rotation.
pub fn self_reversed(w: &[NamedPass]) -> bool {
    canonical_one_way(w) == canonical_one_way(&reverse(w))
}

pub fn face_names(t: &Triangulation) -> Vec<[String; 3]> {
    t.face_set().into_iter().map(|f| f.map(|v| v.to_string())).collect()
}

pub fn named(t: &Triangulation, z: &Zigzag) -> Vec<NamedPass> {
    z.to_names(t).into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// Engine zigzags re-canonicalized by the brute-force rule.
pub fn engine_zigzags(t: &Triangulation) -> Vec<Vec<NamedPass>> {
    let mut out: Vec<Vec<NamedPass>> = trizig::zigzag::enumerate_zigzags(t)
        .unwrap()
        .iter()
        .map(|z| canonical(&named(t, z)))
        .collect();
    out.sort();
    out
}

/// `BP_n` with the listed orientation, names prefixed.
pub fn bp(n: usize, prefix: &str) -> (Triangulation, ZOrientation) {
    let t = bipyramid(n).unwrap().prefixed(prefix).unwrap();
    let tau = ZOrientation::from_zigzags(&t, bipyramid_canonical_zorientation(n).unwrap().zigzags()).unwrap();
    (t, tau)
}

/// `G(BP_h, BP_p)` at base pairs `1,2,3`, roles fixed by the host pattern and
/// by matching directions.
pub fn glue_bipyramids(h: usize, p: usize) -> GlueOutcome {
    let (ht, htau) = bp(h, "L.");
    let (pt, ptau) = bp(p, "R.");
    let hs = resolve_host_site(&ht, &htau, &SpecialPair::from_names(&ht, "L.1", "L.2", "L.3").unwrap()).unwrap();
    let fwd = SpecialPair::from_names(&pt, "R.1", "R.2", "R.3").unwrap();
    let mut ps = resolve_site(&pt, &ptau, &fwd).unwrap();
    if !check_compatibility(&hs, &ps) {
        ps = resolve_site(&pt, &ptau, &fwd.swapped()).unwrap();
    }
    glue(
        Operand { t: &ht, tau: &htau, site: &hs },
        Operand { t: &pt, tau: &ptau, site: &ps },
    )
    .unwrap()
}

/// A random valid tree: at most `max_nodes` nodes, labels at most 14, root
/// degree at most 6.
pub fn random_tree(rng: &mut ChaCha8Rng, max_nodes: usize) -> TreeSpec {
    loop {
        let n = rng.gen_range(1..=max_nodes);
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        let degree = |v: usize| edges.iter().filter(|(a, b)| *a == v || *b == v).count();
        let candidates: Vec<usize> = (0..n).filter(|&v| degree(v) <= 6).collect();
        let Some(&root) = candidates.choose(rng) else { continue };
        let mut spec = TreeSpec::new();
        for v in 0..n {
            let d = degree(v);
            let label = if v == root {
                2 * rng.gen_range(d.max(1)..=6) + 1
            } else if d <= 1 {
                2 * rng.gen_range(2..=7)
            } else {
                2 * rng.gen_range(d.max(2)..=7)
            };
            spec = spec.node(v.to_string(), label);
        }
        for (a, b) in edges {
            spec = spec.edge(a.to_string(), b.to_string());
        }
        return spec;
    }
}
