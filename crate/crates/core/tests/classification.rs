use trizig::eulerian::extract_directed_embedding;
use trizig::generators::{bipyramid, bipyramid_canonical_zorientation, bipyramid_listed_zigzags};
use trizig::triangulation::Triangulation;
use trizig::zigzag::{classify, is_homogeneous, make_z_orientation, parse_bits, Pass, Type, ZOrientation, Zigzag};

fn listed(t: &Triangulation, n: usize) -> Vec<Zigzag> {
    bipyramid_listed_zigzags(n)
        .unwrap()
        .iter()
        .map(|z| Zigzag::new(z.iter().map(|(a, b)| Pass::new(t.index_of(a).unwrap(), t.index_of(b).unwrap())).collect()))
        .collect()
}

/// Orientation from the listed zigzags, reversing those marked.
fn from_listed(t: &Triangulation, n: usize, reverse: &[bool]) -> ZOrientation {
    let zs: Vec<Zigzag> = listed(t, n)
        .into_iter()
        .zip(reverse)
        .map(|(z, &r)| if r { z.reversed() } else { z })
        .collect();
    ZOrientation::from_zigzags(t, &zs).unwrap()
}

fn face_counts(t: &Triangulation, tau: &ZOrientation) -> (usize, usize) {
    let c = classify(t, tau).unwrap();
    (c.count_faces(Type::I), c.count_faces(Type::II))
}

#[test]
fn bp4_listed_orientations() {
    let t = bipyramid(4).unwrap();
    let all_one = from_listed(&t, 4, &[false; 4]);
    assert_eq!(face_counts(&t, &all_one), (8, 0));
    let two_reversed = from_listed(&t, 4, &[false, false, true, true]);
    assert_eq!(face_counts(&t, &two_reversed), (0, 8));
    let mixed = from_listed(&t, 4, &[false, false, false, true]);
    let (one, two) = face_counts(&t, &mixed);
    assert!(one > 0 && two > 0);
}

#[test]
fn bp4_canonical_bits() {
    let t = bipyramid(4).unwrap();
    let tau = |b: &str| make_z_orientation(&t, &parse_bits(b).unwrap()).unwrap();
    assert_eq!(face_counts(&t, &tau("0000")), (0, 8));
    assert_eq!(tau("0011"), from_listed(&t, 4, &[false; 4]));
    for b in ["0011", "0101", "1100"] {
        assert_eq!(face_counts(&t, &tau(b)), (8, 0), "{b}");
        assert!(is_homogeneous(&t, &tau(b)).unwrap(), "{b}");
    }
    assert!(!is_homogeneous(&t, &tau("0000")).unwrap());

    // base edges directed around the base, spokes type I
    let c = classify(&t, &tau("0011")).unwrap();
    for (u, v) in [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")] {
        let e = t.edge_between(u, v).unwrap();
        assert_eq!(c.edge_type(&t, e), Some(Type::II));
    }
    for apex in ["a", "b"] {
        for i in 1..=4 {
            let e = t.edge_between(apex, &i.to_string()).unwrap();
            assert_eq!(c.edge_type(&t, e), Some(Type::I));
        }
    }
}

#[test]
fn bp6_listed_and_canonical_bits() {
    let t = bipyramid(6).unwrap();
    let as_listed = from_listed(&t, 6, &[false, false]);
    assert_eq!(face_counts(&t, &as_listed), (12, 0));
    assert!(is_homogeneous(&t, &as_listed).unwrap());
    let one_reversed = from_listed(&t, 6, &[false, true]);
    assert_eq!(face_counts(&t, &one_reversed), (0, 12));

    let tau = |b: &str| make_z_orientation(&t, &parse_bits(b).unwrap()).unwrap();
    for b in ["00", "11"] {
        assert_eq!(face_counts(&t, &tau(b)), (0, 12), "{b}");
    }
    for b in ["01", "10"] {
        assert!(is_homogeneous(&t, &tau(b)).unwrap(), "{b}");
    }
}

#[test]
fn odd_bipyramids_have_two_type_one_vertices() {
    for n in [3, 5, 7, 9, 11] {
        let t = bipyramid(n).unwrap();
        let tau = bipyramid_canonical_zorientation(n).unwrap();
        let c = classify(&t, &tau).unwrap();
        let type_one: Vec<&str> = (0..t.vertex_count())
            .filter(|&v| c.vertex_types[v] == Type::I)
            .map(|v| t.name(v).as_str())
            .collect();
        assert_eq!(type_one, ["a", "b"]);
        let d = extract_directed_embedding(&t, &tau).unwrap();
        assert_eq!(d.faces.len(), 2);
        assert_eq!(d.arcs.len(), n);
        assert!(d.faces.iter().all(|f| f.arcs.len() == n));
    }
}

#[test]
fn every_orientation_of_bp3_and_bp5_is_homogeneous() {
    for n in [3, 5] {
        let t = bipyramid(n).unwrap();
        for bits in [[false], [true]] {
            assert!(is_homogeneous(&t, &make_z_orientation(&t, &bits).unwrap()).unwrap());
        }
    }
}
