//! Concrete triangulation families: bipyramids and the triangulated Platonic
//! solids.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::triangulation::Triangulation;
use crate::zigzag::{Pass, ZOrientation, Zigzag};

/// Faces of the `n`-gonal bipyramid with apexes `a`, `b` over base `1..=n`.
pub fn bipyramid_faces(n: usize) -> Result<Vec<[String; 3]>> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "bipyramid needs n >= 3, got {n}"
        )));
    }
    let mut faces = Vec::with_capacity(2 * n);
    for apex in ["a", "b"] {
        for i in 1..=n {
            let j = i % n + 1;
            faces.push([apex.to_owned(), i.to_string(), j.to_string()]);
        }
    }
    Ok(faces)
}

pub fn bipyramid(n: usize) -> Result<Triangulation> {
    Triangulation::from_faces(bipyramid_faces(n)?)
}

fn base(i: usize, n: usize) -> String {
    ((i - 1) % n + 1).to_string()
}

/// The closed zigzag through `apex -> start`, written out as in the classical
/// listing: `X i, i(i+1), (i+1) Y, Y (i+2), (i+2)(i+3), (i+3) X, ...` where the
/// apex alternates after every block of three passes.
pub fn bipyramid_zigzag_sequence(n: usize, apex: &str, start: usize) -> Vec<(String, String)> {
    let other = |x: &str| if x == "a" { "b" } else { "a" };
    let mut out = Vec::new();
    let (mut x, mut i) = (apex.to_owned(), start);
    loop {
        let y = other(&x).to_owned();
        out.push((x.clone(), base(i, n)));
        out.push((base(i, n), base(i + 1, n)));
        out.push((base(i + 1, n), y.clone()));
        x = y;
        i = (i + 1) % n + 1;
        if x == apex && i == start {
            break;
        }
    }
    out
}

/// Starting points of the listed zigzags: one for odd `n`, two when
/// `n = 2k` with `k` odd, four when `k` is even.
pub fn bipyramid_zigzag_starts(n: usize) -> Vec<(&'static str, usize)> {
    if n % 2 == 1 {
        vec![("a", 1)]
    } else if (n / 2) % 2 == 1 {
        vec![("a", 1), ("a", 2)]
    } else {
        vec![("a", 1), ("b", 1), ("a", 2), ("b", 2)]
    }
}

/// The listed zigzags of `BP_n`, in their listed direction and starting point.
pub fn bipyramid_listed_zigzags(n: usize) -> Result<Vec<Vec<(String, String)>>> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "bipyramid needs n >= 3, got {n}"
        )));
    }
    Ok(bipyramid_zigzag_starts(n)
        .into_iter()
        .map(|(x, i)| bipyramid_zigzag_sequence(n, x, i))
        .collect())
}

fn to_zigzag(t: &Triangulation, seq: &[(String, String)]) -> Result<Zigzag> {
    let passes = seq
        .iter()
        .map(|(a, b)| Ok(Pass::new(t.index_of(a)?, t.index_of(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Zigzag::new(passes))
}

/// Listed zigzags in canonical form, sorted, indexed into `bipyramid(n)`.
pub fn bipyramid_oracle_zigzags(n: usize) -> Result<Vec<Zigzag>> {
    let t = bipyramid(n)?;
    let mut zs = bipyramid_listed_zigzags(n)?
        .iter()
        .map(|seq| Ok(to_zigzag(&t, seq)?.canonical()))
        .collect::<Result<Vec<_>>>()?;
    zs.sort();
    Ok(zs)
}

/// The orientation made of the listed zigzags in their listed direction:
/// spokes type I, base directed `1 -> 2 -> ... -> n -> 1`, all faces type I.
pub fn bipyramid_canonical_zorientation(n: usize) -> Result<ZOrientation> {
    let t = bipyramid(n)?;
    let zs = bipyramid_listed_zigzags(n)?
        .iter()
        .map(|seq| to_zigzag(&t, seq))
        .collect::<Result<Vec<_>>>()?;
    ZOrientation::from_zigzags(&t, &zs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Platonic {
    Tetrahedron,
    Octahedron,
    Icosahedron,
}

impl FromStr for Platonic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tetrahedron" => Ok(Platonic::Tetrahedron),
            "octahedron" => Ok(Platonic::Octahedron),
            "icosahedron" => Ok(Platonic::Icosahedron),
            other => Err(Error::Precondition(format!(
                "unknown solid {other:?} (expected tetrahedron, octahedron or icosahedron)"
            ))),
        }
    }
}

impl fmt::Display for Platonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Platonic::Tetrahedron => "tetrahedron",
            Platonic::Octahedron => "octahedron",
            Platonic::Icosahedron => "icosahedron",
        })
    }
}

pub fn platonic(solid: Platonic) -> Result<Triangulation> {
    match solid {
        Platonic::Tetrahedron => {
            Triangulation::from_faces([["1", "2", "3"], ["1", "2", "4"], ["1", "3", "4"], ["2", "3", "4"]])
        }
        Platonic::Octahedron => bipyramid(4),
        Platonic::Icosahedron => {
            // apexes 1 and 12, upper ring 2..=6, lower ring 7..=11
            let up = |i: usize| (2 + i % 5).to_string();
            let lo = |i: usize| (7 + i % 5).to_string();
            let mut faces = Vec::new();
            for i in 0..5 {
                faces.push(["1".to_owned(), up(i), up(i + 1)]);
                faces.push([up(i), up(i + 1), lo(i)]);
                faces.push([lo(i), lo(i + 1), up(i + 1)]);
                faces.push(["12".to_owned(), lo(i), lo(i + 1)]);
            }
            Triangulation::from_faces(faces)
        }
    }
}

pub fn platonic_by_name(name: &str) -> Result<Triangulation> {
    platonic(name.parse()?)
}
