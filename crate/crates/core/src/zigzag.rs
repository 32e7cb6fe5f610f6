//! Zigzag traversal, z-orientations and the type classification they induce.
//!
//! A zigzag is walked as a sequence of directed edge passes: each edge is
//! entered at the vertex it shares with its predecessor and left at the vertex
//! it shares with its successor. Consecutive edges share a face, and edges two
//! apart are vertex-disjoint.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cyclic::{least_rotated, least_rotation, rotated};
use crate::error::{Error, Result};
use crate::triangulation::{Edge, Triangulation, VertexId};

/// Largest zigzag count for which all orientations are enumerated.
pub const MAX_ENUMERATED_ZIGZAGS: usize = 20;

/// One directed traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pass {
    pub from: usize,
    pub to: usize,
}

impl Pass {
    pub fn new(from: usize, to: usize) -> Self {
        Pass { from, to }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.from, self.to)
    }

    pub fn reversed(self) -> Self {
        Pass {
            from: self.to,
            to: self.from,
        }
    }
}

// Ordered by (edge, from, to).
impl Ord for Pass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.edge(), self.from, self.to).cmp(&(other.edge(), other.from, other.to))
    }
}

impl PartialOrd for Pass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Two consecutive zigzag edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZigzagState {
    pub prev: Edge,
    pub cur: Edge,
}

impl ZigzagState {
    /// Direction in which the zigzag passes `cur`.
    pub fn pass(&self) -> Option<Pass> {
        let x = self.prev.common_vertex(self.cur)?;
        Some(Pass::new(x, self.cur.other(x)?))
    }
}

/// Next state: `cur` followed by the edge of its other face that avoids `prev`.
pub fn zigzag_successor(t: &Triangulation, s: ZigzagState) -> Result<ZigzagState> {
    let no_face = || {
        let (a, b) = t.edge_names(s.prev);
        let (c, d) = t.edge_names(s.cur);
        Error::NoCommonFace(format!("{a}{b}"), format!("{c}{d}"))
    };
    let here = t.common_face(s.prev, s.cur).ok_or_else(no_face)?;
    let x = s.prev.common_vertex(s.cur).ok_or_else(no_face)?;
    let y = s.cur.other(x).unwrap();
    let there = t
        .faces_of_edge(s.cur)
        .iter()
        .copied()
        .find(|&f| f != here)
        .ok_or_else(|| Error::Precondition("edge lies in fewer than two faces".into()))?;
    let w = t.faces()[there].apex(s.cur).unwrap();
    Ok(ZigzagState {
        prev: s.cur,
        cur: Edge::new(y, w),
    })
}

/// Inverse of [`zigzag_successor`].
pub fn zigzag_predecessor(t: &Triangulation, s: ZigzagState) -> Result<ZigzagState> {
    let back = zigzag_successor(
        t,
        ZigzagState {
            prev: s.cur,
            cur: s.prev,
        },
    )?;
    Ok(ZigzagState {
        prev: back.cur,
        cur: back.prev,
    })
}

/// A closed zigzag as a cyclic sequence of passes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zigzag {
    passes: Vec<Pass>,
}

impl Zigzag {
    pub fn new(passes: Vec<Pass>) -> Self {
        Zigzag { passes }
    }

    pub fn passes(&self) -> &[Pass] {
        &self.passes
    }

    pub fn len(&self) -> usize {
        self.passes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.passes.iter().map(|p| p.edge())
    }

    /// The same zigzag walked backwards.
    pub fn reversed(&self) -> Zigzag {
        Zigzag {
            passes: self.passes.iter().rev().map(|p| p.reversed()).collect(),
        }
    }

    /// Least rotation, keeping the direction.
    pub fn normalized(&self) -> Zigzag {
        Zigzag {
            passes: least_rotated(&self.passes),
        }
    }

    /// Least rotation over both directions.
    pub fn canonical(&self) -> Zigzag {
        let fwd = self.normalized();
        let rev = self.reversed().normalized();
        fwd.min(rev)
    }

    pub fn rotated_to(&self, start: usize) -> Zigzag {
        Zigzag {
            passes: rotated(&self.passes, start),
        }
    }

    /// Positions at which `e` is passed.
    pub fn occurrences(&self, e: Edge) -> Vec<usize> {
        self.passes
            .iter()
            .enumerate()
            .filter(|(_, p)| p.edge() == e)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn states(&self) -> impl Iterator<Item = ZigzagState> + '_ {
        let n = self.passes.len();
        (0..n).map(move |i| ZigzagState {
            prev: self.passes[(i + n - 1) % n].edge(),
            cur: self.passes[i].edge(),
        })
    }

    /// Check the sequence against the successor rule of `t`.
    pub fn is_zigzag_of(&self, t: &Triangulation) -> bool {
        let n = self.passes.len();
        if n < 3 {
            return false;
        }
        for (i, s) in self.states().enumerate() {
            if s.pass() != Some(self.passes[i]) {
                return false;
            }
            match zigzag_successor(t, s) {
                Ok(next) if next.cur == self.passes[(i + 1) % n].edge() => {}
                _ => return false,
            }
        }
        true
    }

    /// Passes rendered as `u>v`, space separated.
    pub fn render(&self, t: &Triangulation) -> String {
        self.passes
            .iter()
            .map(|p| format!("{}>{}", t.name(p.from), t.name(p.to)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_names(&self, t: &Triangulation) -> Vec<(VertexId, VertexId)> {
        self.passes
            .iter()
            .map(|p| (t.name(p.from).clone(), t.name(p.to).clone()))
            .collect()
    }

    /// Rebuild from named passes, re-indexed into `t`.
    pub fn from_names(t: &Triangulation, passes: &[(VertexId, VertexId)]) -> Result<Zigzag> {
        let passes = passes
            .iter()
            .map(|(a, b)| Ok(Pass::new(t.index_of(a.as_str())?, t.index_of(b.as_str())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Zigzag { passes })
    }
}

fn walk_orbit(t: &Triangulation, start: ZigzagState) -> Result<Vec<ZigzagState>> {
    let mut orbit = vec![start];
    let mut s = zigzag_successor(t, start)?;
    while s != start {
        orbit.push(s);
        if orbit.len() > 6 * t.face_count() {
            return Err(Error::internal("zigzag orbit does not close"));
        }
        s = zigzag_successor(t, s)?;
    }
    Ok(orbit)
}

/// All zigzags up to reversal, each in canonical form, sorted.
pub fn enumerate_zigzags(t: &Triangulation) -> Result<Vec<Zigzag>> {
    t.ensure_valid()?;
    let mut seen: HashMap<ZigzagState, usize> = HashMap::new();
    let mut orbits: Vec<Zigzag> = Vec::new();
    for f in t.faces() {
        let edges = f.edges();
        for &prev in &edges {
            for &cur in &edges {
                if prev == cur {
                    continue;
                }
                let start = ZigzagState { prev, cur };
                if seen.contains_key(&start) {
                    continue;
                }
                let id = orbits.len();
                let orbit = walk_orbit(t, start)?;
                let passes = orbit
                    .iter()
                    .map(|s| s.pass().expect("orbit states share a vertex"))
                    .collect();
                for s in orbit {
                    seen.insert(s, id);
                }
                orbits.push(Zigzag::new(passes));
            }
        }
    }

    let mut groups: BTreeMap<Zigzag, Vec<Zigzag>> = BTreeMap::new();
    for z in orbits {
        let fwd = z.normalized();
        let rev = z.reversed().normalized();
        if fwd == rev {
            return Err(Error::internal("found a self-reversed zigzag"));
        }
        groups.entry(fwd.clone().min(rev)).or_default().push(fwd);
    }
    for (canon, members) in &groups {
        if members.len() != 2 {
            return Err(Error::internal(format!(
                "zigzag of length {} has {} orbit(s) instead of 2",
                canon.len(),
                members.len()
            )));
        }
    }
    Ok(groups.into_keys().collect())
}

pub fn is_z_knotted(t: &Triangulation) -> Result<bool> {
    Ok(enumerate_zigzags(t)?.len() == 1)
}

/// Face shadow: the face holding passes `i` and `i + 1`, cyclically.
pub fn face_shadow(t: &Triangulation, z: &Zigzag) -> Result<Vec<usize>> {
    let n = z.len();
    (0..n)
        .map(|i| {
            let a = z.passes[i].edge();
            let b = z.passes[(i + 1) % n].edge();
            t.common_face(a, b).ok_or_else(|| {
                let (p, q) = t.edge_names(a);
                let (r, s) = t.edge_names(b);
                Error::NoCommonFace(format!("{p}{q}"), format!("{r}{s}"))
            })
        })
        .collect()
}

/// One chosen direction for every zigzag.
///
/// `chosen[i]` is the canonical zigzag `i` (bit clear) or its reversal
/// (bit set), each stored at its least rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZOrientation {
    chosen: Vec<Zigzag>,
    bits: Vec<bool>,
}

impl ZOrientation {
    pub fn zigzags(&self) -> &[Zigzag] {
        &self.chosen
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Every zigzag reversed.
    pub fn reversed(&self) -> ZOrientation {
        ZOrientation {
            chosen: self.chosen.iter().map(|z| z.reversed().normalized()).collect(),
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    fn from_canonical(canonical: &[Zigzag], bits: &[bool]) -> Result<Self> {
        if bits.len() != canonical.len() {
            return Err(Error::BadOrientation(format!(
                "expected {} bits, got {}",
                canonical.len(),
                bits.len()
            )));
        }
        let chosen = canonical
            .iter()
            .zip(bits)
            .map(|(z, &flip)| if flip { z.reversed().normalized() } else { z.clone() })
            .collect();
        Ok(ZOrientation {
            chosen,
            bits: bits.to_vec(),
        })
    }

    /// Orientation containing exactly the given zigzags (in any rotation).
    pub fn from_zigzags(t: &Triangulation, zigzags: &[Zigzag]) -> Result<Self> {
        let canonical = enumerate_zigzags(t)?;
        let mut bits = vec![None; canonical.len()];
        let index: HashMap<&Zigzag, usize> =
            canonical.iter().enumerate().map(|(i, z)| (z, i)).collect();
        for z in zigzags {
            let norm = z.normalized();
            let canon = z.canonical();
            let &i = index.get(&canon).ok_or_else(|| {
                Error::BadOrientation(format!("not a zigzag of this triangulation: {}", z.render(t)))
            })?;
            if bits[i].is_some() {
                return Err(Error::BadOrientation("zigzag chosen twice".into()));
            }
            bits[i] = Some(norm != canon);
        }
        let bits = bits
            .into_iter()
            .collect::<Option<Vec<bool>>>()
            .ok_or_else(|| Error::BadOrientation("some zigzag has no chosen direction".into()))?;
        Self::from_canonical(&canonical, &bits)
    }
}

/// Parse a bit string such as `0011`.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::BadOrientation(format!("bit string {s:?} has non-binary digit"))),
        })
        .collect()
}

/// Select each canonical zigzag (bit clear) or its reversal (bit set).
pub fn make_z_orientation(t: &Triangulation, bits: &[bool]) -> Result<ZOrientation> {
    let canonical = enumerate_zigzags(t)?;
    ZOrientation::from_canonical(&canonical, bits)
}

/// All `2^k` orientations, in binary counting order of the bit string.
pub fn all_z_orientations(t: &Triangulation) -> Result<Vec<ZOrientation>> {
    let canonical = enumerate_zigzags(t)?;
    let k = canonical.len();
    if k > MAX_ENUMERATED_ZIGZAGS {
        return Err(Error::TooManyZigzags(k));
    }
    (0u64..1 << k)
        .map(|mask| {
            let bits: Vec<bool> = (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect();
            ZOrientation::from_canonical(&canonical, &bits)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    I,
    II,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::I => "I",
            Type::II => "II",
        })
    }
}

/// Edge, vertex and face types under a z-orientation. Indices follow the
/// triangulation's edge, vertex and face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub edge_types: Vec<Type>,
    /// Common direction of each type-II edge.
    pub edge_directions: Vec<Option<Pass>>,
    pub vertex_types: Vec<Type>,
    pub face_types: Vec<Type>,
}

impl Classification {
    pub fn count_edges(&self, ty: Type) -> usize {
        self.edge_types.iter().filter(|&&x| x == ty).count()
    }

    pub fn count_vertices(&self, ty: Type) -> usize {
        self.vertex_types.iter().filter(|&&x| x == ty).count()
    }

    pub fn count_faces(&self, ty: Type) -> usize {
        self.face_types.iter().filter(|&&x| x == ty).count()
    }

    pub fn edge_type(&self, t: &Triangulation, e: Edge) -> Option<Type> {
        t.edge_index(e).map(|i| self.edge_types[i])
    }

    pub fn direction(&self, t: &Triangulation, e: Edge) -> Option<Pass> {
        t.edge_index(e).and_then(|i| self.edge_directions[i])
    }

    /// Directed type-II edges.
    pub fn arcs(&self) -> impl Iterator<Item = Pass> + '_ {
        self.edge_directions.iter().flatten().copied()
    }

    /// (in, out) counts of type-II edges at `v`.
    pub fn balance(&self, v: usize) -> (usize, usize) {
        self.arcs().fold((0, 0), |(i, o), p| {
            (i + usize::from(p.to == v), o + usize::from(p.from == v))
        })
    }
}

/// Types of all edges, vertices and faces. Returns an internal error if a face
/// matches neither of the two admissible patterns.
pub fn classify(t: &Triangulation, tau: &ZOrientation) -> Result<Classification> {
    let mut passes: Vec<Vec<Pass>> = vec![Vec::new(); t.edge_count()];
    for z in tau.zigzags() {
        for &p in z.passes() {
            let i = t
                .edge_index(p.edge())
                .ok_or_else(|| Error::BadOrientation("pass over a non-edge".into()))?;
            passes[i].push(p);
        }
    }
    let mut edge_types = Vec::with_capacity(t.edge_count());
    let mut edge_directions = Vec::with_capacity(t.edge_count());
    for (i, ps) in passes.iter().enumerate() {
        if ps.len() != 2 {
            let (a, b) = t.edge_names(t.edges()[i]);
            return Err(Error::BadOrientation(format!(
                "edge {a}{b} is passed {} times instead of twice",
                ps.len()
            )));
        }
        if ps[0] == ps[1] {
            edge_types.push(Type::II);
            edge_directions.push(Some(ps[0]));
        } else {
            edge_types.push(Type::I);
            edge_directions.push(None);
        }
    }

    let mut vertex_types = vec![Type::I; t.vertex_count()];
    for (i, e) in t.edges().iter().enumerate() {
        if edge_types[i] == Type::II {
            let (a, b) = e.endpoints();
            vertex_types[a] = Type::II;
            vertex_types[b] = Type::II;
        }
    }

    let mut face_types = Vec::with_capacity(t.face_count());
    for f in t.faces() {
        let ids = f.edges().map(|e| t.edge_index(e).unwrap());
        let type_one = ids.iter().filter(|&&i| edge_types[i] == Type::I).count();
        let ty = match type_one {
            2 => Type::I,
            0 => {
                // the three directions must chain head to tail
                let dirs = ids.map(|i| edge_directions[i].unwrap());
                let closed = dirs
                    .iter()
                    .all(|d| dirs.iter().filter(|o| o.from == d.to).count() == 1);
                if !closed {
                    return Err(Error::internal(format!(
                        "face {:?} has three type II edges that are not a directed cycle",
                        t.face_names(f)
                    )));
                }
                Type::II
            }
            _ => {
                return Err(Error::internal(format!(
                    "face {:?} has {type_one} type I edges",
                    t.face_names(f)
                )))
            }
        };
        face_types.push(ty);
    }

    Ok(Classification {
        edge_types,
        edge_directions,
        vertex_types,
        face_types,
    })
}

/// Whether every type-II pass is followed by two type-I passes, cyclically.
pub fn zigzag_is_homogeneous(z: &Zigzag, t: &Triangulation, c: &Classification) -> bool {
    let n = z.len();
    if n == 0 || !n.is_multiple_of(3) {
        return false;
    }
    let second: Vec<usize> = z
        .edges()
        .enumerate()
        .filter(|(_, e)| c.edge_type(t, *e) == Some(Type::II))
        .map(|(i, _)| i)
        .collect();
    second.len() == n / 3 && second.iter().all(|&i| i % 3 == second[0] % 3)
}

/// All faces type I and every chosen zigzag follows the (II, I, I) pattern.
pub fn is_homogeneous(t: &Triangulation, tau: &ZOrientation) -> Result<bool> {
    let c = classify(t, tau)?;
    Ok(homogeneous_with(t, tau, &c))
}

pub(crate) fn homogeneous_with(t: &Triangulation, tau: &ZOrientation, c: &Classification) -> bool {
    c.face_types.iter().all(|&f| f == Type::I)
        && tau.zigzags().iter().all(|z| zigzag_is_homogeneous(z, t, c))
}

/// First orientation in bit-string order that is homogeneous, if any.
pub fn find_homogeneous_orientation(t: &Triangulation) -> Result<Option<ZOrientation>> {
    for tau in all_z_orientations(t)? {
        let c = classify(t, &tau)?;
        if homogeneous_with(t, &tau, &c) {
            return Ok(Some(tau));
        }
    }
    Ok(None)
}

/// Index of the pass in `z` at which the least rotation starts.
pub fn canonical_start(z: &Zigzag) -> usize {
    least_rotation(z.passes())
}
