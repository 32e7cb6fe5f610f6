//! Special pairs and the connected-sum gluing `G(host, piece)`.
//!
//! The host is z-knotted with a homogeneous zigzag and only type I faces. The
//! piece has two or four zigzags. Both are cut open at a pair of type II edges
//! `e1 = v v1`, `e2 = v v2`: the shared vertex `v` splits into `v-` and `v+`
//! along the two arcs of its link between `v1` and `v2`, leaving a square hole.
//! The holes are identified, `v1`, `v2` and the two halves of `v` matching up.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::triangulation::{Edge, Triangulation, VertexId};
use crate::zigzag::{
    classify, enumerate_zigzags, homogeneous_with, Classification, Pass, Type, ZOrientation, Zigzag,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Minus, Side::Plus];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "-",
            Side::Plus => "+",
        })
    }
}

/// Two edges `e1 = v v1` and `e2 = v v2` with their shared vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialPair {
    pub e1: Edge,
    pub e2: Edge,
    pub shared: usize,
}

impl SpecialPair {
    pub fn new(e1: Edge, e2: Edge) -> Result<Self> {
        match e1.common_vertex(e2) {
            Some(shared) if e1 != e2 => Ok(SpecialPair { e1, e2, shared }),
            _ => Err(Error::Precondition("pair edges must be distinct and share a vertex".into())),
        }
    }

    /// The pair `e1 = u v`, `e2 = v w`.
    pub fn from_names(t: &Triangulation, u: &str, v: &str, w: &str) -> Result<Self> {
        Self::new(t.edge_between(u, v)?, t.edge_between(v, w)?)
    }

    pub fn swapped(&self) -> Self {
        SpecialPair {
            e1: self.e2,
            e2: self.e1,
            shared: self.shared,
        }
    }

    pub fn edges(&self) -> [Edge; 2] {
        [self.e1, self.e2]
    }

    /// `v1` or `v2`.
    pub fn outer(&self, i: usize) -> usize {
        self.edges()[i].other(self.shared).unwrap()
    }

    pub fn shares_edge(&self, other: &SpecialPair) -> bool {
        self.edges().iter().any(|e| other.edges().contains(e))
    }

    /// `v1,v,v2`.
    pub fn render(&self, t: &Triangulation) -> String {
        format!("{},{},{}", t.name(self.outer(0)), t.name(self.shared), t.name(self.outer(1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteKind {
    Host,
    TwoZigzagPiece,
    FourZigzagPiece,
}

impl SiteKind {
    /// Segment letter used in the glued sequences.
    pub fn letter(self) -> char {
        match self {
            SiteKind::Host => 'A',
            SiteKind::TwoZigzagPiece => 'B',
            SiteKind::FourZigzagPiece => 'C',
        }
    }
}

impl fmt::Display for SiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SiteKind::Host => "host",
            SiteKind::TwoZigzagPiece => "two-zigzag piece",
            SiteKind::FourZigzagPiece => "four-zigzag piece",
        })
    }
}

/// The link of `center` cut at `ends`, interior vertices of each arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSplit {
    pub center: usize,
    pub ends: [usize; 2],
    pub arcs: [BTreeSet<usize>; 2],
}

impl LinkSplit {
    pub fn side_of(&self, u: usize) -> Option<Side> {
        Side::BOTH.into_iter().find(|s| self.arcs[s.idx()].contains(&u))
    }

    pub fn arc(&self, side: Side) -> &BTreeSet<usize> {
        &self.arcs[side.idx()]
    }

    fn flipped(&self) -> LinkSplit {
        LinkSplit {
            center: self.center,
            ends: self.ends,
            arcs: [self.arcs[1].clone(), self.arcs[0].clone()],
        }
    }
}

/// Segments of the zigzag(s) between occurrences of the cut edges:
/// `A` for a host, `B` for a two-zigzag piece, `C` for a four-zigzag piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub kind: SiteKind,
    segments: [[Vec<Pass>; 2]; 2],
}

impl SegmentDecomposition {
    /// Segment `i` (0 or 1) on `side`.
    pub fn get(&self, i: usize, side: Side) -> &[Pass] {
        &self.segments[i][side.idx()]
    }

    pub fn total_len(&self) -> usize {
        self.segments.iter().flatten().map(Vec::len).sum()
    }

    fn contains(&self, i: usize, side: Side, e: Edge) -> bool {
        self.get(i, side).iter().any(|p| p.edge() == e)
    }
}

#[derive(Clone, Debug)]
pub struct GluingSite {
    pub pair: SpecialPair,
    pub kind: SiteKind,
    pub split: LinkSplit,
    /// `faces[i][side]` is the face on `side` containing `e_i`.
    faces: [[usize; 2]; 2],
    /// Direction of `e_i` under the orientation.
    pub passes: [Pass; 2],
    pub segments: SegmentDecomposition,
    pub type_i_vertices: usize,
}

impl GluingSite {
    pub fn face(&self, i: usize, side: Side) -> usize {
        self.faces[i][side.idx()]
    }

    /// Whether `e_i` points into the shared vertex.
    pub fn enters(&self, i: usize) -> bool {
        self.passes[i].to == self.pair.shared
    }
}

/// A triangulation, its orientation and a resolved site on it.
#[derive(Clone, Copy, Debug)]
pub struct Operand<'a> {
    pub t: &'a Triangulation,
    pub tau: &'a ZOrientation,
    pub site: &'a GluingSite,
}

fn require_homogeneous_type_one(t: &Triangulation, tau: &ZOrientation) -> Result<Classification> {
    let c = classify(t, tau)?;
    if !homogeneous_with(t, tau, &c) {
        return Err(Error::Precondition(
            "orientation must be homogeneous with every face of type I".into(),
        ));
    }
    Ok(c)
}

fn type_two_pairs(t: &Triangulation, c: &Classification) -> Vec<SpecialPair> {
    let mut out = Vec::new();
    for w in 0..t.vertex_count() {
        let es: Vec<Edge> = t.edges_at(w).filter(|&e| c.edge_type(t, e) == Some(Type::II)).collect();
        for (i, &a) in es.iter().enumerate() {
            for &b in &es[i + 1..] {
                let (e1, e2) = if a < b { (a, b) } else { (b, a) };
                out.push(SpecialPair { e1, e2, shared: w });
            }
        }
    }
    out.sort();
    out
}

fn interleaves(z: &Zigzag, pair: &SpecialPair) -> bool {
    let mut occ: Vec<(usize, usize)> = Vec::new();
    for (i, e) in pair.edges().into_iter().enumerate() {
        occ.extend(z.occurrences(e).into_iter().map(|p| (p, i)));
    }
    occ.sort();
    occ.len() == 4 && (0..4).all(|k| occ[k].1 != occ[(k + 1) % 4].1)
}

/// Whether the pair is special: both edges type II with a shared vertex, and
/// the single zigzag visits them as `e1, .., e2, .., e1, .., e2, ..`.
pub fn is_special(t: &Triangulation, tau: &ZOrientation, pair: &SpecialPair) -> Result<bool> {
    if tau.len() != 1 {
        return Ok(false);
    }
    let c = classify(t, tau)?;
    let type_two = pair.edges().iter().all(|&e| c.edge_type(t, e) == Some(Type::II));
    Ok(type_two && interleaves(&tau.zigzags()[0], pair))
}

/// All special pairs, ordered by their edges.
pub fn find_special_pairs(t: &Triangulation, tau: &ZOrientation) -> Result<Vec<SpecialPair>> {
    if tau.len() != 1 {
        return Err(Error::Precondition(format!(
            "special pairs need a z-knotted triangulation, found {} zigzags",
            tau.len()
        )));
    }
    let c = require_homogeneous_type_one(t, tau)?;
    let z = &tau.zigzags()[0];
    Ok(type_two_pairs(t, &c)
        .into_iter()
        .filter(|p| interleaves(z, p))
        .collect())
}

/// Whether the eight occurrences run `c1, t1, c2, t2` twice around.
pub fn are_concordant(_t: &Triangulation, tau: &ZOrientation, p: &SpecialPair, q: &SpecialPair) -> Result<bool> {
    if p.shares_edge(q) {
        return Err(Error::Precondition("concordance needs edge-disjoint pairs".into()));
    }
    if tau.len() != 1 {
        return Err(Error::Precondition("concordance needs a z-knotted triangulation".into()));
    }
    let z = &tau.zigzags()[0];
    let edges = [p.e1, p.e2, q.e1, q.e2];
    let mut occ: Vec<(usize, usize)> = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        occ.extend(z.occurrences(e).into_iter().map(|pos| (pos, i)));
    }
    if occ.len() != 8 {
        return Ok(false);
    }
    occ.sort();
    let labels: Vec<usize> = occ.iter().map(|o| o.1).collect();
    let periodic = (0..4).all(|k| labels[k] == labels[k + 4]);
    let alternates = (0..8).all(|k| (labels[k] < 2) != (labels[(k + 1) % 8] < 2));
    let distinct = labels[..4].iter().collect::<HashSet<_>>().len() == 4;
    Ok(periodic && alternates && distinct)
}

/// Vertex-sharing pairs of type II edges matching the piece occurrence
/// pattern: with two zigzags, `e1` twice in one and `e2` twice in the other;
/// with four, `e1` once in each of two zigzags and `e2` once in each of the
/// other two.
pub fn find_piece_pairs(t: &Triangulation, tau: &ZOrientation) -> Result<Vec<(SpecialPair, SiteKind)>> {
    let kind = match tau.len() {
        2 => SiteKind::TwoZigzagPiece,
        4 => SiteKind::FourZigzagPiece,
        k => {
            return Err(Error::Precondition(format!(
                "a piece needs exactly 2 or 4 zigzags, found {k}"
            )))
        }
    };
    let c = require_homogeneous_type_one(t, tau)?;
    Ok(type_two_pairs(t, &c)
        .into_iter()
        .filter(|p| piece_pattern(tau, p, kind))
        .map(|p| (p, kind))
        .collect())
}

/// Per zigzag, how often `e` occurs.
fn counts(tau: &ZOrientation, e: Edge) -> Vec<usize> {
    tau.zigzags().iter().map(|z| z.occurrences(e).len()).collect()
}

fn piece_pattern(tau: &ZOrientation, p: &SpecialPair, kind: SiteKind) -> bool {
    let (a, b) = (counts(tau, p.e1), counts(tau, p.e2));
    let holders = |c: &[usize], n: usize| -> Vec<usize> {
        c.iter().enumerate().filter(|(_, &k)| k == n).map(|(i, _)| i).collect()
    };
    match kind {
        SiteKind::TwoZigzagPiece => {
            let (ha, hb) = (holders(&a, 2), holders(&b, 2));
            ha.len() == 1 && hb.len() == 1 && ha != hb
        }
        SiteKind::FourZigzagPiece => {
            let (ha, hb) = (holders(&a, 1), holders(&b, 1));
            ha.len() == 2 && hb.len() == 2 && ha.iter().all(|i| !hb.contains(i))
        }
        SiteKind::Host => false,
    }
}

fn link_split(t: &Triangulation, pair: &SpecialPair) -> Result<LinkSplit> {
    let v = pair.shared;
    let link = t.link_indices(v)?;
    let n = link.len();
    let pos = |u: usize| link.iter().position(|&x| x == u).unwrap();
    let (i1, i2) = (pos(pair.outer(0)), pos(pair.outer(1)));
    let arc = |from: usize, to: usize| -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut k = (from + 1) % n;
        while k != to {
            out.insert(link[k]);
            k = (k + 1) % n;
        }
        out
    };
    let arcs = [arc(i1, i2), arc(i2, i1)];
    if arcs.iter().any(BTreeSet::is_empty) {
        return Err(Error::Precondition(format!(
            "{} and {} are adjacent around {}",
            t.name(pair.outer(0)),
            t.name(pair.outer(1)),
            t.name(v)
        )));
    }
    Ok(LinkSplit {
        center: v,
        ends: [pair.outer(0), pair.outer(1)],
        arcs,
    })
}

/// Faces before and after the pass at `p`.
fn crossing(t: &Triangulation, z: &Zigzag, p: usize) -> Result<(usize, usize)> {
    let ps = z.passes();
    let n = ps.len();
    let face = |a: Pass, b: Pass| {
        t.common_face(a.edge(), b.edge())
            .ok_or_else(|| Error::internal("consecutive passes without a common face"))
    };
    Ok((face(ps[(p + n - 1) % n], ps[p])?, face(ps[p], ps[(p + 1) % n])?))
}

/// Passes strictly between positions `a` and `b`, going forward.
fn between(ps: &[Pass], a: usize, b: usize) -> Vec<Pass> {
    let n = ps.len();
    let len = (b + n - a - 1) % n;
    (1..=len).map(|k| ps[(a + k) % n]).collect()
}

type Segments = [[Vec<Pass>; 2]; 2];

fn host_segments(t: &Triangulation, z: &Zigzag, pair: &SpecialPair, faces: &[[usize; 2]; 2]) -> Result<Option<Segments>> {
    let mut occ: Vec<(usize, usize)> = Vec::new();
    for (i, e) in pair.edges().into_iter().enumerate() {
        occ.extend(z.occurrences(e).into_iter().map(|p| (p, i)));
    }
    occ.sort();
    if occ.len() != 4 || !(0..4).all(|k| occ[k].1 != occ[(k + 1) % 4].1) {
        return Err(Error::Precondition("pair is not special".into()));
    }
    let (m, p) = (Side::Minus.idx(), Side::Plus.idx());
    let mut start = None;
    for (k, &(pos, i)) in occ.iter().enumerate() {
        if i == 0 && crossing(t, z, pos)? == (faces[0][m], faces[0][p]) {
            start = Some(k);
        }
    }
    let Some(start) = start else { return Ok(None) };
    occ.rotate_left(start);
    for (j, &(pos, i)) in occ.iter().enumerate() {
        let want = if j < 2 {
            (faces[i][m], faces[i][p])
        } else {
            (faces[i][p], faces[i][m])
        };
        if crossing(t, z, pos)? != want {
            return Ok(None);
        }
    }
    let ps = z.passes();
    let seg = |j: usize| between(ps, occ[j].0, occ[(j + 1) % 4].0);
    Ok(Some([[seg(2), seg(0)], [seg(3), seg(1)]]))
}

fn two_piece_segments(t: &Triangulation, tau: &ZOrientation, pair: &SpecialPair, faces: &[[usize; 2]; 2]) -> Result<Option<Segments>> {
    let mut out: Segments = Default::default();
    let mut holders = Vec::new();
    for (i, e) in pair.edges().into_iter().enumerate() {
        let found: Vec<(usize, Vec<usize>)> = tau
            .zigzags()
            .iter()
            .enumerate()
            .map(|(k, z)| (k, z.occurrences(e)))
            .filter(|(_, o)| !o.is_empty())
            .collect();
        let [(k, occ)] = found.as_slice() else {
            return Err(Error::Precondition("edge does not lie on a single zigzag".into()));
        };
        if occ.len() != 2 {
            return Err(Error::Precondition("edge is not passed twice by one zigzag".into()));
        }
        holders.push(*k);
        let z = &tau.zigzags()[*k];
        let minus_to_plus = (faces[i][0], faces[i][1]);
        let plus_to_minus = (faces[i][1], faces[i][0]);
        let (a, b) = (crossing(t, z, occ[0])?, crossing(t, z, occ[1])?);
        let (up, down) = if a == minus_to_plus && b == plus_to_minus {
            (occ[0], occ[1])
        } else if b == minus_to_plus && a == plus_to_minus {
            (occ[1], occ[0])
        } else {
            return Ok(None);
        };
        out[i][Side::Plus.idx()] = between(z.passes(), up, down);
        out[i][Side::Minus.idx()] = between(z.passes(), down, up);
    }
    if holders[0] == holders[1] {
        return Err(Error::Precondition("both edges lie on the same zigzag".into()));
    }
    Ok(Some(out))
}

fn four_piece_segments(t: &Triangulation, tau: &ZOrientation, pair: &SpecialPair, faces: &[[usize; 2]; 2]) -> Result<Option<Segments>> {
    let mut out: Segments = Default::default();
    let mut used = HashSet::new();
    for (i, e) in pair.edges().into_iter().enumerate() {
        let found: Vec<(usize, usize)> = tau
            .zigzags()
            .iter()
            .enumerate()
            .flat_map(|(k, z)| z.occurrences(e).into_iter().map(move |p| (k, p)))
            .collect();
        if found.len() != 2 || found[0].0 == found[1].0 {
            return Err(Error::Precondition("edge is not passed once by each of two zigzags".into()));
        }
        let mut seen = [false; 2];
        for &(k, pos) in &found {
            if !used.insert(k) {
                return Err(Error::Precondition("both edges share a zigzag".into()));
            }
            let z = &tau.zigzags()[k];
            let side = match crossing(t, z, pos)? {
                c if c == (faces[i][0], faces[i][1]) => Side::Plus,
                c if c == (faces[i][1], faces[i][0]) => Side::Minus,
                _ => return Err(Error::internal("edge crossing outside its faces")),
            };
            if seen[side.idx()] {
                return Ok(None);
            }
            seen[side.idx()] = true;
            out[i][side.idx()] = between(z.passes(), pos, pos);
        }
    }
    Ok(Some(out))
}

/// Split the link at the pair, pick the `-`/`+` labeling consistent with the
/// zigzag crossings and extract the segments. When both labelings fit, the
/// one whose `-` faces come first by name wins.
pub fn resolve_site(t: &Triangulation, tau: &ZOrientation, pair: &SpecialPair) -> Result<GluingSite> {
    let c = require_homogeneous_type_one(t, tau)?;
    let kind = match tau.len() {
        1 => SiteKind::Host,
        2 => SiteKind::TwoZigzagPiece,
        4 => SiteKind::FourZigzagPiece,
        k => {
            return Err(Error::Precondition(format!(
                "a gluing site needs 1, 2 or 4 zigzags, found {k}"
            )))
        }
    };
    let mut passes = [Pass::new(0, 1); 2];
    for (i, e) in pair.edges().into_iter().enumerate() {
        passes[i] = c.direction(t, e).ok_or_else(|| {
            let (a, b) = t.edge_names(e);
            Error::Precondition(format!("edge {a}{b} is not of type II"))
        })?;
    }
    let base = link_split(t, pair)?;
    let link = t.link_indices(pair.shared)?;
    let n = link.len();

    let mut candidates = Vec::new();
    for split in [base.clone(), base.flipped()] {
        let mut faces = [[0; 2]; 2];
        for (i, row) in faces.iter_mut().enumerate() {
            let vi = pair.outer(i);
            let k = link.iter().position(|&x| x == vi).unwrap();
            for x in [link[(k + 1) % n], link[(k + n - 1) % n]] {
                let side = split
                    .side_of(x)
                    .ok_or_else(|| Error::internal("link neighbor outside both arcs"))?;
                row[side.idx()] = t
                    .face_index(pair.shared, vi, x)
                    .ok_or_else(|| Error::internal("missing face around shared vertex"))?;
            }
        }
        let segments = match kind {
            SiteKind::Host => host_segments(t, &tau.zigzags()[0], pair, &faces)?,
            SiteKind::TwoZigzagPiece => two_piece_segments(t, tau, pair, &faces)?,
            SiteKind::FourZigzagPiece => four_piece_segments(t, tau, pair, &faces)?,
        };
        if let Some(segments) = segments {
            let mut key: Vec<[VertexId; 3]> =
                (0..2).map(|i| t.face_names(&t.faces()[faces[i][0]])).collect();
            key.sort();
            candidates.push((key, split, faces, segments));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0));
    let Some((_, split, faces, segments)) = candidates.into_iter().next() else {
        return Err(Error::Precondition(format!(
            "no side labeling of {} matches the zigzag crossings",
            pair.render(t)
        )));
    };
    Ok(GluingSite {
        pair: *pair,
        kind,
        split,
        faces,
        passes,
        segments: SegmentDecomposition { kind, segments },
        type_i_vertices: c.count_vertices(Type::I),
    })
}

/// Resolve a host site trying both role orders of the pair.
pub fn resolve_host_site(t: &Triangulation, tau: &ZOrientation, pair: &SpecialPair) -> Result<GluingSite> {
    resolve_site(t, tau, pair).or_else(|_| resolve_site(t, tau, &pair.swapped()))
}

/// Each `e_i` enters the shared vertex in the host exactly when `e'_i` does in
/// the piece.
pub fn check_compatibility(host: &GluingSite, piece: &GluingSite) -> bool {
    (0..2).all(|i| host.enters(i) == piece.enters(i))
}

/// Maps vertices of one operand to names in the glued triangulation.
#[derive(Clone, Debug)]
pub struct Renamer {
    names: Vec<Option<VertexId>>,
    split: LinkSplit,
    halves: [VertexId; 2],
}

impl Renamer {
    /// New name, or `None` for the split vertex.
    pub fn vertex(&self, v: usize) -> Option<&VertexId> {
        self.names[v].as_ref()
    }

    /// Name of `v` as an endpoint of an edge whose other end is `other`.
    pub fn endpoint(&self, v: usize, other: usize) -> Option<VertexId> {
        if v == self.split.center {
            self.split.side_of(other).map(|s| self.halves[s.idx()].clone())
        } else {
            self.vertex(v).cloned()
        }
    }

    pub fn pass(&self, p: Pass) -> Option<(VertexId, VertexId)> {
        Some((self.endpoint(p.from, p.to)?, self.endpoint(p.to, p.from)?))
    }

    pub fn edge(&self, e: Edge) -> Option<(VertexId, VertexId)> {
        let (a, b) = e.endpoints();
        self.pass(Pass::new(a, b))
    }

    pub fn half(&self, side: Side) -> &VertexId {
        &self.halves[side.idx()]
    }
}

/// Names of the two halves of a split vertex.
pub fn half_names(v: &VertexId) -> [VertexId; 2] {
    Side::BOTH.map(|s| VertexId::new(format!("{v}{s}")).expect("suffix keeps the token valid"))
}

fn face_side(split: &LinkSplit, others: &[usize]) -> Result<Side> {
    others
        .iter()
        .find_map(|&u| split.side_of(u))
        .ok_or_else(|| Error::internal("face at the split vertex spans neither arc"))
}

/// Cut both operands open and identify the holes. No zigzag conditions are
/// checked, and the result is only validated as a closed surface.
pub fn connected_sum(
    host: &Triangulation,
    host_split: &LinkSplit,
    piece: &Triangulation,
    piece_split: &LinkSplit,
) -> Result<(Triangulation, Renamer, Renamer)> {
    let halves = half_names(host.name(host_split.center));
    let host_names: HashSet<&VertexId> = host.names().iter().collect();
    for h in &halves {
        if host_names.contains(h) || piece.names().contains(h) {
            return Err(Error::Incompatible(format!("vertex name {h} is already taken")));
        }
    }
    let host_r = Renamer {
        names: (0..host.vertex_count())
            .map(|u| (u != host_split.center).then(|| host.name(u).clone()))
            .collect(),
        split: host_split.clone(),
        halves: halves.clone(),
    };
    let mut piece_names = Vec::with_capacity(piece.vertex_count());
    for u in 0..piece.vertex_count() {
        let name = if u == piece_split.center {
            None
        } else if let Some(i) = piece_split.ends.iter().position(|&x| x == u) {
            Some(host.name(host_split.ends[i]).clone())
        } else {
            let n = piece.name(u);
            if host_names.contains(n) {
                return Err(Error::Incompatible(format!(
                    "vertex {n} occurs in both triangulations"
                )));
            }
            Some(n.clone())
        };
        piece_names.push(name);
    }
    let piece_r = Renamer {
        names: piece_names,
        split: piece_split.clone(),
        halves,
    };

    let mut faces: Vec<[VertexId; 3]> = Vec::with_capacity(host.face_count() + piece.face_count());
    for (t, split, r) in [(host, host_split, &host_r), (piece, piece_split, &piece_r)] {
        for f in t.faces() {
            let vs = f.vertices();
            let side = if f.contains(split.center) {
                let others: Vec<usize> = vs.iter().copied().filter(|&u| u != split.center).collect();
                Some(face_side(split, &others)?)
            } else {
                None
            };
            faces.push(vs.map(|u| match r.vertex(u) {
                Some(n) => n.clone(),
                None => r.half(side.unwrap()).clone(),
            }));
        }
    }
    let glued = Triangulation::from_faces(faces)?;
    glued.ensure_valid()?;
    Ok((glued, host_r, piece_r))
}

#[derive(Clone, Copy)]
enum Part {
    Split(usize, Side),
    Host(usize, Side),
    Piece(usize, Side),
}

fn glued_layout(kind: SiteKind) -> Result<[Part; 16]> {
    use Part::{Host as A, Piece as P, Split as E};
    use Side::{Minus as M, Plus as S};
    match kind {
        SiteKind::TwoZigzagPiece => Ok([
            E(0, S), A(0, S), E(1, M), P(1, M), E(1, M), A(1, M), E(0, M), P(0, M),
            E(0, M), A(0, M), E(1, S), P(1, S), E(1, S), A(1, S), E(0, S), P(0, S),
        ]),
        SiteKind::FourZigzagPiece => Ok([
            E(0, S), A(0, S), E(1, M), P(1, M), E(1, S), A(1, S), E(0, S), P(0, S),
            E(0, M), A(0, M), E(1, S), P(1, S), E(1, M), A(1, M), E(0, M), P(0, M),
        ]),
        SiteKind::Host => Err(Error::Precondition("the piece site must come from a piece".into())),
    }
}

/// The single zigzag of the glued triangulation, assembled from the split
/// edges and the host and piece segments, as named passes.
pub fn predict_glued_zigzag(
    host: &GluingSite,
    host_r: &Renamer,
    piece: &GluingSite,
    piece_r: &Renamer,
) -> Result<Vec<(VertexId, VertexId)>> {
    let layout = glued_layout(piece.kind)?;
    let lost = || Error::internal("segment pass touches a removed vertex");
    let mut out = Vec::new();
    for part in layout {
        match part {
            Part::Split(i, side) => {
                let p = host.passes[i];
                let name = |v: usize| {
                    if v == host.pair.shared {
                        host_r.half(side).clone()
                    } else {
                        host_r.vertex(v).unwrap().clone()
                    }
                };
                out.push((name(p.from), name(p.to)));
            }
            Part::Host(i, side) => {
                for &p in host.segments.get(i, side) {
                    out.push(host_r.pass(p).ok_or_else(lost)?);
                }
            }
            Part::Piece(i, side) => {
                for &p in piece.segments.get(i, side) {
                    out.push(piece_r.pass(p).ok_or_else(lost)?);
                }
            }
        }
    }
    Ok(out)
}

/// Post-conditions checked on every glued triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub zigzag_len: usize,
    pub z_knotted: bool,
    pub prediction_matches: bool,
    pub homogeneous: bool,
    pub type_i_vertices: usize,
    pub expected_type_i_vertices: usize,
    pub counts_add_up: bool,
}

impl GlueReport {
    pub fn passed(&self) -> bool {
        self.z_knotted
            && self.prediction_matches
            && self.homogeneous
            && self.type_i_vertices == self.expected_type_i_vertices
            && self.counts_add_up
    }
}

impl fmt::Display for GlueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "faces: {}", self.faces)?;
        writeln!(f, "euler characteristic: {}", self.euler)?;
        writeln!(f, "zigzag length: {}", self.zigzag_len)?;
        writeln!(f, "z-knotted: {}", yn(self.z_knotted))?;
        writeln!(f, "predicted zigzag matches: {}", yn(self.prediction_matches))?;
        writeln!(f, "homogeneous: {}", yn(self.homogeneous))?;
        writeln!(
            f,
            "type I vertices: {} (expected {})",
            self.type_i_vertices, self.expected_type_i_vertices
        )?;
        writeln!(f, "counts add up: {}", yn(self.counts_add_up))
    }
}

#[derive(Clone, Debug)]
pub struct GlueOutcome {
    pub triangulation: Triangulation,
    pub orientation: ZOrientation,
    pub predicted: Zigzag,
    pub report: GlueReport,
    pub host_renamer: Renamer,
    pub piece_renamer: Renamer,
}

/// Glue `piece` into `host` at their sites and verify the result.
pub fn glue(host: Operand<'_>, piece: Operand<'_>) -> Result<GlueOutcome> {
    if host.site.kind != SiteKind::Host {
        return Err(Error::Precondition("the host site must come from a z-knotted host".into()));
    }
    glued_layout(piece.site.kind)?;
    if !check_compatibility(host.site, piece.site) {
        return Err(Error::Incompatible(format!(
            "edge directions at {} and {} do not match",
            host.t.name(host.site.pair.shared),
            piece.t.name(piece.site.pair.shared)
        )));
    }
    let (g, host_r, piece_r) = connected_sum(host.t, &host.site.split, piece.t, &piece.site.split)?;
    let names = predict_glued_zigzag(host.site, &host_r, piece.site, &piece_r)?;
    let predicted = Zigzag::from_names(&g, &names)?;

    let zs = enumerate_zigzags(&g)?;
    let z_knotted = zs.len() == 1;
    let prediction_matches = z_knotted && predicted.is_zigzag_of(&g) && zs[0] == predicted.canonical();
    let mut report = GlueReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: g.face_count(),
        euler: g.euler_characteristic(),
        zigzag_len: zs.iter().map(Zigzag::len).sum(),
        z_knotted,
        prediction_matches,
        homogeneous: false,
        type_i_vertices: 0,
        expected_type_i_vertices: host.site.type_i_vertices + piece.site.type_i_vertices,
        counts_add_up: g.vertex_count() + 2 == host.t.vertex_count() + piece.t.vertex_count()
            && g.edge_count() == host.t.edge_count() + piece.t.edge_count()
            && g.face_count() == host.t.face_count() + piece.t.face_count()
            && g.euler_characteristic() + 2
                == host.t.euler_characteristic() + piece.t.euler_characteristic(),
    };
    if !prediction_matches {
        return Err(Error::internal(format!("glued zigzag differs from the prediction\n{report}")));
    }
    let orientation = ZOrientation::from_zigzags(&g, std::slice::from_ref(&predicted))?;
    let c = classify(&g, &orientation)?;
    report.homogeneous = homogeneous_with(&g, &orientation, &c);
    report.type_i_vertices = c.count_vertices(Type::I);
    if !report.passed() {
        return Err(Error::internal(format!("glued triangulation failed verification\n{report}")));
    }
    Ok(GlueOutcome {
        triangulation: g,
        orientation,
        predicted,
        report,
        host_renamer: host_r,
        piece_renamer: piece_r,
    })
}

fn carry(g: &Triangulation, r: &Renamer, pair: &SpecialPair) -> Result<SpecialPair> {
    let lost = || Error::internal("inherited pair touches a removed vertex");
    let mut es = [Edge::new(0, 1); 2];
    for (i, e) in pair.edges().into_iter().enumerate() {
        let (a, b) = r.edge(e).ok_or_else(lost)?;
        es[i] = g.edge_between(a.as_str(), b.as_str())?;
    }
    SpecialPair::new(es[0], es[1])
}

/// Pairs that stay special after the gluing: host pairs concordant with the
/// consumed one, and piece pairs whose `i`-th edge lies in both `i`-th
/// segments. Each is re-checked in the glued triangulation.
pub fn inherited_pairs(
    outcome: &GlueOutcome,
    host: Operand<'_>,
    host_pairs: &[SpecialPair],
    piece: Operand<'_>,
    piece_pairs: &[SpecialPair],
) -> Result<Vec<SpecialPair>> {
    let g = &outcome.triangulation;
    let mut out = Vec::new();
    for p in host_pairs {
        if p.shares_edge(&host.site.pair) || !are_concordant(host.t, host.tau, p, &host.site.pair)? {
            continue;
        }
        out.push(carry(g, &outcome.host_renamer, p)?);
    }
    let seg = &piece.site.segments;
    let inside = |i: usize, e: Edge| seg.contains(i, Side::Plus, e) && seg.contains(i, Side::Minus, e);
    for p in piece_pairs {
        if p.shares_edge(&piece.site.pair) {
            continue;
        }
        let fits = (inside(0, p.e1) && inside(1, p.e2)) || (inside(0, p.e2) && inside(1, p.e1));
        if fits {
            out.push(carry(g, &outcome.piece_renamer, p)?);
        }
    }
    for p in &out {
        if !is_special(g, &outcome.orientation, p)? {
            return Err(Error::internal(format!(
                "inherited pair {} is not special after gluing",
                p.render(g)
            )));
        }
    }
    Ok(out)
}
