//! Combinatorial triangulations of closed surfaces, stored as face lists.
//!
//! Vertices are opaque tokens. Internally every vertex is addressed by its
//! position in the lexicographically sorted token list, so comparing vertex
//! indices is the same as comparing tokens.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Name of a vertex: a non-empty token without whitespace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::BadToken(token));
        }
        Ok(VertexId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Undirected edge between two distinct vertex indices, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: usize) -> Option<usize> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn common_vertex(self, other: Edge) -> Option<usize> {
        if self == other {
            return None;
        }
        [self.lo, self.hi].into_iter().find(|&v| other.contains(v))
    }

    pub fn is_disjoint(self, other: Edge) -> bool {
        !self.contains(other.lo) && !self.contains(other.hi)
    }
}

/// A triangle, kept in the vertex order it was given in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face([usize; 3]);

impl Face {
    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn key(&self) -> [usize; 3] {
        let mut k = self.0;
        k.sort_unstable();
        k
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)]
    }

    /// Vertex of the face not on `e`.
    pub fn apex(&self, e: Edge) -> Option<usize> {
        let (a, b) = e.endpoints();
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        self.0.iter().copied().find(|&v| v != a && v != b)
    }

    pub fn opposite_edge(&self, v: usize) -> Option<Edge> {
        if !self.contains(v) {
            return None;
        }
        let rest: Vec<usize> = self.0.iter().copied().filter(|&u| u != v).collect();
        Some(Edge::new(rest[0], rest[1]))
    }
}

/// One violated surface invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EdgeFaceCount {
        edge: (VertexId, VertexId),
        faces: usize,
    },
    Disconnected {
        components: usize,
    },
    LinkNotCycle {
        vertex: VertexId,
    },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeFaceCount { edge, faces } => write!(
                f,
                "edge {} {} lies in {} face{}",
                edge.0,
                edge.1,
                faces,
                if *faces == 1 { "" } else { "s" }
            ),
            Violation::Disconnected { components } => {
                write!(f, "graph disconnected ({components} components)")
            }
            Violation::LinkNotCycle { vertex } => {
                write!(f, "link of vertex {vertex} is not a single cycle")
            }
            Violation::Empty => f.write_str("no faces"),
        }
    }
}

/// Every violated invariant; empty means a valid closed-surface triangulation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Neighbors of `center` in rotation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCycle {
    pub center: VertexId,
    pub cycle: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    names: Vec<VertexId>,
    lookup: HashMap<VertexId, usize>,
    faces: Vec<Face>,
    face_lookup: HashMap<[usize; 3], usize>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<Edge, usize>,
    edge_faces: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.faces == other.faces
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Build from named triangles. Rejects repeated vertices within a face and
    /// duplicate faces; surface invariants are checked separately by
    /// [`Triangulation::validate`].
    pub fn from_faces<I, S>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = [S; 3]>,
        S: AsRef<str>,
    {
        let named: Vec<[String; 3]> = faces
            .into_iter()
            .map(|f| f.map(|s| s.as_ref().to_owned()))
            .collect();
        let records: Vec<(usize, [String; 3])> = named.into_iter().enumerate().collect();
        Self::build(records)
    }

    fn build(records: Vec<(usize, [String; 3])>) -> Result<Self> {
        let mut tokens = BTreeSet::new();
        for (line, face) in &records {
            for tok in face {
                VertexId::new(tok.clone()).map_err(|_| Error::parse(*line, format!("bad vertex token {tok:?}")))?;
                tokens.insert(tok.clone());
            }
        }
        let names: Vec<VertexId> = tokens.into_iter().map(VertexId).collect();
        let lookup: HashMap<VertexId, usize> =
            names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();

        let mut faces = Vec::with_capacity(records.len());
        let mut face_lookup = HashMap::new();
        for (line, face) in &records {
            let idx = face.clone().map(|t| lookup[&VertexId(t)]);
            if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                return Err(Error::parse(
                    *line,
                    format!("face {} {} {} repeats a vertex", face[0], face[1], face[2]),
                ));
            }
            let f = Face(idx);
            if face_lookup.insert(f.key(), faces.len()).is_some() {
                return Err(Error::parse(
                    *line,
                    format!("duplicate face {} {} {}", face[0], face[1], face[2]),
                ));
            }
            faces.push(f);
        }

        let mut edge_set = BTreeSet::new();
        for f in &faces {
            edge_set.extend(f.edges());
        }
        let edges: Vec<Edge> = edge_set.into_iter().collect();
        let edge_lookup: HashMap<Edge, usize> =
            edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
        let mut edge_faces = vec![Vec::new(); edges.len()];
        let mut vertex_faces = vec![Vec::new(); names.len()];
        for (fi, f) in faces.iter().enumerate() {
            for e in f.edges() {
                edge_faces[edge_lookup[&e]].push(fi);
            }
            for v in f.vertices() {
                vertex_faces[v].push(fi);
            }
        }
        let mut vertex_edges = vec![Vec::new(); names.len()];
        for (ei, e) in edges.iter().enumerate() {
            let (a, b) = e.endpoints();
            vertex_edges[a].push(ei);
            vertex_edges[b].push(ei);
        }

        Ok(Triangulation {
            names,
            lookup,
            faces,
            face_lookup,
            edges,
            edge_lookup,
            edge_faces,
            vertex_edges,
            vertex_faces,
        })
    }

    /// Parse the `.tri` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = body.split_whitespace();
            let Some(tag) = toks.next() else { continue };
            if tag != "f" {
                return Err(Error::parse(line, format!("unknown record {tag:?}")));
            }
            let vs: Vec<&str> = toks.collect();
            if vs.len() != 3 {
                return Err(Error::parse(
                    line,
                    format!("face record needs 3 vertices, found {}", vs.len()),
                ));
            }
            records.push((line, [vs[0].to_owned(), vs[1].to_owned(), vs[2].to_owned()]));
        }
        Self::build(records)
    }

    /// Serialize to `.tri`, faces in stored order.
    pub fn to_tri(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            let [a, b, c] = f.vertices();
            out.push_str(&format!("f {} {} {}\n", self.names[a], self.names[b], self.names[c]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &VertexId {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edge_lookup.get(&e).copied()
    }

    pub fn edge_between(&self, a: &str, b: &str) -> Result<Edge> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        if a == b {
            return Err(Error::Precondition(format!("{} is not an edge", self.names[a])));
        }
        let e = Edge::new(a, b);
        self.edge_index(e)
            .map(|_| e)
            .ok_or_else(|| Error::Precondition(format!("{} {} is not an edge", self.names[a], self.names[b])))
    }

    pub fn face_index(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let mut k = [a, b, c];
        k.sort_unstable();
        self.face_lookup.get(&k).copied()
    }

    /// Indices of the faces containing `e`.
    pub fn faces_of_edge(&self, e: Edge) -> &[usize] {
        self.edge_index(e).map(|i| self.edge_faces[i].as_slice()).unwrap_or(&[])
    }

    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = Edge> + '_ {
        self.vertex_edges[v].iter().map(move |&i| self.edges[i])
    }

    pub fn faces_at(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_edges[v].len()
    }

    /// Face containing both edges, if any.
    pub fn common_face(&self, a: Edge, b: Edge) -> Option<usize> {
        let v = a.common_vertex(b)?;
        self.face_index(a.other(v)?, v, b.other(v)?)
    }

    /// Sorted name triples of all faces.
    pub fn face_set(&self) -> BTreeSet<[VertexId; 3]> {
        self.faces.iter().map(|f| self.face_names(f)).collect()
    }

    pub fn face_names(&self, f: &Face) -> [VertexId; 3] {
        let mut n = f.vertices().map(|v| self.names[v].clone());
        n.sort();
        n
    }

    pub fn edge_names(&self, e: Edge) -> (VertexId, VertexId) {
        let (a, b) = e.endpoints();
        (self.names[a].clone(), self.names[b].clone())
    }

    /// Every violated closed-surface invariant.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.faces.is_empty() {
            violations.push(Violation::Empty);
            return ValidationReport { violations };
        }
        for (i, e) in self.edges.iter().enumerate() {
            let n = self.edge_faces[i].len();
            if n != 2 {
                violations.push(Violation::EdgeFaceCount {
                    edge: self.edge_names(*e),
                    faces: n,
                });
            }
        }
        let components = self.component_count();
        if components != 1 {
            violations.push(Violation::Disconnected { components });
        }
        for v in 0..self.names.len() {
            if self.link_indices(v).is_err() {
                violations.push(Violation::LinkNotCycle {
                    vertex: self.names[v].clone(),
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSurface(report))
        }
    }

    fn component_count(&self) -> usize {
        let n = self.names.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in self.edges_at(v) {
                    let u = e.other(v).unwrap();
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    /// Link of `v` as vertex indices: starts at the least neighbor and heads
    /// toward the lesser of its two link-neighbors.
    pub fn link_indices(&self, v: usize) -> Result<Vec<usize>> {
        let bad = || Error::BadLink(self.names[v].to_string());
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &fi in &self.vertex_faces[v] {
            let e = self.faces[fi].opposite_edge(v).unwrap();
            let (a, b) = e.endpoints();
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
            return Err(bad());
        }
        let start = *adj.keys().min().unwrap();
        let mut next = *adj[&start].iter().min().unwrap();
        let mut cycle = vec![start];
        let mut prev = start;
        while next != start {
            if cycle.len() > adj.len() {
                return Err(bad());
            }
            cycle.push(next);
            let nb = &adj[&next];
            let step = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = next;
            next = step;
        }
        if cycle.len() != adj.len() {
            return Err(bad());
        }
        Ok(cycle)
    }

    pub fn vertex_link(&self, v: &VertexId) -> Result<LinkCycle> {
        let idx = self.index_of(v.as_str())?;
        let cycle = self
            .link_indices(idx)?
            .into_iter()
            .map(|u| self.names[u].clone())
            .collect();
        Ok(LinkCycle {
            center: v.clone(),
            cycle,
        })
    }

    /// Same triangulation with every vertex name prefixed. Prefixing keeps the
    /// name order, so vertex indices (and anything built on them) carry over.
    pub fn prefixed(&self, prefix: &str) -> Result<Triangulation> {
        Triangulation::from_faces(
            self.faces
                .iter()
                .map(|f| f.vertices().map(|v| format!("{prefix}{}", self.names[v]))),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.names.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Triangulation::parse(s)
    }
}
