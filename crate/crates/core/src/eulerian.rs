//! Directed Eulerian embeddings and their correspondence with triangulations
//! whose zigzags are homogeneous.
//!
//! An embedding is described combinatorially: a simple balanced digraph plus a
//! list of face cycles, each a directed cycle of arcs, with every arc lying on
//! exactly two face cycles. [`triangulate_embedding`] cones every face cycle
//! from a new vertex; [`extract_directed_embedding`] recovers the digraph of
//! type II edges and the cycles around the type I vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::cyclic::least_rotated;
use crate::error::{Error, Result};
use crate::triangulation::{Triangulation, VertexId};
use crate::zigzag::{classify, enumerate_zigzags, homogeneous_with, Type, ZOrientation, Zigzag};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCycle {
    pub name: Option<String>,
    /// Arc indices in traversal order.
    pub arcs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DirectedEmbedding {
    pub vertices: BTreeSet<VertexId>,
    pub arcs: Vec<DirectedEdge>,
    pub faces: Vec<FaceCycle>,
}

type CanonicalForm = (
    BTreeSet<VertexId>,
    BTreeSet<DirectedEdge>,
    BTreeSet<(Option<String>, Vec<DirectedEdge>)>,
);

impl PartialEq for DirectedEmbedding {
    /// Equal vertex and arc sets, and equal face cycles up to rotation.
    fn eq(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl Eq for DirectedEmbedding {}

impl DirectedEmbedding {
    /// Vertices are the explicit ones plus every arc endpoint.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        arcs: Vec<DirectedEdge>,
        faces: Vec<FaceCycle>,
    ) -> Self {
        let mut vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        for a in &arcs {
            vertices.insert(a.from.clone());
            vertices.insert(a.to.clone());
        }
        DirectedEmbedding {
            vertices,
            arcs,
            faces,
        }
    }

    fn canonical_form(&self) -> CanonicalForm {
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let arcs: Vec<DirectedEdge> = f.arcs.iter().map(|&i| self.arcs[i].clone()).collect();
                (f.name.clone(), least_rotated(&arcs))
            })
            .collect();
        (self.vertices.clone(), self.arcs.iter().cloned().collect(), faces)
    }

    /// Name of the vertex placed inside face `k`.
    pub fn face_vertex_name(&self, k: usize) -> String {
        self.faces[k].name.clone().unwrap_or_else(|| format!("F{k}"))
    }

    /// Check every structural invariant; the first violation is reported.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidEmbedding(m));
        if self.arcs.is_empty() {
            return bad("no arcs".into());
        }
        let mut pairs = HashSet::new();
        for a in &self.arcs {
            if a.from == a.to {
                return bad(format!("loop at {}", a.from));
            }
            let key = if a.from < a.to {
                (&a.from, &a.to)
            } else {
                (&a.to, &a.from)
            };
            if !pairs.insert(key) {
                return bad(format!("more than one arc between {} and {}", a.from, a.to));
            }
        }

        let mut balance: BTreeMap<&VertexId, i64> = self.vertices.iter().map(|v| (v, 0)).collect();
        for a in &self.arcs {
            *balance.get_mut(&a.from).unwrap() += 1;
            *balance.get_mut(&a.to).unwrap() -= 1;
        }
        if let Some((v, _)) = balance.iter().find(|(_, &b)| b != 0) {
            return bad(format!("vertex {v} has in-degree != out-degree"));
        }
        if let Some(v) = self.vertices.iter().find(|v| !self.arcs.iter().any(|a| &a.from == *v)) {
            return bad(format!("vertex {v} is isolated"));
        }

        // connectivity of the underlying graph
        let mut adj: HashMap<&VertexId, Vec<&VertexId>> = HashMap::new();
        for a in &self.arcs {
            adj.entry(&a.from).or_default().push(&a.to);
            adj.entry(&a.to).or_default().push(&a.from);
        }
        let start = self.vertices.iter().next().unwrap();
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return bad("underlying graph is disconnected".into());
        }

        let mut uses = vec![0usize; self.arcs.len()];
        let mut names = HashSet::new();
        for (k, f) in self.faces.iter().enumerate() {
            if f.arcs.len() < 3 {
                return bad(format!("face {} has fewer than three arcs", self.face_vertex_name(k)));
            }
            if !names.insert(self.face_vertex_name(k)) {
                return bad(format!("face name {} used twice", self.face_vertex_name(k)));
            }
            for (i, &a) in f.arcs.iter().enumerate() {
                let Some(arc) = self.arcs.get(a) else {
                    return bad(format!("face {} uses unknown arc {a}", self.face_vertex_name(k)));
                };
                let next = &self.arcs[f.arcs[(i + 1) % f.arcs.len()]];
                if arc.to != next.from {
                    return bad(format!(
                        "face {} is not a directed cycle at {}",
                        self.face_vertex_name(k),
                        arc.to
                    ));
                }
                uses[a] += 1;
            }
        }
        if let Some(i) = uses.iter().position(|&u| u != 2) {
            let a = &self.arcs[i];
            return bad(format!(
                "arc {}->{} lies on {} face cycles instead of 2",
                a.from, a.to, uses[i]
            ));
        }
        Ok(())
    }

    /// Parse the `.eul` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut arcs = Vec::new();
        let mut by_label: HashMap<String, usize> = HashMap::new();
        let mut raw_faces: Vec<(usize, Option<String>, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            let Some(&tag) = toks.first() else { continue };
            match tag {
                "v" if toks.len() == 2 => vertices.push(VertexId::new(toks[1]).map_err(|e| Error::parse(line, e.to_string()))?),
                "a" if toks.len() == 4 => {
                    toks[1]
                        .parse::<i64>()
                        .map_err(|_| Error::parse(line, format!("arc index {:?} is not an integer", toks[1])))?;
                    if by_label.insert(toks[1].to_owned(), arcs.len()).is_some() {
                        return Err(Error::parse(line, format!("arc index {} used twice", toks[1])));
                    }
                    let from = VertexId::new(toks[2]).map_err(|e| Error::parse(line, e.to_string()))?;
                    let to = VertexId::new(toks[3]).map_err(|e| Error::parse(line, e.to_string()))?;
                    arcs.push(DirectedEdge { from, to });
                }
                "c" if toks.len() >= 3 => {
                    let name = (toks[1] != "-").then(|| toks[1].to_owned());
                    raw_faces.push((line, name, toks[2..].iter().map(|s| s.to_string()).collect()));
                }
                _ => return Err(Error::parse(line, format!("malformed record {:?}", body.trim()))),
            }
        }
        let mut faces = Vec::new();
        for (line, name, labels) in raw_faces {
            let arcs = labels
                .iter()
                .map(|l| {
                    by_label
                        .get(l)
                        .copied()
                        .ok_or_else(|| Error::parse(line, format!("unknown arc index {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            faces.push(FaceCycle { name, arcs });
        }
        Ok(DirectedEmbedding::new(vertices, arcs, faces))
    }

    /// Canonical `.eul` text: vertices and arcs sorted, arcs renumbered from 0,
    /// each face cycle starting at its least arc index.
    pub fn to_eul(&self) -> String {
        let mut order: Vec<usize> = (0..self.arcs.len()).collect();
        order.sort_by(|&a, &b| self.arcs[a].cmp(&self.arcs[b]));
        let mut renumber = vec![0; self.arcs.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "v {v}");
        }
        for (new, &old) in order.iter().enumerate() {
            let a = &self.arcs[old];
            let _ = writeln!(out, "a {new} {} {}", a.from, a.to);
        }
        for (k, f) in self.faces.iter().enumerate() {
            let ids: Vec<usize> = f.arcs.iter().map(|&a| renumber[a]).collect();
            let ids = least_rotated(&ids);
            let name = f.name.clone().unwrap_or_else(|| self.face_vertex_name(k));
            let ids: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "c {name} {}", ids.join(" "));
        }
        out
    }
}

/// The digraph of type II edges with one face cycle per type I vertex `v`:
/// the cycle of edges opposite `v` in the faces around it, named after `v`.
pub fn extract_directed_embedding(t: &Triangulation, tau: &ZOrientation) -> Result<DirectedEmbedding> {
    let c = classify(t, tau)?;
    if !homogeneous_with(t, tau, &c) {
        return Err(Error::NotHomogeneous);
    }
    let mut arcs: Vec<DirectedEdge> = c
        .arcs()
        .map(|p| DirectedEdge {
            from: t.name(p.from).clone(),
            to: t.name(p.to).clone(),
        })
        .collect();
    arcs.sort();
    let arc_index: HashMap<(&VertexId, &VertexId), usize> =
        arcs.iter().enumerate().map(|(i, a)| ((&a.from, &a.to), i)).collect();

    let mut faces = Vec::new();
    for v in 0..t.vertex_count() {
        if c.vertex_types[v] != Type::I {
            continue;
        }
        let mut link = t.link_indices(v)?;
        let (n0, n1) = (t.name(link[0]), t.name(link[1]));
        if !arc_index.contains_key(&(n0, n1)) {
            link.reverse();
            link.rotate_right(1);
        }
        let cycle = (0..link.len())
            .map(|i| {
                let (a, b) = (t.name(link[i]), t.name(link[(i + 1) % link.len()]));
                arc_index.get(&(a, b)).copied().ok_or_else(|| {
                    Error::internal(format!("cycle around {} is not directed at {a}{b}", t.name(v)))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        faces.push(FaceCycle {
            name: Some(t.name(v).to_string()),
            arcs: least_rotated(&cycle),
        });
    }
    let vertices = (0..t.vertex_count())
        .filter(|&v| c.vertex_types[v] == Type::II)
        .map(|v| t.name(v).clone());
    let d = DirectedEmbedding::new(vertices, arcs, faces);
    d.validate()
        .map_err(|e| Error::internal(format!("extracted embedding is invalid: {e}")))?;
    Ok(d)
}

/// The whole triangulation as a directed embedding, for an orientation under
/// which every face is of type II. Face cycles are unnamed.
pub fn face_cycle_embedding(t: &Triangulation, tau: &ZOrientation) -> Result<DirectedEmbedding> {
    let c = classify(t, tau)?;
    if c.count_faces(Type::I) != 0 {
        return Err(Error::Precondition("every face must be of type II".into()));
    }
    let mut arcs: Vec<DirectedEdge> = c
        .arcs()
        .map(|p| DirectedEdge {
            from: t.name(p.from).clone(),
            to: t.name(p.to).clone(),
        })
        .collect();
    arcs.sort();
    let arc_index: HashMap<(&VertexId, &VertexId), usize> =
        arcs.iter().enumerate().map(|(i, a)| ((&a.from, &a.to), i)).collect();
    let mut faces = Vec::with_capacity(t.face_count());
    for f in t.faces() {
        let [x, y, z] = f.vertices().map(|v| t.name(v));
        let cycle = if arc_index.contains_key(&(x, y)) {
            [(x, y), (y, z), (z, x)]
        } else {
            [(x, z), (z, y), (y, x)]
        };
        let ids = cycle
            .iter()
            .map(|k| arc_index.get(k).copied().ok_or_else(|| Error::internal("face is not a directed triangle")))
            .collect::<Result<Vec<_>>>()?;
        faces.push(FaceCycle {
            name: None,
            arcs: least_rotated(&ids),
        });
    }
    Ok(DirectedEmbedding::new(t.names().iter().cloned(), arcs, faces))
}

/// Cone every face cycle from a new vertex and orient each zigzag so that it
/// runs along the arcs.
pub fn triangulate_embedding(d: &DirectedEmbedding) -> Result<(Triangulation, ZOrientation)> {
    d.validate()?;
    let mut faces: Vec<[String; 3]> = Vec::new();
    for (k, f) in d.faces.iter().enumerate() {
        let apex = d.face_vertex_name(k);
        if d.vertices.contains(apex.as_str()) {
            return Err(Error::InvalidEmbedding(format!(
                "face name {apex} collides with a vertex"
            )));
        }
        for &a in &f.arcs {
            let arc = &d.arcs[a];
            faces.push([apex.clone(), arc.from.to_string(), arc.to.to_string()]);
        }
    }
    let t = Triangulation::from_faces(faces)
        .map_err(|e| Error::InvalidEmbedding(format!("coned faces are not a triangulation: {e}")))?;
    if let Err(e) = t.ensure_valid() {
        return Err(Error::InvalidEmbedding(format!(
            "embedding is not a closed 2-cell embedding: {e}"
        )));
    }

    let arc_set: HashSet<(usize, usize)> = d
        .arcs
        .iter()
        .map(|a| Ok((t.index_of(a.from.as_str())?, t.index_of(a.to.as_str())?)))
        .collect::<Result<_>>()?;
    let follows = |z: &Zigzag| {
        z.passes().iter().all(|p| {
            let fwd = arc_set.contains(&(p.from, p.to));
            let rev = arc_set.contains(&(p.to, p.from));
            fwd || !rev
        })
    };
    let mut chosen = Vec::new();
    for z in enumerate_zigzags(&t)? {
        let rev = z.reversed();
        match (follows(&z), follows(&rev)) {
            (true, false) => chosen.push(z),
            (false, true) => chosen.push(rev),
            (a, b) => {
                return Err(Error::internal(format!(
                    "zigzag direction along arcs is not unique (forward {a}, backward {b})"
                )))
            }
        }
    }
    let tau = ZOrientation::from_zigzags(&t, &chosen)?;
    check_step_two_rule(d, &t, &tau)?;

    let c = classify(&t, &tau)?;
    if !homogeneous_with(&t, &tau, &c) {
        return Err(Error::internal("coned triangulation is not homogeneous"));
    }
    for &(from, to) in &arc_set {
        let e = crate::triangulation::Edge::new(from, to);
        if c.direction(&t, e).map(|p| (p.from, p.to)) != Some((from, to)) {
            return Err(Error::internal("an arc is not a type II edge in its own direction"));
        }
    }
    for k in 0..d.faces.len() {
        let v = t.index_of(&d.face_vertex_name(k))?;
        if c.vertex_types[v] != Type::I {
            return Err(Error::internal("a face vertex is not of type I"));
        }
    }
    Ok((t, tau))
}

/// Around a face cycle `e_1, ..., e_n` with apex `x`, the chosen zigzags must
/// contain `e_i, (v_{i+1} x), (x v_{i+2}), e_{i+2}` with indices mod `n`.
fn check_step_two_rule(d: &DirectedEmbedding, t: &Triangulation, tau: &ZOrientation) -> Result<()> {
    let mut windows: HashSet<[(usize, usize); 4]> = HashSet::new();
    for z in tau.zigzags() {
        let ps = z.passes();
        let n = ps.len();
        for i in 0..n {
            windows.insert(std::array::from_fn(|k| {
                let p = ps[(i + k) % n];
                (p.from, p.to)
            }));
        }
    }
    for (k, f) in d.faces.iter().enumerate() {
        let x = t.index_of(&d.face_vertex_name(k))?;
        let n = f.arcs.len();
        for i in 0..n {
            let ei = &d.arcs[f.arcs[i]];
            let ej = &d.arcs[f.arcs[(i + 2) % n]];
            let from_i = t.index_of(ei.from.as_str())?;
            let to_i = t.index_of(ei.to.as_str())?;
            let from_j = t.index_of(ej.from.as_str())?;
            let to_j = t.index_of(ej.to.as_str())?;
            let want = [(from_i, to_i), (to_i, x), (x, from_j), (from_j, to_j)];
            if !windows.contains(&want) {
                return Err(Error::internal(format!(
                    "no zigzag runs {}->{} then two steps along face {}",
                    ei.from,
                    ei.to,
                    d.face_vertex_name(k)
                )));
            }
        }
    }
    Ok(())
}

/// Whether coning the extracted embedding reproduces `(t, tau)` exactly.
pub fn round_trip_check(t: &Triangulation, tau: &ZOrientation) -> bool {
    let Ok(d) = extract_directed_embedding(t, tau) else {
        return false;
    };
    let Ok((t2, tau2)) = triangulate_embedding(&d) else {
        return false;
    };
    t2.names() == t.names() && t2.face_set() == t.face_set() && tau2 == *tau
}
