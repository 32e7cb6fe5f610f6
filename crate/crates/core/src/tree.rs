//! Labeled rooted trees and the bipyramid gluing they describe.
//!
//! The root carries an odd label `2k+1` and becomes `BP_{2k+1}`; every other
//! node carries an even label and becomes a two- or four-zigzag bipyramid that
//! is glued into its parent along consecutive base edges.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::generators::{bipyramid, bipyramid_canonical_zorientation};
use crate::surgery::{check_compatibility, glue, is_special, resolve_host_site, resolve_site, Operand, SiteKind, SpecialPair};
use crate::triangulation::{Triangulation, VertexId};
use crate::zigzag::{classify, enumerate_zigzags, homogeneous_with, Type, ZOrientation};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeSpec {
    pub labels: BTreeMap<String, usize>,
    pub edges: Vec<(String, String)>,
}

impl TreeSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, id: impl Into<String>, label: usize) -> Self {
        self.labels.insert(id.into(), label);
        self
    }

    pub fn edge(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    /// Parse `.tree` text: `n <id> <label>` and `a <id1> <id2>` records.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = TreeSpec::new();
        let mut adjacency = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["n", id, label] => {
                    let label = label
                        .parse()
                        .map_err(|_| Error::parse(line, format!("label {label:?} is not a natural number")))?;
                    if spec.labels.insert(id.to_string(), label).is_some() {
                        return Err(Error::parse(line, format!("node {id} declared twice")));
                    }
                }
                ["a", a, b] => adjacency.push((line, a.to_string(), b.to_string())),
                _ => return Err(Error::parse(line, format!("malformed record {:?}", body.trim()))),
            }
        }
        for (line, a, b) in adjacency {
            for id in [&a, &b] {
                if !spec.labels.contains_key(id) {
                    return Err(Error::parse(line, format!("unknown node {id}")));
                }
            }
            spec.edges.push((a, b));
        }
        Ok(spec)
    }

    pub fn to_tree(&self) -> String {
        let mut out = String::new();
        for (id, label) in &self.labels {
            out.push_str(&format!("n {id} {label}\n"));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("a {a} {b}\n"));
        }
        out
    }

    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == id || b == id).count()
    }

    /// The unique node with an odd label, if there is exactly one.
    pub fn root(&self) -> Option<&str> {
        let mut odd = self.labels.iter().filter(|(_, &l)| l % 2 == 1);
        match (odd.next(), odd.next()) {
            (Some((id, _)), None) => Some(id),
            _ => None,
        }
    }

    fn neighbors(&self, id: &str) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.as_str())
                } else if b == id {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeViolation {
    Empty,
    SelfLoop(String),
    RepeatedEdge(String, String),
    Disconnected,
    Cycle,
    RootCount(usize),
    RootTooSmall { label: usize },
    RootDegree { id: String, label: usize, degree: usize },
    InnerDegree { id: String, label: usize, degree: usize },
    LeafLabel { id: String, label: usize },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::Empty => write!(f, "tree has no nodes"),
            TreeViolation::SelfLoop(id) => write!(f, "node {id} is adjacent to itself"),
            TreeViolation::RepeatedEdge(a, b) => write!(f, "edge {a} {b} listed twice"),
            TreeViolation::Disconnected => write!(f, "tree is disconnected"),
            TreeViolation::Cycle => write!(f, "tree contains a cycle"),
            TreeViolation::RootCount(n) => write!(f, "expected exactly one odd label, found {n}"),
            TreeViolation::RootTooSmall { label } => write!(f, "root label {label} is below 3"),
            TreeViolation::RootDegree { id, label, degree } => {
                write!(f, "root {id} labeled {label} has degree {degree} > k")
            }
            TreeViolation::InnerDegree { id, label, degree } => {
                write!(f, "node {id} labeled {label} has degree {degree} > k")
            }
            TreeViolation::LeafLabel { id, label } => {
                write!(f, "leaf {id} labeled {label} needs an even label of at least 4")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeReport {
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Every violated shape or labeling rule.
pub fn validate_tree(spec: &TreeSpec) -> TreeReport {
    let mut violations = Vec::new();
    if spec.labels.is_empty() {
        violations.push(TreeViolation::Empty);
        return TreeReport { violations };
    }
    let mut seen = BTreeSet::new();
    for (a, b) in &spec.edges {
        if a == b {
            violations.push(TreeViolation::SelfLoop(a.clone()));
        } else if !seen.insert(if a < b { (a, b) } else { (b, a) }) {
            violations.push(TreeViolation::RepeatedEdge(a.clone(), b.clone()));
        }
    }
    // union-find over node ids
    let ids: Vec<&String> = spec.labels.keys().collect();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut cycle = false;
    for (a, b) in &spec.edges {
        let (Some(&x), Some(&y)) = (index.get(a.as_str()), index.get(b.as_str())) else {
            continue;
        };
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            cycle |= a != b;
        } else {
            parent[rx] = ry;
        }
    }
    let roots: BTreeSet<usize> = (0..ids.len()).map(|i| find(&mut parent, i)).collect();
    if roots.len() > 1 {
        violations.push(TreeViolation::Disconnected);
    }
    if cycle {
        violations.push(TreeViolation::Cycle);
    }

    let odd = spec.labels.values().filter(|&&l| l % 2 == 1).count();
    if odd != 1 {
        violations.push(TreeViolation::RootCount(odd));
    }
    let root = spec.root();
    for (id, &label) in &spec.labels {
        let degree = spec.degree(id);
        if Some(id.as_str()) == root {
            if label < 3 {
                violations.push(TreeViolation::RootTooSmall { label });
            }
            if (label - 1) / 2 < degree {
                violations.push(TreeViolation::RootDegree { id: id.clone(), label, degree });
            }
        } else if label % 2 == 1 {
            // already counted as a second odd label
        } else if degree <= 1 {
            if label < 4 {
                violations.push(TreeViolation::LeafLabel { id: id.clone(), label });
            }
        } else if label / 2 < degree {
            violations.push(TreeViolation::InnerDegree { id: id.clone(), label, degree });
        }
    }
    TreeReport { violations }
}

/// One gluing performed by [`tree_build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueStep {
    pub parent: String,
    pub child: String,
    /// `v1,v,v2` in the triangulation before the step.
    pub host_pair: String,
    /// `v1,v,v2` in the child's own bipyramid.
    pub piece_pair: String,
    pub piece_kind: SiteKind,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub zigzag_len: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildLog {
    pub root: String,
    pub steps: Vec<GlueStep>,
}

impl fmt::Display for BuildLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root {}", self.root)?;
        for s in &self.steps {
            writeln!(
                f,
                "glue {} into {}: host pair {}, piece pair {} ({}), V={} E={} F={}, zigzag length {}",
                s.child, s.parent, s.host_pair, s.piece_pair, s.piece_kind, s.vertices, s.edges, s.faces, s.zigzag_len
            )?;
        }
        Ok(())
    }
}

/// Namespaced bipyramid for tree node `id`.
fn node_bipyramid(id: &str, n: usize) -> Result<(Triangulation, ZOrientation)> {
    let t = bipyramid(n)?.prefixed(&format!("node{id}."))?;
    // prefixing keeps vertex order, so the canonical zigzags carry over
    let tau = ZOrientation::from_zigzags(&t, bipyramid_canonical_zorientation(n)?.zigzags())?;
    Ok((t, tau))
}

/// Base vertex `i` of `BP_n`, 1-based and cyclic.
fn base(i: usize, n: usize) -> String {
    ((i - 1) % n + 1).to_string()
}

struct NodeState {
    label: usize,
    /// Original vertex name to its current name; `None` once split.
    alias: HashMap<String, Option<VertexId>>,
    /// Base edges `i (i+1)` already cut.
    used: BTreeSet<usize>,
}

impl NodeState {
    fn current(&self, original: &str) -> Option<&VertexId> {
        self.alias.get(original).and_then(Option::as_ref)
    }
}

/// Glue bipyramids along the tree, root first. Parent pairs are the free
/// consecutive base edges with the lowest index that are still special; the
/// child uses its lowest-index pair whose edge directions match.
pub fn tree_build(spec: &TreeSpec) -> Result<(Triangulation, ZOrientation, BuildLog)> {
    let report = validate_tree(spec);
    if !report.is_valid() {
        return Err(Error::InvalidTree(report.to_string().trim_end().replace('\n', "; ")));
    }
    let root = spec.root().expect("validated").to_owned();
    let (mut t, mut tau) = node_bipyramid(&root, spec.labels[&root])?;
    let mut states: HashMap<String, NodeState> = HashMap::new();
    let fresh = |t: &Triangulation, label: usize| NodeState {
        label,
        alias: t
            .names()
            .iter()
            .map(|n| {
                let original = n.as_str().split_once('.').unwrap().1.to_owned();
                (original, Some(n.clone()))
            })
            .collect(),
        used: BTreeSet::new(),
    };
    states.insert(root.clone(), fresh(&t, spec.labels[&root]));
    let mut log = BuildLog {
        root: root.clone(),
        steps: Vec::new(),
    };

    let mut queue = VecDeque::from([root.clone()]);
    let mut visited = BTreeSet::from([root.clone()]);
    while let Some(u) = queue.pop_front() {
        for c in spec.neighbors(&u) {
            if !visited.insert(c.to_owned()) {
                continue;
            }
            queue.push_back(c.to_owned());

            let parent = &states[&u];
            let n = parent.label;
            let mut host = None;
            for i in 1..=n {
                let j = i % n + 1;
                if parent.used.contains(&i) || parent.used.contains(&j) {
                    continue;
                }
                let names = [base(i, n), base(i + 1, n), base(i + 2, n)];
                let (Some(x), Some(y), Some(z)) =
                    (parent.current(&names[0]), parent.current(&names[1]), parent.current(&names[2]))
                else {
                    continue;
                };
                let pair = SpecialPair::from_names(&t, x.as_str(), y.as_str(), z.as_str())?;
                if !is_special(&t, &tau, &pair)? {
                    continue;
                }
                if let Ok(site) = resolve_host_site(&t, &tau, &pair) {
                    host = Some((i, site));
                    break;
                }
            }
            let Some((hi, host_site)) = host else {
                return Err(Error::internal(format!("node {u} has no free special pair for child {c}")));
            };

            let m = spec.labels[c];
            let (pt, ptau) = node_bipyramid(c, m)?;
            let prefix = format!("node{c}.");
            let mut piece = None;
            'search: for i in 1..=m {
                let [x, y, z] = [i, i + 1, i + 2].map(|k| format!("{prefix}{}", base(k, m)));
                let forward = SpecialPair::from_names(&pt, &x, &y, &z)?;
                for pair in [forward, forward.swapped()] {
                    if let Ok(site) = resolve_site(&pt, &ptau, &pair) {
                        if check_compatibility(&host_site, &site) {
                            piece = Some((i, site));
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, piece_site)) = piece else {
                return Err(Error::internal(format!("child {c} has no compatible pair")));
            };

            let outcome = glue(
                Operand { t: &t, tau: &tau, site: &host_site },
                Operand { t: &pt, tau: &ptau, site: &piece_site },
            )?;
            log.steps.push(GlueStep {
                parent: u.clone(),
                child: c.to_owned(),
                host_pair: host_site.pair.render(&t),
                piece_pair: piece_site.pair.render(&pt),
                piece_kind: piece_site.kind,
                vertices: outcome.report.vertices,
                edges: outcome.report.edges,
                faces: outcome.report.faces,
                zigzag_len: outcome.report.zigzag_len,
            });

            for state in states.values_mut() {
                for cur in state.alias.values_mut() {
                    if let Some(name) = cur {
                        let idx = t.index_of(name.as_str())?;
                        *cur = outcome.host_renamer.vertex(idx).cloned();
                    }
                }
            }
            let mut child = fresh(&pt, m);
            for cur in child.alias.values_mut() {
                let idx = pt.index_of(cur.as_ref().unwrap().as_str())?;
                *cur = outcome.piece_renamer.vertex(idx).cloned();
            }
            child.used.extend([pi, pi % m + 1]);
            states.get_mut(&u).unwrap().used.extend([hi, hi % n + 1]);
            states.insert(c.to_owned(), child);
            t = outcome.triangulation;
            tau = outcome.orientation;
        }
    }

    let zs = enumerate_zigzags(&t)?;
    let c = classify(&t, &tau)?;
    let ok = t.euler_characteristic() == 2
        && zs.len() == 1
        && homogeneous_with(&t, &tau, &c)
        && c.count_vertices(Type::I) == 2 * spec.labels.len();
    if !ok {
        return Err(Error::internal("tree build failed its final verification"));
    }
    Ok((t, tau, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_four_six() -> TreeSpec {
        TreeSpec::new().node("r", 5).node("x", 4).node("y", 6).edge("r", "x").edge("r", "y")
    }

    #[test]
    fn parse_round_trip() {
        let spec = five_four_six();
        assert_eq!(TreeSpec::parse(&spec.to_tree()).unwrap(), spec);
        assert!(TreeSpec::parse("n r 5\na r q\n").is_err());
        assert!(TreeSpec::parse("n r five\n").is_err());
        assert!(TreeSpec::parse("n r 5\nn r 7\n").is_err());
    }

    #[test]
    fn labeling_rules() {
        assert!(validate_tree(&five_four_six()).is_valid());
        let small_root = TreeSpec::new().node("r", 3).node("x", 4).node("y", 4).edge("r", "x").edge("r", "y");
        assert!(matches!(validate_tree(&small_root).violations[..], [TreeViolation::RootDegree { .. }]));
        let leaf_two = TreeSpec::new().node("r", 3).node("x", 2).edge("r", "x");
        assert!(matches!(validate_tree(&leaf_two).violations[..], [TreeViolation::LeafLabel { .. }]));
        let two_roots = TreeSpec::new().node("r", 3).node("x", 5).edge("r", "x");
        assert!(!validate_tree(&two_roots).is_valid());
        let cyclic = five_four_six().node("z", 4).edge("x", "y");
        assert!(validate_tree(&cyclic).violations.contains(&TreeViolation::Cycle));
        assert!(validate_tree(&TreeSpec::new().node("r", 1)).violations.contains(&TreeViolation::RootTooSmall { label: 1 }));
    }

    #[test]
    fn single_node_tree_is_the_bipyramid() {
        let (t, _, log) = tree_build(&TreeSpec::new().node("0", 3)).unwrap();
        assert_eq!(t.vertex_count(), 5);
        assert!(log.steps.is_empty());
    }

    #[test]
    fn build_five_four_six() {
        let (t, _, log) = tree_build(&five_four_six()).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (17, 45, 30));
        assert_eq!(log.steps.len(), 2);
        let again = tree_build(&five_four_six()).unwrap();
        assert_eq!(again.0.to_tri(), t.to_tri());
    }
}
