//! Command-line front end. [`dispatch`] does all the work and returns the exit
//! status with the text to print, so the binary stays a thin shell.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::eulerian::{extract_directed_embedding, triangulate_embedding, DirectedEmbedding};
use crate::generators::{bipyramid, platonic, Platonic};
use crate::surgery::{
    check_compatibility, find_special_pairs, glue, resolve_host_site, resolve_site, Operand, SpecialPair,
};
use crate::tree::{tree_build, TreeSpec};
use crate::triangulation::Triangulation;
use crate::zigzag::{
    classify, enumerate_zigzags, find_homogeneous_orientation, homogeneous_with, make_z_orientation, parse_bits,
    Classification, Type, ZOrientation, Zigzag,
};

#[derive(Parser, Debug)]
#[command(name = "trizig", version, about = "Zigzags and homogeneous triangulations of closed surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a bipyramid or a Platonic triangulation.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Census, classification, homogeneity and special pairs.
    Analyze {
        file: PathBuf,
        /// One bit per canonical zigzag; 1 reverses it. Defaults to all zeros.
        #[arg(long)]
        zorient: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Move between triangulations and directed Eulerian embeddings.
    Convert {
        /// Triangulation to reduce to its type II digraph.
        #[arg(long, conflicts_with = "triangulate", required_unless_present = "triangulate")]
        extract: Option<PathBuf>,
        /// Embedding (.eul) to cone into a triangulation.
        #[arg(long)]
        triangulate: Option<PathBuf>,
        #[arg(long, requires = "extract")]
        zorient: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Glue a two- or four-zigzag piece into a z-knotted host.
    Glue {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        piece: PathBuf,
        /// `u,v,w` for the edges `uv` and `vw` of the host.
        #[arg(long)]
        host_pair: String,
        /// `u,v,w` for the edges `uv` and `vw` of the piece.
        #[arg(long)]
        piece_pair: String,
        /// Defaults to the first homogeneous orientation.
        #[arg(long)]
        host_zorient: Option<String>,
        #[arg(long)]
        piece_zorient: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the triangulation described by a labeled tree.
    BuildTree {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check surface validity, and homogeneity when an orientation is given.
    Verify {
        file: PathBuf,
        #[arg(long)]
        zorient: Option<String>,
    },
    /// Graphviz DOT; with an orientation, type II edges are drawn directed.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        zorient: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    Bipyramid {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Platonic {
        #[arg(long)]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

/// Run one command line (`argv[0]` is the program name). Returns the exit
/// status (0 ok, 1 domain error, 2 usage error) and the text to print.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match run(cli.command) {
        Ok(text) => (0, text),
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load_tri(path: &Path) -> Result<Triangulation> {
    let t = Triangulation::parse(&read(path)?)?;
    t.ensure_valid()?;
    Ok(t)
}

fn orientation(t: &Triangulation, bits: Option<&str>) -> Result<ZOrientation> {
    match bits {
        Some(b) => make_z_orientation(t, &parse_bits(b)?),
        None => make_z_orientation(t, &vec![false; enumerate_zigzags(t)?.len()]),
    }
}

fn homogeneous_orientation(t: &Triangulation, bits: Option<&str>) -> Result<ZOrientation> {
    match bits {
        Some(_) => orientation(t, bits),
        None => find_homogeneous_orientation(t)?.ok_or(Error::NotHomogeneous),
    }
}

/// Write `body` to `output`, returning `summary`; without an output file the
/// body is returned with the summary appended as `#` comments.
fn emit(body: &str, summary: &str, output: Option<&Path>) -> Result<String> {
    match output {
        Some(path) => {
            fs::write(path, body)?;
            Ok(summary.to_owned())
        }
        None => {
            let mut out = body.to_owned();
            for line in summary.lines() {
                let _ = writeln!(out, "# {line}");
            }
            Ok(out)
        }
    }
}

fn zigzag_summary(t: &Triangulation) -> Result<String> {
    let k = enumerate_zigzags(t)?.len();
    Ok(if k == 1 {
        "zigzags: 1 (z-knotted)\n".to_owned()
    } else {
        format!("zigzags: {k}\n")
    })
}

fn split_pair(s: &str) -> Result<[String; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [u, v, w] if !u.is_empty() && !v.is_empty() && !w.is_empty() => {
            Ok([u.to_string(), v.to_string(), w.to_string()])
        }
        _ => Err(Error::Precondition(format!("pair {s:?} must look like u,v,w"))),
    }
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Generate { family } => {
            let (t, output) = match family {
                Family::Bipyramid { n, output } => (bipyramid(n)?, output),
                Family::Platonic { name, output } => (platonic(name.parse::<Platonic>()?)?, output),
            };
            emit(&t.to_tri(), &zigzag_summary(&t)?, output.as_deref())
        }
        Command::Analyze { file, zorient, format } => {
            let t = load_tri(&file)?;
            let tau = orientation(&t, zorient.as_deref())?;
            analyze_report(&t, &tau, format)
        }
        Command::Convert {
            extract,
            triangulate,
            zorient,
            output,
        } => {
            if let Some(path) = extract {
                let t = load_tri(&path)?;
                let tau = orientation(&t, zorient.as_deref())?;
                let d = extract_directed_embedding(&t, &tau)?;
                let summary = format!(
                    "vertices: {}\narcs: {}\nface cycles: {}\n",
                    d.vertices.len(),
                    d.arcs.len(),
                    d.faces.len()
                );
                emit(&d.to_eul(), &summary, output.as_deref())
            } else {
                let path = triangulate.expect("clap requires one of the two");
                let d = DirectedEmbedding::parse(&read(&path)?)?;
                let (t, tau) = triangulate_embedding(&d)?;
                let summary = format!("{}z-orientation: {}\n", zigzag_summary(&t)?, tau.bit_string());
                emit(&t.to_tri(), &summary, output.as_deref())
            }
        }
        Command::Glue {
            host,
            piece,
            host_pair,
            piece_pair,
            host_zorient,
            piece_zorient,
            output,
        } => {
            let h = load_tri(&host)?.prefixed("L.")?;
            let p = load_tri(&piece)?.prefixed("R.")?;
            let htau = homogeneous_orientation(&h, host_zorient.as_deref())?;
            let ptau = homogeneous_orientation(&p, piece_zorient.as_deref())?;
            let [a, b, c] = split_pair(&host_pair)?.map(|s| format!("L.{s}"));
            let hsite = resolve_host_site(&h, &htau, &SpecialPair::from_names(&h, &a, &b, &c)?)?;
            let [a, b, c] = split_pair(&piece_pair)?.map(|s| format!("R.{s}"));
            let forward = SpecialPair::from_names(&p, &a, &b, &c)?;
            let mut psite = resolve_site(&p, &ptau, &forward)?;
            if !check_compatibility(&hsite, &psite) {
                psite = resolve_site(&p, &ptau, &forward.swapped())?;
            }
            let out = glue(
                Operand { t: &h, tau: &htau, site: &hsite },
                Operand { t: &p, tau: &ptau, site: &psite },
            )?;
            let summary = format!(
                "host pair: {}\npiece pair: {} ({})\n{}z-orientation: {}\n",
                hsite.pair.render(&h),
                psite.pair.render(&p),
                psite.kind,
                out.report,
                out.orientation.bit_string()
            );
            emit(&out.triangulation.to_tri(), &summary, output.as_deref())
        }
        Command::BuildTree { file, output } => {
            let spec = TreeSpec::parse(&read(&file)?)?;
            let (t, tau, log) = tree_build(&spec)?;
            let summary = format!(
                "{log}vertices: {}\nedges: {}\nfaces: {}\neuler characteristic: {}\n{}z-orientation: {}\nz-knotted: yes; homogeneous: yes\n",
                t.vertex_count(),
                t.edge_count(),
                t.face_count(),
                t.euler_characteristic(),
                zigzag_summary(&t)?,
                tau.bit_string()
            );
            emit(&t.to_tri(), &summary, output.as_deref())
        }
        Command::Verify { file, zorient } => {
            let t = Triangulation::parse(&read(&file)?)?;
            let report = t.validate();
            if !report.is_valid() {
                return Err(Error::InvalidSurface(report));
            }
            let mut out = String::from("valid closed surface triangulation\n");
            let _ = writeln!(out, "euler characteristic: {}", t.euler_characteristic());
            out.push_str(&zigzag_summary(&t)?);
            if let Some(bits) = zorient {
                let tau = orientation(&t, Some(&bits))?;
                let c = classify(&t, &tau)?;
                let yes = homogeneous_with(&t, &tau, &c);
                let _ = writeln!(out, "homogeneous: {}", if yes { "yes" } else { "no" });
            }
            Ok(out)
        }
        Command::ExportDot { file, zorient, output } => {
            let t = load_tri(&file)?;
            let c = match zorient {
                Some(bits) => Some(classify(&t, &orientation(&t, Some(&bits))?)?),
                None => None,
            };
            let dot = export_dot(&t, c.as_ref());
            match output {
                Some(path) => {
                    fs::write(path, &dot)?;
                    Ok(String::new())
                }
                None => Ok(dot),
            }
        }
    }
}

enum Line {
    Field(&'static str, String),
    Row(&'static str, Vec<String>),
}

fn yes_no(b: bool) -> String {
    (if b { "yes" } else { "no" }).to_owned()
}

fn census(zs: &[Zigzag]) -> String {
    let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
    for z in zs {
        *by_len.entry(z.len()).or_default() += 1;
    }
    by_len
        .iter()
        .map(|(len, k)| format!("{k} zigzag{} × length {len}", if *k == 1 { "" } else { "s" }))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Plain-text or TSV report on `t` under `tau`.
pub fn analyze_report(t: &Triangulation, tau: &ZOrientation, format: Format) -> Result<String> {
    let zs = enumerate_zigzags(t)?;
    let c = classify(t, tau)?;
    let homogeneous = homogeneous_with(t, tau, &c);
    let mut lines = vec![
        Line::Field("vertices", t.vertex_count().to_string()),
        Line::Field("edges", t.edge_count().to_string()),
        Line::Field("faces", t.face_count().to_string()),
        Line::Field("euler characteristic", t.euler_characteristic().to_string()),
        Line::Field("census", census(&zs)),
        Line::Field("z-orientation", tau.bit_string()),
    ];
    for (i, z) in tau.zigzags().iter().enumerate() {
        let mut row = vec![i.to_string(), z.len().to_string()];
        row.extend(z.render(t).split(' ').map(str::to_owned));
        lines.push(Line::Row("z", row));
    }
    let counts = |n1: usize, n2: usize| format!("{n1} type I, {n2} type II");
    lines.push(Line::Field("edge types", counts(c.count_edges(Type::I), c.count_edges(Type::II))));
    lines.push(Line::Field("vertex types", counts(c.count_vertices(Type::I), c.count_vertices(Type::II))));
    lines.push(Line::Field("face types", counts(c.count_faces(Type::I), c.count_faces(Type::II))));
    let faces = if c.count_faces(Type::II) == 0 {
        "all faces type I"
    } else if c.count_faces(Type::I) == 0 {
        "all faces type II"
    } else {
        "mixed"
    };
    lines.push(Line::Field("face summary", faces.to_owned()));
    for e in t.edges() {
        let (a, b) = t.edge_names(*e);
        let mut row = vec![a.to_string(), b.to_string()];
        match c.direction(t, *e) {
            Some(p) => row.extend(["II".into(), t.name(p.from).to_string(), t.name(p.to).to_string()]),
            None => row.push("I".into()),
        }
        lines.push(Line::Row("E", row));
    }
    for v in 0..t.vertex_count() {
        lines.push(Line::Row("V", vec![t.name(v).to_string(), c.vertex_types[v].to_string()]));
    }
    for (f, ty) in t.faces().iter().zip(&c.face_types) {
        let mut row: Vec<String> = t.face_names(f).iter().map(|n| n.to_string()).collect();
        row.push(ty.to_string());
        lines.push(Line::Row("F", row));
    }
    lines.push(Line::Field(
        "verdict",
        format!("z-knotted: {}; homogeneous: {}", yes_no(zs.len() == 1), yes_no(homogeneous)),
    ));
    for v in 0..t.vertex_count() {
        if c.vertex_types[v] == Type::II {
            let (i, o) = c.balance(v);
            lines.push(Line::Row("B", vec![t.name(v).to_string(), i.to_string(), o.to_string()]));
        }
    }
    if zs.len() == 1 && homogeneous {
        let pairs = find_special_pairs(t, tau)?;
        lines.push(Line::Field("special pairs", pairs.len().to_string()));
        for p in pairs {
            lines.push(Line::Row("P", vec![p.render(t)]));
        }
    } else {
        lines.push(Line::Field("special pairs", "n/a".into()));
    }

    let mut out = String::new();
    for line in lines {
        let _ = match (line, format) {
            (Line::Field(k, v), Format::Text) => writeln!(out, "{k}: {v}"),
            (Line::Field(k, v), Format::Tsv) => writeln!(out, "{k}\t{v}"),
            (Line::Row(tag, r), Format::Text) => writeln!(out, "{tag} {}", r.join(" ")),
            (Line::Row(tag, r), Format::Tsv) => writeln!(out, "{tag}\t{}", r.join("\t")),
        };
    }
    Ok(out)
}

/// Graphviz text. Without a classification every edge is plain; with one,
/// type II edges point along their direction in bold.
pub fn export_dot(t: &Triangulation, c: Option<&Classification>) -> String {
    let mut out = String::new();
    let (kind, arrow) = if c.is_some() { ("digraph", "->") } else { ("graph", "--") };
    let _ = writeln!(out, "{kind} triangulation {{");
    for n in t.names() {
        let _ = writeln!(out, "  \"{n}\";");
    }
    for &e in t.edges() {
        let (a, b) = t.edge_names(e);
        match c {
            None => {
                let _ = writeln!(out, "  \"{a}\" {arrow} \"{b}\";");
            }
            Some(c) => match c.direction(t, e) {
                Some(p) => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" {arrow} \"{}\" [style=bold];",
                        t.name(p.from),
                        t.name(p.to)
                    );
                }
                None => {
                    let _ = writeln!(out, "  \"{a}\" {arrow} \"{b}\" [dir=none];");
                }
            },
        }
    }
    out.push_str("}\n");
    out
}
