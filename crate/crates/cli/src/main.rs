mod config;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use medial::catalog::{toroidal_map, CatalogKey, UniversalRow, FINITE_UNIVERSAL};
use medial::eisenstein::{scalar_subgroup, vertex_count, ResidueRing};
use medial::fpgroup::coset_enumeration;
use medial::graphsym::{
    automorphism_group, classify, gray_oracle, is_isomorphic, BipartiteCubicGraph, Classification, Verdict,
};
use medial::polytope::{build, Polytope, DEFAULT_MAX_DUALITY_ORDER, DIAMOND_CHECK_LIMIT};
use medial::Error;

use config::Settings;
use report::Row;

const OVERFLOW: u8 = 2;
const VALIDATION: u8 = 3;
const BAD_INPUT: u8 = 4;

/// Builds polytopes of type {3,q,3}, their medial layer graphs, and
/// classifies the graphs' symmetry.
#[derive(Parser, Debug)]
#[command(name = "medial", version)]
struct Cli {
    /// Coset table rows allowed during enumeration.
    #[arg(long, global = true)]
    max_cosets: Option<usize>,
    /// Elements allowed when closing a matrix group.
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Largest graph handed to the automorphism search.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    /// Seconds allowed for each automorphism search.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_budget: Option<f64>,
    /// Rows processed in parallel by `table1`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// File of `key = value` settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Fill the `seconds` column.
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
    Dot,
    Adj,
    Graph6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct an instance and report its group, faces and checks.
    Build { key: String },
    /// Classify the medial layer graph of a key, or a graph file.
    Classify {
        #[arg(required_unless_present = "graph")]
        key: Option<String>,
        /// Adjacency text (`id type: n1 n2 n3`) or graph6 (`.g6`) file.
        #[arg(long, conflicts_with = "key")]
        graph: Option<PathBuf>,
    },
    /// The medial layer graphs of the known finite universal polytopes.
    Table1 {
        /// Also classify the 6912-vertex row.
        #[arg(long)]
        extended: bool,
    },
    /// Identify the m = 3 Eisenstein medial graph with the cube graph.
    GrayVerify,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn bad_input(message: impl Into<String>) -> Self {
        Failure { code: BAD_INPUT, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure { code: VALIDATION, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow(_) => OVERFLOW,
            Error::Parse(_) | Error::Domain(_) => BAD_INPUT,
            Error::Inconsistency(_) | Error::Config(_) | Error::State(_) => VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::bad_input(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { BAD_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut s = Settings::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
        s.apply_config(&text).map_err(Failure::bad_input)?;
    }
    let positive = |name: &str, v: Option<usize>| match v {
        Some(0) => Err(Failure::bad_input(format!("--{name} must be positive"))),
        _ => Ok(v),
    };
    if let Some(v) = positive("max-cosets", cli.max_cosets)? {
        s.max_cosets = v;
    }
    if let Some(v) = positive("max-elements", cli.max_elements)? {
        s.max_elements = v;
    }
    if let Some(v) = positive("max-vertices", cli.max_vertices)? {
        s.max_vertices = v;
    }
    if let Some(v) = positive("jobs", cli.jobs)? {
        s.jobs = v;
    }
    if let Some(t) = cli.time_budget {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::bad_input("--time-budget must be positive"));
        }
        s.time_budget = Some(t);
    }
    s.timing |= cli.timing;
    Ok(s)
}

fn run(cli: Cli) -> Outcome {
    let s = settings(&cli)?;
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let code = match &cli.command {
        Command::Build { key } => cmd_build(&parse_key(key)?, &s, cli.format, &mut out)?,
        Command::Classify { key, graph } => {
            let (row, c) = match (key, graph) {
                (Some(k), _) => classify_key(&parse_key(k)?, &s, true)?,
                (None, Some(path)) => classify_file(path, &s)?,
                (None, None) => unreachable!("clap requires a key or --graph"),
            };
            write_rows(&mut out, cli.format.unwrap_or(Format::Csv), &[row])?;
            if let Some(c) = &c {
                eprintln!("{}", witnesses(c));
            }
            if c.is_none_or(|c| c.verdict.is_undecided()) {
                OVERFLOW
            } else {
                0
            }
        }
        Command::Table1 { extended } => {
            let rows = cmd_table1(&s, *extended);
            write_rows(&mut out, cli.format.unwrap_or(Format::Csv), &rows)?;
            if rows.iter().any(|r| r.verdict.starts_with("error")) {
                VALIDATION
            } else {
                0
            }
        }
        Command::GrayVerify => cmd_gray_verify(&s, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn parse_key(key: &str) -> Result<CatalogKey, Failure> {
    key.parse().map_err(|e: Error| Failure::bad_input(format!("bad key {key:?}: {e}")))
}

fn key_fields(key: &CatalogKey) -> (String, String) {
    match key {
        CatalogKey::Universal(s, t) => (format!("{},{}", s.s, s.t), format!("{},{}", t.s, t.t)),
        CatalogKey::Toroidal(p) => (format!("{},{}", p.s, p.t), String::new()),
        CatalogKey::Eisenstein { m, scalars } => {
            (m.to_string(), scalars.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
        }
        CatalogKey::Coxeter(ty) => (ty.to_string(), String::new()),
        CatalogKey::P1296 => (String::new(), String::new()),
    }
}

fn write_rows(out: &mut dyn Write, format: Format, rows: &[Row]) -> Result<(), Failure> {
    match format {
        Format::Csv => report::write_csv(out, rows)?,
        Format::Md => report::write_markdown(out, rows)?,
        other => return Err(Failure::bad_input(format!("format {other:?} does not apply to tables"))),
    }
    Ok(())
}

fn witnesses(c: &Classification) -> String {
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut s = format!(
        "vertex orbits: {}, edge orbits: {}, |Aut|: {}, stabilizer orders: {:?}",
        show(c.vertex_orbits),
        show(c.edge_orbits),
        c.aut_order.map_or("-".to_string(), |v| v.to_string()),
        c.stabilizer_orders
    );
    if let Verdict::Undecided { reason } = &c.verdict {
        s.push_str(&format!(", undecided: {reason}"));
    }
    s
}

/// Builds, then classifies unless `attempt` is false; overflow in the
/// search yields an undecided row rather than an error.
fn classify_key(key: &CatalogKey, s: &Settings, attempt: bool) -> Result<(Row, Option<Classification>), Failure> {
    let start = Instant::now();
    let (ks, kt) = key_fields(key);
    let p = build(key, &s.build_limits())?;
    let g = p.medial_layer_graph()?;
    let mut row = Row {
        key: key.to_string(),
        s: ks,
        t: kt,
        group_order: Some(p.order() as u128),
        n: Some(g.len()),
        ..Row::default()
    };
    let c = if attempt {
        classify_graph(&g, s)?
    } else {
        Classification::undecided(g.len(), "not attempted without --extended")
    };
    row.verdict = c.verdict.to_string();
    row.aut_order = c.aut_order;
    if s.timing {
        row.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok((row, Some(c)))
}

fn classify_graph(g: &BipartiteCubicGraph, s: &Settings) -> Result<Classification, Failure> {
    match automorphism_group(g, s.search_limits()) {
        Ok(aut) => Ok(classify(g, &aut)?),
        Err(Error::Overflow(reason)) => Ok(Classification::undecided(g.len(), reason)),
        Err(e) => Err(e.into()),
    }
}

fn read_graph(path: &Path) -> Result<BipartiteCubicGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
    let g6 = path.extension().is_some_and(|e| e == "g6") || text.trim_start().starts_with(">>graph6<<");
    let parsed =
        if g6 { BipartiteCubicGraph::from_graph6(&text) } else { BipartiteCubicGraph::from_adjacency_text(&text) };
    parsed.map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

fn classify_file(path: &Path, s: &Settings) -> Result<(Row, Option<Classification>), Failure> {
    let start = Instant::now();
    let g = read_graph(path)?;
    let c = classify_graph(&g, s)?;
    let row = Row {
        key: path.display().to_string(),
        n: Some(g.len()),
        verdict: c.verdict.to_string(),
        aut_order: c.aut_order,
        seconds: s.timing.then(|| start.elapsed().as_secs_f64()),
        ..Row::default()
    };
    Ok((row, Some(c)))
}

fn cmd_table1(s: &Settings, extended: bool) -> Vec<Row> {
    let run_row = |(i, &(st, tt, _)): (usize, &UniversalRow)| -> Row {
        let key = CatalogKey::universal(st, tt).expect("table keys are valid");
        let attempt = i != 5 || extended;
        match classify_key(&key, s, attempt) {
            Ok((row, _)) => row,
            Err(f) => {
                let (ks, kt) = key_fields(&key);
                let verdict =
                    if f.code == OVERFLOW { "undecided".to_string() } else { format!("error: {}", f.message) };
                Row { key: key.to_string(), s: ks, t: kt, verdict, ..Row::default() }
            }
        }
    };
    let rows: Vec<_> = FINITE_UNIVERSAL.iter().enumerate().collect();
    match rayon::ThreadPoolBuilder::new().num_threads(s.jobs).build() {
        Ok(pool) => pool.install(|| rows.into_par_iter().map(run_row).collect()),
        Err(_) => rows.into_iter().map(run_row).collect(),
    }
}

fn build_summary(p: &Polytope, key: &CatalogKey) -> Result<String, Failure> {
    let g = p.medial_layer_graph()?;
    let q = p.schlafli().entries()[1];
    if !p.has_section_cycle(&g) {
        return Err(Failure::validation(format!("no {}-cycle through the base edge of the medial graph", 2 * q)));
    }
    let [f1, f2] = p.face_counts();
    let mut lines = vec![
        format!("key: {key}"),
        format!("symmetry: {}, type {}", p.symmetry(), p.schlafli()),
        format!("group order: {}", p.order()),
        format!("1-faces: {f1}, 2-faces: {f2}, N: {}", g.len()),
    ];
    let diamond = if p.order() <= DIAMOND_CHECK_LIMIT {
        p.check_diamond()?;
        "diamond condition ok"
    } else {
        "diamond condition skipped (large group)"
    };
    lines.push(format!("checks: face stabilizers ok, trivalent bipartite ok, {}-cycle ok, {diamond}", 2 * q));
    if let CatalogKey::Eisenstein { m, scalars } = key {
        let ring = ResidueRing::new(*m)?;
        let gens: Vec<_> = scalars.iter().map(|a| ring.reduce(*a)).collect();
        let expected = vertex_count(m, &scalar_subgroup(&ring, &gens)?)?;
        if expected != g.len() as u64 {
            return Err(Failure::validation(format!("vertex count formula gives {expected}, graph has {}", g.len())));
        }
        lines.push(format!("vertex count formula: {expected} (matches)"));
    }
    let duality = match p.is_self_dual(DEFAULT_MAX_DUALITY_ORDER) {
        Ok(b) => b.to_string(),
        Err(Error::Overflow(_)) => "undecided (group too large)".to_string(),
        Err(e) => return Err(e.into()),
    };
    lines.push(format!("self-dual: {duality}"));
    Ok(lines.join("\n"))
}

fn cmd_build(key: &CatalogKey, s: &Settings, format: Option<Format>, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    if let CatalogKey::Toroidal(params) = key {
        let table = coset_enumeration(&toroidal_map(params)?, &[], s.max_cosets)?;
        if !table.is_complete() {
            return Err(Error::Overflow(format!("coset enumeration exceeded {} cosets", s.max_cosets)).into());
        }
        let [v, e, f] = params.face_counts();
        writeln!(out, "key: {key}")?;
        writeln!(out, "vertices: {v}, edges: {e}, faces: {f}")?;
        writeln!(
            out,
            "rotation group order: {}, full group order: {}",
            params.group_order() / 2,
            params.group_order()
        )?;
        writeln!(out, "enumerated group order: {}", table.index())?;
        if table.index() as u64 != params.group_order() {
            return Err(Failure::validation("enumerated order differs from 12v"));
        }
        return Ok(0);
    }
    let p = build(key, &s.build_limits())?;
    match format {
        None => writeln!(out, "{}", build_summary(&p, key)?)?,
        Some(Format::Dot) => write!(out, "{}", p.medial_layer_graph()?.to_dot())?,
        Some(Format::Adj) => write!(out, "{}", p.medial_layer_graph()?.to_adjacency_text())?,
        Some(Format::Graph6) => writeln!(out, "{}", p.medial_layer_graph()?.to_graph6())?,
        Some(f @ (Format::Csv | Format::Md)) => {
            let (ks, kt) = key_fields(key);
            let row = Row {
                key: key.to_string(),
                s: ks,
                t: kt,
                group_order: Some(p.order() as u128),
                n: Some(p.medial_vertex_count()),
                seconds: s.timing.then(|| start.elapsed().as_secs_f64()),
                ..Row::default()
            };
            write_rows(out, f, &[row])?;
        }
    }
    Ok(0)
}

fn cmd_gray_verify(s: &Settings, out: &mut dyn Write) -> Outcome {
    let key: CatalogKey = "eisenstein:m=3:A=".parse()?;
    let p = build(&key, &s.build_limits())?;
    let g = p.medial_layer_graph()?;
    let cube = gray_oracle();
    let limits = s.search_limits();
    let Some(w) = is_isomorphic(&g, &cube, limits)? else {
        return Err(Failure::validation("the medial graph is not isomorphic to the cube graph"));
    };
    if !(0..g.len()).all(|u| g.neighbors(u).all(|v| cube.graph().has_edge(w.apply(u), w.apply(v)))) {
        return Err(Failure::validation("the isomorphism witness does not preserve edges"));
    }
    let aut = automorphism_group(&cube, limits)?;
    let c = classify(&cube, &aut)?;
    let images: Vec<String> = w.images().iter().map(|x| x.to_string()).collect();
    let digest = hex::encode(Sha256::digest(images.join(",").as_bytes()));
    let order = p.order() as u128;
    writeln!(out, "medial graph of {key}: N = {}, group order {order}", g.len())?;
    writeln!(out, "isomorphic to the cubelet/column graph: true")?;
    writeln!(out, "witness sha256: {digest}")?;
    writeln!(out, "|Aut|: {}", aut.order())?;
    writeln!(out, "verdict: {}", c.verdict)?;
    writeln!(out, "index of the polytope group in Aut: {}", aut.order() / order)?;
    let ok = aut.order() == 1296
        && order == 324
        && aut.order() % order == 0
        && matches!(c.verdict, Verdict::Semisymmetric { .. });
    if !ok {
        return Err(Failure::validation("gray verification failed"));
    }
    Ok(0)
}
