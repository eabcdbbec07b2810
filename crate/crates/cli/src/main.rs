//! `ncdiv`: command-line front end for exact divergence, ribbon graph and
//! verification computations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncdiv_core::algebra::{AlgebraKind, GeneratorSet, Trace, Trace2};
use ncdiv_core::bracket::{derivation_from_ham, surface_bracket, DoubleBracket};
use ncdiv_core::calculus::Derivation;
use ncdiv_core::connection::{delta_k, div_k, DefaultConnection};
use ncdiv_core::experiment::symmetric_connection_experiment;
use ncdiv_core::io::{
    load_surface, make_nabla_c, make_nabla_w, read_json, ConnectionFile, ConnectionKind, ConnectionSpec,
    DerivationFile, DoubleBracketFile, PairingFile,
};
use ncdiv_core::report::{Check, Report};
use ncdiv_core::ribbon::{graph_operate, graph_validate, make_lk, GraphResult, GraphSpec, RibbonGraph};
use ncdiv_core::suites::{run_suite, SuiteOptions};
use ncdiv_core::syntax::{format_trace, format_trace2, format_tensor, parse_trace, trace2_lines};
use ncdiv_core::table1::run_table1;
use ncdiv_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "ncdiv", version, about = "Exact higher divergence maps on free algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    Tensor,
    Group,
}

impl From<AlgebraArg> for AlgebraKind {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Tensor => AlgebraKind::Tensor,
            AlgebraArg::Group => AlgebraKind::Group,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConnectionArg {
    #[value(name = "nabla_W")]
    NablaW,
    #[value(name = "nabla_C")]
    NablaC,
    #[value(name = "free_module")]
    FreeModule,
}

impl From<ConnectionArg> for ConnectionKind {
    fn from(c: ConnectionArg) -> Self {
        match c {
            ConnectionArg::NablaW => ConnectionKind::NablaW,
            ConnectionArg::NablaC => ConnectionKind::NablaC,
            ConnectionArg::FreeModule => ConnectionKind::FreeModule,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ActionArg {
    Default,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute the table of δ₂ values on the surface group and diff it against the golden data.
    Table1,
    /// Evaluate δ_k(x₁, …, x_k) with ψ the Hamiltonian flow of a double bracket.
    Delta {
        /// Cyclic words (or combinations) x₁ … x_k.
        #[arg(long, num_args = 1.., required = true)]
        words: Vec<String>,
        /// Scalar pairing on a tensor algebra; uses ∇_W.
        #[arg(long, conflicts_with = "double_bracket", requires = "generators")]
        pairing: Option<PathBuf>,
        /// Double bracket table; defaults to the bundled surface bracket.
        #[arg(long)]
        double_bracket: Option<PathBuf>,
        /// Comma-separated generator names.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
        #[arg(long, value_enum)]
        algebra: Option<AlgebraArg>,
        /// Connection file (nabla_W or nabla_C, optionally with a frame).
        #[arg(long)]
        connection: Option<PathBuf>,
    },
    /// Evaluate Div_k(f₁, …, f_k) for derivations read from files.
    Divk {
        #[arg(long)]
        connection: PathBuf,
        #[arg(long, value_enum, default_value_t = ActionArg::Default)]
        action: ActionArg,
        #[arg(long, num_args = 1.., required = true)]
        derivations: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        /// Defaults to group for nabla_C and tensor otherwise.
        #[arg(long, value_enum)]
        algebra: Option<AlgebraArg>,
    },
    /// Apply a ribbon graph operation to cyclic words of a tensor algebra.
    Ribbon {
        #[arg(long, conflicts_with = "lk", required_unless_present = "lk")]
        graph: Option<PathBuf>,
        /// Use the graph L_k.
        #[arg(long)]
        lk: Option<usize>,
        #[arg(long)]
        pairing: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        words: Vec<String>,
    },
    /// Run a seeded randomized verification suite.
    Verify {
        /// ribbon-equivalence, cocycle, mc, fuks, appendix, bialgebra or well-definedness.
        suite: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum)]
        connection: Option<ConnectionArg>,
    },
    /// Tally flip (anti)symmetry of δ_k on the surface group for random flat frames.
    ExperimentSymmetricConnection {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        frames: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the double bracket table of a surface group as JSON.
    Surface {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 4)]
        boundary: usize,
    },
    /// Validate a ribbon graph file and print its combinatorics.
    GraphInfo {
        #[arg(long)]
        graph: PathBuf,
    },
}

/// What a command produced: a pass/fail report or computed terms.
enum Outcome {
    Report(Report),
    Terms { command: String, label: String, lines: Vec<String> },
    Json(serde_json::Value, bool),
}

fn echo(args: &[String]) -> String {
    args.iter()
        .map(|a| if a.is_empty() || a.contains(char::is_whitespace) { format!("\"{a}\"") } else { a.clone() })
        .collect::<Vec<_>>()
        .join(" ")
}

fn gens_from(names: &[String], kind: AlgebraKind) -> Result<GeneratorSet> {
    GeneratorSet::new(kind, names.iter().map(|s| s.trim().to_string()).collect())
}

fn parse_words(words: &[String], gens: &GeneratorSet) -> Result<Vec<Trace>> {
    words.iter().map(|w| parse_trace(w, gens)).collect()
}

fn default_connection(path: Option<&Path>, gens: &GeneratorSet) -> Result<DefaultConnection> {
    let Some(p) = path else {
        return if gens.is_group() { make_nabla_c(gens) } else { make_nabla_w(gens) };
    };
    let file: ConnectionFile = read_json(p)?;
    match file.build(gens)? {
        ConnectionSpec::Default(c) => Ok(c),
        ConnectionSpec::Free(_) => Err(Error::Usage("delta needs a default-action connection".into())),
    }
}

fn delta_label(gens: &GeneratorSet, xs: &[Trace]) -> String {
    let args: Vec<String> = xs.iter().map(|x| format_trace(gens, x)).collect();
    format!("delta_{}({})", xs.len(), args.join(", "))
}

fn delta_with(
    pi: &impl DoubleBracket,
    gens: &GeneratorSet,
    conn: &DefaultConnection,
    words: &[String],
) -> Result<(String, Trace2)> {
    if pi.rank() != gens.rank() {
        return Err(Error::Usage("double bracket and generator set have different ranks".into()));
    }
    let xs = parse_words(words, gens)?;
    let v = delta_k(gens.kind, conn, |x| derivation_from_ham(pi, x), &xs)?;
    Ok((delta_label(gens, &xs), v))
}

fn cmd_delta(
    words: &[String],
    pairing: Option<&Path>,
    double_bracket: Option<&Path>,
    generators: Option<&[String]>,
    algebra: Option<AlgebraArg>,
    connection: Option<&Path>,
) -> Result<(GeneratorSet, String, Trace2)> {
    let (gens, label, v) = if let Some(p) = pairing {
        if algebra == Some(AlgebraArg::Group) {
            return Err(Error::Usage("a scalar pairing needs --algebra tensor".into()));
        }
        let gens = gens_from(generators.unwrap_or_default(), AlgebraKind::Tensor)?;
        let table = read_json::<PairingFile>(p)?.build(&gens)?;
        let conn = default_connection(connection, &gens)?;
        let (l, v) = delta_with(&table, &gens, &conn, words)?;
        (gens, l, v)
    } else if let Some(p) = double_bracket {
        let file: DoubleBracketFile = read_json(p)?;
        let gens = match (file.generator_set()?, generators) {
            (Some(g), None) => g,
            (_, Some(names)) => gens_from(names, algebra.map_or(AlgebraKind::Group, Into::into))?,
            (None, None) => return Err(Error::Usage("double bracket file has no generators; pass --generators".into())),
        };
        let table = file.build(&gens)?;
        let conn = default_connection(connection, &gens)?;
        let (l, v) = delta_with(&table, &gens, &conn, words)?;
        (gens, l, v)
    } else {
        if generators.is_some() || algebra.is_some() {
            return Err(Error::Usage("--generators/--algebra need --pairing or --double-bracket".into()));
        }
        let (gens, table) = load_surface()?;
        let conn = default_connection(connection, &gens)?;
        let (l, v) = delta_with(&table, &gens, &conn, words)?;
        (gens, l, v)
    };
    Ok((gens, label, v))
}

fn trace_lines(gens: &GeneratorSet, x: &Trace) -> Vec<String> {
    x.iter().map(|(w, c)| format!("{c} {}", gens.format_word(w.word()))).collect()
}

fn graph_lines(gens: &GeneratorSet, r: &GraphResult) -> Vec<String> {
    r.iter()
        .map(|(ws, c)| {
            if ws.is_empty() {
                c.to_string()
            } else {
                let parts: Vec<String> = ws.iter().map(|w| gens.format_word(w.word())).collect();
                format!("{c} {}", parts.join(" (x) "))
            }
        })
        .collect()
}

fn cmd_divk(
    connection: &Path,
    derivations: &[PathBuf],
    generators: &[String],
    algebra: Option<AlgebraArg>,
) -> Result<(String, Vec<String>)> {
    let file: ConnectionFile = read_json(connection)?;
    let kind = match (algebra, file.kind) {
        (Some(a), _) => a.into(),
        (None, ConnectionKind::NablaC) => AlgebraKind::Group,
        (None, _) => AlgebraKind::Tensor,
    };
    let gens = gens_from(generators, kind)?;
    let spec = file.build(&gens)?;
    let fs: Vec<Derivation> = derivations
        .iter()
        .map(|p| read_json::<DerivationFile>(p)?.build(&gens))
        .collect::<Result<_>>()?;
    let names: Vec<String> = derivations
        .iter()
        .zip(1..)
        .map(|(p, i)| {
            read_json::<DerivationFile>(p)
                .ok()
                .and_then(|f| f.name)
                .unwrap_or_else(|| format!("f{i}"))
        })
        .collect();
    let label = format!("Div_{}({})", fs.len(), names.join(", "));
    let lines = match spec {
        ConnectionSpec::Default(c) => trace2_lines(&gens, &div_k(kind, &c, &fs)?),
        ConnectionSpec::Free(c) => trace_lines(&gens, &c.div_k(&fs)?),
    };
    Ok((label, lines))
}

fn cmd_ribbon(
    graph: Option<&Path>,
    lk: Option<usize>,
    pairing: &Path,
    generators: &[String],
    words: &[String],
) -> Result<(String, Vec<String>)> {
    let gens = gens_from(generators, AlgebraKind::Tensor)?;
    let table = read_json::<PairingFile>(pairing)?.build(&gens)?;
    let (g, name) = match (graph, lk) {
        (Some(p), None) => (RibbonGraph::from_spec(&read_json::<GraphSpec>(p)?)?, "graph".to_string()),
        (None, Some(k)) => (make_lk(k)?, format!("L_{k}")),
        _ => return Err(Error::Usage("give exactly one of --graph and --lk".into())),
    };
    let xs = parse_words(words, &gens)?;
    let r = graph_operate(&g, &table, &xs)?;
    let args: Vec<String> = xs.iter().map(|x| format_trace(&gens, x)).collect();
    Ok((format!("{name}({})", args.join(", ")), graph_lines(&gens, &r)))
}

fn cmd_table1() -> Result<Report> {
    let (gens, results) = run_table1()?;
    let mut report = Report::new("table1", None);
    for r in &results {
        let label = format!("delta_2({}, {})", r.row.x, r.row.y);
        let mut check = Check::new(label.clone());
        if r.sampled() {
            let xs = r.row.x_samples.clone().unwrap_or_else(|| vec![r.row.x.clone()]);
            let ys = r.row.y_samples.clone().unwrap_or_else(|| vec![r.row.y.clone()]);
            let sample = if r.row.x_samples.is_some() { xs } else { ys };
            check = check.with_note(format!("spot-checked on the sample {{{}}}", sample.join(", ")));
        }
        for c in &r.cases {
            check.record(c.pass(), || {
                format!(
                    "delta_2({}, {}): expected {}; got {}",
                    c.x,
                    c.y,
                    format_trace2(&gens, &c.expected),
                    format_trace2(&gens, &c.got)
                )
            });
        }
        if !r.sampled() {
            if let Some(c) = r.cases.first() {
                report.value(label, format_trace2(&gens, &c.got));
            }
        }
        report.push(check);
    }
    Ok(report)
}

fn cmd_surface(genus: usize, boundary: usize) -> Result<serde_json::Value> {
    let (gens, table) = surface_bracket(genus, boundary)?;
    let values: serde_json::Map<String, serde_json::Value> = table
        .values()
        .iter()
        .map(|((i, j), v)| (format!("{},{}", gens.names[*i], gens.names[*j]), json!(format_tensor(&gens, v))))
        .collect();
    Ok(json!({ "kind": "group", "generators": gens.names, "values": values }))
}

fn cmd_graph_info(path: &Path) -> Result<(serde_json::Value, bool)> {
    let spec: GraphSpec = read_json(path)?;
    let d = graph_validate(&spec);
    Ok((serde_json::to_value(&d)?, d.valid))
}

fn run(cli: &Cli, argv: &[String]) -> Result<Outcome> {
    let command = echo(argv);
    Ok(match &cli.command {
        Command::Table1 => Outcome::Report(cmd_table1()?),
        Command::Delta { words, pairing, double_bracket, generators, algebra, connection } => {
            let (gens, label, v) = cmd_delta(
                words,
                pairing.as_deref(),
                double_bracket.as_deref(),
                generators.as_deref(),
                *algebra,
                connection.as_deref(),
            )?;
            Outcome::Terms { command, label, lines: trace2_lines(&gens, &v) }
        }
        Command::Divk { connection, action: ActionArg::Default, derivations, generators, algebra } => {
            let (label, lines) = cmd_divk(connection, derivations, generators, *algebra)?;
            Outcome::Terms { command, label, lines }
        }
        Command::Ribbon { graph, lk, pairing, generators, words } => {
            let (label, lines) = cmd_ribbon(graph.as_deref(), *lk, pairing, generators, words)?;
            Outcome::Terms { command, label, lines }
        }
        Command::Verify { suite, k, trials, seed, rank, connection } => {
            let mut opts = SuiteOptions::new(*trials, *seed);
            opts.k = *k;
            opts.rank = *rank;
            opts.connection = connection.map(Into::into);
            Outcome::Report(run_suite(suite, &opts)?)
        }
        Command::ExperimentSymmetricConnection { k, frames, seed } => {
            Outcome::Report(symmetric_connection_experiment(*k, *frames, *seed)?)
        }
        Command::Surface { genus, boundary } => Outcome::Json(cmd_surface(*genus, *boundary)?, true),
        Command::GraphInfo { graph } => {
            let (v, ok) = cmd_graph_info(graph)?;
            Outcome::Json(v, ok)
        }
    })
}

fn render(outcome: &Outcome, format: Format) -> (String, bool) {
    match outcome {
        Outcome::Report(r) => (if format == Format::Json { r.to_json() } else { r.to_text() }, r.pass),
        Outcome::Terms { command, label, lines } => {
            let text = match format {
                Format::Json => {
                    let v = json!({ "command": command, "label": label, "terms": lines });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                Format::Text => {
                    let mut s = format!("# {command}\n# {label}\n");
                    if lines.is_empty() {
                        s.push_str("0\n");
                    }
                    for l in lines {
                        s.push_str(l);
                        s.push('\n');
                    }
                    s
                }
            };
            (text, true)
        }
        Outcome::Json(v, ok) => {
            let text = match (format, v.get("valid")) {
                (Format::Text, Some(_)) => graph_info_text(v),
                _ => serde_json::to_string_pretty(v).expect("serializes") + "\n",
            };
            (text, *ok)
        }
    }
}

fn graph_info_text(v: &serde_json::Value) -> String {
    let mut s = String::new();
    for key in ["valid", "vertices", "edges", "boundaries", "valencies"] {
        s.push_str(&format!("{key}: {}\n", v[key]));
    }
    if let Some(ps) = v["problems"].as_array() {
        for p in ps {
            s.push_str(&format!("problem: {}\n", p.as_str().unwrap_or_default()));
        }
    }
    s
}

/// Command-line arguments without the output format, for the echo line.
fn strip_format(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--format" {
            skip = true;
        } else if !a.starts_with("--format=") {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv = strip_format(std::env::args().skip(1));
    match run(&cli, &argv) {
        Ok(outcome) => {
            let (text, ok) = render(&outcome, cli.format);
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
