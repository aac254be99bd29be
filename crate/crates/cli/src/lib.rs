//! The `youngwall` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use youngwall_core::{
    build_datum, compare_graphs, export, generate, ground_state, materialize, render_column, verify_axioms,
    AffineDatum, ClassicalWeight, CrystalGraph, CrystalVector, Error, Family, GraphFormat, LimitCrystal,
    PathCrystal, PerfectCrystal, RenderFormat, WallCrystal,
};

const OK: i32 = 0;
const FAILED: i32 = 1;
const USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "youngwall",
    version,
    about = "Perfect crystals, Young walls and crystal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a crystal graph.
    Gen(GenArgs),
    /// Check perfectness of B^(l), and the crystal axioms when a weight is given.
    Verify(GenArgs),
    /// Print the ground-state path of a dominant weight.
    GroundState(CrystalArgs),
    /// Compare the wall and tensor-path realizations of B(λ).
    Compare(GenArgs),
    /// Generate the top of B(∞).
    Binf(BinfArgs),
    /// Draw one column or one wall.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct CrystalArgs {
    /// Family token: A2even, Dtwist, A2odd, D1, B1 or C1.
    #[arg(long, value_parser = parse_family)]
    cartan: Family,
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    level: Option<i64>,
    /// Dominant weight as k0,..,kn in the fundamental weights.
    #[arg(long)]
    weight: Option<String>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "dot")]
    format: FormatArg,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    crystal: CrystalArgs,
    #[arg(long, value_enum, default_value = "wall")]
    realization: RealizationArg,
    #[arg(long, default_value_t = 5)]
    depth: usize,
    #[arg(long, default_value_t = 200_000)]
    max_nodes: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct BinfArgs {
    #[arg(long, value_parser = parse_family)]
    cartan: Family,
    #[arg(long)]
    rank: usize,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 200_000)]
    max_nodes: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    crystal: CrystalArgs,
    /// Coordinates of one column, in text order.
    #[arg(long, conflicts_with = "wall")]
    column: Option<String>,
    /// A wall in the form `λ ; c_{N-1} | … | c_0`.
    #[arg(long)]
    wall: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: RenderArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
    Tikz,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RealizationArg {
    Wall,
    Path,
    Binf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderArg {
    Text,
    Tikz,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.token()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dot => GraphFormat::Dot,
            FormatArg::Json => GraphFormat::Json,
            FormatArg::Tikz => GraphFormat::Tikz,
            FormatArg::Text => GraphFormat::Text,
        }
    }
}

/// A failed command: usage errors name the flag at fault.
#[derive(Debug)]
enum Failure {
    Usage { flag: &'static str, msg: String },
    Other(String),
}

impl Failure {
    fn usage(flag: &'static str, msg: impl ToString) -> Self {
        Failure::Usage {
            flag,
            msg: msg.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn datum(c: &CrystalArgs) -> Result<AffineDatum, Failure> {
    build_datum(c.cartan, c.rank).map_err(|e| Failure::usage("--rank", e))
}

fn weight(c: &CrystalArgs, d: &AffineDatum) -> Result<Option<ClassicalWeight>, Failure> {
    let Some(s) = &c.weight else { return Ok(None) };
    let w = d.parse_weight(s).map_err(|e| Failure::usage("--weight", e))?;
    if !w.is_dominant() {
        return Err(Failure::usage("--weight", Error::NotDominant(w.to_string())));
    }
    Ok(Some(w))
}

/// The level from `--level`, checked against `--weight` when both are given.
fn level(c: &CrystalArgs, d: &AffineDatum, w: Option<&ClassicalWeight>) -> Result<i64, Failure> {
    match (c.level, w) {
        (Some(l), Some(w)) if d.level(w) != l => Err(Failure::usage(
            "--level",
            format!("weight {w} has level {}, not {l}", d.level(w)),
        )),
        (Some(l), _) if l < 1 => Err(Failure::usage("--level", "the level must be positive")),
        (Some(l), _) => Ok(l),
        (None, Some(w)) => Ok(d.level(w)),
        (None, None) => Err(Failure::usage("--weight", "give --weight or --level")),
    }
}

fn walls(c: &CrystalArgs) -> Result<WallCrystal, Failure> {
    let d = datum(c)?;
    let w = weight(c, &d)?.ok_or_else(|| Failure::usage("--weight", "a highest weight is required"))?;
    let l = level(c, &d, Some(&w))?;
    WallCrystal::new(PerfectCrystal::new(d, l), &w).map_err(|e| Failure::usage("--weight", e))
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Other(e.to_string())),
    }
}

fn graph_error(e: Error) -> Failure {
    match e {
        Error::NodeLimit(_) => Failure::usage("--max-nodes", e),
        other => Failure::Other(other.to_string()),
    }
}

fn build_graph(a: &GenArgs) -> Result<CrystalGraph, Failure> {
    match a.realization {
        RealizationArg::Binf => {
            let d = datum(&a.crystal)?;
            generate(&LimitCrystal::new(d), a.depth, a.max_nodes).map_err(graph_error)
        }
        RealizationArg::Wall => generate(&walls(&a.crystal)?, a.depth, a.max_nodes).map_err(graph_error),
        RealizationArg::Path => {
            let p = PathCrystal::new(walls(&a.crystal)?, path_factors(a.depth));
            generate(&p, a.depth, a.max_nodes).map_err(graph_error)
        }
    }
}

/// Enough explicit factors that no vertex within `depth` reaches the tail.
fn path_factors(depth: usize) -> usize {
    depth + 2
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let g = build_graph(a)?;
    emit(out, a.output.out.as_ref(), &export(&g, a.output.format.into()))?;
    Ok(OK)
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let d = datum(&a.crystal)?;
    let w = weight(&a.crystal, &d)?;
    let l = level(&a.crystal, &d, w.as_ref())?;
    let crystal = PerfectCrystal::new(d, l);
    let rep = crystal.verify_perfect();
    let mut text = format!(
        "B^({l}) of {} rank {}: {} elements\n  connected: {}\n  unique maximal classical weight: {}\n  level bound: {}\n  minimal vectors: {}\n",
        a.crystal.cartan,
        a.crystal.rank,
        rep.size,
        yes(rep.connected),
        yes(rep.unique_maximal),
        yes(rep.level_bound),
        yes(rep.minimal_vectors)
    );
    for c in &rep.counterexamples {
        text.push_str(&format!("  counterexample: {c}\n"));
    }
    let mut ok = rep.passed();
    if let Some(w) = w {
        let wc = WallCrystal::new(crystal, &w).map_err(|e| Failure::usage("--weight", e))?;
        let g = generate(&wc, a.depth, a.max_nodes).map_err(graph_error)?;
        let ax = verify_axioms(&g);
        text.push_str(&format!(
            "B({w}) to depth {}: {} vertices, {} edges, axioms {}\n",
            a.depth,
            ax.vertices,
            ax.edges,
            yes(ax.passed())
        ));
        for f in &ax.failures {
            text.push_str(&format!("  {f}\n"));
        }
        ok &= ax.passed();
    }
    emit(out, a.output.out.as_ref(), &text)?;
    Ok(if ok { OK } else { FAILED })
}

fn cmd_ground_state(a: &CrystalArgs, out: &mut dyn Write) -> Outcome {
    let d = datum(a)?;
    let w = weight(a, &d)?.ok_or_else(|| Failure::usage("--weight", "a highest weight is required"))?;
    let l = level(a, &d, Some(&w))?;
    let crystal = PerfectCrystal::new(d, l);
    let g = ground_state(&crystal, &w).map_err(|e| Failure::usage("--weight", e))?;
    let mut text = format!("period {}\n", g.period);
    for (k, c) in g.columns.iter().enumerate() {
        text.push_str(&format!(
            "g{k} = {}  phi = {}  eps = {}\n",
            c.display(a.cartan),
            crystal.phi(c),
            crystal.epsilon(c)
        ));
    }
    emit(out, None, &text)?;
    Ok(OK)
}

fn cmd_compare(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let wc = walls(&a.crystal)?;
    let g = generate(&wc, a.depth, a.max_nodes).map_err(graph_error)?;
    let p =
        generate(&PathCrystal::new(wc, path_factors(a.depth)), a.depth, a.max_nodes).map_err(graph_error)?;
    match compare_graphs(&g, &p) {
        Ok(()) => {
            emit(out, None, "EQUAL\n")?;
            Ok(OK)
        }
        Err(why) => {
            emit(out, None, &format!("DIFFERENT: {why}\n"))?;
            Ok(FAILED)
        }
    }
}

fn cmd_binf(a: &BinfArgs, out: &mut dyn Write) -> Outcome {
    let d = build_datum(a.cartan, a.rank).map_err(|e| Failure::usage("--rank", e))?;
    let g = generate(&LimitCrystal::new(d), a.depth, a.max_nodes).map_err(graph_error)?;
    emit(out, a.output.out.as_ref(), &export(&g, a.output.format.into()))?;
    Ok(OK)
}

fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> Outcome {
    let format = match a.format {
        RenderArg::Text => RenderFormat::Text,
        RenderArg::Tikz => RenderFormat::Tikz,
    };
    let text = match (&a.column, &a.wall) {
        (Some(col), _) => {
            let d = datum(&a.crystal)?;
            let w = weight(&a.crystal, &d)?;
            let l = level(&a.crystal, &d, w.as_ref())?;
            let crystal = PerfectCrystal::new(d, l);
            let b = CrystalVector::parse(a.crystal.cartan, a.crystal.rank, col)
                .map_err(|e| Failure::usage("--column", e))?;
            if !crystal.is_member(&b) {
                return Err(Failure::usage("--column", format!("{col} is not in B^({l})")));
            }
            render_column(&materialize(&crystal, &b), format)
        }
        (None, Some(wall)) => {
            let wc = walls(&a.crystal)?;
            let y = wc.parse(wall).map_err(|e| Failure::usage("--wall", e))?;
            wc.render(&y, format)
        }
        (None, None) => return Err(Failure::usage("--column", "give --column or --wall")),
    };
    emit(out, a.out.as_ref(), &text)?;
    Ok(OK)
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let text = e.render().to_string();
            let _ = if code == OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::GroundState(a) => cmd_ground_state(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Binf(a) => cmd_binf(a, out),
        Command::Render(a) => cmd_render(a, out),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Usage { flag, msg }) => {
            let _ = writeln!(err, "error: invalid value for {flag}: {msg}");
            USAGE
        }
        Err(Failure::Other(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            FAILED
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
