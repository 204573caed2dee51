//! The `eqpart` command-line tool. Every command prints one JSON document on
//! standard output; rationals are `"p/q"` strings.

mod files;
mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::distributions::{
    code_distribution, fiber_distribution, lattice_distribution, pcube_distribution,
    rows_from_polynomials, subcube_distribution, sum_over_set, Distribution,
};
use crate::drg::{intersection_array, p_polynomials};
use crate::equitable::{
    check_completely_regular, distance_coloring, lattice_coloring, lattice_map, quotient_matrix,
    verify_structure, Coloring, PerfectStructure,
};
use crate::error::Error;
use crate::graphs::{
    binary_hamming_code, direct_product_with_budget, extended_binary_hamming_code,
    restricted_alphabet_code, subcube_code, Graph, GraphSpec, Parity, VertexFunction,
    DEFAULT_VERTEX_BUDGET,
};
use crate::localdist::{
    extract_local, reconstruct_local_from_code, tensor_distribution, tensor_structure_over,
    RearrangedDistribution,
};
use crate::oracle::{brute_distribution, brute_pair_distribution};
use crate::ratmat::{int, RatMatrix, Rational};

use files::{
    matrix_from_cells, parse_row, read_json, CodeFile, ColoringFile, MatrixFile, StructureFile,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("formula and oracle disagree: {0}")]
    OracleMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "eqpart", version, about = "Exact weight distributions of perfect colorings")]
pub struct Cli {
    /// Refuse to build graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_BUDGET)]
    vertex_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit graphs, codes and colorings as JSON files.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Quotient matrix of a perfect coloring.
    Quotient {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Check A f = f S.
    Verify(VerifyArgs),
    /// Check that a code is completely regular.
    CrcCheck {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        code: PathBuf,
    },
    /// Weight distributions from closed formulas.
    #[command(subcommand)]
    Distrib(DistribCommand),
    /// Distributions over products of two graphs.
    #[command(subcommand)]
    Local(LocalCommand),
    /// Brute-force weight distribution.
    Oracle(OracleArgs),
    /// Run the worked examples.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Explicit edge list of a graph.
    Graph(GenGraphArgs),
    /// Vertex set of a standard code, together with its graph.
    Code(GenCodeArgs),
    /// A perfect coloring, together with its graph.
    Coloring(GenColoringArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GraphFamily {
    Hamming,
    Johnson,
    Halved,
}

#[derive(Args, Debug)]
struct GenGraphArgs {
    /// Expand this graph file instead of a family.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long)]
    family: Option<GraphFamily>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    q: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "even")]
    parity: ParityArg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CodeFamily {
    /// Binary Hamming code of length 2^r - 1.
    Hamming,
    /// Extended binary Hamming code of length 2^r.
    ExtendedHamming,
    /// Zero class of the lattice map on H(mk, q).
    Lattice,
    /// An m-dimensional subcube of H(m+k, q).
    Subcube,
    /// The words of H(n, q) over the alphabet {0, .., p-1}.
    Pcube,
}

#[derive(Args, Debug)]
struct GenCodeArgs {
    #[arg(long)]
    family: CodeFamily,
    #[arg(short)]
    r: Option<usize>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    p: Option<usize>,
    #[arg(short)]
    q: Option<usize>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ColoringFamily {
    /// Distance coloring of a code (or of --vertex).
    Distance,
    /// Lattice coloring of H(mk, q).
    Lattice,
    /// All vertices in one color.
    Trivial,
    /// Every vertex in its own color.
    Discrete,
}

#[derive(Args, Debug)]
struct GenColoringArgs {
    #[arg(long)]
    family: ColoringFamily,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long)]
    vertex: Option<usize>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    q: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Structure file {"graph"|"matrix", "f", "s"}.
    #[arg(long, conflicts_with_all = ["coloring", "graph"])]
    structure: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, requires = "s")]
    coloring: Option<PathBuf>,
    #[arg(long)]
    s: Option<PathBuf>,
}

/// How the function `f` and its parameters are supplied.
#[derive(Args, Debug, Default)]
struct FArgs {
    /// Perfect coloring used as f; S is its quotient matrix.
    #[arg(long, conflicts_with_all = ["structure", "s"])]
    coloring: Option<PathBuf>,
    /// Perfect structure file {"f", "s"} used as f.
    #[arg(long, conflicts_with = "s")]
    structure: Option<PathBuf>,
    /// Parameter matrix S alone, with --f0 for the first row.
    #[arg(long)]
    s: Option<PathBuf>,
    /// First row as a JSON array, e.g. '["1","0"]'.
    #[arg(long, requires = "s", allow_hyphen_values = true)]
    f0: Option<String>,
    /// Fail unless the formula agrees with brute force.
    #[arg(long)]
    verify_oracle: bool,
}

#[derive(Subcommand, Debug)]
enum DistribCommand {
    /// Around a single vertex of a distance-regular graph.
    Vertex {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Color j of the center; row w is e_j Π_w(S).
        #[arg(long, conflicts_with = "vertex")]
        color: Option<usize>,
        /// Center vertex; its value f(v) is the first row.
        #[arg(long)]
        vertex: Option<usize>,
        #[command(flatten)]
        f: FArgs,
    },
    /// Around a completely regular code.
    Code {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        f: FArgs,
    },
    /// Around the zero class of the lattice map on H(mk, q).
    Lattice {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        q: usize,
        #[command(flatten)]
        f: FArgs,
    },
    /// Around a fiber V' x {o} of G' x G'', or an m-subcube of H(m+k, q).
    Fiber {
        /// G' (any regular graph).
        #[arg(long, requires = "graph", conflicts_with_all = ["m", "k", "q"])]
        left: Option<PathBuf>,
        /// G'' (distance-regular).
        #[arg(long)]
        graph: Option<PathBuf>,
        /// The vertex o of G''.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        #[arg(short, requires_all = ["k", "q"])]
        m: Option<usize>,
        #[arg(short)]
        k: Option<usize>,
        #[arg(short)]
        q: Option<usize>,
        #[command(flatten)]
        f: FArgs,
    },
    /// Around the copy of H(n, p) inside H(n, q).
    Pcube {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        #[command(flatten)]
        f: FArgs,
    },
}

/// The two factors `G'` and `G''` and a completely regular code in each.
#[derive(Args, Debug)]
struct FactorArgs {
    /// G'
    #[arg(long)]
    left: PathBuf,
    /// G''
    #[arg(long)]
    graph: PathBuf,
    /// Code in G' (default: vertex 0).
    #[arg(long)]
    left_code: Option<PathBuf>,
    /// Code in G'' (default: vertex 0).
    #[arg(long)]
    code: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum LocalCommand {
    /// Parameters of the product of the two distance colorings.
    Params {
        #[command(flatten)]
        factors: FactorArgs,
    },
    /// h and its rearrangement h* for a perfect structure on G' x G''.
    Distrib {
        #[command(flatten)]
        factors: FactorArgs,
        #[command(flatten)]
        f: FArgs,
    },
    /// Rebuild h* from its first row.
    Reconstruct {
        #[command(flatten)]
        factors: FactorArgs,
        #[command(flatten)]
        f: FArgs,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, conflicts_with = "vertex")]
    code: Option<PathBuf>,
    #[arg(long)]
    vertex: Option<usize>,
    #[arg(long, conflicts_with = "structure")]
    coloring: Option<PathBuf>,
    #[arg(long)]
    structure: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let ctx = Ctx {
        budget: cli.vertex_budget,
    };
    match dispatch(&ctx, &cli.command) {
        Ok(report) => {
            let _ = writeln!(out, "{}", report.value);
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

struct Report {
    value: Value,
    ok: bool,
}

impl From<Value> for Report {
    fn from(value: Value) -> Self {
        Report { value, ok: true }
    }
}

struct Ctx {
    budget: usize,
}

impl Ctx {
    fn build(&self, spec: &GraphSpec) -> CliResult<Graph> {
        Ok(spec.build(self.budget)?)
    }

    /// `--graph` if given, otherwise the first graph embedded in an input file.
    fn graph(&self, path: Option<&Path>, embedded: &[Option<&GraphSpec>]) -> CliResult<Graph> {
        let spec = match path {
            Some(p) => read_json::<GraphSpec>(p)?,
            None => embedded
                .iter()
                .flatten()
                .next()
                .map(|s| (*s).clone())
                .ok_or_else(|| usage("no graph given: pass --graph or embed one in an input file"))?,
        };
        self.build(&spec)
    }

    fn hamming(&self, n: usize, q: usize) -> CliResult<Graph> {
        self.build(&GraphSpec::hamming(n, q))
    }
}

fn rows_json(m: &RatMatrix) -> Value {
    json!(m.to_string_rows())
}

fn coloring_on(file: &ColoringFile, g: &Graph) -> CliResult<Coloring> {
    let c = Coloring::new(file.colors().to_vec())?;
    if c.n_vertices() != g.n_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "coloring has {} entries, graph has {} vertices",
            c.n_vertices(),
            g.n_vertices()
        ))
        .into());
    }
    Ok(c)
}

fn code_on(file: &CodeFile, g: &Graph) -> CliResult<Vec<usize>> {
    let code = file.vertices().to_vec();
    if code.is_empty() {
        return Err(Error::EmptyCode.into());
    }
    if let Some(&v) = code.iter().find(|&&v| v >= g.n_vertices()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n_vertices: g.n_vertices(),
        }
        .into());
    }
    Ok(code)
}

fn need(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| usage(format!("missing -{flag}")))
}

/// The function `f` as read from the command line, before a graph is fixed.
struct FInput {
    coloring: Option<ColoringFile>,
    structure: Option<StructureFile>,
    s: Option<RatMatrix>,
    f0: Option<Vec<Rational>>,
    verify_oracle: bool,
}

impl FInput {
    fn read(a: &FArgs) -> CliResult<FInput> {
        Ok(FInput {
            coloring: a.coloring.as_deref().map(read_json).transpose()?,
            structure: a.structure.as_deref().map(read_json).transpose()?,
            s: a
                .s
                .as_deref()
                .map(|p| read_json::<MatrixFile>(p).and_then(|m| m.matrix()))
                .transpose()?,
            f0: a.f0.as_deref().map(parse_row).transpose()?,
            verify_oracle: a.verify_oracle,
        })
    }

    fn embedded_graph(&self) -> Option<&GraphSpec> {
        self.coloring
            .as_ref()
            .and_then(|c| c.graph())
            .or_else(|| self.structure.as_ref().and_then(|s| s.graph.as_ref()))
    }

    /// True when `f` itself (not just `S`) is available, so a graph must be built.
    fn has_values(&self) -> bool {
        self.coloring.is_some() || self.structure.is_some()
    }

    fn structure_on(&self, g: &Graph) -> CliResult<Option<PerfectStructure>> {
        if let Some(c) = &self.coloring {
            let c = coloring_on(c, g)?;
            return Ok(Some(PerfectStructure::from_coloring(g, &c)?));
        }
        if let Some(s) = &self.structure {
            let f = matrix_from_cells(&s.f)?;
            let params = matrix_from_cells(&s.s)?;
            return Ok(Some(PerfectStructure::new(g, f, params)?));
        }
        Ok(None)
    }

    fn oracle_wanted(&self, full: Option<&PerfectStructure>) -> CliResult<bool> {
        if self.verify_oracle && full.is_none() {
            return Err(usage(
                "--verify-oracle needs the values of f: pass --coloring or --structure",
            ));
        }
        Ok(self.verify_oracle)
    }

    /// `S` and the sum `f0` of `f` over `code`.
    fn params_and_first_row(
        &self,
        full: Option<&PerfectStructure>,
        code: impl FnOnce() -> CliResult<Vec<usize>>,
    ) -> CliResult<(RatMatrix, Vec<Rational>)> {
        match full {
            Some(st) => Ok((st.params().clone(), sum_over_set(st, &code()?)?)),
            None => {
                let s = self
                    .s
                    .clone()
                    .ok_or_else(|| usage("pass --coloring, --structure, or --s with --f0"))?;
                let f0 = self.f0.clone().ok_or_else(|| usage("--s needs --f0"))?;
                Ok((s, f0))
            }
        }
    }
}

fn check_oracle(formula: &Distribution, oracle: &Distribution) -> CliResult<()> {
    if formula != oracle {
        return Err(CliError::OracleMismatch(format!(
            "formula {} vs oracle {}",
            formula.to_json(),
            oracle.to_json()
        )));
    }
    Ok(())
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Gen(g) => gen(ctx, g).map(Report::from),
        Command::Quotient { graph, coloring } => {
            let file: ColoringFile = read_json(coloring)?;
            let g = ctx.graph(graph.as_deref(), &[file.graph()])?;
            let c = coloring_on(&file, &g)?;
            Ok(json!({ "S": rows_json(&quotient_matrix(&g, &c)?) }).into())
        }
        Command::Verify(a) => verify(ctx, a),
        Command::CrcCheck { graph, code } => {
            let file: CodeFile = read_json(code)?;
            let g = ctx.graph(graph.as_deref(), &[file.graph()])?;
            let crc = check_completely_regular(&g, &code_on(&file, &g)?)?;
            Ok(json!({ "rho": crc.covering_radius, "R": rows_json(&crc.params) }).into())
        }
        Command::Distrib(d) => distrib(ctx, d).map(Report::from),
        Command::Local(l) => local(ctx, l).map(Report::from),
        Command::Oracle(a) => oracle(ctx, a).map(Report::from),
        Command::Selftest => {
            let (value, ok) = selftest::run();
            Ok(Report { value, ok })
        }
    }
}

fn gen(ctx: &Ctx, cmd: &GenCommand) -> CliResult<Value> {
    match cmd {
        GenCommand::Graph(a) => {
            let spec = match (&a.graph, a.family) {
                (Some(p), _) => read_json::<GraphSpec>(p)?,
                (None, Some(GraphFamily::Hamming)) => {
                    GraphSpec::hamming(need(a.n, "n")?, need(a.q, "q")?)
                }
                (None, Some(GraphFamily::Johnson)) => {
                    GraphSpec::johnson(need(a.n, "n")?, need(a.k, "k")?)
                }
                (None, Some(GraphFamily::Halved)) => {
                    GraphSpec::halved(need(a.n, "n")?, a.parity.into())
                }
                (None, None) => return Err(usage("pass --graph or --family")),
            };
            let g = ctx.build(&spec)?;
            Ok(json!({ "n_vertices": g.n_vertices(), "edges": g.edges() }))
        }
        GenCommand::Code(a) => {
            let (spec, vertices) = match a.family {
                CodeFamily::Hamming => {
                    let r = need(a.r, "r")?;
                    check_hamming_order(r)?;
                    (GraphSpec::hamming((1 << r) - 1, 2), binary_hamming_code(r))
                }
                CodeFamily::ExtendedHamming => {
                    let r = need(a.r, "r")?;
                    check_hamming_order(r)?;
                    (GraphSpec::hamming(1 << r, 2), extended_binary_hamming_code(r))
                }
                CodeFamily::Lattice => {
                    let (m, k, q) = (need(a.m, "m")?, need(a.k, "k")?, need(a.q, "q")?);
                    let spec = GraphSpec::hamming(m * k, q);
                    let n = ctx.build(&spec)?.n_vertices();
                    let code = (0..n).filter(|&v| lattice_map(v, m, k, q) == 0).collect();
                    (spec, code)
                }
                CodeFamily::Subcube => {
                    let (m, k, q) = (need(a.m, "m")?, need(a.k, "k")?, need(a.q, "q")?);
                    let spec = GraphSpec::hamming(m + k, q);
                    ctx.build(&spec)?;
                    (spec, subcube_code(m, k, q))
                }
                CodeFamily::Pcube => {
                    let (n, p, q) = (need(a.n, "n")?, need(a.p, "p")?, need(a.q, "q")?);
                    if p == 0 || p >= q {
                        return Err(usage("pcube needs 1 <= p < q"));
                    }
                    let spec = GraphSpec::hamming(n, q);
                    ctx.build(&spec)?;
                    (spec, restricted_alphabet_code(n, p, q))
                }
            };
            let file = CodeFile::Full {
                graph: Some(spec),
                vertices,
            };
            serde_json::to_value(file).map_err(|e| CliError::Input(e.to_string()))
        }
        GenCommand::Coloring(a) => {
            let (spec, colors) = match a.family {
                ColoringFamily::Lattice => {
                    let (m, k, q) = (need(a.m, "m")?, need(a.k, "k")?, need(a.q, "q")?);
                    let spec = GraphSpec::hamming(m * k, q);
                    ctx.build(&spec)?;
                    (spec, lattice_coloring(m, k, q)?.colors().to_vec())
                }
                family => {
                    let code_file: Option<CodeFile> = a.code.as_deref().map(read_json).transpose()?;
                    let spec = match &a.graph {
                        Some(p) => read_json::<GraphSpec>(p)?,
                        None => code_file
                            .as_ref()
                            .and_then(|c| c.graph().cloned())
                            .ok_or_else(|| usage("pass --graph"))?,
                    };
                    let g = ctx.build(&spec)?;
                    let colors = match family {
                        ColoringFamily::Trivial => vec![0; g.n_vertices()],
                        ColoringFamily::Discrete => (0..g.n_vertices()).collect(),
                        _ => {
                            let code = match (&code_file, a.vertex) {
                                (Some(c), _) => code_on(c, &g)?,
                                (None, Some(v)) => vec![v],
                                (None, None) => return Err(usage("pass --code or --vertex")),
                            };
                            distance_coloring(&g, &code)?.colors().to_vec()
                        }
                    };
                    (spec, colors)
                }
            };
            Ok(json!({ "graph": spec, "colors": colors }))
        }
    }
}

fn check_hamming_order(r: usize) -> CliResult<()> {
    if !(2..=20).contains(&r) {
        return Err(usage(format!("hamming code order r={r} outside 2..=20")));
    }
    Ok(())
}

fn verify(ctx: &Ctx, a: &VerifyArgs) -> CliResult<Report> {
    let check = if let Some(path) = &a.structure {
        let st: StructureFile = read_json(path)?;
        let f = matrix_from_cells(&st.f)?;
        let s = matrix_from_cells(&st.s)?;
        match (&st.graph, &st.matrix) {
            (Some(spec), None) => verify_structure(&ctx.build(spec)?, &f, &s)?,
            (None, Some(m)) => verify_structure(&matrix_from_cells(m)?, &f, &s)?,
            _ => {
                return Err(CliError::Input(
                    "structure file needs exactly one of \"graph\" and \"matrix\"".into(),
                ))
            }
        }
    } else {
        let path = a
            .coloring
            .as_deref()
            .ok_or_else(|| usage("pass --structure, or --coloring with --s"))?;
        let file: ColoringFile = read_json(path)?;
        let g = ctx.graph(a.graph.as_deref(), &[file.graph()])?;
        let c = coloring_on(&file, &g)?;
        let s = read_json::<MatrixFile>(a.s.as_deref().expect("clap requires --s"))?.matrix()?;
        verify_structure(&g, &c.indicator(), &s)?
    };
    Ok(Report {
        value: json!({ "holds": check.holds, "residual": rows_json(&check.residual) }),
        ok: check.holds,
    })
}

fn distrib(ctx: &Ctx, cmd: &DistribCommand) -> CliResult<Value> {
    match cmd {
        DistribCommand::Vertex {
            graph,
            color,
            vertex,
            f,
        } => {
            let input = FInput::read(f)?;
            let g = ctx.graph(graph.as_deref(), &[input.embedded_graph()])?;
            let full = input.structure_on(&g)?;
            let polys = p_polynomials(&intersection_array(&g)?);
            let (s, center, start) = match (&full, color, vertex) {
                (_, None, None) => return Err(usage("pass --color or --vertex")),
                (Some(st), _, Some(v)) => {
                    check_vertex(*v, &g)?;
                    (st.params().clone(), Some(*v), st.values().row(*v).to_vec())
                }
                (None, _, Some(_)) => {
                    return Err(usage("--vertex needs the values of f: pass --coloring or --structure"))
                }
                (_, Some(j), None) => {
                    let s = match (&full, &input.s) {
                        (Some(st), _) => st.params().clone(),
                        (None, Some(s)) => s.clone(),
                        (None, None) => return Err(usage("pass --coloring, --structure or --s")),
                    };
                    if *j >= s.rows() {
                        return Err(usage(format!("--color {j} out of range for {} colors", s.rows())));
                    }
                    let center = match &input.coloring {
                        Some(c) => Some(
                            c.colors()
                                .iter()
                                .position(|&x| x == *j)
                                .ok_or(Error::EmptyColorClass { color: *j })?,
                        ),
                        None => None,
                    };
                    let mut e = vec![int(0); s.rows()];
                    e[*j] = int(1);
                    (s, center, e)
                }
            };
            let d = rows_from_polynomials(polys.polys(), &s, &start)?;
            if input.verify_oracle {
                let (Some(st), Some(v)) = (&full, center) else {
                    return Err(usage("--verify-oracle needs --coloring (with --color) or --vertex"));
                };
                check_oracle(&d, &brute_distribution(&g, &[v], st)?)?;
            }
            Ok(d.to_json())
        }
        DistribCommand::Code { graph, code, f } => {
            let input = FInput::read(f)?;
            let file: CodeFile = read_json(code)?;
            let g = ctx.graph(graph.as_deref(), &[file.graph(), input.embedded_graph()])?;
            let code = code_on(&file, &g)?;
            let crc = check_completely_regular(&g, &code)?;
            let full = input.structure_on(&g)?;
            let (s, f0) = input.params_and_first_row(full.as_ref(), || Ok(code.clone()))?;
            let d = code_distribution(&crc, &s, &f0)?;
            if input.oracle_wanted(full.as_ref())? {
                check_oracle(&d, &brute_distribution(&g, &code, full.as_ref().unwrap())?)?;
            }
            Ok(d.to_json())
        }
        DistribCommand::Lattice { m, k, q, f } => {
            let (m, k, q) = (*m, *k, *q);
            let input = FInput::read(f)?;
            let g = if input.has_values() {
                Some(ctx.hamming(m * k, q)?)
            } else {
                None
            };
            let full = g.as_ref().map(|g| input.structure_on(g)).transpose()?.flatten();
            let zero_class = || -> Vec<usize> {
                let n = g.as_ref().map_or(0, Graph::n_vertices);
                (0..n).filter(|&v| lattice_map(v, m, k, q) == 0).collect()
            };
            let (s, f0) = input.params_and_first_row(full.as_ref(), || Ok(zero_class()))?;
            let d = lattice_distribution(m, k, q, &s, &f0)?;
            if input.oracle_wanted(full.as_ref())? {
                let g = g.as_ref().unwrap();
                check_oracle(&d, &brute_distribution(g, &zero_class(), full.as_ref().unwrap())?)?;
            }
            Ok(d.to_json())
        }
        DistribCommand::Fiber {
            left,
            graph,
            vertex,
            m,
            k,
            q,
            f,
        } => {
            let input = FInput::read(f)?;
            if let Some(left) = left {
                let g1 = ctx.build(&read_json::<GraphSpec>(left)?)?;
                let g2 = ctx.build(&read_json::<GraphSpec>(graph.as_deref().unwrap())?)?;
                check_vertex(*vertex, &g2)?;
                let d1 = g1.regular_degree()?;
                let n2 = g2.n_vertices();
                let fiber: Vec<usize> = (0..g1.n_vertices()).map(|a| a * n2 + vertex).collect();
                let product = if input.has_values() {
                    Some(direct_product_with_budget(&g1, &g2, ctx.budget)?)
                } else {
                    None
                };
                let full = product.as_ref().map(|p| input.structure_on(p)).transpose()?.flatten();
                let (s, f0) = input.params_and_first_row(full.as_ref(), || Ok(fiber.clone()))?;
                let d = fiber_distribution(&g2, d1, &s, &f0)?;
                if input.oracle_wanted(full.as_ref())? {
                    let p = product.as_ref().unwrap();
                    check_oracle(&d, &brute_distribution(p, &fiber, full.as_ref().unwrap())?)?;
                }
                Ok(d.to_json())
            } else {
                let (Some(m), Some(k), Some(q)) = (*m, *k, *q) else {
                    return Err(usage("pass --left with --graph, or -m -k -q"));
                };
                let g = if input.has_values() {
                    Some(ctx.hamming(m + k, q)?)
                } else {
                    None
                };
                let full = g.as_ref().map(|g| input.structure_on(g)).transpose()?.flatten();
                let code = subcube_code(m, k, q);
                let (s, f0) = input.params_and_first_row(full.as_ref(), || Ok(code.clone()))?;
                let d = subcube_distribution(m, k, q, &s, &f0)?;
                if input.oracle_wanted(full.as_ref())? {
                    let g = g.as_ref().unwrap();
                    check_oracle(&d, &brute_distribution(g, &code, full.as_ref().unwrap())?)?;
                }
                Ok(d.to_json())
            }
        }
        DistribCommand::Pcube { n, p, q, f } => {
            let (n, p, q) = (*n, *p, *q);
            let input = FInput::read(f)?;
            let g = if input.has_values() {
                Some(ctx.hamming(n, q)?)
            } else {
                None
            };
            let full = g.as_ref().map(|g| input.structure_on(g)).transpose()?.flatten();
            let code = || restricted_alphabet_code(n, p, q);
            let (s, f0) = input.params_and_first_row(full.as_ref(), || Ok(code()))?;
            let d = pcube_distribution(n, p, q, &s, &f0)?;
            if input.oracle_wanted(full.as_ref())? {
                let g = g.as_ref().unwrap();
                check_oracle(&d, &brute_distribution(g, &code(), full.as_ref().unwrap())?)?;
            }
            Ok(d.to_json())
        }
    }
}

fn check_vertex(v: usize, g: &Graph) -> CliResult<()> {
    if v >= g.n_vertices() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n_vertices: g.n_vertices(),
        }
        .into());
    }
    Ok(())
}

struct Factors {
    product: Graph,
    left: crate::equitable::CompletelyRegularCode,
    right: crate::equitable::CompletelyRegularCode,
}

impl Factors {
    fn load(ctx: &Ctx, a: &FactorArgs) -> CliResult<Factors> {
        let g1 = ctx.build(&read_json::<GraphSpec>(&a.left)?)?;
        let g2 = ctx.build(&read_json::<GraphSpec>(&a.graph)?)?;
        let code = |path: &Option<PathBuf>, g: &Graph| -> CliResult<Vec<usize>> {
            match path {
                Some(p) => code_on(&read_json::<CodeFile>(p)?, g),
                None => Ok(vec![0]),
            }
        };
        let left = check_completely_regular(&g1, &code(&a.left_code, &g1)?)?;
        let right = check_completely_regular(&g2, &code(&a.code, &g2)?)?;
        let product = direct_product_with_budget(&g1, &g2, ctx.budget)?;
        Ok(Factors {
            product,
            left,
            right,
        })
    }
}

fn local(ctx: &Ctx, cmd: &LocalCommand) -> CliResult<Value> {
    match cmd {
        LocalCommand::Params { factors } => {
            let fs = Factors::load(ctx, factors)?;
            let ts = tensor_structure_over(&fs.product, &fs.left.structure(), &fs.right.structure())?;
            Ok(json!({
                "left": rows_json(fs.left.structure().params()),
                "right": rows_json(fs.right.structure().params()),
                "R": rows_json(ts.product.params()),
            }))
        }
        LocalCommand::Distrib { factors, f } => {
            let fs = Factors::load(ctx, factors)?;
            let input = FInput::read(f)?;
            let full = input
                .structure_on(&fs.product)?
                .ok_or_else(|| usage("pass --coloring or --structure for f on G' x G''"))?;
            let ts = tensor_structure_over(&fs.product, &fs.left.structure(), &fs.right.structure())?;
            let r = tensor_distribution(&ts, &full)?;
            if input.verify_oracle {
                let product_coloring =
                    crate::localdist::tensor_coloring(&fs.left.coloring, &fs.right.coloring);
                let brute = brute_pair_distribution(&product_coloring, &full)?;
                check_oracle(&Distribution::new(r.h.clone()), &brute)?;
            }
            let (along_right, along_left) = extract_local(&r);
            let mut value = r.to_json();
            value["local_right"] = rows_json(&along_right);
            value["local_left"] = rows_json(&along_left);
            Ok(value)
        }
        LocalCommand::Reconstruct { factors, f } => {
            let fs = Factors::load(ctx, factors)?;
            let input = FInput::read(f)?;
            let full = input.structure_on(&fs.product)?;
            let n_right = fs.right.params.rows();
            let exact = match &full {
                Some(st) => {
                    let ts = tensor_structure_over(
                        &fs.product,
                        &fs.left.structure(),
                        &fs.right.structure(),
                    )?;
                    Some(tensor_distribution(&ts, st)?)
                }
                None => None,
            };
            let (s, first) = match (&full, &exact) {
                (Some(st), Some(r)) => (st.params().clone(), r.h_star.row(0).to_vec()),
                _ => input.params_and_first_row(None, || Ok(Vec::new()))?,
            };
            let h_star = reconstruct_local_from_code(&fs.left.params, &fs.right.params, &s, &first)?;
            if input.oracle_wanted(full.as_ref())? {
                let product_coloring =
                    crate::localdist::tensor_coloring(&fs.left.coloring, &fs.right.coloring);
                let brute = brute_pair_distribution(&product_coloring, full.as_ref().unwrap())?;
                let brute = RearrangedDistribution::from_h(
                    brute.into_matrix(),
                    fs.left.params.rows(),
                    n_right,
                )?;
                check_oracle(
                    &Distribution::new(h_star.clone()),
                    &Distribution::new(brute.h_star),
                )?;
            }
            Ok(json!({ "h_star": rows_json(&h_star) }))
        }
    }
}

fn oracle(ctx: &Ctx, a: &OracleArgs) -> CliResult<Value> {
    let code_file: Option<CodeFile> = a.code.as_deref().map(read_json).transpose()?;
    let input = FInput {
        coloring: a.coloring.as_deref().map(read_json).transpose()?,
        structure: a.structure.as_deref().map(read_json).transpose()?,
        s: None,
        f0: None,
        verify_oracle: false,
    };
    let g = ctx.graph(
        a.graph.as_deref(),
        &[code_file.as_ref().and_then(CodeFile::graph), input.embedded_graph()],
    )?;
    let code = match (&code_file, a.vertex) {
        (Some(c), _) => code_on(c, &g)?,
        (None, Some(v)) => {
            check_vertex(v, &g)?;
            vec![v]
        }
        (None, None) => return Err(usage("pass --code or --vertex")),
    };
    let f: Box<dyn VertexFunction> = match (&input.coloring, &input.structure) {
        (Some(c), _) => Box::new(coloring_on(c, &g)?),
        (None, Some(st)) => Box::new(matrix_from_cells(&st.f)?),
        (None, None) => Box::new(Coloring::single(g.n_vertices())),
    };
    Ok(brute_distribution(&g, &code, f.as_ref())?.to_json())
}
