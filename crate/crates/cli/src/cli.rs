//! Argument parsing and command dispatch.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rolecol_core::highgirth::{build_girth_graph, gadget_labels, gemel_implant_all, GirthParams};
use rolecol_core::role::{complete_with_loops, verify_coupon_colouring};
use rolecol_core::sat::{build, Variant};
use rolecol_core::solve::{solve_k_ccol, solve_k_rcol, solve_r_rcol};
use rolecol_core::twok2::{two_role_colour_2k2_free, TwoRoleOutcome};
use rolecol_core::{
    girth, is_free, verify_role_colouring, Graph, GraphFamily, RoleColouring, RoleGraph, SolveConfig, SolveError,
    VariableOrder,
};
use thiserror::Error;

use crate::formats::{self, FormatError};

/// Nodes granted per second of `--seconds`.
pub const NODES_PER_SECOND: u64 = 200_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] rolecol_core::GraphError),
    #[error(transparent)]
    Reduction(#[from] rolecol_core::ReductionError),
    #[error(transparent)]
    Girth(#[from] rolecol_core::GirthGraphError),
    #[error(transparent)]
    TwoRole(#[from] rolecol_core::TwoRoleError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solve(SolveError::BudgetExhausted { .. }) => 3,
            _ => 2,
        }
    }
}

/// Outcome of a completed command: a definite yes or no.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rolecol", version, about = "Role colouring and coupon colouring toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named graph.
    Gen(GenArgs),
    /// Print basic properties of a graph.
    Props(PropsArgs),
    /// Search for a role or coupon colouring.
    Solve(SolveArgs),
    /// Check a colouring certificate.
    Verify(VerifyArgs),
    /// Build the gadget graph of a monotone CNF formula.
    Reduce(ReduceArgs),
    /// Replace every edge of a regular graph by a gemel gadget.
    Gemel(GemelArgs),
    /// 2-role colour a 2K2-free graph with the independent-set construction.
    #[command(name = "colour-2k2")]
    Colour2k2(Colour2k2Args),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyName {
    Path,
    Cycle,
    PathStar,
    PathStarStar,
    Complete,
    Biclique,
    H,
    Spider,
    Tree,
    TwoK2,
    Girth,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Family parameters, comma separated (e.g. `3,3` for a biclique).
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<usize>,
    /// Regularity parameter of the girth family.
    #[arg(long)]
    pub k: Option<usize>,
    /// Index into the digit-length sequence of the girth family.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Label sidecar for the girth family.
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub girth: bool,
    /// Patterns such as `K1_4,C3,H2,2K2,P4,S1_1_2`.
    #[arg(long, value_delimiter = ',')]
    pub free: Vec<String>,
    #[arg(long)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Problem {
    Rcol,
    Ccol,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderName {
    Min,
    Input,
    Weighted,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: Option<usize>,
    /// Fixed role graph for `rcol`.
    #[arg(long)]
    pub role_graph: Option<PathBuf>,
    /// Report every colouring.
    #[arg(long)]
    pub all: bool,
    /// Search node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Wall-clock allowance, converted to a node budget.
    #[arg(long)]
    pub seconds: Option<u64>,
    #[arg(long, value_enum, default_value = "min")]
    pub order: OrderName,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long, conflicts_with = "coupon")]
    pub role_graph: Option<PathBuf>,
    #[arg(long)]
    pub coupon: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantName {
    Base,
    Prime,
    Subdivided,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub cnf: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "base")]
    pub variant: VariantName,
    /// Girth parameter of the subdivided variant.
    #[arg(long)]
    pub j: Option<usize>,
    /// Accept clauses of any width.
    #[arg(long)]
    pub any_width: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Gadget-map sidecar; defaults to `<out>.map` when `--out` is given.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GemelArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub length_index: usize,
    /// Override the tree depth (digit count).
    #[arg(long)]
    pub digits: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Colour2k2Args {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn parse_with<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    f(&read_text(path)?).map_err(|source| CliError::Format { path: path.to_owned(), source })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_with(path, formats::read_graph)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: Cli) -> Result<Verdict, CliError> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Props(a) => props(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Reduce(a) => reduce(a),
        Command::Gemel(a) => gemel(a),
        Command::Colour2k2(a) => colour_2k2(a),
    }
}

fn family(name: FamilyName, p: &[usize]) -> Result<GraphFamily, CliError> {
    let want = |n: usize| {
        if p.len() == n {
            Ok(())
        } else {
            Err(usage(format!("{name:?} takes {n} parameter(s), got {}", p.len())))
        }
    };
    Ok(match name {
        FamilyName::Path => want(1).map(|_| GraphFamily::Path(p[0]))?,
        FamilyName::Cycle => want(1).map(|_| GraphFamily::Cycle(p[0]))?,
        FamilyName::PathStar => want(1).map(|_| GraphFamily::PathStar(p[0]))?,
        FamilyName::PathStarStar => want(1).map(|_| GraphFamily::PathStarStar(p[0]))?,
        FamilyName::Complete => want(1).map(|_| GraphFamily::Complete(p[0]))?,
        FamilyName::Biclique => want(2).map(|_| GraphFamily::Biclique(p[0], p[1]))?,
        FamilyName::H => want(1).map(|_| GraphFamily::H(p[0]))?,
        FamilyName::Spider => want(3).map(|_| GraphFamily::Spider(p[0], p[1], p[2]))?,
        FamilyName::Tree => want(2).map(|_| GraphFamily::PerfectTree { branching: p[0], depth: p[1] })?,
        FamilyName::TwoK2 => want(0).map(|_| GraphFamily::two_k2())?,
        FamilyName::Girth => unreachable!("handled by gen"),
    })
}

fn gen(a: GenArgs) -> Result<Verdict, CliError> {
    if let FamilyName::Girth = a.family {
        let k = a.k.ok_or_else(|| usage("--family girth needs --k"))?;
        let params = GirthParams::base(k, a.length.unwrap_or(1))?;
        let built = build_girth_graph(&params)?;
        emit(a.out.as_deref(), &formats::write_graph(&built.graph))?;
        if let Some(path) = &a.labels {
            let labels: Vec<(usize, String)> = built.labels.iter().enumerate().map(|(i, s)| (i, s.to_string())).collect();
            emit(Some(path), &formats::write_labels(&labels))?;
        }
        return Ok(Verdict::Holds);
    }
    let g = family(a.family, &a.params)?.build()?;
    emit(a.out.as_deref(), &formats::write_graph(&g))?;
    Ok(Verdict::Holds)
}

/// Parses `K4`, `K1_4`, `C5`, `P4`, `H2`, `S1_1_2` and `<m>` prefixes
/// for disjoint copies, as in `2K2`.
pub fn pattern(name: &str) -> Result<GraphFamily, CliError> {
    let bad = || usage(format!("unknown pattern `{name}`"));
    let digits = name.chars().take_while(char::is_ascii_digit).count();
    if digits > 0 {
        let copies: usize = name[..digits].parse().map_err(|_| bad())?;
        return Ok(GraphFamily::Copies(copies, Box::new(pattern(&name[digits..])?)));
    }
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(bad)?;
    let nums: Vec<usize> = chars.as_str().split('_').map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    Ok(match (head, nums.as_slice()) {
        ('K', [n]) => GraphFamily::Complete(*n),
        ('K', [m, n]) => GraphFamily::Biclique(*m, *n),
        ('C', [n]) => GraphFamily::Cycle(*n),
        ('P', [n]) => GraphFamily::Path(*n),
        ('H', [i]) => GraphFamily::H(*i),
        ('S', [i, j, k]) => GraphFamily::Spider(*i, *j, *k),
        _ => return Err(bad()),
    })
}

fn props(a: PropsArgs) -> Result<Verdict, CliError> {
    let g = load_graph(&a.graph)?;
    let p = g.basic_props();
    let mut out = format!(
        "vertices {}\nedges {}\nmin_degree {}\nmax_degree {}\nconnected {}\n",
        g.order(),
        g.size(),
        p.min_degree,
        p.max_degree,
        p.connected
    );
    if a.degrees {
        let d: Vec<String> = g.degrees().iter().map(usize::to_string).collect();
        writeln!(out, "degrees {}", d.join(" ")).unwrap();
    }
    if a.girth {
        writeln!(out, "girth {}", girth(&g)).unwrap();
    }
    let mut verdict = Verdict::Holds;
    if !a.free.is_empty() {
        let pats: Vec<Graph> = a.free.iter().map(|n| Ok(pattern(n)?.build()?)).collect::<Result<_, CliError>>()?;
        let free = is_free(&g, &pats)?;
        writeln!(out, "free {} {}", a.free.join(","), free).unwrap();
        if !free {
            verdict = Verdict::Fails;
        }
    }
    emit(None, &out)?;
    Ok(verdict)
}

fn solve(a: SolveArgs) -> Result<Verdict, CliError> {
    let g = load_graph(&a.graph)?;
    let budget = match (a.budget, a.seconds) {
        (Some(b), Some(s)) => Some(b.min(s.saturating_mul(NODES_PER_SECOND))),
        (b, s) => b.or(s.map(|s| s.saturating_mul(NODES_PER_SECOND))),
    };
    let cfg = SolveConfig {
        node_budget: budget,
        enumerate_all: a.all,
        variable_order: match a.order {
            OrderName::Min => VariableOrder::MinCandidatesFirst,
            OrderName::Input => VariableOrder::InputOrder,
            OrderName::Weighted => VariableOrder::ConflictWeighted,
        },
    };
    let found: Vec<(RoleColouring, Option<RoleGraph>)> = match (a.problem, &a.role_graph) {
        (Problem::Rcol, Some(path)) => {
            let role = RoleGraph::new(load_graph(path)?);
            if a.k.is_some_and(|k| k != role.order()) {
                return Err(usage("--k differs from the role graph order"));
            }
            solve_r_rcol(&g, &role, cfg)?.solutions.into_iter().map(|r| (r, Some(role.clone()))).collect()
        }
        (Problem::Rcol, None) => {
            let k = a.k.ok_or_else(|| usage("rcol needs --k or --role-graph"))?;
            if a.all {
                return Err(usage("--all needs --role-graph for rcol"));
            }
            solve_k_rcol(&g, k, cfg)?.into_iter().map(|(role, r)| (r, Some(role))).collect()
        }
        (Problem::Ccol, Some(_)) => return Err(usage("ccol takes --k, not --role-graph")),
        (Problem::Ccol, None) => {
            let k = a.k.ok_or_else(|| usage("ccol needs --k"))?;
            let role = complete_with_loops(k);
            solve_k_ccol(&g, k, cfg)?.solutions.into_iter().map(|r| (r, Some(role.clone()))).collect()
        }
    };
    if found.is_empty() {
        eprintln!("no colouring");
        return Ok(Verdict::Fails);
    }
    let mut text = String::new();
    for (i, (r, role)) in found.iter().enumerate() {
        if a.all {
            writeln!(text, "c solution {}", i + 1).unwrap();
        }
        let role = if a.all { None } else { role.as_ref() };
        text.push_str(&formats::write_colouring(r, role));
    }
    emit(a.out.as_deref(), &text)?;
    if a.all {
        eprintln!("{} colourings", found.len());
    }
    Ok(Verdict::Holds)
}

fn verify(a: VerifyArgs) -> Result<Verdict, CliError> {
    let g = load_graph(&a.graph)?;
    let (r, embedded) = parse_with(&a.colouring, formats::read_colouring)?;
    let result = match (a.coupon, &a.role_graph, embedded) {
        (Some(k), _, _) => verify_coupon_colouring(&g, k, &r),
        (None, Some(path), _) => verify_role_colouring(&g, &RoleGraph::new(load_graph(path)?), &r),
        (None, None, Some(role)) => verify_role_colouring(&g, &role, &r),
        (None, None, None) => return Err(usage("give --role-graph or --coupon, or a certificate with a role block")),
    };
    match result {
        Ok(()) => {
            println!("valid");
            Ok(Verdict::Holds)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(Verdict::Fails)
        }
    }
}

fn reduce(a: ReduceArgs) -> Result<Verdict, CliError> {
    let f = parse_with(&a.cnf, |t| formats::parse_cnf(t, a.any_width))?;
    let variant = match a.variant {
        VariantName::Base => Variant::Base,
        VariantName::Prime => Variant::Prime,
        VariantName::Subdivided => Variant::Subdivided(a.j.ok_or_else(|| usage("--variant subdivided needs --j"))?),
    };
    let (g, map) = build(&f, a.k, variant)?;
    emit(a.out.as_deref(), &formats::write_graph(&g))?;
    let map_path = a.map.clone().or_else(|| a.out.as_ref().map(|o| sidecar(o, "map")));
    if let Some(path) = map_path {
        emit(Some(&path), &formats::write_map(&map))?;
    }
    Ok(Verdict::Holds)
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn gemel(a: GemelArgs) -> Result<Verdict, CliError> {
    let g = load_graph(&a.graph)?;
    let mut params = GirthParams::doubled(a.k, a.length_index)?;
    if let Some(d) = a.digits {
        params = params.with_digits(d)?;
    }
    let imp = gemel_implant_all(&g, &params)?;
    emit(a.out.as_deref(), &formats::write_graph(&imp.graph))?;
    if let Some(path) = &a.labels {
        emit(Some(path), &formats::write_labels(&gadget_labels(&imp)))?;
    }
    Ok(Verdict::Holds)
}

fn colour_2k2(a: Colour2k2Args) -> Result<Verdict, CliError> {
    let g = load_graph(&a.graph)?;
    match two_role_colour_2k2_free(&g)? {
        TwoRoleOutcome::VerifiedColouring(r, role) => {
            emit(a.out.as_deref(), &formats::write_colouring(&r, Some(&role)))?;
            Ok(Verdict::Holds)
        }
        TwoRoleOutcome::TooSmall => {
            eprintln!("graph has fewer than two vertices");
            Ok(Verdict::Fails)
        }
        TwoRoleOutcome::ConstructionFailed(d) => {
            let ids: Vec<String> = d.independent_set.iter().map(|v| (v + 1).to_string()).collect();
            eprintln!("construction failed: I={} {}", ids.join(","), d.violation);
            Ok(Verdict::Fails)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_names() {
        assert_eq!(pattern("K1_4").unwrap(), GraphFamily::Biclique(1, 4));
        assert_eq!(pattern("2K2").unwrap(), GraphFamily::two_k2());
        assert_eq!(pattern("S1_1_2").unwrap(), GraphFamily::Spider(1, 1, 2));
        assert_eq!(pattern("H3").unwrap(), GraphFamily::H(3));
        assert!(pattern("Q3").is_err());
        assert!(pattern("K").is_err());
    }

    #[test]
    fn budget_maps_to_exit_code_three() {
        let e = CliError::Solve(SolveError::BudgetExhausted { budget: 5 });
        assert_eq!(e.exit_code(), 3);
        assert_eq!(usage("x").exit_code(), 2);
    }

    #[test]
    fn sidecar_appends_extension() {
        assert_eq!(sidecar(Path::new("out/g.txt"), "map"), PathBuf::from("out/g.txt.map"));
    }
}
