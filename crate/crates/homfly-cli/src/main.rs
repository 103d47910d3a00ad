//! `homfly` — batch command-line workbench for exact knot-polynomial
//! factorization and graph-certificate experiments.
//!
//! Commands:
//! - `factor-db`: factor every knot polynomial in a database into products
//!   of other entries (mirrors allowed), with an independent irreducibility
//!   cross-check on every verdict.
//! - `check-graph`: per 2-connected graph, report the Tutte polynomial, the
//!   HOMFLY polynomial of the associated link family, and the
//!   irreducibility certificate.
//! - `search`: enumerate 2-connected graphs within bounds and report any
//!   graph whose certificate is inconclusive.
//! - `verify-identities`: run the built-in symbolic identity suite
//!   (rational-map equality, boundary restrictions, Tutte oracle agreement,
//!   normalization), plus the known-product table when a database is given.
//! - `convert`: translate a two-variable (KnotInfo-convention) polynomial
//!   into the homogeneous three-variable form.
//!
//! Exit codes: 0 success; 2 ingestion/usage error (unreadable or malformed
//! input, bad flags); 3 internal inconsistency (an exact cross-check
//! disagreed — this indicates a bug or corrupt data, never a normal result).
//! Data goes to stdout or `--output`; diagnostics go to stderr only.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use homfly::graph::{complete, complete_bipartite, cycle, dipole, parse_graph_jsonl};
use homfly::jaeger::Verdict;
use homfly::tutte::{tutte, tutte_oracle};
use homfly::{
    boundary_restrictions, convert_to_homogeneous, find_factorizations, homfly_from_tutte,
    irreducibility_certificate, is_irreducible_laurent, load_knots, parse_homfly,
    search_counterexamples, tutte_numerator, verify_known_factorizations,
    verify_squaring_identity_at, Error, FactorEntry, FactorReport, MultiGraph, RowOutcome,
    UniPoly,
};

const EXIT_INGESTION: u8 = 2;
const EXIT_INCONSISTENCY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "homfly",
    version,
    about = "Exact workbench for HOMFLY polynomials: database factorization, \
             Tutte-polynomial link families, and irreducibility certificates",
    after_help = "Exit codes: 0 success, 2 ingestion/usage error, 3 internal inconsistency.\n\
                  Identical inputs and seed produce byte-identical reports regardless of --jobs."
)]
struct Cli {
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (0 = one per CPU)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Report format (csv is available for factor-db only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized identity checks
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Factor every knot polynomial in a database into products of other entries
    FactorDb(FactorDbArgs),
    /// Tutte polynomial, HOMFLY polynomial, and certificate for each input graph
    CheckGraph(CheckGraphArgs),
    /// Enumerate 2-connected graphs and report inconclusive certificates
    Search(SearchArgs),
    /// Run the built-in identity suite (symbolic and randomized)
    VerifyIdentities(VerifyArgs),
    /// Convert a two-variable (v, z) polynomial to the homogeneous (x, y, z) form
    Convert(ConvertArgs),
}

#[derive(Args)]
struct FactorDbArgs {
    /// Knot database: CSV with header `name,homfly`, or JSON lines
    /// {"name": ..., "homfly": ...}; polynomials in the (v, z) convention
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct CheckGraphArgs {
    /// Graph list: JSON lines {"name": ..., "vertices": n, "edges": [[u,v], ...]}
    #[arg(long)]
    input: PathBuf,
    /// Cross-check the certificate against full polynomial factorization
    /// for graphs with at most this many edges
    #[arg(long, default_value_t = 6)]
    threshold_factor_edges: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest vertex count to enumerate (minimum meaningful value: 3)
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    /// Largest edge count to enumerate
    #[arg(long, default_value_t = 10)]
    max_edges: usize,
    /// Restrict to simple graphs (no parallel edges)
    #[arg(long)]
    simple_only: bool,
    /// Examine non-planar graphs as well (they are skipped by default)
    #[arg(long)]
    no_planar_filter: bool,
    /// Drop isomorphic duplicates (canonical-form deduplication is built
    /// into the enumerator, so this is always in effect; flag accepted for
    /// script compatibility)
    #[arg(long)]
    dedupe: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional knot database; when given, the bundled known-product table
    /// is checked against it by exact multiplication
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Polynomial in the (v, z) convention, e.g. "z^2*v^-2-2*v^-2-v^-4"
    poly: Option<String>,
    /// File with one (v, z) polynomial per line (blank lines skipped)
    #[arg(long)]
    input: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn ingestion(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INGESTION, message: message.into() }
    }
}

/// Map engine errors to exit codes: a failed internal cross-check is 3,
/// everything else surfaces as an ingestion/usage problem.
fn engine_failure(e: Error) -> Failure {
    let code = match e {
        Error::Inconsistency { .. } => EXIT_INCONSISTENCY,
        _ => EXIT_INGESTION,
    };
    Failure { code, message: e.to_string() }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::ingestion(format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: cannot configure {} worker threads: {e}", cli.jobs);
            return ExitCode::from(EXIT_INGESTION);
        }
    }
    if cli.format == Format::Csv && !matches!(cli.command, Command::FactorDb(_)) {
        eprintln!("error: --format csv is only available for factor-db");
        return ExitCode::from(EXIT_INGESTION);
    }
    let report = match &cli.command {
        Command::FactorDb(args) => cmd_factor_db(args, cli.format),
        Command::CheckGraph(args) => cmd_check_graph(args),
        Command::Search(args) => cmd_search(args),
        Command::VerifyIdentities(args) => cmd_verify_identities(args, cli.seed),
        Command::Convert(args) => cmd_convert(args),
    };
    let report = match report {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let out = if report.ends_with('\n') { report } else { report + "\n" };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INGESTION);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------- factor-db

fn factor_token(f: &FactorEntry) -> String {
    let base =
        if f.mirrored { format!("mirror({})", f.name) } else { f.name.clone() };
    if f.multiplicity > 1 {
        format!("{base}*{}", f.multiplicity)
    } else {
        base
    }
}

fn reports_to_csv(reports: &[FactorReport]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "status", "factors", "residual"])
        .map_err(|e| Failure::ingestion(format!("csv: {e}")))?;
    for r in reports {
        let status = match r.status {
            homfly::FactorStatus::Irreducible => "Irreducible",
            homfly::FactorStatus::Factored => "Factored",
        };
        let factors =
            r.factors.iter().map(factor_token).collect::<Vec<_>>().join(";");
        let residual = r.residual.as_ref().map(|p| p.to_string()).unwrap_or_default();
        w.write_record([r.name.as_str(), status, &factors, &residual])
            .map_err(|e| Failure::ingestion(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::ingestion(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Failure::ingestion(format!("csv: {e}")))
}

fn cmd_factor_db(args: &FactorDbArgs, format: Format) -> Result<String, Failure> {
    let text = read_input(&args.input)?;
    let db = load_knots(&text).map_err(engine_failure)?;
    let reports = find_factorizations(&db).map_err(engine_failure)?;
    match format {
        Format::Json => serde_json::to_string_pretty(&reports)
            .map_err(|e| Failure::ingestion(format!("serializing report: {e}"))),
        Format::Csv => reports_to_csv(&reports),
    }
}

// -------------------------------------------------------------- check-graph

fn check_one_graph(
    name: &str,
    g: &MultiGraph,
    threshold_factor_edges: usize,
) -> Result<serde_json::Value, Failure> {
    let cert = match irreducibility_certificate(g) {
        Ok(c) => c,
        Err(Error::NotTwoConnected) => {
            return Ok(json!({ "name": name, "error": "graph must be 2-connected" }));
        }
        Err(e) => return Err(engine_failure(e)),
    };
    let t = tutte(g);
    let p = homfly_from_tutte(g).map_err(engine_failure)?;
    let factor_check = if g.num_edges() <= threshold_factor_edges {
        let irreducible = is_irreducible_laurent(&p).map_err(engine_failure)?;
        let certified = cert.verdict == Verdict::CertifiedIrreducible;
        if certified && !irreducible {
            return Err(engine_failure(Error::Inconsistency {
                detail: format!(
                    "{name}: certificate claims irreducible but the polynomial factors"
                ),
            }));
        }
        json!({ "homfly_irreducible": irreducible, "agrees_with_certificate": true })
    } else {
        serde_json::Value::Null
    };
    Ok(json!({
        "name": name,
        "tutte": t.to_string(),
        "homfly": p.to_string(),
        "certificate": serde_json::to_value(&cert)
            .map_err(|e| Failure::ingestion(format!("serializing certificate: {e}")))?,
        "factor_check": factor_check,
    }))
}

fn cmd_check_graph(args: &CheckGraphArgs) -> Result<String, Failure> {
    use rayon::prelude::*;
    let text = read_input(&args.input)?;
    let records = parse_graph_jsonl(&text).map_err(engine_failure)?;
    let graphs: Vec<(String, MultiGraph)> = records
        .iter()
        .map(|rec| rec.to_graph().map(|g| (rec.name.clone(), g)))
        .collect::<Result<_, _>>()
        .map_err(engine_failure)?;
    let entries: Vec<Result<serde_json::Value, Failure>> = graphs
        .par_iter()
        .map(|(name, g)| check_one_graph(name, g, args.threshold_factor_edges))
        .collect();
    let mut values = Vec::with_capacity(entries.len());
    for e in entries {
        values.push(e?);
    }
    serde_json::to_string_pretty(&values)
        .map_err(|e| Failure::ingestion(format!("serializing report: {e}")))
}

// ------------------------------------------------------------------- search

fn cmd_search(args: &SearchArgs) -> Result<String, Failure> {
    let _ = args.dedupe; // always in effect; see the flag's help text
    if args.max_vertices < 3 {
        eprintln!(
            "warning: --max-vertices {} is below the minimum of 3; nothing to examine",
            args.max_vertices
        );
        return Ok(json!({
            "examined": 0,
            "skipped_nonplanar": 0,
            "certified": 0,
            "inconclusive": 0,
        })
        .to_string());
    }
    let outcome = search_counterexamples(
        args.max_vertices,
        args.max_edges,
        args.simple_only,
        !args.no_planar_filter,
    );
    let mut buf = String::new();
    for cert in &outcome.inconclusive {
        let line = serde_json::to_string(cert)
            .map_err(|e| Failure::ingestion(format!("serializing certificate: {e}")))?;
        let _ = writeln!(buf, "{line}");
    }
    if !outcome.inconclusive.is_empty() {
        eprintln!(
            "warning: {} inconclusive certificate(s) found — potential counterexample graphs",
            outcome.inconclusive.len()
        );
    }
    let _ = writeln!(
        buf,
        "{}",
        json!({
            "examined": outcome.examined,
            "skipped_nonplanar": outcome.skipped_nonplanar,
            "certified": outcome.certified,
            "inconclusive": outcome.inconclusive.len(),
        })
    );
    Ok(buf)
}

// -------------------------------------------------------- verify-identities

struct CheckRow {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn identity_samples() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("dipole_2", dipole(2)),
        ("dipole_3", dipole(3)),
        ("cycle_3", cycle(3)),
        ("cycle_4", cycle(4)),
        ("cycle_5", cycle(5)),
        ("complete_4", complete(4)),
        ("complete_bipartite_2_3", complete_bipartite(2, 3)),
    ]
}

/// The two boundary restrictions of the Tutte-polynomial numerator must
/// match what the plain Tutte polynomial predicts:
/// the (y0 = 0) restriction is x^h1 * T(1 - x, 1), and the (y1 = 0)
/// restriction is (-1)^h1 times the top-degree row of T composed with 1 - x.
fn restriction_check() -> Result<CheckRow, Failure> {
    let mut failures = Vec::new();
    for (name, g) in identity_samples() {
        let t = tutte(&g);
        let numerator = tutte_numerator(&g).map_err(engine_failure)?;
        let (full, top) = boundary_restrictions(&t).map_err(engine_failure)?;
        let h1 = g.cycle_rank();
        let mut shift = vec![0i64; h1 + 1];
        shift[h1] = 1;
        let expected_y01 = UniPoly::from_i64(&shift).mul(&full);
        let expected_y10 = if h1 % 2 == 1 { top.neg() } else { top };
        if numerator.restrict_y01().dehom != expected_y01
            || numerator.restrict_y10().dehom != expected_y10
        {
            failures.push(name);
        }
    }
    Ok(CheckRow {
        name: "boundary_restrictions",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "numerator restrictions match Tutte-polynomial specializations on 7 sample graphs"
                .into()
        } else {
            format!("mismatch on: {}", failures.join(", "))
        },
    })
}

fn random_connected_graph(rng: &mut impl rand::Rng) -> MultiGraph {
    loop {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=9);
        let edges: Vec<(usize, usize)> =
            (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        if let Ok(g) = MultiGraph::new(n, &edges) {
            if g.is_connected() {
                return g;
            }
        }
    }
}

fn oracle_check(seed: u64) -> Result<CheckRow, Failure> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut total = 0usize;
    for (_, g) in identity_samples() {
        total += 1;
        if tutte(&g) != tutte_oracle(&g).map_err(engine_failure)? {
            failures += 1;
        }
    }
    for _ in 0..25 {
        let g = random_connected_graph(&mut rng);
        total += 1;
        if tutte(&g) != tutte_oracle(&g).map_err(engine_failure)? {
            failures += 1;
        }
    }
    Ok(CheckRow {
        name: "tutte_oracle_agreement",
        pass: failures == 0,
        detail: format!(
            "deletion-contraction vs rank expansion on {total} graphs ({failures} mismatches)"
        ),
    })
}

fn normalization_check() -> Result<CheckRow, Failure> {
    let k2 = MultiGraph::new(2, &[(0, 1)]).map_err(engine_failure)?;
    let p = homfly_from_tutte(&k2).map_err(engine_failure)?;
    let mut pass = p.is_one();
    let mut detail = String::from("single-edge graph maps to the constant 1");
    for g in homfly::enumerate_two_connected(5, 7, false) {
        let h = homfly_from_tutte(&g).map_err(engine_failure)?;
        if h.is_zero() || !h.is_homogeneous_of_degree(0) {
            pass = false;
            detail = "a small 2-connected graph produced a non-homogeneous polynomial".into();
            break;
        }
    }
    if pass {
        detail.push_str("; all 2-connected graphs with at most 5 vertices and 7 edges \
                         give homogeneous degree-0 polynomials");
    }
    Ok(CheckRow { name: "homfly_normalization", pass, detail })
}

fn cmd_verify_identities(args: &VerifyArgs, seed: u64) -> Result<String, Failure> {
    let mut checks = Vec::new();

    let squaring = verify_squaring_identity_at(25, seed);
    checks.push(CheckRow {
        name: "squaring_identity",
        pass: squaring,
        detail: format!(
            "composite map equals coordinate squaring, symbolically and at 25 \
             random rational points (seed {seed})"
        ),
    });
    checks.push(restriction_check()?);
    checks.push(oracle_check(seed)?);
    checks.push(normalization_check()?);

    let mut known_products = None;
    if let Some(path) = &args.input {
        let text = read_input(path)?;
        let db = load_knots(&text).map_err(engine_failure)?;
        let rows = verify_known_factorizations(&db).map_err(engine_failure)?;
        let pass = rows.iter().filter(|r| r.outcome == RowOutcome::Pass).count();
        let fail =
            rows.iter().filter(|r| matches!(r.outcome, RowOutcome::Fail { .. })).count();
        let missing =
            rows.iter().filter(|r| matches!(r.outcome, RowOutcome::Missing { .. })).count();
        checks.push(CheckRow {
            name: "known_products",
            pass: fail == 0,
            detail: format!(
                "{pass} of {} product identities verified exactly, {fail} failed, \
                 {missing} reference knots absent from this database",
                rows.len()
            ),
        });
        known_products = Some(rows);
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let symbolic_failure = checks
        .iter()
        .any(|c| !c.pass && c.name != "known_products");
    let mut report = json!({
        "seed": seed,
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "all_pass": all_pass,
    });
    if let Some(rows) = known_products {
        report["known_products"] = serde_json::to_value(&rows)
            .map_err(|e| Failure::ingestion(format!("serializing rows: {e}")))?;
    }
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::ingestion(format!("serializing report: {e}")))?;
    if symbolic_failure {
        // A built-in identity can only fail if the build itself is wrong.
        eprintln!("error: a built-in identity check failed");
        eprintln!("{text}");
        return Err(Failure {
            code: EXIT_INCONSISTENCY,
            message: "built-in identity check failed".into(),
        });
    }
    Ok(text)
}

// ------------------------------------------------------------------ convert

fn convert_one(input: &str) -> Result<serde_json::Value, Failure> {
    let ki = parse_homfly(input).map_err(engine_failure)?;
    let homogeneous = convert_to_homogeneous(&ki).map_err(engine_failure)?;
    Ok(json!({
        "input": input,
        "ki": ki.to_string(),
        "homogeneous": homogeneous.to_string(),
    }))
}

fn cmd_convert(args: &ConvertArgs) -> Result<String, Failure> {
    match (&args.poly, &args.input) {
        (Some(poly), _) => {
            let value = convert_one(poly)?;
            serde_json::to_string_pretty(&value)
                .map_err(|e| Failure::ingestion(format!("serializing report: {e}")))
        }
        (None, Some(path)) => {
            let text = read_input(path)?;
            let values: Vec<serde_json::Value> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(convert_one)
                .collect::<Result<_, _>>()?;
            serde_json::to_string_pretty(&values)
                .map_err(|e| Failure::ingestion(format!("serializing report: {e}")))
        }
        (None, None) => Err(Failure::ingestion(
            "provide a polynomial argument or --input FILE",
        )),
    }
}
