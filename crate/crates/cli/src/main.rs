//! Command-line surface: verify, construct, decode, bounds, exact,
//! certify, sweep.
//!
//! Machine-readable payloads (JSON or CSV) go to standard output,
//! diagnostics to standard error. Exit codes: 0 the property holds or
//! the command succeeded, 1 the property fails (not free, no plan,
//! certificate mismatch), 2 usage or parse errors, 3 infeasible
//! requests (search limits, inapplicable bounds).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use turan_batch::bounds;
use turan_batch::construct::{random_construct, DeletionPolicy};
use turan_batch::exact::{self, ExactError, SearchMode};
use turan_batch::freeness::{self, FreenessError};
use turan_batch::hypergraph::EdgeSelection;
use turan_batch::io::{read_hypergraph, write_hypergraph};
use turan_batch::params::{validate_params, ParamError};
use turan_batch::structure;
use turan_batch::{Hypergraph, SCHEMA};

const EXIT_OK: u8 = 0;
const EXIT_PROPERTY_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "turan-batch",
    version,
    about = "Verify, construct, decode and exactly optimize uniform batch codes and deficiency-bounded hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactFamily {
    /// Selections of at most k edges are constrained.
    Ex,
    /// Only selections of exactly k edges are constrained.
    F,
    /// Multihypergraph batch codes (q = 0).
    M,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactMode {
    Bruteforce,
    BranchAndBound,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertKind {
    Peel,
    Bfs,
    Link,
    Decompose,
}

#[derive(Subcommand)]
enum Command {
    /// Decide freeness of a hypergraph file; exit 0 exactly when free.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        q: i64,
        /// Constrain only selections of exactly k edges.
        #[arg(long, conflicts_with = "cbc")]
        f_exact: bool,
        /// Check the batch-code property (q = 0, any k >= 1).
        #[arg(long)]
        cbc: bool,
    },
    /// Randomized construction: sample at the critical probability and
    /// repair by deletion; writes the hypergraph file and a JSON report.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "witness-max-degree")]
        policy: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Assign requested items to distinct servers, one per item.
    Decode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Comma-separated edge indices.
        #[arg(long)]
        items: String,
    },
    /// Evaluate every applicable closed-form bound on a grid of n.
    Bounds {
        /// Comma-separated values or inclusive ranges like 16..20.
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Exact extremal values by search, or a difference table.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        q: i64,
        #[arg(long, value_enum, default_value_t = ExactFamily::Ex)]
        family: ExactFamily,
        #[arg(long, value_enum, default_value_t = ExactMode::BranchAndBound)]
        mode: ExactMode,
        /// Emit the n-range difference table as CSV instead.
        #[arg(long, requires = "n_end")]
        diff_table: bool,
        /// Upper end (inclusive) of the difference-table range; --n is
        /// the lower end.
        #[arg(long)]
        n_end: Option<usize>,
    },
    /// Emit a structural certificate as JSON, or re-validate one.
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: CertKind,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        q: i64,
        /// Regenerate and compare byte-for-byte against this file.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Evaluate bounds, constructions and exact values over a parameter
    /// grid, one CSV row per point.
    Sweep {
        /// Semicolon-separated dimensions, e.g.
        /// "n=6..8;r=2;k=6;q=0;seeds=0..4;c=0.5".
        #[arg(long)]
        grid: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Compute exact values when C(n, r) is at most this.
        #[arg(long, default_value_t = 28)]
        exact_limit: u128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            input,
            k,
            q,
            f_exact,
            cbc,
        } => cmd_verify(&input, k, q, f_exact, cbc),
        Command::Construct {
            n,
            r,
            k,
            q,
            c,
            seed,
            policy,
            out,
        } => cmd_construct(n, r, k, q, c, seed, &policy, &out),
        Command::Decode { input, k, items } => cmd_decode(&input, k, &items),
        Command::Bounds { n, r, k, q, format } => cmd_bounds(&n, r, k, q, format),
        Command::Exact {
            n,
            r,
            k,
            q,
            family,
            mode,
            diff_table,
            n_end,
        } => cmd_exact(n, r, k, q, family, mode, diff_table, n_end),
        Command::Certify {
            input,
            kind,
            root,
            k,
            q,
            check,
        } => cmd_certify(&input, kind, root, k, q, check.as_deref()),
        Command::Sweep {
            grid,
            csv,
            exact_limit,
        } => cmd_sweep(&grid, csv.as_deref(), exact_limit),
    };
    ExitCode::from(code)
}

fn usage_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn infeasible(message: impl std::fmt::Display) -> u8 {
    eprintln!("infeasible: {message}");
    EXIT_INFEASIBLE
}

fn load_hypergraph(path: &std::path::Path) -> Result<Hypergraph, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(format!("{}: {e}", path.display())))?;
    read_hypergraph(&text).map_err(|e| usage_error(format!("{}: {e}", path.display())))
}

fn selection_json(selection: &Option<EdgeSelection>) -> serde_json::Value {
    match selection {
        None => serde_json::Value::Null,
        Some(sel) => json!(sel.to_vec()),
    }
}

fn cmd_verify(path: &std::path::Path, k: usize, q: i64, f_exact: bool, cbc: bool) -> u8 {
    let h = match load_hypergraph(path) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let (mode, verdict) = if cbc {
        if k == 0 {
            return usage_error("--k must be at least 1");
        }
        match freeness::is_cbc(&h, k) {
            Ok(v) => ("batch-code", v),
            Err(e) => return usage_error(e),
        }
    } else {
        let params = match validate_params(h.r(), k, q) {
            Ok(p) => p,
            Err(e) => return usage_error(e),
        };
        let result = if f_exact {
            freeness::is_f_free(&h, &params)
        } else {
            freeness::is_free(&h, &params)
        };
        match result {
            Ok(v) => (if f_exact { "exact-size" } else { "at-most" }, v),
            Err(e) => return usage_error(e),
        }
    };
    let payload = json!({
        "schema": SCHEMA,
        "mode": mode,
        "n": h.n(),
        "r": h.r(),
        "m": h.m(),
        "k": k,
        "q": if cbc { 0 } else { q },
        "free": verdict.free,
        "max_deficiency": verdict.max_deficiency_found,
        "witness": selection_json(&verdict.witness),
    });
    println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
    if verdict.free {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILS
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    n: usize,
    r: usize,
    k: usize,
    q: i64,
    c: f64,
    seed: u64,
    policy: &str,
    out: &std::path::Path,
) -> u8 {
    let policy: DeletionPolicy = match policy.parse() {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let params = match validate_params(r, k, q) {
        Ok(p) => p,
        Err(e @ ParamError::QTooSmall { .. }) => return infeasible(e),
        Err(e) => return usage_error(e),
    };
    if n < r {
        return usage_error("n must be at least r");
    }
    if c <= 0.0 || !c.is_finite() {
        return usage_error("c must be positive");
    }
    let report = match random_construct(n, &params, c, seed, policy) {
        Ok(rep) => rep,
        Err(e) => return usage_error(e),
    };
    if let Err(e) = std::fs::write(out, write_hypergraph(&report.result)) {
        return usage_error(format!("{}: {e}", out.display()));
    }
    let payload = json!({
        "schema": SCHEMA,
        "n": report.n,
        "r": report.r,
        "k": report.k,
        "q": report.q,
        "c": report.c,
        "p": report.p,
        "clamped": report.clamped,
        "seed": report.seed,
        "policy": report.policy.as_str(),
        "sampled": report.sampled_edges,
        "deleted": report.deletions,
        "retained": report.retained_edges(),
        "edges_file": out.display().to_string(),
    });
    println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
    EXIT_OK
}

fn cmd_decode(path: &std::path::Path, k: usize, items: &str) -> u8 {
    let h = match load_hypergraph(path) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let mut indices = Vec::new();
    for field in items.split(',').filter(|s| !s.trim().is_empty()) {
        match field.trim().parse::<usize>() {
            Ok(v) => indices.push(v),
            Err(_) => return usage_error(format!("bad item index `{field}`")),
        }
    }
    let request = EdgeSelection::new(indices.iter().copied());
    if request.len() != indices.len() {
        return usage_error("duplicate item indices in the request");
    }
    if request.len() > k {
        return usage_error(format!(
            "request of {} items exceeds the batch size k = {k}",
            request.len()
        ));
    }
    match freeness::sdr_retrieve(&h, &request) {
        Ok(plan) => {
            let payload = json!({
                "schema": SCHEMA,
                "k": k,
                "items": request.to_vec(),
                "assignment": plan.assignment,
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            EXIT_OK
        }
        Err(FreenessError::NoSdr { violator }) => {
            let payload = json!({
                "schema": SCHEMA,
                "k": k,
                "items": request.to_vec(),
                "assignment": serde_json::Value::Null,
                "deficient_subrequest": violator.to_vec(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            EXIT_PROPERTY_FAILS
        }
        Err(e) => usage_error(e),
    }
}

fn parse_usize_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            let hi: usize = hi.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("bad value `{part}`"))?);
        }
    }
    Ok(out)
}

fn bound_cell(entry: &bounds::BoundEntry) -> String {
    entry.value.map(|v| v.to_string()).unwrap_or_default()
}

fn cmd_bounds(n_spec: &str, r: usize, k: usize, q: i64, format: OutputFormat) -> u8 {
    let params = match validate_params(r, k, q) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let ns = match parse_usize_list(n_spec) {
        Ok(ns) => ns,
        Err(e) => return usage_error(e),
    };
    if format == OutputFormat::Csv {
        println!(
            "n,r,k,q,lower_exponent,lower_exponent_f64,graph_upper,hypergraph_upper,cbc_upper,diff_upper,competing_exponent_f64"
        );
    }
    for n in ns {
        let report = bounds::bound_report(n, &params);
        match format {
            OutputFormat::Json => {
                let mut value = serde_json::to_value(&report).expect("json");
                value["schema"] = json!(SCHEMA);
                println!("{}", serde_json::to_string(&value).expect("json"));
            }
            OutputFormat::Csv => {
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    report.n,
                    report.r,
                    report.k,
                    report.q,
                    report.lower_exponent,
                    report.lower_exponent_f64,
                    bound_cell(&report.graph_upper),
                    bound_cell(&report.hypergraph_upper),
                    bound_cell(&report.cbc_upper),
                    bound_cell(&report.diff_upper),
                    report
                        .competing_exponent_f64
                        .map(|v| v.to_string())
                        .unwrap_or_default(),
                );
            }
        }
    }
    EXIT_OK
}

#[allow(clippy::too_many_arguments)]
fn cmd_exact(
    n: usize,
    r: usize,
    k: usize,
    q: i64,
    family: ExactFamily,
    mode: ExactMode,
    diff_table: bool,
    n_end: Option<usize>,
) -> u8 {
    let mode = match mode {
        ExactMode::Bruteforce => SearchMode::Bruteforce,
        ExactMode::BranchAndBound => SearchMode::BranchAndBound,
    };
    if diff_table {
        let end = n_end.expect("clap enforces --n-end with --diff-table");
        let table = match exact::difference_table(r, k, q, n..=end, mode) {
            Ok(t) => t,
            Err(e @ ExactError::TooLarge { .. }) => return infeasible(e),
            Err(e) => return usage_error(e),
        };
        println!("n,exact_f,exact_ex,difference,diff_upper");
        for row in &table.rows {
            println!(
                "{},{},{},{},{}",
                row.n,
                row.exact_f,
                row.exact_ex,
                row.difference,
                row.diff_upper.map(|v| v.to_string()).unwrap_or_default(),
            );
        }
        return EXIT_OK;
    }
    let result = match family {
        ExactFamily::Ex => exact::exact_ex(n, r, k, q, mode),
        ExactFamily::F => exact::exact_f(n, r, k, q, mode),
        ExactFamily::M => {
            if q != 0 {
                return usage_error("--family m fixes q = 0");
            }
            exact::exact_m(n, r, k, mode)
        }
    };
    match result {
        Ok(res) => {
            let payload = json!({
                "schema": SCHEMA,
                "family": match family {
                    ExactFamily::Ex => "ex",
                    ExactFamily::F => "f",
                    ExactFamily::M => "m",
                },
                "n": res.n,
                "r": res.r,
                "k": res.k,
                "q": res.q,
                "mode": res.mode,
                "value": res.value,
                "explored_nodes": res.explored_nodes,
                "witness_edges": res.witness.edges(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            EXIT_OK
        }
        Err(e @ ExactError::TooLarge { .. }) => infeasible(e),
        Err(e) => usage_error(e),
    }
}

fn certificate_payload(
    h: &Hypergraph,
    kind: CertKind,
    root: usize,
    k: usize,
    q: i64,
) -> Result<serde_json::Value, u8> {
    let value = match kind {
        CertKind::Peel => match structure::peel_min_degree(h) {
            Ok(cert) => serde_json::to_value(&cert).expect("json"),
            Err(e) => return Err(usage_error(e)),
        },
        CertKind::Bfs => match structure::bfs_certificate(h, root, k, q) {
            Ok(cert) => serde_json::to_value(&cert).expect("json"),
            Err(structure::StructureError::NotFree) => {
                return Err({
                    eprintln!("input is not free at (2, {k}, {q})");
                    EXIT_PROPERTY_FAILS
                })
            }
            Err(e) => return Err(usage_error(e)),
        },
        CertKind::Link => {
            let params = match validate_params(h.r(), k, q) {
                Ok(p) => p,
                Err(e) => return Err(usage_error(e)),
            };
            match structure::best_link(h, &params) {
                Ok(cert) => serde_json::to_value(&cert).expect("json"),
                Err(e) => return Err(usage_error(e)),
            }
        }
        CertKind::Decompose => match structure::decompose_maximal_forbidden(h, k, q) {
            Ok(cert) => serde_json::to_value(&cert).expect("json"),
            Err(e) => return Err(usage_error(e)),
        },
    };
    let kind_name = match kind {
        CertKind::Peel => "peel",
        CertKind::Bfs => "bfs",
        CertKind::Link => "link",
        CertKind::Decompose => "decompose",
    };
    Ok(json!({
        "schema": SCHEMA,
        "kind": kind_name,
        "certificate": value,
    }))
}

fn cmd_certify(
    path: &std::path::Path,
    kind: CertKind,
    root: usize,
    k: usize,
    q: i64,
    check: Option<&std::path::Path>,
) -> u8 {
    let h = match load_hypergraph(path) {
        Ok(h) => h,
        Err(code) => return code,
    };
    let payload = match certificate_payload(&h, kind, root, k, q) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let rendered = serde_json::to_string_pretty(&payload).expect("json");
    match check {
        None => {
            println!("{rendered}");
            EXIT_OK
        }
        Some(stored_path) => {
            let stored = match std::fs::read_to_string(stored_path) {
                Ok(s) => s,
                Err(e) => return usage_error(format!("{}: {e}", stored_path.display())),
            };
            if stored.trim_end_matches('\n') == rendered.trim_end_matches('\n') {
                eprintln!("certificate matches");
                EXIT_OK
            } else {
                eprintln!("certificate mismatch");
                EXIT_PROPERTY_FAILS
            }
        }
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct Grid {
    n: Vec<usize>,
    r: Vec<usize>,
    k: Vec<usize>,
    q: Vec<i64>,
    seeds: Vec<u64>,
    c: f64,
}

fn parse_i64_list(spec: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let part = part.trim();
        // split on the range dots, minding negative bounds
        if let Some(idx) = part.find("..") {
            let (lo, hi) = (&part[..idx], &part[idx + 2..]);
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range `{part}`"))?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("bad value `{part}`"))?);
        }
    }
    Ok(out)
}

fn parse_grid(spec: &str) -> Result<Grid, String> {
    let mut grid = Grid {
        n: Vec::new(),
        r: Vec::new(),
        k: Vec::new(),
        q: Vec::new(),
        seeds: Vec::new(),
        c: 1.0,
    };
    for dim in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let (key, value) = dim
            .split_once('=')
            .ok_or_else(|| format!("bad grid dimension `{dim}`"))?;
        match key.trim() {
            "n" => grid.n = parse_usize_list(value)?,
            "r" => grid.r = parse_usize_list(value)?,
            "k" => grid.k = parse_usize_list(value)?,
            "q" => grid.q = parse_i64_list(value)?,
            "seeds" => {
                grid.seeds = parse_usize_list(value)?.into_iter().map(|v| v as u64).collect()
            }
            "c" => grid.c = value.trim().parse().map_err(|_| format!("bad c `{value}`"))?,
            other => return Err(format!("unknown grid key `{other}`")),
        }
    }
    if grid.r.is_empty() || grid.k.is_empty() || grid.q.is_empty() {
        return Err("grid needs r, k and q".to_string());
    }
    Ok(grid)
}

const SWEEP_HEADER: &str = "n,r,k,q,seed,c,p,sampled,deleted,retained,lower_exponent_f64,upper_exponent_f64,competing_exponent_f64,graph_upper,hypergraph_upper,cbc_upper,diff_upper,exact_ex,exact_f,difference";

fn sweep_rows(grid: &Grid, exact_limit: u128) -> Vec<String> {
    let mut rows = Vec::new();
    for &r in &grid.r {
        for &k in &grid.k {
            for &q in &grid.q {
                let params = match validate_params(r, k, q) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("skipping (r={r}, k={k}, q={q}): {e}");
                        continue;
                    }
                };
                for &n in &grid.n {
                    let report = bounds::bound_report(n, &params);
                    let cap = (k as i64).div_euclid(q + r as i64 + 1);
                    let upper_exponent_f64 =
                        r as f64 - 1.0 + if cap > 0 { 1.0 / cap as f64 } else { f64::NAN };
                    let feasible =
                        turan_batch::binom::binomial(n as u64, r as u64) <= exact_limit;
                    let (exact_ex, exact_f, difference) = if feasible {
                        let ex = exact::exact_ex(n, r, k, q, SearchMode::BranchAndBound)
                            .map(|res| res.value)
                            .ok();
                        let f = exact::exact_f(n, r, k, q, SearchMode::BranchAndBound)
                            .map(|res| res.value)
                            .ok();
                        let diff = match (ex, f) {
                            (Some(ex), Some(f)) => Some(f - ex),
                            _ => None,
                        };
                        (ex, f, diff)
                    } else {
                        (None, None, None)
                    };
                    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();

                    let constructions: Vec<Option<&u64>> = if grid.seeds.is_empty() {
                        vec![None]
                    } else {
                        grid.seeds.iter().map(Some).collect()
                    };
                    for seed in constructions {
                        let (seed_cell, c_cell, p_cell, sampled, deleted, retained) = match seed {
                            None => (
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                            ),
                            Some(&seed) => {
                                match random_construct(
                                    n,
                                    &params,
                                    grid.c,
                                    seed,
                                    DeletionPolicy::WitnessMaxDegree,
                                ) {
                                    Ok(rep) => (
                                        seed.to_string(),
                                        grid.c.to_string(),
                                        rep.p.to_string(),
                                        rep.sampled_edges.to_string(),
                                        rep.deletions.to_string(),
                                        rep.retained_edges().to_string(),
                                    ),
                                    Err(e) => {
                                        eprintln!("construction failed at n={n} seed={seed}: {e}");
                                        continue;
                                    }
                                }
                            }
                        };
                        rows.push(format!(
                            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                            n,
                            r,
                            k,
                            q,
                            seed_cell,
                            c_cell,
                            p_cell,
                            sampled,
                            deleted,
                            retained,
                            report.lower_exponent_f64,
                            upper_exponent_f64,
                            report
                                .competing_exponent_f64
                                .map(|v| v.to_string())
                                .unwrap_or_default(),
                            bound_cell(&report.graph_upper),
                            bound_cell(&report.hypergraph_upper),
                            bound_cell(&report.cbc_upper),
                            bound_cell(&report.diff_upper),
                            opt(exact_ex),
                            opt(exact_f),
                            opt(difference),
                        ));
                    }
                }
            }
        }
    }
    rows
}

fn cmd_sweep(grid_spec: &str, csv: Option<&std::path::Path>, exact_limit: u128) -> u8 {
    let grid = match parse_grid(grid_spec) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    let rows = sweep_rows(&grid, exact_limit);
    let mut out = String::with_capacity(rows.len() * 64 + SWEEP_HEADER.len() + 1);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(row);
        out.push('\n');
    }
    match csv {
        None => {
            print!("{out}");
            EXIT_OK
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                return usage_error(format!("{}: {e}", path.display()));
            }
            let payload = json!({
                "schema": SCHEMA,
                "rows": rows.len(),
                "csv": path.display().to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            EXIT_OK
        }
    }
}
