//! Command-line front end for the exact diagonal computations.
//!
//! `--n` always takes the polytope subscript: `delta --polytope P --n 3`
//! works on `P_3`, `faces --polytope K --n 5` on `K_5`. The `verify`
//! subcommands index by the permutahedron size `n` (so `verify agreement
//! --n 4` compares the diagonals of `K_5`, which is the projection of
//! `P_4`); their help strings repeat this.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polydiag::cache::CacheStore;
use polydiag::chains::chain_map_check;
use polydiag::cube::verify_tiling;
use polydiag::kdiag::{delta_k_magical, delta_k_su, mp_to_cp, verify_agreement};
use polydiag::kface::{enumerate_faces_k, fiber, tree_of, KFace};
use polydiag::partition::{faces, faces_with_dim, OrderedPartition};
use polydiag::pdiag::{delta_p_top, scp, Polytope, StepMatrix};
use polydiag::perm::Permutation;
use polydiag::tree::Tree;
use polydiag::SCHEMA_VERSION;

#[derive(Parser)]
#[command(name = "polydiag", version, about = "Exact diagonals on permutahedra and associahedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel enumerations (0 = all cores). Output is
    /// canonical and independent of this setting.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Directory for cached enumerations (default: $POLYDIAG_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<std::path::PathBuf>,
    /// Lift the default size caps (delta/verify allow n up to 9).
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
enum PolytopeArg {
    #[value(alias = "p")]
    P,
    #[value(alias = "k")]
    K,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    /// Shift enumeration pushed through the Tonks projection.
    Su,
    /// Matching pairs under the Tamari order.
    Magical,
}

#[derive(Subcommand)]
enum Command {
    /// List the faces of P_n or K_n.
    Faces {
        #[arg(long, value_enum)]
        polytope: PolytopeArg,
        /// Polytope subscript (P_n or K_n).
        #[arg(long)]
        n: u8,
        /// Restrict to one dimension.
        #[arg(long)]
        dim: Option<u8>,
    },
    /// The diagonal of the top cell of P_n or K_n.
    Delta {
        #[arg(long, value_enum)]
        polytope: PolytopeArg,
        /// Polytope subscript (P_n or K_n).
        #[arg(long)]
        n: u8,
        /// Which associahedron formula to evaluate (K only).
        #[arg(long, value_enum, default_value_t = FormulaArg::Su)]
        formula: FormulaArg,
    },
    /// The strong complementary pair of a permutation.
    Scp { sigma: String },
    /// The step matrix of a permutation.
    StepMatrix { sigma: String },
    /// Project a partition (or permutation) to its planar rooted tree.
    Tonks { cell: String },
    /// Compare two faces of an associahedron in the Tamari order.
    TamariLeq { f: String, g: String },
    /// Translate a matching pair into its complementary pair.
    Mp2cp {
        /// First face, e.g. "(ooo)oo".
        #[arg(long)]
        f: String,
        /// Second face, e.g. "o(oo(oo))".
        #[arg(long)]
        g: String,
        /// Associahedron subscript (K_n); inferred from the trees if omitted.
        #[arg(long)]
        n: Option<u8>,
    },
    /// Batch verification with certificates.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check that the two associahedron diagonal formulas agree on K_{n+1}.
    Agreement {
        /// Single permutahedron size n (K_{n+1}).
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u8>,
        /// Verify every n from 1 up to this permutahedron size.
        #[arg(long)]
        max_n: Option<u8>,
    },
    /// Validate the dyadic realization of P_n inside the cube.
    Tiling {
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u8>,
        #[arg(long)]
        max_n: Option<u8>,
    },
    /// Check ∂Δ = (∂⊗1 + 1⊗∂)Δ and ∂∂ = 0 over GF(2).
    ChainMap {
        #[arg(long, value_enum)]
        polytope: PolytopeArg,
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u8>,
        #[arg(long)]
        max_n: Option<u8>,
    },
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `polydiag … | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(verified) => {
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cache(common: &Common) -> Option<CacheStore> {
    match &common.cache_dir {
        Some(dir) => CacheStore::new(dir).ok(),
        None => CacheStore::from_env(),
    }
}

/// Runs the command; `Ok(false)` means a verification failed (exit 1).
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let common = &cli.common;
    match &cli.command {
        Command::Faces { polytope, n, dim } => cmd_faces(common, *polytope, *n, *dim),
        Command::Delta {
            polytope,
            n,
            formula,
        } => cmd_delta(common, *polytope, *n, *formula),
        Command::Scp { sigma } => {
            let sigma: Permutation = sigma.parse().context("parsing permutation")?;
            let cp = scp(&sigma);
            match common.format {
                Format::Text => println!("{} × {}", cp.alpha, cp.beta),
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "sigma": sigma.to_string(),
                    "alpha": cp.alpha.to_string(),
                    "beta": cp.beta.to_string(),
                })),
            }
            Ok(true)
        }
        Command::StepMatrix { sigma } => {
            let sigma: Permutation = sigma.parse().context("parsing permutation")?;
            let m = StepMatrix::of(&sigma);
            match common.format {
                Format::Text => println!("{m}"),
                Format::Json => {
                    let rows: Vec<Vec<u8>> = (1..=m.rows)
                        .map(|i| (1..=m.cols).map(|j| m.entry(i, j)).collect())
                        .collect();
                    print_json(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "sigma": sigma.to_string(),
                        "rows": rows,
                    }));
                }
            }
            Ok(true)
        }
        Command::Tonks { cell } => {
            let a: OrderedPartition = cell.parse().context("parsing partition")?;
            let t = tree_of(&a);
            match common.format {
                Format::Text => println!("{t}"),
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "cell": a.to_string(),
                    "tree": t.to_string(),
                    "degenerate": a.is_degenerate(),
                })),
            }
            Ok(true)
        }
        Command::TamariLeq { f, g } => {
            let (f, g) = (parse_kface(f)?, parse_kface(g)?);
            let leq = polydiag::kface::tamari_leq(&f, &g)?;
            match common.format {
                Format::Text => println!("{leq}"),
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "f": f.tree.to_string(),
                    "g": g.tree.to_string(),
                    "leq": leq,
                })),
            }
            Ok(true)
        }
        Command::Mp2cp { f, g, n } => {
            let (f, g) = (parse_kface(f)?, parse_kface(g)?);
            if let Some(k_index) = n {
                if f.n + 1 != *k_index {
                    bail!("trees have {} leaves but --n {k_index} was given", f.n + 1);
                }
            }
            let cp = mp_to_cp(&f, &g)?;
            match common.format {
                Format::Text => {
                    println!("{} × {}", cp.alpha, cp.beta);
                    println!("sigma = {}", cp.sigma);
                    println!("M = {}", cp.m);
                    println!("N = {}", cp.n_moves);
                }
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "f": f.tree.to_string(),
                    "g": g.tree.to_string(),
                    "alpha": cp.alpha.to_string(),
                    "beta": cp.beta.to_string(),
                    "sigma": cp.sigma.to_string(),
                    "m": shift_json(&cp.m),
                    "n": shift_json(&cp.n_moves),
                })),
            }
            Ok(true)
        }
        Command::Verify { what } => cmd_verify(common, what),
    }
}

fn shift_json(s: &polydiag::pdiag::ShiftSequence) -> Vec<Vec<u8>> {
    s.0.iter().map(|b| b.iter().collect()).collect()
}

fn parse_kface(s: &str) -> anyhow::Result<KFace> {
    let tree: Tree = s.parse().context("parsing tree")?;
    let n = tree.leaf_count() - 1;
    Ok(KFace::new(tree, n)?)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn check_cap(common: &Common, n: u8, cap: u8, large_cap: u8) -> anyhow::Result<()> {
    let limit = if common.allow_large { large_cap } else { cap };
    if n > limit {
        bail!("n = {n} exceeds the cap {limit} (use --allow-large for up to {large_cap})");
    }
    Ok(())
}

fn cmd_faces(common: &Common, polytope: PolytopeArg, n: u8, dim: Option<u8>) -> anyhow::Result<bool> {
    if n == 0 {
        bail!("n must be positive");
    }
    match polytope {
        PolytopeArg::P => {
            check_cap(common, n, 9, 16)?;
            let list: Vec<String> = match dim {
                Some(d) => faces_with_dim(n, d)?.map(|a| a.to_string()).collect(),
                None => faces(n).map(|a| a.to_string()).collect(),
            };
            match common.format {
                Format::Text => {
                    for f in &list {
                        println!("{f}");
                    }
                }
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "polytope": "P",
                    "n": n,
                    "dim": dim,
                    "faces": list,
                })),
            }
            Ok(true)
        }
        PolytopeArg::K => {
            // K_n is the projection of P_{n-1}
            if n < 2 {
                bail!("K_n needs n ≥ 2");
            }
            check_cap(common, n - 1, 9, 15)?;
            let inner = n - 1;
            let list = enumerate_faces_k(inner, dim)?;
            match common.format {
                Format::Text => {
                    for f in &list {
                        println!("{}\t{}", f.tree, f.min_cell);
                    }
                }
                Format::Json => {
                    let objs: Vec<serde_json::Value> = list
                        .iter()
                        .map(|f| {
                            let fib = fiber(f);
                            json!({
                                "tree": f.tree.to_string(),
                                "dim": f.dim(),
                                "min_cell": f.min_cell.to_string(),
                                "max_cell": fib.max.to_string(),
                                "min_vertex": f.min_vertex.to_string(),
                                "max_vertex": f.max_vertex.to_string(),
                                "fiber": fib.members.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    print_json(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "polytope": "K",
                        "n": n,
                        "dim": dim,
                        "faces": objs,
                    }));
                }
            }
            Ok(true)
        }
    }
}

fn cmd_delta(
    common: &Common,
    polytope: PolytopeArg,
    n: u8,
    formula: FormulaArg,
) -> anyhow::Result<bool> {
    if n == 0 {
        bail!("n must be positive");
    }
    let store = cache(common);
    let (kind, inner) = match (polytope, formula) {
        (PolytopeArg::P, _) => ("delta-P", n),
        (PolytopeArg::K, FormulaArg::Su) => {
            if n < 2 {
                bail!("K_n needs n ≥ 2");
            }
            ("delta-K-su", n - 1)
        }
        (PolytopeArg::K, FormulaArg::Magical) => {
            if n < 2 {
                bail!("K_n needs n ≥ 2");
            }
            ("delta-K-magical", n - 1)
        }
    };
    check_cap(common, inner, 8, 9)?;

    let tag = match polytope {
        PolytopeArg::P => "P",
        PolytopeArg::K => "K",
    };
    let payload = match store.as_ref().and_then(|s| s.get(kind, tag, inner)) {
        Some(hit) => hit,
        None => {
            let pairs: Vec<(String, String)> = match (polytope, formula) {
                (PolytopeArg::P, _) => delta_p_top(inner)
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
                (PolytopeArg::K, FormulaArg::Su) => delta_k_su(inner)
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
                (PolytopeArg::K, FormulaArg::Magical) => delta_k_magical(inner)
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            };
            let payload = serde_json::to_string(&pairs).expect("serializable");
            if let Some(s) = &store {
                let _ = s.put(kind, tag, inner, &payload);
            }
            payload
        }
    };
    let pairs: Vec<(String, String)> = serde_json::from_str(&payload).context("corrupt payload")?;
    match common.format {
        Format::Text => {
            for (a, b) in &pairs {
                println!("{a} × {b}");
            }
        }
        Format::Json => print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "polytope": tag,
            "n": n,
            "formula": match (polytope, formula) {
                (PolytopeArg::P, _) => "shift",
                (PolytopeArg::K, FormulaArg::Su) => "su",
                (PolytopeArg::K, FormulaArg::Magical) => "magical",
            },
            "count": pairs.len(),
            "components": pairs,
        })),
    }
    Ok(true)
}

fn range(n: Option<u8>, max_n: Option<u8>, default_max: u8) -> anyhow::Result<Vec<u8>> {
    match (n, max_n) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(m)) => Ok((1..=m).collect()),
        (None, None) => Ok((1..=default_max).collect()),
        (Some(_), Some(_)) => Err(anyhow!("--n and --max-n are mutually exclusive")),
    }
}

fn cmd_verify(common: &Common, what: &VerifyCommand) -> anyhow::Result<bool> {
    match what {
        VerifyCommand::Agreement { n, max_n } => {
            let ns = range(*n, *max_n, 6)?;
            let mut all_ok = true;
            let mut certs = Vec::new();
            for &n in &ns {
                check_cap(common, n, 8, 9)?;
                let cert = verify_agreement(n);
                all_ok &= cert.ok();
                if common.format == Format::Text {
                    println!(
                        "n={} K_{}: su={} magical={} equal={} preimage_unique={} roundtrips_ok={} [{} ms]",
                        cert.n,
                        cert.n + 1,
                        cert.su_count,
                        cert.magical_count,
                        cert.equal,
                        cert.preimage_unique,
                        cert.roundtrip_failures.is_empty(),
                        cert.runtime_ms
                    );
                }
                certs.push(cert);
            }
            if common.format == Format::Json {
                print_json(&certs);
            }
            Ok(all_ok)
        }
        VerifyCommand::Tiling { n, max_n } => {
            let ns: Vec<u8> = range(*n, *max_n, 5)?.into_iter().filter(|&x| x >= 2).collect();
            let mut all_ok = true;
            let mut reports = Vec::new();
            for &n in &ns {
                check_cap(common, n, 7, 8)?;
                let report = verify_tiling(n)?;
                all_ok &= report.pass;
                if common.format == Format::Text {
                    println!("n={n}: pass={}", report.pass);
                    for c in &report.checks {
                        println!("  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.check);
                        for w in c.witnesses.iter().take(5) {
                            println!("      {w}");
                        }
                    }
                }
                reports.push(report);
            }
            if common.format == Format::Json {
                print_json(&reports);
            }
            Ok(all_ok)
        }
        VerifyCommand::ChainMap { polytope, n, max_n } => {
            let ns = range(*n, *max_n, 5)?;
            let p = match polytope {
                PolytopeArg::P => Polytope::P,
                PolytopeArg::K => Polytope::K,
            };
            let mut all_ok = true;
            let mut reports = Vec::new();
            for &n in &ns {
                check_cap(common, n, 7, 8)?;
                let report = chain_map_check(p, n)?;
                all_ok &= report.pass();
                if common.format == Format::Text {
                    println!(
                        "{} n={n}: boundary²=0: {} chain map: {}",
                        p, report.boundary_squares_to_zero, report.chain_map_holds
                    );
                }
                reports.push(report);
            }
            if common.format == Format::Json {
                print_json(&reports);
            }
            Ok(all_ok)
        }
    }
}
