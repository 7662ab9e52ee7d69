//! `nilrad` — certify whether small nilpotent Lie algebras are Einstein nilradicals.
//!
//! Exit codes: 0 EN, 1 NOT_EN (or catalog mismatches), 2 inconclusive, 64 usage or
//! parse error, 65 catalog schema error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilrad::catalog::{self, CatalogError, Certificate, ClassifyOptions, Report};
use nilrad::degeneration::{in_g_phi, one_param_limit, search_degeneration, try_witness, Invariants, Limit};
use nilrad::derivations::{derivation_space, diagonal_rank, diagonal_torus_is_maximal, pre_einstein};
use nilrad::nicebasis::{gram_matrix, is_nice, positive_solution};
use nilrad::scalar::{parse_rational, Scalar};
use nilrad::{parse_law, series_signature, AnyLaw, Rational, DEFAULT_TOL};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 64;
const EXIT_SCHEMA: u8 = 65;

#[derive(Parser)]
#[command(name = "nilrad", version, about = "Einstein-nilradical certification for nilpotent Lie algebras")]
struct Cli {
    /// Absolute tolerance for float laws
    #[arg(long, global = true, env = "NILRAD_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Random degeneration trials when no other route decides
    #[arg(long, default_value_t = 1000)]
    search: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a law file and print its report
    Check {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the structural invariants of a law file
    Invariants { file: PathBuf },
    /// Catalog operations
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Follow the flow exp(tX) on a law, or search for a degenerating X
    Degenerate {
        file: PathBuf,
        /// Comma-separated diagonal exponents a_1,...,a_n
        #[arg(long = "X", value_name = "LIST", allow_hyphen_values = true, conflicts_with = "search")]
        x: Option<String>,
        /// Number of random trials
        #[arg(long)]
        search: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report on a law file, or on every entry of a catalog file
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Classify every entry and compare with the recorded expectations
    Verify {
        file: PathBuf,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        parallel: usize,
        /// Restrict to one entry (instance id or entry id)
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Fail(u8, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("nilrad: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_law(path: &Path, tol: f64) -> Result<AnyLaw, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let law = parse_law(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(law.with_tol(tol))
}

fn options(tol: f64, trials: usize, seed: u64, timing: bool) -> ClassifyOptions {
    ClassifyOptions { tol, search_trials: trials, seed, timing }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(usage(format!("invalid tolerance {tol}")));
    }
    match cli.cmd {
        Cmd::Check { file, search, json } => {
            let law = read_law(&file, tol)?;
            let id = file.file_stem().map_or("law".into(), |s| s.to_string_lossy().into_owned());
            let r = catalog::classify_law(&id, &law, &options(tol, search.search, search.seed, false));
            print_report(&r, json);
            Ok(r.verdict.exit_code() as u8)
        }
        Cmd::Invariants { file } => {
            let law = read_law(&file, tol)?;
            print_invariants(&law);
            Ok(0)
        }
        Cmd::Catalog { cmd: CatalogCmd::Verify { file, parallel, only, json } } => verify(&file, parallel, only, json, tol),
        Cmd::Degenerate { file, x, search, seed } => degenerate(&file, x, search, seed, tol),
        Cmd::Report { file, format, timing } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let json = matches!(format, Format::Json);
            if text.trim_start().starts_with('{') {
                let instances = catalog::parse_catalog(&text).map_err(catalog_fail)?;
                let reports = catalog::verify_all(&instances, &options(tol, 1000, 0, timing), 0);
                if json {
                    let vals: Vec<serde_json::Value> =
                        reports.iter().map(|r| serde_json::to_value(r).expect("report serializes")).collect();
                    println!("{}", serde_json::to_string_pretty(&vals).expect("serializes"));
                } else {
                    for r in &reports {
                        print_report(r, false);
                        println!();
                    }
                }
                Ok(if reports.iter().all(|r| r.mismatches.is_empty()) { 0 } else { 1 })
            } else {
                let law = parse_law(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?.with_tol(tol);
                let id = file.file_stem().map_or("law".into(), |s| s.to_string_lossy().into_owned());
                let r = catalog::classify_law(&id, &law, &options(tol, 1000, 0, timing));
                print_report(&r, json);
                Ok(r.verdict.exit_code() as u8)
            }
        }
    }
}

fn catalog_fail(e: CatalogError) -> Fail {
    match e {
        CatalogError::Io { .. } => usage(e.to_string()),
        _ => Fail(EXIT_SCHEMA, e.to_string()),
    }
}

fn verify(file: &Path, parallel: usize, only: Option<String>, json: bool, tol: f64) -> Result<u8, Fail> {
    let mut instances = catalog::load_catalog(file).map_err(catalog_fail)?;
    if let Some(id) = &only {
        instances.retain(|i| &i.id == id || &i.entry_id == id);
        if instances.is_empty() {
            return Err(usage(format!("no catalog entry {id:?}")));
        }
    }
    let reports = catalog::verify_all(&instances, &options(tol, 1000, 0, false), parallel);
    let matched = reports.iter().filter(|r| r.mismatches.is_empty()).count();
    if json {
        let vals: Vec<serde_json::Value> =
            reports.iter().map(|r| serde_json::to_value(r).expect("report serializes")).collect();
        println!("{}", serde_json::to_string_pretty(&vals).expect("serializes"));
    } else {
        for r in &reports {
            println!("{}", r.summary());
            for m in &r.mismatches {
                println!("    {}: expected {}, computed {}", m.field, m.expected, m.computed);
            }
        }
        println!("{matched}/{} match", reports.len());
    }
    Ok(if matched == reports.len() { 0 } else { 1 })
}

fn print_report(r: &Report, json: bool) {
    if json {
        println!("{}", r.to_json());
        return;
    }
    println!("{}: {} (route: {})", r.id, r.verdict.as_str(), r.route);
    let inv = &r.invariants;
    println!(
        "  dim Der {}  derived {:?}  lcs {:?}  rank {}{}",
        inv.dim_der,
        inv.derived,
        inv.lcs,
        inv.rank,
        match inv.torus_maximal {
            Some(false) => " (diagonal torus not maximal)",
            _ => "",
        }
    );
    if let Some(p) = &inv.pre_einstein {
        println!("  pre-Einstein φ = diag({})", p.join(", "));
    }
    match &inv.not_nice {
        None => println!("  basis is nice"),
        Some(why) => println!("  basis is not nice: {why}"),
    }
    for c in &r.certificates {
        println!("  certificate: {}", describe(c));
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    for m in &r.mismatches {
        println!("  MISMATCH {}: expected {}, computed {}", m.field, m.expected, m.computed);
    }
    if let Some(t) = r.timing_ms {
        println!("  time {t:.1} ms");
    }
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::RankZero => "rank zero (characteristically nilpotent)".into(),
        Certificate::NonPositivePreEinstein { phi, index } => {
            format!("φ has non-positive eigenvalue φ_{} = {}", index + 1, phi[*index])
        }
        Certificate::PositiveSolution { on, x, soliton_norm } => {
            format!("Ux = [1] has positive solution x = ({}) on {on}; ‖S_β‖² = {soliton_norm}", x.join(", "))
        }
        Certificate::NoPositiveSolution { on, status } => format!("Ux = [1] on {on}: {status}"),
        Certificate::NilsolitonDecomposition { on, c, d, .. } => {
            format!("m({on}) = {c}·Id + diag({}), a derivation", d.join(", "))
        }
        Certificate::NonClosedOrbit { x, limit, distinguishing, source, framed } => format!(
            "X = ({}){} ({source}) degenerates to {limit}{}",
            x.join(","),
            if *framed { " in frame" } else { "" },
            if distinguishing.is_empty() { String::new() } else { format!("; {}", distinguishing.join("; ")) }
        ),
    }
}

fn print_invariants(law: &AnyLaw) {
    println!("dim {}  ({} brackets, {})", law.dim(), bracket_count(law), match law.kind() {
        nilrad::ScalarKind::Exact => "exact",
        nilrad::ScalarKind::Float => "float",
    });
    match law {
        AnyLaw::Exact(l) => {
            let s = series_signature(l);
            let sp = derivation_space(l);
            let (rank, gens) = diagonal_rank(l);
            println!("derived series {:?}", s.derived);
            println!("lower central series {:?}", s.lcs);
            println!("dim Der {}", sp.dim_der());
            println!("diagonal rank {rank} (maximal torus: {})", diagonal_torus_is_maximal(l, &sp));
            for g in gens {
                println!("  torus generator diag({})", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            }
            match pre_einstein(l, &sp) {
                Ok(p) => println!("pre-Einstein φ = diag({})", p.iter().map(Scalar::display).collect::<Vec<_>>().join(", ")),
                Err(e) => println!("pre-Einstein φ: {e}"),
            }
        }
        AnyLaw::Float(l) => {
            let s = series_signature(l);
            let sp = derivation_space(l);
            println!("derived series {:?}", s.derived);
            println!("lower central series {:?}", s.lcs);
            println!("dim Der {}", sp.dim_der());
            println!("diagonal rank {}", sp.diag_basis.len());
            match pre_einstein(l, &sp) {
                Ok(p) => println!("pre-Einstein φ = diag({})", p.iter().map(Scalar::display).collect::<Vec<_>>().join(", ")),
                Err(e) => println!("pre-Einstein φ: {e}"),
            }
        }
    }
    let nice = match law {
        AnyLaw::Exact(l) => is_nice(l),
        AnyLaw::Float(l) => is_nice(l),
    };
    match nice {
        Ok(ws) => {
            let u = gram_matrix(&ws);
            println!("nice basis; U =");
            for row in &u {
                println!("  {}", row.iter().map(|v| format!("{v:>3}")).collect::<String>());
            }
            println!("Ux = [1]: {}", positive_solution(&u).status());
        }
        Err(why) => println!("not nice: {why}"),
    }
}

fn bracket_count(law: &AnyLaw) -> usize {
    match law {
        AnyLaw::Exact(l) => l.len(),
        AnyLaw::Float(l) => l.len(),
    }
}

fn degenerate(file: &Path, x: Option<String>, search: Option<usize>, seed: u64, tol: f64) -> Result<u8, Fail> {
    let law = read_law(file, tol)?;
    let Some(l) = law.as_exact() else {
        return Err(usage("degenerations need a law with rational coefficients"));
    };
    let sp = derivation_space(l);
    let phi = pre_einstein(l, &sp).ok();
    let base = Invariants::of(l);
    match (x, search) {
        (Some(list), None) => {
            let xs: Vec<Rational> = list
                .split(',')
                .map(|s| parse_rational(s).ok_or_else(|| usage(format!("bad exponent {s:?} in --X"))))
                .collect::<Result<_, _>>()?;
            if xs.len() != l.dim() {
                return Err(usage(format!("--X has {} entries, law has dimension {}", xs.len(), l.dim())));
            }
            match &phi {
                Some(p) => println!("X in g_phi: {}", in_g_phi(&xs, p, 0.0)),
                None => println!("X in g_phi: unknown (no pre-Einstein derivation)"),
            }
            match one_param_limit(l, &xs, None).map_err(|e| usage(e.to_string()))? {
                Limit::Divergent { bracket: (i, j, k), exponent } => {
                    println!("divergent: [e_{},e_{}] -> e_{} has exponent {exponent}", i + 1, j + 1, k + 1);
                    Ok(2)
                }
                Limit::Zero => {
                    println!("limit: zero");
                    Ok(0)
                }
                Limit::Law(lim) if lim == *l => {
                    println!("limit: the law itself (X acts trivially)");
                    Ok(2)
                }
                Limit::Law(lim) => {
                    println!("limit: {lim}");
                    let inv = Invariants::of(&lim);
                    println!(
                        "dim Der {} vs {}; rank {} vs {}; series {} vs {}",
                        base.dim_der,
                        inv.dim_der,
                        base.rank,
                        inv.rank,
                        nilrad::degeneration::format_series(&base.series),
                        nilrad::degeneration::format_series(&inv.series)
                    );
                    let d = nilrad::degeneration::compare(&base, &inv);
                    if d.is_empty() {
                        println!("not distinguished by series, dim Der or rank");
                        Ok(2)
                    } else {
                        for x in &d {
                            println!("distinguished: {x}");
                        }
                        Ok(0)
                    }
                }
            }
        }
        (None, Some(trials)) => {
            let Some(p) = phi else {
                return Err(usage("search needs a pre-Einstein derivation"));
            };
            match search_degeneration(l, &p, trials, seed, &[]) {
                Some(w) => {
                    // re-derive for display through the same checker
                    let w = try_witness(l, &base, &w.x, None, None).unwrap_or(w);
                    println!("X = ({})", w.x.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
                    match &w.limit {
                        None => println!("limit: zero"),
                        Some(lim) => println!("limit: {lim}"),
                    }
                    println!("distinguishing: {}", w.distinguishing());
                    Ok(0)
                }
                None => {
                    println!("no degeneration found in {trials} trials (seed {seed}); inconclusive");
                    Ok(2)
                }
            }
        }
        _ => Err(usage("give exactly one of --X LIST or --search N")),
    }
}
