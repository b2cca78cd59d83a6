//! Command-line front end: polynomial computation, permutation statistics,
//! gamma expansions, continued-fraction moments, MFS orbit exploration,
//! identity verification, and conjecture scanning.
//!
//! Exit codes for `verify`/`conjecture`: 0 all pass, 1 theorem failure (or
//! usage error), 2 only conjecture scans fail.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eulerian_core::cfrac;
use eulerian_core::families::{self, FamilyId, Route};
use eulerian_core::perm::{self, Permutation, StatBundle};
use eulerian_core::poly::{MultiPoly, Var};
use eulerian_core::verify::{self, IdentityId, Report, Status};

#[derive(Parser)]
#[command(
    name = "eulerian",
    about = "Exact computation and mechanical verification of binomial-Eulerian polynomial families",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a family polynomial by a chosen route
    Compute(ComputeArgs),
    /// All statistics of one permutation, as JSON
    Stats {
        /// Permutation: digits ("42513"), comma-separated, or cycle form "(1 4)(2 3)"
        #[arg(long)]
        perm: String,
    },
    /// Gamma-coefficient list of a family polynomial
    Gamma {
        /// Family: A, TildeA, or HatA
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Moments of a J-fraction preset
    Cf {
        /// Preset: CF_Q, CF_tildeA, CF_Astar, CF_hatA, CF_B, CF_P
        #[arg(long)]
        preset: String,
        /// Truncation order (prints mu_0..mu_N)
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// MFS orbits of PRW_{n+1}, or of one permutation
    Orbits(OrbitArgs),
    /// Run identity checks from the registry
    Verify(VerifyArgs),
    /// Run one conjecture scan
    Conjecture {
        /// Which conjecture: 5.1 or 5.2
        #[arg(long)]
        which: String,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Registry listing (families, routes, caps, identities) as JSON
    List,
}

#[derive(Args)]
struct ComputeArgs {
    /// Family tag (see `list`)
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Route; defaults to the family's first registered route
    #[arg(long)]
    route: Option<String>,
    /// Integer specializations, e.g. --eval q=-1 (repeatable)
    #[arg(long = "eval")]
    evals: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OrbitArgs {
    /// Explore the orbits of PRW_{n+1}
    #[arg(long)]
    n: Option<usize>,
    /// Explore the orbit of one permutation
    #[arg(long)]
    perm: Option<String>,
    /// Apply a single modified hop at this letter and print the image
    #[arg(long)]
    hop: Option<u32>,
    /// Error if the given permutation is not a PRW permutation
    #[arg(long)]
    prw_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One identity key, e.g. thm_1_1
    #[arg(long)]
    id: Option<String>,
    /// Largest n to check (defaults to the registry cap)
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// Run the whole registry
    #[arg(long)]
    all: bool,
    #[arg(long)]
    json: bool,
    /// Treat conjecture counterexamples as failures (exit 1 instead of 2)
    #[arg(long)]
    strict_conjectures: bool,
    /// Worker threads for --all
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn env_cap_override() -> Option<usize> {
    std::env::var("EULERIAN_MAX_N").ok()?.parse().ok()
}

fn dispatch(command: Command) -> Result<u8, String> {
    match command {
        Command::Compute(args) => compute(args),
        Command::Stats { perm } => stats(&perm),
        Command::Gamma { family, n, json } => gamma(&family, n, json),
        Command::Cf { preset, n, json } => cf(&preset, n, json),
        Command::Orbits(args) => orbits(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Conjecture { which, max_n, json } => conjecture(&which, max_n, json),
        Command::List => list(),
    }
}

fn render(poly: &MultiPoly, format: Format) -> String {
    match format {
        Format::Text => poly.to_text(),
        Format::Json => poly.to_json_string(),
        Format::Latex => poly.to_latex(),
    }
}

fn compute(args: ComputeArgs) -> Result<u8, String> {
    let family: FamilyId = args.family.parse().map_err(|e| format!("{e}"))?;
    let entries: Vec<_> = families::registry()
        .into_iter()
        .filter(|e| e.family == family)
        .collect();
    let route = match &args.route {
        Some(name) => Route::from_str(name).map_err(|e| format!("{e}"))?,
        None => entries.first().expect("every family has a route").route,
    };
    let entry = entries
        .iter()
        .find(|e| e.route == route)
        .ok_or_else(|| format!("route {route} is not implemented for family {family}"))?;
    let cap = env_cap_override().unwrap_or(entry.max_n);
    if args.n > cap {
        return Err(format!(
            "n = {} exceeds the cap {cap} for {family}/{route} (set EULERIAN_MAX_N to override)",
            args.n
        ));
    }
    let mut poly = families::family(family, route, args.n).map_err(|e| format!("{e}"))?;
    for spec in &args.evals {
        let (var, value) = parse_eval(spec)?;
        poly = poly.eval_at(var, &value.into());
    }
    println!("{}", render(&poly, args.format));
    Ok(0)
}

fn parse_eval(spec: &str) -> Result<(Var, i64), String> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| format!("bad --eval `{spec}`, expected var=integer"))?;
    let var = Var::from_name(name.trim()).ok_or_else(|| format!("unknown variable `{name}`"))?;
    let value: i64 = value
        .trim()
        .parse()
        .map_err(|_| format!("bad integer `{value}` in --eval"))?;
    Ok((var, value))
}

fn stats(perm: &str) -> Result<u8, String> {
    let p = Permutation::parse(perm).map_err(|e| format!("{e}"))?;
    let bundle = StatBundle::compute(&p).map_err(|e| format!("{e}"))?;
    println!(
        "{}",
        serde_json::to_string(&bundle).expect("bundle serialization cannot fail")
    );
    Ok(0)
}

fn gamma(family: &str, n: usize, json: bool) -> Result<u8, String> {
    let family: FamilyId = family.parse().map_err(|e| format!("{e}"))?;
    let gammas = match family {
        FamilyId::A => families::gamma_family(n).0,
        FamilyId::TildeA => families::gamma_family(n).1,
        FamilyId::HatA => families::hat_a(n, Route::CFrac)
            .map_err(|e| format!("{e}"))?
            .gamma_expand(eulerian_core::poly::vars::T, n)
            .map_err(|e| format!("{e}"))?,
        other => {
            return Err(format!(
                "gamma expansion is available for A, TildeA, HatA, not {other}"
            ))
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string(&gammas).expect("schema serialization cannot fail")
        );
    } else {
        let rendered: Vec<String> = gammas.iter().map(MultiPoly::to_text).collect();
        println!("[{}]", rendered.join(", "));
    }
    Ok(0)
}

fn cf(preset: &str, n: usize, json: bool) -> Result<u8, String> {
    let spec = cfrac::preset(preset).map_err(|e| format!("{e}"))?;
    let mu = cfrac::moments(&spec, n);
    if json {
        println!(
            "{}",
            serde_json::to_string(&mu).expect("schema serialization cannot fail")
        );
    } else {
        for (k, m) in mu.iter().enumerate() {
            println!("mu_{k} = {}", m.to_text());
        }
    }
    Ok(0)
}

fn orbits(args: OrbitArgs) -> Result<u8, String> {
    match (&args.perm, args.n) {
        (Some(word), _) => {
            let p = Permutation::parse(word).map_err(|e| format!("{e}"))?;
            if args.prw_only && !perm::is_prw(&p) {
                return Err(format!("{p} is not a PRW permutation"));
            }
            if let Some(x) = args.hop {
                let image = perm::mfs_hop_prime(&p, x).map_err(|e| format!("{e}"))?;
                println!("{image}");
                return Ok(0);
            }
            let orbit = perm::mfs_orbit(&p).map_err(|e| format!("{e}"))?;
            print_orbit(&orbit);
            Ok(0)
        }
        (None, Some(n)) => {
            if n > 9 {
                return Err(format!("orbit exploration is capped at n = 9, got {n}"));
            }
            let orbits =
                perm::mfs_orbits(perm::gen_prw(n + 1)).map_err(|e| format!("{e}"))?;
            println!("PRW_{} splits into {} orbits:", n + 1, orbits.len());
            for orbit in &orbits {
                print_orbit(orbit);
            }
            Ok(0)
        }
        (None, None) => Err("pass --perm or --n".to_string()),
    }
}

fn print_orbit(orbit: &perm::Orbit) {
    let members: Vec<String> = orbit.members.iter().map(|m| m.to_string()).collect();
    let ai = orbit
        .shared_ai
        .map(|v| v.to_string())
        .unwrap_or_else(|| "non-constant".to_string());
    println!(
        "representative {} size {} ai {} members {{{}}}",
        orbit.representative,
        orbit.members.len(),
        ai,
        members.join(", ")
    );
}

fn print_report(report: &Report) {
    let label = if report.id.is_conjecture() {
        " CONJECTURE"
    } else {
        ""
    };
    let status = match report.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    };
    println!(
        "{:22} {:7} n={}..{} {:.2}s{}{}",
        report.id.name(),
        status,
        report.n_range.0,
        report.n_range.1,
        report.elapsed,
        label,
        report
            .note
            .as_ref()
            .map(|n| format!(" ({n})"))
            .unwrap_or_default()
    );
    if let Some(w) = &report.witness {
        println!("  witness n={}: lhs = {}  rhs = {}", w.n, w.lhs, w.rhs);
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<u8, String> {
    let env_cap = env_cap_override();
    let reports: Vec<Report> = if let Some(id) = &args.id {
        let id: IdentityId = id.parse().map_err(|e| format!("{e}"))?;
        let cap = env_cap.unwrap_or(id.default_cap());
        let n_max = args.max_n.unwrap_or(cap).min(cap);
        vec![verify::run_with_cap(id, n_max, cap)]
    } else if args.all {
        let mut budget = BTreeMap::new();
        for &id in IdentityId::ALL {
            let cap = env_cap.unwrap_or(id.default_cap());
            let requested = args.max_n.unwrap_or(cap);
            budget.insert(id, requested.min(cap));
        }
        verify::run_all(&budget, args.jobs.max(1))
    } else {
        return Err("pass --id <identity> or --all".to_string());
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("report serialization cannot fail")
        );
    } else {
        for report in &reports {
            print_report(report);
        }
        let (pass, fail, skip) = reports.iter().fold((0, 0, 0), |(p, f, s), r| match r.status {
            Status::Pass => (p + 1, f, s),
            Status::Fail => (p, f + 1, s),
            Status::Skipped => (p, f, s + 1),
        });
        println!("{pass} pass, {fail} fail, {skip} skipped");
    }
    Ok(verify::exit_code(&reports, args.strict_conjectures) as u8)
}

fn conjecture(which: &str, max_n: Option<usize>, json: bool) -> Result<u8, String> {
    let id = match which {
        "5.1" => IdentityId::Conj5_1,
        "5.2" => IdentityId::Conj5_2,
        other => return Err(format!("unknown conjecture `{other}`, expected 5.1 or 5.2")),
    };
    let cap = env_cap_override().unwrap_or(id.default_cap());
    let n_max = max_n.unwrap_or(cap).min(cap);
    let report = verify::run_with_cap(id, n_max, cap);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
        );
    } else {
        print_report(&report);
    }
    Ok(verify::exit_code(&[report], false) as u8)
}

fn list() -> Result<u8, String> {
    let families_json: Vec<serde_json::Value> = families::registry()
        .into_iter()
        .map(|e| {
            serde_json::json!({
                "family": e.family.name(),
                "route": e.route.name(),
                "min_n": e.min_n,
                "max_n": e.max_n,
                "vars": e.family.variable_support(),
            })
        })
        .collect();
    let identities_json: Vec<serde_json::Value> = IdentityId::ALL
        .iter()
        .map(|id| {
            serde_json::json!({
                "id": id.name(),
                "max_n": id.default_cap(),
                "conjecture": id.is_conjecture(),
            })
        })
        .collect();
    let out = serde_json::json!({
        "families": families_json,
        "identities": identities_json,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("registry serialization cannot fail")
    );
    Ok(0)
}
