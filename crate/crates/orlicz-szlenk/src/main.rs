//! Command-line front end: norms, radius profiles, derivation
//! iteration, functional-equation checks, witness verification, the
//! stability sweep and Orlicz-function validation.
//!
//! Exit codes: 0 all-pass, 1 any fail verdict, 2 usage or domain error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use orlicz_szlenk::bounds::{self, EquivalenceConstants, ModulusTriple};
use orlicz_szlenk::equation;
use orlicz_szlenk::error::{Error, Result};
use orlicz_szlenk::iteration;
use orlicz_szlenk::orlicz::{
    luxemburg_norm, mab_constants, quartic_norm_closed_form, validate_orlicz, OrliczFunction,
};
use orlicz_szlenk::rng::Probe;
use orlicz_szlenk::sparse::SparseVector;
use orlicz_szlenk::textfmt::sig12;
use orlicz_szlenk::witness::{
    inequality_probe, thm1_tail_bound_check, thm2_witness_check, Direction, SpaceModel,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "szlenk", version, about = "Luxemburg norms and Szlenk derivation radii")]
struct Cli {
    /// JSON config file; flags given on the command line take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized probes
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Args, Default)]
struct FunctionArgs {
    /// Quartic family, e.g. A=1,B=1
    #[arg(long)]
    quartic: Option<String>,
    /// Power function, e.g. q=2
    #[arg(long)]
    power: Option<String>,
    /// Posynomial terms as JSON, e.g. [[1,4],[1,2]]
    #[arg(long)]
    terms: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Luxemburg / closed-form / lp norm of a sparse vector
    Norm {
        #[command(flatten)]
        func: FunctionArgs,
        /// Vector as JSON [[index, value], ...] (inline or @file)
        #[arg(long)]
        vec: Option<String>,
    },
    /// Radius bounds over an eps grid
    Radius {
        /// Modulus triple: power:q or JSON array of 3 function specs
        #[arg(long)]
        triple: Option<String>,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        /// eps grid as start:stop:count
        #[arg(long = "eps-grid")]
        eps_grid: Option<String>,
    },
    /// Iterated derivation radii at one eps
    Iterate {
        /// lp radius function, e.g. p=2
        #[arg(long)]
        lp: Option<String>,
        /// exact radius function from a modulus triple
        #[arg(long)]
        triple: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
    },
    /// eps-Szlenk index
    Index {
        #[arg(long)]
        lp: Option<String>,
        #[arg(long)]
        triple: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
    },
    /// Functional-equation residual checks
    #[command(name = "check-eq")]
    CheckEq {
        #[command(flatten)]
        func: FunctionArgs,
        /// homogeneity | normalization | star | power-law | all
        #[arg(long)]
        probe: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        /// scaling factor for the homogeneity probe
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Witness constructions on a truncation model
    Witness {
        /// Model spec as JSON (inline or @file)
        #[arg(long)]
        model: Option<String>,
        /// Shortcut: the lq model, e.g. q=2
        #[arg(long)]
        lq: Option<String>,
        #[arg(long)]
        dim: Option<u64>,
        /// thm1 | thm2 | probe
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        eps1: Option<f64>,
        #[arg(long)]
        eps2: Option<f64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        /// forward | reverse (probe mode)
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "n-lo")]
        n_lo: Option<u64>,
        #[arg(long = "n-hi")]
        n_hi: Option<u64>,
    },
    /// Stability sweep of the quartic example bounds as A -> 0
    Sweep {
        /// comma-separated A values
        #[arg(long = "a-values")]
        a_values: Option<String>,
        #[arg(long)]
        b: Option<f64>,
        /// comma-separated eps values
        #[arg(long)]
        eps: Option<String>,
    },
    /// Orlicz-function property checks on a grid
    Validate {
        #[command(flatten)]
        func: FunctionArgs,
        /// grid as start:stop:count
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "growth-threshold")]
        growth_threshold: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::from(0)
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

/// Reads `s` directly, or the named file when prefixed with `@`.
fn inline_or_file(s: &str) -> Result<String> {
    if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn parse_kv(s: &str) -> Result<std::collections::HashMap<String, f64>> {
    let mut map = std::collections::HashMap::new();
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid number '{v}'")))?;
        map.insert(k.trim().to_string(), v);
    }
    Ok(map)
}

fn kv_get(map: &std::collections::HashMap<String, f64>, key: &str) -> Result<f64> {
    map.get(key)
        .copied()
        .ok_or_else(|| Error::Parse(format!("missing '{key}='")))
}

/// Parses `start:stop:count` into an inclusive linear grid.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected start:stop:count, got '{s}'")));
    }
    let start: f64 = parts[0].parse().map_err(|_| Error::Parse(format!("bad start '{}'", parts[0])))?;
    let stop: f64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad stop '{}'", parts[1])))?;
    let count: usize = parts[2].parse().map_err(|_| Error::Parse(format!("bad count '{}'", parts[2])))?;
    if count == 0 {
        return Err(Error::Parse("grid count must be at least 1".into()));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid number '{p}'")))
        })
        .collect()
}

/// Resolves the function flags; also returns (A, B) when the quartic
/// family was selected so the closed form can be reported.
fn parse_function(args: &FunctionArgs) -> Result<(OrliczFunction, Option<(f64, f64)>)> {
    match (&args.quartic, &args.power, &args.terms) {
        (Some(q), None, None) => {
            let kv = parse_kv(q)?;
            let (a, b) = (kv_get(&kv, "A")?, kv_get(&kv, "B")?);
            Ok((OrliczFunction::quartic(a, b)?, Some((a, b))))
        }
        (None, Some(p), None) => {
            let kv = parse_kv(p)?;
            Ok((OrliczFunction::power(kv_get(&kv, "q")?)?, None))
        }
        (None, None, Some(t)) => {
            let terms: Vec<(f64, f64)> = serde_json::from_str(&inline_or_file(t)?)
                .map_err(|e| Error::Parse(format!("terms: {e}")))?;
            Ok((OrliczFunction::new(terms)?, None))
        }
        _ => Err(Error::Parse(
            "specify exactly one of --quartic, --power, --terms".into(),
        )),
    }
}

fn parse_vector(s: &str) -> Result<SparseVector> {
    serde_json::from_str(&inline_or_file(s)?).map_err(|e| Error::Parse(format!("vector: {e}")))
}

fn parse_triple(s: &str) -> Result<ModulusTriple> {
    if let Some(q) = s.strip_prefix("power:") {
        let q: f64 = q
            .parse()
            .map_err(|_| Error::Parse(format!("invalid exponent '{q}'")))?;
        return ModulusTriple::power(q);
    }
    serde_json::from_str(&inline_or_file(s)?).map_err(|e| Error::Parse(format!("triple: {e}")))
}

fn require<T>(opt: Option<T>, flag: &str) -> Result<T> {
    opt.ok_or_else(|| Error::Parse(format!("missing required flag --{flag}")))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

mod config {
    use super::*;
    use serde_json::Value;

    pub struct Overrides(pub serde_json::Map<String, Value>);

    impl Overrides {
        pub fn load(path: &Option<PathBuf>) -> Result<Self> {
            let map = match path {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                    match serde_json::from_str::<Value>(&text)
                        .map_err(|e| Error::Parse(format!("config: {e}")))?
                    {
                        Value::Object(m) => m,
                        _ => return Err(Error::Parse("config must be a JSON object".into())),
                    }
                }
                None => serde_json::Map::new(),
            };
            Ok(Overrides(map))
        }

        pub fn string(&self, key: &str, slot: &mut Option<String>) {
            if slot.is_none() {
                match self.0.get(key) {
                    Some(Value::String(s)) => *slot = Some(s.clone()),
                    Some(Value::Number(n)) => *slot = Some(n.to_string()),
                    _ => {}
                }
            }
        }

        pub fn f64(&self, key: &str, slot: &mut Option<f64>) {
            if slot.is_none() {
                if let Some(v) = self.0.get(key).and_then(Value::as_f64) {
                    *slot = Some(v);
                }
            }
        }

        pub fn u64(&self, key: &str, slot: &mut Option<u64>) {
            if slot.is_none() {
                if let Some(v) = self.0.get(key).and_then(Value::as_u64) {
                    *slot = Some(v);
                }
            }
        }

        pub fn usize(&self, key: &str, slot: &mut Option<usize>) {
            if slot.is_none() {
                if let Some(v) = self.0.get(key).and_then(Value::as_u64) {
                    *slot = Some(v as usize);
                }
            }
        }
    }
}

use config::Overrides;

/// Returns Ok(true) on all-pass, Ok(false) when some verdict failed.
fn run(mut cli: Cli) -> Result<bool> {
    let cfg = Overrides::load(&cli.config)?;
    if cli.format.is_none() {
        if let Some(serde_json::Value::String(s)) = cfg.0.get("format") {
            cli.format = match s.as_str() {
                "csv" => Some(Format::Csv),
                "json" => Some(Format::Json),
                "table" => Some(Format::Table),
                other => return Err(Error::Parse(format!("unknown format '{other}'"))),
            };
        }
    }
    let mut seed_slot = cli.seed;
    cfg.u64("seed", &mut seed_slot);
    let seed = seed_slot.unwrap_or(0);
    let format = cli.format.unwrap_or(Format::Table);
    let out = cli.out.clone();

    match cli.cmd {
        Command::Norm { mut func, mut vec } => {
            cfg.string("quartic", &mut func.quartic);
            cfg.string("power", &mut func.power);
            cfg.string("terms", &mut func.terms);
            cfg.string("vec", &mut vec);
            run_norm(&func, &vec, format, &out)
        }
        Command::Radius { mut triple, mut c1, mut c2, mut eps_grid } => {
            cfg.string("triple", &mut triple);
            cfg.f64("c1", &mut c1);
            cfg.f64("c2", &mut c2);
            cfg.string("eps-grid", &mut eps_grid);
            run_radius(&triple, c1, c2, &eps_grid, format, &out)
        }
        Command::Iterate { mut lp, mut triple, mut eps, mut max_n } => {
            cfg.string("lp", &mut lp);
            cfg.string("triple", &mut triple);
            cfg.f64("eps", &mut eps);
            cfg.usize("max-n", &mut max_n);
            run_iterate(&lp, &triple, eps, max_n, false, format, &out)
        }
        Command::Index { mut lp, mut triple, mut eps, mut max_n } => {
            cfg.string("lp", &mut lp);
            cfg.string("triple", &mut triple);
            cfg.f64("eps", &mut eps);
            cfg.usize("max-n", &mut max_n);
            run_iterate(&lp, &triple, eps, max_n, true, format, &out)
        }
        Command::CheckEq { mut func, mut probe, mut samples, mut k, mut tol } => {
            cfg.string("quartic", &mut func.quartic);
            cfg.string("power", &mut func.power);
            cfg.string("terms", &mut func.terms);
            cfg.string("probe", &mut probe);
            cfg.usize("samples", &mut samples);
            cfg.f64("k", &mut k);
            cfg.f64("tol", &mut tol);
            run_check_eq(&func, &probe, samples, k, tol, seed, format, &out)
        }
        Command::Witness {
            mut model,
            mut lq,
            mut dim,
            mut check,
            mut x,
            mut x0,
            mut eps,
            mut eps1,
            mut eps2,
            mut n,
            mut delta,
            mut direction,
            mut samples,
            mut n_lo,
            mut n_hi,
        } => {
            cfg.string("model", &mut model);
            cfg.string("lq", &mut lq);
            cfg.u64("dim", &mut dim);
            cfg.string("check", &mut check);
            cfg.string("x", &mut x);
            cfg.string("x0", &mut x0);
            cfg.f64("eps", &mut eps);
            cfg.f64("eps1", &mut eps1);
            cfg.f64("eps2", &mut eps2);
            cfg.u64("n", &mut n);
            cfg.f64("delta", &mut delta);
            cfg.string("direction", &mut direction);
            cfg.usize("samples", &mut samples);
            cfg.u64("n-lo", &mut n_lo);
            cfg.u64("n-hi", &mut n_hi);
            let model = build_model(&model, &lq, dim)?;
            let args = WitnessArgs {
                check, x, x0, eps, eps1, eps2, n, delta, direction, samples, n_lo, n_hi, seed,
            };
            run_witness(&model, args, format, &out)
        }
        Command::Sweep { mut a_values, mut b, mut eps } => {
            cfg.string("a-values", &mut a_values);
            cfg.f64("b", &mut b);
            cfg.string("eps", &mut eps);
            run_sweep(&a_values, b, &eps, format, &out)
        }
        Command::Validate { mut func, mut grid, mut growth_threshold } => {
            cfg.string("quartic", &mut func.quartic);
            cfg.string("power", &mut func.power);
            cfg.string("terms", &mut func.terms);
            cfg.string("grid", &mut grid);
            cfg.f64("growth-threshold", &mut growth_threshold);
            run_validate(&func, &grid, growth_threshold, format, &out)
        }
    }
}

fn run_norm(
    func: &FunctionArgs,
    vec: &Option<String>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let (m, quartic) = parse_function(func)?;
    let x = parse_vector(&require(vec.clone(), "vec")?)?;
    let norm = luxemburg_norm(&m, &x)?;
    let closed = match quartic {
        Some((a, b)) => {
            let cf = quartic_norm_closed_form(a, b, &x)?;
            Some((cf, (norm - cf).abs()))
        }
        None => None,
    };
    let text = match format {
        Format::Json => {
            let mut obj = serde_json::json!({ "norm": norm });
            if let Some((cf, delta)) = closed {
                obj["closed_form"] = cf.into();
                obj["delta"] = delta.into();
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).unwrap())
        }
        Format::Csv => {
            let mut s = String::from("norm,closed_form,delta\n");
            match closed {
                Some((cf, d)) => {
                    s.push_str(&format!("{},{},{}\n", sig12(norm), sig12(cf), sig12(d)))
                }
                None => s.push_str(&format!("{},,\n", sig12(norm))),
            }
            s
        }
        Format::Table => {
            let mut s = format!("norm = {}\n", sig12(norm));
            if let Some((cf, d)) = closed {
                s.push_str(&format!("closed form = {} (delta {:.3e})\n", sig12(cf), d));
            }
            s
        }
    };
    emit(&text, out)?;
    Ok(true)
}

fn run_radius(
    triple: &Option<String>,
    c1: Option<f64>,
    c2: Option<f64>,
    eps_grid: &Option<String>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let triple = parse_triple(&require(triple.clone(), "triple")?)?;
    let consts = EquivalenceConstants::new(c1.unwrap_or(1.0), c2.unwrap_or(1.0))?;
    let grid = parse_grid(&require(eps_grid.clone(), "eps-grid")?)?;
    let profile = bounds::radius_profile(&triple, &consts, &grid)?;
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&profile).unwrap()),
        Format::Csv => profile.to_csv(),
        Format::Table => {
            let mut s = format!("validity cutoff = {}\n", sig12(profile.validity_cutoff));
            s.push_str(&format!("{:>12} {:>16} {:>16}\n", "eps", "lower", "upper"));
            for i in 0..profile.epsilons.len() {
                let lower = profile.lower[i]
                    .map(sig12)
                    .unwrap_or_else(|| "(out of domain)".to_string());
                s.push_str(&format!(
                    "{:>12} {:>16} {:>16}\n",
                    sig12(profile.epsilons[i]),
                    lower,
                    sig12(profile.upper[i])
                ));
            }
            s
        }
    };
    emit(&text, out)?;
    Ok(true)
}

fn radius_fn(
    lp: &Option<String>,
    triple: &Option<String>,
) -> Result<Box<dyn Fn(f64) -> Result<f64>>> {
    match (lp, triple) {
        (Some(spec), None) => {
            let kv = parse_kv(spec)?;
            let p = kv_get(&kv, "p")?;
            bounds::conjugate_exponent(p)?;
            Ok(Box::new(move |eps| bounds::lp_radius(p, eps)))
        }
        (None, Some(spec)) => {
            let triple = parse_triple(spec)?;
            Ok(Box::new(move |eps| bounds::exact_radius(&triple, eps)))
        }
        _ => Err(Error::Parse("specify exactly one of --lp, --triple".into())),
    }
}

fn run_iterate(
    lp: &Option<String>,
    triple: &Option<String>,
    eps: Option<f64>,
    max_n: Option<usize>,
    index_only: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let r = radius_fn(lp, triple)?;
    let eps = require(eps, "eps")?;
    let max_n = max_n.unwrap_or(iteration::DEFAULT_MAX_N);
    if index_only {
        let idx = iteration::szlenk_index(r, eps, max_n)?;
        let text = match format {
            Format::Json => format!("{}\n", serde_json::json!({ "eps": eps, "szlenk_index": idx })),
            Format::Csv => format!("eps,szlenk_index\n{},{}\n", sig12(eps), idx),
            Format::Table => format!("{idx}\n"),
        };
        emit(&text, out)?;
        return Ok(true);
    }
    let trace = iteration::iterate_radii(r, eps, max_n)?;
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&serde_json::json!({
                "summary": trace.summary_json(),
                "radii": trace.radii,
            }))
            .unwrap()
        ),
        Format::Csv => trace.to_csv(),
        Format::Table => {
            let mut s = trace.to_csv().replace(',', "  ");
            s.push_str(&format!("summary: {}\n", trace.summary_json()));
            s
        }
    };
    emit(&text, out)?;
    Ok(trace.terminated)
}

#[allow(clippy::too_many_arguments)]
fn run_check_eq(
    func: &FunctionArgs,
    probe: &Option<String>,
    samples: Option<usize>,
    k: Option<f64>,
    tol: Option<f64>,
    seed: u64,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let (m, _) = parse_function(func)?;
    let probe_name = probe.clone().unwrap_or_else(|| "all".to_string());
    let samples = samples.unwrap_or(100);
    let k = k.unwrap_or(2.0);
    let tol = tol.unwrap_or(equation::PASS_TOL);
    let mut rng = Probe::new(seed);
    let points: Vec<(f64, f64)> = (0..samples)
        .map(|_| (rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0)))
        .collect();

    let mut rows: Vec<(String, f64, bool)> = Vec::new();
    let want = |name: &str| probe_name == "all" || probe_name == name;
    if want("homogeneity") {
        let r = equation::homogeneity_residual(&m, &points, k, tol)?;
        rows.push(("homogeneity".into(), r.max_residual, r.verdict));
    }
    if want("normalization") {
        let r = equation::normalization_residual(&m, &points, tol)?;
        rows.push(("normalization".into(), r.max_residual, r.verdict));
    }
    if want("star") {
        let mut worst = 0.0_f64;
        for _ in 0..samples {
            let k_len = rng.uniform_usize(1, 8);
            let l_len = rng.uniform_usize(1, 8);
            let raw_s: Vec<f64> = (0..k_len).map(|_| rng.uniform(0.1, 2.0)).collect();
            let raw_t: Vec<f64> = (0..l_len).map(|_| rng.uniform(0.1, 2.0)).collect();
            let s_part = equation::normalize_partition(&m, &raw_s)?;
            let t_part = equation::normalize_partition(&m, &raw_t)?;
            let lambda = rng.uniform(0.2, 3.0);
            let mu = rng.uniform(0.2, 3.0);
            worst = worst.max(equation::star_condition_residual(&m, &s_part, &t_part, lambda, mu)?);
        }
        rows.push(("star".into(), worst, worst <= tol));
    }
    if want("power-law") {
        let grid: Vec<f64> = (0..50)
            .map(|i| 0.01 * 10f64.powf(4.0 * i as f64 / 49.0))
            .collect();
        let (_, dev) = equation::power_law_fit(&m, &grid)?;
        rows.push(("power-law".into(), dev, dev <= tol));
    }
    if rows.is_empty() {
        return Err(Error::Parse(format!("unknown probe '{probe_name}'")));
    }

    let all_pass = rows.iter().all(|r| r.2);
    let text = match format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, res, v)| {
                    serde_json::json!({ "probe": n, "max_residual": res, "verdict": if *v { "pass" } else { "fail" } })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).unwrap())
        }
        Format::Csv => {
            let mut s = String::from("probe,max_residual,verdict\n");
            for (n, res, v) in &rows {
                s.push_str(&format!("{},{},{}\n", n, sig12(*res), if *v { "pass" } else { "fail" }));
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:<14} {:>16} {:>8}\n", "probe", "max residual", "verdict");
            for (n, res, v) in &rows {
                s.push_str(&format!(
                    "{:<14} {:>16} {:>8}\n",
                    n,
                    sig12(*res),
                    if *v { "pass" } else { "fail" }
                ));
            }
            s
        }
    };
    emit(&text, out)?;
    Ok(all_pass)
}

fn build_model(model: &Option<String>, lq: &Option<String>, dim: Option<u64>) -> Result<SpaceModel> {
    match (model, lq) {
        (Some(spec), None) => serde_json::from_str(&inline_or_file(spec)?)
            .map_err(|e| Error::Parse(format!("model: {e}"))),
        (None, Some(spec)) => {
            let kv = parse_kv(spec)?;
            SpaceModel::lq_model(kv_get(&kv, "q")?, dim.unwrap_or(64))
        }
        _ => Err(Error::Parse("specify exactly one of --model, --lq".into())),
    }
}

struct WitnessArgs {
    check: Option<String>,
    x: Option<String>,
    x0: Option<String>,
    eps: Option<f64>,
    eps1: Option<f64>,
    eps2: Option<f64>,
    n: Option<u64>,
    delta: Option<f64>,
    direction: Option<String>,
    samples: Option<usize>,
    n_lo: Option<u64>,
    n_hi: Option<u64>,
    seed: u64,
}

fn run_witness(
    model: &SpaceModel,
    args: WitnessArgs,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let check = require(args.check, "check")?;
    match check.as_str() {
        "thm2" => {
            let x0 = parse_vector(&args.x0.unwrap_or_else(|| "[]".to_string()))?;
            let v = thm2_witness_check(
                model,
                &x0,
                require(args.eps, "eps")?,
                require(args.eps1, "eps1")?,
                require(args.eps2, "eps2")?,
                require(args.n, "n")?,
            )?;
            let both = v.both();
            let text = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
                _ => format!(
                    "n = {}\nseparation = {} ({})\nmax norm = {} ({})\n",
                    v.pair.n,
                    sig12(v.pair.separation),
                    if v.separated { "pass" } else { "fail" },
                    sig12(v.pair.max_norm),
                    if v.inside_ball { "pass" } else { "fail" },
                ),
            };
            emit(&text, out)?;
            Ok(both)
        }
        "thm1" => {
            let x = parse_vector(&require(args.x, "x")?)?;
            let x0 = parse_vector(&require(args.x0, "x0")?)?;
            let ok = thm1_tail_bound_check(
                model,
                &x,
                &x0,
                require(args.n, "n")?,
                require(args.delta, "delta")?,
                require(args.eps1, "eps1")?,
            )?;
            let text = match format {
                Format::Json => format!("{}\n", serde_json::json!({ "tail_bound": if ok { "pass" } else { "fail" } })),
                _ => format!("tail bound: {}\n", if ok { "pass" } else { "fail" }),
            };
            emit(&text, out)?;
            Ok(ok)
        }
        "probe" => {
            let direction: Direction = require(args.direction, "direction")?.parse()?;
            let n_hi = args.n_hi.unwrap_or(model.basis_dim);
            let report = inequality_probe(
                model,
                direction,
                args.samples.unwrap_or(100),
                (args.n_lo.unwrap_or(1), n_hi),
                args.seed,
            )?;
            let text = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                _ => format!(
                    "direction = {:?}\nworst slack = {:e}\nfirst good n = {:?}\nviolations = {}\nverdict = {}\n",
                    report.direction,
                    report.worst_slack,
                    report.first_good_n,
                    report.violations,
                    if report.pass { "pass" } else { "fail" },
                ),
            };
            emit(&text, out)?;
            Ok(report.pass)
        }
        other => Err(Error::Parse(format!("unknown check '{other}'"))),
    }
}

fn run_sweep(
    a_values: &Option<String>,
    b: Option<f64>,
    eps: &Option<String>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let a_values = parse_list(&require(a_values.clone(), "a-values")?)?;
    let b = b.unwrap_or(1.0);
    let eps_values = parse_list(&require(eps.clone(), "eps")?)?;
    let triple = ModulusTriple::power(2.0)?;
    let mut rows = String::new();
    for &a in &a_values {
        let (c1, c2) = mab_constants(a, b)?;
        let consts = EquivalenceConstants::new(c1, c2)?;
        for &e in &eps_values {
            let limit = (1.0 - e * e / 4.0).max(0.0).sqrt();
            let upper = bounds::upper_radius(&triple, &consts, e)?;
            match bounds::lower_radius(&triple, &consts, e) {
                Ok(lower) => rows.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    sig12(a),
                    sig12(e),
                    sig12(lower),
                    sig12(upper),
                    sig12(limit),
                    sig12(upper - lower)
                )),
                Err(Error::OutsideValidity { .. }) => rows.push_str(&format!(
                    "{},{},ERR,{},{},ERR\n",
                    sig12(a),
                    sig12(e),
                    sig12(upper),
                    sig12(limit)
                )),
                Err(err) => return Err(err),
            }
        }
    }
    let header = "A,eps,lower,upper,limit,gap\n";
    let text = match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .lines()
                .map(|l| {
                    let f: Vec<&str> = l.split(',').collect();
                    serde_json::json!({
                        "A": f[0], "eps": f[1], "lower": f[2],
                        "upper": f[3], "limit": f[4], "gap": f[5],
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
        }
        _ => format!("{header}{rows}"),
    };
    emit(&text, out)?;
    Ok(true)
}

fn run_validate(
    func: &FunctionArgs,
    grid: &Option<String>,
    growth_threshold: Option<f64>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let (m, _) = parse_function(func)?;
    let grid = parse_grid(grid.as_deref().unwrap_or("0:10:101"))?;
    let report = validate_orlicz(&m, &grid, growth_threshold.unwrap_or(1.0))?;
    let all = report.all_pass();
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        Format::Csv => {
            let mut s = String::from("check,pass,detail\n");
            for c in &report.checks {
                s.push_str(&format!("{},{},\"{}\"\n", c.name, c.pass, c.detail));
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "{:<22} {:<5} {}\n",
                    c.name,
                    if c.pass { "pass" } else { "FAIL" },
                    c.detail
                ));
            }
            s
        }
    };
    emit(&text, out)?;
    Ok(all)
}
