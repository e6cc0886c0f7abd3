use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hvec_core::batch::run_manifest;
use hvec_core::bounds::{chained_bound, ghms_tighten, main_theorem_bound};
use hvec_core::combinatorics::{full_alternating_sum, is_o_sequence, lemma27_lhs, lemma27_rhs, macaulay_expansion};
use hvec_core::io::{ExperimentManifest, ModuleFile, ReportFormat};
use hvec_core::report::write_csv;
use hvec_core::{DerivativeAction, Error, Execution, Field, FieldSpec, HVector, InverseSystemModule, PrimeField, Rationals};
use serde_json::json;

const EXIT_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// h-vectors of level algebras from Macaulay inverse systems.
#[derive(Parser)]
#[command(name = "hvec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the h-vector of a module file.
    Hvector {
        file: PathBuf,
        #[command(flatten)]
        opts: ModuleOpts,
        #[arg(long)]
        json: bool,
    },
    /// Sample generic quotients of a given type and print their h-vector.
    Quotient {
        file: PathBuf,
        #[command(flatten)]
        opts: ModuleOpts,
        #[arg(long = "type", short = 'c')]
        c: usize,
        #[arg(long, default_value_t = hvec_core::inverse::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Lower bounds for generic quotients of a level h-vector.
    Bound {
        /// Comma-separated h-vector, e.g. "1,3,5,7,7,5,3".
        #[arg(long)]
        h: String,
        /// Type of the parent; defaults to the last entry of h.
        #[arg(long)]
        t: Option<u64>,
        /// Target type; defaults to the end of --chain.
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        tighten: bool,
        /// Descending types, e.g. "3,2,1".
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run an experiment manifest.
    Verify {
        manifest: PathBuf,
        /// Overrides the manifest's output path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides the manifest's report format (json, csv, text).
        #[arg(long)]
        format: Option<String>,
        /// Overrides the manifest's global seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        sequential: bool,
    },
    /// Binomial identities, Macaulay expansions and O-sequence checks.
    Comb(CombArgs),
}

#[derive(Args)]
struct ModuleOpts {
    /// Work over the rationals whatever the file says.
    #[arg(long)]
    rational: bool,
    /// Let variables act by contraction instead of differentiation.
    #[arg(long)]
    contract: bool,
}

#[derive(Args)]
struct CombArgs {
    #[arg(long, conflicts_with_all = ["expand", "osequence"])]
    lemma27: bool,
    #[arg(long, default_value_t = 60)]
    tmax: i64,
    /// "n,i"
    #[arg(long, conflicts_with = "osequence")]
    expand: Option<String>,
    /// Comma-separated sequence.
    #[arg(long)]
    osequence: Option<String>,
}

enum Failure {
    Parse(String),
    Usage(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => EXIT_FAILED,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Hvector { file, opts, json } => hvector(&file, &opts, json),
        Command::Quotient { file, opts, c, trials, seed, json } => quotient(&file, &opts, c, trials, seed, json),
        Command::Bound { h, t, c, tighten, chain, json } => bound(&h, t, c, tighten, chain.as_deref(), json),
        Command::Verify { manifest, output, format, seed, sequential } => {
            verify(&manifest, output, format.as_deref(), seed, sequential)
        }
        Command::Comb(args) => comb(&args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Parse(m) | Failure::Usage(m) | Failure::Failed(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load<F: Field>(file: &ModuleFile, field: F, path: &Path, opts: &ModuleOpts) -> Result<InverseSystemModule<F>, Failure> {
    let m = file
        .build(field, &path.display().to_string())
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(if opts.contract { m.with_action(DerivativeAction::Contract) } else { m })
}

fn parse_module(path: &Path, opts: &ModuleOpts) -> Result<ModuleFile, Failure> {
    let mut file = ModuleFile::parse(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    if opts.rational {
        file.field = FieldSpec::Rational;
    }
    Ok(file)
}

/// Calls `$body` with `$m` bound to the module over the file's field.
macro_rules! with_module {
    ($file:expr, $path:expr, $opts:expr, |$m:ident| $body:expr) => {
        match $file.field {
            FieldSpec::Prime(p) => {
                let field = PrimeField::new(p).map_err(|e| Failure::Parse(e.to_string()))?;
                let $m = load(&$file, field, $path, $opts)?;
                $body
            }
            FieldSpec::Rational => {
                let $m = load(&$file, Rationals, $path, $opts)?;
                $body
            }
        }
    };
}

fn hvector(path: &Path, opts: &ModuleOpts, as_json: bool) -> CmdResult {
    let file = parse_module(path, opts)?;
    let h = with_module!(file, path, opts, |m| m.h_vector());
    if as_json {
        println!("{}", json!({ "h": h }));
    } else {
        println!("{h}");
    }
    Ok(ExitCode::SUCCESS)
}

fn quotient(path: &Path, opts: &ModuleOpts, c: usize, trials: usize, seed: u64, as_json: bool) -> CmdResult {
    let file = parse_module(path, opts)?;
    let t = file.generators.len();
    if c == 0 || c >= t {
        return Err(Failure::Usage(format!("--type {c} must lie in 1..={}", t.saturating_sub(1))));
    }
    if trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let emp = with_module!(file, path, opts, |m| m
        .empirical_generic_h(c, trials, seed)
        .map_err(|e| Failure::Failed(e.to_string()))?);
    if as_json {
        println!("{}", json!({ "h": emp.h, "trialsAgree": emp.trials_agree(), "trialH": emp.per_trial }));
    } else {
        println!("{}", emp.h);
        println!("trials agree: {}", emp.trials_agree());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_list<T: std::str::FromStr>(what: &str, text: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Failure::Usage(format!("malformed {what} `{text}`"))))
        .collect()
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn bound(h_text: &str, t: Option<u64>, c: Option<u64>, tighten: bool, chain: Option<&str>, as_json: bool) -> CmdResult {
    let h = HVector::new(parse_list("h-vector", h_text)?);
    if h.len() < 2 {
        return Err(Failure::Usage(format!("malformed h-vector `{h_text}`")));
    }
    let t = t.unwrap_or(h.top());
    let path = chain.map(|p| parse_list::<u64>("chain", p)).transpose()?;
    let c = match (c, &path) {
        (Some(c), Some(p)) if p.last() != Some(&c) => {
            return Err(Failure::Usage(format!("--chain must end at --c {c}")));
        }
        (Some(c), _) => c,
        (None, Some(p)) => *p.last().ok_or_else(|| Failure::Usage("empty chain".into()))?,
        (None, None) => return Err(Failure::Usage("--c or --chain is required".into())),
    };
    let direct = main_theorem_bound(&h, t, c).map_err(usage)?;
    let tightened = if tighten { Some(ghms_tighten(&h, &direct, c).map_err(usage)?) } else { None };
    let chained = path.as_deref().map(|p| chained_bound(&h, t, p, tighten)).transpose().map_err(usage)?;
    if as_json {
        println!(
            "{}",
            json!({
                "direct": direct.entries,
                "tightened": tightened.as_ref().map(|x| &x.bound.entries),
                "feasible": tightened.as_ref().map(|x| x.feasible),
                "chained": chained.as_ref().map(|x| &x.entries),
            })
        );
        return Ok(ExitCode::SUCCESS);
    }
    println!("{direct}");
    if let Some(x) = tightened {
        let note = if x.feasible { "feasible" } else { "no feasible vector" };
        println!("tightened: {} ({note})", x.bound);
    }
    if let Some(x) = chained {
        println!("chained {}: {x}", chain.unwrap_or_default());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &Path, output: Option<PathBuf>, format: Option<&str>, seed: Option<u64>, sequential: bool) -> CmdResult {
    let mut manifest =
        ExperimentManifest::parse(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    if let Some(f) = format {
        manifest.format = f.parse::<ReportFormat>().map_err(usage)?;
    }
    if let Some(s) = seed {
        manifest.seed = s;
    }
    if output.is_some() {
        manifest.output = output;
    }
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let out = run_manifest(&manifest, exec).map_err(|e| Failure::Failed(e.to_string()))?;

    if let Some(dest) = &manifest.output {
        let text = match manifest.format {
            ReportFormat::Json => {
                let doc = json!({ "summary": out.summary, "reports": out.reports, "checks": out.checks });
                serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
            }
            ReportFormat::Csv => {
                let mut buf = Vec::new();
                write_csv(&mut buf, &out.reports).map_err(|e| Failure::Failed(e.to_string()))?;
                String::from_utf8(buf).expect("csv is utf-8")
            }
            ReportFormat::Text => out
                .reports
                .iter()
                .map(|r| format!("{} c={}: h={} bound={:?} empirical={} satisfied={}\n", r.label, r.c, r.h, r.bound, r.empirical, r.satisfied))
                .collect(),
        };
        fs::write(dest, text).map_err(|e| Failure::Usage(format!("{}: {e}", dest.display())))?;
    }

    for r in out.reports.iter().filter(|r| !r.satisfied) {
        println!("VIOLATED {} c={}: empirical {} below bound {:?}", r.label, r.c, r.empirical, r.bound);
    }
    for c in out.checks.iter().filter(|c| !c.passed) {
        println!("FAILED {} u={} {}: {} vs {}", c.label, c.u, c.name, c.lhs, c.rhs);
    }
    let s = &out.summary;
    println!(
        "instances {} | bounds {}/{} satisfied | tight {} | identity checks {} passed, {} failed | {} ms | seed {}",
        s.instances,
        s.bounds_satisfied,
        s.bounds_checked,
        s.tight_instances,
        s.identity_checks_passed,
        s.identity_checks_failed,
        s.wall_time_ms,
        s.seed
    );
    Ok(if s.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}

fn comb(args: &CombArgs) -> CmdResult {
    if args.lemma27 {
        let tmax = args.tmax;
        if tmax < 2 {
            return Err(Failure::Usage(format!("--tmax {tmax} must be at least 2")));
        }
        let mut failures = 0;
        let mut count = 0;
        for t in 2..=tmax {
            for j in 2..=t {
                count += 1;
                let lhs = lemma27_lhs(t, j).map_err(usage)?;
                let rhs = lemma27_rhs(t, j);
                let full = full_alternating_sum(t, j);
                if lhs != rhs || full != 0.into() {
                    failures += 1;
                    println!("t={t} j={j}: {lhs} vs {rhs}, full sum {full}");
                }
            }
        }
        if failures == 0 {
            println!("all pass ({count} pairs, t <= {tmax})");
            return Ok(ExitCode::SUCCESS);
        }
        println!("{failures} of {count} fail");
        return Ok(ExitCode::from(EXIT_FAILED));
    }
    if let Some(spec) = &args.expand {
        let v: Vec<u64> = parse_list("n,i", spec)?;
        let [n, i] = v[..] else {
            return Err(Failure::Usage(format!("--expand takes `n,i`, got `{spec}`")));
        };
        let i = u32::try_from(i).map_err(|_| Failure::Usage(format!("i = {i} is too large")))?;
        let x = macaulay_expansion(n, i).map_err(usage)?;
        println!("{x}; growth {}", x.growth());
        return Ok(ExitCode::SUCCESS);
    }
    let Some(text) = args.osequence.as_deref() else {
        return Err(Failure::Usage("one of --lemma27, --expand or --osequence is required".into()));
    };
    let h: Vec<i64> = parse_list("sequence", text)?;
    let verdict = is_o_sequence(&h).map_err(usage)?;
    match verdict.first_violation {
        None => println!("true"),
        Some(0) => println!("false at d=0 (h_0 = {} != 1)", h[0]),
        Some(d) => {
            let bound = hvec_core::combinatorics::macaulay_growth(h[d] as u64, d as u32).map_err(usage)?;
            println!("false at d={d} ({} > {bound})", h[d + 1]);
        }
    }
    Ok(ExitCode::SUCCESS)
}
