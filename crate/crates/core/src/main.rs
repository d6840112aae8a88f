use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Complex, Float};
use serde_json::{json, Value};

use hpzeros::analysis::{
    chebotarev_candidates, check_conjugate_symmetry, check_reflection_pairing, detect_froissart, genus_bound,
    ks_arcsine, lens_fraction, FroissartOptions,
};
use hpzeros::cli::export::from_csv;
use hpzeros::cli::sweep::{lens_sweep, select, sweep_presets};
use hpzeros::cli::{presets, resolve_bits, run_preset, Format, Preset, PresetRun, Problem, RunConfig};
use hpzeros::germs::FunctionSpec;
use hpzeros::numerics::{complex_strings, fmt_float, parse_float, parse_rational, ExactComplex, Polynomial, PrecisionContext};
use hpzeros::roots::find_roots;
use hpzeros::twopoint::Split;

#[derive(Parser)]
#[command(name = "hpzeros", version, about = "Zeros of Hermite-Padé and Padé polynomials at high precision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Degree of the approximant
    #[arg(long)]
    n: Option<usize>,
    /// Working precision in bits (default max(512, 24n), or HP_BITS)
    #[arg(long)]
    bits: Option<u32>,
    /// Directory for output files; without it the result goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; repeat for several. Defaults to json on stdout and
    /// all formats with --out
    #[arg(long, value_enum)]
    format: Vec<FormatArg>,
    /// Seed for the root finder's starting points
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Svg => Format::Svg,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Type I Hermite-Padé polynomials for one of the three Markov cases
    Hp {
        /// case1 | case2 | case3
        #[arg(long, default_value = "case1")]
        family: String,
        /// Parameter a as num/den
        #[arg(long, default_value = "1/5", allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        common: Common,
    },
    /// Diagonal Padé approximant at infinity
    Pade {
        /// three_point | six_point | arcsine, or use --spec
        #[arg(long, default_value = "three_point")]
        family: String,
        /// Function spec as JSON, or @file
        #[arg(long)]
        spec: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Two-point Padé approximant
    Twopoint {
        /// two_branch | quarter_ratio, or use --spec0 and --spec-inf
        #[arg(long, default_value = "quarter_ratio")]
        family: String,
        #[arg(long)]
        spec0: Option<String>,
        #[arg(long)]
        spec_inf: Option<String>,
        /// Move one condition from infinity to the origin
        #[arg(long)]
        footnote_split: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Roots of a polynomial given as JSON [[re, im], ...] in ascending order
    Roots {
        /// JSON file, or - for stdin
        input: PathBuf,
        #[arg(long, default_value_t = 512)]
        bits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks on exported zero sets
    Analyze {
        /// CSV file written by this tool
        input: PathBuf,
        /// conjugate | reflection | froissart | ks | chebotarev | lens
        #[arg(long)]
        check: String,
        /// Labels of the sets to use (first, second)
        #[arg(long, num_args = 1..=2)]
        labels: Vec<String>,
        /// Branch points as re,im pairs separated by ';'
        #[arg(long, default_value = "")]
        branch_points: String,
        #[arg(long, default_value = "1e-10")]
        tol: String,
        #[arg(long, default_value_t = 1e-3)]
        doublet_eps: f64,
        #[arg(long, default_value_t = 0.1)]
        hull_margin: f64,
        #[arg(long, default_value_t = 512)]
        bits: u32,
    },
    /// Reproduce a figure preset
    Preset {
        /// Preset id such as fig4_4
        id: Option<String>,
        /// List the presets and exit
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1e-3)]
        doublet_eps: f64,
        #[arg(long, default_value_t = 0.1)]
        hull_margin: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run many presets, or scan values of a for the lens transition
    Sweep {
        /// Preset id, figure prefix such as fig4, or all
        #[arg(long, default_value = "all")]
        select: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Case for a lens sweep; requires --a-values
        #[arg(long)]
        lens_case: Option<u8>,
        /// Comma-separated values of a as num/den
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a_values: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(s.to_string()),
    }
}

fn parse_spec(s: &str) -> Result<FunctionSpec> {
    serde_json::from_str(&read_arg(s)?).context("parsing function spec")
}

fn hp_case(family: &str) -> Result<u8> {
    Ok(match family {
        "case1" | "markov_log" => 1,
        "case2" | "markov_root_half" => 2,
        "case3" | "markov_root_third" => 3,
        other => bail!("unknown family {other}; expected case1, case2 or case3"),
    })
}

fn named_pade(family: &str) -> Result<(FunctionSpec, usize)> {
    let find = |id: &str| match presets::find(id).map(|p| p.problem) {
        Some(Problem::Pade { f, genus, .. }) => Ok((f, genus)),
        _ => Err(anyhow!("preset {id} missing")),
    };
    match family {
        "three_point" => find("fig1_1"),
        "six_point" => find("fig1_4"),
        "arcsine" => {
            let pm1 = [ExactComplex::parse("-1", "0")?, ExactComplex::parse("1", "0")?];
            let half = parse_rational("-1/2")?;
            Ok((FunctionSpec::algebraic(pm1.to_vec(), vec![half.clone(), half]), 0))
        }
        other => bail!("unknown family {other}; expected three_point, six_point or arcsine"),
    }
}

fn formats(common: &Common) -> Vec<Format> {
    if common.format.is_empty() {
        if common.out.is_some() {
            Format::ALL.to_vec()
        } else {
            vec![Format::Json]
        }
    } else {
        common.format.iter().map(|&f| f.into()).collect()
    }
}

fn config(common: &Common) -> RunConfig {
    RunConfig { n: common.n, bits: common.bits, seed: common.seed, ..RunConfig::default() }
}

fn emit(run: &PresetRun, common: &Common) -> Result<()> {
    let fmts = formats(common);
    match &common.out {
        Some(dir) => {
            for p in run.write(dir, &fmts)? {
                eprintln!("wrote {}", p.display());
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            for f in fmts {
                out.write_all(run.render(f)?.as_bytes())?;
            }
        }
    }
    for c in run.failures() {
        eprintln!("check failed: {} {}", c.name, c.detail);
    }
    Ok(())
}

fn adhoc(id: &str, title: String, problem: Problem, common: &Common, default_n: usize) -> Result<PresetRun> {
    let view = (0..problem.labels().len()).collect();
    let preset = Preset { id: id.into(), title, problem, n: common.n.unwrap_or(default_n), view };
    Ok(run_preset(&preset, &config(common))?)
}

fn parse_points(s: &str, bits: u32) -> Result<Vec<Complex>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (re, im) = p.split_once(',').ok_or_else(|| anyhow!("branch point {p} is not re,im"))?;
            Ok(Complex::with_val(bits, (parse_float(re, bits)?, parse_float(im, bits)?)))
        })
        .collect()
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Hp { family, a, common } => {
            let case = hp_case(&family)?;
            let a_q = parse_rational(&a)?;
            let problem = Problem::HermitePade {
                case,
                a: a.clone(),
                f1: FunctionSpec::case(case, a_q.clone(), 1)?,
                f2: FunctionSpec::case(case, a_q, 2)?,
            };
            let run = adhoc("hp", format!("type I polynomials, case {case}, a={a}"), problem, &common, 20)?;
            emit(&run, &common)?;
            Ok(run.failures().is_empty())
        }
        Command::Pade { family, spec, common } => {
            let (f, genus) = match spec {
                Some(s) => {
                    let f = parse_spec(&s)?;
                    let g = genus_bound(f.singular_points().len());
                    (f, g)
                }
                None => named_pade(&family)?,
            };
            let title = format!("[n/n] of {}", f.describe());
            let run = adhoc("pade", title, Problem::Pade { f, genus, junctions: true }, &common, 20)?;
            emit(&run, &common)?;
            Ok(run.failures().is_empty())
        }
        Command::Twopoint { family, spec0, spec_inf, footnote_split, common } => {
            let split = if footnote_split { Split::Footnote } else { Split::Displayed };
            let (f0, f_inf, genus) = match (spec0, spec_inf) {
                (Some(a), Some(b)) => (parse_spec(&a)?, parse_spec(&b)?, 1),
                (None, None) => {
                    let id = match family.as_str() {
                        "two_branch" => "fig2_1",
                        "quarter_ratio" => "fig2_2",
                        other => bail!("unknown family {other}; expected two_branch or quarter_ratio"),
                    };
                    match presets::find(id).map(|p| p.problem) {
                        Some(Problem::TwoPoint { f0, f_inf, genus, .. }) => (f0, f_inf, genus),
                        _ => bail!("preset {id} missing"),
                    }
                }
                _ => bail!("--spec0 and --spec-inf go together"),
            };
            let title = format!("two-point [n/n] of {} / {}", f0.describe(), f_inf.describe());
            let run = adhoc("twopoint", title, Problem::TwoPoint { f0, f_inf, split, genus }, &common, 20)?;
            emit(&run, &common)?;
            Ok(run.failures().is_empty())
        }
        Command::Roots { input, bits, seed } => {
            let v: Value = serde_json::from_str(&read_input(&input)?)?;
            let arr = v.get("coefficients").unwrap_or(&v).as_array().ok_or_else(|| anyhow!("expected an array"))?;
            let coeffs = arr
                .iter()
                .map(|c| {
                    let pair = c.as_array().filter(|p| p.len() == 2).ok_or_else(|| anyhow!("coefficient {c} is not [re, im]"))?;
                    let part = |x: &Value| -> Result<Float> {
                        let s = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                        Ok(parse_float(&s, bits)?)
                    };
                    Ok(Complex::with_val(bits, (part(&pair[0])?, part(&pair[1])?)))
                })
                .collect::<Result<Vec<_>>>()?;
            let ctx = PrecisionContext::new(bits)?.with_seed(seed);
            let zs = find_roots(&Polynomial::new(coeffs, bits), &ctx)?.with_label("roots");
            println!("{}", serde_json::to_string_pretty(&zs.to_json())?);
            Ok(true)
        }
        Command::Analyze { input, check, labels, branch_points, tol, doublet_eps, hull_margin, bits } => {
            let sets = from_csv(&read_input(&input)?, bits)?;
            let pick = |k: usize| {
                let set = match labels.get(k) {
                    Some(l) => sets.iter().find(|s| &s.label == l),
                    None => sets.get(k),
                };
                set.ok_or_else(|| anyhow!("zero set {} not found in input", labels.get(k).cloned().unwrap_or(k.to_string())))
            };
            let tol = parse_float(&tol, 64)?;
            let bp = parse_points(&branch_points, bits)?;
            let (report, ok) = match check.as_str() {
                "conjugate" => {
                    let r = check_conjugate_symmetry(pick(0)?, &tol);
                    (serde_json::to_value(&r)?, r.ok)
                }
                "reflection" => {
                    let r = check_reflection_pairing(pick(0)?, pick(1)?, &tol)?;
                    (serde_json::to_value(&r)?, r.ok)
                }
                "froissart" => {
                    let r = detect_froissart(
                        pick(0)?,
                        pick(1)?,
                        &bp,
                        genus_bound(bp.len()),
                        FroissartOptions { doublet_eps, hull_margin },
                    );
                    (r.to_json(), r.within_bound())
                }
                "ks" => (json!(fmt_float(&ks_arcsine(pick(0)?, &tol)?, 6)), true),
                "chebotarev" => {
                    let c = chebotarev_candidates(pick(0)?, &bp, 5)?;
                    (json!(c.iter().map(|z| complex_strings(z, 12)).collect::<Vec<_>>()), !c.is_empty())
                }
                "lens" => (json!(lens_fraction(pick(0)?, 0.05)), true),
                other => bail!("unknown check {other}"),
            };
            println!("{}", serde_json::to_string_pretty(&json!({"schema": 1, "check": check, "ok": ok, "report": report}))?);
            Ok(ok)
        }
        Command::Preset { id, list, doublet_eps, hull_margin, common } => {
            if list {
                for p in presets::all() {
                    println!("{}\tn={}\t{}", p.id, p.n, p.title);
                }
                return Ok(true);
            }
            let id = id.ok_or_else(|| anyhow!("give a preset id or --list"))?;
            let preset = presets::find(&id).ok_or_else(|| anyhow!("unknown preset {id}"))?;
            let cfg = RunConfig { froissart: FroissartOptions { doublet_eps, hull_margin }, ..config(&common) };
            let run = run_preset(&preset, &cfg).with_context(|| format!("preset {id}"))?;
            emit(&run, &common)?;
            Ok(run.failures().is_empty())
        }
        Command::Sweep { select: pattern, workers, lens_case, a_values, common } => {
            if let Some(case) = lens_case {
                let values = a_values.iter().map(|a| parse_rational(a)).collect::<Result<Vec<_>, _>>()?;
                let n = common.n.unwrap_or(40);
                let bits = resolve_bits(common.bits, n)?;
                let pts = lens_sweep(case, &values, n, bits, workers)?;
                println!("{}", serde_json::to_string_pretty(&pts)?);
                return Ok(pts.iter().all(|p| p.error.is_none()));
            }
            let out = common.out.clone().ok_or_else(|| anyhow!("sweep needs --out"))?;
            let ids = select(&pattern);
            if ids.is_empty() {
                bail!("no preset matches {pattern}");
            }
            let entries = sweep_presets(&ids, &config(&common), &out, &formats(&common), workers);
            for e in &entries {
                println!("{}\t{}\t{}", e.id, if e.ok { "ok" } else { "FAIL" }, e.message);
            }
            Ok(entries.iter().all(|e| e.ok))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
