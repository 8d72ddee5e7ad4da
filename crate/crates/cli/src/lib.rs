//! `simstab` command-line front end.
//!
//! Exit codes: 0 when the requested claim holds, 1 when it does not, 2 on
//! usage or input errors.

pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use simstab::champagne::catalog_records;
use simstab::synthesis::properize;
use simstab::{
    bilinear_plant, construct_controller, delta_threshold, exact_range_deg0, example_catalog,
    feasibility_search, gcp_plants, simultaneously_stabilizes, to_continuous, verdict,
    ControllerTemplate, Domain, GcpInstance, ParamBox, Poly, ProblemFile, ProofSynthConfig,
    Rational, SearchConfig, TransferFunction, Variant,
};

use report::{
    ExampleCheck, ExamplesReport, Method, PolyCheck, RangeReport, Render, Report, Synthesis,
    VerdictReport, Verification,
};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "simstab",
    version,
    about = "Exact simultaneous-stabilization checks and controller synthesis"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stability verdict for one polynomial.
    CheckPoly {
        /// `s` (Hurwitz) or `z` (roots outside the closed unit disk).
        #[arg(long, default_value = "s")]
        domain: Domain,
        /// Coefficients in ascending order, comma separated, e.g. "1,0,1".
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Certify the controller of a problem file against its plants.
    Verify { file: PathBuf },
    /// The three-plant benchmark family.
    #[command(subcommand)]
    Champagne(ChampagneCommand),
    /// Bisect on delta for the smallest value a template still handles.
    Threshold {
        #[arg(long)]
        template: ControllerTemplate,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lo: Rational,
        #[arg(long, default_value = "1")]
        hi: Rational,
        #[arg(long, default_value = "1/1000")]
        tol: Rational,
        /// Box budget per search.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Make the controller of a problem file proper.
    Properize {
        file: PathBuf,
        #[arg(long)]
        target_degree: usize,
        #[arg(long, default_value = "1/10")]
        eps: Rational,
    },
    /// Move the plants (and controller) of a problem file to the other domain.
    Transform {
        file: PathBuf,
        #[arg(long)]
        to: Domain,
    },
    /// Run the branch-and-prune search described by a problem file.
    Search {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChampagneCommand {
    /// Whether the family is simultaneously stabilizable at delta.
    Verdict {
        #[arg(long, allow_hyphen_values = true)]
        delta: Rational,
        #[arg(long, default_value = "1")]
        variant: Variant,
    },
    /// Re-check the built-in example catalog.
    Examples {
        /// Box budget for the nonexistence claims.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Build a stabilizing controller at delta.
    Synthesize {
        #[arg(long, allow_hyphen_values = true)]
        delta: Rational,
        #[arg(long, default_value = "1")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "proof")]
        method: Method,
        /// Controller structure for `--method search`.
        #[arg(long, default_value = "1,1")]
        template: ControllerTemplate,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value = "s")]
        domain: Domain,
    },
    /// Exact admissible constant controllers at delta.
    Range {
        #[arg(long, allow_hyphen_values = true)]
        delta: Rational,
    },
    /// Dump the example catalog as problem-file records.
    Catalog,
}

/// Reads a problem file; `.toml` files are TOML, everything else JSON.
pub fn load_problem(path: &Path) -> Result<ProblemFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let is_toml = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    let parsed = if is_toml {
        toml::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
    } else {
        serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
    }?;
    Ok(parsed)
}

fn parse_coeffs(s: &str) -> Result<Poly> {
    let coeffs = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<Rational>()
                .map_err(|e| anyhow!("coefficient `{}`: {e}", c.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn search_config(budget: Option<usize>) -> SearchConfig {
    let mut cfg = SearchConfig::default();
    if let Some(b) = budget {
        cfg.max_boxes = b;
    }
    cfg
}

/// Rendered output and whether the claim holds.
pub struct Output {
    pub text: String,
    pub json: String,
    pub holds: bool,
}

fn finish<T: Serialize + Render>(command: &[String], start: Instant, result: T) -> Result<Output> {
    let text = result.text();
    let holds = result.holds();
    let report = Report {
        command: command.to_vec(),
        result,
        elapsed_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok(Output {
        text,
        json: serde_json::to_string_pretty(&report)?,
        holds,
    })
}

fn examples(budget: Option<usize>) -> Result<ExamplesReport> {
    let cfg = search_config(budget);
    let mut entries = Vec::new();
    for ex in example_catalog() {
        let plants = ex.plants();
        let (passed, detail) = if ex.expected {
            let mut failures = Vec::new();
            for c in &ex.controllers {
                if !simultaneously_stabilizes(&plants, c)?.overall {
                    failures.push(c.display());
                }
            }
            let mut detail = format!(
                "{} controller(s) certified",
                ex.controllers.len() - failures.len()
            );
            let mut ok = failures.is_empty();
            if let Some((lo, hi)) = &ex.y0_range {
                let range = exact_range_deg0(&ex.delta)?;
                let want = simstab::synthesis::Segment::open(lo.clone(), hi.clone());
                ok &= range.segments == [want];
                detail.push_str(&format!("; constant range {range}"));
            }
            if !failures.is_empty() {
                detail.push_str(&format!("; failing: {}", failures.join(", ")));
            }
            (ok, detail)
        } else {
            let Some(tpl) = ex.template else {
                let holds = verdict(&ex.delta, Variant::Theorem1);
                entries.push(ExampleCheck {
                    id: ex.id,
                    delta: ex.delta,
                    expected: ex.expected,
                    passed: !holds,
                    detail: "no controller of any order (exact verdict)".into(),
                });
                continue;
            };
            let bx = ParamBox::uniform(tpl.param_count(), -10.0, 10.0)?;
            let out = feasibility_search(&plants, &tpl, &bx, &cfg)?;
            let detail = match out.controller() {
                Some(c) => format!("template {tpl}: found {}", c.display()),
                None if matches!(out.status, simstab::SearchStatus::BoxInfeasible) => {
                    format!(
                        "template {tpl}: [-10, 10]^{} proved infeasible ({} boxes)",
                        tpl.param_count(),
                        out.explored
                    )
                }
                None => format!("template {tpl}: none found within {} boxes", out.explored),
            };
            (!out.is_found(), detail)
        };
        entries.push(ExampleCheck {
            id: ex.id,
            delta: ex.delta,
            expected: ex.expected,
            passed,
            detail,
        });
    }
    let all_passed = entries.iter().all(|e| e.passed);
    Ok(ExamplesReport {
        entries,
        all_passed,
    })
}

/// Second-variant plants at δ equal first-variant plants at -δ divided by -2δ,
/// so a first-variant controller `c` for -δ becomes `-2δ c`.
fn synthesize_proof(delta: &Rational, variant: Variant, domain: Domain) -> Result<Synthesis> {
    let base = match variant {
        Variant::Theorem1 => delta.clone(),
        Variant::Theorem2 => -delta.clone(),
    };
    let mut out = Synthesis {
        method: Method::Proof,
        delta: delta.clone(),
        variant,
        domain,
        controller: None,
        certificate: None,
        diagnostics: None,
        explored: None,
        failure: None,
    };
    let built = match construct_controller(&ProofSynthConfig::new(base.clone())) {
        Ok(b) => b,
        Err(e) => {
            out.failure = Some(e.to_string());
            return Ok(out);
        }
    };
    let mut c = match domain {
        Domain::Discrete => TransferFunction::from_poly(built.q.clone(), Domain::Discrete),
        Domain::Continuous => to_continuous(&built.q, &base)?.0,
    };
    if variant == Variant::Theorem2 {
        c = c.scale(&(delta * Rational::from_integer(-2)));
    }
    let plants = gcp_plants(&GcpInstance::new(delta.clone(), variant, domain));
    out.certificate = Some(simultaneously_stabilizes(&plants, &c)?);
    out.controller = Some(c);
    out.diagnostics = Some(built.diagnostics);
    Ok(out)
}

fn synthesize_search(
    delta: &Rational,
    variant: Variant,
    domain: Domain,
    tpl: &ControllerTemplate,
    budget: Option<usize>,
) -> Result<Synthesis> {
    let plants = gcp_plants(&GcpInstance::new(delta.clone(), variant, domain));
    let bx = ParamBox::uniform(tpl.param_count(), -10.0, 10.0)?;
    let res = feasibility_search(&plants, tpl, &bx, &search_config(budget))?;
    let (controller, certificate) = match res.status {
        simstab::SearchStatus::Found {
            controller,
            certificate,
        } => (Some(controller), Some(certificate)),
        _ => (None, None),
    };
    let failure = controller
        .is_none()
        .then(|| format!("no {tpl} controller in [-10, 10]^{}", tpl.param_count()));
    Ok(Synthesis {
        method: Method::Search,
        delta: delta.clone(),
        variant,
        domain,
        controller,
        certificate,
        diagnostics: None,
        explored: Some(res.explored),
        failure,
    })
}

fn transform(mut problem: ProblemFile, to: Domain) -> Result<ProblemFile> {
    problem.plant_set()?;
    problem.plants = problem
        .plants
        .iter()
        .map(|p| bilinear_plant(p, to))
        .collect::<simstab::Result<_>>()?;
    problem.controller = problem
        .controller
        .as_ref()
        .map(|c| bilinear_plant(c, to))
        .transpose()?;
    problem.domain = to;
    Ok(problem)
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<Output> {
    let start = Instant::now();
    match &cli.command {
        Command::CheckPoly { domain, coeffs } => {
            let poly = parse_coeffs(coeffs)?;
            let verdict = simstab::stability::is_stable_in(&poly, *domain)?;
            finish(
                argv,
                start,
                PolyCheck {
                    domain: *domain,
                    poly,
                    verdict,
                },
            )
        }
        Command::Verify { file } => {
            let problem = load_problem(file)?;
            let plants = problem.plant_set()?;
            let controller = problem.require_controller()?.clone();
            let certificate = simultaneously_stabilizes(&plants, &controller)?;
            finish(
                argv,
                start,
                Verification {
                    controller,
                    certificate,
                },
            )
        }
        Command::Champagne(sub) => match sub {
            ChampagneCommand::Verdict { delta, variant } => {
                let stabilizable = verdict(delta, *variant);
                finish(
                    argv,
                    start,
                    VerdictReport {
                        delta: delta.clone(),
                        variant: *variant,
                        stabilizable,
                    },
                )
            }
            ChampagneCommand::Examples { budget } => finish(argv, start, examples(*budget)?),
            ChampagneCommand::Synthesize {
                delta,
                variant,
                method,
                template,
                budget,
                domain,
            } => {
                let result = match method {
                    Method::Proof => synthesize_proof(delta, *variant, *domain)?,
                    Method::Search => {
                        synthesize_search(delta, *variant, *domain, template, *budget)?
                    }
                };
                finish(argv, start, result)
            }
            ChampagneCommand::Range { delta } => finish(
                argv,
                start,
                RangeReport {
                    delta: delta.clone(),
                    range: exact_range_deg0(delta)?,
                },
            ),
            ChampagneCommand::Catalog => finish(argv, start, catalog_records()),
        },
        Command::Threshold {
            template,
            lo,
            hi,
            tol,
            budget,
        } => finish(
            argv,
            start,
            delta_threshold(template, lo, hi, tol, &search_config(*budget))?,
        ),
        Command::Properize {
            file,
            target_degree,
            eps,
        } => {
            let problem = load_problem(file)?;
            let plants = problem.plant_set()?;
            let c = problem.require_controller()?;
            finish(argv, start, properize(c, &plants, *target_degree, eps)?)
        }
        Command::Transform { file, to } => {
            finish(argv, start, transform(load_problem(file)?, *to)?)
        }
        Command::Search { file, budget } => {
            let problem = load_problem(file)?;
            let plants = problem.plant_set()?;
            let tpl = problem
                .template
                .ok_or_else(|| anyhow!("problem file has no template"))?;
            let bx = match &problem.param_box {
                Some(b) => b.clone(),
                None => ParamBox::uniform(tpl.param_count(), -10.0, 10.0)?,
            };
            let mut cfg = problem.search.clone().unwrap_or_default();
            if let Some(b) = budget {
                cfg.max_boxes = *b;
            }
            if bx.dim() != tpl.param_count() {
                bail!(
                    "box has dimension {}, template {tpl} needs {}",
                    bx.dim(),
                    tpl.param_count()
                );
            }
            finish(argv, start, feasibility_search(&plants, &tpl, &bx, &cfg)?)
        }
    }
}

/// Runs the command, prints the report and returns the exit code.
pub fn main_with(cli: Cli, argv: Vec<String>) -> i32 {
    match execute(&cli, &argv) {
        Ok(out) => {
            println!("{}", if cli.json { &out.json } else { &out.text });
            if out.holds {
                EXIT_HOLDS
            } else {
                EXIT_FALSE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
