//! Command-line front end: weights and limits, frame tests, singularity
//! classification, S-invariants and walls, decomposition-table validation,
//! toric checks, and the full regression run.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kmoduli::check::{render_report, run_paper_check, ReportFormat, RunConfig};
use kmoduli::forms::{catalog_json, lookup, BidegreeForm};
use kmoduli::git::{
    hm_weight, limit_along, nodal_git_status, torus_frame_test, Limit, NodalQuarticPoint, OnePS,
};
use kmoduli::kvol::{s_invariant, wall_solve, PiecewiseVolume, WallProblem};
use kmoduli::poly::{parse_mpoly, MPoly};
use kmoduli::quad::{Field, QuadExt};
use kmoduli::rat::{parse_rat, rat, rat_to_string, to_f64, Rat};
use kmoduli::singular::{
    discriminant, fiber_conditions, local_data_surface,
    rational_singular_points, QuarticSingReport, SurfacePoint, TernaryQuartic,
};
use kmoduli::toric::{
    anticanonical_polytope, class_rank, cone_diagnostics, fans, is_reflexive, picard_rank, Fan,
};
use kmoduli::zariski::{validate_table, ZariskiTable};

#[derive(Parser)]
#[command(name = "kmoduli", about = "Exact stability computations for (2,2)-divisors", version)]
struct Cli {
    /// Emit JSON instead of text where applicable.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Worker threads for batch runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Isolating-interval width, as a rational like 1/100000000.
    #[arg(long, global = true, default_value = "1/100000000")]
    precision: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert-Mumford machinery.
    Git {
        #[command(subcommand)]
        cmd: GitCmd,
    },
    /// Discriminants and singularities.
    Sing {
        #[command(subcommand)]
        cmd: SingCmd,
    },
    /// Volumes, S-invariants, walls.
    Kvol {
        #[command(subcommand)]
        cmd: KvolCmd,
    },
    /// Zariski decomposition tables.
    Zariski {
        #[command(subcommand)]
        cmd: ZariskiCmd,
    },
    /// Fans and toric invariants.
    Toric {
        #[command(subcommand)]
        cmd: ToricCmd,
    },
    /// Named forms and the shipped catalog.
    Forms {
        #[command(subcommand)]
        cmd: FormsCmd,
    },
    /// Run the shipped regression suite.
    PaperCheck {
        /// Restrict to one tag: walls, s, git, nodal, disc, quartics,
        /// zariski, toric, volumes.
        #[arg(long)]
        tag: Option<String>,
        /// Samples per decomposition table.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum GitCmd {
    /// Hilbert-Mumford weight of a form at a one-parameter subgroup.
    Weight(FormLambda),
    /// Degeneration limit of a form along a one-parameter subgroup.
    Limit(FormLambda),
    /// State-polytope verdict for the maximal torus of the given frame.
    FrameTest {
        #[arg(long)]
        form: String,
    },
    /// Pointed nodal quartic stability under the weight-one torus.
    Nodal {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Coefficients of x^0 y^4 .. x^4 y^0, comma separated.
        #[arg(long)]
        f4: String,
    },
}

#[derive(Args)]
struct FormLambda {
    #[arg(long)]
    form: String,
    /// Like "(-1,1;-1,0,1)".
    #[arg(long)]
    lambda: String,
}

#[derive(Subcommand)]
enum SingCmd {
    /// Discriminant quartic of a (2,2)-form.
    Disc {
        #[arg(long)]
        form: String,
    },
    /// Classify the surface germ at a point "([a:b],[x:y:z])".
    Classify {
        #[arg(long)]
        form: String,
        #[arg(long)]
        point: String,
        /// Quadratic extension discriminant d for Q(sqrt(d)); omit for Q.
        #[arg(long)]
        field: Option<i64>,
    },
    /// Singular points of a plane quartic over the declared field.
    Quartic {
        #[arg(long)]
        curve: String,
        /// List every singular point with its type.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        field: Option<i64>,
    },
}

#[derive(Subcommand)]
enum KvolCmd {
    /// S-invariant of a piecewise volume table (JSON file).
    S {
        #[arg(long)]
        table: PathBuf,
    },
    /// Print a shipped S-table as JSON.
    Export {
        #[arg(long)]
        id: String,
    },
    /// Wall roots of A - S inside a window.
    Wall {
        /// Log discrepancy, a polynomial in c.
        #[arg(long = "A")]
        log_discrepancy: String,
        #[arg(long)]
        table: PathBuf,
        /// "lo,hi" rationals.
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
enum ZariskiCmd {
    /// Validate an encoded decomposition table by seeded sampling.
    Validate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Print a shipped table (with its model) as JSON.
    Export {
        #[arg(long)]
        label: String,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Reflexivity, ranks, and cone diagnostics of a fan.
    Check {
        /// Fan JSON file, or a built-in name: xn, w, wplus, what, p1112,
        /// p1xp2, p3, p2, p1, f2.
        #[arg(long)]
        fan: String,
        /// Run every check.
        #[arg(long)]
        all: bool,
    },
    /// Print a built-in fan as JSON.
    Export {
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand)]
enum FormsCmd {
    /// Print the versioned catalog as JSON.
    ExportCatalog,
    /// Look up a catalog entry, with optional parameter overrides k=v.
    Show {
        #[arg(long)]
        name: String,
        #[arg(long)]
        param: Vec<String>,
    },
}

fn parse_form(src: &str) -> Result<BidegreeForm> {
    if let Ok(f) = lookup(src, &[]) {
        return Ok(f);
    }
    if let Some(path) = src.strip_prefix('@') {
        let raw = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let value: serde_json::Value = serde_json::from_str(&raw)?;
        let p = MPoly::from_json(&value).map_err(|e| anyhow!("{e}"))?;
        return BidegreeForm::from_mpoly(&p).map_err(|e| anyhow!("{e}"));
    }
    BidegreeForm::parse(src).map_err(|e| anyhow!("{e}"))
}

fn parse_point(src: &str, d: i64) -> Result<SurfacePoint> {
    // "([a:b],[x:y:z])"
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = cleaned
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| anyhow!("point must look like ([a:b],[x:y:z])"))?;
    let parts: Vec<&str> = inner.splitn(2, "],[").collect();
    if parts.len() != 2 {
        bail!("point must look like ([a:b],[x:y:z])");
    }
    let t_part = parts[0].trim_start_matches('[');
    let y_part = parts[1].trim_end_matches(']');
    let coords = |s: &str| -> Result<Vec<QuadExt>> {
        s.split(':')
            .map(|x| Ok(QuadExt::rational(parse_rat(x).map_err(|e| anyhow!("{e}"))?, d)))
            .collect()
    };
    let t = coords(t_part)?;
    let y = coords(y_part)?;
    if t.len() != 2 || y.len() != 3 {
        bail!("point must have 2 and 3 homogeneous coordinates");
    }
    Ok(SurfacePoint {
        t: [t[0].clone(), t[1].clone()],
        y: [y[0].clone(), y[1].clone(), y[2].clone()],
    })
}

fn builtin_fan(name: &str) -> Option<Fan> {
    Some(match name {
        "xn" => fans::xn(),
        "w" => fans::w(),
        "wplus" => fans::w_plus(),
        "what" => fans::w_hat(),
        "p1112" => fans::p1112(),
        "p1xp2" => fans::p1xp2(),
        "p3" => fans::p3(),
        "p2" => fans::p2(),
        "p1" => fans::p1(),
        "f2" => fans::f2(),
        _ => return None,
    })
}

fn load_fan(src: &str) -> Result<Fan> {
    if let Some(f) = builtin_fan(src) {
        return Ok(f);
    }
    let raw = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
    let value: serde_json::Value = serde_json::from_str(&raw)?;
    Fan::from_json(&value).map_err(|e| anyhow!("{e}"))
}

fn field_of(d: Option<i64>) -> Field {
    match d {
        None | Some(0) => Field::Q,
        Some(d) => Field::QSqrt(d),
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let precision = parse_rat(&cli.precision).map_err(|e| anyhow!("{e}"))?;
    let cfg = RunConfig {
        seed: cli.seed,
        samples: 100,
        precision: precision.clone(),
        jobs: cli.jobs,
    };
    match cli.command {
        Command::Git { cmd } => run_git(cmd, cli.json)?,
        Command::Sing { cmd } => run_sing(cmd, cli.json)?,
        Command::Kvol { cmd } => run_kvol(cmd, cli.json, &precision)?,
        Command::Zariski { cmd } => run_zariski(cmd, cli.json, cli.seed)?,
        Command::Toric { cmd } => run_toric(cmd, cli.json)?,
        Command::Forms { cmd } => run_forms(cmd)?,
        Command::PaperCheck { tag, samples } => {
            let cfg = RunConfig { samples, ..cfg };
            let (reports, code) = run_paper_check(tag.as_deref(), &cfg);
            let format = if cli.json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            print!("{}", render_report(&reports, format, &cfg));
            std::process::exit(code);
        }
    }
    Ok(())
}

fn run_git(cmd: GitCmd, json: bool) -> Result<()> {
    match cmd {
        GitCmd::Weight(args) => {
            let f = parse_form(&args.form)?;
            let lam = OnePS::parse(&args.lambda).map_err(|e| anyhow!("{e}"))?;
            let mu = hm_weight(&f, &lam).map_err(|e| anyhow!("{e}"))?;
            if json {
                println!("{}", serde_json::json!({ "mu": mu }));
            } else {
                println!("mu = {mu}");
            }
        }
        GitCmd::Limit(args) => {
            let f = parse_form(&args.form)?;
            let lam = OnePS::parse(&args.lambda).map_err(|e| anyhow!("{e}"))?;
            match limit_along(&f, &lam).map_err(|e| anyhow!("{e}"))? {
                Limit::Form(g) => println!("limit: {g}"),
                Limit::Zero => println!("limit: 0"),
                Limit::DoesNotExist => println!("limit does not exist"),
            }
        }
        GitCmd::FrameTest { form } => {
            let f = parse_form(&form)?;
            let v = torus_frame_test(&f).map_err(|e| anyhow!("{e}"))?;
            if json {
                let doc = serde_json::json!({
                    "status": v.status.to_string(),
                    "witness": v.witness.map(|w| w.to_string()),
                    "zero_weight_limit": v.zero_weight_limit.map(|g| g.to_mpoly().to_json()),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("status: {}", v.status);
                if let Some(w) = v.witness {
                    println!("witness: {w} (normalized {})", w.normalized());
                }
                if let Some(l) = v.zero_weight_limit {
                    println!("zero-weight limit: {l}");
                }
            }
        }
        GitCmd::Nodal { a, b, f4 } => {
            let coeffs: Vec<Rat> = f4
                .split(',')
                .map(|x| parse_rat(x.trim()).map_err(|e| anyhow!("{e}")))
                .collect::<Result<_>>()?;
            if coeffs.len() != 5 {
                bail!("--f4 needs exactly 5 coefficients");
            }
            let p = NodalQuarticPoint::new(
                parse_rat(&a).map_err(|e| anyhow!("{e}"))?,
                parse_rat(&b).map_err(|e| anyhow!("{e}"))?,
                [
                    coeffs[0].clone(),
                    coeffs[1].clone(),
                    coeffs[2].clone(),
                    coeffs[3].clone(),
                    coeffs[4].clone(),
                ],
            );
            let status = nodal_git_status(&p).map_err(|e| anyhow!("{e}"))?;
            println!("{status}");
        }
    }
    Ok(())
}

fn run_sing(cmd: SingCmd, json: bool) -> Result<()> {
    match cmd {
        SingCmd::Disc { form } => {
            let f = parse_form(&form)?;
            let d = discriminant(&f);
            if json {
                println!("{}", serde_json::to_string_pretty(&d.0.to_json())?);
            } else {
                println!("{d}");
            }
        }
        SingCmd::Classify { form, point, field } => {
            let f = parse_form(&form)?;
            let fld = field_of(field);
            let p = parse_point(&point, fld.discriminant())?;
            let rep = local_data_surface(&f, &p, fld).map_err(|e| anyhow!("{e}"))?;
            let fib = fiber_conditions(&f, &p, fld).map_err(|e| anyhow!("{e}"))?;
            if json {
                let doc = serde_json::json!({
                    "field": format!("{fld:?}"),
                    "jacobian_rank": rep.jacobian_rank,
                    "hessian_corank": rep.hessian_corank,
                    "milnor": rep.milnor,
                    "ade_type": rep.ade_type.label(),
                    "pi2_fiber_finite": fib.pi2_fiber_finite,
                    "pi1_fiber_reduced": fib.pi1_fiber_reduced,
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!(
                    "type {} (jacobian rank {}, hessian corank {}, milnor {:?})",
                    rep.ade_type, rep.jacobian_rank, rep.hessian_corank, rep.milnor
                );
                println!(
                    "second-projection fiber finite: {}; first-projection fiber reduced: {}",
                    fib.pi2_fiber_finite, fib.pi1_fiber_reduced
                );
            }
        }
        SingCmd::Quartic { curve, all, field } => {
            let q = TernaryQuartic::new(
                parse_mpoly(&curve, &kmoduli::forms::PLANE_VARS).map_err(|e| anyhow!("{e}"))?,
            );
            let fld = field_of(field);
            match rational_singular_points(&q, fld).map_err(|e| anyhow!("{e}"))? {
                QuarticSingReport::NonReduced { radical } => {
                    if json {
                        let doc = serde_json::json!({
                            "field": format!("{fld:?}"),
                            "non_reduced": true,
                            "radical": radical.to_json(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc)?);
                    } else {
                        println!("non-reduced; radical: {radical}");
                    }
                }
                QuarticSingReport::Points(pts) => {
                    if json {
                        let points: Vec<serde_json::Value> = pts
                            .iter()
                            .map(|p| {
                                serde_json::json!({
                                    "point": p.point.iter().map(|c| format!("{c}")).collect::<Vec<_>>(),
                                    "ade_type": p.report.ade_type.label(),
                                    "milnor": p.report.milnor,
                                    "hessian_corank": p.report.hessian_corank,
                                })
                            })
                            .collect();
                        let doc = serde_json::json!({
                            "field": format!("{fld:?}"),
                            "non_reduced": false,
                            "singular_points": points,
                        });
                        println!("{}", serde_json::to_string_pretty(&doc)?);
                        return Ok(());
                    }
                    if pts.is_empty() {
                        println!("smooth over the declared field");
                    }
                    for p in pts {
                        let coords: Vec<String> =
                            p.point.iter().map(|c| format!("{c}")).collect();
                        println!("[{}]: {}", coords.join(" : "), p.report.ade_type);
                        if !all {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_kvol(cmd: KvolCmd, json: bool, precision: &Rat) -> Result<()> {
    match cmd {
        KvolCmd::Export { id } => {
            let case = kmoduli::dataset::stables::all_s_tables()
                .into_iter()
                .find(|c| c.id == id)
                .ok_or_else(|| anyhow!("no shipped table {id}"))?;
            println!("{}", serde_json::to_string_pretty(&case.table)?);
        }
        KvolCmd::S { table } => {
            let raw = std::fs::read_to_string(&table)?;
            let pv: PiecewiseVolume = serde_json::from_str(&raw)?;
            let s = s_invariant(&pv).map_err(|e| anyhow!("{e}"))?;
            if json {
                let red = s.reduced();
                let doc = serde_json::json!({
                    "label": pv.paper_label,
                    "numerator": red.numerator().to_json(),
                    "denominator": red.denominator().to_json(),
                    "display": format!("{s}"),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("S = {s}");
            }
        }
        KvolCmd::Wall {
            log_discrepancy,
            table,
            window,
        } => {
            let raw = std::fs::read_to_string(&table)?;
            let pv: PiecewiseVolume = serde_json::from_str(&raw)?;
            let s = s_invariant(&pv).map_err(|e| anyhow!("{e}"))?;
            let a = parse_mpoly(&log_discrepancy, &["c"]).map_err(|e| anyhow!("{e}"))?;
            let parts: Vec<&str> = window.split(',').collect();
            if parts.len() != 2 {
                bail!("--window needs lo,hi");
            }
            let problem = WallProblem {
                log_discrepancy: a,
                s: s.clone(),
                window: (
                    parse_rat(parts[0]).map_err(|e| anyhow!("{e}"))?,
                    parse_rat(parts[1]).map_err(|e| anyhow!("{e}"))?,
                ),
            };
            let roots = wall_solve(&problem).map_err(|e| anyhow!("{e}"))?;
            if roots.is_empty() {
                println!("no roots of A - S in the window (S = {s})");
            }
            for mut iv in roots {
                iv.refine(precision);
                println!(
                    "root of {} in ({}, {}], midpoint ~ {:.8}",
                    iv.polynomial,
                    rat_to_string(&iv.lo),
                    rat_to_string(&iv.hi),
                    to_f64(&iv.midpoint()),
                );
            }
        }
    }
    Ok(())
}

fn run_zariski(cmd: ZariskiCmd, json: bool, seed: u64) -> Result<()> {
    match cmd {
        ZariskiCmd::Validate {
            model,
            table,
            samples,
        } => {
            let model_raw = std::fs::read_to_string(&model)?;
            let table_raw = std::fs::read_to_string(&table)?;
            let model_val: serde_json::Value = serde_json::from_str(&model_raw)?;
            let mut table_val: serde_json::Value = serde_json::from_str(&table_raw)?;
            table_val["model"] = model_val;
            let t: ZariskiTable = serde_json::from_value(table_val)?;
            let report = validate_table(&t, samples, seed).map_err(|e| anyhow!("{e}"))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "{}: {} samples, {} boundary checks, {}",
                    report.label,
                    report.samples_run,
                    report.boundary_checks,
                    if report.passed() {
                        "all matched".to_string()
                    } else {
                        format!("{} mismatches", report.mismatches.len())
                    }
                );
                if let Some(m) = report.mismatches.first() {
                    println!("first witness: {m:?}");
                }
            }
            if !report.passed() {
                std::process::exit(1);
            }
        }
        ZariskiCmd::Export { label } => {
            let table = kmoduli::dataset::ztables::zariski_tables()
                .into_iter()
                .find(|t| t.paper_label == label)
                .ok_or_else(|| anyhow!("no shipped table {label}"))?;
            println!("{}", serde_json::to_string_pretty(&table)?);
        }
    }
    Ok(())
}

fn run_toric(cmd: ToricCmd, json: bool) -> Result<()> {
    match cmd {
        ToricCmd::Check { fan, all } => {
            let f = load_fan(&fan)?;
            let poly = anticanonical_polytope(&f).map_err(|e| anyhow!("{e}"))?;
            let reflexive = is_reflexive(&poly).map_err(|e| anyhow!("{e}"))?;
            let pic = picard_rank(&f).map_err(|e| anyhow!("{e}"))?;
            let cls = class_rank(&f).map_err(|e| anyhow!("{e}"))?;
            let diags = cone_diagnostics(&f);
            if json {
                let doc = serde_json::json!({
                    "reflexive": reflexive,
                    "picard_rank": pic,
                    "class_rank": cls,
                    "cones": diags,
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("reflexive anticanonical polytope: {reflexive}");
                println!("picard rank: {pic}");
                println!("class rank: {cls}");
                for d in &diags {
                    if all || !d.smooth {
                        println!(
                            "cone {:?}: {}{}",
                            d.rays,
                            d.singularity_label,
                            if d.odp_certificate.is_some() {
                                " (certificate found)"
                            } else {
                                ""
                            }
                        );
                    }
                }
            }
        }
        ToricCmd::Export { name } => {
            let f = builtin_fan(&name).ok_or_else(|| anyhow!("unknown fan {name}"))?;
            println!("{}", serde_json::to_string_pretty(&f.to_json())?);
        }
    }
    Ok(())
}

fn run_forms(cmd: FormsCmd) -> Result<()> {
    match cmd {
        FormsCmd::ExportCatalog => {
            println!("{}", serde_json::to_string_pretty(&catalog_json())?);
        }
        FormsCmd::Show { name, param } => {
            let params: Vec<(String, String)> = param
                .iter()
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| anyhow!("--param must be key=value"))
                })
                .collect::<Result<_>>()?;
            let borrowed: Vec<(&str, &str)> = params
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect();
            let f = lookup(&name, &borrowed).map_err(|e| anyhow!("{e}"))?;
            println!("{f}");
            let _ = rat(0);
        }
    }
    Ok(())
}
