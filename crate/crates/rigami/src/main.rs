//! Command-line front end: load a creased-paper document, run the analysis
//! pipeline, and print human- or machine-readable reports. Reports go to
//! stdout, diagnostics to stderr. Exit codes: 0 success, 1 analysis error,
//! 2 input/usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use nalgebra::DVector;
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::{assemble_hessian, assemble_jacobian};
use rigami::model::{load_creased_paper_from_file, CreasedPaper, GeometryChecks, LoadOptions};
use rigami::report::{analyze, count_summary, render_text, AnalyzeOptions, StabilityReport};
use rigami::stability::{
    extend_to_second_order, find_stabilizing_stress, is_prestress_stable, second_order_classify,
    second_order_residual, SecondOrderExtension, SecondOrderVerdict, StiffnessModel,
};
use rigami::statics::{
    first_order_flexes, resolve_load, self_stresses, stress_report, LoadFile, LoadResolution,
    StressFile,
};

const USAGE: &str = "\
rigami <subcommand> [options]

subcommands:
  analyze <file>                 run the full rigidity ladder
  count <file>                   structure counts and Jacobian shape
  jacobian <file> [--sparse]     print JA
  hessian <file> [--sparse]      print HA (sparse prints block entries)
  flexes <file>                  orthonormal basis of first-order flexes
  self-stresses <file>           orthonormal basis of self-stresses
  resolve-load <file> --load <loadfile>
                                 resolve a per-crease torque load
  prestress <file> [--stress <stressfile> | --search]
                                 pre-stress stability for a given or found stress
  second-order <file> [--flex <flexfile> | --classify]
                                 extend a flex, or classify second-order rigidity
  double-cone <file>             export the double-coning framework (JSON)
  fixtures [--dir <dir>]         write the built-in example structures to disk

common options:
  --format text|json   output format (default text)
  --lenient-geometry   downgrade panel-planarity/refold failures to warnings
  --tol-rank <x>       relative singular-value cutoff (default 1e-10)
  --tol-pd <x>         restricted-eigenvalue threshold (default 1e-9)
  --tol-res <x>        residual tolerance (default 1e-9)
  --samples <n>        sphere samples for sampled verdicts (default 10000)
  --seed <n>           sampler seed (default 0)
";

struct Cli {
    format_json: bool,
    lenient: bool,
    sparse: bool,
    search: bool,
    classify: bool,
    load_path: Option<PathBuf>,
    stress_path: Option<PathBuf>,
    flex_path: Option<PathBuf>,
    dir: Option<PathBuf>,
    options: AnalyzeOptions,
    positional: Vec<String>,
}

fn parse_args(args: &[String]) -> Result<Cli, String> {
    let mut cli = Cli {
        format_json: false,
        lenient: false,
        sparse: false,
        search: false,
        classify: false,
        load_path: None,
        stress_path: None,
        flex_path: None,
        dir: None,
        options: AnalyzeOptions::default(),
        positional: Vec::new(),
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("missing value for {name}"))
        };
        match arg.as_str() {
            "--format" => {
                cli.format_json = match take("--format")?.as_str() {
                    "json" => true,
                    "text" => false,
                    other => return Err(format!("unknown format `{other}`")),
                }
            }
            "--lenient-geometry" => cli.lenient = true,
            "--sparse" => cli.sparse = true,
            "--search" => cli.search = true,
            "--classify" => cli.classify = true,
            "--load" => cli.load_path = Some(PathBuf::from(take("--load")?)),
            "--stress" => cli.stress_path = Some(PathBuf::from(take("--stress")?)),
            "--flex" => cli.flex_path = Some(PathBuf::from(take("--flex")?)),
            "--dir" => cli.dir = Some(PathBuf::from(take("--dir")?)),
            "--tol-rank" => cli.options.rank_tol = parse_f64(&take("--tol-rank")?)?,
            "--tol-pd" => cli.options.pd_tol = parse_f64(&take("--tol-pd")?)?,
            "--tol-res" => cli.options.res_tol = parse_f64(&take("--tol-res")?)?,
            "--samples" => {
                cli.options.samples = take("--samples")?
                    .parse()
                    .map_err(|e| format!("bad --samples: {e}"))?
            }
            "--seed" => {
                cli.options.seed = take("--seed")?
                    .parse()
                    .map_err(|e| format!("bad --seed: {e}"))?
            }
            flag if flag.starts_with("--") => return Err(format!("unknown flag `{flag}`")),
            _ => cli.positional.push(arg.clone()),
        }
    }
    Ok(cli)
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.parse().map_err(|e| format!("bad number `{s}`: {e}"))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some((subcommand, rest)) = args.split_first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    };
    let cli = match parse_args(rest) {
        Ok(cli) => cli,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    match run(subcommand, cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Input(err)) => {
            eprintln!("input error: {err}");
            ExitCode::from(2)
        }
        Err(CliError::Analysis(err)) => {
            eprintln!("analysis error: {err}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    Usage(String),
    Input(rigami::Error),
    Analysis(rigami::Error),
}

fn load_paper(cli: &Cli) -> Result<CreasedPaper, CliError> {
    let path = cli
        .positional
        .first()
        .ok_or_else(|| CliError::Usage("expected a document path".to_string()))?;
    let options = LoadOptions {
        geometry: if cli.lenient {
            GeometryChecks::Lenient
        } else {
            GeometryChecks::Strict
        },
        geom_tol: None,
    };
    let paper = load_creased_paper_from_file(Path::new(path), &options).map_err(CliError::Input)?;
    for w in &paper.warnings {
        eprintln!("note: {w}");
    }
    Ok(paper)
}

fn run(subcommand: &str, cli: Cli) -> Result<(), CliError> {
    match subcommand {
        "analyze" => {
            let paper = load_paper(&cli)?;
            let report = analyze(&paper, &cli.options).map_err(CliError::Analysis)?;
            if cli.format_json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", render_text(&report));
            }
            Ok(())
        }
        "count" => {
            let paper = load_paper(&cli)?;
            let summary = count_summary(&paper).map_err(CliError::Analysis)?;
            if cli.format_json {
                println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            } else {
                println!(
                    "I={} J={} H={} K={} Z={} jacobian {}x{}",
                    summary.inner_vertices,
                    summary.inner_creases,
                    summary.holes,
                    summary.panels,
                    summary.boundary_vertices,
                    summary.jacobian_shape[0],
                    summary.jacobian_shape[1]
                );
            }
            Ok(())
        }
        "jacobian" | "hessian" => {
            let paper = load_paper(&cli)?;
            let system = ConstraintSystem::new(&paper).map_err(CliError::Analysis)?;
            let jacobian = assemble_jacobian(&system);
            let hessian = assemble_hessian(&system);
            if subcommand == "jacobian" {
                if cli.sparse {
                    for (r, c, v) in jacobian.coordinate_list() {
                        println!("{r} {c} {v:.17e}");
                    }
                } else {
                    print_dense(&jacobian.matrix);
                }
            } else if cli.sparse {
                for (r, j, k, v) in hessian.coordinate_list() {
                    println!("{r} {j} {k} {v:.17e}");
                }
            } else {
                for r in 0..system.rows {
                    println!("# row {r}");
                    print_dense(&hessian.row_slice(r));
                }
            }
            Ok(())
        }
        "flexes" | "self-stresses" => {
            let paper = load_paper(&cli)?;
            let system = ConstraintSystem::new(&paper).map_err(CliError::Analysis)?;
            let jacobian = assemble_jacobian(&system);
            let basis = if subcommand == "flexes" {
                first_order_flexes(&jacobian, cli.options.rank_tol).vectors
            } else {
                self_stresses(&jacobian, cli.options.rank_tol).vectors
            };
            if cli.format_json {
                let cols: Vec<Vec<f64>> = (0..basis.ncols())
                    .map(|c| basis.column(c).iter().copied().collect())
                    .collect();
                println!("{}", serde_json::to_string_pretty(&cols).unwrap());
            } else {
                println!("# dimension {}", basis.ncols());
                print_dense(&basis);
            }
            Ok(())
        }
        "resolve-load" => {
            let paper = load_paper(&cli)?;
            let load_path = cli
                .load_path
                .as_ref()
                .ok_or_else(|| CliError::Usage("resolve-load needs --load <file>".into()))?;
            let text = std::fs::read_to_string(load_path)
                .map_err(|e| CliError::Input(rigami::Error::Io(e)))?;
            let file: LoadFile =
                serde_json::from_str(&text).map_err(|e| CliError::Input(rigami::Error::Json(e)))?;
            let system = ConstraintSystem::new(&paper).map_err(CliError::Analysis)?;
            let jacobian = assemble_jacobian(&system);
            let flexes = first_order_flexes(&jacobian, cli.options.rank_tol);
            let load = DVector::from_vec(file.load);
            match resolve_load(&jacobian, &flexes, &load, cli.options.rank_tol)
                .map_err(CliError::Analysis)?
            {
                LoadResolution::Resolved { stress, residual } => {
                    let entries = stress_report(&system, &stress).map_err(CliError::Analysis)?;
                    if cli.format_json {
                        println!("{}", serde_json::to_string_pretty(&entries).unwrap());
                    } else {
                        println!("resolved (residual {residual:.3e})");
                        for e in entries {
                            match e.force {
                                Some(f) => println!(
                                    "unit {} ({}): torque {:?} force {f:?}",
                                    e.unit, e.kind, e.torque
                                ),
                                None => {
                                    println!("unit {} ({}): torque {:?}", e.unit, e.kind, e.torque)
                                }
                            }
                        }
                    }
                    Ok(())
                }
                LoadResolution::Unresolvable { witness_flex, work } => {
                    println!(
                        "unresolvable: load does work {work:.6e} on flex {:?}",
                        witness_flex.iter().copied().collect::<Vec<f64>>()
                    );
                    Err(CliError::Analysis(rigami::Error::Document(
                        "load is not resolvable".to_string(),
                    )))
                }
            }
        }
        "prestress" => {
            let paper = load_paper(&cli)?;
            let system = ConstraintSystem::new(&paper).map_err(CliError::Analysis)?;
            let jacobian = assemble_jacobian(&system);
            let hessian = assemble_hessian(&system);
            let flexes = first_order_flexes(&jacobian, cli.options.rank_tol);
            let stresses = self_stresses(&jacobian, cli.options.rank_tol);
            let b = StiffnessModel::identity_for(&system);
            let stability = cli.options.stability();
            if cli.search && cli.stress_path.is_some() {
                return Err(CliError::Usage(
                    "--stress and --search are mutually exclusive".into(),
                ));
            }
            let stress = if let Some(path) = &cli.stress_path {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(rigami::Error::Io(e)))?;
                let file: StressFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(rigami::Error::Json(e)))?;
                Some(DVector::from_vec(file.stress))
            } else {
                find_stabilizing_stress(&hessian, &flexes, &stresses, &stability)
                    .map_err(CliError::Analysis)?
                    .map(|(w, _)| w)
            };
            let report = match stress {
                Some(w) => {
                    let verdict =
                        is_prestress_stable(&jacobian, &hessian, &flexes, &w, &b, &stability)
                            .map_err(CliError::Analysis)?;
                    StabilityReport {
                        classification: if verdict.stable {
                            "prestress-stable".to_string()
                        } else {
                            "not-stable".to_string()
                        },
                        m: flexes.dimension(),
                        s: stresses.dimension(),
                        omega: Some(w.iter().copied().collect()),
                        restricted_eigenvalues: verdict.restricted_eigenvalues,
                        certified_t: verdict.certified_t,
                        sampled: false,
                    }
                }
                None => StabilityReport {
                    classification: "no-stabilizing-stress-found".to_string(),
                    m: flexes.dimension(),
                    s: stresses.dimension(),
                    omega: None,
                    restricted_eigenvalues: Vec::new(),
                    certified_t: None,
                    sampled: false,
                },
            };
            if cli.format_json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "{} (m = {}, s = {}); restricted eigenvalues {:?}{}",
                    report.classification,
                    report.m,
                    report.s,
                    report.restricted_eigenvalues,
                    report
                        .certified_t
                        .map(|t| format!("; certified t = {t:.3e}"))
                        .unwrap_or_default()
                );
            }
            Ok(())
        }
        "second-order" => {
            let paper = load_paper(&cli)?;
            let system = ConstraintSystem::new(&paper).map_err(CliError::Analysis)?;
            let jacobian = assemble_jacobian(&system);
            let hessian = assemble_hessian(&system);
            let flexes = first_order_flexes(&jacobian, cli.options.rank_tol);
            let stresses = self_stresses(&jacobian, cli.options.rank_tol);
            let stability = cli.options.stability();
            if cli.classify && cli.flex_path.is_some() {
                return Err(CliError::Usage(
                    "--flex and --classify are mutually exclusive".into(),
                ));
            }
            if let Some(path) = &cli.flex_path {
                let flex = rigami::report::flex_from_file(path, system.num_creases)
                    .map_err(CliError::Input)?;
                match extend_to_second_order(&jacobian, &hessian, &stresses, &flex, &stability)
                    .map_err(CliError::Analysis)?
                {
                    SecondOrderExtension::Extended { rho_second } => {
                        let residual =
                            second_order_residual(&jacobian, &hessian, &flex, &rho_second)
                                .map_err(CliError::Analysis)?;
                        println!(
                            "extendable (residual {residual:.3e}); acceleration {:?}",
                            rho_second.iter().copied().collect::<Vec<f64>>()
                        );
                    }
                    SecondOrderExtension::Blocked {
                        witness,
                        form_value,
                    } => {
                        println!(
                            "blocked: stress with quadratic form {form_value:.6e}: {:?}",
                            witness.iter().copied().collect::<Vec<f64>>()
                        );
                    }
                }
                return Ok(());
            }
            let classification =
                second_order_classify(&jacobian, &hessian, &flexes, &stresses, &stability)
                    .map_err(CliError::Analysis)?;
            match classification.verdict {
                SecondOrderVerdict::Rigid => println!(
                    "second-order rigid [{}]",
                    if classification.sampled {
                        "sampled"
                    } else {
                        "exact"
                    }
                ),
                SecondOrderVerdict::Foldable { flex, .. } => println!(
                    "second-order foldable; witness flex {:?}",
                    flex.iter().copied().collect::<Vec<f64>>()
                ),
            }
            Ok(())
        }
        "double-cone" => {
            let paper = load_paper(&cli)?;
            let fw = rigami::barjoint::double_cone(&paper).map_err(CliError::Analysis)?;
            let export = rigami::barjoint::FrameworkExport::from(&fw);
            println!("{}", serde_json::to_string_pretty(&export).unwrap());
            Ok(())
        }
        "fixtures" => {
            let dir = cli.dir.clone().unwrap_or_else(|| PathBuf::from("fixtures"));
            let written = rigami::fixtures::write_fixtures(&dir).map_err(CliError::Input)?;
            for path in written {
                println!("{}", path.display());
            }
            Ok(())
        }
        other => Err(CliError::Usage(format!("unknown subcommand `{other}`"))),
    }
}

fn print_dense(m: &nalgebra::DMatrix<f64>) {
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| format!("{:.12e}", m[(r, c)]))
            .collect();
        println!("{}", row.join(" "));
    }
}
