use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdm_core::catalog::{self, verify_a2_equivalences, verify_algebra, verify_entry, verify_finite_transform};
use pdm_core::dsl::InputFile;
use pdm_core::equivalence::constant_mass_test;
use pdm_core::expr::ProbeConfig;
use pdm_core::ops::check_symmetry;
use pdm_core::spectral::{solve_radial_numeric, RadialProblem};
use pdm_core::suite::run_suite;
use pdm_core::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "pdm", version, about = "Symmetry checks for position-dependent-mass Schrodinger equations")]
struct Cli {
    /// Seed of the numeric zero-test probes.
    #[arg(long, global = true, env = "PDM_SEED", default_value_t = ProbeConfig::default().seed)]
    seed: u64,
    /// Relative tolerance of the numeric zero test.
    #[arg(long, global = true, env = "PDM_TOL", default_value_t = ProbeConfig::default().tol)]
    tol: f64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true, env = "PDM_JSON")]
    json: Option<PathBuf>,
    /// Format of the report on stdout.
    #[arg(long, global = true, env = "PDM_FORMAT", value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether an operator is a symmetry of a Hamiltonian.
    CheckSymmetry { hamiltonian: PathBuf, operator: PathBuf },
    /// Decide whether a mass function is conformally flat.
    TestFlat { file: PathBuf },
    /// List or verify the classified systems.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Numeric spectrum of one angular channel of the superintegrable system.
    Spectrum {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 20.0)]
        rmax: f64,
        #[arg(long = "n-grid", default_value_t = 4000)]
        n_grid: usize,
        #[arg(long, default_value_t = 4)]
        count: usize,
        /// Constant added to the potential.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        shift: f64,
    },
    /// Run every verification and emit one manifest.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Verify {
        #[arg(long)]
        id: Option<String>,
    },
}

/// A report with its verdict and human summary.
struct Outcome {
    ok: bool,
    json: serde_json::Value,
    text: String,
}

fn outcome<T: Serialize>(ok: bool, report: &T, text: String) -> Outcome {
    Outcome {
        ok,
        json: serde_json::to_value(report).expect("reports serialize"),
        text,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn check_symmetry_cmd(h_path: &Path, q_path: &Path, cfg: &ProbeConfig) -> Result<Outcome, Error> {
    let hf = InputFile::parse(&read(h_path)?)?;
    let mut qf = InputFile::parse(&read(q_path)?)?;
    for (name, arity) in &hf.decl.functions {
        qf.decl.declare(name, *arity);
    }
    let h = hf.hamiltonian()?;
    let q = qf.operator(&BTreeMap::new())?;
    let r = check_symmetry(&q, &h, cfg);
    let text = format!(
        "symmetry: {}\ntier: {:?}\nalpha: {}\n{}",
        r.is_symmetry,
        r.tier,
        r.alpha,
        r.diagnostic.clone().unwrap_or_default()
    );
    Ok(outcome(r.is_symmetry, &r, text.trim_end().to_string()))
}

fn test_flat_cmd(path: &Path, cfg: &ProbeConfig) -> Result<Outcome, Error> {
    let f = InputFile::parse(&read(path)?)?.expr("mass")?;
    let v = constant_mass_test(&f, cfg)?;
    let mut text = format!("flat: {}\nlaplacian of log f: {}", v.is_flat, v.laplacian_log_f);
    if let Some(fam) = v.family {
        text += &format!("\nfamily: {}", serde_json::to_value(fam).expect("serializes").as_str().unwrap_or(""));
    }
    if let (Some(u), Some(w)) = (&v.map_re, &v.map_im) {
        text += &format!("\nmap: ({u}, {w})");
    }
    Ok(outcome(v.is_flat, &v, text))
}

fn catalog_verify(id: Option<&str>, cfg: &ProbeConfig) -> Result<Outcome, Error> {
    let ids: Vec<&str> = match id {
        Some(id) => vec![catalog::spec(id)?.id],
        None => catalog::ids(),
    };
    let mut entries = Vec::new();
    let mut algebras = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for id in &ids {
        let e = verify_entry(id, cfg)?;
        let a = verify_algebra(id, cfg)?;
        ok &= e.passed && a.passed;
        text += &format!("{:<12} generators {:<4} relations {}\n", id, mark(e.passed), mark(a.passed));
        for r in &a.relations {
            text += &format!("    {:<28} {}\n", r.relation, mark(r.holds));
        }
        entries.push(e);
        algebras.push(a);
    }
    let (ft, eq) = if id.is_none() {
        let ft = verify_finite_transform(cfg)?;
        let eq = verify_a2_equivalences(cfg)?;
        ok &= ft.passed && eq.passed;
        text += &format!("finite transform {}\nappendix equivalences {}\n", mark(ft.passed), mark(eq.passed));
        (Some(ft), Some(eq))
    } else {
        (None, None)
    };
    let report = serde_json::json!({
        "passed": ok,
        "entries": entries,
        "algebra": algebras,
        "finite_transform": ft,
        "equivalences": eq,
    });
    Ok(outcome(ok, &report, text.trim_end().to_string()))
}

fn spectrum_cmd(p: RadialProblem) -> Result<Outcome, Error> {
    let s = solve_radial_numeric(&p)?;
    let mut text = format!("k = {}, rmax = {}, N = {}\n", s.k, s.grid.rmax, s.grid.n);
    for e in &s.eigenvalues {
        let n = e.matched_n.map_or("-".to_string(), |n| n.to_string());
        text += &format!("  {:>16.10}  ± {:.2e}  n = {}\n", e.value, e.error_estimate, n);
    }
    if let Some(o) = s.convergence_order {
        text += &format!("order {o:.3}\n");
    }
    let ok = s.eigenvalues.iter().all(|e| e.matched_n.is_some());
    Ok(outcome(ok, &s, text.trim_end().to_string()))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cfg = ProbeConfig {
        seed: cli.seed,
        tol: cli.tol,
        ..ProbeConfig::default()
    };
    match &cli.command {
        Command::CheckSymmetry { hamiltonian, operator } => check_symmetry_cmd(hamiltonian, operator, &cfg),
        Command::TestFlat { file } => test_flat_cmd(file, &cfg),
        Command::Catalog { action: CatalogAction::List } => Ok(outcome(
            true,
            &catalog::catalog_json(),
            catalog::list_table().trim_end().to_string(),
        )),
        Command::Catalog {
            action: CatalogAction::Verify { id },
        } => catalog_verify(id.as_deref(), &cfg),
        Command::Spectrum {
            k,
            rmax,
            n_grid,
            count,
            shift,
        } => spectrum_cmd(RadialProblem {
            k: *k,
            r_max: *rmax,
            grid_points: *n_grid,
            count: *count,
            potential_shift: *shift,
            ..RadialProblem::default()
        }),
        Command::VerifyAll => {
            let m = run_suite(&cfg)?;
            let text = m
                .sections
                .iter()
                .map(|s| format!("{:<20} {}", s.name, mark(s.passed)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(outcome(m.passed, &m, text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Numeric(_) | Error::Inconsistent(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            };
        }
    };
    let json = serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n";
    if let Some(path) = &cli.json {
        if let Err(e) = fs::write(path, &json) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match cli.format {
        Format::Json => print!("{json}"),
        Format::Text => println!("{}", out.text),
    }
    ExitCode::from(if out.ok { 0 } else { 1 })
}
