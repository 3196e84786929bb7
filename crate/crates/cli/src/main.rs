//! `cuspres` — scattering resonances of cone-cusp and cone-funnel surfaces
//! of revolution, plus geodesic and Weyl-law diagnostics.

mod config;
mod output;
mod runner;
mod selfcheck;
mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cuspres_core::asymptotics::{phase_volume, weyl_count, weyl_model};
use cuspres_core::geodesics::MetricProfile;
use cuspres_core::resonance::{ProblemKind, RunOutcome};

use config::{effective_threads, parse_grid, resolve, OutputFormat, ResolvedRun, RunFlags};
use output::g17;

const EXIT_CONFIG: u8 = 1;
const EXIT_PARTIAL: u8 = 2;
const EXIT_SELFCHECK: u8 = 3;

#[derive(Parser)]
#[command(name = "cuspres", version, about = "Resonances of surfaces of revolution with a cone glued to a cusp or funnel", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonRunArgs {
    /// Cone slope (negative for the cusp geometry, positive for the funnel)
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Cusp rate (positive) or funnel rate (negative)
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Fourier mode (default 1)
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Index range k_min:k_max:step (default 10:1000:10)
    #[arg(long)]
    k: Option<String>,
    /// Relative residual tolerance (default 1e-10)
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Output format: csv or json (default csv)
    #[arg(long)]
    format: Option<String>,
    /// Write an SVG scatter of the computed resonances to this path
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Worker threads (0 = auto; default from CUSPRES_THREADS or 0)
    #[arg(long)]
    threads: Option<usize>,
    /// key=value config file; flags take precedence over file entries
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonRunArgs {
    fn flags(&self) -> RunFlags {
        RunFlags {
            a: self.a,
            b: self.b,
            m: self.m,
            k: self.k.clone(),
            rel_tol: self.rel_tol,
            format: self.format.clone(),
            plot: self.plot.clone(),
            threads: self.threads,
            config: self.config.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate cusp-cone resonances (a < 0 < b)
    Resonances(CommonRunArgs),
    /// Enumerate funnel-cone resonances (b < 0 < a)
    Funnel(CommonRunArgs),
    /// Integrate the geodesic flow over a launch grid and report escapes
    Geodesics {
        /// Cone slope, a < 0
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// Cusp rate, b > 0
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Launch grid ANGLESxRADII (default 36x17)
        #[arg(long, default_value = "36x17")]
        grid: String,
        /// Integration time horizon
        #[arg(long = "T", default_value_t = 200.0)]
        t_max: f64,
        /// Escape radius in |r|
        #[arg(long = "R", default_value_t = 20.0)]
        r_escape: f64,
        /// Integrator step
        #[arg(long, default_value_t = 5e-3)]
        dt: f64,
        /// Worker threads (0 = auto)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Compare the resonance counting function against λ log λ/(πb)
    Weyl(CommonRunArgs),
    /// Run the reduced invariant suite of every module
    Selfcheck {
        /// List the check names without running them
        #[arg(long)]
        list: bool,
        /// Perturb a Hankel series coefficient (testing hook)
        #[arg(long, hide = true)]
        inject_hankel_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Resonances(args) => cmd_resonances(&args, false),
        Command::Funnel(args) => cmd_resonances(&args, true),
        Command::Geodesics {
            a,
            b,
            grid,
            t_max,
            r_escape,
            dt,
            threads,
        } => cmd_geodesics(a, b, &grid, t_max, r_escape, dt, threads),
        Command::Weyl(args) => cmd_weyl(&args),
        Command::Selfcheck {
            list,
            inject_hankel_fault,
        } => cmd_selfcheck(list, inject_hankel_fault),
    }
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn run_enumeration(cfg: &ResolvedRun, kind: ProblemKind) -> Result<RunOutcome, ExitCode> {
    let prob = cfg.problem(kind).map_err(|e| config_error(&e))?;
    if prob.near_degenerate {
        eprintln!(
            "warning: 0 < |a+b| < 1e-9·|b| — the j = 1 asymptotics set in only at very large k"
        );
    }
    let solver = cfg.solver().map_err(|e| config_error(&e))?;
    let threads = effective_threads(cfg.threads);
    runner::enumerate_parallel(&prob, cfg.k_min, cfg.k_max, cfg.k_step, &solver, threads).map_err(
        |e| {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PARTIAL)
        },
    )
}

fn write_plot(cfg: &ResolvedRun, run: &RunOutcome, hline: Option<f64>) -> Result<(), ExitCode> {
    if let Some(path) = &cfg.plot {
        let points: Vec<(f64, f64)> = run
            .resonances
            .iter()
            .map(|r| (r.lambda.re, r.lambda.im))
            .collect();
        let doc = svg::Scatter {
            points: &points,
            x_label: "Re λ",
            y_label: "Im λ",
            hline,
        }
        .render();
        fs::write(path, doc).map_err(|e| config_error(&format!("cannot write plot: {e}")))?;
    }
    Ok(())
}

fn cmd_resonances(args: &CommonRunArgs, funnel: bool) -> ExitCode {
    let cfg = match resolve(&args.flags()) {
        Ok(c) => c,
        Err(e) => return config_error(&e),
    };
    let kind = if funnel {
        ProblemKind::FunnelCone
    } else {
        ProblemKind::CuspCone
    };
    let run = match run_enumeration(&cfg, kind) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let res = match cfg.format {
        OutputFormat::Csv => output::write_csv(&mut out, &run, funnel),
        OutputFormat::Json => output::write_json(
            &mut out,
            &cfg,
            &run,
            if funnel { "funnel" } else { "resonances" },
            funnel,
        ),
    };
    if let Err(e) = res.and_then(|()| out.flush()) {
        eprintln!("error: write failed: {e}");
        return ExitCode::from(EXIT_PARTIAL);
    }
    if funnel {
        let max_off = run
            .resonances
            .iter()
            .map(|r| (r.lambda - r.seed).norm())
            .fold(0.0f64, f64::max);
        eprintln!("max |lambda - seed| over run: {}", g17(max_off));
    }
    let prob = cfg.problem(kind).expect("validated above");
    let hline = if funnel {
        None
    } else {
        Some(-prob.b * prob.j as f64 / 2.0)
    };
    if let Err(code) = write_plot(&cfg, &run, hline) {
        return code;
    }
    if run.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        output::report_failures(&run.failures);
        ExitCode::from(EXIT_PARTIAL)
    }
}

fn cmd_geodesics(
    a: f64,
    b: f64,
    grid: &str,
    t_max: f64,
    r_escape: f64,
    dt: f64,
    threads: Option<usize>,
) -> ExitCode {
    let (n_angles, n_radii) = match parse_grid(grid) {
        Ok(g) => g,
        Err(e) => return config_error(&e),
    };
    let profile = match MetricProfile::new(a, b) {
        Ok(p) => p,
        Err(e) => return config_error(&e.to_string()),
    };
    let threads = effective_threads(threads.unwrap_or_else(|| {
        std::env::var("CUSPRES_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    }));
    let rep = match runner::scan_parallel(&profile, n_angles, n_radii, t_max, r_escape, dt, threads)
    {
        Ok(r) => r,
        Err(e) => return config_error(&e.to_string()),
    };
    println!(
        "geodesic scan: a = {a}, b = {b}, grid {n_angles}x{n_radii}, T = {t_max}, R = {r_escape}, dt = {dt}"
    );
    println!("escaped: {}/{}", rep.escaped, rep.total);
    println!("fraction_escaped: {}", rep.fraction_escaped);
    println!("worst_escape_time: {}", g17(rep.worst_escape_time));
    println!("max_speed_drift_rate: {}", g17(rep.max_speed_drift_rate));
    println!(
        "max_clairaut_drift_rate: {}",
        g17(rep.max_clairaut_drift_rate)
    );
    if rep.c11 {
        println!(
            "verdict: {}",
            if rep.fraction_escaped == 1.0 {
                "nontrapping on this grid"
            } else {
                "TRAPPED trajectories found"
            }
        );
    } else {
        println!("verdict: n/a (a+b≠0: flow through the interface is not well-defined)");
    }
    for (idx, e) in &rep.failures {
        eprintln!("trajectory {idx} failed: {e}");
    }
    if !rep.failures.is_empty() || (rep.c11 && rep.fraction_escaped != 1.0) {
        ExitCode::from(EXIT_PARTIAL)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_weyl(args: &CommonRunArgs) -> ExitCode {
    let cfg = match resolve(&args.flags()) {
        Ok(c) => c,
        Err(e) => return config_error(&e),
    };
    let run = match run_enumeration(&cfg, ProblemKind::CuspCone) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if run.resonances.is_empty() {
        eprintln!("error: empty run — nothing to count");
        return ExitCode::from(EXIT_CONFIG);
    }
    let n = run.resonances.len();
    println!("lambda,count_scaled,weyl_model,ratio");
    for d in 1..=10 {
        let idx = (n * d).div_euclid(10).max(1) - 1;
        let lambda = run.resonances[idx].lambda.re;
        let scaled = (weyl_count(&run.resonances, lambda) * cfg.k_step as usize) as f64;
        let model = weyl_model(lambda, cfg.b);
        println!(
            "{},{},{},{}",
            g17(lambda),
            scaled,
            g17(model),
            g17(scaled / model)
        );
    }
    let top = run.resonances[n - 1].lambda.re;
    match phase_volume(top, cfg.m, cfg.b) {
        Ok(pv) => {
            let wm = weyl_model(top, cfg.b);
            println!(
                "# phase_volume({}) = {} vs weyl_model = {} (|diff| = {}, bound 2λ = {})",
                g17(top),
                g17(pv),
                g17(wm),
                g17((pv - wm).abs()),
                g17(2.0 * top)
            );
        }
        Err(e) => {
            eprintln!("error: phase volume: {e}");
            return ExitCode::from(EXIT_PARTIAL);
        }
    }
    output::report_failures(&run.failures);
    if run.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PARTIAL)
    }
}

fn cmd_selfcheck(list: bool, inject_fault: bool) -> ExitCode {
    if list {
        for name in selfcheck::check_names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let fault = inject_fault.then_some(selfcheck::Fault::HankelCoefficient);
    let results = selfcheck::run(fault);
    let mut all_ok = true;
    for r in &results {
        if r.passed {
            println!("PASS {}", r.name);
        } else {
            all_ok = false;
            println!("FAIL {} ({})", r.name, r.detail);
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_SELFCHECK)
    }
}
