//! Worker-pool fan-out for enumeration and geodesic scans. Indices are
//! interleaved round-robin across workers and results re-assembled in index
//! order, so output is identical to a sequential run for any thread count.

use cuspres_core::geodesics::{
    trace_escape, GeodesicState, MetricProfile, ScanReport, TrajectoryReport,
};
use cuspres_core::resonance::{assemble_run, solve_index, ModeProblem, RunOutcome, SolverConfig};
use cuspres_core::{Error, Result};

/// Enumerate `k = k_min, k_min+step, … ≤ k_max` across `threads` workers.
pub fn enumerate_parallel(
    prob: &ModeProblem,
    k_min: u32,
    k_max: u32,
    step: u32,
    cfg: &SolverConfig,
    threads: usize,
) -> Result<RunOutcome> {
    if k_min < 10 {
        return Err(Error::InvalidParameter("enumerate requires k_min >= 10"));
    }
    if step == 0 {
        return Err(Error::InvalidParameter("enumerate requires step >= 1"));
    }
    if k_max < k_min {
        return Err(Error::InvalidParameter("enumerate requires k_max >= k_min"));
    }
    let indices: Vec<u32> = (k_min..=k_max).step_by(step as usize).collect();
    let results = fan_out(&indices, threads, |&k| solve_index(prob, k, cfg));
    assemble_run(indices.into_iter().zip(results).collect())
}

/// Run the nontrapping scan grid across `threads` workers with
/// deterministic aggregation (same report as `geodesics::nontrap_scan`).
#[allow(clippy::too_many_arguments)]
pub fn scan_parallel(
    p: &MetricProfile,
    n_angles: u32,
    n_radii: u32,
    t_max: f64,
    r_escape: f64,
    dt: f64,
    threads: usize,
) -> Result<ScanReport> {
    if n_angles == 0 || n_radii == 0 {
        return Err(Error::InvalidParameter("scan grid must be nonempty"));
    }
    if !(t_max > 0.0 && r_escape > 0.0) {
        return Err(Error::InvalidParameter(
            "scan needs positive T and escape radius",
        ));
    }
    let mut starts = Vec::new();
    for ir in 0..n_radii {
        let r0 = if n_radii == 1 {
            -1.0
        } else {
            -5.0 + 8.0 * ir as f64 / (n_radii - 1) as f64
        };
        for ia in 0..n_angles {
            let psi = std::f64::consts::PI * ia as f64 / n_angles as f64;
            starts.push(GeodesicState::launch(r0, 0.0, psi, p));
        }
    }
    let results: Vec<Result<TrajectoryReport>> = fan_out(&starts, threads, |s| {
        trace_escape(p, *s, dt, t_max, r_escape)
    });
    let total = starts.len();
    let mut escaped = 0usize;
    let mut worst = 0.0f64;
    let mut max_speed = 0.0f64;
    let mut max_clairaut = 0.0f64;
    let mut failures = Vec::new();
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok(rep) => {
                if rep.escaped {
                    escaped += 1;
                    worst = worst.max(rep.escape_time);
                }
                max_speed = max_speed.max(rep.speed_drift_rate);
                max_clairaut = max_clairaut.max(rep.clairaut_drift_rate);
            }
            Err(e) => failures.push((idx, e)),
        }
    }
    Ok(ScanReport {
        total,
        escaped,
        fraction_escaped: escaped as f64 / total as f64,
        worst_escape_time: worst,
        max_speed_drift_rate: max_speed,
        max_clairaut_drift_rate: max_clairaut,
        c11: p.is_c11(),
        failures,
    })
}

/// Apply `f` to every item, fanned out round-robin over `threads` workers;
/// the output vector is in input order regardless of scheduling.
fn fan_out<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let mut pairs: Vec<(usize, R)> = Vec::with_capacity(items.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let f = &f;
                scope.spawn(move || {
                    (t..items.len())
                        .step_by(threads)
                        .map(|i| (i, f(&items[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            pairs.extend(h.join().expect("worker panicked"));
        }
    });
    pairs.sort_by_key(|(i, _)| *i);
    pairs.into_iter().map(|(_, r)| r).collect()
}
