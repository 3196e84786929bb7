//! CSV and JSON emission. Floats are serialized with 17 significant digits
//! (`{:.16e}`), which round-trips `f64` exactly and keeps golden files
//! bit-stable across runs and thread counts.

use std::io::{self, Write};

use cuspres_core::resonance::{IndexFailure, Resonance, RunOutcome};

use crate::config::ResolvedRun;

pub const CSV_HEADER: &str = "k,re_lambda,im_lambda,residual,iterations,seed_re,seed_im";

/// 17-significant-digit scientific form, round-trip exact for f64.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn csv_row(r: &Resonance, funnel_offset: Option<f64>) -> String {
    let mut row = format!(
        "{},{},{},{},{},{},{}",
        r.k,
        g17(r.lambda.re),
        g17(r.lambda.im),
        g17(r.residual),
        r.iterations,
        g17(r.seed.re),
        g17(r.seed.im)
    );
    if let Some(d) = funnel_offset {
        row.push(',');
        row.push_str(&g17(d));
    }
    row
}

pub fn write_csv<W: Write>(mut w: W, run: &RunOutcome, funnel: bool) -> io::Result<()> {
    if funnel {
        writeln!(w, "{CSV_HEADER},lambda_minus_seed_abs")?;
    } else {
        writeln!(w, "{CSV_HEADER}")?;
    }
    for r in &run.resonances {
        let off = funnel.then(|| (r.lambda - r.seed).norm());
        writeln!(w, "{}", csv_row(r, off))?;
    }
    Ok(())
}

fn json_row(r: &Resonance, funnel_offset: Option<f64>) -> String {
    let mut row = format!(
        "{{\"k\":{},\"re_lambda\":{},\"im_lambda\":{},\"residual\":{},\"iterations\":{},\"seed_re\":{},\"seed_im\":{}",
        r.k,
        g17(r.lambda.re),
        g17(r.lambda.im),
        g17(r.residual),
        r.iterations,
        g17(r.seed.re),
        g17(r.seed.im)
    );
    if let Some(d) = funnel_offset {
        row.push_str(&format!(",\"lambda_minus_seed_abs\":{}", g17(d)));
    }
    row.push('}');
    row
}

/// One JSON document: `meta` echoes the resolved configuration, `rows`
/// carries the table.
pub fn write_json<W: Write>(
    mut w: W,
    cfg: &ResolvedRun,
    run: &RunOutcome,
    command: &str,
    funnel: bool,
) -> io::Result<()> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"meta\": {{")?;
    writeln!(w, "    \"version\": \"{}\",", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "    \"command\": \"{}\",", escape_json(command))?;
    writeln!(w, "    \"a\": {},", g17(cfg.a))?;
    writeln!(w, "    \"b\": {},", g17(cfg.b))?;
    writeln!(w, "    \"m\": {},", g17(cfg.m))?;
    writeln!(
        w,
        "    \"kind\": \"{}\",",
        if funnel { "funnel_cone" } else { "cusp_cone" }
    )?;
    writeln!(w, "    \"k_min\": {},", cfg.k_min)?;
    writeln!(w, "    \"k_max\": {},", cfg.k_max)?;
    writeln!(w, "    \"k_step\": {},", cfg.k_step)?;
    writeln!(w, "    \"rel_tol\": {},", g17(cfg.rel_tol))?;
    writeln!(w, "    \"threads\": {},", cfg.threads)?;
    writeln!(w, "    \"format\": \"json\",")?;
    if funnel {
        let max_off = run
            .resonances
            .iter()
            .map(|r| (r.lambda - r.seed).norm())
            .fold(0.0f64, f64::max);
        writeln!(w, "    \"max_lambda_minus_seed_abs\": {},", g17(max_off))?;
    }
    let failed: Vec<String> = run.failures.iter().map(|f| f.k.to_string()).collect();
    writeln!(w, "    \"failed_indices\": [{}]", failed.join(","))?;
    writeln!(w, "  }},")?;
    writeln!(w, "  \"rows\": [")?;
    for (i, r) in run.resonances.iter().enumerate() {
        let off = funnel.then(|| (r.lambda - r.seed).norm());
        let comma = if i + 1 < run.resonances.len() {
            ","
        } else {
            ""
        };
        writeln!(w, "    {}{}", json_row(r, off), comma)?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")?;
    Ok(())
}

pub fn report_failures(failures: &[IndexFailure]) {
    for f in failures {
        eprintln!("index {} failed: {}", f.k, f.error);
    }
}
