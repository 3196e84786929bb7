//! Run configuration: command-line flags layered over an optional
//! `key=value` config file over defaults, then validated into the core
//! problem types.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use cuspres_core::resonance::{ModeProblem, ProblemKind, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved parameters for a resonance run.
#[derive(Debug, Clone)]
pub struct ResolvedRun {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub k_step: u32,
    pub rel_tol: f64,
    pub format: OutputFormat,
    pub plot: Option<PathBuf>,
    pub threads: usize,
}

impl ResolvedRun {
    pub fn problem(&self, kind: ProblemKind) -> Result<ModeProblem, String> {
        ModeProblem::new(self.a, self.b, self.m, kind).map_err(|e| e.to_string())
    }

    pub fn solver(&self) -> Result<SolverConfig, String> {
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err("rel_tol must be positive".into());
        }
        Ok(SolverConfig {
            rel_tol: self.rel_tol,
            ..SolverConfig::default()
        })
    }
}

/// `k_min:k_max:step` range syntax.
pub fn parse_k_range(s: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || format!("invalid k range '{s}': expected k_min:k_max:step");
    match parts.as_slice() {
        [lo, hi, st] => {
            let lo: u32 = lo.parse().map_err(|_| bad())?;
            let hi: u32 = hi.parse().map_err(|_| bad())?;
            let st: u32 = st.parse().map_err(|_| bad())?;
            if st == 0 {
                return Err("k step must be >= 1".into());
            }
            if hi < lo {
                return Err("k range must have k_max >= k_min".into());
            }
            Ok((lo, hi, st))
        }
        _ => Err(bad()),
    }
}

/// `WxH` grid syntax (angles x radii).
pub fn parse_grid(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("invalid grid '{s}': expected ANGLESxRADII, e.g. 36x17");
    let (a, r) = s.split_once('x').ok_or_else(bad)?;
    let a: u32 = a.parse().map_err(|_| bad())?;
    let r: u32 = r.parse().map_err(|_| bad())?;
    if a == 0 || r == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok((a, r))
}

/// Parse a `key=value` config file; `#` starts a comment.
pub fn load_config_file(path: &Path) -> Result<HashMap<String, String>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), n + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn file_value<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, String> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| format!("config key '{key}': cannot parse '{v}'")),
    }
}

/// Flag values (all optional) to be merged with a config file and defaults.
#[derive(Debug, Clone, Default)]
pub struct RunFlags {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub m: Option<f64>,
    pub k: Option<String>,
    pub rel_tol: Option<f64>,
    pub format: Option<String>,
    pub plot: Option<PathBuf>,
    pub threads: Option<usize>,
    pub config: Option<PathBuf>,
}

/// Precedence: flags > config file > environment (threads only) > defaults.
pub fn resolve(flags: &RunFlags) -> Result<ResolvedRun, String> {
    let file = match &flags.config {
        Some(p) => load_config_file(p)?,
        None => HashMap::new(),
    };
    let a = flags
        .a
        .or(file_value(&file, "a")?)
        .ok_or("missing required parameter a")?;
    let b = flags
        .b
        .or(file_value(&file, "b")?)
        .ok_or("missing required parameter b")?;
    let m = flags.m.or(file_value(&file, "m")?).unwrap_or(1.0);
    let k_spec: String = match (&flags.k, file.get("k")) {
        (Some(s), _) => s.clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => "10:1000:10".to_string(),
    };
    let (k_min, k_max, k_step) = parse_k_range(&k_spec)?;
    let rel_tol = flags
        .rel_tol
        .or(file_value(&file, "rel_tol")?)
        .unwrap_or(1e-10);
    let format = match flags
        .format
        .clone()
        .or_else(|| file.get("format").cloned())
        .unwrap_or_else(|| "csv".to_string())
        .as_str()
    {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => return Err(format!("unknown format '{other}' (expected csv or json)")),
    };
    let plot = flags
        .plot
        .clone()
        .or_else(|| file.get("plot").map(PathBuf::from));
    let threads = match flags.threads.or(file_value(&file, "threads")?) {
        Some(t) => t,
        None => match std::env::var("CUSPRES_THREADS") {
            Ok(v) => v
                .parse()
                .map_err(|_| format!("CUSPRES_THREADS: cannot parse '{v}'"))?,
            Err(_) => 0,
        },
    };
    Ok(ResolvedRun {
        a,
        b,
        m,
        k_min,
        k_max,
        k_step,
        rel_tol,
        format,
        plot,
        threads,
    })
}

/// 0 means auto (one worker per available core).
pub fn effective_threads(requested: usize) -> usize {
    if requested == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        requested
    }
}
