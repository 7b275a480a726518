use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use qloop_core::adhm::{check_fixed, codim_im_tau, moment_map, stability_report, tau_sigma_at_point, AdhmError, AdhmFile};
use qloop_core::cartan::{cartan_matrix, dim_quiver_variety, QuiverGraph};
use qloop_core::exactalg::hall_littlewood_with;
use qloop_core::fixedpoints::{highest_drinfeld_sl2, qchar_standard_sl2_with, sl2_graph, FixedPointError};
use qloop_core::lweight::{drinfeld_of, qchar_multiply_with, restrict_to_character, QCharacter, SpectralParam, YMonomial};
use qloop_core::par::Exec;
use qloop_core::rank1rep::{run_grid, GridConfig, Rank1Model};

use crate::error::CliError;

pub struct Output {
    path: Option<PathBuf>,
}

impl Output {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path }
    }

    fn to_file(&self) -> bool {
        self.path.is_some()
    }

    fn emit(&self, v: &Value) -> Result<(), CliError> {
        let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
        s.push('\n');
        match &self.path {
            Some(p) => fs::write(p, s).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
        }
    }

    /// Human readable text goes to stdout when JSON goes to a file, else to stderr.
    fn note(&self, text: &str) {
        if self.to_file() {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    }
}

pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

pub fn setup_jobs(jobs: Option<u32>) -> Result<Exec, CliError> {
    match jobs {
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build_global()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            Ok(Exec::Parallel)
        }
        _ => Ok(Exec::Parallel),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn load_graph(path: &Path) -> Result<QuiverGraph, CliError> {
    QuiverGraph::from_json(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn relations(
    out: &Output,
    exec: Exec,
    n: usize,
    modes: (i64, i64),
    order: usize,
    degree: u32,
    negative_control: bool,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Validation("--N must be at least 1".into()));
    }
    let model = if negative_control { Rank1Model::corrupted() } else { Rank1Model::standard() };
    let cfg = GridConfig { max_n: n, modes, order, basis_degree: degree, model, exec };
    let report = run_grid(&cfg).map_err(CliError::validation)?;
    out.emit(&to_value(&report))?;
    for (name, t) in &report.tallies {
        out.note(&format!("{name:<12} passed {:>6}  failed {:>6}\n", t.passed, t.failed));
    }
    match &report.first_failure {
        Some(c) => Err(CliError::Invariant(format!("first failing identity: {c}"))),
        None => Ok(()),
    }
}

fn fixed_point_error(e: FixedPointError) -> CliError {
    match e {
        FixedPointError::ConventionMismatch { .. } => CliError::Invariant(e.to_string()),
        other => CliError::validation(other),
    }
}

pub fn qchar_standard(out: &Output, exec: Exec, kind: &str, params: &[String]) -> Result<(), CliError> {
    if kind != "A1" {
        return Err(CliError::Validation(format!("unsupported type {kind:?}; only A1 is available")));
    }
    let params: Vec<SpectralParam> = params
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(CliError::validation))
        .collect::<Result<_, _>>()?;
    let c = qchar_standard_sl2_with(exec, &params).map_err(fixed_point_error)?;
    let n = params.len() as i64;
    let g = sl2_graph();
    let weights = restrict_to_character(&c, &g, &[n]).map_err(|e| CliError::Invariant(e.to_string()))?;
    let dominant = c.dominant_monomials();
    if dominant.len() != 1 {
        return Err(CliError::Invariant(format!("{} l-dominant monomials", dominant.len())));
    }
    let top = drinfeld_of(dominant[0]).map_err(|e| CliError::Invariant(e.to_string()))?;
    if top != highest_drinfeld_sl2(&params) {
        return Err(CliError::Invariant(format!("highest Drinfel'd polynomial {top} is unexpected")));
    }
    out.emit(&to_value(&c))?;
    let mut text = format!("dimension {}\nweight  multiplicity\n", c.dim());
    for (w, m) in weights.iter().rev() {
        text.push_str(&format!("{:>6}  {m}\n", w.fund[0] - 2 * w.root[0]));
    }
    text.push_str(&format!("highest Drinfel'd polynomial {top}\n"));
    out.note(&text);
    Ok(())
}

pub fn qchar_mult(out: &Output, exec: Exec, files: &[PathBuf]) -> Result<(), CliError> {
    let mut acc = QCharacter::trivial();
    for f in files {
        let c: QCharacter = parse_json(f)?;
        acc = qchar_multiply_with(exec, &acc, &c);
    }
    out.emit(&to_value(&acc))
}

pub fn qchar_dominant(out: &Output, file: &Path) -> Result<(), CliError> {
    let c: QCharacter = parse_json(file)?;
    let dom: Vec<Value> = c.dominant_monomials().into_iter().map(to_value).collect();
    out.emit(&Value::Array(dom))
}

pub fn qchar_drinfeld(out: &Output, file: &Path) -> Result<(), CliError> {
    let m: YMonomial = parse_json(file)?;
    let p = drinfeld_of(&m).map_err(CliError::validation)?;
    out.emit(&to_value(&p))
}

pub fn hl(out: &Output, exec: Exec, partition: &[u32], vars: usize) -> Result<(), CliError> {
    let p = hall_littlewood_with(exec, partition, vars).map_err(CliError::validation)?;
    out.emit(&to_value(&p))
}

pub fn dim(out: &Output, graph: &Path, v: &[i64], w: &[i64]) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let n = g.n_vertices();
    if v.len() != n || w.len() != n {
        return Err(CliError::Validation(format!("--v and --w need {n} entries")));
    }
    if v.iter().chain(w).any(|&x| x < 0) {
        return Err(CliError::Validation("dimensions must be nonnegative".into()));
    }
    let d = dim_quiver_variety(&cartan_matrix(&g), v, w).map_err(CliError::validation)?;
    out.emit(&json!(d))
}

fn adhm_error(e: AdhmError) -> CliError {
    match e {
        AdhmError::MomentMap(_) | AdhmError::SigmaNotInjective(_) => CliError::Invariant(e.to_string()),
        other => CliError::validation(other),
    }
}

pub fn adhm_check(out: &Output, file: &Path) -> Result<(), CliError> {
    let f = AdhmFile::from_json(&read(file)?).map_err(adhm_error)?;
    let d = &f.data;
    let names = d.graph().vertices();
    let mu = moment_map(d).map_err(adhm_error)?;
    let mu_zero = mu.iter().all(|m| m.is_zero());
    let stability = stability_report(d).map_err(adhm_error)?;
    let mut residual = serde_json::Map::new();
    let mut codim = serde_json::Map::new();
    for (k, name) in names.iter().enumerate() {
        residual.insert(name.clone(), to_value(&mu[k]));
        let c = if mu_zero {
            tau_sigma_at_point(d, k).map_err(adhm_error)?.codim_im_tau
        } else {
            codim_im_tau(d, k).map_err(adhm_error)?
        };
        codim.insert(name.clone(), json!(c));
    }
    let fixed = match &f.grading {
        Some(g) => json!(check_fixed(d, g).map_err(adhm_error)?),
        None => Value::Null,
    };
    let report = json!({
        "mu_residual": residual,
        "mu_zero": mu_zero,
        "stability": to_value(&stability),
        "codim_im_tau": codim,
        "fixed": fixed,
    });
    out.emit(&report)?;
    out.note(&format!(
        "moment map {}; {}\n",
        if mu_zero { "vanishes" } else { "does not vanish" },
        if stability.stable { "stable" } else { "unstable" }
    ));
    Ok(())
}

pub fn graph_validate(out: &Output, file: &Path) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let cd = cartan_matrix(&g);
    out.emit(&json!({ "graph": to_value(&g), "cartan": cd.c }))
}
