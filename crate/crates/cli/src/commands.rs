use std::fmt::Write as _;
use std::path::Path;

use panel_msfe::inference::{run_inference, InferenceOptions, InferenceResult};
use panel_msfe::panel::within_demean;
use panel_msfe::simulation::{emit_table, run_study, StudySummary, TableFormat};
use panel_msfe::tables::table;

use crate::config::{AnalyzeConfig, StudyConfig, TableConfig};
use crate::error::{CliError, Result};
use crate::panel_csv::load_panel;

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn cmd_simulate(cfg: &StudyConfig, output: Option<&Path>) -> Result<StudySummary> {
    let summary = run_study(&cfg.grid())?;
    if let Some(path) = output {
        write_file(path, &emit_table(&summary, TableFormat::Csv))?;
    }
    Ok(summary)
}

pub fn cmd_table(cfg: &TableConfig, output: Option<&Path>) -> Result<StudySummary> {
    let summary = run_study(&table(cfg.id).grid(cfg.reps, cfg.seed))?;
    if let Some(path) = output {
        write_file(path, &emit_table(&summary, TableFormat::Csv))?;
    }
    Ok(summary)
}

pub const ANALYZE_CSV_HEADER: &str =
    "n,t,e_hat,e1_hat,tau_sq,point,lo,hi,alpha,decision,estimator,bandwidth,b_prime,degenerate_variance";

pub fn analyze_csv(r: &InferenceResult) -> String {
    let b = r.bandwidth.map(|b| b.to_string()).unwrap_or_default();
    format!(
        "{ANALYZE_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{},\"{}\",{},{},{}\n",
        r.n,
        r.t_len,
        r.e_hat,
        r.e1_hat,
        r.tau_sq,
        r.point,
        r.lo,
        r.hi,
        r.alpha,
        r.decision,
        r.variant_used,
        b,
        r.b_prime,
        r.degenerate_variance
    )
}

pub fn analyze_report(r: &InferenceResult) -> String {
    let mut s = String::new();
    let level = 100.0 * (1.0 - r.alpha);
    let _ = writeln!(s, "panel: N = {}, T = {}", r.n, r.t_len);
    let _ = writeln!(s, "estimate of E_pool - E_ind: {:.6e}", r.point);
    let _ = writeln!(
        s,
        "{level}% confidence interval: [{:.6e}, {:.6e}]",
        r.lo, r.hi
    );
    let _ = writeln!(s, "decision: {}", r.decision);
    let b = r
        .bandwidth
        .map(|b| b.to_string())
        .unwrap_or_else(|| "n/a".into());
    let _ = writeln!(
        s,
        "estimator: {} (b = {b}, b' = {})",
        r.variant_used, r.b_prime
    );
    let _ = write!(
        s,
        "E_hat = {:.6e}, E1_hat = {:.6e}, tau^2 = {:.6e}",
        r.e_hat, r.e1_hat, r.tau_sq
    );
    if r.degenerate_variance {
        let _ = write!(s, " (floored; raw value {:.6e})", r.tau_sq_raw);
    }
    s.push('\n');
    s
}

pub fn cmd_analyze(cfg: &AnalyzeConfig, output: Option<&Path>) -> Result<InferenceResult> {
    let raw = load_panel(&cfg.panel, &cfg.predict)?;
    let panel = if cfg.fixed_effects {
        within_demean(&raw)?
    } else {
        raw
    };
    let mut opts = InferenceOptions::new(cfg.sigma.spec(cfg.bandwidth, cfg.fixed_effects));
    opts.alpha = cfg.alpha;
    opts.ci_mode = cfg.ci_mode;
    let result = run_inference(&panel, &opts)?;
    if let Some(path) = output {
        write_file(path, &analyze_csv(&result))?;
    }
    Ok(result)
}
