//! Output formatting: human summaries, JSON reports, CSV rows.

use fscode_core::sim::{DecodeMode, SimConfig, TrialStats};
use serde_json::{json, Value};

/// Decimal with 6 significant digits (the CSV float format).
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).clamp(0, 17) as usize;
    format!("{:.*}", decimals, x)
}

fn mode_str(mode: DecodeMode) -> &'static str {
    match mode {
        DecodeMode::Unique => "unique",
        DecodeMode::List => "list",
    }
}

pub fn stats_human(cfg: &SimConfig, s: &TrialStats) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "config: q={} m={} h={} n_t={} k={} s={} delta={} gamma={} mode={} mu={} seed={}\n",
        cfg.q, cfg.m, cfg.h, cfg.n_t, cfg.k, cfg.s, cfg.delta, cfg.gamma,
        mode_str(cfg.mode), cfg.mu, cfg.master_seed
    ));
    out.push_str(&format!(
        "trials: {}  successes: {}  miscorrections: {}\n",
        s.trials, s.unique_successes, s.miscorrections
    ));
    out.push_str(&format!(
        "failures: rank-deficient={} inconsistent={} list-cap={} degree-bound={}\n",
        s.failures_rank_deficient,
        s.failures_inconsistent,
        s.failures_list_cap,
        s.failures_degree_bound
    ));
    out.push_str(&format!(
        "failure fraction: {:.6e}  mean d_I: {:.4}\n",
        s.failure_fraction(),
        s.mean_d_i()
    ));
    if let Some(mean) = s.mean_list_size() {
        out.push_str(&format!("mean list size: {mean:.6}\n"));
    }
    out.push_str(&format!("elapsed: {:.2}s\n", s.elapsed_secs));
    out
}

pub fn stats_json(cfg: &SimConfig, s: &TrialStats) -> Value {
    json!({
        "config": cfg,
        "stats": s,
        "failure_fraction": s.failure_fraction(),
        "mean_d_i": s.mean_d_i(),
        "mean_list_size": s.mean_list_size(),
    })
}

pub fn stats_csv_header() -> String {
    "q,m,h,n_t,k,s,delta,gamma,mode,mu,trials,master_seed,successes,miscorrections,\
     rank_deficient,inconsistent,list_cap,degree_bound,failure_fraction,mean_d_i,elapsed_secs"
        .to_string()
}

pub fn stats_csv_row(cfg: &SimConfig, s: &TrialStats) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        cfg.q,
        cfg.m,
        cfg.h,
        cfg.n_t,
        cfg.k,
        cfg.s,
        cfg.delta,
        cfg.gamma,
        mode_str(cfg.mode),
        cfg.mu,
        cfg.trials,
        cfg.master_seed,
        s.unique_successes,
        s.miscorrections,
        s.failures_rank_deficient,
        s.failures_inconsistent,
        s.failures_list_cap,
        s.failures_degree_bound,
        sig6(s.failure_fraction()),
        sig6(s.mean_d_i()),
        sig6(s.elapsed_secs),
    )
}
