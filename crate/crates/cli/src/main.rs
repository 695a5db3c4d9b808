//! `fscode`: encode/decode round trips, Monte Carlo simulation, radius
//! tables, and bound reports for folded subspace codes.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use fscode_core::bounds::{avg_list_bound, ball_volume, failure_bound};
use fscode_core::channel::{transmit, Ambient, ChannelParams, ErrorFirstCoord};
use fscode_core::code::{encode, radius_table, FSCodeParams};
use fscode_core::decoder::{
    build_tuples, decode_list, decode_unique, degree_bound, interpolate_basis,
    verify_root_identity, DecodeResult, DEFAULT_LIST_CAP,
};
use fscode_core::io as fio;
use fscode_core::sim::{run_trials, SimConfig};

use report::{sig6, stats_csv_header, stats_csv_row, stats_human, stats_json};

/// Exit code for malformed input files (EX_USAGE).
const EXIT_USAGE: u8 = 64;
/// Exit code when a round trip does not recover the message.
const EXIT_DECODE_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(name = "fscode", version, about = "Folded subspace codes: simulate, decode, bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Unique,
    List,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded Monte Carlo trials from a JSON config (object or array).
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override the master seed of every config.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the worker count (0 = default pool).
        #[arg(long)]
        workers: Option<usize>,
        /// Write full stats as JSON (array when sweeping).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one CSV row per config.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Emit the normalized radius/rate trade-off table as CSV.
    Radius {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        /// Rate grid start:end:step.
        #[arg(long, default_value = "0:1:0.01")]
        grid: String,
        /// Code dimension entering the unique-radius term (default: h).
        #[arg(long)]
        nt: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print ball volume, average list size bound, and failure bounds.
    Bounds {
        /// Code parameter JSON {"q","m","h","n_t","k","s"}.
        #[arg(long)]
        config: PathBuf,
        /// Received dimension n_r.
        #[arg(long)]
        nr: usize,
        /// Radius tau = gamma + s*delta.
        #[arg(long)]
        tau: usize,
        /// Comma separated surplus thresholds.
        #[arg(long, default_value = "1,2,3")]
        mu: String,
    },
    /// Encode a message, pass it through a seeded channel, decode, report.
    Roundtrip {
        #[arg(long)]
        config: PathBuf,
        /// Message polynomial JSON (array of canonical integers).
        #[arg(long)]
        message: PathBuf,
        #[arg(long, default_value_t = 0)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        gamma: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Unique)]
        mode: ModeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { config, seed, workers, out, csv } => {
            cmd_simulate(&config, seed, workers, out.as_deref(), csv.as_deref())
        }
        Command::Radius { h, s, mu, grid, nt, out } => cmd_radius(h, s, mu, &grid, nt, out.as_deref()),
        Command::Bounds { config, nr, tau, mu } => cmd_bounds(&config, nr, tau, &mu),
        Command::Roundtrip { config, message, delta, gamma, seed, mu, mode } => {
            cmd_roundtrip(&config, &message, delta, gamma, seed, mu, mode)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_file(path: &std::path::Path) -> Result<Vec<u8>, u8> {
    fs::read(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

/// Runs a fallible parse, mapping failures to the usage exit code.
macro_rules! parse_or_exit {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(EXIT_USAGE);
            }
        }
    };
}

fn cmd_simulate(
    config: &std::path::Path,
    seed: Option<u64>,
    workers: Option<usize>,
    out: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> anyhow::Result<u8> {
    let bytes = match read_file(config) {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let mut configs: Vec<SimConfig> = parse_or_exit!(fio::parse_sim_configs(&bytes));
    for cfg in &mut configs {
        if let Some(s) = seed {
            cfg.master_seed = s;
        }
        if let Some(w) = workers {
            cfg.workers = w;
        }
    }

    let mut json_reports = Vec::new();
    let mut csv_lines = vec![stats_csv_header()];
    for cfg in &configs {
        let stats = run_trials(cfg)?;
        print!("{}", stats_human(cfg, &stats));
        json_reports.push(stats_json(cfg, &stats));
        csv_lines.push(stats_csv_row(cfg, &stats));
    }

    if let Some(path) = out {
        let value = if json_reports.len() == 1 {
            json_reports.into_iter().next().unwrap()
        } else {
            serde_json::Value::Array(json_reports)
        };
        fs::write(path, serde_json::to_string_pretty(&value)?)?;
    }
    if let Some(path) = csv {
        fs::write(path, csv_lines.join("\n") + "\n")?;
    }
    Ok(0)
}

fn parse_grid(spec: &str) -> Option<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return None;
    }
    let start: f64 = parts[0].parse().ok()?;
    let end: f64 = parts[1].parse().ok()?;
    let step: f64 = parts[2].parse().ok()?;
    if step <= 0.0 || end < start {
        return None;
    }
    let mut grid = Vec::new();
    let n = ((end - start) / step).round() as usize;
    for i in 0..=n {
        let r = start + i as f64 * step;
        if r <= end + 1e-12 {
            grid.push(r);
        }
    }
    Some(grid)
}

fn cmd_radius(
    h: usize,
    s: usize,
    mu: usize,
    grid_spec: &str,
    nt: Option<usize>,
    out: Option<&std::path::Path>,
) -> anyhow::Result<u8> {
    if h == 0 || s == 0 || s > h || mu == 0 {
        eprintln!("error: need 1 <= s <= h and mu >= 1");
        return Ok(EXIT_USAGE);
    }
    let Some(grid) = parse_grid(grid_spec) else {
        eprintln!("error: grid must be start:end:step with positive step");
        return Ok(EXIT_USAGE);
    };
    let rows = radius_table(h, s, mu, nt, &grid);
    let mut lines = vec!["R,tau_f,tau_u,tau_kk".to_string()];
    for r in &rows {
        lines.push(format!(
            "{},{},{},{}",
            sig6(r.rate),
            sig6(r.tau_f),
            sig6(r.tau_u),
            sig6(r.tau_kk)
        ));
    }
    let text = lines.join("\n") + "\n";
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_bounds(config: &std::path::Path, nr: usize, tau: usize, mu_list: &str) -> anyhow::Result<u8> {
    let bytes = match read_file(config) {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let params: FSCodeParams = parse_or_exit!(fio::parse_params_json(&bytes));
    let mus: Vec<usize> = parse_or_exit!(mu_list
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad mu list: {e}")))
        .collect::<Result<Vec<_>, _>>());

    let (rn, rd) = params.rate_exact();
    println!(
        "code: q={} m={} h={} n_t={} k={} s={}  N={}  R={}/{} = {}",
        params.q(),
        params.m(),
        params.h(),
        params.n_t(),
        params.k(),
        params.s(),
        params.ambient_dim(),
        rn,
        rd,
        sig6(params.rate()),
    );
    println!("min subspace distance: {}", params.min_distance());
    println!("list radius (gamma + s*delta <=): {}", params.list_radius());

    let vol = ball_volume(nr as u64, params.n_t() as u64, tau as u64, params.ambient_dim() as u64, params.q());
    println!("ball volume N_q(n_r={nr}, n_t={}, tau={tau}) = {vol}", params.n_t());

    match avg_list_bound(&params, nr, tau) {
        Ok(b) => {
            println!(
                "average list size bound: 1 + {} * q^{} = 1 + {:.6e}  (exact excess {})",
                8 * (tau + 2),
                b.exponent,
                b.excess,
                b.excess_exact
            );
            println!("exact noncausal average L' = {} = {:.6e}", b.lprime_exact, b.lprime);
        }
        Err(e) => println!("average list size bound: not applicable ({e})"),
    }

    for mu in mus {
        println!("unique radius (mu={mu}): {}", params.unique_radius(mu));
        let fb = failure_bound(params.k(), params.q(), params.m(), mu);
        println!("failure bound (mu={mu}): {} = {:.6e}", fb.exact, fb.float);
    }
    Ok(0)
}

fn cmd_roundtrip(
    config: &std::path::Path,
    message: &std::path::Path,
    delta: usize,
    gamma: usize,
    seed: u64,
    mu: usize,
    mode: ModeArg,
) -> anyhow::Result<u8> {
    let cfg_bytes = match read_file(config) {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let params: FSCodeParams = parse_or_exit!(fio::parse_params_json(&cfg_bytes));
    let msg_bytes = match read_file(message) {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let msg = parse_or_exit!(fio::parse_message_json(&params, &msg_bytes));
    if mu == 0 {
        eprintln!("error: mu must be >= 1");
        return Ok(EXIT_USAGE);
    }
    if delta > params.n_t() {
        eprintln!("error: delta exceeds n_t");
        return Ok(EXIT_USAGE);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let cw = encode(&params, &msg);
    println!("codeword: {}", fio::codeword_to_json(&cw));

    let ambient = Ambient::for_code(&params, ErrorFirstCoord::LocatorSpan);
    let ch = ChannelParams { deletions: delta, insertions: gamma };
    let rw = match transmit(cw.rows(), &ambient, &ch, &mut rng) {
        Ok(rw) => rw,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_USAGE);
        }
    };
    println!("received: {}", fio::received_word_to_json(&rw));

    let field = params.field();
    let d = degree_bound(rw.n_r(), params.h(), params.s(), params.k(), mu);
    println!("degree bound D = {d}");
    if d >= params.k() {
        let tuples = build_tuples(field, &rw, params.h(), params.s());
        let basis = interpolate_basis(field, &tuples, d, params.k()).expect("D >= k");
        println!("interpolation kernel dimension d_I = {}", basis.d_i());
        let all_ok =
            basis.polys().iter().all(|q| verify_root_identity(field, q, msg.poly()));
        println!(
            "root identity Q(x, f(x), ..., f(alpha^(s-1) x)) = 0 for transmitted f: {}",
            if all_ok { "holds for all basis polynomials" } else { "VIOLATED" }
        );
    } else {
        println!("interpolation kernel dimension d_I = 0 (degree bound below k)");
    }

    let (result, trace) = match mode {
        ModeArg::Unique => decode_unique(&params, &rw, mu),
        ModeArg::List => decode_list(&params, &rw, DEFAULT_LIST_CAP),
    };
    let code = match &result {
        DecodeResult::Unique(m) => {
            println!("decode result: unique {}", fio::message_to_json(m));
            if *m == msg {
                println!("round trip: recovered the transmitted message");
                0
            } else {
                println!("round trip: MISCORRECTION");
                EXIT_DECODE_FAILURE
            }
        }
        DecodeResult::List(list) => {
            println!("decode result: list of {} candidate(s)", list.len());
            for m in list {
                println!("  candidate: {}", fio::message_to_json(m));
            }
            if list.contains(&msg) {
                println!("round trip: list contains the transmitted message");
                0
            } else {
                println!("round trip: transmitted message missing from list");
                EXIT_DECODE_FAILURE
            }
        }
        DecodeResult::Failure(reason) => {
            println!("decode result: failure ({})", reason.as_str());
            EXIT_DECODE_FAILURE
        }
    };
    println!("polys used in root finding: {}", trace.polys_used);
    Ok(code)
}
