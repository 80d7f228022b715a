//! `mta` — batch front door for the trace Moser–Trudinger–Adams toolkit.
//!
//! Subcommands:
//!   constants  print every closed-form constant and sharp threshold
//!   sweep      run a sharpness sweep and emit SweepRecord CSV + summary
//!   verify     run a named invariant suite; exit 0 iff everything passes
//!
//! Options come from `--key value` flags, optionally over a `--config FILE`
//! of key=value lines; every output embeds the resolved configuration.
//! Exit codes: 0 success (including reported-inconclusive sweeps),
//! 1 check failure, 2 usage error.

use mta_cli::config::RunConfig;
use mta_cli::suites::{run_suite, CheckResult, SUITES};
use mta_cli::{csv, TOOL_VERSION};
use mta_core::calibration::Calibration;
use mta_core::constants::{
    theorem_threshold, Params, QExp, SharpConstants, TheoremId,
};
use mta_core::verify::{sharpness_sweep, MeasureSpec};
use std::fmt::Write as _;
use std::process::ExitCode;

const USAGE: &str = "\
usage: mta <command> [--key value ...] [--config FILE]

commands:
  constants   --n N --k K [--alpha A] --q Q|inf --d D
  sweep       --theorem T1|T1_0|T1_1 [--n N --k K --alpha A --q Q --d D]
              [--nu lebesgue|hyperplane|radial:D|atoms:FILE] --beta-multiple M
              [--params r1,r2,...] [--h H] [--out FILE]
  family      --kind capacitary_fr|log_cap_u_eps|alberico_ua|weak_endpoint_f
              --param X [--n N] [--alpha A] [--h H] [--out FILE]
  verify      [--suite hardy|rearrange|potentials|oneil|hbw|all]
              [--seed S] [--threads T] [--calibration FILE] [--out FILE]

common flags: --seed S (default 7), --out FILE (default stdout)
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    if args.is_empty() {
        return Err("missing command".to_string());
    }
    let command = args[0].as_str();
    let mut cfg = RunConfig::default();
    // config file first, then flag overrides
    let flags = &args[1..];
    let mut pre = RunConfig::default();
    pre.overlay_flags(flags).map_err(|e| e.to_string())?;
    if let Some(path) = pre.get("config") {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        cfg = RunConfig::parse_file(&body).map_err(|e| e.to_string())?;
    }
    let leftovers = cfg.overlay_flags(flags).map_err(|e| e.to_string())?;
    if !leftovers.is_empty() {
        return Err(format!("unexpected argument: {}", leftovers[0]));
    }
    match command {
        "constants" => cmd_constants(&cfg),
        "sweep" => cmd_sweep(&cfg),
        "family" => cmd_family(&cfg),
        "verify" => cmd_verify(&cfg),
        other => Err(format!("unknown command: {other}")),
    }
}

fn cmd_family(cfg: &RunConfig) -> Result<ExitCode, String> {
    use mta_core::testfun;
    let seed = seed_of(cfg)?;
    let kind = cfg.get("kind").ok_or("missing required option --kind")?;
    let param = cfg.require_f64("param").map_err(|e| e.to_string())?;
    let n = cfg.get_usize("n").map_err(|e| e.to_string())?.unwrap_or(2);
    let alpha = cfg
        .get_f64("alpha")
        .map_err(|e| e.to_string())?
        .unwrap_or(1.0);
    let h = cfg
        .get_f64("h")
        .map_err(|e| e.to_string())?
        .unwrap_or(1.0 / 128.0);
    let fam = match kind {
        "capacitary_fr" => testfun::capacitary_fr(param, alpha, n, h),
        "log_cap_u_eps" => testfun::log_cap_u_eps(param, n, h),
        "alberico_ua" => testfun::alberico_ua(param, n, h),
        "weak_endpoint_f" => testfun::weak_endpoint_f(param, n, h),
        other => return Err(format!("unknown family kind: {other}")),
    }
    .map_err(|e| e.to_string())?;
    let mut out = csv::header(TOOL_VERSION, &cfg.resolved(), seed);
    let _ = writeln!(out, "# family kind={} param={param}", fam.kind.as_str());
    csv::write_grid_function(&mut out, &fam.grid);
    emit(cfg, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_q(cfg: &RunConfig) -> Result<QExp, String> {
    match cfg.get("q") {
        None => Err("missing required option --q".to_string()),
        Some("inf") | Some("infinity") => Ok(QExp::Infinity),
        Some(v) => v
            .parse::<f64>()
            .map(QExp::Finite)
            .map_err(|_| format!("invalid value for --q: {v}")),
    }
}

fn params_from(cfg: &RunConfig) -> Result<Params, String> {
    let n = cfg.require_usize("n").map_err(|e| e.to_string())?;
    let k = cfg.require_usize("k").map_err(|e| e.to_string())?;
    let alpha = cfg
        .get_f64("alpha")
        .map_err(|e| e.to_string())?
        .unwrap_or(k as f64);
    let q = parse_q(cfg)?;
    let d = cfg.require_f64("d").map_err(|e| e.to_string())?;
    Params::new(n, k, alpha, q, d).map_err(|e| e.to_string())
}

fn seed_of(cfg: &RunConfig) -> Result<u64, String> {
    Ok(cfg.get_u64("seed").map_err(|e| e.to_string())?.unwrap_or(7))
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), String> {
    match cfg.get("out") {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cmd_constants(cfg: &RunConfig) -> Result<ExitCode, String> {
    let p = params_from(cfg)?;
    let seed = seed_of(cfg)?;
    let c = SharpConstants::compute(&p).map_err(|e| e.to_string())?;
    let mut out = csv::header(TOOL_VERSION, &cfg.resolved(), seed);
    let _ = writeln!(out, "omega_n={:.15e}", c.omega_n);
    let _ = writeln!(out, "gamma_alpha={:.15e}", c.gamma_alpha);
    let _ = writeln!(out, "gamma_tilde={:.15e}", c.gamma_tilde);
    let _ = writeln!(
        out,
        "ell_k_n={}/{}",
        c.ell_k_n.numer(),
        c.ell_k_n.denom()
    );
    let _ = writeln!(
        out,
        "ell_k_n_float={:.15e}",
        mta_core::constants::ell_combinatorial_f64(p.k, p.n).map_err(|e| e.to_string())?
    );
    let _ = writeln!(out, "beta_nkq={:.15e}", c.beta_nkq);
    for (id, th) in &c.thresholds {
        // finite-q thresholds evaluated at q = inf are q' -> 1 limits
        let strict = id.is_weak_endpoint() || p.q.is_finite();
        let _ = writeln!(
            out,
            "threshold.{}.linear={:.15e}{}",
            id.as_str(),
            th.linear,
            if strict { "" } else { " # degenerate-limit value" }
        );
        let _ = writeln!(
            out,
            "threshold.{}.exponent={:.15e}{}",
            id.as_str(),
            th.exponent,
            if strict { "" } else { " # degenerate-limit value" }
        );
    }
    emit(cfg, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn measure_from(cfg: &RunConfig) -> Result<MeasureSpec, String> {
    match cfg.get("nu").unwrap_or("lebesgue") {
        "lebesgue" => Ok(MeasureSpec::Lebesgue),
        "hyperplane" => Ok(MeasureSpec::Hyperplane),
        other => {
            if let Some(d) = other.strip_prefix("radial:") {
                let d: f64 = d
                    .parse()
                    .map_err(|_| format!("invalid radial dimension: {other}"))?;
                Ok(MeasureSpec::RadialPower(d))
            } else if let Some(path) = other.strip_prefix("atoms:") {
                // atom measures from CSV need their growth dimension declared
                let d = cfg
                    .get_f64("d")
                    .map_err(|e| e.to_string())?
                    .ok_or("--d is required with an atoms measure")?;
                let body = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read atoms csv {path}: {e}"))?;
                let atoms = csv::read_atoms(&body).map_err(|e| e.to_string())?;
                let measure = mta_core::measures::RadonMeasure::from_atoms(atoms)
                    .map_err(|e| e.to_string())?;
                Ok(MeasureSpec::Custom { measure, d })
            } else {
                Err(format!("unknown measure spec: {other}"))
            }
        }
    }
}

/// Default sweep window: geometric radii spanning the asymptotic range
/// reachable at h = 1/256 (the smallest parameter is 4h).
const DEFAULT_SWEEP_PARAMS: [f64; 8] = [
    0.09, 0.0701, 0.0546, 0.0426, 0.0332, 0.0259, 0.0201, 0.0157,
];

fn cmd_sweep(cfg: &RunConfig) -> Result<ExitCode, String> {
    let theorem = TheoremId::parse(cfg.get("theorem").unwrap_or("T1"))
        .map_err(|e| e.to_string())?;
    let mut cfg = cfg.clone();
    if cfg.get("n").is_none() {
        cfg.set("n", "2");
    }
    if cfg.get("k").is_none() {
        cfg.set("k", "1");
    }
    if cfg.get("q").is_none() {
        cfg.set(
            "q",
            if theorem.is_weak_endpoint() { "inf" } else { "2" },
        );
    }
    let measure = measure_from(&cfg)?;
    if cfg.get("d").is_none() {
        let n = cfg.require_usize("n").map_err(|e| e.to_string())?;
        let d = measure.growth_dimension(n);
        cfg.set("d", &format!("{d}"));
    }
    let p = params_from(&cfg)?;
    let seed = seed_of(&cfg)?;
    let multiple = cfg.require_f64("beta_multiple").map_err(|e| e.to_string())?;
    let h = cfg
        .get_f64("h")
        .map_err(|e| e.to_string())?
        .unwrap_or(1.0 / 256.0);
    let sweep_params: Vec<f64> = match cfg.get("params") {
        None => DEFAULT_SWEEP_PARAMS.to_vec(),
        Some(list) => {
            let mut v = Vec::new();
            for item in list.split(',') {
                v.push(
                    item.trim()
                        .parse::<f64>()
                        .map_err(|_| format!("invalid sweep parameter: {item}"))?,
                );
            }
            v
        }
    };
    let report = sharpness_sweep(theorem, &p, &measure, multiple, &sweep_params, h)
        .map_err(|e| e.to_string())?;
    let mut out = csv::header(TOOL_VERSION, &cfg.resolved(), seed);
    csv::write_sweep_records(&mut out, &report.records);
    let _ = writeln!(out, "theorem={}", report.theorem.as_str());
    let _ = writeln!(out, "family={}", report.family.as_str());
    let _ = writeln!(out, "nu={}", measure.as_str());
    let _ = writeln!(out, "beta_multiple={multiple}");
    let th = theorem_threshold(theorem, &p).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "threshold_linear={:.15e}", th.linear);
    let _ = writeln!(out, "threshold_exponent={:.15e}", th.exponent);
    let _ = writeln!(out, "certificates_ok={}", report.certificates_ok);
    if let Some(fit) = &report.fit {
        let _ = writeln!(out, "fitted_slope={:.6}", fit.slope);
        let _ = writeln!(out, "fitted_slope_excess={:.6}", fit.slope_excess);
        let _ = writeln!(out, "predicted_slope={:.6}", fit.predicted);
        let _ = writeln!(out, "r_squared={:.6}", fit.r_squared);
    }
    let verdict = match report.verdict {
        mta_core::verify::Verdict::Blowup => {
            let slope = report.fit.as_ref().map(|f| f.slope).unwrap_or(f64::NAN);
            format!("BLOWUP({slope:.4})")
        }
        v => v.as_str().to_string(),
    };
    let _ = writeln!(out, "verdict={verdict}");
    emit(&cfg, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &RunConfig) -> Result<ExitCode, String> {
    let seed = seed_of(cfg)?;
    let suite = cfg.get("suite").unwrap_or("all").to_string();
    let threads = cfg
        .get_usize("threads")
        .map_err(|e| e.to_string())?
        .unwrap_or(1)
        .max(1);
    let mut cal = Calibration::frozen();
    if let Some(path) = cfg.get("calibration") {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read calibration {path}: {e}"))?;
        let parsed = RunConfig::parse_file(&body).map_err(|e| e.to_string())?;
        for key in parsed_keys(&body) {
            if let Some(v) = parsed.get(&key) {
                let value: f64 = v
                    .parse()
                    .map_err(|_| format!("invalid calibration value for {key}: {v}"))?;
                cal.set(&key, value);
            }
        }
    }
    let suites: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![Box::leak(suite.clone().into_boxed_str())]
    };
    // suites run on a small scoped pool; results merge in declared order so
    // the output is independent of scheduling
    let mut results: Vec<(usize, Vec<CheckResult>)> = Vec::new();
    let errors: std::sync::Mutex<Vec<String>> = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in suites.chunks(threads.max(1)) {
            let mut batch = Vec::new();
            for name in chunk {
                let idx = suites.iter().position(|s| s == name).unwrap();
                let cal_ref = &cal;
                let errs = &errors;
                batch.push(scope.spawn(move || match run_suite(name, seed, cal_ref) {
                    Ok(r) => Some((idx, r)),
                    Err(e) => {
                        errs.lock().unwrap().push(e);
                        None
                    }
                }));
            }
            for handle in batch {
                handles.push(handle.join().expect("suite thread panicked"));
            }
        }
        for h in handles.into_iter().flatten() {
            results.push(h);
        }
    });
    let errs = errors.into_inner().unwrap();
    if let Some(e) = errs.first() {
        return Err(e.clone());
    }
    results.sort_by_key(|(i, _)| *i);
    let mut out = csv::header(TOOL_VERSION, &cfg.resolved(), seed);
    let mut total_pass = 0usize;
    let mut total_fail = 0usize;
    for (idx, checks) in &results {
        let mut pass = 0usize;
        let mut fail = 0usize;
        for c in checks {
            let _ = writeln!(
                out,
                "check={} status={} detail={}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.detail
            );
            if c.passed {
                pass += 1;
            } else {
                fail += 1;
            }
        }
        let _ = writeln!(out, "suite={} pass={pass} fail={fail}", suites[*idx]);
        total_pass += pass;
        total_fail += fail;
    }
    let _ = writeln!(out, "total pass={total_pass} fail={total_fail}");
    emit(cfg, &out)?;
    Ok(if total_fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parsed_keys(body: &str) -> Vec<String> {
    body.lines()
        .filter_map(|l| {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                None
            } else {
                l.split_once('=').map(|(k, _)| k.trim().to_string())
            }
        })
        .collect()
}
