use crate::config::{CommandKind, RunConfig};
use crate::report::{
    hilbert_csv, render, sibling, vtable_csv, write_file, BbrSection, CheckRecord, ConfigEcho,
    HilbertRow, HilbertSection, Report,
};
use crate::RunError;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use semiformal::exppoly::{euler_eval, ExpPoly};
use semiformal::hilbert::{check_fake_lm, hilbert_report, verify_euler_numeric};
use semiformal::rational::{norm_induction, run_bbr, BbrReport, QPowerTable};
use semiformal::suites::{run_suite, SUITES};
use semiformal::{BbrInstance, Check, ENum, HilbertInstance, Outcome, Poly, Rat};

/// Largest `k` in the exact Euler-identity check.
const EULER_EXACT_K: usize = 200;

fn default_eps(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

fn props(cfg: &RunConfig) -> (Vec<Check>, Vec<semiformal::suites::SuiteResult>) {
    let results: Vec<_> = (0..SUITES.len())
        .into_par_iter()
        .map(|i| run_suite(i, cfg.seed, cfg.cases))
        .collect();
    let checks = results
        .iter()
        .map(|r| {
            let mut detail = format!("{}/{} cases, seed {}", r.passed, r.cases, cfg.seed);
            for f in &r.failures {
                detail.push_str("; ");
                detail.push_str(f);
            }
            Check::new(format!("props.{}", r.id), r.label.clone(), r.outcome(), detail)
        })
        .collect();
    (checks, results)
}

fn euler_exact() -> semiformal::Result<Check> {
    let mut fact = BigInt::one();
    for k in 0..=EULER_EXACT_K {
        if k > 0 {
            fact *= k;
        }
        let want = Rat::from_integer(fact.clone());
        let x_k = Poly::monomial(Rat::one(), k);
        let integral = ExpPoly::poly_exp(&x_k, -Rat::one()).improper_integral(&Rat::zero())?;
        if euler_eval(&x_k) != want || integral != ENum::rational(want) {
            return Ok(Check::from_bool("euler.exact", "int_0^inf x^k Exp(-x) = k!", false, format!("k={k}")));
        }
    }
    Ok(Check::from_bool(
        "euler.exact",
        "int_0^inf x^k Exp(-x) = k!",
        true,
        format!("exact for k <= {EULER_EXACT_K}"),
    ))
}

fn euler(cfg: &RunConfig) -> semiformal::Result<Vec<Check>> {
    let rel = cfg.eps.clone().unwrap_or_else(|| default_eps(1, 1_000_000));
    let seq = |step: i64, end: i64| -> Vec<Rat> {
        (1..=end / step).map(|i| Rat::from_integer((i * step).into())).collect()
    };
    let seqs = [seq(5, 50), seq(7, 49)];
    let mut checks = vec![euler_exact()?];
    let numeric: Vec<_> = (0..=cfg.euler_max_k)
        .into_par_iter()
        .map(|k| {
            let fact: BigInt = (1..=k).map(BigInt::from).product();
            let eps = &rel * Rat::from_integer(fact);
            verify_euler_numeric(k, &seqs, &eps).map(|v| v.check)
        })
        .collect::<semiformal::Result<_>>()?;
    checks.extend(numeric);
    Ok(checks)
}

fn hilbert(cfg: &RunConfig, inst: &HilbertInstance) -> semiformal::Result<(Vec<Check>, HilbertSection)> {
    let eps = cfg.eps.clone().unwrap_or_else(|| default_eps(1, 100_000_000));
    let reports: Vec<_> = (1..=cfg.max_r)
        .into_par_iter()
        .map(|r| hilbert_report(inst, r, &eps))
        .collect::<semiformal::Result<_>>()?;
    let mut checks: Vec<Check> = reports.iter().flat_map(|r| r.checks.clone()).collect();
    checks.push(check_fake_lm(6, 12)?);
    let section = HilbertSection {
        coeffs: inst.a().iter().map(ToString::to_string).collect(),
        rows: reports.iter().map(HilbertRow::from).collect(),
    };
    Ok((checks, section))
}

/// The table argument on `v_n = 2^n`, `q = 1 - 2x`, where the induction must succeed.
fn rational_control(n_max: usize, k_max: usize) -> Check {
    let base = (0..=n_max).map(|n| BigInt::from(2).pow(n as u32)).collect();
    let tab = QPowerTable::build(base, vec![BigInt::from(2)], k_max);
    let row_zero = tab.row(1)[1..].iter().all(Zero::is_zero);
    let ind = norm_induction(&tab, 1, |k, n| tab.get(k, n).is_zero());
    Check::from_bool(
        "bbr.rational-control",
        "norm induction closes on rational data v_n = 2^n",
        row_zero && ind.pass,
        format!("v_n(1) = 0 for 1 <= n <= {n_max}: {row_zero}; {}", ind.detail),
    )
}

fn bbr(cfg: &RunConfig, inst: &BbrInstance) -> semiformal::Result<(Vec<Check>, BbrReport)> {
    let rep = run_bbr(inst, cfg.max_n, cfg.max_k, cfg.max_r)?;
    let mut checks = rep.checks.clone();
    checks.push(rational_control(cfg.max_n, cfg.max_k));
    Ok((checks, rep))
}

/// Runs the configured command and assembles the report. Instances are
/// validated before any work starts.
pub fn execute(cfg: &RunConfig) -> Result<(Report, Option<BbrReport>), RunError> {
    let hilbert_inst = cfg
        .runs(CommandKind::Hilbert)
        .then(|| HilbertInstance::new(cfg.coeffs.clone()))
        .transpose()?;
    let bbr_inst = cfg
        .runs(CommandKind::Bbr)
        .then(|| BbrInstance::new(cfg.b.clone(), cfg.alpha.clone()))
        .transpose()?;
    if let Some(inst) = &bbr_inst {
        if cfg.max_n < inst.t() * cfg.max_k {
            return Err(RunError::Core(semiformal::Error::InvalidInstance(format!(
                "max-n must be at least t * max-k = {}",
                inst.t() * cfg.max_k
            ))));
        }
    }

    let mut checks = Vec::new();
    let mut report = Report {
        version: env!("CARGO_PKG_VERSION"),
        config_echo: ConfigEcho::from(cfg),
        checks: Vec::new(),
        suites: None,
        hilbert: None,
        bbr: None,
    };
    if cfg.runs(CommandKind::Props) {
        let (c, s) = props(cfg);
        checks.extend(c);
        report.suites = Some(s);
    }
    if cfg.runs(CommandKind::Euler) {
        checks.extend(euler(cfg)?);
    }
    if let Some(inst) = &hilbert_inst {
        let (c, section) = hilbert(cfg, inst)?;
        checks.extend(c);
        report.hilbert = Some(section);
    }
    let mut bbr_report = None;
    if let Some(inst) = &bbr_inst {
        let (c, rep) = bbr(cfg, inst)?;
        checks.extend(c);
        report.bbr = Some(BbrSection::from(&rep));
        bbr_report = Some(rep);
    }
    report.checks = checks.iter().map(CheckRecord::from).collect();
    Ok((report, bbr_report))
}

/// Executes and writes the report (and tables when asked).
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (report, bbr_report) = execute(cfg)?;
    write_file(&cfg.output, &render(&report, cfg.format)?)?;
    if cfg.emit_tables {
        if let Some(rep) = &bbr_report {
            write_file(&sibling(&cfg.output, "vtable"), &vtable_csv(rep)?)?;
        }
        if let Some(h) = &report.hilbert {
            write_file(&sibling(&cfg.output, "hilbert"), &hilbert_csv(&h.rows)?)?;
        }
    }
    Ok(report.outcome())
}

pub fn exit_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Pass => 0,
        Outcome::Fail => 1,
        Outcome::Undecided => 3,
    }
}
