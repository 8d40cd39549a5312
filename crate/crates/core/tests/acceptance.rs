//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use semiformal::exppoly::{euler_eval, ExpPoly};
use semiformal::hilbert::{check_fake_lm, compute_br, hilbert_report, verify_euler_numeric};
use semiformal::rational::{
    build_vtable, check_combination, check_divisibility, check_dual_construction,
    check_ode_identity, check_ur_identity, check_vk_recurrence, norm_induction, QPowerTable,
};
use semiformal::suites::run_suite_by_id;
use semiformal::{BbrInstance, ENum, HilbertInstance, Poly, Rat};
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn fact(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn within(limit: Duration, started: Instant) -> Verdict {
    let took = started.elapsed();
    if took <= limit {
        Ok(format!("{:.2?}", took))
    } else {
        Err(format!("took {took:.2?}, limit {limit:.0?}"))
    }
}

fn euler_exact() -> Verdict {
    let start = Instant::now();
    for k in 0..=200 {
        let want = Rat::from_integer(fact(k));
        let x_k = Poly::monomial(Rat::one(), k);
        if euler_eval(&x_k) != want {
            return Err(format!("euler_eval(x^{k})"));
        }
        let f = ExpPoly::poly_exp(&x_k, -Rat::one());
        if f.improper_integral(&Rat::zero()).map_err(|e| e.to_string())? != ENum::rational(want) {
            return Err(format!("improper integral of x^{k} Exp(-x)"));
        }
    }
    within(Duration::from_secs(5), start).map(|t| format!("k <= 200 in {t}"))
}

fn euler_numeric() -> Verdict {
    let seq = |step: i64, end: i64| (1..=end / step).map(|i| rat(i * step, 1)).collect::<Vec<_>>();
    let seqs = [seq(5, 50), seq(7, 49)];
    for k in 0..=15 {
        let eps = rat(1, 1_000_000) * Rat::from_integer(fact(k));
        let v = verify_euler_numeric(k, &seqs, &eps).map_err(|e| e.to_string())?;
        let widths_ok = v
            .improper
            .traces
            .iter()
            .all(|t| t.enclosures.last().is_some_and(|iv| iv.width() <= eps));
        if !v.check.passed() || !widths_ok {
            return Err(format!("k={k}: {}", v.check.detail));
        }
    }
    Ok("k <= 15 on b = 5,10,..,50 and b = 7,14,..,49".into())
}

fn suites(ids: &[&str], seed: u64, cases: usize) -> Verdict {
    for id in ids {
        let r = run_suite_by_id(id, seed, cases).ok_or(format!("unknown suite {id}"))?;
        if r.passed != r.cases {
            return Err(format!("{id}: {}/{} ({:?})", r.passed, r.cases, r.failures));
        }
    }
    Ok(format!("{} suites x {cases} cases, seed {seed}", ids.len()))
}

/// `B_1` for `a = (2, -1)` from hand-expanded integer polynomials.
fn b1_oracle() -> i64 {
    // p_1(x) = x (x-1)^2, p_1(x+1) = (x+1) x^2.
    let p0 = [0i64, 1, -2, 1];
    let p1 = [0i64, 0, 1, 1];
    let ev = |p: &[i64]| p.iter().enumerate().map(|(k, c)| c * (1..=k as i64).product::<i64>()).sum::<i64>();
    2 * ev(&p0) - ev(&p1)
}

fn hilbert() -> Verdict {
    let start = Instant::now();
    let oracle = b1_oracle();
    let two = HilbertInstance::new(ints(&[2, -1])).map_err(|e| e.to_string())?;
    if oracle != -2 || compute_br(&two, 1) != BigInt::from(oracle) {
        return Err(format!("B_1 = {} vs oracle {oracle}", compute_br(&two, 1)));
    }
    let eps = rat(1, 100_000_000);
    for a in [&[2, -1][..], &[1, -3, 1]] {
        let inst = HilbertInstance::new(ints(a)).map_err(|e| e.to_string())?;
        for r in 1..=8 {
            let rep = hilbert_report(&inst, r, &eps).map_err(|e| e.to_string())?;
            if let Some(c) = rep.checks.iter().find(|c| !c.passed()) {
                return Err(format!("a={a:?}: {c}"));
            }
            if !rep.identity_ok || rep.a_r_interval.width() > eps {
                return Err(format!("a={a:?}, r={r}: identity or interval width"));
            }
        }
    }
    within(Duration::from_secs(30), start).map(|t| format!("B_1 = -2, r = 1..8 on two instances in {t}"))
}

fn fake_lm() -> Verdict {
    let c = check_fake_lm(6, 12).map_err(|e| e.to_string())?;
    if c.passed() {
        Ok(c.detail)
    } else {
        Err(c.to_string())
    }
}

fn bbr_unconditional(inst: &BbrInstance, n: usize, k: usize) -> Result<semiformal::VTable, String> {
    let tab = build_vtable(inst, n, k).map_err(|e| e.to_string())?;
    let mut checks = vec![
        check_vk_recurrence(&tab, inst),
        check_ode_identity(&tab, inst),
        check_divisibility(&tab, inst),
        check_dual_construction(&tab),
    ];
    checks.extend((0..=k).map(|kk| check_combination(&tab, kk)));
    match checks.iter().find(|c| !c.passed()) {
        Some(c) => Err(c.to_string()),
        None => Ok(tab),
    }
}

fn bbr_e() -> Verdict {
    let start = Instant::now();
    let inst = BbrInstance::new(ints(&[1]), vec![1]).map_err(|e| e.to_string())?;
    let tab = bbr_unconditional(&inst, 200, 12)?;
    // n! Σ_{r<=n} 1/r! directly.
    let mut partial = Rat::zero();
    for n in 0..=200usize {
        partial += Rat::new(BigInt::one(), fact(n));
        if partial.clone() * Rat::from_integer(fact(n)) != Rat::from_integer(tab.v[n].clone()) {
            return Err(format!("v_{n} disagrees with the factorial sum"));
        }
    }
    if tab.v[..5] != ints(&[1, 2, 5, 16, 65])[..] {
        return Err(format!("prefix {:?}", &tab.v[..5]));
    }
    within(Duration::from_secs(30), start).map(|t| format!("prefix 1,2,5,16,65, N=200, K=12 in {t}"))
}

fn bbr_two() -> Verdict {
    let inst = BbrInstance::new(ints(&[1, 1]), vec![1, 2]).map_err(|e| e.to_string())?;
    bbr_unconditional(&inst, 150, 8)?;
    for r in 0..=4 {
        let (c, p) = check_ur_identity(&inst, r, 150).map_err(|e| e.to_string())?;
        if !c.passed() || p.len() > inst.t() * (r + 1) {
            return Err(c.to_string());
        }
    }
    Ok("N=150, K=8; p_0..p_4 integral with degree < t(r+1)".into())
}

fn rational_control() -> Verdict {
    let base = (0..=200).map(|n| BigInt::from(2).pow(n)).collect();
    let tab = QPowerTable::build(base, ints(&[2]), 12);
    if !tab.row(1)[1..].iter().all(Zero::is_zero) {
        return Err("v_n(1) != 0 for some n >= 1".into());
    }
    let ind = norm_induction(&tab, 1, |k, n| tab.get(k, n).is_zero());
    if !ind.pass || ind.window_size == 0 {
        return Err(format!("control: {}", ind.detail));
    }
    let inst = BbrInstance::new(ints(&[1]), vec![1]).map_err(|e| e.to_string())?;
    let genuine = build_vtable(&inst, 200, 12).map_err(|e| e.to_string())?;
    let g = norm_induction(&genuine.table, 1, |k, n| genuine.vk(k, n).is_zero());
    match (g.pass, g.n_region_witness) {
        (false, Some((k, n))) if !genuine.vk(k, n).is_zero() => Ok(format!(
            "control window of {} entries all zero; genuine witness v_{n}({k}) = {}",
            ind.window_size,
            genuine.vk(k, n)
        )),
        _ => Err(format!("genuine instance: {}", g.detail)),
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("euler identity, exact", euler_exact),
        ("euler identity, sequence definition", euler_numeric),
        ("proposition suites", || {
            suites(
                &[
                    "exppoly.shift-composition",
                    "exppoly.shift-product",
                    "exppoly.exponential-identity",
                    "exppoly.derivative-primitive",
                    "newton.linearity",
                    "newton.additivity",
                    "newton.shift",
                    "improper.linearity",
                    "improper.additivity",
                    "improper.shift",
                ],
                42,
                100,
            )
        }),
        ("integer part and bounded part", hilbert),
        ("|int_0^i x^k Exp(-x)| <= i^{k+1} e^i", fake_lm),
        ("table pipeline, b=(1), alpha=(1)", bbr_e),
        ("table pipeline, b=(1,1), alpha=(1,2)", bbr_two),
        ("rational control and norm induction", rational_control),
        ("pole proposition", || suites(&["cross.pole-proposition"], 42, 100)),
        ("enclosure coherence", || suites(&["cross.enclosure-coherence"], 42, 100)),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
