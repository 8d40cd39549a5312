//! Randomized proposition suites. Each suite draws its cases from its own
//! ChaCha8 stream, selected by the suite's index, so results depend only on
//! the seed and the case count.

pub mod gen;

use crate::check::Outcome;
use crate::error::Result as CoreResult;
use crate::exactnum::{enclose_enum, enclose_exp, ENum, Ival, Rat};
use crate::exppoly::ExpPoly;
use crate::hilbert::{check_decomposition, HilbertInstance};
use crate::rational::{
    build_vtable, check_divisibility, check_dual_construction, check_pole_prop, check_power_rows,
    partial_fractions,
};
use crate::series::{exp_series, TruncSeries};
use gen::*;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Failures beyond this many are counted but not described.
const MAX_REPORTED: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub id: String,
    pub label: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.passed == self.cases)
    }
}

type CaseFn = fn(&mut SuiteRng) -> CoreResult<Result<(), String>>;

pub struct Suite {
    pub id: &'static str,
    pub label: &'static str,
    case: CaseFn,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn series_ring(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(0..=8);
    let (f, g, k) = (series(rng, h), series(rng, h), series(rng, h));
    let distributes = f.add(&g).mul(&k) == f.mul(&k).add(&g.mul(&k));
    let commutes = f.mul(&g) == g.mul(&f);
    let associates = f.mul(&g).mul(&k) == f.mul(&g.mul(&k));
    let unit = f.mul(&TruncSeries::one(h)) == f && f.add(&TruncSeries::zero(h)) == f;
    Ok(ensure(distributes && commutes && associates && unit, || format!("f={f:?}, g={g:?}")))
}

fn series_leibniz(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(1..=8);
    let (f, g) = (series(rng, h), series(rng, h));
    let lhs = f.mul(&g).derivative()?;
    let rhs = f.derivative()?.mul(&g).add(&f.mul(&g.derivative()?));
    Ok(ensure(lhs == rhs, || format!("f={f:?}, g={g:?}")))
}

fn series_chain_rule(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(1..=8);
    let f = series(rng, h);
    let a = small_rat(rng);
    let lhs = f.inner_scale(&a).derivative()?;
    let rhs = f.derivative()?.inner_scale(&a).scale(&a);
    Ok(ensure(lhs == rhs, || format!("f={f:?}, a={a}")))
}

fn series_inner_product(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(0..=8);
    let (f, g) = (series(rng, h), series(rng, h));
    let a = small_rat(rng);
    let ok = f.mul(&g).inner_scale(&a) == f.inner_scale(&a).mul(&g.inner_scale(&a));
    Ok(ensure(ok, || format!("f={f:?}, g={g:?}, a={a}")))
}

fn series_primitive_scaling(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(0..=8);
    let f = series(rng, h);
    let a = nonzero_rat(rng);
    let lhs = f.inner_scale(&a).primitive();
    let rhs = f.primitive().inner_scale(&a).scale(&a.recip());
    Ok(ensure(lhs == rhs, || format!("f={f:?}, a={a}")))
}

fn series_fundamental(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let h = rng.gen_range(1..=8);
    let f = series(rng, h);
    let back = f.primitive().derivative()? == f;
    let mut f0 = f.coeffs().to_vec();
    f0[0] = Rat::zero();
    let forth = f.derivative()?.primitive() == TruncSeries::new(f0)?;
    Ok(ensure(back && forth, || format!("f={f:?}")))
}

fn enum_ring(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (a, b, c) = (enumber(rng), enumber(rng), enumber(rng));
    let ok = &(&a + &b) * &c == &(&a * &c) + &(&b * &c)
        && &a * &b == &b * &a
        && &(&a * &b) * &c == &a * &(&b * &c)
        && (&a + &(-&a)) == ENum::zero()
        && &a * &ENum::one() == a;
    Ok(ensure(ok, || format!("a={a}, b={b}, c={c}")))
}

fn shift_composition(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = exppoly(rng);
    let (a, b) = (grid_rat(rng), grid_rat(rng));
    let ok = f.shift(&a).shift(&b) == f.shift(&(&a + &b));
    Ok(ensure(ok, || format!("f={f:?}, a={a}, b={b}")))
}

fn shift_product(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (f, g) = (exppoly(rng), exppoly(rng));
    let b = grid_rat(rng);
    let ok = f.mul(&g).shift(&b) == f.shift(&b).mul(&g.shift(&b));
    Ok(ensure(ok, || format!("f={f:?}, g={g:?}, b={b}")))
}

fn exponential_identity(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (c, d, b) = (grid_rat(rng), grid_rat(rng), grid_rat(rng));
    let shifted = ExpPoly::exp_rate(c.clone()).shift(&b)
        == ExpPoly::exp_rate(c.clone()).scale(&ENum::exp(&c * &b));
    let product = ExpPoly::exp_rate(c.clone()).mul(&ExpPoly::exp_rate(d.clone()))
        == ExpPoly::exp_rate(&c + &d);
    let values = ExpPoly::exp_rate(c.clone()).value(&b) == ENum::exp(&c * &b);
    Ok(ensure(shifted && product && values, || format!("c={c}, d={d}, b={b}")))
}

fn derivative_primitive(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (f, g) = (exppoly(rng), exppoly(rng));
    let back = f.primitive().derivative() == f;
    let at_zero = f.value(&Rat::zero());
    let forth = f.derivative().primitive() == f.sub(&ExpPoly::constant(at_zero));
    let prim_zero = f.primitive().value(&Rat::zero()).is_zero();
    let leibniz = f.mul(&g).derivative() == f.derivative().mul(&g).add(&f.mul(&g.derivative()));
    Ok(ensure(back && forth && prim_zero && leibniz, || format!("f={f:?}, g={g:?}")))
}

fn newton_linearity(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (f, g) = (exppoly(rng), exppoly(rng));
    let (al, be) = (enumber(rng), enumber(rng));
    let (u, v) = (grid_rat(rng), grid_rat(rng));
    let lhs = f.scale(&al).add(&g.scale(&be)).newton_integral(&u, &v);
    let rhs = &(&al * &f.newton_integral(&u, &v)) + &(&be * &g.newton_integral(&u, &v));
    Ok(ensure(lhs == rhs, || format!("f={f:?}, g={g:?}, u={u}, v={v}")))
}

fn newton_additivity(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = exppoly(rng);
    let (u, v, w) = (grid_rat(rng), grid_rat(rng), grid_rat(rng));
    let ok = &f.newton_integral(&u, &v) + &f.newton_integral(&v, &w) == f.newton_integral(&u, &w);
    Ok(ensure(ok, || format!("f={f:?}, u={u}, v={v}, w={w}")))
}

fn newton_shift(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = exppoly(rng);
    let (u, v, b) = (grid_rat(rng), grid_rat(rng), grid_rat(rng));
    let ok = f.shift(&b).newton_integral(&u, &v) == f.newton_integral(&(&u + &b), &(&v + &b));
    Ok(ensure(ok, || format!("f={f:?}, u={u}, v={v}, b={b}")))
}

fn improper_linearity(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let (f, g) = (decaying_exppoly(rng), decaying_exppoly(rng));
    let (al, be) = (enumber(rng), enumber(rng));
    let u = grid_rat(rng);
    let lhs = f.scale(&al).add(&g.scale(&be)).improper_integral(&u)?;
    let rhs = &(&al * &f.improper_integral(&u)?) + &(&be * &g.improper_integral(&u)?);
    Ok(ensure(lhs == rhs, || format!("f={f:?}, g={g:?}, u={u}")))
}

fn improper_additivity(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = decaying_exppoly(rng);
    let (u, v) = (grid_rat(rng), grid_rat(rng));
    let ok = &f.newton_integral(&u, &v) + &f.improper_integral(&v)? == f.improper_integral(&u)?;
    Ok(ensure(ok, || format!("f={f:?}, u={u}, v={v}")))
}

fn improper_shift(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = decaying_exppoly(rng);
    let (u, b) = (grid_rat(rng), grid_rat(rng));
    let ok = f.shift(&b).improper_integral(&u)? == f.improper_integral(&(&u + &b))?;
    Ok(ensure(ok, || format!("f={f:?}, u={u}, b={b}")))
}

/// Rebuilds a rational-scalar `ExpPoly` as a truncated series from the
/// exponential series and compares against its exact coefficients.
fn exact_vs_truncated(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = rational_exppoly(rng);
    let h = 10;
    let mut built = TruncSeries::zero(h);
    for (c, p) in f.parts() {
        let p_rat = p.map(|e| e.as_rational().expect("rational scalars"));
        built = built.add(&exp_series(h).inner_scale(c).mul_poly(&p_rat));
    }
    let eps = Rat::new(1.into(), 1_000_000.into());
    let pinned = f.to_interval_series(h, &eps)?;
    let ok = pinned
        .iter()
        .zip(built.coeffs())
        .all(|(iv, c)| iv.lo() == c && iv.hi() == c);
    Ok(ensure(ok, || format!("f={f:?}")))
}

fn partial_fraction_round_trip(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = ratfun(rng);
    let pf = partial_fractions(&f)?;
    let back = pf.recombine();
    let ok = back == f && back.expand(15) == f.expand(15) && partial_fractions(&back)? == pf;
    Ok(ensure(ok, || format!("f={f:?}")))
}

fn pole_proposition(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let a = if rng.gen_ratio(1, 8) {
        crate::rational::RatFun::polynomial(rat_poly(rng, 3))
    } else {
        ratfun(rng)
    };
    let p = rat_poly(rng, 3);
    let m = rng.gen_range(0..=3);
    let c = nonzero_rat(rng);
    let s = nonzero_rat(rng);
    let v = check_pole_prop(&p, m, &c, &a)?;
    let scaled = check_pole_prop(&p.scale(&s), m, &c, &a)?;
    let no_simple = v.poles.iter().all(|&(_, o)| o >= 2);
    let matches = v.reference_poles.as_ref().is_none_or(|r| *r == v.poles);
    let ok = v.pass && no_simple && matches && scaled.pass == v.pass;
    Ok(ensure(ok, || format!("p={p:?}, m={m}, c={c}, A={a:?}: {}", v.detail)))
}

/// Interval Horner over separately enclosed coefficients, with `e^{cv}`
/// enclosed as the square of `e^{cv/2}`.
fn independent_value(f: &ExpPoly, v: &Rat, eps: &Rat) -> CoreResult<Ival> {
    let mut acc = Ival::zero();
    let vi = Ival::point(v.clone());
    for (c, p) in f.parts() {
        let mut horner = Ival::zero();
        for coeff in p.coeffs().iter().rev() {
            horner = &(&horner * &vi) + &enclose_enum(coeff, eps)?;
        }
        let half = enclose_exp(&(c * v / Rat::from_integer(2.into())), eps)?;
        acc = &acc + &(&horner * &(&half * &half));
    }
    Ok(acc)
}

fn enclosure_coherence(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let f = exppoly(rng);
    let v = grid_rat(rng);
    let exact = f.value(&v);
    let indep = independent_value(&f, &v, &Rat::new(1.into(), 1_000_000.into()))?;
    let mut tight = Rat::new(1.into(), 1_000_000.into());
    for _ in 0..8 {
        let iv = enclose_enum(&exact, &tight)?;
        if indep.contains_ival(&iv) {
            return Ok(Ok(()));
        }
        if !indep.intersects(&iv) {
            return Ok(Err(format!("f={f:?}, v={v}: {iv} outside {indep}")));
        }
        tight /= Rat::from_integer(16.into());
    }
    Ok(Err(format!("f={f:?}, v={v}: undecided against {indep}")))
}

fn bbr_unconditional(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let inst = bbr_instance(rng);
    let tab = build_vtable(&inst, 24, 5)?;
    let ok = check_divisibility(&tab, &inst).passed()
        && check_dual_construction(&tab).passed()
        && check_power_rows(&tab, &inst).passed();
    Ok(ensure(ok, || format!("b={:?}, alpha={:?}", inst.b(), inst.alpha())))
}

fn hilbert_decomposition(rng: &mut SuiteRng) -> CoreResult<Result<(), String>> {
    let a = hilbert_coeffs(rng);
    let r = rng.gen_range(1..=4);
    let inst = HilbertInstance::new(a.clone())?;
    let c = check_decomposition(&inst, r)?;
    Ok(ensure(c.passed(), || format!("a={a:?}, r={r}: {}", c.detail)))
}

macro_rules! suite {
    ($id:literal, $label:literal, $f:ident) => {
        Suite { id: $id, label: $label, case: $f }
    };
}

/// Every suite, in report order. The position is the stream index.
pub const SUITES: &[Suite] = &[
    suite!("series.ring", "truncated series form a commutative ring", series_ring),
    suite!("series.leibniz", "(fg)' = f'g + fg'", series_leibniz),
    suite!("series.chain-rule", "(f(ax))' = a f'(ax)", series_chain_rule),
    suite!("series.inner-product", "(fg)(ax) = f(ax) g(ax)", series_inner_product),
    suite!("series.primitive-scaling", "int f(ax) = (int f)(ax) / a", series_primitive_scaling),
    suite!("series.fundamental", "(int f)' = f and int f' = f - f(0)", series_fundamental),
    suite!("enum.ring", "ENum is a commutative ring", enum_ring),
    suite!("exppoly.shift-composition", "f(x+a)(x+b) = f(x+a+b)", shift_composition),
    suite!("exppoly.shift-product", "(fg)(x+b) = f(x+b) g(x+b)", shift_product),
    suite!("exppoly.exponential-identity", "Exp(c(x+b)) = e^{cb} Exp(cx)", exponential_identity),
    suite!("exppoly.derivative-primitive", "derivative and primitive laws", derivative_primitive),
    suite!("newton.linearity", "int_u^v (af + bg) = a int f + b int g", newton_linearity),
    suite!("newton.additivity", "int_u^v + int_v^w = int_u^w", newton_additivity),
    suite!("newton.shift", "int_u^v f(x+b) = int_{u+b}^{v+b} f", newton_shift),
    suite!("improper.linearity", "int_u^inf is linear", improper_linearity),
    suite!("improper.additivity", "int_u^v + int_v^inf = int_u^inf", improper_additivity),
    suite!("improper.shift", "int_u^inf f(x+b) = int_{u+b}^inf f", improper_shift),
    suite!("cross.exact-vs-truncated", "exact coefficients equal truncated-series ones", exact_vs_truncated),
    suite!("cross.partial-fractions", "partial fractions recombine to f", partial_fraction_round_trip),
    suite!("cross.pole-proposition", "p A + c x^m A' has only poles of order >= 2", pole_proposition),
    suite!("cross.enclosure-coherence", "exact values lie in independent enclosures", enclosure_coherence),
    suite!("bbr.unconditional", "divisibility and table identities on random data", bbr_unconditional),
    suite!("hilbert.decomposition", "A_r + B_r = P I_r on random data", hilbert_decomposition),
];

pub fn find_suite(id: &str) -> Option<(usize, &'static Suite)> {
    SUITES.iter().enumerate().find(|(_, s)| s.id == id)
}

/// Runs `cases` cases of suite number `index` from stream `index` of `seed`.
pub fn run_suite(index: usize, seed: u64, cases: usize) -> SuiteResult {
    let suite = &SUITES[index];
    let mut rng = SuiteRng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut passed = 0;
    let mut failures = Vec::new();
    for case in 0..cases {
        let verdict = match (suite.case)(&mut rng) {
            Ok(v) => v,
            Err(e) => Err(format!("error: {e}")),
        };
        match verdict {
            Ok(()) => passed += 1,
            Err(msg) if failures.len() < MAX_REPORTED => failures.push(format!("case {case}: {msg}")),
            Err(_) => {}
        }
    }
    SuiteResult {
        id: suite.id.to_string(),
        label: suite.label.to_string(),
        cases,
        passed,
        failures,
    }
}

pub fn run_suite_by_id(id: &str, seed: u64, cases: usize) -> Option<SuiteResult> {
    find_suite(id).map(|(i, _)| run_suite(i, seed, cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_briefly() {
        for i in 0..SUITES.len() {
            let r = run_suite(i, 7, 12);
            assert_eq!(r.passed, r.cases, "{}: {:?}", r.id, r.failures);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite(3, 42, 10), run_suite(3, 42, 10));
        assert!(run_suite_by_id("nope", 1, 1).is_none());
    }

    #[test]
    fn ids_unique() {
        let mut ids: Vec<_> = SUITES.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), SUITES.len());
    }
}
