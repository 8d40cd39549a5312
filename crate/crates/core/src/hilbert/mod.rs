//! The integral-splitting argument for `P = Σ a_j e^j`: the polynomials
//! `p_r = x^r((x-1)..(x-n))^{r+1}`, the integer part `B_r`, the bounded part
//! `A_r`, and the identity `A_r + B_r = P·I_r` with `I_r = ∫_0^∞ p_r e^{-x}`.

mod bounds;
mod euler;

pub use bounds::{
    analytic_c, check_ar_bound, check_ar_coherence, check_fake_lm, integral_xk_exp_neg, l_const,
    ArBound, MAX_REFINEMENTS,
};
pub use euler::{verify_euler_numeric, EulerVerdict};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactnum::{enclose_enum, factorial, from_int, ENum, Int, Ival, Rat};
use crate::exppoly::{euler_eval, ExpPoly};
use crate::series::Poly;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer coefficients `a_0..a_n` of `P = a_0 + a_1 e + .. + a_n e^n`,
/// with `n >= 1` and `a_0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertInstance {
    a: Vec<Int>,
}

impl HilbertInstance {
    pub fn new(a: Vec<Int>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInstance("need coefficients a_0..a_n with n >= 1".into()));
        }
        if a[0].is_zero() {
            return Err(Error::InvalidInstance("a_0 must be nonzero".into()));
        }
        Ok(HilbertInstance { a })
    }

    pub fn a(&self) -> &[Int] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    /// `P` as an exact element of `ENum`.
    pub fn p_value(&self) -> ENum {
        ENum::from_terms(
            self.a
                .iter()
                .enumerate()
                .map(|(j, a)| (Rat::from_integer(j.into()), from_int(a.clone()))),
        )
    }

    pub fn abs_sum(&self) -> Int {
        self.a.iter().map(Signed::abs).sum()
    }
}

/// `x^r ((x-1)(x-2)..(x-n))^{r+1}`.
pub fn build_pr(r: usize, n: usize) -> Poly<Rat> {
    let roots = (1..=n).fold(Poly::one(), |acc, j| &acc * &Poly::from_ints([-(j as i64), 1]));
    roots.pow(r + 1).mul_x_pow(r)
}

/// `B_r = Σ_j a_j ∫_0^∞ p_r(x+j) e^{-x}`, evaluated term by term with `∫ x^k e^{-x} = k!`.
pub fn compute_br(inst: &HilbertInstance, r: usize) -> Int {
    let pr = build_pr(r, inst.n());
    let total = inst.a.iter().enumerate().fold(Rat::zero(), |acc, (j, a)| {
        let shifted = pr.shift_rat(&Rat::from_integer(j.into()));
        acc + euler_eval(&shifted) * from_int(a.clone())
    });
    debug_assert!(total.is_integer());
    total.to_integer()
}

/// Sign `(-1)^{n(r+1)}`.
fn sign(n: usize, r: usize) -> Int {
    if (n * (r + 1)).is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

/// `r! | B`, `B ≡ ±a_0 (n!)^{r+1} r! (mod (r+1)!)`, and `B != 0` when
/// `gcd(r+1, a_0 n!) = 1`.
pub fn check_br_structure(inst: &HilbertInstance, r: usize, b: &Int) -> Check {
    let n = inst.n();
    let r_fact = factorial(r);
    let r1_fact = factorial(r + 1);
    let lead = sign(n, r) * &inst.a[0] * factorial(n).pow((r + 1) as u32) * &r_fact;
    let divisible = b.is_multiple_of(&r_fact);
    let residue_ok = (b - &lead).is_multiple_of(&r1_fact);
    let coprime = Int::from(r + 1).gcd(&(&inst.a[0] * factorial(n))).is_one();
    let nonzero_ok = !coprime || !b.is_zero();
    Check::from_bool(
        format!("hilbert.br-structure.r{r}"),
        "r! | B_r, B_r = ±a_0 (n!)^{r+1} r! mod (r+1)!, B_r != 0 at coprime r+1",
        divisible && residue_ok && nonzero_ok,
        format!(
            "B_{r} = {b}; r! divides: {divisible}; residue law: {residue_ok}; gcd(r+1, a_0 n!) = 1: {coprime}; nonzero: {}",
            !b.is_zero()
        ),
    )
}

/// `∫_0^j p_r(x) Exp(-x)` exactly.
fn partial_integral(pr: &Poly<Rat>, j: usize) -> ENum {
    ExpPoly::poly_exp(pr, -Rat::one()).newton_integral(&Rat::zero(), &Rat::from_integer(j.into()))
}

/// `A_r = Σ_j a_j e^j ∫_0^j p_r(x) Exp(-x)` exactly, plus an enclosure of width `<= eps`.
pub fn compute_ar(inst: &HilbertInstance, r: usize, eps: &Rat) -> Result<(ENum, Ival)> {
    let pr = build_pr(r, inst.n());
    let exact = inst.a.iter().enumerate().fold(ENum::zero(), |acc, (j, a)| {
        let weight = ENum::term(Rat::from_integer(j.into()), from_int(a.clone()));
        &acc + &(&weight * &partial_integral(&pr, j))
    });
    let iv = enclose_enum(&exact, eps)?;
    Ok((exact, iv))
}

/// `A_r + B_r = P·I_r` as an exact identity, with the chain for each tail
/// integral replayed three ways:
/// `e^j ∫_j^∞ p_r Exp(-x)`, `∫_0^∞ (p_r Exp(-x))(x+j)·e^j` and `euler_eval(p_r(x+j))`.
pub fn check_decomposition(inst: &HilbertInstance, r: usize) -> Result<Check> {
    let pr = build_pr(r, inst.n());
    let f = ExpPoly::poly_exp(&pr, -Rat::one());
    let i_r = euler_eval(&pr);
    let mut chain_ok = true;
    let mut additivity_ok = true;
    let whole = f.improper_integral(&Rat::zero())?;
    for j in 0..=inst.n() {
        let jr = Rat::from_integer(j.into());
        let ej = ENum::exp(jr.clone());
        let tail = &ej * &f.improper_integral(&jr)?;
        let shifted = &ej * &f.shift(&jr).improper_integral(&Rat::zero())?;
        let euler = ENum::rational(euler_eval(&pr.shift_rat(&jr)));
        chain_ok &= tail == shifted && shifted == euler;
        additivity_ok &= &partial_integral(&pr, j) + &f.improper_integral(&jr)? == whole;
    }
    let (a_r, _) = compute_ar(inst, r, &Rat::one())?;
    let b_r = compute_br(inst, r);
    let lhs = &a_r + &ENum::rational(from_int(b_r));
    let rhs = inst.p_value().scale(&i_r);
    let identity = lhs == rhs;
    let whole_ok = whole == ENum::rational(i_r.clone());
    Ok(Check::from_bool(
        format!("hilbert.decomposition.r{r}"),
        "A_r + B_r = P I_r",
        identity && chain_ok && additivity_ok && whole_ok,
        format!(
            "I_{r} = {i_r}; identity: {identity}; tail chain: {chain_ok}; additivity: {additivity_ok}; P I_r = {rhs}"
        ),
    ))
}

/// One row of the pipeline for a fixed `r`.
#[derive(Clone, Debug)]
pub struct HilbertReport {
    pub r: usize,
    pub b_r: Int,
    /// `B_r mod (r+1)!`, in `[0, (r+1)!)`.
    pub b_r_residue: Int,
    pub a_r_exact: ENum,
    pub a_r_interval: Ival,
    pub identity_ok: bool,
    pub bound_c: Rat,
    pub checks: Vec<Check>,
}

impl HilbertReport {
    pub fn outcome(&self) -> crate::check::Outcome {
        self.checks
            .iter()
            .fold(crate::check::Outcome::Pass, |acc, c| acc.and(c.outcome))
    }
}

pub fn hilbert_report(inst: &HilbertInstance, r: usize, eps: &Rat) -> Result<HilbertReport> {
    if r == 0 {
        return Err(Error::InvalidInstance("r must be at least 1".into()));
    }
    let b_r = compute_br(inst, r);
    let (a_r_exact, a_r_interval) = compute_ar(inst, r, eps)?;
    let decomposition = check_decomposition(inst, r)?;
    let identity_ok = decomposition.passed();
    let bound = check_ar_bound(inst, r, eps)?;
    let checks = vec![
        check_br_structure(inst, r, &b_r),
        decomposition,
        bound.check,
        check_ar_coherence(inst, r, eps)?,
    ];
    Ok(HilbertReport {
        r,
        b_r_residue: b_r.mod_floor(&factorial(r + 1)),
        b_r,
        a_r_exact,
        a_r_interval,
        identity_ok,
        bound_c: bound.c,
        checks,
    })
}
