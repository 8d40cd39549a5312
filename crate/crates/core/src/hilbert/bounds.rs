use super::{build_pr, compute_ar, HilbertInstance};
use crate::check::{Check, Outcome};
use crate::error::Result;
use crate::exactnum::{enclose_enum, enclose_exp, from_int, ENum, Int, Ival, Rat};
use crate::exppoly::ExpPoly;
use crate::series::Poly;
use num_traits::{One, Signed, Zero};

/// Each certified comparison halves its tolerance at most this many times
/// before giving up as undecided.
pub const MAX_REFINEMENTS: usize = 12;

fn rat_u(x: usize) -> Rat {
    Rat::from_integer(x.into())
}

/// `lhs <= rhs` decided by enclosures at shrinking tolerances.
fn certify_le(
    mut lhs: impl FnMut(&Rat) -> Result<Ival>,
    mut rhs: impl FnMut(&Rat) -> Result<Ival>,
    eps0: &Rat,
) -> Result<Option<bool>> {
    let mut eps = eps0.clone();
    for _ in 0..=MAX_REFINEMENTS {
        if let Some(v) = lhs(&eps)?.certainly_le(&rhs(&eps)?) {
            return Ok(Some(v));
        }
        eps /= Rat::from_integer(16.into());
    }
    Ok(None)
}

fn outcome(v: Option<bool>) -> Outcome {
    v.map_or(Outcome::Undecided, Outcome::from_bool)
}

/// Enclosure of `∫_0^i x^k Exp(-x)` from the primitive series
/// `Σ_m (-1)^m i^{m+k+1} / (m! (m+k+1))` with a geometric tail of size `<= tol`.
pub fn integral_xk_exp_neg(i: u64, k: usize, tol: &Rat) -> Ival {
    if i == 0 {
        return Ival::zero();
    }
    let ir = Rat::from_integer(i.into());
    let mut power = num_traits::pow(ir.clone(), k + 1);
    let mut fact = Rat::one();
    let mut sum = Rat::zero();
    let mut m = 0usize;
    loop {
        let term = &power / (&fact * rat_u(m + k + 1));
        if rat_u(m + 1) > ir {
            let tail = &term / (Rat::one() - &ir / rat_u(m + 1));
            if tail <= *tol {
                return Ival::new(&sum - &tail, &sum + &tail).expect("tail >= 0");
            }
        }
        if m.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        m += 1;
        power *= &ir;
        fact *= rat_u(m);
    }
}

/// `|∫_0^i x^k Exp(-x)| <= i^{k+1} e^i` for all `i <= max_i`, `k <= max_k`,
/// certified, and with the exact value cross-checked against the series route.
pub fn check_fake_lm(max_i: u64, max_k: usize) -> Result<Check> {
    let mut out = Outcome::Pass;
    let mut first_bad = None;
    let mut cases = 0;
    let eps0 = Rat::new(1.into(), 1_000_000.into());
    for i in 0..=max_i {
        let ir = Rat::from_integer(i.into());
        for k in 0..=max_k {
            cases += 1;
            let exact = ExpPoly::poly_exp(&Poly::monomial(Rat::one(), k), -Rat::one())
                .newton_integral(&Rat::zero(), &ir);
            let bound = ENum::term(ir.clone(), num_traits::pow(ir.clone(), k + 1));
            let verdict = certify_le(
                |e| Ok(enclose_enum(&exact, e)?.abs()),
                |e| enclose_enum(&bound, e),
                &eps0,
            )?;
            let series = integral_xk_exp_neg(i, k, &eps0);
            let coherent = series.intersects(&enclose_enum(&exact, &eps0)?);
            let o = outcome(verdict).and(Outcome::from_bool(coherent));
            if !o.is_pass() && first_bad.is_none() {
                first_bad = Some((i, k, o));
            }
            out = out.and(o);
        }
    }
    Ok(Check::new(
        "hilbert.fake-lm",
        "|int_0^i x^k Exp(-x)| <= i^{k+1} e^i",
        out,
        match first_bad {
            None => format!("{cases} cases, i <= {max_i}, k <= {max_k}"),
            Some((i, k, o)) => format!("i={i}, k={k}: {o}"),
        },
    ))
}

/// `Σ |coefficients of (x-1)..(x-n)| = (n+1)!`, which bounds every
/// coefficient of `p_r` by `l^{r+1}`.
pub fn l_const(n: usize) -> Int {
    let roots = (1..=n).fold(Poly::<Rat>::one(), |acc, j| &acc * &Poly::from_ints([-(j as i64), 1]));
    roots
        .coeffs()
        .iter()
        .map(|c| c.abs().to_integer())
        .sum()
}

/// `c = 2 K l^2 n^{2(n+1)}` with `K = (Σ|a_j|)(n+1)·ub(e^{2n})`, so that
/// the per-`r` bound `K (r+1) l^{r+1} n^{(n+1)(r+1)}` is at most `c^r` for `r >= 1`.
pub fn analytic_c(inst: &HilbertInstance) -> Result<Rat> {
    let n = inst.n();
    let e2n = enclose_exp(&rat_u(2 * n), &Rat::one())?;
    let k = from_int(inst.abs_sum()) * rat_u(n + 1) * e2n.hi();
    let l = from_int(l_const(n));
    Ok(k * Rat::from_integer(2.into()) * &l * &l * num_traits::pow(rat_u(n), 2 * (n + 1)))
}

#[derive(Clone, Debug)]
pub struct ArBound {
    pub check: Check,
    pub c: Rat,
    pub l: Int,
}

/// Certifies, for one `r`: coefficients of `p_r` are at most `l^{r+1}`; each
/// `|∫_0^i p_r Exp(-x)| <= (n+1)(r+1) l^{r+1} n^{(n+1)(r+1)} e^n`;
/// `|A_r| <= Σ|a_i| e^i` times that; and `|A_r| <= c^r`. Enclosures start at
/// width `eps` and shrink on overlap.
pub fn check_ar_bound(inst: &HilbertInstance, r: usize, eps: &Rat) -> Result<ArBound> {
    let n = inst.n();
    let pr = build_pr(r, n);
    let l = l_const(n);
    let l_pow = from_int(num_traits::pow(l.clone(), r + 1));
    let coeffs_ok = pr.max_abs_coeff() <= l_pow;
    let per_integral =
        rat_u((n + 1) * (r + 1)) * &l_pow * num_traits::pow(rat_u(n), (n + 1) * (r + 1));
    let eps0 = eps.clone();
    let mut out = Outcome::from_bool(coeffs_ok);
    let f = ExpPoly::poly_exp(&pr, -Rat::one());
    for i in 0..=n {
        let integral = f.newton_integral(&Rat::zero(), &rat_u(i));
        let bound = ENum::term(rat_u(n), per_integral.clone());
        out = out.and(outcome(certify_le(
            |e| Ok(enclose_enum(&integral, e)?.abs()),
            |e| enclose_enum(&bound, e),
            &eps0,
        )?));
    }
    let explicit = ENum::from_terms(
        inst.a()
            .iter()
            .enumerate()
            .map(|(i, a)| (rat_u(i + n), from_int(a.abs()) * &per_integral)),
    );
    let (a_r, _) = compute_ar(inst, r, &eps0)?;
    let explicit_ok = certify_le(
        |e| Ok(enclose_enum(&a_r, e)?.abs()),
        |e| enclose_enum(&explicit, e),
        &eps0,
    )?;
    let c = analytic_c(inst)?;
    let c_pow = Ival::point(num_traits::pow(c.clone(), r));
    let c_ok = certify_le(|e| Ok(enclose_enum(&a_r, e)?.abs()), |_| Ok(c_pow.clone()), &eps0)?;
    out = out.and(outcome(explicit_ok)).and(outcome(c_ok));
    let check = Check::new(
        format!("hilbert.ar-bound.r{r}"),
        "|A_r| <= c^r via |int_0^i x^k Exp(-x)| <= i^{k+1} e^i",
        out,
        format!(
            "l = {l}; coefficients <= l^(r+1): {coeffs_ok}; explicit bound: {}; c^r bound: {}",
            outcome(explicit_ok),
            outcome(c_ok)
        ),
    );
    Ok(ArBound { check, c, l })
}

/// Enclosure of `A_r` assembled from the series route for
/// `∫_0^j x^k Exp(-x)` and enclosures of `e^j`, tuned to width about `eps`.
fn independent_ar(inst: &HilbertInstance, r: usize, eps: &Rat) -> Result<Ival> {
    let pr = build_pr(r, inst.n());
    let three = Rat::from_integer(3.into());
    let abs_coeffs: Rat = pr.coeffs().iter().map(Signed::abs).sum();
    let mut acc = Ival::zero();
    let terms = rat_u(inst.a().len());
    for (j, a) in inst.a().iter().enumerate() {
        if a.is_zero() || j == 0 {
            continue;
        }
        let a = from_int(a.clone());
        let e_j = num_traits::pow(three.clone(), j);
        let mag = &abs_coeffs * num_traits::pow(rat_u(j), pr.coeffs().len()) * &e_j + Rat::one();
        let budget = eps / (&terms * Rat::from_integer(4.into()) * a.abs());
        let tol_j = &budget / ((&abs_coeffs + Rat::one()) * &e_j);
        let integral = pr
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Ival::zero(), |s, (k, c)| {
                &s + &integral_xk_exp_neg(j as u64, k, &tol_j).scale(c)
            });
        let ej = enclose_exp(&rat_u(j), &(&budget / &mag))?;
        acc = &acc + &(&ej * &integral).scale(&a);
    }
    Ok(acc)
}

/// The tight enclosure of the exact `A_r` lies inside the independently
/// assembled enclosure.
pub fn check_ar_coherence(inst: &HilbertInstance, r: usize, eps: &Rat) -> Result<Check> {
    let (exact, _) = compute_ar(inst, r, eps)?;
    let indep = independent_ar(inst, r, eps)?;
    let mut tight = eps.clone();
    let mut out = Outcome::Undecided;
    let mut exact_iv = enclose_enum(&exact, &tight)?;
    for _ in 0..=MAX_REFINEMENTS {
        exact_iv = enclose_enum(&exact, &tight)?;
        if indep.contains_ival(&exact_iv) {
            out = Outcome::Pass;
            break;
        }
        if !indep.intersects(&exact_iv) {
            out = Outcome::Fail;
            break;
        }
        tight /= Rat::from_integer(16.into());
    }
    Ok(Check::new(
        format!("hilbert.ar-coherence.r{r}"),
        "exact A_r inside independent interval A_r",
        out,
        format!("exact {exact_iv} vs independent {indep}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn series_route_matches_exact() {
        // ∫_0^2 x e^{-x} = 1 - 3e^{-2}
        let exact = ENum::from_terms([(int(0), int(1)), (int(-2), int(-3))]);
        let tol = Rat::new(1.into(), 10_u64.pow(12).into());
        let iv = integral_xk_exp_neg(2, 1, &tol);
        assert!(iv.intersects(&enclose_enum(&exact, &tol).unwrap()));
        assert!(iv.lo() > &Rat::new(5939.into(), 10000.into()) && iv.hi() < &Rat::new(5940.into(), 10000.into()));
        assert_eq!(integral_xk_exp_neg(0, 3, &tol), Ival::zero());
    }

    #[test]
    fn fake_lm_small() {
        let c = check_fake_lm(3, 5).unwrap();
        assert!(c.passed(), "{c}");
    }

    #[test]
    fn l_values() {
        assert_eq!(l_const(1), Int::from(2));
        assert_eq!(l_const(2), Int::from(6));
        assert_eq!(l_const(3), Int::from(24));
    }

    #[test]
    fn max_coefficient_plus_one_is_too_small() {
        // max |coeff| of (x-1)(x-2) plus one is 4, yet p_r outgrows 4^{r+1}.
        let r = (1..40).find(|&r| build_pr(r, 2).max_abs_coeff() > from_int(Int::from(4).pow(r as u32 + 1)));
        assert!(r.is_some());
    }

    #[test]
    fn bound_holds() {
        let inst = HilbertInstance::new(vec![Int::from(2), Int::from(-1)]).unwrap();
        for r in 1..=4 {
            let b = check_ar_bound(&inst, r, &Rat::new(1.into(), 100_000_000.into())).unwrap();
            assert!(b.check.passed(), "{}", b.check);
        }
    }

    #[test]
    fn coherence_holds() {
        let inst = HilbertInstance::new(vec![Int::from(1), Int::from(-3), Int::from(1)]).unwrap();
        let eps = Rat::new(1.into(), 100_000_000.into());
        for r in 1..=3 {
            let c = check_ar_coherence(&inst, r, &eps).unwrap();
            assert!(c.passed(), "{c}");
        }
    }
}
