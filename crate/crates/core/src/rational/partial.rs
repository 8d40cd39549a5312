use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::series::{Poly, TruncSeries};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// One summand `beta / (1 - alpha x)^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfTerm {
    pub alpha: Rat,
    pub order: usize,
    pub beta: Rat,
}

/// `r(x) + Σ_j Σ_{i=1..m_j} β_{j,i}/(1 - α_j x)^i`, alphas ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly_part: Poly<Rat>,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RatFun {
        self.terms.iter().fold(RatFun::polynomial(self.poly_part.clone()), |acc, t| {
            acc.add(&RatFun::pole_term(t.beta.clone(), t.alpha.clone(), t.order))
        })
    }

    /// `(1/alpha, m)` for every alpha, ascending in alpha.
    pub fn poles(&self) -> Vec<(Rat, usize)> {
        let mut out: Vec<(Rat, usize)> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some((p, m)) if *p == t.alpha.recip() => *m = (*m).max(t.order),
                _ => out.push((t.alpha.recip(), t.order)),
            }
        }
        out
    }
}

fn divisors(n: &Int) -> Result<Vec<Int>> {
    let n = n.abs().to_u64().ok_or_else(|| {
        Error::InvalidInstance("coefficient too large for rational-root search".into())
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(Int::from(d));
            if d * d != n {
                large.push(Int::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn integer_multiple(p: &Poly<Rat>) -> Vec<Int> {
    let l = p
        .coeffs()
        .iter()
        .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
        .collect()
}

/// Rational roots of `p` with multiplicities, ascending. Errors if a factor
/// without rational roots remains.
pub fn rational_roots(p: &Poly<Rat>) -> Result<Vec<(Rat, usize)>> {
    let Some(deg) = p.degree() else {
        return Err(Error::DivisionByZero);
    };
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut zero_mult = 0;
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        rest = Poly::from_coeffs(rest.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rat::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let z = integer_multiple(&rest);
        let tops = divisors(&z[z.len() - 1])?;
        let bottoms = divisors(&z[0])?;
        let mut candidates: Vec<Rat> = bottoms
            .iter()
            .flat_map(|p| tops.iter().map(move |q| Rat::new(p.clone(), q.clone())))
            .flat_map(|r| [r.clone(), -r])
            .collect();
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let lin = Poly::from_coeffs(vec![-cand.clone(), Rat::one()]);
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 && rest.eval(&cand).is_zero() {
                rest = rest.div_rem(&lin)?.0;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        return Err(Error::IrreducibleFactor { degree: d });
    }
    debug_assert_eq!(out.iter().map(|(_, m)| m).sum::<usize>(), deg);
    out.sort();
    Ok(out)
}

/// `p(a + b y)` as a polynomial in `y`.
fn compose_affine(p: &Poly<Rat>, a: &Rat, b: &Rat) -> Poly<Rat> {
    let lin = Poly::from_coeffs(vec![a.clone(), b.clone()]);
    p.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
}

pub fn partial_fractions(f: &RatFun) -> Result<PartialFractions> {
    let (poly_part, rem) = f.num().div_rem(f.den())?;
    let den = f.den();
    let deg = den.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(PartialFractions { poly_part, terms: Vec::new() });
    }
    // x^d den(1/x) has the alphas as roots.
    let reversed = Poly::from_coeffs(den.coeffs().iter().rev().cloned().collect());
    let mut terms = Vec::new();
    for (alpha, m) in rational_roots(&reversed)? {
        let factor = Poly::from_coeffs(vec![Rat::one(), -alpha.clone()]).pow(m);
        let (g, r) = den.div_rem(&factor)?;
        debug_assert!(r.is_zero());
        // x = (1 - y)/alpha, so 1 - alpha x = y and rem/den = h(y)/y^m.
        let a = alpha.recip();
        let b = -a.clone();
        let num_y = TruncSeries::from_poly(&compose_affine(&rem, &a, &b), m - 1);
        let den_y = TruncSeries::from_poly(&compose_affine(&g, &a, &b), m - 1);
        let h = num_y.div(&den_y)?;
        for s in 0..m {
            let beta = h.coeffs()[s].clone();
            if !beta.is_zero() {
                terms.push(PfTerm { alpha: alpha.clone(), order: m - s, beta });
            }
        }
    }
    terms.sort_by(|x, y| x.alpha.cmp(&y.alpha).then(x.order.cmp(&y.order)));
    Ok(PartialFractions { poly_part, terms })
}

#[derive(Clone, Debug)]
pub struct PoleVerdict {
    pub pass: bool,
    pub result: RatFun,
    /// `(pole, order)` of `p A + c x^m A'`.
    pub poles: Vec<(Rat, usize)>,
    /// Poles of `c x^m A'`, present when `A` is not a polynomial.
    pub reference_poles: Option<Vec<(Rat, usize)>>,
    pub detail: String,
}

/// Forms `p A + c x^m A'` and inspects its pole orders.
pub fn check_pole_prop(p: &Poly<Rat>, m: usize, c: &Rat, a: &RatFun) -> Result<PoleVerdict> {
    if c.is_zero() {
        return Err(Error::InvalidInstance("c must be nonzero".into()));
    }
    let deriv_term = a
        .derivative()
        .mul_poly(&Poly::monomial(c.clone(), m));
    let result = a.mul_poly(p).add(&deriv_term);
    let poles = partial_fractions(&result)?.poles();
    let reference_poles = if a.is_polynomial() {
        None
    } else {
        Some(partial_fractions(&deriv_term)?.poles())
    };
    let orders_ok = poles.iter().all(|&(_, ord)| ord >= 2);
    let same = reference_poles.as_ref().is_none_or(|r| *r == poles);
    let pass = orders_ok && same;
    let detail = if result.is_polynomial() {
        "result is a polynomial".to_string()
    } else {
        let list: Vec<String> = poles.iter().map(|(p, o)| format!("{p}^{o}")).collect();
        format!(
            "poles {}; orders >= 2: {orders_ok}; matches c x^m A': {same}",
            list.join(", ")
        )
    };
    Ok(PoleVerdict { pass, result, poles, reference_poles, detail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs.iter().copied())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        let pf = partial_fractions(&rf(&[1], &[1, -3, 2])).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                PfTerm { alpha: int(1), order: 1, beta: int(-1) },
                PfTerm { alpha: int(2), order: 1, beta: int(2) },
            ]
        );
        assert_eq!(pf.poles(), vec![(int(1), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn polynomial_and_double_pole() {
        let pf = partial_fractions(&rf(&[0, 1], &[1])).unwrap();
        assert_eq!(pf.poly_part, p(&[0, 1]));
        assert!(pf.terms.is_empty());
        let pf = partial_fractions(&rf(&[1], &[1, -2, 1])).unwrap();
        assert_eq!(pf.terms, vec![PfTerm { alpha: int(1), order: 2, beta: int(1) }]);
    }

    #[test]
    fn recombination_round_trip() {
        // (3 - x + 5x^3) / ((1 - x)^2 (1 + 2x)(1 - x/3))
        let den = &(&p(&[1, -1]).pow(2) * &p(&[1, 2])) * &Poly::from_coeffs(vec![int(1), rat(-1, 3)]);
        let f = RatFun::new(p(&[3, -1, 0, 5]), den).unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.recombine(), f);
        assert_eq!(partial_fractions(&pf.recombine()).unwrap(), pf);
        assert_eq!(pf.recombine().expand(30), f.expand(30));
    }

    #[test]
    fn irreducible_denominator() {
        assert_eq!(
            partial_fractions(&rf(&[1], &[1, 0, 1])),
            Err(Error::IrreducibleFactor { degree: 2 })
        );
    }

    #[test]
    fn roots_with_multiplicity() {
        let q = &p(&[0, 0, 1]) * &(&p(&[-2, 3]).pow(3) * &p(&[1, 1]));
        assert_eq!(
            rational_roots(&q).unwrap(),
            vec![(int(-1), 1), (int(0), 2), (rat(2, 3), 3)]
        );
    }

    #[test]
    fn pole_prop_examples() {
        let a = rf(&[1], &[1, -1]);
        let v = check_pole_prop(&p(&[1]), 2, &int(1), &a).unwrap();
        assert!(v.pass);
        assert_eq!(v.poles, vec![(int(1), 2)]);

        let v = check_pole_prop(&p(&[1]), 2, &int(1), &RatFun::polynomial(p(&[0, 1]))).unwrap();
        assert!(v.pass && v.poles.is_empty() && v.result.is_polynomial());

        let v = check_pole_prop(&p(&[1, -1]), 0, &int(1), &a).unwrap();
        assert!(v.pass);
        assert_eq!(v.poles, vec![(int(1), 2)]);
        assert_eq!(v.reference_poles, Some(vec![(int(1), 2)]));

        assert!(check_pole_prop(&p(&[1]), 0, &int(0), &a).is_err());
    }
}
