//! Exponential polynomials `Σ_c p_c(x)·Exp(c x)`: the class closed under
//! products, derivatives, primitives, shifts, constant inner products and
//! point evaluation, so every semiformal operation on it is exact.

mod improper;

pub use improper::{numeric_improper_check, ImproperCheck, SequenceTrace};

use crate::error::{Error, Result};
use crate::exactnum::{enclose_enum, factorial, format_rat, ENum, Ival, Rat};
use crate::series::Poly;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Parts keyed by rate, ascending. The rate-0 part is the pure polynomial
/// part; zero polynomials are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    parts: BTreeMap<Rat, Poly<ENum>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EpOp {
    Add,
    Mul,
    Scale(ENum),
}

/// Operation dispatch; `Scale` ignores `g`.
pub fn ep_arith(f: &ExpPoly, g: &ExpPoly, op: EpOp) -> ExpPoly {
    match op {
        EpOp::Add => f.add(g),
        EpOp::Mul => f.mul(g),
        EpOp::Scale(c) => f.scale(&c),
    }
}

/// JSON form of one part: the rate and the `(q:coeff)` lists of its
/// polynomial coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartRecord {
    pub rate: String,
    pub coefficients: Vec<Vec<String>>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn term(rate: Rat, p: Poly<ENum>) -> Self {
        let mut out = ExpPoly::zero();
        out.add_part(rate, p);
        out
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (Rat, Poly<ENum>)>) -> Self {
        let mut out = ExpPoly::zero();
        for (rate, p) in parts {
            out.add_part(rate, p);
        }
        out
    }

    pub fn constant(c: ENum) -> Self {
        Self::term(Rat::zero(), Poly::constant(c))
    }

    /// A rational polynomial with rate 0.
    pub fn poly(p: &Poly<Rat>) -> Self {
        Self::term(Rat::zero(), p.map(|c| ENum::rational(c.clone())))
    }

    /// `Exp(c x)`.
    pub fn exp_rate(c: Rat) -> Self {
        Self::term(c, Poly::one())
    }

    /// `p(x)·Exp(c x)` for a rational polynomial `p`.
    pub fn poly_exp(p: &Poly<Rat>, c: Rat) -> Self {
        Self::term(c, p.map(|a| ENum::rational(a.clone())))
    }

    fn add_part(&mut self, rate: Rat, p: Poly<ENum>) {
        if p.is_zero() {
            return;
        }
        let sum = match self.parts.remove(&rate) {
            Some(existing) => &existing + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.parts.insert(rate, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Rat, &Poly<ENum>)> {
        self.parts.iter()
    }

    pub fn part(&self, rate: &Rat) -> Option<&Poly<ENum>> {
        self.parts.get(rate)
    }

    /// True when every polynomial coefficient is a plain rational.
    pub fn has_rational_scalars(&self) -> bool {
        self.parts
            .values()
            .all(|p| p.coeffs().iter().all(|c| c.as_rational().is_some()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (rate, p) in &other.parts {
            out.add_part(rate.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExpPoly {
            parts: self.parts.iter().map(|(c, p)| (c.clone(), -p)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Rates add: `Exp(a x)·Exp(b x) = Exp((a+b) x)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ExpPoly::zero();
        for (a, p) in &self.parts {
            for (b, q) in &other.parts {
                out.add_part(a + b, p * q);
            }
        }
        out
    }

    pub fn scale(&self, c: &ENum) -> Self {
        Self::from_parts(self.parts.iter().map(|(r, p)| (r.clone(), p.scale(c))))
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        Self::from_parts(self.parts.iter().map(|(r, p)| (r.clone(), p.scale_rat(c))))
    }

    /// `(p·Exp(c x))' = (p' + c·p)·Exp(c x)` per part.
    pub fn derivative(&self) -> Self {
        Self::from_parts(
            self.parts
                .iter()
                .map(|(c, p)| (c.clone(), &p.derivative() + &p.scale_rat(c))),
        )
    }

    /// The primitive whose value at 0 is 0, i.e. the formal primitive.
    ///
    /// For a rate `c != 0`, `q' + c·q = p` is solved by back-substitution from
    /// the top degree: `q_d = p_d / c`, `q_k = (p_k - (k+1) q_{k+1}) / c`.
    pub fn primitive(&self) -> Self {
        let mut out = ExpPoly::zero();
        let mut at_zero = ENum::zero();
        for (c, p) in &self.parts {
            if c.is_zero() {
                out.add_part(c.clone(), p.primitive());
                continue;
            }
            let inv = c.recip();
            let Some(d) = p.degree() else { continue };
            let mut q = vec![ENum::zero(); d + 1];
            q[d] = p.coeff(d).scale(&inv);
            for k in (0..d).rev() {
                let carry = q[k + 1].scale(&Rat::from_integer((k + 1).into()));
                q[k] = (&p.coeff(k) - &carry).scale(&inv);
            }
            at_zero = &at_zero + &q[0];
            out.add_part(c.clone(), Poly::from_coeffs(q));
        }
        out.add_part(Rat::zero(), Poly::constant(-at_zero));
        out
    }

    /// `f(x+b)`: `p_c(x+b)·Exp(c(x+b)) = (e^{cb}·p_c(x+b))·Exp(c x)`.
    pub fn shift(&self, b: &Rat) -> Self {
        Self::from_parts(self.parts.iter().map(|(c, p)| {
            let factor = ENum::exp(c * b);
            (c.clone(), p.shift_rat(b).scale(&factor))
        }))
    }

    /// `f(a x)`: rate `c -> a·c` and `p_c(x) -> p_c(a x)`.
    pub fn inner_scale(&self, a: &Rat) -> Self {
        Self::from_parts(
            self.parts
                .iter()
                .map(|(c, p)| (c * a, p.inner_scale(a))),
        )
    }

    /// `Σ p_c(v)·e^{c v}`.
    pub fn value(&self, v: &Rat) -> ENum {
        self.parts.iter().fold(ENum::zero(), |acc, (c, p)| {
            &acc + &(&p.eval_rat(v) * &ENum::exp(c * v))
        })
    }

    /// `(∫f)(v) - (∫f)(u)`.
    pub fn newton_integral(&self, u: &Rat, v: &Rat) -> ENum {
        let prim = self.primitive();
        &prim.value(v) - &prim.value(u)
    }

    /// Whether the improper integral to `+∞` exists: every rate is negative.
    pub fn has_improper_limit(&self) -> bool {
        self.parts.keys().all(Signed::is_negative)
    }

    /// `∫_u^{+∞} f`. Each primitive part `q_c(x)·e^{c x}` with `c < 0` tends to
    /// zero, so the limit is the constant rate-0 part of the primitive.
    pub fn improper_integral(&self, u: &Rat) -> Result<ENum> {
        if let Some((c, _)) = self.parts.iter().find(|(c, _)| !c.is_negative()) {
            return Err(Error::NonexistentLimit(format!(
                "part with rate {c} does not decay at +infinity"
            )));
        }
        let prim = self.primitive();
        let limit = prim
            .part(&Rat::zero())
            .map(|p| p.coeff(0))
            .unwrap_or_else(ENum::zero);
        Ok(&limit - &prim.value(u))
    }

    /// Exact `[x^n]` of the series expansion, as an element of `ENum`.
    pub fn series_coeff(&self, n: usize) -> ENum {
        let mut acc = ENum::zero();
        for (c, p) in &self.parts {
            for (j, a) in p.coeffs().iter().enumerate().take(n + 1) {
                if a.is_zero() {
                    continue;
                }
                // [x^{n-j}] Exp(c x) = c^{n-j}/(n-j)!
                let m = n - j;
                let w = num_traits::pow(c.clone(), m) / Rat::from_integer(factorial(m));
                acc = &acc + &a.scale(&w);
            }
        }
        acc
    }

    /// Enclosures of width at most `eps` for `[x^0] .. [x^N]`.
    pub fn to_interval_series(&self, horizon: usize, eps: &Rat) -> Result<Vec<Ival>> {
        (0..=horizon)
            .map(|n| enclose_enum(&self.series_coeff(n), eps))
            .collect()
    }

    pub fn to_records(&self) -> Vec<PartRecord> {
        self.parts
            .iter()
            .map(|(c, p)| PartRecord {
                rate: format_rat(c),
                coefficients: p.coeffs().iter().map(ENum::to_strings).collect(),
            })
            .collect()
    }
}

/// `∫_0^∞ (Σ b_j x^j)·e^{-x} = Σ b_j · j!`.
pub fn euler_eval(p: &Poly<Rat>) -> Rat {
    let mut fact = Rat::one();
    let mut acc = Rat::zero();
    for (j, b) in p.coeffs().iter().enumerate() {
        if j > 0 {
            fact *= Rat::from_integer(j.into());
        }
        acc += b * &fact;
    }
    acc
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(c, p)| format!("[{p:?}]·Exp({c}x)"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
