use super::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// A formal power series known through `x^horizon`. Coefficients beyond the
/// horizon are unknown, never implicitly zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    /// `coeffs` holds `[x^0] .. [x^N]`; the horizon is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInstance(
                "a truncated series needs at least the constant coefficient".into(),
            ));
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn zero(horizon: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rat::zero(); horizon + 1],
        }
    }

    pub fn one(horizon: usize) -> Self {
        Self::from_poly(&Poly::one(), horizon)
    }

    pub fn from_poly(p: &Poly<Rat>, horizon: usize) -> Self {
        TruncSeries {
            coeffs: (0..=horizon).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn from_fn(horizon: usize, f: impl FnMut(usize) -> Rat) -> Self {
        TruncSeries {
            coeffs: (0..=horizon).map(f).collect(),
        }
    }

    pub fn horizon(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff_at(&self, n: usize) -> Result<&Rat> {
        self.coeffs.get(n).ok_or(Error::BeyondHorizon {
            n,
            horizon: self.horizon(),
        })
    }

    pub fn truncate(&self, horizon: usize) -> Self {
        let h = horizon.min(self.horizon());
        TruncSeries {
            coeffs: self.coeffs[..=h].to_vec(),
        }
    }

    /// The known part as a polynomial.
    pub fn to_poly(&self) -> Poly<Rat> {
        Poly::from_coeffs(self.coeffs.clone())
    }

    /// `c·f + d·g` at the smaller horizon.
    pub fn lincomb(c: &Rat, f: &Self, d: &Rat, g: &Self) -> Self {
        let h = f.horizon().min(g.horizon());
        Self::from_fn(h, |n| c * &f.coeffs[n] + d * &g.coeffs[n])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::lincomb(&Rat::one(), self, &Rat::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::lincomb(&Rat::one(), self, &-Rat::one(), other)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product; coefficient `n` needs only inputs up to `n`, so the
    /// horizon is the smaller input horizon.
    pub fn mul(&self, other: &Self) -> Self {
        let h = self.horizon().min(other.horizon());
        Self::from_fn(h, |n| {
            (0..=n).fold(Rat::zero(), |acc, k| {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    acc
                } else {
                    acc + a * &other.coeffs[n - k]
                }
            })
        })
    }

    /// Product with a polynomial, which is known everywhere; the horizon is kept.
    pub fn mul_poly(&self, p: &Poly<Rat>) -> Self {
        self.mul(&Self::from_poly(p, self.horizon()))
    }

    /// `f / g` for `[x^0]g != 0`.
    pub fn div(&self, g: &Self) -> Result<Self> {
        let g0 = g.coeffs[0].clone();
        if g0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let h = self.horizon().min(g.horizon());
        let mut out: Vec<Rat> = Vec::with_capacity(h + 1);
        for n in 0..=h {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !g.coeffs[k].is_zero() {
                    acc -= &g.coeffs[k] * &out[n - k];
                }
            }
            out.push(acc / &g0);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Coefficients `(n+1)·a_{n+1}`; the horizon drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.horizon() == 0 {
            return Err(Error::ZeroHorizon);
        }
        Ok(Self::from_fn(self.horizon() - 1, |n| {
            &self.coeffs[n + 1] * Rat::from_integer((n + 1).into())
        }))
    }

    /// Coefficients `a_{n-1}/n` with zero constant term; the horizon grows by one.
    pub fn primitive(&self) -> Self {
        Self::from_fn(self.horizon() + 1, |n| {
            if n == 0 {
                Rat::zero()
            } else {
                &self.coeffs[n - 1] / Rat::from_integer(n.into())
            }
        })
    }

    /// The constant inner product `f(x) -> f(a x)`.
    pub fn inner_scale(&self, a: &Rat) -> Self {
        let mut power = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power *= a;
        }
        TruncSeries { coeffs }
    }
}

/// `Exp` truncated at `horizon`: coefficients `1/n!`.
pub fn exp_series(horizon: usize) -> TruncSeries {
    TruncSeries::from_fn(horizon, |n| Rat::new(1.into(), factorial(n)))
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}; O(x^{})]", parts.join(", "), self.horizon() + 1)
    }
}
