use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::series::{Poly, TruncSeries};
use num_traits::{One, Zero};
use std::fmt;

/// `num/den` as a power series: coprime, with `den(0) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl RatFun {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::polynomial(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::InvalidInstance(
                "denominator vanishes at 0, so this is not a power series".into(),
            ));
        }
        let inv = d0.recip();
        Ok(RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn polynomial(p: Poly<Rat>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// `beta / (1 - alpha x)^order`.
    pub fn pole_term(beta: Rat, alpha: Rat, order: usize) -> Self {
        let base = Poly::from_coeffs(vec![Rat::one(), -alpha]);
        Self::new(Poly::constant(beta), base.pow(order)).expect("den(0) = 1")
    }

    pub fn num(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rat> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("product of unit-constant denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of unit-constant denominators")
    }

    pub fn mul_poly(&self, p: &Poly<Rat>) -> Self {
        self.mul(&Self::polynomial(p.clone()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    /// `(p/q)' = (p'q - p q')/q^2`.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("den(0)^2 = 1")
    }

    /// Coefficients `[x^0] .. [x^N]` by long division.
    pub fn expand(&self, horizon: usize) -> TruncSeries {
        TruncSeries::from_poly(&self.num, horizon)
            .div(&TruncSeries::from_poly(&self.den, horizon))
            .expect("den(0) = 1")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}
