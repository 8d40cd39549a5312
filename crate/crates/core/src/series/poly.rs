use super::Coeff;
use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial; index `k` holds the coefficient of `x^k`. Trailing zeros
/// are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|a| a.scaled(r))
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.scaled(&Rat::from_integer(k.into())))
                .collect(),
        )
    }

    /// Formal primitive with zero constant term.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.scaled(&Rat::new(1.into(), (k + 1).into())));
        }
        Self::from_coeffs(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, a| acc.times(v).plus(a))
    }

    pub fn eval_rat(&self, v: &Rat) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, a| acc.scaled(v).plus(a))
    }

    /// The substitution `x -> x + b`, computed by Horner's scheme over polynomials.
    pub fn compose_shift(&self, b: &C) -> Self {
        let linear = Poly::from_coeffs(vec![b.clone(), C::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &linear) + &Self::constant(a.clone());
        }
        acc
    }

    pub fn shift_rat(&self, b: &Rat) -> Self {
        self.compose_shift(&C::from_rat(b.clone()))
    }

    /// The constant inner product `p(x) -> p(a x)`.
    pub fn inner_scale(&self, a: &Rat) -> Self {
        let mut power = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.scaled(&power));
            power *= a;
        }
        Self::from_coeffs(coeffs)
    }
}

impl Poly<Rat> {
    pub fn from_ints<I: Into<Int>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(|c| Rat::from_integer(c.into())).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is not an integer.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Euclidean division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolyOp<C: Coeff> {
    Add,
    Mul,
    ComposeShift(C),
    Eval(C),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolyOpOutput<C: Coeff> {
    Poly(Poly<C>),
    Scalar(C),
}

/// Operation dispatch; the unary operations ignore `q`.
pub fn poly_ops<C: Coeff>(p: &Poly<C>, q: &Poly<C>, op: PolyOp<C>) -> PolyOpOutput<C> {
    match op {
        PolyOp::Add => PolyOpOutput::Poly(p + q),
        PolyOp::Mul => PolyOpOutput::Poly(p * q),
        PolyOp::ComposeShift(b) => PolyOpOutput::Poly(p.compose_shift(&b)),
        PolyOp::Eval(v) => PolyOpOutput::Scalar(p.eval(&v)),
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k).minus(&rhs.coeff(k))).collect())
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map(Coeff::negated)
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$m:ident),*) => {$(
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
