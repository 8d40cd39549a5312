use crate::exactnum::{ENum, Rat};
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};

/// Scalar ring for polynomial coefficients. Implemented for [`Rat`] and for
/// [`ENum`], which appears once exponential polynomials are shifted.
pub trait Coeff: Clone + PartialEq + Debug + Display + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rat) -> Self;
    fn from_rat(r: Rat) -> Self;
}

impl Coeff for Rat {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rat) -> Self {
        self * r
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
}

impl Coeff for ENum {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn from_rat(r: Rat) -> Self {
        ENum::rational(r)
    }
}
