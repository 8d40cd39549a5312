use super::Rat;
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Closed interval `[lo, hi]` with exact rational endpoints. No rounding is
/// ever needed, so every operation is the exact image hull.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ival {
    lo: Rat,
    hi: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvalOp {
    Add,
    Sub,
    Mul,
    Abs,
    Pow(u32),
}

/// Binary dispatch over [`IvalOp`]; unary operations ignore `b`.
pub fn ival_arith(a: &Ival, b: &Ival, op: IvalOp) -> Ival {
    match op {
        IvalOp::Add => a + b,
        IvalOp::Sub => a - b,
        IvalOp::Mul => a * b,
        IvalOp::Abs => a.abs(),
        IvalOp::Pow(k) => a.pow(k),
    }
}

impl Ival {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Ival { lo, hi })
    }

    pub fn point(x: Rat) -> Self {
        Ival {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_ival(&self, other: &Ival) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Ival) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn hull(&self, other: &Ival) -> Ival {
        Ival {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Widens both ends by `r >= 0`.
    pub fn inflate(&self, r: &Rat) -> Ival {
        Ival {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn scale(&self, c: &Rat) -> Ival {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Ival { lo: b, hi: a }
        } else {
            Ival { lo: a, hi: b }
        }
    }

    pub fn abs(&self) -> Ival {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Ival {
                lo: Rat::zero(),
                hi: (-&self.lo).max(self.hi.clone()),
            }
        }
    }

    pub fn pow(&self, k: u32) -> Ival {
        if k == 0 {
            return Ival::point(Rat::from_integer(1.into()));
        }
        let base = if k.is_multiple_of(2) { self.abs() } else { self.clone() };
        Ival {
            lo: num_traits::pow(base.lo, k as usize),
            hi: num_traits::pow(base.hi, k as usize),
        }
    }

    pub fn recip(&self) -> Result<Ival> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Ival {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Certified `self <= other`: `Some(true)` when every point of `self` is at
    /// most every point of `other`, `Some(false)` when every point is larger,
    /// `None` when the enclosures overlap.
    pub fn certainly_le(&self, other: &Ival) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }
}

impl fmt::Debug for Ival {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for Ival {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Ival {
    type Output = Ival;
    fn add(self, rhs: &Ival) -> Ival {
        Ival {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Ival {
    type Output = Ival;
    fn sub(self, rhs: &Ival) -> Ival {
        Ival {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Ival {
    type Output = Ival;
    fn mul(self, rhs: &Ival) -> Ival {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Ival { lo, hi }
    }
}

impl Neg for &Ival {
    type Output = Ival;
    fn neg(self) -> Ival {
        Ival {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$m:ident),*) => {$(
        impl $tr for Ival {
            type Output = Ival;
            fn $m(self, rhs: Ival) -> Ival {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Ival {
    type Output = Ival;
    fn neg(self) -> Ival {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn iv(lo: i64, hi: i64) -> Ival {
        Ival::new(int(lo), int(hi)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(ival_arith(&iv(1, 2), &iv(3, 4), IvalOp::Add), iv(4, 6));
        assert_eq!(ival_arith(&iv(-1, 2), &iv(-1, 2), IvalOp::Mul), iv(-2, 4));
        assert_eq!(iv(-3, 1).abs(), iv(0, 3));
        assert_eq!(iv(-3, 1).pow(2), iv(0, 9));
        assert_eq!(iv(-3, -1).pow(3), iv(-27, -1));
        assert_eq!(iv(-3, 1).pow(0), iv(1, 1));
        assert_eq!(iv(1, 2) - iv(3, 4), iv(-3, -1));
    }

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(Ival::new(int(2), int(1)).is_err());
        assert!(iv(-1, 1).recip().is_err());
        assert_eq!(iv(2, 4).recip().unwrap(), Ival::new(rat(1, 4), rat(1, 2)).unwrap());
    }

    fn small_ival() -> impl Strategy<Value = (Ival, Rat)> {
        (-20i64..20, 0i64..10, 0i64..=100).prop_map(|(lo, w, t)| {
            let lo = rat(lo, 3);
            let hi = &lo + rat(w, 2);
            let x = &lo + (&hi - &lo) * rat(t, 100);
            (Ival::new(lo, hi).unwrap(), x)
        })
    }

    proptest! {
        #[test]
        fn soundness((a, x) in small_ival(), (b, y) in small_ival(), k in 0u32..5) {
            prop_assert!(ival_arith(&a, &b, IvalOp::Add).contains(&(&x + &y)));
            prop_assert!(ival_arith(&a, &b, IvalOp::Sub).contains(&(&x - &y)));
            prop_assert!(ival_arith(&a, &b, IvalOp::Mul).contains(&(&x * &y)));
            prop_assert!(ival_arith(&a, &b, IvalOp::Abs).contains(&x.abs()));
            prop_assert!(ival_arith(&a, &b, IvalOp::Pow(k)).contains(&num_traits::pow(x.clone(), k as usize)));
        }
    }
}
