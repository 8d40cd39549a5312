use super::{format_rat, Ival, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A finite rational-linear combination `Σ c_q · e^q` with rational exponents.
///
/// Equality is symbolic: two values are equal exactly when their coefficient
/// maps agree. Zero coefficients are never stored, so the empty map is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ENum {
    terms: BTreeMap<Rat, Rat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ENumOp {
    Add,
    Sub,
    Mul,
}

pub fn enum_arith(a: &ENum, b: &ENum, op: ENumOp) -> ENum {
    match op {
        ENumOp::Add => a + b,
        ENumOp::Sub => a - b,
        ENumOp::Mul => a * b,
    }
}

impl ENum {
    pub fn rational(c: Rat) -> Self {
        Self::term(Rat::zero(), c)
    }

    /// `e^q`.
    pub fn exp(q: Rat) -> Self {
        Self::term(q, Rat::one())
    }

    /// `c · e^q`.
    pub fn term(q: Rat, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        ENum { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut out = ENum::zero();
        for (q, c) in terms {
            out.add_term(q, c);
        }
        out
    }

    fn add_term(&mut self, q: Rat, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(q) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Terms ordered by ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, q: &Rat) -> Rat {
        self.terms.get(q).cloned().unwrap_or_else(Rat::zero)
    }

    /// The rational value when only the `e^0` term is present.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Rat::zero()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> ENum {
        if c.is_zero() {
            return ENum::zero();
        }
        ENum {
            terms: self.terms.iter().map(|(q, v)| (q.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `e^s`, shifting every exponent.
    pub fn shift_exponent(&self, s: &Rat) -> ENum {
        ENum {
            terms: self.terms.iter().map(|(q, v)| (q + s, v.clone())).collect(),
        }
    }

    /// Sorted `(q:coeff)` strings with both rationals as `p/q`.
    pub fn to_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(q, c)| format!("({}:{})", format_rat(q), format_rat(c)))
            .collect()
    }

    pub fn parse_strings<S: AsRef<str>>(items: &[S]) -> Result<ENum> {
        let mut out = ENum::zero();
        for item in items {
            let s = item.as_ref().trim();
            let inner = s
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    reason: "expected (q:coeff)".into(),
                })?;
            let (q, c) = inner.split_once(':').ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "missing ':'".into(),
            })?;
            out.add_term(super::parse_rat(q)?, super::parse_rat(c)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for ENum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, c)| {
                if q.is_zero() {
                    format!("{c}")
                } else {
                    format!("{c}·e^({q})")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for ENum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &ENum {
    type Output = ENum;
    fn add(self, rhs: &ENum) -> ENum {
        let mut out = self.clone();
        for (q, c) in &rhs.terms {
            out.add_term(q.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ENum {
    type Output = ENum;
    fn sub(self, rhs: &ENum) -> ENum {
        let mut out = self.clone();
        for (q, c) in &rhs.terms {
            out.add_term(q.clone(), -c);
        }
        out
    }
}

impl Mul for &ENum {
    type Output = ENum;
    fn mul(self, rhs: &ENum) -> ENum {
        let mut out = ENum::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p + q, a * b);
            }
        }
        out
    }
}

impl Neg for &ENum {
    type Output = ENum;
    fn neg(self) -> ENum {
        self.scale(&-Rat::one())
    }
}

impl Zero for ENum {
    fn zero() -> Self {
        ENum::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ENum {
    fn one() -> Self {
        ENum::rational(Rat::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$m:ident),*) => {$(
        impl $tr for ENum {
            type Output = ENum;
            fn $m(self, rhs: ENum) -> ENum {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for ENum {
    type Output = ENum;
    fn neg(self) -> ENum {
        -&self
    }
}

fn require_positive(eps: &Rat) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveEps(eps.to_string()))
    }
}

/// Certified enclosure of `e^q` of width at most `eps`.
///
/// For `q >= 0` the result is `[S_m, S_m + T_m]` where `S_m` is the partial sum
/// of `Σ q^n/n!` up to `n = m`, `T_m = |q^{m+1}/(m+1)!| / (1 - |q|/(m+2))`
/// bounds the tail, and `m` is the first index with `m + 2 > |q|` and
/// `T_m <= eps`. Negative exponents use the reciprocal of the enclosure of
/// `e^{|q|}`, whose width can only shrink because its lower end is at least 1.
pub fn enclose_exp(q: &Rat, eps: &Rat) -> Result<Ival> {
    require_positive(eps)?;
    if q.is_negative() {
        let pos = enclose_exp(&-q, eps)?;
        return pos.recip();
    }
    if q.is_zero() {
        return Ok(Ival::point(Rat::one()));
    }

    // term_n = q^n / n!
    let mut sum = Rat::one();
    let mut term = Rat::one();
    let mut m: usize = 0;
    loop {
        let next = &term * q / Rat::from_integer((m + 1).into());
        let m2 = Rat::from_integer((m + 2).into());
        if m2 > *q {
            let ratio = q / &m2;
            let tail = &next / (Rat::one() - ratio);
            if tail <= *eps {
                return Ival::new(sum.clone(), sum + tail);
            }
        }
        sum += &next;
        term = next;
        m += 1;
    }
}

/// Certified enclosure of `Σ c_q e^q` of width at most `eps`. The rational
/// (`q = 0`) term is exact; the budget is split evenly over the other terms.
pub fn enclose_enum(v: &ENum, eps: &Rat) -> Result<Ival> {
    require_positive(eps)?;
    let irrational = v.terms().filter(|(q, _)| !q.is_zero()).count();
    let mut acc = Ival::point(v.coeff(&Rat::zero()));
    if irrational == 0 {
        return Ok(acc);
    }
    let share = eps / Rat::from_integer(irrational.into());
    for (q, c) in v.terms().filter(|(q, _)| !q.is_zero()) {
        let per_term = &share / c.abs();
        let e = enclose_exp(q, &per_term)?;
        acc = &acc + &e.scale(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn e(q: i64) -> ENum {
        ENum::exp(int(q))
    }

    #[test]
    fn multiplication_adds_exponents() {
        assert_eq!(&e(1) * &e(1), e(2));
        let sum = &ENum::rational(int(3)) + &ENum::rational(int(-3));
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
        let lhs = &(&e(1) - &ENum::one()) * &(&e(1) + &ENum::one());
        assert_eq!(lhs, ENum::from_terms([(int(2), int(1)), (int(0), int(-1))]));
    }

    #[test]
    fn serialization_round_trip() {
        let v = ENum::from_terms([(int(1), int(-3)), (int(0), int(6)), (rat(-1, 2), rat(2, 7))]);
        let s = v.to_strings();
        assert_eq!(s, vec!["(-1/2:2/7)", "(0/1:6/1)", "(1/1:-3/1)"]);
        assert_eq!(ENum::parse_strings(&s).unwrap(), v);
    }

    #[test]
    fn exp_enclosures() {
        let zero = enclose_exp(&int(0), &int(1)).unwrap();
        assert_eq!(zero, Ival::point(int(1)));

        let eps = rat(1, 1_000_000);
        let e1 = enclose_exp(&int(1), &eps).unwrap();
        assert!(e1.width() <= eps);
        // e = 2.718281828459045235...
        let lo = rat(2_718_281_828_459_045, 1_000_000_000_000_000);
        let hi = rat(2_718_281_828_459_046, 1_000_000_000_000_000);
        assert!(e1.lo() <= &lo && e1.hi() >= &hi);

        let em2 = enclose_exp(&int(-2), &eps).unwrap();
        assert!(em2.width() <= eps);
        // e^-2 = 0.13533528323661269...
        assert!(em2.lo() <= &rat(1_353_352_832_366_126, 10_000_000_000_000_000));
        assert!(em2.hi() >= &rat(1_353_352_832_366_127, 10_000_000_000_000_000));
    }

    #[test]
    fn exp_enclosure_is_reproducible() {
        // m = 0: tail bound (1/1)/(1 - 1/2) = 2 <= 2, so the enclosure is [1, 3].
        let e1 = enclose_exp(&int(1), &int(2)).unwrap();
        assert_eq!(e1, Ival::new(int(1), int(3)).unwrap());
        // q = 3: the geometric majorant activates at m = 2.
        // S_2 = 1 + 3 + 9/2 = 17/2, next = 27/6 = 9/2, ratio 3/4, tail 18.
        let e3 = enclose_exp(&int(3), &int(18)).unwrap();
        assert_eq!(e3, Ival::new(rat(17, 2), rat(53, 2)).unwrap());
    }

    #[test]
    fn enum_enclosures() {
        let eps = rat(1, 10_000);
        assert_eq!(enclose_enum(&ENum::zero(), &eps).unwrap(), Ival::zero());
        assert_eq!(
            enclose_enum(&ENum::rational(rat(5, 2)), &eps).unwrap(),
            Ival::point(rat(5, 2))
        );
        let em1 = &e(1) - &ENum::one();
        let iv = enclose_enum(&em1, &eps).unwrap();
        assert!(iv.width() <= eps);
        assert!(iv.contains(&rat(171_828, 100_000)));
        assert!(enclose_enum(&em1, &int(0)).is_err());
    }

    fn small_enum() -> impl Strategy<Value = ENum> {
        prop::collection::vec((-3i64..=3, -9i64..=9, 1i64..=4), 0..4).prop_map(|ts| {
            ENum::from_terms(ts.into_iter().map(|(q, n, d)| (rat(q, 2), rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn commutative_ring(a in small_enum(), b in small_enum(), c in small_enum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &ENum::one(), a.clone());
        }

        #[test]
        fn rational_enclosure_is_exact(n in -50i64..50, d in 1i64..20, k in 1i64..8) {
            let v = ENum::rational(rat(n, d));
            let eps = rat(1, 10i64.pow(k as u32));
            let iv = enclose_enum(&v, &eps).unwrap();
            prop_assert!(iv.contains(&rat(n, d)));
        }

        #[test]
        fn enclosure_width_and_nesting(v in small_enum(), k in 1u32..6) {
            let coarse = enclose_enum(&v, &rat(1, 10i64.pow(k))).unwrap();
            let fine = enclose_enum(&v, &rat(1, 10i64.pow(k + 2))).unwrap();
            prop_assert!(coarse.width() <= rat(1, 10i64.pow(k)));
            prop_assert!(fine.width() <= rat(1, 10i64.pow(k + 2)));
            prop_assert!(coarse.intersects(&fine));
        }
    }
}
