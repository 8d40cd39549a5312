//! Seeded generators of small random test objects.

use crate::exactnum::{ENum, Int, Rat};
use crate::exppoly::ExpPoly;
use crate::rational::{BbrInstance, RatFun};
use crate::series::{Poly, TruncSeries};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type SuiteRng = ChaCha8Rng;

/// `p/q` with `|p| <= 9`, `1 <= q <= 6`.
pub fn small_rat(rng: &mut SuiteRng) -> Rat {
    Rat::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into())
}

pub fn nonzero_rat(rng: &mut SuiteRng) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// Points and rates from a short grid of halves in `[-2, 2]`.
pub fn grid_rat(rng: &mut SuiteRng) -> Rat {
    Rat::new(rng.gen_range(-4i64..=4).into(), 2.into())
}

pub fn negative_rate(rng: &mut SuiteRng) -> Rat {
    Rat::new(rng.gen_range(-4i64..=-1).into(), 2.into())
}

pub fn rat_poly(rng: &mut SuiteRng, max_deg: usize) -> Poly<Rat> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| small_rat(rng)).collect())
}

pub fn series(rng: &mut SuiteRng, horizon: usize) -> TruncSeries {
    TruncSeries::from_fn(horizon, |_| small_rat(rng))
}

/// One to three terms `c e^q` with `q` on the half grid.
pub fn enumber(rng: &mut SuiteRng) -> ENum {
    let n = rng.gen_range(1..=3);
    ENum::from_terms((0..n).map(|_| (grid_rat(rng), small_rat(rng))))
}

fn enum_poly(rng: &mut SuiteRng, max_deg: usize, rational_only: bool) -> Poly<ENum> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs(
        (0..=deg)
            .map(|_| {
                if rational_only {
                    ENum::rational(small_rat(rng))
                } else {
                    enumber(rng)
                }
            })
            .collect(),
    )
}

fn exppoly_with(rng: &mut SuiteRng, rate: fn(&mut SuiteRng) -> Rat, rational_only: bool) -> ExpPoly {
    let n = rng.gen_range(1..=3);
    ExpPoly::from_parts((0..n).map(|_| (rate(rng), enum_poly(rng, 2, rational_only))).collect::<Vec<_>>())
}

/// Up to three parts, rates on the half grid, `ENum` coefficients.
pub fn exppoly(rng: &mut SuiteRng) -> ExpPoly {
    exppoly_with(rng, grid_rat, false)
}

/// Every rate negative, so improper integrals to `+∞` exist.
pub fn decaying_exppoly(rng: &mut SuiteRng) -> ExpPoly {
    exppoly_with(rng, negative_rate, false)
}

/// Rational scalars only.
pub fn rational_exppoly(rng: &mut SuiteRng) -> ExpPoly {
    exppoly_with(rng, grid_rat, true)
}

const ALPHAS: [(i64, i64); 7] = [(1, 1), (2, 1), (3, 1), (-1, 1), (1, 2), (-2, 3), (5, 2)];

/// `num / Π (1 - α x)^m` with one or two distinct rational `α`, `m <= 3`.
pub fn ratfun(rng: &mut SuiteRng) -> RatFun {
    let k = rng.gen_range(1..=2);
    let alphas: Vec<_> = ALPHAS.choose_multiple(rng, k).copied().collect();
    let den = alphas.iter().fold(Poly::one(), |acc, &(p, q)| {
        let m = rng.gen_range(1..=3);
        let lin = Poly::from_coeffs(vec![Rat::from_integer(1.into()), -Rat::new(p.into(), q.into())]);
        &acc * &lin.pow(m)
    });
    let mut num = rat_poly(rng, 3);
    if num.is_zero() {
        num = Poly::one();
    }
    RatFun::new(num, den).expect("den(0) = 1")
}

/// `t <= 2`, `b_j` in `[-3, 3] \ {0}`, distinct `α_j <= 4`.
pub fn bbr_instance(rng: &mut SuiteRng) -> BbrInstance {
    let t = rng.gen_range(1..=2);
    let alphas: Vec<u64> = [1u64, 2, 3, 4].choose_multiple(rng, t).copied().collect();
    let b = (0..t)
        .map(|_| {
            let v = rng.gen_range(1i64..=3);
            Int::from(if rng.gen_bool(0.5) { v } else { -v })
        })
        .collect();
    BbrInstance::new(b, alphas).expect("valid by construction")
}

/// `a_0 != 0`, `n <= 2`, entries in `[-4, 4]`.
pub fn hilbert_coeffs(rng: &mut SuiteRng) -> Vec<Int> {
    let n = rng.gen_range(1..=2);
    let mut a: Vec<Int> = (0..=n).map(|_| Int::from(rng.gen_range(-4i64..=4))).collect();
    if a[0] == Int::from(0) {
        a[0] = Int::from(1);
    }
    a
}
