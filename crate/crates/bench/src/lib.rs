//! Fixed workloads shared by the criterion benches.

use semiformal::{BbrInstance, HilbertInstance, Int, Poly, Rat, RatFun};

/// `Σ 1/n!` against `e`: the single-term instance `b = (1)`, `α = (1)`.
pub fn bbr_e() -> BbrInstance {
    BbrInstance::new(vec![Int::from(1)], vec![1]).expect("valid instance")
}

/// Three terms with mixed signs, `t = 3`.
pub fn bbr_mixed() -> BbrInstance {
    BbrInstance::new(vec![Int::from(2), Int::from(-3), Int::from(1)], vec![1, 2, 3])
        .expect("valid instance")
}

/// `2 - e`, degree one.
pub fn hilbert_linear() -> HilbertInstance {
    HilbertInstance::new(vec![Int::from(2), Int::from(-1)]).expect("valid instance")
}

/// `1 + 3e - e^2`, degree two.
pub fn hilbert_quadratic() -> HilbertInstance {
    HilbertInstance::new(vec![Int::from(1), Int::from(3), Int::from(-1)]).expect("valid instance")
}

/// `(1 + x) / ((1 - x)^2 (1 - 2x)(1 + 3x))`.
pub fn ratfun_four_poles() -> RatFun {
    let lin = |c: i64| Poly::from_coeffs(vec![Rat::from_integer(1.into()), Rat::from_integer(c.into())]);
    let den = &(&(&lin(-1) * &lin(-1)) * &lin(-2)) * &lin(3);
    RatFun::new(lin(1), den).expect("den(0) = 1")
}

pub fn tolerance(digits: u32) -> Rat {
    Rat::new(1.into(), Int::from(10).pow(digits))
}
