use crate::check::Check;
use crate::error::Result;
use crate::exactnum::{enclose_enum, factorial, from_int, ENum, Rat};
use crate::exppoly::{numeric_improper_check, ExpPoly, ImproperCheck};
use crate::series::Poly;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct EulerVerdict {
    pub check: Check,
    pub improper: ImproperCheck,
    /// `I_k = k I_{k-1}` exactly (`I_0 = 1`).
    pub induction_ok: bool,
    /// Enclosures of `F_k(b) = b^k e^{-b}` end within `eps` of 0 on every sequence.
    pub limit_ok: bool,
}

fn f_k(k: usize) -> ExpPoly {
    ExpPoly::poly_exp(&Poly::monomial(Rat::one(), k), -Rat::one())
}

/// `∫_0^∞ x^k Exp(-x) = k!` through the sequence definition and through
/// the recursion `I_k = k I_{k-1} - lim (F_k(b) - F_k(0))`.
pub fn verify_euler_numeric(k: usize, sequences: &[Vec<Rat>], eps: &Rat) -> Result<EulerVerdict> {
    let claimed = ENum::rational(from_int(factorial(k)));
    let f = f_k(k);
    let improper = numeric_improper_check(&f, &Rat::zero(), &claimed, sequences, eps)?;

    let exact = f.improper_integral(&Rat::zero())?;
    let induction_ok = if k == 0 {
        exact == ENum::one()
    } else {
        let prev = f_k(k - 1).improper_integral(&Rat::zero())?;
        let k_r = Rat::from_integer(k.into());
        // F_k' = k F_{k-1} - F_k, and F_k has no rate-0 part, so its limit is 0.
        let deriv_ok = f.derivative() == f_k(k - 1).scale_rat(&k_r).sub(&f);
        deriv_ok && f.part(&Rat::zero()).is_none() && exact == prev.scale(&k_r)
    };

    let mut limit_ok = true;
    for seq in sequences {
        let Some(b) = seq.last() else {
            limit_ok = false;
            continue;
        };
        let iv = enclose_enum(&f.value(b), eps)?;
        limit_ok &= iv.abs().hi() <= eps;
    }
    let pass = improper.pass && induction_ok && limit_ok;
    let check = Check::from_bool(
        format!("euler.k{k}"),
        "int_0^inf x^k Exp(-x) = k!",
        pass,
        format!(
            "sequences settle: {}; I_k = k I_(k-1): {induction_ok}; F_k(b) -> 0: {limit_ok}; {}",
            improper.pass, improper.detail
        ),
    );
    Ok(EulerVerdict { check, improper, induction_ok, limit_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(start: i64, step: i64, end: i64) -> Vec<Rat> {
        (start..=end).step_by(step as usize).map(|x| Rat::from_integer(x.into())).collect()
    }

    #[test]
    fn small_k() {
        let eps = Rat::new(1.into(), 1_000_000.into());
        let seqs = [seq(5, 5, 50), seq(7, 7, 49)];
        for k in [0, 1, 5] {
            let v = verify_euler_numeric(k, &seqs, &(&eps * from_int(factorial(k)))).unwrap();
            assert!(v.check.passed(), "{}", v.check);
        }
    }

    #[test]
    fn single_sequence_rejected() {
        let eps = Rat::new(1.into(), 1_000_000.into());
        let v = verify_euler_numeric(2, &[seq(5, 5, 50)], &eps).unwrap();
        assert!(!v.check.passed());
    }
}
