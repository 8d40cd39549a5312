use super::bbr::QPowerTable;
use crate::error::{Error, Result};
use crate::exactnum::{from_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Replay of the induction on `‖⟨k,n⟩‖ = n - 2tk` over the finite window.
#[derive(Clone, Debug)]
pub struct NormInduction {
    pub pass: bool,
    pub k0: usize,
    /// Entries `⟨k,n⟩` of the examined M-window: `k0 <= k < K` and
    /// `2tk <= n <= min(N, 2tK)`, the entries whose dependencies stay in the table.
    pub window_size: usize,
    /// Window entries proved zero by the induction.
    pub zero_marked: BTreeSet<(usize, usize)>,
    /// First N-region entry the oracle does not certify as zero.
    pub n_region_witness: Option<(usize, usize)>,
    /// First window entry the induction could not reach.
    pub stuck_at: Option<(usize, usize)>,
    /// Marked entries whose table value is nonzero; empty unless the oracle lies.
    pub unsound: Vec<(usize, usize)>,
    pub detail: String,
}

fn in_n_region(t: usize, k0: usize, k: usize, n: usize) -> bool {
    k >= k0 && t * k <= n && n <= 2 * t * k
}

/// Marks `⟨k,n⟩` in M zero when `β_0 = ⟨k+1,n⟩` and `β_i = ⟨k,n-i⟩` are all
/// known zero, proceeding by ascending norm. N-region entries are decided
/// by `zero_oracle`.
pub fn norm_induction(
    table: &QPowerTable,
    k0: usize,
    zero_oracle: impl Fn(usize, usize) -> bool,
) -> NormInduction {
    let t = table.t();
    let k0 = k0.max(1);
    let n_max = table.n_max();
    let k_top = table.k_max();
    let n_top = n_max.min(2 * t * k_top);
    let window_ks: Vec<usize> = (k0..k_top).filter(|&k| 2 * t * k <= n_top).collect();
    let window_size: usize = window_ks.iter().map(|&k| n_top + 1 - 2 * t * k).sum();

    let n_region_witness = (k0..=k_top)
        .flat_map(|k| (t * k..=(2 * t * k).min(n_max)).map(move |n| (k, n)))
        .find(|&(k, n)| !zero_oracle(k, n));

    let mut zero_marked = BTreeSet::new();
    let mut stuck_at = None;
    let max_norm = window_ks.first().map_or(0, |&k| n_top - 2 * t * k);
    for s in 0..=max_norm {
        for &k in &window_ks {
            let n = s + 2 * t * k;
            if n > n_top {
                continue;
            }
            let known = |kk: usize, nn: usize| {
                (in_n_region(t, k0, kk, nn) && zero_oracle(kk, nn)) || zero_marked.contains(&(kk, nn))
            };
            let deps_zero = known(k + 1, n) && (1..=t).all(|i| known(k, n - i));
            if deps_zero {
                zero_marked.insert((k, n));
            } else {
                stuck_at.get_or_insert((k, n));
            }
        }
    }
    let unsound: Vec<_> = zero_marked
        .iter()
        .copied()
        .filter(|&(k, n)| !table.get(k, n).is_zero())
        .collect();
    let pass = zero_marked.len() == window_size && unsound.is_empty();
    let detail = if window_size == 0 {
        format!("empty window for k0={k0}, N={n_max}, K={k_top}: vacuous")
    } else if pass {
        format!("k0={k0}: all {window_size} entries of the window are zero")
    } else {
        let mut d = format!("k0={k0}: {} of {window_size} window entries proved zero", zero_marked.len());
        if let Some((k, n)) = n_region_witness {
            d.push_str(&format!("; N-region entry v_{n}({k}) = {} is nonzero", table.get(k, n)));
        }
        d
    };
    NormInduction { pass, k0, window_size, zero_marked, n_region_witness, stuck_at, unsound, detail }
}

/// Outcome of the implication `|v_n| <= c A^n  =>  |v_n(k)| <= c A^n C^k`.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// No induction-step violation and, when the base holds, no bound violation.
    pub pass: bool,
    pub c: Rat,
    pub a: Rat,
    pub big_c: Int,
    /// First `n` with `|v_n| > c A^n`.
    pub base_first_violation: Option<usize>,
    /// `(k+1, n)` where all inputs obey the bound but the output does not.
    pub step_violations: Vec<(usize, usize)>,
    /// `(k, n)` violating the bound while the base holds.
    pub propagated_violations: Vec<(usize, usize)>,
    pub detail: String,
}

/// Checks the growth bound as an implication over the table window. `c`
/// must be nonnegative and `A >= 1`.
pub fn check_growth_items(table: &QPowerTable, a: &Rat, c: &Rat) -> Result<GrowthReport> {
    if c.is_negative() {
        return Err(Error::InvalidInstance("c must be nonnegative".into()));
    }
    if *a < Rat::one() {
        return Err(Error::InvalidInstance("A must be at least 1".into()));
    }
    let t = table.t();
    let big_c = table.a().iter().fold(Int::one(), |acc, x| acc + x.abs());
    let n_max = table.n_max();
    let a_pow: Vec<Rat> = std::iter::successors(Some(Rat::one()), |p| Some(p * a))
        .take(n_max + 1)
        .collect();
    let c_pow: Vec<Rat> = std::iter::successors(Some(Rat::one()), |p| Some(p * from_int(big_c.clone())))
        .take(table.k_max() + 1)
        .collect();
    let within = |k: usize, n: usize| from_int(table.get(k, n).abs()) <= c * &a_pow[n] * &c_pow[k];

    let base_first_violation = (0..=n_max).find(|&n| !within(0, n));
    let mut step_violations = Vec::new();
    for k in 0..table.k_max() {
        for n in t * (k + 1)..=n_max {
            if (0..=t).all(|i| within(k, n - i)) && !within(k + 1, n) {
                step_violations.push((k + 1, n));
            }
        }
    }
    let propagated_violations: Vec<_> = if base_first_violation.is_none() {
        (0..=table.k_max())
            .flat_map(|k| (t * k..=n_max).map(move |n| (k, n)))
            .filter(|&(k, n)| !within(k, n))
            .collect()
    } else {
        Vec::new()
    };
    let pass = step_violations.is_empty() && propagated_violations.is_empty();
    let mut detail = match base_first_violation {
        None => "base |v_n| <= c A^n holds on the window".to_string(),
        Some(n) => format!("base hypothesis |v_n| <= c A^n first fails at n={n}"),
    };
    detail.push_str(&format!(
        "; C={big_c}; step violations: {}; bound violations: {}",
        step_violations.len(),
        propagated_violations.len()
    ));
    Ok(GrowthReport {
        pass,
        c: c.clone(),
        a: a.clone(),
        big_c,
        base_first_violation,
        step_violations,
        propagated_violations,
        detail,
    })
}

/// `max_n |v_n| / A^n` over the table's row 0.
pub fn window_max_c(table: &QPowerTable, a: &Rat) -> Rat {
    let mut pow = Rat::one();
    let mut best = Rat::zero();
    for v in table.row(0) {
        let ratio = from_int(v.abs()) / &pow;
        if ratio > best {
            best = ratio;
        }
        pow *= a;
    }
    best
}

/// Least `k0 >= 1` with `k! > c A^{2tk} C^k` for every `k >= k0`.
pub fn least_k0(c: &Rat, a: &Rat, t: usize, big_c: &Int) -> usize {
    let g = num_traits::pow(a.clone(), 2 * t) * from_int(big_c.clone());
    let mut fact = Rat::one();
    let mut g_pow = Rat::one();
    let mut last_fail = 0;
    let mut k = 0usize;
    loop {
        k += 1;
        fact *= Rat::from_integer(Int::from(k));
        g_pow *= &g;
        let holds = fact > c * &g_pow;
        if !holds {
            last_fail = k;
        } else if Rat::from_integer(Int::from(k + 1)) >= g {
            // From here on k!/G^k is nondecreasing.
            return last_fail + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn ints(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn powers_of_two(n: usize, k: usize) -> QPowerTable {
        let base = (0..=n).map(|i| Int::from(2).pow(i as u32)).collect();
        QPowerTable::build(base, ints(&[2]), k)
    }

    fn genuine(n: usize, k: usize) -> QPowerTable {
        let mut v = vec![Int::one()];
        for i in 1..=n {
            let next = &v[i - 1] * Int::from(i) + 1;
            v.push(next);
        }
        QPowerTable::build(v, ints(&[1]), k)
    }

    #[test]
    fn rational_control_passes() {
        let tab = powers_of_two(60, 10);
        assert!(tab.row(1)[1..].iter().all(Zero::is_zero));
        let res = norm_induction(&tab, 1, |k, n| tab.get(k, n).is_zero());
        assert!(res.pass, "{}", res.detail);
        assert!(res.window_size > 0);
        assert_eq!(res.zero_marked.len(), res.window_size);
    }

    #[test]
    fn genuine_instance_fails() {
        let tab = genuine(40, 6);
        let res = norm_induction(&tab, 1, |k, n| tab.get(k, n).is_zero());
        assert!(!res.pass);
        assert_eq!(res.n_region_witness, Some((1, 1)));
        assert!(res.unsound.is_empty());
    }

    #[test]
    fn empty_window_is_vacuous() {
        let tab = genuine(3, 1);
        let res = norm_induction(&tab, 5, |_, _| false);
        assert!(res.pass);
        assert_eq!(res.window_size, 0);
    }

    #[test]
    fn lying_oracle_is_flagged() {
        let tab = genuine(20, 4);
        let res = norm_induction(&tab, 1, |_, _| true);
        assert!(!res.pass);
        assert!(!res.unsound.is_empty());
    }

    #[test]
    fn growth_examples() {
        let tab = genuine(20, 3);
        let rep = check_growth_items(&tab, &int(1), &int(4)).unwrap();
        assert_eq!(rep.base_first_violation, Some(2));
        assert!(rep.step_violations.is_empty());

        let tab = powers_of_two(30, 5);
        let rep = check_growth_items(&tab, &int(2), &int(1)).unwrap();
        assert_eq!(rep.big_c, Int::from(3));
        assert!(rep.pass && rep.base_first_violation.is_none());

        let tab = genuine(25, 4);
        let c = window_max_c(&tab, &int(1));
        let rep = check_growth_items(&tab, &int(1), &c).unwrap();
        assert!(rep.base_first_violation.is_none());
        assert!(rep.pass, "{}", rep.detail);

        assert!(check_growth_items(&tab, &int(1), &int(-1)).is_err());
    }

    #[test]
    fn k0_is_least() {
        for (c, a, t, bc) in [(1, 1, 1, 2), (100, 2, 1, 3), (5, 1, 2, 4), (1_000_000, 2, 2, 6)] {
            let (c, a, bc) = (int(c), int(a), Int::from(bc));
            let k0 = least_k0(&c, &a, t, &bc);
            let g = num_traits::pow(a.clone(), 2 * t) * from_int(bc.clone());
            let holds = |k: usize| {
                from_int(crate::exactnum::factorial(k)) > &c * num_traits::pow(g.clone(), k)
            };
            assert!((k0..k0 + 200).all(holds));
            if k0 > 1 {
                assert!(!holds(k0 - 1));
            }
        }
    }
}
