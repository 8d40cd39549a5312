use super::induction::{
    check_growth_items, least_k0, norm_induction, window_max_c, GrowthReport, NormInduction,
};
use super::ratfun::RatFun;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, from_int, Int, Rat};
use crate::series::{Poly, TruncSeries};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Data `b_1..b_t` (nonzero) and distinct positive integers `α_1..α_t`
/// defining `u_n = Σ b_j α_j^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbrInstance {
    b: Vec<Int>,
    alpha: Vec<u64>,
}

impl BbrInstance {
    pub fn new(b: Vec<Int>, alpha: Vec<u64>) -> Result<Self> {
        if b.is_empty() || b.len() != alpha.len() {
            return Err(Error::InvalidInstance(
                "b and alpha must be nonempty and of equal length".into(),
            ));
        }
        if b.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInstance("every b_j must be nonzero".into()));
        }
        if alpha.contains(&0) {
            return Err(Error::InvalidInstance("every alpha_j must be positive".into()));
        }
        let mut sorted = alpha.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alpha.len() {
            return Err(Error::InvalidInstance("alpha_j must be distinct".into()));
        }
        Ok(BbrInstance { b, alpha })
    }

    pub fn b(&self) -> &[Int] {
        &self.b
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn t(&self) -> usize {
        self.b.len()
    }

    /// `A = max α_j`.
    pub fn a_max(&self) -> u64 {
        *self.alpha.iter().max().expect("t >= 1")
    }

    /// `q(x) = Π (1 - α_j x)`.
    pub fn q_poly(&self) -> Poly<Rat> {
        self.alpha.iter().fold(Poly::one(), |acc, &a| {
            &acc * &Poly::from_ints([Int::one(), -Int::from(a)])
        })
    }

    /// `a_1..a_t` with `q(x) = 1 - a_1 x - .. - a_t x^t`.
    pub fn q_coeffs(&self) -> Vec<Int> {
        let q = self.q_poly().to_ints().expect("integer roots");
        (1..=self.t()).map(|i| -q[i].clone()).collect()
    }

    /// `C = 1 + Σ |a_i|`.
    pub fn c_const(&self) -> Int {
        self.q_coeffs().iter().fold(Int::one(), |acc, a| acc + a.abs())
    }

    /// `u_0..u_N`.
    pub fn u(&self, n_max: usize) -> Vec<Int> {
        let mut pow: Vec<Int> = self.b.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for _ in 0..=n_max {
            out.push(pow.iter().sum());
            for (p, &a) in pow.iter_mut().zip(&self.alpha) {
                *p *= a;
            }
        }
        out
    }
}

/// Rows `v_n(k) = [x^n] q(x)^k · Σ s_n x^n` for `0 <= k <= K`, `0 <= n <= N`,
/// built by repeated truncated multiplication by `q = 1 - Σ a_i x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPowerTable {
    a: Vec<Int>,
    rows: Vec<Vec<Int>>,
}

impl QPowerTable {
    pub fn build(base: Vec<Int>, a: Vec<Int>, k_max: usize) -> Self {
        let mut rows = vec![base];
        for _ in 0..k_max {
            let prev = rows.last().expect("row 0");
            let next = (0..prev.len())
                .map(|n| {
                    let mut acc = prev[n].clone();
                    for (i, ai) in a.iter().enumerate().take(n) {
                        acc -= ai * &prev[n - i - 1];
                    }
                    acc
                })
                .collect();
            rows.push(next);
        }
        QPowerTable { a, rows }
    }

    pub fn a(&self) -> &[Int] {
        &self.a
    }

    pub fn t(&self) -> usize {
        self.a.len()
    }

    pub fn n_max(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, k: usize) -> &[Int] {
        &self.rows[k]
    }

    pub fn get(&self, k: usize, n: usize) -> &Int {
        &self.rows[k][n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VTable {
    pub u: Vec<Int>,
    pub v: Vec<Int>,
    pub table: QPowerTable,
}

impl VTable {
    pub fn n_max(&self) -> usize {
        self.table.n_max()
    }

    pub fn k_max(&self) -> usize {
        self.table.k_max()
    }

    pub fn vk(&self, k: usize, n: usize) -> &Int {
        self.table.get(k, n)
    }
}

pub fn build_vtable(inst: &BbrInstance, n_max: usize, k_max: usize) -> Result<VTable> {
    if n_max < inst.t() * k_max {
        return Err(Error::InvalidInstance(format!(
            "depth N = {n_max} must be at least t*K = {}",
            inst.t() * k_max
        )));
    }
    let u = inst.u(n_max);
    let mut v: Vec<Int> = Vec::with_capacity(n_max + 1);
    for (n, un) in u.iter().enumerate() {
        let prev = v.last().map_or_else(Int::zero, |p| p * Int::from(n));
        v.push(prev + un);
    }
    let table = QPowerTable::build(v.clone(), inst.q_coeffs(), k_max);
    Ok(VTable { u, v, table })
}

fn falling(n: usize, m: usize) -> Int {
    (0..m).fold(Int::one(), |acc, i| acc * Int::from(n as i64 - i as i64))
}

fn first_bad(mut it: impl Iterator<Item = (usize, usize, bool)>) -> Option<(usize, usize)> {
    it.find(|(_, _, ok)| !ok).map(|(k, n, _)| (k, n))
}

/// `v_n(k+1) = v_n(k) - Σ a_i v_{n-i}(k)` for `n >= t`, `k < K`, with the
/// `a_i` re-derived from the instance.
pub fn check_vk_recurrence(tab: &VTable, inst: &BbrInstance) -> Check {
    let a = inst.q_coeffs();
    let t = a.len();
    let entries = (0..tab.k_max()).flat_map(|k| (t..=tab.n_max()).map(move |n| (k, n)));
    let bad = first_bad(entries.clone().map(|(k, n)| {
        let rhs = a.iter().enumerate().fold(tab.vk(k, n).clone(), |acc, (i, ai)| {
            acc - ai * tab.vk(k, n - i - 1)
        });
        (k, n, *tab.vk(k + 1, n) == rhs)
    }));
    let count = entries.count();
    Check::from_bool(
        "bbr.vk-recurrence",
        "v_n(k+1) = v_n(k) - sum a_i v_{n-i}(k)",
        bad.is_none() && tab.table.row(0) == &tab.v[..],
        match bad {
            None => format!("{count} entries"),
            Some((k, n)) => format!("mismatch at k={k}, n={n}"),
        },
    )
}

/// `v_n = Σ_{r<k} (n)_r u_{n-r} + (n)_k v_{n-k}` for all `n <= N`.
pub fn check_combination(tab: &VTable, k: usize) -> Check {
    let at = |s: &[Int], i: isize| if i < 0 { Int::zero() } else { s[i as usize].clone() };
    let bad = (0..=tab.n_max()).find(|&n| {
        let n_i = n as isize;
        let mut rhs: Int = (0..k).map(|r| falling(n, r) * at(&tab.u, n_i - r as isize)).sum();
        rhs += falling(n, k) * at(&tab.v, n_i - k as isize);
        rhs != tab.v[n]
    });
    Check::from_bool(
        format!("bbr.combination.k{k}"),
        "v_n = sum_{r<k} (n)_r u_{n-r} + (n)_k v_{n-k}",
        bad.is_none(),
        match bad {
            None => format!("k={k}, n=0..{}", tab.n_max()),
            Some(n) => format!("k={k}: mismatch at n={n}"),
        },
    )
}

/// `k! | v_n(k)` for `tk <= n <= N`, `k <= K`.
pub fn check_divisibility(tab: &VTable, inst: &BbrInstance) -> Check {
    let t = inst.t();
    let mut count = 0usize;
    let mut bad = None;
    'outer: for k in 0..=tab.k_max() {
        let f = factorial(k);
        for n in t * k..=tab.n_max() {
            count += 1;
            if !tab.vk(k, n).is_multiple_of(&f) {
                bad = Some((k, n));
                break 'outer;
            }
        }
    }
    Check::from_bool(
        "bbr.divisibility",
        "k! divides v_n(k) for n >= tk",
        bad.is_none(),
        match bad {
            None => format!("{count} entries, k <= {}", tab.k_max()),
            Some((k, n)) => format!("{k}! does not divide v_{n}({k})"),
        },
    )
}

/// `Σ_r b_j r! x^r Π_{i != j} (1 - α_i x)^{r+1}`: closed form of the numerator.
fn closed_form_pr(inst: &BbrInstance, r: usize) -> Poly<Rat> {
    let fr = from_int(factorial(r));
    let lin = |a: u64| Poly::from_ints([Int::one(), -Int::from(a)]).pow(r + 1);
    (0..inst.t()).fold(Poly::zero(), |acc, j| {
        let others = (0..inst.t())
            .filter(|&i| i != j)
            .fold(Poly::one(), |p, i| &p * &lin(inst.alpha[i]));
        &acc + &others.mul_x_pow(r).scale(&(&fr * from_int(inst.b[j].clone())))
    })
}

/// `q(x)^{r+1} · Σ_n (n)_r u_{n-r} x^n` is a polynomial `p_r` of degree
/// `< t(r+1)` through horizon `N`; returns the recovered integer `p_r`.
pub fn check_ur_identity(inst: &BbrInstance, r: usize, n_max: usize) -> Result<(Check, Vec<Int>)> {
    let t = inst.t();
    let deg_bound = t * (r + 1);
    if n_max < deg_bound + r {
        return Err(Error::InvalidInstance(format!(
            "depth N = {n_max} must be at least t(r+1)+r = {}",
            deg_bound + r
        )));
    }
    let u = inst.u(n_max);
    let s = TruncSeries::from_fn(n_max, |n| {
        if n < r {
            Rat::zero()
        } else {
            from_int(falling(n, r) * &u[n - r])
        }
    });
    let prod = s.mul_poly(&inst.q_poly().pow(r + 1));
    let tail_zero = prod.coeffs()[deg_bound..].iter().all(Zero::is_zero);
    let pr = Poly::from_coeffs(prod.coeffs()[..deg_bound].to_vec());
    let ints = pr.to_ints();
    let closed = pr == closed_form_pr(inst, r);
    let ok = tail_zero && ints.is_some() && closed;
    let detail = format!(
        "r={r}: tail beyond degree {} vanishes: {tail_zero}; integral: {}; matches closed form: {closed}",
        deg_bound - 1,
        ints.is_some()
    );
    let check = Check::from_bool(
        format!("bbr.ur-identity.r{r}"),
        "q^{r+1} sum (n)_r u_{n-r} x^n = p_r, deg p_r < t(r+1)",
        ok,
        detail,
    );
    Ok((check, ints.unwrap_or_default()))
}

/// `(1 - x)V - x^2 V' = Σ b_j/(1 - α_j x)` through horizon `N - 1`.
pub fn check_ode_identity(tab: &VTable, inst: &BbrInstance) -> Check {
    let n = tab.n_max();
    let big_v = TruncSeries::from_fn(n, |i| from_int(tab.v[i].clone()));
    let check = |ok: bool, detail: String| {
        Check::from_bool(
            "bbr.ode-identity",
            "(1-x)V - x^2 V' = sum b_j/(1 - alpha_j x)",
            ok,
            detail,
        )
    };
    let Ok(dv) = big_v.derivative() else {
        return check(true, "horizon 0: nothing to compare".into());
    };
    let lhs = big_v
        .mul_poly(&Poly::from_ints([1, -1]))
        .sub(&dv.mul_poly(&Poly::monomial(Rat::one(), 2)));
    let rhs = inst.b.iter().zip(&inst.alpha).fold(TruncSeries::zero(n - 1), |acc, (b, &a)| {
        let term = RatFun::new(
            Poly::constant(from_int(b.clone())),
            Poly::from_ints([Int::one(), -Int::from(a)]),
        )
        .expect("den(0) = 1");
        acc.add(&term.expand(n - 1))
    });
    let bad = (0..n).find(|&i| lhs.coeffs()[i] != rhs.coeffs()[i]);
    check(
        bad.is_none(),
        match bad {
            None => format!("coefficients 0..{}", n - 1),
            Some(i) => format!("mismatch at x^{i}"),
        },
    )
}

/// `v_n = n! Σ_{r<=n} u_r/r!` evaluated with exact rationals.
pub fn check_dual_construction(tab: &VTable) -> Check {
    let mut partial = Rat::zero();
    let mut fact = Int::one();
    let mut bad = None;
    for (n, un) in tab.u.iter().enumerate() {
        if n > 0 {
            fact *= n;
        }
        partial += Rat::new(un.clone(), fact.clone());
        if partial.clone() * from_int(fact.clone()) != from_int(tab.v[n].clone()) {
            bad = Some(n);
            break;
        }
    }
    Check::from_bool(
        "bbr.dual-construction",
        "v_n = n! sum_{r<=n} u_r/r!",
        bad.is_none(),
        match bad {
            None => format!("n=0..{}", tab.n_max()),
            Some(n) => format!("mismatch at n={n}"),
        },
    )
}

/// Each row equals `[x^n] q^k V` computed by one power and one product.
pub fn check_power_rows(tab: &VTable, inst: &BbrInstance) -> Check {
    let n = tab.n_max();
    let big_v = TruncSeries::from_fn(n, |i| from_int(tab.v[i].clone()));
    let q = inst.q_poly();
    let bad = (0..=tab.k_max()).find(|&k| {
        let direct = big_v.mul_poly(&q.pow(k));
        direct
            .coeffs()
            .iter()
            .zip(tab.table.row(k))
            .any(|(d, r)| *d != from_int(r.clone()))
    });
    Check::from_bool(
        "bbr.power-rows",
        "v_n(k) = [x^n] q(x)^k V(x)",
        bad.is_none(),
        match bad {
            None => format!("rows 0..{}", tab.k_max()),
            Some(k) => format!("row {k} differs"),
        },
    )
}

#[derive(Clone, Debug)]
pub struct BbrReport {
    pub instance: BbrInstance,
    pub n_max: usize,
    pub k_max: usize,
    pub table: VTable,
    /// Unconditional identities; every one is expected to pass.
    pub checks: Vec<Check>,
    /// Recovered `p_r` for `r` up to the report's limit.
    pub p_r: Vec<Vec<Int>>,
    pub growth: GrowthReport,
    pub k0: usize,
    pub induction: NormInduction,
}

impl BbrReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Builds the table and runs every check. The growth implication uses the
/// window-maximal `c`, and the norm induction starts at `k0 = 1`.
pub fn run_bbr(inst: &BbrInstance, n_max: usize, k_max: usize, max_r: usize) -> Result<BbrReport> {
    let tab = build_vtable(inst, n_max, k_max)?;
    let t = inst.t();
    let mut checks = vec![
        check_vk_recurrence(&tab, inst),
        check_dual_construction(&tab),
        check_power_rows(&tab, inst),
        check_ode_identity(&tab, inst),
        check_divisibility(&tab, inst),
    ];
    checks.extend((0..=k_max).map(|k| check_combination(&tab, k)));
    let mut p_r = Vec::new();
    for r in 0..=max_r {
        if n_max < t * (r + 1) + r {
            break;
        }
        let (c, p) = check_ur_identity(inst, r, n_max)?;
        checks.push(c);
        p_r.push(p);
    }
    let a = Rat::from_integer(Int::from(inst.a_max()));
    let c = window_max_c(&tab.table, &a);
    let growth = check_growth_items(&tab.table, &a, &c)?;
    checks.push(Check::from_bool(
        "bbr.growth-implication",
        "|v_n(k)| <= c A^n C^k propagates from row 0",
        growth.pass,
        growth.detail.clone(),
    ));
    let k0 = least_k0(&c, &a, t, &inst.c_const());
    let induction = norm_induction(&tab.table, 1, |k, n| tab.vk(k, n).is_zero());
    Ok(BbrReport { instance: inst.clone(), n_max, k_max, table: tab, checks, p_r, growth, k0, induction })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn e_inst() -> BbrInstance {
        BbrInstance::new(ints(&[1]), vec![1]).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(BbrInstance::new(ints(&[1, 0]), vec![1, 2]).is_err());
        assert!(BbrInstance::new(ints(&[1, 1]), vec![2, 2]).is_err());
        assert!(BbrInstance::new(ints(&[]), vec![]).is_err());
        let inst = BbrInstance::new(ints(&[1, 1]), vec![1, 2]).unwrap();
        assert_eq!(inst.q_coeffs(), ints(&[3, -2]));
        assert_eq!(inst.c_const(), Int::from(6));
        assert_eq!(inst.a_max(), 2);
    }

    #[test]
    fn table_examples() {
        let tab = build_vtable(&e_inst(), 10, 3).unwrap();
        assert_eq!(&tab.v[..5], &ints(&[1, 2, 5, 16, 65])[..]);
        assert_eq!(&tab.table.row(1)[..5], &ints(&[1, 1, 3, 11, 49])[..]);
        assert_eq!(&tab.table.row(2)[2..5], &ints(&[2, 8, 38])[..]);
        assert_eq!(tab.table.row(0), &tab.v[..]);
        assert!(tab.vk(3, 3).is_multiple_of(&Int::from(6)));
        assert!(build_vtable(&e_inst(), 2, 3).is_err());
    }

    #[test]
    fn checks_pass_on_genuine_instances() {
        for inst in [e_inst(), BbrInstance::new(ints(&[1, 1]), vec![1, 2]).unwrap()] {
            let tab = build_vtable(&inst, 40, 6).unwrap();
            assert!(check_vk_recurrence(&tab, &inst).passed());
            assert!(check_divisibility(&tab, &inst).passed());
            assert!(check_ode_identity(&tab, &inst).passed());
            assert!(check_dual_construction(&tab).passed());
            assert!(check_power_rows(&tab, &inst).passed());
            for k in 0..=6 {
                assert!(check_combination(&tab, k).passed());
            }
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let inst = e_inst();
        let mut tab = build_vtable(&inst, 12, 3).unwrap();
        tab.v[5] += 1;
        assert!(!check_dual_construction(&tab).passed());
        assert!(!check_vk_recurrence(&tab, &inst).passed());
    }

    #[test]
    fn combination_example() {
        // k=2, n=3: 16 = 1*1 + 3*1 + 6*2
        let tab = build_vtable(&e_inst(), 3, 1).unwrap();
        assert_eq!(falling(3, 2) * &tab.v[1] + falling(3, 1) * &tab.u[2] + &tab.u[3], tab.v[3]);
    }

    #[test]
    fn ur_examples() {
        let (c, p0) = check_ur_identity(&e_inst(), 0, 10).unwrap();
        assert!(c.passed());
        assert_eq!(p0, ints(&[1]));
        let (c, p1) = check_ur_identity(&e_inst(), 1, 10).unwrap();
        assert!(c.passed());
        assert_eq!(p1, ints(&[0, 1]));
        let two = BbrInstance::new(ints(&[1, 1]), vec![1, 2]).unwrap();
        let (c, p0) = check_ur_identity(&two, 0, 10).unwrap();
        assert!(c.passed());
        assert_eq!(p0, ints(&[2, -3]));
        assert!(check_ur_identity(&two, 3, 10).is_err());
    }

    #[test]
    fn ode_coefficients() {
        let inst = BbrInstance::new(ints(&[2]), vec![3]).unwrap();
        let tab = build_vtable(&inst, 12, 2).unwrap();
        assert!(check_ode_identity(&tab, &inst).passed());
        for n in 1..=12 {
            assert_eq!(&tab.v[n] - Int::from(n) * &tab.v[n - 1], Int::from(2) * Int::from(3).pow(n as u32));
        }
    }

    #[test]
    fn report_runs() {
        let rep = run_bbr(&e_inst(), 30, 5, 3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
        assert_eq!(rep.p_r.len(), 4);
        assert!(!rep.induction.pass);
    }
}
