use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use semiformal::hilbert::{
    check_br_structure, check_decomposition, compute_ar, compute_br, hilbert_report,
};
use semiformal::rational::{
    build_vtable, check_divisibility, check_dual_construction, check_pole_prop, check_power_rows,
    partial_fractions, run_bbr,
};
use semiformal::{enclose_enum, BbrInstance, HilbertInstance, Poly, Rat, RatFun};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly() -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(small_rat(), 1..5).prop_map(Poly::from_coeffs)
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    let alpha = prop::sample::select(vec![(1i64, 1i64), (2, 1), (-1, 1), (1, 3), (3, 2)]);
    (prop::collection::vec((alpha, 1usize..=3), 1..=2), poly()).prop_map(|(factors, num)| {
        let den = factors.iter().fold(Poly::one(), |acc, &((p, q), m)| {
            &acc * &Poly::from_coeffs(vec![Rat::one(), -Rat::new(p.into(), q.into())]).pow(m)
        });
        let num = if num.is_zero() { Poly::one() } else { num };
        RatFun::new(num, den).unwrap()
    })
}

fn bbr_instance() -> impl Strategy<Value = BbrInstance> {
    prop::sample::subsequence(vec![1u64, 2, 3, 5], 1..=2).prop_flat_map(|alpha| {
        let t = alpha.len();
        prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], t)
            .prop_map(move |b| BbrInstance::new(b.into_iter().map(BigInt::from).collect(), alpha.clone()).unwrap())
    })
}

fn hilbert_instance() -> impl Strategy<Value = HilbertInstance> {
    (prop_oneof![-5i64..=-1, 1i64..=5], prop::collection::vec(-5i64..=5, 1..=2))
        .prop_map(|(a0, rest)| {
            let mut a = vec![BigInt::from(a0)];
            a.extend(rest.into_iter().map(BigInt::from));
            HilbertInstance::new(a).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_fractions_recombine(f in ratfun()) {
        let pf = partial_fractions(&f).unwrap();
        prop_assert_eq!(pf.recombine(), f.clone());
        prop_assert_eq!(partial_fractions(&pf.recombine()).unwrap(), pf.clone());
        prop_assert_eq!(pf.recombine().expand(20), f.expand(20));
        prop_assert!(pf.terms.windows(2).all(|w| (&w[0].alpha, w[0].order) < (&w[1].alpha, w[1].order)));
    }

    #[test]
    fn pole_verdict_is_scale_invariant(p in poly(), m in 0usize..4, c in nonzero_rat(), s in nonzero_rat(), a in ratfun()) {
        let v = check_pole_prop(&p, m, &c, &a).unwrap();
        let w = check_pole_prop(&p.scale(&s), m, &c, &a).unwrap();
        prop_assert!(v.pass);
        prop_assert_eq!(v.pass, w.pass);
        if !a.is_polynomial() {
            prop_assert_eq!(v.reference_poles.clone(), Some(v.poles.clone()));
        }
        prop_assert!(v.poles.iter().all(|&(_, o)| o >= 2));
    }

    #[test]
    fn table_invariants(inst in bbr_instance(), k in 1usize..6) {
        let tab = build_vtable(&inst, inst.t() * k + 15, k).unwrap();
        prop_assert!(check_divisibility(&tab, &inst).passed());
        prop_assert!(check_dual_construction(&tab).passed());
        prop_assert!(check_power_rows(&tab, &inst).passed());
    }

    #[test]
    fn br_structure(inst in hilbert_instance(), r in 1usize..=10) {
        let b = compute_br(&inst, r);
        prop_assert!(check_br_structure(&inst, r, &b).passed());
    }

    #[test]
    fn decomposition_is_exact(inst in hilbert_instance(), r in 1usize..=4) {
        prop_assert!(check_decomposition(&inst, r).unwrap().passed());
    }

    #[test]
    fn ar_enclosures_shrink(inst in hilbert_instance(), r in 1usize..=3) {
        let wide = Rat::new(1.into(), 1000.into());
        let narrow = Rat::new(1.into(), 1_000_000.into());
        let (exact, iv_wide) = compute_ar(&inst, r, &wide).unwrap();
        let (_, iv_narrow) = compute_ar(&inst, r, &narrow).unwrap();
        prop_assert!(iv_narrow.width() <= narrow);
        prop_assert!(iv_wide.intersects(&iv_narrow));
        prop_assert_eq!(enclose_enum(&exact, &narrow).unwrap(), iv_narrow);
    }
}

#[test]
fn nonvanishing_at_coprime_r() {
    let inst = HilbertInstance::new(vec![BigInt::from(2), BigInt::from(-1)]).unwrap();
    let coprime: Vec<usize> = (1..=10)
        .filter(|&r| BigInt::from(r + 1).gcd(&BigInt::from(2)).is_one())
        .collect();
    assert_eq!(coprime, vec![2, 4, 6, 8, 10]);
    for r in coprime {
        assert!(!compute_br(&inst, r).is_zero());
    }
}

#[test]
fn report_rows_are_consistent() {
    let inst = HilbertInstance::new(vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]).unwrap();
    let eps = Rat::new(1.into(), 100_000_000.into());
    for r in 1..=5 {
        let rep = hilbert_report(&inst, r, &eps).unwrap();
        assert!(rep.outcome().is_pass());
        let modulus: BigInt = (1..=r + 1).map(BigInt::from).product();
        assert_eq!(rep.b_r.mod_floor(&modulus), rep.b_r_residue);
        assert!(rep.a_r_interval.contains(&rep.a_r_interval.mid()));
    }
}

#[test]
fn bbr_report_for_two_exponentials() {
    let inst = BbrInstance::new(vec![BigInt::from(1), BigInt::from(1)], vec![1, 2]).unwrap();
    let rep = run_bbr(&inst, 60, 6, 4).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
    assert_eq!(rep.p_r.len(), 5);
    assert_eq!(rep.p_r[0], vec![BigInt::from(2), BigInt::from(-3)]);
    assert!(rep.growth.base_first_violation.is_none());
    assert!(!rep.induction.pass);
}
