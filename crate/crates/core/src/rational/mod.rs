//! Rational power series, partial fractions with rational poles, and the
//! table machinery for the recurrence-and-divisibility argument over
//! `u_n = Σ b_j α_j^n`, `v_n = n!·Σ_{r<=n} u_r/r!`.

mod bbr;
mod induction;
mod partial;
mod ratfun;

pub use bbr::{
    build_vtable, check_combination, check_divisibility, check_dual_construction,
    check_ode_identity, check_power_rows, check_ur_identity, check_vk_recurrence, run_bbr,
    BbrInstance, BbrReport, QPowerTable, VTable,
};
pub use induction::{
    check_growth_items, least_k0, norm_induction, window_max_c, GrowthReport, NormInduction,
};
pub use partial::{check_pole_prop, partial_fractions, rational_roots, PartialFractions, PfTerm, PoleVerdict};
pub use ratfun::RatFun;
