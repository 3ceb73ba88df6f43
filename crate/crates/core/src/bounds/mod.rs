//! Analytic bounds in log domain and the seeded experiments built on them.

mod experiments;
mod numeric;

pub use experiments::{
    audit_pair, corollary_report, drr_report, figure1_report, lemma1_montecarlo, lemma1_table, led_auto,
    prop2_check, prop2_report, prop3_check, prop3_report, qd_formula, qd_led_check, wstack_verify, z_formula,
    ztk_verify, PairAudit,
};
pub use numeric::{
    expected_pairs_bound, expected_pairs_ln, figure1_csv, figure1_f, figure1_grid, figure1_grid_max, figure1_ln,
    figure1_svg, ln_binom, p_ln, p_poly, FIGURE1_HI, FIGURE1_LO,
};
