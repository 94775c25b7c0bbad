//! Each check must be able to fail, and cached omega values must equal cold ones.

use hecke_core::cache::OmegaCache;
use hecke_core::glhecke::{omega_t, DeltaTuple, OmegaTable};
use hecke_core::inversion::HeckePoly;
use hecke_core::kernel::{LaurentP, SymPoly};
use hecke_core::pipeline::{run_theorem, TheoremResult};
use hecke_core::spseries::{Generator, SymSeries};
use hecke_core::verify::{
    functional_equation_report, genus_reduction_report, golden_report, Status,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn theorem(n: usize) -> &'static TheoremResult {
    static CELLS: [OnceLock<TheoremResult>; 5] = [const { OnceLock::new() }; 5];
    CELLS[n].get_or_init(|| run_theorem(n, &OmegaTable::new()).unwrap())
}

#[test]
fn functional_equation_rejects_a_perturbed_numerator() {
    let lower: Vec<SymSeries> = (2..=3).map(|n| theorem(n).e_series.clone()).collect();
    let e4 = &theorem(4).e_series;
    assert_eq!(
        functional_equation_report(e4, &lower).unwrap().status,
        Status::Pass
    );

    let mut coeffs = e4.coeffs().to_vec();
    coeffs[5] = &coeffs[5] + &SymPoly::sym(4, &[2, 1, 1, 1]);
    let bad = SymSeries::from_coeffs(4, coeffs).unwrap();
    let rep = functional_equation_report(&bad, &lower).unwrap();
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.witness.unwrap().contains("X^"));
}

#[test]
fn genus_reduction_rejects_a_perturbed_denominator() {
    let (g4, g3) = (theorem(4), theorem(3));
    assert_eq!(genus_reduction_report(g4, g3).unwrap().status, Status::Pass);

    let mut bad = g4.clone();
    let t = HeckePoly::generator(4, Generator::T);
    bad.f[8] = &bad.f[8] + &t.pow(8);
    let rep = genus_reduction_report(&bad, g3).unwrap();
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.witness.unwrap().contains("f8"));
}

#[test]
fn golden_rejects_a_wrong_coefficient() {
    let g2 = theorem(2);
    assert_eq!(golden_report(2, &g2.e, &g2.f).unwrap().status, Status::Pass);

    let mut e = g2.e.clone();
    e[2] = e[2].scale(&LaurentP::from_i64s(0, &[2]));
    let rep = golden_report(2, &e, &g2.f).unwrap();
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.witness.unwrap().contains("e2"));
}

fn primitive_tuples() -> &'static [DeltaTuple] {
    static ALL: OnceLock<Vec<DeltaTuple>> = OnceLock::new();
    ALL.get_or_init(|| DeltaTuple::primitive_bounded(4, 14))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cached_values_equal_cold_values(i in 0usize..680) {
        let d = &primitive_tuples()[i];
        let dir = tempfile::tempdir().unwrap();
        let cold = omega_t(d).unwrap();
        OmegaCache::new(dir.path()).store(d, &cold).unwrap();

        // a fresh handle and table see only what is on disk
        let table = OmegaTable::new();
        let stats = OmegaCache::new(dir.path()).warm(&table, 4, 14).unwrap();
        prop_assert_eq!(stats.loaded, 1);
        prop_assert_eq!(table.get_cached(d), Some(cold));
        prop_assert_eq!(table.evaluations(), 0);
    }
}
