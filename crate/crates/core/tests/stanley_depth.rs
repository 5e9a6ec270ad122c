use proptest::prelude::*;
use stosskit::ideal::{lcm_of_generators, minimalize, realize, Monomial, ModuleSelector, MonomialIdeal};
use stosskit::stanley::dio::{build_dio_system, extract_decomposition, hilbert_depth};
use stosskit::stanley::{
    exhaustive_sdepth_oracle, export_lp, parse_lp, search_reduction, solve_feasibility, verify_certificate,
    verify_decomposition, LpModel, Solution,
};
use stosskit::stoss::{enumerate_stoss, maximal_lattice};
use stosskit::Field;

const SIDES: [ModuleSelector; 2] = [ModuleSelector::Q, ModuleSelector::I];

fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, rows).unwrap()
}

#[test]
fn fixture_depths() {
    let xy = ideal(2, &[&[1, 0], &[0, 1]]);
    let xyz = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let squares = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let depth = |i: &MonomialIdeal, s| hilbert_depth(i, s, 1_000_000).unwrap().depth;
    assert_eq!(depth(&xy, ModuleSelector::I), 1);
    assert_eq!(depth(&xy, ModuleSelector::Q), 0);
    assert_eq!(depth(&xyz, ModuleSelector::I), 2);
    assert_eq!(depth(&squares, ModuleSelector::Q), 0);
    let mixed = ideal(3, &[&[0, 1, 1], &[0, 2, 0], &[1, 1, 0], &[2, 0, 0]]);
    assert_eq!(depth(&mixed, ModuleSelector::I), 2);
}

#[test]
fn maximal_ideal_in_four_variables() {
    let m = MonomialIdeal::maximal(4);
    assert_eq!(hilbert_depth(&m, ModuleSelector::I, 1_000_000).unwrap().depth, 2);
    assert_eq!(exhaustive_sdepth_oracle(&m, ModuleSelector::I).unwrap(), 2);
}

/// Every reduction certificate on small stoss lattices is consistent with the
/// true Stanley depth of the realized ideal.
#[test]
fn certificates_agree_with_oracle() {
    let mut checked = 0;
    for k in 3..=4 {
        for d in 0..=(k as i32 - 2) {
            for c in enumerate_stoss(k, d, Field::Rational).unwrap() {
                let m = maximal_lattice(&c, Field::Rational).unwrap();
                let id = realize(&m.lattice).unwrap();
                let n = id.n();
                for side in SIDES {
                    let Ok(sdepth) = exhaustive_sdepth_oracle(&id, side) else { continue };
                    let spdim = n - sdepth;
                    for p in 0..=k {
                        if let Some(cert) = search_reduction(&m.lattice, p, side, 100_000, None).certificate() {
                            let bound = verify_certificate(&m.lattice, cert, None).unwrap();
                            assert!(spdim <= bound, "{:?} {side}: spdim {spdim} > certified {bound}", c.facets());
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn lp_export_round_trips() {
    let cases = [
        (ideal(2, &[&[1, 0], &[0, 1]]), ModuleSelector::I, 1),
        (ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]), ModuleSelector::Q, 0),
        (ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]), ModuleSelector::Q, 1),
        (ideal(3, &[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2]]), ModuleSelector::I, 2),
    ];
    for (id, side, h) in cases {
        let sys = build_dio_system(&id, side, h).unwrap();
        let text = export_lp(&sys);
        assert!(text.contains("Subject To") && text.trim_end().ends_with("End"));
        assert_eq!(parse_lp(&text).unwrap(), LpModel::from_system(&sys));
    }
}

fn arb_ideal(max_n: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=4)
            .prop_map(move |rows| {
                let gens: Vec<Monomial> = rows.into_iter().map(Monomial).filter(|m| m.degree() > 0).collect();
                minimalize(n, &gens)
            })
            .prop_filter_map("nonzero ideal", Result::ok)
    })
}

fn arb_side() -> impl Strategy<Value = ModuleSelector> {
    prop_oneof![Just(ModuleSelector::Q), Just(ModuleSelector::I)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hilbert_depth_matches_oracle(id in arb_ideal(3, 2), side in arb_side()) {
        let fast = hilbert_depth(&id, side, 10_000_000).unwrap();
        prop_assert!(verify_decomposition(&id, side, &fast.decomposition));
        prop_assert_eq!(fast.depth, exhaustive_sdepth_oracle(&id, side).unwrap());
    }

    #[test]
    fn feasibility_is_monotone_in_h(id in arb_ideal(3, 3), side in arb_side()) {
        let mut seen_infeasible = false;
        for h in 0..=id.n() {
            let sys = build_dio_system(&id, side, h).unwrap();
            match solve_feasibility(&sys, 10_000_000) {
                Solution::Feasible(values) => {
                    prop_assert!(!seen_infeasible, "feasible at h = {} after an infeasible h", h);
                    let d = extract_decomposition(&sys, &values);
                    prop_assert!(verify_decomposition(&id, side, &d));
                    prop_assert!(d.depth() >= h);
                }
                Solution::Infeasible => seen_infeasible = true,
                Solution::Timeout { .. } => prop_assert!(false, "timeout"),
            }
        }
    }

    #[test]
    fn decomposition_parts_lie_below_lcm(id in arb_ideal(3, 2), side in arb_side()) {
        let g = lcm_of_generators(&id);
        let d = hilbert_depth(&id, side, 10_000_000).unwrap().decomposition;
        for part in &d.parts {
            prop_assert!(Monomial(part.b.clone()).divides(&g));
        }
    }
}
