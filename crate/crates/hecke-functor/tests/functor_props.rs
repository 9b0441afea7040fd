use hecke_functor::finrep::chars::is_linear_character;
use hecke_functor::functor::{
    check_transitivity, decompose_with, multiplicity_by_induction, sample_parameters, smap, GroupHomDesc, TwistConvention,
};
use hecke_functor::lparam::{component_group, example_sln, relevant_enhancements, tau_character, Factor, GroupTag};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_is_a_character_additive_in_g(n in 2usize..=6, g in prop::collection::vec(-3i64..=3, 5), h in prop::collection::vec(-3i64..=3, 5)) {
        let (tag, phi) = example_sln(n).unwrap();
        let cg = component_group(&tag, &phi).unwrap();
        let g = &g[..n - 1];
        let h = &h[..n - 1];
        let sum: Vec<i64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
        let tg = tau_character(&cg, g).unwrap();
        let th = tau_character(&cg, h).unwrap();
        let ts = tau_character(&cg, &sum).unwrap();
        prop_assert!(is_linear_character(&cg.group, &tg));
        for e in 0..cg.group.order() {
            prop_assert_eq!(&ts.values[e], &(&tg.values[e] * &th.values[e]));
        }
        // Shifting g by n in one coordinate lands in the centre's kernel.
        let mut shifted = g.to_vec();
        shifted[0] += n as i64;
        prop_assert_eq!(tau_character(&cg, &shifted).unwrap().values, tg.values);
    }

    #[test]
    fn restriction_from_gl_agrees_with_induction(n in 2usize..=5, seed in 0u64..1000) {
        let f = GroupHomDesc::sl_to_gl(n).unwrap();
        let gl = GroupTag::single(Factor::Gl(n));
        for phi in sample_parameters(&gl, 2, seed).unwrap() {
            let sm = smap(&f, &phi).unwrap();
            sm.check_invariants().unwrap();
            for rho in relevant_enhancements(&sm.source) {
                for conv in [TwistConvention::Inverse, TwistConvention::Direct] {
                    let terms = decompose_with(&sm, rho, conv).unwrap();
                    for t in &terms {
                        prop_assert_eq!(multiplicity_by_induction(&sm, rho, t.rho, conv).unwrap(), t.m);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_pulls_back_to_itself(n in 2usize..=5, seed in 0u64..1000) {
        let tag = GroupTag::single(Factor::Sl(n));
        let id = GroupHomDesc::identity(&tag).unwrap();
        for phi in sample_parameters(&tag, 2, seed).unwrap() {
            let sm = smap(&id, &phi).unwrap();
            for rho in relevant_enhancements(&sm.source) {
                let terms = decompose_with(&sm, rho, TwistConvention::Inverse).unwrap();
                prop_assert_eq!(terms.len(), 1);
                prop_assert_eq!(terms[0].m, 1);
                prop_assert_eq!(&terms[0].phi, &phi);
                prop_assert_eq!(&sm.target.table.irr[terms[0].rho].values, &sm.source.table.irr[rho].values);
            }
        }
    }

    #[test]
    fn composition_with_the_identity_is_transitive(n in 2usize..=4, seed in 0u64..1000) {
        let f = GroupHomDesc::sl_to_gl(n).unwrap();
        let id = GroupHomDesc::identity(&f.target).unwrap();
        for phi in sample_parameters(&f.target, 2, seed).unwrap() {
            let rep = check_transitivity(&f, &id, &phi, TwistConvention::Inverse).unwrap();
            prop_assert!(rep.holds, "{:?}", rep.mismatches);
        }
    }
}
