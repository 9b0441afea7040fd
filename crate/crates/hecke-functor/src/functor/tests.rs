use super::*;
use crate::lparam::example_sln;

fn gl_example(n: usize) -> ToyParameter {
    let tag = GroupTag::single(Factor::Gl(n));
    ToyParameter::from_root_exponents(&tag, &[(0..n as i64).collect()], n as i64).unwrap()
}

fn value_on(sm_cg: &ComponentGroupResult, chi: usize, e: u32) -> Cyclo {
    sm_cg.table.irr[chi].values[e as usize].clone()
}

/// The element of the `SL_n` component group acting by `k ↦ k + 1`.
fn cycle(cg: &ComponentGroupResult, n: usize) -> u32 {
    let cyc: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    (0..cg.group.order() as u32).find(|&e| cg.pairs[e as usize][0].perm == cyc).unwrap()
}

#[test]
fn restriction_from_gl_splits_into_n_pieces() {
    for n in 2..=6 {
        let f = GroupHomDesc::sl_to_gl(n).unwrap();
        let phi = gl_example(n);
        let (_, phi_sharp) = example_sln(n).unwrap();
        assert_eq!(lmap_param(&f, &phi).unwrap(), phi_sharp);
        let terms = conj_a_decompose(&f, &phi, 0, TwistConvention::Inverse).unwrap();
        assert_eq!(terms.len(), n);
        assert!(terms.iter().all(|t| t.m == 1 && t.phi == phi_sharp));
        assert!(packet_union_check(&f, &phi, TwistConvention::Inverse).unwrap());
        let sm = smap(&f, &phi).unwrap();
        sm.check_invariants().unwrap();
        assert!(conservation_holds(&sm, 0, TwistConvention::Inverse).unwrap());
        for t in &terms {
            assert_eq!(multiplicity_by_induction(&sm, 0, t.rho, TwistConvention::Inverse).unwrap(), t.m);
        }
    }
}

#[test]
fn ad_t_multiplies_enhancements_by_zeta() {
    for n in 2..=6 {
        let (tag, phi) = example_sln(n).unwrap();
        let mut g = vec![0; n - 1];
        g[0] = 1;
        let f = GroupHomDesc::ad(&tag, g).unwrap();
        let sm = smap(&f, &phi).unwrap();
        sm.check_invariants().unwrap();
        assert_eq!(sm.group_hom, (0..n as u32).collect::<Vec<_>>());
        let gen = cycle(&sm.source, n);
        assert_eq!(sm.twist.values[gen as usize], Cyclo::root_of_unity(-1, n as u64));
        let zeta = Cyclo::root_of_unity(1, n as u64);
        for rho in 0..n {
            let terms = decompose_with(&sm, rho, TwistConvention::Inverse).unwrap();
            assert_eq!(terms.len(), 1);
            assert_eq!(terms[0].m, 1);
            assert_eq!(value_on(&sm.target, terms[0].rho, gen), &zeta * &value_on(&sm.source, rho, gen));
            let flipped = decompose_with(&sm, rho, TwistConvention::Direct).unwrap();
            assert_eq!(value_on(&sm.target, flipped[0].rho, gen), &zeta.conj() * &value_on(&sm.source, rho, gen));
        }
    }
}

#[test]
fn identity_is_tautological() {
    let (tag, phi) = example_sln(4).unwrap();
    let f = GroupHomDesc::identity(&tag).unwrap();
    for rho in 0..4 {
        let terms = conj_a_decompose(&f, &phi, rho, TwistConvention::Inverse).unwrap();
        assert_eq!(terms, vec![PullbackTerm { phi: phi.clone(), rho, m: 1 }]);
    }
    assert!(packet_union_check(&f, &phi, TwistConvention::Inverse).unwrap());
}

#[test]
fn parameter_maps() {
    // GL_n → PGL_n: a det-1 PGL list is the same list as a GL parameter.
    let tag = GroupTag::single(Factor::Pgl(3));
    let phi = ToyParameter::from_root_exponents(&tag, &[vec![0, 1, 2]], 3).unwrap();
    let f = GroupHomDesc::gl_to_pgl(3).unwrap();
    assert_eq!(lmap_param(&f, &phi).unwrap().eigs, phi.eigs);
    // SL_n → PGL_n: the same list modulo scalars.
    let g = GroupHomDesc::sl_to_pgl(3).unwrap();
    assert_eq!(lmap_param(&g, &phi).unwrap(), example_sln(3).unwrap().1);
    // Flip on GL_n reverses and inverts.
    let gl = GroupTag::single(Factor::Gl(3));
    let psi = ToyParameter::from_root_exponents(&gl, &[vec![0, 1, 3]], 6).unwrap();
    let flipped = lmap_param(&GroupHomDesc::flip(&gl).unwrap(), &psi).unwrap();
    assert_eq!(flipped, ToyParameter::from_root_exponents(&gl, &[vec![-3, -1, 0]], 6).unwrap());
}

#[test]
fn primitive_smaps() {
    let gl = GroupTag::single(Factor::Gl(3));
    let psi = ToyParameter::from_root_exponents(&gl, &[vec![0, 1, 2]], 3).unwrap();
    // Torus insertion: identity on S_φ, trivial twist.
    let ins = GroupHomDesc::torus_insert(&gl, 2).unwrap();
    let big = ins.target.clone();
    let eigs = vec![psi.eigs[0].clone(), vec![(Rat::from_integer(1.into()), Rat::new(1.into(), 3.into())); 2]];
    let phi_big = ToyParameter::new(&big, eigs).unwrap();
    let sm = smap(&ins, &phi_big).unwrap();
    assert_eq!(lmap_param(&ins, &phi_big).unwrap(), psi);
    assert_eq!(sm.group_hom, vec![0]);
    assert!(sm.twist.values.iter().all(Cyclo::is_one));
    // Central quotient SL_3 → PGL_3: subgroup inclusion of the trivial group.
    let pgl = GroupTag::single(Factor::Pgl(3));
    let phi = ToyParameter::from_root_exponents(&pgl, &[vec![0, 1, 2]], 3).unwrap();
    let sm = smap(&GroupHomDesc::sl_to_pgl(3).unwrap(), &phi).unwrap();
    sm.check_invariants().unwrap();
    assert_eq!((sm.source.group.order(), sm.target.group.order()), (1, 3));
    assert!(sm.twist.values.iter().all(Cyclo::is_one));
}

#[test]
fn factorizations_recompose() {
    let sl = GroupTag::single(Factor::Sl(3));
    let homs = vec![
        GroupHomDesc::sl_to_gl(3).unwrap(),
        GroupHomDesc::gl_to_pgl(3).unwrap(),
        GroupHomDesc::sl_to_pgl(4).unwrap(),
        GroupHomDesc::torus_insert(&sl, 1).unwrap(),
        GroupHomDesc::torus_project(&sl, 2).unwrap(),
        GroupHomDesc::flip(&GroupTag::split(vec![Factor::Gl(3), Factor::Sl(3), Factor::Pgl(2), Factor::Torus(1)]).unwrap()).unwrap(),
    ];
    for f in &homs {
        let rec = f.factorization.recompose().unwrap();
        assert_eq!(rec.char_map(), f.lattice_map.char_map(), "{}", f.label);
    }
}

#[test]
fn flip_is_an_involution() {
    let tag = GroupTag::split(vec![Factor::Gl(4), Factor::Sl(4), Factor::Pgl(4), Factor::Torus(2)]).unwrap();
    let f = GroupHomDesc::flip(&tag).unwrap();
    assert!(f.lattice_map.is_based_isomorphism());
    let ff = GroupHomDesc::compose(&f, &f).unwrap();
    assert!(ff.lattice_map.char_map().is_identity());
}

#[test]
fn composite_isogeny_matches_the_direct_one() {
    for n in 2..=5 {
        let via = GroupHomDesc::compose(&GroupHomDesc::sl_to_gl(n).unwrap(), &GroupHomDesc::gl_to_pgl(n).unwrap()).unwrap();
        assert_eq!(via.lattice_map.char_map(), GroupHomDesc::sl_to_pgl(n).unwrap().lattice_map.char_map());
    }
}

#[test]
fn transitivity_on_small_chains() {
    for n in 2..=4 {
        let sl = GroupTag::single(Factor::Sl(n));
        let gl = GroupTag::single(Factor::Gl(n));
        let pgl = GroupTag::single(Factor::Pgl(n));
        let mut g = vec![0; n - 1];
        g[n - 2] = 1;
        let chains = vec![
            (GroupHomDesc::sl_to_gl(n).unwrap(), GroupHomDesc::gl_to_pgl(n).unwrap()),
            (GroupHomDesc::ad(&sl, g.clone()).unwrap(), GroupHomDesc::sl_to_pgl(n).unwrap()),
            (GroupHomDesc::flip(&sl).unwrap(), GroupHomDesc::sl_to_gl(n).unwrap()),
            (GroupHomDesc::sl_to_gl(n).unwrap(), GroupHomDesc::ad(&gl, g.clone()).unwrap()),
            (GroupHomDesc::ad(&sl, g.clone()).unwrap(), GroupHomDesc::flip(&sl).unwrap()),
            (GroupHomDesc::torus_insert(&sl, 1).unwrap(), GroupHomDesc::torus_project(&sl, 1).unwrap()),
            (GroupHomDesc::sl_to_pgl(n).unwrap(), GroupHomDesc::flip(&pgl).unwrap()),
        ];
        for (f, q) in &chains {
            for phi in sample_parameters(&q.target, 5, 7 + n as u64).unwrap() {
                let rep = check_transitivity(f, q, &phi, TwistConvention::Inverse).unwrap();
                assert!(rep.holds, "{} then {} on {:?}: {:?}", f.label, q.label, phi, rep.mismatches);
            }
        }
    }
}

#[test]
fn insertion_then_projection_is_the_identity() {
    let tag = GroupTag::single(Factor::Sl(3));
    let qf = GroupHomDesc::compose(&GroupHomDesc::torus_insert(&tag, 2).unwrap(), &GroupHomDesc::torus_project(&tag, 2).unwrap()).unwrap();
    assert!(qf.lattice_map.char_map().is_identity());
    let (_, phi) = example_sln(3).unwrap();
    let sm = smap(&qf, &phi).unwrap();
    assert_eq!(sm.group_hom, vec![0, 1, 2]);
}

#[test]
fn gl_to_pgl_packets_are_exhausted() {
    for n in 2..=5 {
        let f = GroupHomDesc::gl_to_pgl(n).unwrap();
        for phi in sample_parameters(&f.target, 5, n as u64).unwrap() {
            assert!(packet_union_check(&f, &phi, TwistConvention::Inverse).unwrap());
        }
    }
}

#[test]
fn sl_to_pgl_conservation_and_frobenius() {
    for n in 2..=5 {
        let f = GroupHomDesc::sl_to_pgl(n).unwrap();
        for phi in sample_parameters(&f.target, 6, 100 + n as u64).unwrap() {
            let sm = smap(&f, &phi).unwrap();
            sm.check_invariants().unwrap();
            assert!(conservation_holds(&sm, 0, TwistConvention::Inverse).unwrap());
            for t in decompose_with(&sm, 0, TwistConvention::Inverse).unwrap() {
                assert_eq!(multiplicity_by_induction(&sm, 0, t.rho, TwistConvention::Inverse).unwrap(), t.m);
            }
        }
    }
}

#[test]
fn label_mismatch_and_irrelevant_enhancements() {
    let nonsplit = GroupTag::new(vec![Factor::Sl(3)], vec![1]).unwrap();
    let gl = GroupTag::single(Factor::Gl(3));
    let f = GroupHomDesc::new("bad", nonsplit.clone(), gl, GroupHomDesc::sl_to_gl(3).unwrap().lattice_map.char_map().clone(), vec![0, 0]).unwrap();
    let err = smap(&f, &gl_example(3)).unwrap_err();
    assert!(err.to_string().contains("relevance mismatch"));
    let id = GroupHomDesc::identity(&nonsplit).unwrap();
    let phi = ToyParameter::from_root_exponents(&nonsplit, &[vec![0, 1, 2]], 3).unwrap();
    assert!(conj_a_decompose(&id, &phi, 0, TwistConvention::Inverse).is_err());
}

#[test]
fn condition1_is_enforced() {
    let sl = GroupTag::single(Factor::Sl(2));
    let gl = GroupTag::single(Factor::Gl(2));
    assert!(GroupHomDesc::new("zero", sl, gl, Mat::zeros(1, 2), vec![0]).is_err());
}

#[test]
fn json_forms() {
    let f = GroupHomDesc::compose(&GroupHomDesc::sl_to_gl(3).unwrap(), &GroupHomDesc::gl_to_pgl(3).unwrap()).unwrap();
    let back = GroupHomDesc::from_json(&f.to_json()).unwrap();
    assert_eq!(back.lattice_map.char_map(), f.lattice_map.char_map());
    let chain = json!({"compose": [{"kind": "sl_to_gl", "n": 3}, {"kind": "gl_to_pgl", "n": 3}]});
    assert_eq!(GroupHomDesc::from_json(&chain).unwrap().lattice_map.char_map(), f.lattice_map.char_map());
    let ad = json!({"kind": "ad", "tag": {"factors": [{"tag": "SLn", "n": 3}]}, "g": [1, 0]});
    assert_eq!(GroupHomDesc::from_json(&ad).unwrap().twist, vec![1, 0]);
    assert!(GroupHomDesc::from_json(&json!({"kind": "nope"})).is_err());
}
