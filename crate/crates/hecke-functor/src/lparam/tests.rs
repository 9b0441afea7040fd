use super::*;
use crate::rootdata::intmat::Mat;

fn rat(a: i64, b: i64) -> Rat {
    Rat::new(a.into(), b.into())
}

fn unitary(tag: &GroupTag, angles: &[Vec<Rat>]) -> ToyParameter {
    ToyParameter::new(tag, angles.iter().map(|l| l.iter().map(|a| (Rat::zero(), a.clone())).collect()).collect()).unwrap()
}

/// τ from a lift of `s` to the simply connected dual torus: write the angle
/// part of `s` as `Σ l_i α_i` and pair `w(s̃) − s̃` with `g`.
fn tau_by_lift(cg: &ComponentGroupResult, g: &[i64]) -> Vec<Cyclo> {
    let d = cg.tag.datum().unwrap();
    let l = d.semisimple_rank();
    let c = d.cartan_matrix();
    let ct = Mat::from_rows(&(0..l).map(|j| (0..l).map(|i| c[i][j]).collect()).collect::<Vec<_>>(), l);
    let inv = ct.inverse_rational().unwrap();
    let a: Vec<Rat> = d.simples().iter().map(|&s| pair(&cg.point, d.coroot(s)).1).collect();
    let lift: Vec<Rat> = (0..l).map(|i| (0..l).map(|j| &inv[i][j] * &a[j]).sum()).collect();
    (0..cg.group.order() as u32)
        .map(|e| {
            let w = cg.representative(e);
            let mut m = vec![Rat::zero(); l];
            for (i, li) in lift.iter().enumerate() {
                let img = d.simple_coords(cg.weyl.act_root(w, d.simples()[i]));
                for j in 0..l {
                    let delta = img[j] - i64::from(i == j);
                    m[j] += li * Rat::from_integer(delta.into());
                }
            }
            let x: Rat = (0..l).map(|j| &m[j] * Rat::from_integer(g[j].into())).sum();
            Cyclo::exp_2pi_i(&x)
        })
        .collect()
}

fn power_of(cg: &ComponentGroupResult, gen: u32, k: u64) -> u32 {
    cg.group.pow(gen, k)
}

/// The element acting on the `SLn` factor by `k ↦ k + 1`.
fn cycle_element(cg: &ComponentGroupResult, n: usize) -> u32 {
    let cyc: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    (0..cg.group.order() as u32).find(|&e| cg.pairs[e as usize][0].perm == cyc).expect("n-cycle component")
}

#[test]
fn example_component_group_is_cyclic() {
    for n in 2..=6 {
        let (tag, phi) = example_sln(n).unwrap();
        let cg = component_group(&tag, &phi).unwrap();
        assert_eq!(cg.group.order(), n);
        assert!(cg.group.is_abelian());
        let gen = cycle_element(&cg, n);
        assert_eq!(cg.group.element_order(gen), n as u64);
        // h s h⁻¹ = ζ_n^{-1} s for the cycle.
        assert_eq!(cg.pairs[gen as usize][0].lambda, rat(n as i64 - 1, n as i64));
        assert_eq!(cg.cocycle_value(gen, 0).unwrap(), Cyclo::root_of_unity(-1, n as u64));
        assert_eq!(relevant_enhancements(&cg).len(), n);
        assert_eq!(cg.z_sub(), &[0]);
    }
}

#[test]
fn example_tau_values() {
    for n in 2..=6 {
        let (tag, phi) = example_sln(n).unwrap();
        let cg = component_group(&tag, &phi).unwrap();
        let mut g = vec![0; n - 1];
        g[0] = 1;
        let tau = tau_character(&cg, &g).unwrap();
        let gen = cycle_element(&cg, n);
        for k in 0..n as u64 {
            let e = power_of(&cg, gen, k);
            assert_eq!(tau.values[e as usize], Cyclo::root_of_unity(-(k as i64), n as u64), "n = {n}, k = {k}");
        }
        assert_eq!(tau.values, tau_by_lift(&cg, &g));
    }
}

#[test]
fn tau_is_trivial_on_the_image_of_cocharacters() {
    for n in 2..=5 {
        let (tag, phi) = example_sln(n).unwrap();
        let cg = component_group(&tag, &phi).unwrap();
        let c = tag.datum().unwrap().cartan_matrix();
        for j in 0..n - 1 {
            // g_i = ⟨α_i, α_j∨⟩ is the image of the simple coroot α_j∨.
            let g: Vec<i64> = (0..n - 1).map(|i| c[i][j]).collect();
            let tau = tau_character(&cg, &g).unwrap();
            assert!(tau.values.iter().all(Cyclo::is_one));
        }
    }
}

#[test]
fn tau_is_additive_in_g_and_trivial_on_z_phi() {
    let tag = GroupTag::split(vec![Factor::Sl(4), Factor::Sl(2)]).unwrap();
    let phi = unitary(&tag, &[vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)], vec![rat(0, 1), rat(1, 2)]]);
    let cg = component_group(&tag, &phi).unwrap();
    assert_eq!(cg.group.order(), 8);
    let gs: Vec<Vec<i64>> = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 1], vec![2, -1, 3, 1], vec![0, 0, 1, 0]];
    for g in &gs {
        let t = tau_character(&cg, g).unwrap();
        assert_eq!(t.values, tau_by_lift(&cg, g));
        assert!(crate::finrep::is_linear_character(&cg.group, &t));
        for &z in cg.z_sub() {
            assert!(t.values[z as usize].is_one());
        }
        for h in &gs {
            let sum: Vec<i64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
            let lhs = tau_character(&cg, &sum).unwrap();
            let rhs = t.twist(&tau_character(&cg, h).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn gl_pgl_and_tori_have_trivial_component_groups() {
    let half = vec![rat(0, 1), rat(1, 2)];
    for (f, list) in [
        (Factor::Gl(2), half.clone()),
        (Factor::Gl(3), vec![rat(0, 1), rat(1, 3), rat(2, 3)]),
        (Factor::Gl(3), vec![rat(0, 1), rat(0, 1), rat(1, 2)]),
        (Factor::Pgl(2), vec![rat(1, 4), rat(3, 4)]),
        (Factor::Pgl(3), vec![rat(0, 1), rat(1, 3), rat(2, 3)]),
        (Factor::Torus(2), half),
        (Factor::Gl(1), vec![rat(1, 5)]),
        (Factor::Sl(1), vec![rat(1, 5)]),
    ] {
        let tag = GroupTag::single(f);
        let cg = component_group(&tag, &unitary(&tag, &[list])).unwrap();
        assert_eq!(cg.group.order(), 1, "{f}");
        assert_eq!(relevant_enhancements(&cg), vec![0]);
    }
}

#[test]
fn identity_component_absorbs_repeated_eigenvalues() {
    let tag = GroupTag::single(Factor::Gl(3));
    let cg = component_group(&tag, &unitary(&tag, &[vec![rat(0, 1), rat(0, 1), rat(0, 1)]])).unwrap();
    assert_eq!(cg.identity_component.len(), 6);
    assert_eq!(cg.group.order(), 1);
}

#[test]
fn q_parts_break_the_symmetry() {
    let tag = GroupTag::single(Factor::Sl(2));
    let phi = ToyParameter::new(&tag, vec![vec![(rat(1, 1), rat(0, 1)), (rat(-1, 1), rat(1, 2))]]).unwrap();
    assert_eq!(component_group(&tag, &phi).unwrap().group.order(), 1);
    let phi = ToyParameter::new(&tag, vec![vec![(rat(1, 2), rat(0, 1)), (rat(1, 2), rat(1, 2))]]).unwrap();
    assert_eq!(component_group(&tag, &phi).unwrap().group.order(), 2);
}

#[test]
fn multiplicity_guard() {
    let tag = GroupTag::single(Factor::Sl(3));
    let phi = unitary(&tag, &[vec![rat(0, 1), rat(0, 1), rat(1, 3)]]);
    let err = component_group(&tag, &phi).unwrap_err();
    assert!(err.to_string().contains("multiplicity guard"));
}

#[test]
fn non_split_labels_have_no_relevant_enhancements() {
    let tag = GroupTag::new(vec![Factor::Sl(3)], vec![1]).unwrap();
    let phi = ToyParameter::from_root_exponents(&tag, &[vec![0, 1, 2]], 3).unwrap();
    let cg = component_group(&tag, &phi).unwrap();
    assert_eq!(cg.group.order(), 3);
    assert!(relevant_enhancements(&cg).is_empty());
    assert_eq!(GroupTag::new(vec![Factor::Gl(4)], vec![-1]).unwrap().zeta, vec![3]);
}

#[test]
fn monomial_representatives() {
    let (tag, phi) = example_sln(4).unwrap();
    let cg = component_group(&tag, &phi).unwrap();
    let ord = cg.group.order() as u32;
    for a in 0..ord {
        let ha = cg.monomial_rep(a, 0).unwrap();
        // det = c^n · sign(perm) for c·P_perm.
        let c = ha.iter().flatten().find(|x| !x.is_zero()).unwrap();
        assert!((c.pow(4) * Cyclo::from_int(perm_sign(&cg.pairs[a as usize][0].perm))).is_one());
        for b in 0..ord {
            let hb = cg.monomial_rep(b, 0).unwrap();
            let hab = cg.monomial_rep(cg.group.mul(a, b), 0).unwrap();
            // The group law of S_φ agrees with matrix multiplication modulo
            // the connected diagonal torus.
            let q = mat_mul(&mat_mul(&ha, &hb), &unitary_inverse(&hab));
            assert!(is_diagonal(&q));
            // Commutators of lifts lie in the identity component, matching the
            // trivial commutator in the abelian group S_φ.
            let comm = mat_mul(&mat_mul(&ha, &hb), &mat_mul(&unitary_inverse(&ha), &unitary_inverse(&hb)));
            assert!(is_diagonal(&comm));
            assert_eq!(cg.group.mul(a, b), cg.group.mul(b, a));
        }
    }
}

fn is_diagonal(m: &[Vec<Cyclo>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

#[test]
fn points_round_trip() {
    let tag = GroupTag::split(vec![Factor::Gl(3), Factor::Sl(3), Factor::Pgl(3), Factor::Torus(1)]).unwrap();
    let eigs = vec![
        vec![(rat(1, 2), rat(1, 3)), (rat(0, 1), rat(0, 1)), (rat(-2, 1), rat(5, 6))],
        vec![(rat(1, 1), rat(1, 7)), (rat(0, 1), rat(2, 7)), (rat(3, 1), rat(0, 1))],
        vec![(rat(1, 1), rat(1, 2)), (rat(-3, 1), rat(1, 4)), (rat(2, 1), rat(1, 4))],
        vec![(rat(5, 1), rat(2, 3))],
    ];
    let phi = ToyParameter::new(&tag, eigs).unwrap();
    let back = from_point(&tag, &to_point(&tag, &phi)).unwrap();
    assert_eq!(back, phi);
    let v = param_to_json(&tag, &phi);
    assert_eq!(parse_param_json(&v).unwrap(), (tag, phi));
}

#[test]
fn sl_lists_are_classes_mod_scalars() {
    let tag = GroupTag::single(Factor::Sl(3));
    let a = unitary(&tag, &[vec![rat(0, 1), rat(1, 3), rat(2, 3)]]);
    let b = unitary(&tag, &[vec![rat(1, 5), rat(1, 5) + rat(1, 3), rat(1, 5) + rat(2, 3)]]);
    assert_eq!(a, b);
    let c = ToyParameter::new(&tag, vec![vec![(rat(2, 1), rat(0, 1)), (rat(2, 1), rat(1, 3)), (rat(2, 1), rat(2, 3))]]).unwrap();
    assert_eq!(a, c);
    assert!(a.eigs[0][0].1 < rat(1, 3));
}

#[test]
fn pgl_lists_need_determinant_one() {
    let tag = GroupTag::single(Factor::Pgl(2));
    assert!(ToyParameter::new(&tag, vec![vec![(rat(0, 1), rat(0, 1)), (rat(0, 1), rat(1, 2))]]).is_err());
    assert!(ToyParameter::new(&tag, vec![vec![(rat(1, 1), rat(0, 1)), (rat(0, 1), rat(0, 1))]]).is_err());
}

#[test]
fn bad_inputs() {
    assert!(Factor::from_name("SLn", 0).is_err());
    assert!(Factor::from_name("SOn", 3).is_err());
    assert!(GroupTag::new(vec![Factor::Sl(2)], vec![]).is_err());
    let (tag, phi) = example_sln(3).unwrap();
    let cg = component_group(&tag, &phi).unwrap();
    assert!(tau_character(&cg, &[1]).is_err());
    assert!(parse_param_json(&json!({"factors": [{"tag": "SLn", "n": 2, "eigs": [{"q": "x"}]}]})).is_err());
}
