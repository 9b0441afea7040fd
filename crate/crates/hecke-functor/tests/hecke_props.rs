use hecke_functor::hecke::ad::{check_relations_preserved, AdXg, AlphaTwist};
use hecke_functor::hecke::graded::{linear_form, GradedAlgebra, GradedElement, GradedSpec};
use hecke_functor::hecke::{GammaGroup, HeckeElement, HeckeSpec, ImAlgebra};
use hecke_functor::numkernel::{Cyclo, LaurentPoly, Rat};
use hecke_functor::rootdata::intmat::Mat;
use hecke_functor::rootdata::{build_classical, Family, Isogeny};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graded(h: &GradedAlgebra, rng: &mut ChaCha8Rng) -> GradedElement {
    let g = h.spec().weyl();
    let rank = h.spec().datum().rank();
    let mut out = GradedElement::zero();
    for _ in 0..2 {
        let w = rng.gen_range(0..g.order() as u32);
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
        let f = &linear_form(&v) + &LaurentPoly::from_int(rng.gen_range(-2..=2));
        out = out.add(&GradedElement::term(w, 0, f));
    }
    out
}

#[test]
fn graded_multiplication_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (f, n) in [(Family::A, 2), (Family::C, 2)] {
        let h = GradedAlgebra::new(GradedSpec::uniform(&build_classical(f, n, Isogeny::Sc).unwrap()).unwrap());
        for _ in 0..50 {
            let a = random_graded(&h, &mut rng);
            let b = random_graded(&h, &mut rng);
            let c = random_graded(&h, &mut rng);
            let left = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
            let right = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right, "{f:?}{n}");
        }
    }
}

#[test]
fn ad_half_root_squares_to_conjugation() {
    let spec = HeckeSpec::uniform(&build_classical(Family::A, 1, Isogeny::Ad).unwrap(), 1).unwrap();
    let h = ImAlgebra::new(spec).unwrap();
    let half = AdXg::new(&h, &[Rat::new(1.into(), 2.into())]).unwrap();
    let t = h.theta(&[1]);
    let ti = h.theta(&[-1]);
    let mut probes = h.central_test_generators();
    probes.extend(h.basis_up_to_length(3).unwrap().into_iter().map(HeckeElement::basis));
    for p in &probes {
        let twice = half.apply(&half.apply(p).unwrap()).unwrap();
        assert_eq!(twice, h.mul(&h.mul(&t, p), &ti));
    }
}

fn cyclic_a1_cube() -> HeckeSpec {
    let a1 = build_classical(Family::A, 1, Isogeny::Sc).unwrap();
    let d = a1.direct_sum(&a1).direct_sum(&a1);
    let cyc = Mat::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], 3);
    let gam = GammaGroup::generated_by(&d, &[cyc]).unwrap();
    HeckeSpec::new(d, vec![(1, 1); 3], vec!["z".into(); 3], gam, None).unwrap()
}

fn psi_strategy() -> impl Strategy<Value = (i64, i64)> {
    (0i64..6, 0i64..6)
}

fn psi_values(spec: &HeckeSpec, (a, b): (i64, i64)) -> Vec<Cyclo> {
    let r = 1;
    let r2 = spec.gamma().mul(r, r);
    let mut psi = vec![Cyclo::one(); 3];
    psi[r as usize] = Cyclo::root_of_unity(a, 6);
    psi[r2 as usize] = Cyclo::root_of_unity(b, 6);
    psi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn alpha_twists_compose_and_invert(p in psi_strategy(), q in psi_strategy()) {
        let spec = cyclic_a1_cube();
        let h = ImAlgebra::new(spec.clone()).unwrap();
        let psi = psi_values(&spec, p);
        let chi = psi_values(&spec, q);
        let first = AlphaTwist::new(&spec, psi.clone()).unwrap();
        let second = AlphaTwist::new(first.target(), chi.clone()).unwrap();
        let prod: Vec<Cyclo> = psi.iter().zip(&chi).map(|(x, y)| x * y).collect();
        let both = AlphaTwist::new(&spec, prod).unwrap();
        prop_assert_eq!(second.target().cocycle_table(), both.target().cocycle_table());
        let inv: Vec<Cyclo> = psi.iter().map(|x| x.conj()).collect();
        let back = AlphaTwist::new(first.target(), inv).unwrap();
        prop_assert_eq!(back.target().cocycle_table(), spec.cocycle_table());

        let img = ImAlgebra::new(first.target().clone()).unwrap();
        check_relations_preserved(&h, &img, &|x| Ok(first.apply(x))).unwrap();
        for k in h.basis_up_to_length(2).unwrap() {
            let e = HeckeElement::basis(k);
            prop_assert_eq!(second.apply(&first.apply(&e)), both.apply(&e));
            prop_assert_eq!(back.apply(&first.apply(&e)), e);
        }
    }
}
