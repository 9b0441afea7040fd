//! The algebra `(⊕_c e_c H) ⋊ C[Γ_big, κ_big]` attached to an inclusion
//! `Γ ⊂ Γ_big`, where `c` runs over `Γ_big/Γ` and `Γ_big` permutes the
//! idempotents `e_c` by left multiplication.

use super::ad::HeckeTarget;
use super::element::{HKey, HeckeElement};
use super::im::ImAlgebra;
use super::spec::{GammaGroup, HeckeSpec};
use crate::numkernel::{Cyclo, LaurentPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateElement {
    /// Component in `e_c · A` for each coset `c`.
    pub parts: Vec<HeckeElement>,
}

pub struct IntermediateAlgebra {
    big: ImAlgebra,
    /// Index in `Γ_big` of each element of `Γ`.
    small_in_big: Vec<u32>,
    /// Coset index of each element of `Γ_big`; coset 0 is `Γ`.
    coset_of: Vec<usize>,
    reps: Vec<u32>,
}

impl IntermediateAlgebra {
    pub fn new(spec: &HeckeSpec, gamma_big: GammaGroup, kappa_big: Option<Vec<Vec<Cyclo>>>) -> Result<Self> {
        let d = spec.datum();
        let labels = d.simples().iter().map(|&s| spec.label(s)).collect();
        let big_spec = HeckeSpec::new(d.clone(), labels, spec.params().to_vec(), gamma_big, kappa_big)?;
        let gb = big_spec.gamma();
        let small = spec.gamma();
        let mut small_in_big = Vec::new();
        for m in small.mats() {
            let i = gb.mats().iter().position(|x| x == m).ok_or_else(|| Error::Validation("Γ is not contained in Γ_big".into()))?;
            small_in_big.push(i as u32);
        }
        for a in 0..small.order() as u32 {
            for b in 0..small.order() as u32 {
                if big_spec.cocycle(small_in_big[a as usize], small_in_big[b as usize]) != spec.cocycle(a, b) {
                    return Err(Error::Validation("incompatible cocycles: κ_big does not restrict to κ".into()));
                }
            }
        }
        let n = gb.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in &small_in_big {
                coset_of[gb.mul(g, h) as usize] = c;
            }
        }
        Ok(IntermediateAlgebra { big: ImAlgebra::new(big_spec)?, small_in_big, coset_of, reps })
    }

    /// The algebra for `Γ_big`, whose elements [`Self::hom_from_big`] maps in.
    pub fn big(&self) -> &ImAlgebra {
        &self.big
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_reps(&self) -> &[u32] {
        &self.reps
    }

    /// Rank as a module over `⊕_c e_c H(c·s∨)`.
    pub fn rank_over_base(&self) -> usize {
        self.big.spec().gamma().order() / self.small_in_big.len()
    }

    pub fn zero(&self) -> IntermediateElement {
        IntermediateElement { parts: vec![HeckeElement::zero(); self.num_cosets()] }
    }

    pub fn one(&self) -> IntermediateElement {
        IntermediateElement { parts: vec![self.big.one(); self.num_cosets()] }
    }

    pub fn idempotent(&self, c: usize) -> IntermediateElement {
        let mut e = self.zero();
        e.parts[c] = self.big.one();
        e
    }

    fn coset_act(&self, g: u32, c: usize) -> usize {
        self.coset_of[self.big.spec().gamma().mul(g, self.reps[c]) as usize]
    }

    /// `(e_c x N_g)(e_{c′} y) = δ_{c, g c′} e_c x N_g y`.
    pub fn mul(&self, a: &IntermediateElement, b: &IntermediateElement) -> IntermediateElement {
        let gb = self.big.spec().gamma();
        let mut out = self.zero();
        for (c, x) in a.parts.iter().enumerate() {
            for (k, coef) in x.terms() {
                let c2 = self.coset_act(gb.inv(k.r), c);
                if b.parts[c2].is_zero() {
                    continue;
                }
                let p = self.big.mul_basis_left(k, &b.parts[c2]);
                out.parts[c].add_scaled(&p, coef);
            }
        }
        out
    }

    /// `N_w ↦ Σ_c e_c N_w`, `N_g ↦ N_g`.
    pub fn hom_from_big(&self, x: &HeckeElement) -> IntermediateElement {
        IntermediateElement { parts: vec![x.clone(); self.num_cosets()] }
    }

    /// The corner embedding `H(s∨) → e_Γ A e_Γ`.
    pub fn embed_small(&self, x: &HeckeElement) -> IntermediateElement {
        let mut e = self.zero();
        e.parts[0] = x.map_keys(|k| HKey::new(k.t.clone(), k.w, self.small_in_big[k.r as usize]));
        e
    }
}

impl HeckeTarget for IntermediateAlgebra {
    type Elt = IntermediateElement;
    fn unit(&self) -> IntermediateElement {
        self.one()
    }
    fn times(&self, a: &IntermediateElement, b: &IntermediateElement) -> IntermediateElement {
        self.mul(a, b)
    }
    fn plus(&self, a: &IntermediateElement, b: &IntermediateElement) -> IntermediateElement {
        IntermediateElement { parts: a.parts.iter().zip(&b.parts).map(|(x, y)| x.add(y)).collect() }
    }
    fn scaled(&self, a: &IntermediateElement, c: &LaurentPoly) -> IntermediateElement {
        IntermediateElement { parts: a.parts.iter().map(|x| x.scale(c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::ad::check_relations_preserved;
    use crate::rootdata::intmat::Mat;
    use crate::rootdata::{build_classical, Family, Isogeny};

    fn doubled_a1() -> (HeckeSpec, GammaGroup) {
        let a1 = build_classical(Family::A, 1, Isogeny::Sc).unwrap();
        let d = a1.direct_sum(&a1);
        let swap = Mat::from_rows(&[vec![0, 1], vec![1, 0]], 2);
        let big = GammaGroup::generated_by(&d, &[swap]).unwrap();
        let spec = HeckeSpec::new(d, vec![(1, 1); 2], vec!["z".into(); 2], GammaGroup::trivial(2), None).unwrap();
        (spec, big)
    }

    #[test]
    fn flip_of_doubled_a1() {
        let (spec, big) = doubled_a1();
        let a = IntermediateAlgebra::new(&spec, big, None).unwrap();
        assert_eq!(a.num_cosets(), 2);
        assert_eq!(a.rank_over_base(), 2);
        let e0 = a.idempotent(0);
        let e1 = a.idempotent(1);
        assert_eq!(a.mul(&e0, &e0), e0);
        assert!(a.mul(&e0, &e1).parts.iter().all(|p| p.is_zero()));
        let flip = a.hom_from_big(&a.big().n_gamma(1));
        assert_eq!(a.mul(&a.mul(&flip, &e0), &flip), e1);
        let s = a.hom_from_big(&a.big().gen(0));
        let lhs = a.mul(&s, &s);
        let rhs = a.plus(&a.one(), &a.scaled(&s, a.big().zdiff(0)));
        assert_eq!(lhs, rhs);
        check_relations_preserved(a.big(), &a, &|x| Ok(a.hom_from_big(x))).unwrap();
        let small = ImAlgebra::new(spec).unwrap();
        let g0 = small.gen(0);
        let emb = a.embed_small(&small.mul(&g0, &g0));
        assert_eq!(emb, a.mul(&a.embed_small(&g0), &a.embed_small(&g0)));
    }

    #[test]
    fn equal_groups_give_the_original_algebra() {
        let (spec, _) = doubled_a1();
        let a = IntermediateAlgebra::new(&spec, spec.gamma().clone(), None).unwrap();
        assert_eq!(a.num_cosets(), 1);
        let h = ImAlgebra::new(spec).unwrap();
        let x = h.gen(0).add(&h.theta(&[1, -1]));
        assert_eq!(a.hom_from_big(&x).parts, vec![x.clone()]);
        assert_eq!(a.mul(&a.hom_from_big(&x), &a.hom_from_big(&x)).parts[0], h.mul(&x, &x));
    }

    #[test]
    fn incompatible_cocycle_is_rejected() {
        let (spec, big) = doubled_a1();
        let bad = vec![vec![Cyclo::one(), Cyclo::one()], vec![Cyclo::one(), Cyclo::from_int(-1)]];
        // Any κ_big restricts correctly to Γ = 1.
        assert!(IntermediateAlgebra::new(&spec, big.clone(), Some(bad)).is_ok());
        let spec2 = HeckeSpec::new(spec.datum().clone(), vec![(1, 1); 2], vec!["z".into(); 2], big.clone(), Some(vec![vec![Cyclo::one(), Cyclo::one()], vec![Cyclo::one(), Cyclo::from_int(-1)]])).unwrap();
        assert!(IntermediateAlgebra::new(&spec2, big, None).is_err());
    }
}
