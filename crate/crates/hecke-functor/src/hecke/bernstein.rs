//! An independent model of the same algebra in the Bernstein basis
//! `θ_x N_w N_r` (`w` in the finite Weyl group), multiplied only through the
//! BLZ cross relation, together with the comparison map from the IM basis.

use std::cell::RefCell;
use std::collections::HashMap;

use super::element::{HKey, HeckeElement};
use super::im::ImAlgebra;
use super::spec::{z_minus_inv, HeckeSpec};
use super::theta::ThetaPoly;
use crate::numkernel::{Cyclo, LaurentPoly};
use crate::rootdata::intmat::vadd;
use crate::weyl::ExtAffineElt;

pub struct BernsteinAlgebra<'a> {
    spec: &'a HeckeSpec,
    im: &'a ImAlgebra,
    gens: Vec<HeckeElement>,
    blz_cache: RefCell<HashMap<(usize, Vec<i64>), HeckeElement>>,
    basis_cache: RefCell<HashMap<HKey, HeckeElement>>,
}

impl<'a> BernsteinAlgebra<'a> {
    pub fn new(im: &'a ImAlgebra) -> Self {
        let mut b = BernsteinAlgebra { spec: im.spec(), im, gens: Vec::new(), blz_cache: RefCell::default(), basis_cache: RefCell::default() };
        b.gens = (0..im.affine_gens().len()).map(|i| b.image_gen(i)).collect();
        b
    }

    fn rank(&self) -> usize {
        self.spec.datum().rank()
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(HKey::new(vec![0; self.rank()], 0, 0))
    }

    pub fn theta(&self, x: &[i64]) -> HeckeElement {
        HeckeElement::basis(HKey::new(x.to_vec(), 0, 0))
    }

    fn from_theta_poly(&self, p: &ThetaPoly, w: u32, r: u32) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in p.terms() {
            out.add_term(HKey::new(x.clone(), w, r), c.clone());
        }
        out
    }

    fn zdiff_simple(&self, i: usize) -> LaurentPoly {
        z_minus_inv(self.spec.z_of(i))
    }

    /// `N_{s_i} · x` using `N_s θ_x = θ_{sx} N_s − c_α(θ_{sx} − θ_x)/(1 − θ_{−2α})`.
    pub fn left_mul_simple(&self, i: usize, x: &HeckeElement) -> HeckeElement {
        let d = self.spec.datum();
        let g = self.spec.weyl();
        let a = d.simples()[i];
        let s = g.simple(i);
        let zd = self.zdiff_simple(i);
        let mut out = HeckeElement::zero();
        for (k, c) in x.terms() {
            let sx = d.reflect(a, &k.t);
            // θ_{sx} N_s N_u N_r
            let su = g.mul(s, k.w);
            out.add_term(HKey::new(sx.clone(), su, k.r), c.clone());
            if g.length(su) < g.length(k.w) {
                out.add_term(HKey::new(sx.clone(), k.w, k.r), c * &zd);
            }
            // − G(θ_{sx}) N_u N_r
            if sx != k.t {
                let rhs = self.blz_part(a, &sx);
                let part = rhs.map_keys(|x| HKey::new(x.t.clone(), k.w, k.r));
                out.add_scaled(&part, &c.scale(&Cyclo::from_int(-1)));
            }
        }
        out
    }

    /// The BLZ correction term for `θ_{sx}`, as an element with `w = r = 1`.
    fn blz_part(&self, a: usize, sx: &[i64]) -> HeckeElement {
        let key = (a, sx.to_vec());
        if let Some(v) = self.blz_cache.borrow().get(&key) {
            return v.clone();
        }
        let rhs = self.im.blz_rhs(&ThetaPoly::mono(sx), a).expect("BLZ division");
        let v = self.from_theta_poly(&rhs, 0, 0);
        self.blz_cache.borrow_mut().insert(key, v.clone());
        v
    }

    pub fn left_mul_theta(&self, y: &[i64], x: &HeckeElement) -> HeckeElement {
        x.map_keys(|k| HKey::new(vadd(y, &k.t), k.w, k.r))
    }

    pub fn left_mul_gamma(&self, r: u32, x: &HeckeElement) -> HeckeElement {
        if r == 0 {
            return x.clone();
        }
        let gam = self.spec.gamma();
        let mut out = HeckeElement::zero();
        for (k, c) in x.terms() {
            let key = HKey::new(gam.act(r, &k.t), self.spec.gamma_conj(r, k.w), gam.mul(r, k.r));
            out.add_term(key, c.scale(self.spec.cocycle(r, k.r)));
        }
        out
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let g = self.spec.weyl();
        let mut out = HeckeElement::zero();
        for (k, c) in a.terms() {
            let mut y = self.left_mul_gamma(k.r, b);
            for &i in g.word(k.w).iter().rev() {
                y = self.left_mul_simple(i as usize, &y);
            }
            y = self.left_mul_theta(&k.t, &y);
            out.add_scaled(&y, c);
        }
        out
    }

    /// `N_w⁻¹` for finite `w`.
    pub fn finite_inverse(&self, w: u32) -> HeckeElement {
        let g = self.spec.weyl();
        let mut y = self.one();
        // N_w⁻¹ = N_{s_k}⁻¹ ⋯ N_{s_1}⁻¹ for w = s_1 ⋯ s_k; build from the right.
        for &i in g.word(w) {
            let i = i as usize;
            let mut t = self.left_mul_simple(i, &y);
            t.add_scaled(&y, &self.zdiff_simple(i).scale(&Cyclo::from_int(-1)));
            y = t;
        }
        y
    }

    /// Image of an IM generator: `N_{s_i} ↦ N_{s_i}`, `N_{s_0} ↦ θ_{α_0} N_{s_{α_0}}⁻¹`.
    fn image_gen(&self, i: usize) -> HeckeElement {
        let l = self.spec.datum().semisimple_rank();
        if i < l {
            return HeckeElement::basis(HKey::new(vec![0; self.rank()], self.spec.weyl().simple(i), 0));
        }
        let s0 = &self.im.affine_gens()[i];
        self.left_mul_theta(&s0.t, &self.finite_inverse(s0.w))
    }

    /// `N_ω ↦ θ_x N_{w⁻¹}⁻¹` for `ω = t_x w` of length zero.
    fn image_omega(&self, om: &ExtAffineElt) -> HeckeElement {
        let g = self.spec.weyl();
        self.left_mul_theta(&om.t, &self.finite_inverse(g.inv(om.w)))
    }

    /// The comparison map from the IM basis into the Bernstein basis.
    pub fn from_im(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, c) in h.terms() {
            out.add_scaled(&self.basis_image(k), c);
        }
        out
    }

    fn basis_image(&self, k: &HKey) -> HeckeElement {
        if let Some(v) = self.basis_cache.borrow().get(k) {
            return v.clone();
        }
        let g = self.spec.weyl();
        let (word, om) = g.decompose(&ExtAffineElt { t: k.t.clone(), w: k.w });
        let nr = HeckeElement::basis(HKey::new(vec![0; self.rank()], 0, k.r));
        let mut y = self.mul(&self.image_omega(&om), &nr);
        for &i in word.iter().rev() {
            y = self.mul(&self.gens[i], &y);
        }
        self.basis_cache.borrow_mut().insert(k.clone(), y.clone());
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_classical, Family, Isogeny};

    #[test]
    fn comparison_map_is_multiplicative_a1() {
        for iso in [Isogeny::Sc, Isogeny::Ad] {
            let spec = HeckeSpec::uniform(&build_classical(Family::A, 1, iso).unwrap(), 1).unwrap();
            let im = ImAlgebra::new(spec).unwrap();
            let b = BernsteinAlgebra::new(&im);
            let keys = im.basis_up_to_length(3).unwrap();
            for x in &keys {
                for y in &keys {
                    let hx = HeckeElement::basis(x.clone());
                    let hy = HeckeElement::basis(y.clone());
                    let lhs = b.from_im(&im.mul(&hx, &hy));
                    let rhs = b.mul(&b.from_im(&hx), &b.from_im(&hy));
                    assert_eq!(lhs, rhs, "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn unequal_labels_a1_ad() {
        use crate::hecke::spec::GammaGroup;
        let d = build_classical(Family::A, 1, Isogeny::Ad).unwrap();
        let spec = HeckeSpec::new(d.clone(), vec![(1, 2)], vec!["z".into()], GammaGroup::trivial(1), None).unwrap();
        assert_ne!(spec.z_of(0), spec.z_of(1));
        let im = ImAlgebra::new(spec).unwrap();
        let b = BernsteinAlgebra::new(&im);
        let keys = im.basis_up_to_length(3).unwrap();
        for x in &keys {
            for y in &keys {
                let hx = HeckeElement::basis(x.clone());
                let hy = HeckeElement::basis(y.clone());
                assert_eq!(b.from_im(&im.mul(&hx, &hy)), b.mul(&b.from_im(&hx), &b.from_im(&hy)));
            }
        }
        for x in -3..=3 {
            im.blz_check(&ThetaPoly::mono(&[x]), 0).unwrap();
        }
        assert!(HeckeSpec::new(build_classical(Family::A, 1, Isogeny::Sc).unwrap(), vec![(1, 2)], vec!["z".into()], GammaGroup::trivial(1), None).is_err());
    }

    #[test]
    fn theta_images_are_monomials() {
        let spec = HeckeSpec::uniform(&build_classical(Family::A, 2, Isogeny::Sc).unwrap(), 1).unwrap();
        let im = ImAlgebra::new(spec).unwrap();
        let b = BernsteinAlgebra::new(&im);
        for x in [[1, 0], [-1, 2], [0, -1]] {
            assert_eq!(b.from_im(&im.theta(&x)), b.theta(&x));
        }
    }
}
