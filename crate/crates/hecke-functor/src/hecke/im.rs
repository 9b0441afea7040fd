//! The Iwahori–Matsumoto presentation: basis `N_w N_r`, `w ∈ X ⋊ W`, `r ∈ Γ`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::RwLock;

use super::element::{HKey, HeckeElement};
use super::spec::{z_minus_inv, HeckeSpec};
use super::theta::ThetaPoly;
use crate::numkernel::LaurentPoly;
use crate::rootdata::intmat::{dot, vneg, vsub, Mat};
use crate::weyl::ExtAffineElt;
use crate::{Error, Result};

pub struct ImAlgebra {
    spec: HeckeSpec,
    gens: Vec<ExtAffineElt>,
    zdiff: Vec<LaurentPoly>,
    /// `d_i ∈ X` with `⟨d_i, α_j∨⟩ = m_i δ_ij`, `m_i ≥ 1` minimal.
    dom_gens: Vec<Vec<i64>>,
    dom_mult: Vec<i64>,
    decomp: RwLock<HashMap<ExtAffineElt, (Vec<usize>, ExtAffineElt)>>,
    thetas: RwLock<HashMap<Vec<i64>, HeckeElement>>,
}

impl Clone for ImAlgebra {
    fn clone(&self) -> Self {
        ImAlgebra::new(self.spec.clone()).expect("already validated")
    }
}

impl std::fmt::Debug for ImAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ImAlgebra").field("spec", &self.spec).finish()
    }
}

/// Minimal dominant vectors dual to the simple coroots.
pub fn dominant_generators(d: &crate::rootdata::BasedRootDatum) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let rows: Vec<Vec<i64>> = d.simples().iter().map(|&s| d.coroot(s).to_vec()).collect();
    let c = Mat::from_rows(&rows, d.rank());
    let l = rows.len();
    let mut gens = Vec::with_capacity(l);
    let mut mults = Vec::with_capacity(l);
    for i in 0..l {
        let mut found = None;
        for m in 1..=10_000i64 {
            let mut rhs = vec![0; l];
            rhs[i] = m;
            if let Some(x) = c.solve_integer(&rhs) {
                found = Some((x, m));
                break;
            }
        }
        let (x, m) = found.ok_or_else(|| Error::Computation("no dominant generator found".into()))?;
        gens.push(x);
        mults.push(m);
    }
    Ok((gens, mults))
}

impl ImAlgebra {
    pub fn new(spec: HeckeSpec) -> Result<Self> {
        let gens = spec.weyl().affine_simples();
        let zdiff = (0..gens.len()).map(|i| z_minus_inv(spec.z_of(i))).collect();
        let (dom_gens, dom_mult) = dominant_generators(spec.datum())?;
        Ok(ImAlgebra {
            spec,
            gens,
            zdiff,
            dom_gens,
            dom_mult,
            decomp: RwLock::new(HashMap::new()),
            thetas: RwLock::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &HeckeSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.datum().rank()
    }

    pub fn affine_gens(&self) -> &[ExtAffineElt] {
        &self.gens
    }

    pub fn key(&self, e: &ExtAffineElt, r: u32) -> HKey {
        HKey::new(e.t.clone(), e.w, r)
    }

    pub fn ext(k: &HKey) -> ExtAffineElt {
        ExtAffineElt { t: k.t.clone(), w: k.w }
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(HKey::new(vec![0; self.rank()], 0, 0))
    }

    pub fn n(&self, e: &ExtAffineElt) -> HeckeElement {
        HeckeElement::basis(self.key(e, 0))
    }

    pub fn n_gamma(&self, r: u32) -> HeckeElement {
        HeckeElement::basis(HKey::new(vec![0; self.rank()], 0, r))
    }

    /// `N_s` for the `i`-th affine simple reflection.
    pub fn gen(&self, i: usize) -> HeckeElement {
        self.n(&self.gens[i])
    }

    pub fn length(&self, k: &HKey) -> usize {
        self.spec.weyl().ext_length(&Self::ext(k))
    }

    /// `z(s) − z(s)⁻¹` for the `i`-th affine simple reflection.
    pub fn zdiff(&self, i: usize) -> &LaurentPoly {
        &self.zdiff[i]
    }

    fn decompose(&self, e: &ExtAffineElt) -> (Vec<usize>, ExtAffineElt) {
        if let Some(d) = self.decomp.read().unwrap().get(e) {
            return d.clone();
        }
        let d = self.spec.weyl().decompose(e);
        self.decomp.write().unwrap().insert(e.clone(), d.clone());
        d
    }

    /// `N_s · x` for the `i`-th affine simple reflection.
    pub fn left_mul_gen(&self, i: usize, x: &HeckeElement) -> HeckeElement {
        let g = self.spec.weyl();
        let s = &self.gens[i];
        let mut out = HeckeElement::zero();
        for (k, c) in x.terms() {
            let v = Self::ext(k);
            let sv = g.ext_mul(s, &v);
            let up = g.ext_length(&sv) > g.ext_length(&v);
            out.add_term(HKey::new(sv.t, sv.w, k.r), c.clone());
            if !up {
                out.add_term(k.clone(), c * &self.zdiff[i]);
            }
        }
        out
    }

    /// `N_ω · x` for a length-zero `ω`.
    pub fn left_mul_omega(&self, om: &ExtAffineElt, x: &HeckeElement) -> HeckeElement {
        let g = self.spec.weyl();
        if om.w == 0 && om.t.iter().all(|&c| c == 0) {
            return x.clone();
        }
        x.map_keys(|k| {
            let v = g.ext_mul(om, &Self::ext(k));
            HKey::new(v.t, v.w, k.r)
        })
    }

    /// `N_r · x` for `r ∈ Γ`.
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

    /// `N_k · x` for a basis index `k`.
    pub fn mul_basis_left(&self, k: &HKey, x: &HeckeElement) -> HeckeElement {
        let (word, om) = self.decompose(&Self::ext(k));
        let mut y = self.left_mul_gamma(k.r, x);
        y = self.left_mul_omega(&om, &y);
        for &i in word.iter().rev() {
            y = self.left_mul_gen(i, &y);
        }
        y
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, c) in a.terms() {
            out.add_scaled(&self.mul_basis_left(k, b), c);
        }
        out
    }

    pub fn commutator(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// `N_w⁻¹` for `w ∈ X ⋊ W` (no `Γ` part).
    pub fn inverse_ext(&self, e: &ExtAffineElt) -> HeckeElement {
        let g = self.spec.weyl();
        let (word, om) = self.decompose(e);
        let mut y = self.one();
        for &i in &word {
            let mut t = self.left_mul_gen(i, &y);
            t.add_scaled(&y, &self.zdiff[i].scale(&crate::numkernel::Cyclo::from_int(-1)));
            y = t;
        }
        self.left_mul_omega(&g.ext_inv(&om), &y)
    }

    /// Inverse of a basis element `N_w N_r`.
    pub fn inverse_basis(&self, k: &HKey) -> HeckeElement {
        let gam = self.spec.gamma();
        let inv_w = self.inverse_ext(&Self::ext(k));
        if k.r == 0 {
            return inv_w;
        }
        let ri = gam.inv(k.r);
        let c = self.spec.cocycle(k.r, ri).inv().expect("cocycle values are nonzero");
        self.left_mul_gamma(ri, &inv_w).scale_cyclo(&c)
    }

    /// `x = x₁ − x₂` with both `x_i` dominant.
    pub fn dominant_split(&self, x: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let d = self.spec.datum();
        let mut x2 = vec![0i64; x.len()];
        for (i, &s) in d.simples().iter().enumerate() {
            let p = dot(x, d.coroot(s));
            if p < 0 {
                let k = (-p + self.dom_mult[i] - 1) / self.dom_mult[i];
                for (a, b) in x2.iter_mut().zip(&self.dom_gens[i]) {
                    *a += k * b;
                }
            }
        }
        let x1: Vec<i64> = x.iter().zip(&x2).map(|(a, b)| a + b).collect();
        (x1, x2)
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        let d = self.spec.datum();
        d.simples().iter().all(|&s| dot(x, d.coroot(s)) >= 0)
    }

    /// `θ_x = N_{t_{x₁}} N_{t_{x₂}}⁻¹` for `x = x₁ − x₂`, `x_i` dominant.
    pub fn theta(&self, x: &[i64]) -> HeckeElement {
        if let Some(t) = self.thetas.read().unwrap().get(x) {
            return t.clone();
        }
        let g = self.spec.weyl();
        let (x1, x2) = self.dominant_split(x);
        let t = if x2.iter().all(|&c| c == 0) {
            self.n(&g.translation(&x1))
        } else {
            let inv = self.inverse_ext(&g.translation(&x2));
            self.mul_basis_left(&HKey::new(x1, 0, 0), &inv)
        };
        self.thetas.write().unwrap().insert(x.to_vec(), t.clone());
        t
    }

    pub fn theta_poly(&self, p: &ThetaPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in p.terms() {
            out.add_scaled(&self.theta(x), c);
        }
        out
    }

    /// `c_α = (z^λ − z^{−λ}) + θ_{−α}(z^{λ*} − z^{−λ*})` for root index `a`.
    pub fn blz_factor(&self, a: usize) -> ThetaPoly {
        let d = self.spec.datum();
        let (lam, lams) = self.spec.label(a);
        let p = self.spec.param_of_root(a);
        let zl = z_minus_inv(&LaurentPoly::monomial(p, lam as i64));
        let zls = z_minus_inv(&LaurentPoly::monomial(p, lams as i64));
        let mut c = ThetaPoly::term(vec![0; d.rank()], zl);
        c.add_term(vneg(d.root(a)), zls);
        c
    }

    /// `c_α (f − s_α f) / (1 − θ_{−2α})`, or an error if the division fails.
    pub fn blz_rhs(&self, f: &ThetaPoly, a: usize) -> Result<ThetaPoly> {
        let d = self.spec.datum();
        let sf = f.act(&d.reflection_matrix(a));
        let num = self.blz_factor(a).mul(&f.sub(&sf));
        let beta: Vec<i64> = d.root(a).iter().map(|c| -2 * c).collect();
        num.div_one_minus(&beta, d.coroot(a))
            .ok_or_else(|| Error::Computation("BLZ numerator is not divisible by 1 − θ_{−2α}".into()))
    }

    /// The commutator `f N_s − N_s s(f)` for the `i`-th simple reflection,
    /// checked against the BLZ right-hand side.
    pub fn blz_check(&self, f: &ThetaPoly, i: usize) -> Result<HeckeElement> {
        let d = self.spec.datum();
        let a = d.simples()[i];
        let ns = self.gen(i);
        let sf = f.act(&d.reflection_matrix(a));
        let lhs = self.mul(&self.theta_poly(f), &ns).sub(&self.mul(&ns, &self.theta_poly(&sf)));
        let rhs = self.theta_poly(&self.blz_rhs(f, a)?);
        if lhs != rhs {
            return Err(Error::Computation("BLZ relation fails".into()));
        }
        Ok(lhs)
    }

    /// Generators tested by [`is_central`](Self::is_central): every `N_s`
    /// (finite and affine), `θ_{e_i}` for the standard basis of `X`, and `N_r`.
    pub fn central_test_generators(&self) -> Vec<HeckeElement> {
        let mut out: Vec<HeckeElement> = (0..self.gens.len()).map(|i| self.gen(i)).collect();
        for i in 0..self.rank() {
            let mut e = vec![0; self.rank()];
            e[i] = 1;
            out.push(self.theta(&e));
        }
        for r in 1..self.spec.gamma().order() as u32 {
            out.push(self.n_gamma(r));
        }
        out
    }

    pub fn is_central(&self, a: &HeckeElement) -> bool {
        self.central_test_generators().iter().all(|g| self.commutator(a, g).is_zero())
    }

    /// `Σ θ_y` over the `W ⋊ Γ`-orbit of `x`.
    pub fn symmetrized_theta(&self, x: &[i64]) -> ThetaPoly {
        let g = self.spec.weyl();
        let gam = self.spec.gamma();
        let mut orbit = BTreeSet::new();
        for r in 0..gam.order() as u32 {
            let rx = gam.act(r, x);
            for w in 0..g.order() as u32 {
                orbit.insert(g.act(w, &rx));
            }
        }
        let mut p = ThetaPoly::zero();
        for y in orbit {
            p.add_term(y, LaurentPoly::one());
        }
        p
    }

    /// All basis indices of length ≤ `max_len`, for semisimple data.
    pub fn basis_up_to_length(&self, max_len: usize) -> Result<Vec<HKey>> {
        let g = self.spec.weyl();
        let omega = g.omega_subgroup()?;
        if self.spec.datum().semisimple_rank() < self.rank() {
            return Err(Error::Computation("basis enumeration needs semisimple data".into()));
        }
        let mut seen: HashSet<ExtAffineElt> = omega.iter().cloned().collect();
        let mut layer = omega;
        let mut all = layer.clone();
        for len in 1..=max_len {
            let mut next = Vec::new();
            for e in &layer {
                for s in &self.gens {
                    let n = g.ext_mul(s, e);
                    if g.ext_length(&n) == len && seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut keys: Vec<HKey> = all
            .iter()
            .flat_map(|e| (0..self.spec.gamma().order() as u32).map(move |r| HKey::new(e.t.clone(), e.w, r)))
            .collect();
        keys.sort_by_key(|k| (self.length(k), k.clone()));
        Ok(keys)
    }

    /// The action of `Γ` on `X` applied to a `θ`-polynomial.
    pub fn gamma_act_theta(&self, r: u32, p: &ThetaPoly) -> ThetaPoly {
        p.act(self.spec.gamma().mat(r))
    }

    /// `w(x) − x` is in `X` for the given rational `x`.
    pub fn moves_into_lattice(&self, x: &[crate::numkernel::Rat]) -> bool {
        let g = self.spec.weyl();
        (0..g.order() as u32).all(|w| {
            let m = g.matrix(w);
            (0..x.len()).all(|i| {
                let mut s = -x[i].clone();
                for (j, xj) in x.iter().enumerate() {
                    s += crate::numkernel::Rat::from_integer(m.get(i, j).into()) * xj;
                }
                s.is_integer()
            })
        })
    }

    pub fn sub_lattice(a: &[i64], b: &[i64]) -> Vec<i64> {
        vsub(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_classical, Family, Isogeny};

    fn alg(f: Family, n: usize, iso: Isogeny, lab: u32) -> ImAlgebra {
        ImAlgebra::new(HeckeSpec::uniform(&build_classical(f, n, iso).unwrap(), lab).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        for lab in [1, 2] {
            let h = alg(Family::A, 2, Isogeny::Sc, lab);
            for i in 0..h.affine_gens().len() {
                let ns = h.gen(i);
                let lhs = h.mul(&ns, &ns);
                let mut rhs = h.one();
                rhs.add_scaled(&ns, h.zdiff(i));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn braid_products_and_unit() {
        let h = alg(Family::A, 2, Isogeny::Sc, 1);
        let g = h.spec().weyl();
        let s1s2 = g.mul(g.simple(0), g.simple(1));
        assert_eq!(h.mul(&h.gen(0), &h.gen(1)), h.n(&g.finite(s1s2)));
        let x = h.gen(2);
        assert_eq!(h.mul(&h.one(), &x), x);
    }

    #[test]
    fn theta_is_a_homomorphism_a1() {
        let h = alg(Family::A, 1, Isogeny::Sc, 1);
        let t = h.theta(&[2]);
        let ti = h.theta(&[-2]);
        assert_eq!(h.mul(&t, &ti), h.one());
        assert_eq!(h.mul(&h.theta(&[1]), &h.theta(&[-3])), h.theta(&[-2]));
        assert_eq!(h.mul(&h.theta(&[-1]), &h.theta(&[3])), h.mul(&h.theta(&[3]), &h.theta(&[-1])));
    }

    #[test]
    fn blz_in_a1_and_c2() {
        for (f, n) in [(Family::A, 1), (Family::C, 2), (Family::A, 2)] {
            let h = alg(f, n, Isogeny::Sc, 1);
            let d = h.spec().datum().clone();
            for i in 0..d.semisimple_rank() {
                let a = d.simples()[i];
                h.blz_check(&ThetaPoly::mono(d.root(a)), i).unwrap();
                let zero = h.blz_check(&ThetaPoly::mono(&vec![0; d.rank()]), i).unwrap();
                assert!(zero.is_zero());
            }
        }
    }
}
