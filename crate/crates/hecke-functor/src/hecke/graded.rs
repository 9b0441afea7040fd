//! Graded Hecke algebras `S(t*) ⊗ C[r⃗] ⊗ C[W ⋊ Γ, ♮]` with the cross relation
//! `f T_s − T_s s(f) = r_j (f − s f)/α`.

use std::collections::BTreeMap;
use std::fmt;

use super::spec::{GammaGroup, HeckeSpec};
use crate::numkernel::{Cyclo, LaurentPoly, Rat};
use crate::rootdata::intmat::Mat;
use crate::rootdata::BasedRootDatum;
use crate::weyl::WeylGroup;
use crate::{Error, Result};

/// Name of the coordinate function attached to the `i`-th basis vector of `X`.
pub fn coord(i: usize) -> String {
    format!("x{}", i + 1)
}

#[derive(Clone, Debug)]
pub struct GradedSpec {
    inner: HeckeSpec,
}

impl GradedSpec {
    /// `r_params` gives one deformation parameter per irreducible component.
    pub fn new(datum: BasedRootDatum, r_params: Vec<String>, gamma: GammaGroup, cocycle: Option<Vec<Vec<Cyclo>>>) -> Result<Self> {
        let coords: Vec<String> = (0..datum.rank()).map(coord).collect();
        if r_params.iter().any(|p| coords.contains(p)) {
            return Err(Error::Validation("parameter names clash with coordinate names".into()));
        }
        let l = datum.semisimple_rank();
        let inner = HeckeSpec::new(datum, vec![(1, 1); l], r_params, gamma, cocycle)?;
        Ok(GradedSpec { inner })
    }

    pub fn uniform(datum: &BasedRootDatum) -> Result<Self> {
        let nc = datum.components().len();
        let params = if nc == 1 { vec!["r".into()] } else { (0..nc).map(|j| format!("r{}", j + 1)).collect() };
        GradedSpec::new(datum.clone(), params, GammaGroup::trivial(datum.rank()), None)
    }

    pub fn datum(&self) -> &BasedRootDatum {
        self.inner.datum()
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.inner.weyl()
    }

    pub fn gamma(&self) -> &GammaGroup {
        self.inner.gamma()
    }

    pub fn r_params(&self) -> &[String] {
        self.inner.params()
    }

    pub fn cocycle(&self, a: u32, b: u32) -> &Cyclo {
        self.inner.cocycle(a, b)
    }
}

/// `Σ f_{w,r} T_w T_r` with `f` polynomial in the coordinates and `r⃗`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GradedElement {
    terms: BTreeMap<(u32, u32), LaurentPoly>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn poly(f: LaurentPoly) -> Self {
        Self::term(0, 0, f)
    }

    pub fn term(w: u32, r: u32, f: LaurentPoly) -> Self {
        let mut e = GradedElement::zero();
        e.add_term(w, r, f);
        e
    }

    pub fn add_term(&mut self, w: u32, r: u32, f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry((w, r)).or_default();
        *e = &*e + &f;
        if e.is_zero() {
            self.terms.remove(&(w, r));
        }
    }

    pub fn add(&self, o: &GradedElement) -> GradedElement {
        let mut s = self.clone();
        for (&(w, r), f) in &o.terms {
            s.add_term(w, r, f.clone());
        }
        s
    }

    pub fn sub(&self, o: &GradedElement) -> GradedElement {
        self.add(&o.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> GradedElement {
        let mut s = GradedElement::zero();
        for (&(w, r), f) in &self.terms {
            s.add_term(w, r, f * c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: u32, r: u32) -> LaurentPoly {
        self.terms.get(&(w, r)).cloned().unwrap_or_default()
    }

    /// Set every deformation parameter to zero.
    pub fn specialize_r_zero(&self, spec: &GradedSpec) -> GradedElement {
        let mut s = GradedElement::zero();
        for (&(w, r), f) in &self.terms {
            s.add_term(w, r, drop_params(f, spec.r_params()));
        }
        s
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((w, r), c)| format!("({c})·T[{w},{r}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn drop_params(f: &LaurentPoly, params: &[String]) -> LaurentPoly {
    let idx: Vec<usize> = f.vars().iter().enumerate().filter(|(_, v)| params.contains(v)).map(|(i, _)| i).collect();
    let terms = f.terms().filter(|(e, _)| idx.iter().all(|&i| e[i] == 0)).map(|(e, c)| (e.clone(), c.clone())).collect();
    LaurentPoly::from_parts(f.vars().to_vec(), terms).expect("same variables")
}

/// The linear form `Σ x_i v_i` for a vector of `X`.
pub fn linear_form(v: &[i64]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            p = &p + &LaurentPoly::monomial(&coord(i), 1).scale(&Cyclo::from_int(c));
        }
    }
    p
}

/// Apply a lattice automorphism of `X` to a polynomial in the coordinates.
pub fn act_poly(m: &Mat, f: &LaurentPoly) -> LaurentPoly {
    let vars = f.vars().to_vec();
    let images: Vec<Option<LaurentPoly>> = vars
        .iter()
        .map(|v| {
            let i = (0..m.rows()).find(|&i| coord(i) == *v)?;
            Some(linear_form(&m.col(i)))
        })
        .collect();
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        let mut t = LaurentPoly::constant(c.clone());
        for (k, &ek) in e.iter().enumerate() {
            if ek == 0 {
                continue;
            }
            let base = match &images[k] {
                Some(p) => {
                    assert!(ek > 0, "coordinates appear with nonnegative exponents");
                    p.pow(ek as u32)
                }
                None => LaurentPoly::monomial(&vars[k], ek),
            };
            t = &t * &base;
        }
        out = &out + &t;
    }
    out
}

/// Exact quotient of `f` by the linear form of `alpha`.
pub fn div_linear(f: &LaurentPoly, alpha: &[i64]) -> Option<LaurentPoly> {
    let k = alpha.iter().position(|&a| a != 0)?;
    let xk = coord(k);
    let inv = Cyclo::from_rat(Rat::new(1.into(), alpha[k].into()));
    let divisor = linear_form(alpha);
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero();
    loop {
        let Some(pos) = rem.vars().iter().position(|v| *v == xk) else { break };
        let top = rem.terms().map(|(e, _)| e[pos]).max().unwrap_or(0);
        if top <= 0 {
            break;
        }
        let vars = rem.vars().to_vec();
        let lead: Vec<(Vec<i64>, Cyclo)> = rem
            .terms()
            .filter(|(e, _)| e[pos] == top)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[pos] -= 1;
                (e, c * &inv)
            })
            .collect();
        let q = LaurentPoly::from_parts(vars, lead).expect("same variables");
        rem = &rem - &(&q * &divisor);
        quot = &quot + &q;
    }
    rem.is_zero().then_some(quot)
}

pub struct GradedAlgebra {
    spec: GradedSpec,
}

impl GradedAlgebra {
    pub fn new(spec: GradedSpec) -> Self {
        GradedAlgebra { spec }
    }

    pub fn spec(&self) -> &GradedSpec {
        &self.spec
    }

    pub fn one(&self) -> GradedElement {
        GradedElement::poly(LaurentPoly::one())
    }

    pub fn t_w(&self, w: u32) -> GradedElement {
        GradedElement::term(w, 0, LaurentPoly::one())
    }

    pub fn t_gamma(&self, r: u32) -> GradedElement {
        GradedElement::term(0, r, LaurentPoly::one())
    }

    /// `T_{s_i} · x` via `T_s f = s(f) T_s + r_j (f − s f)/α`.
    pub fn left_mul_simple(&self, i: usize, x: &GradedElement) -> Result<GradedElement> {
        let d = self.spec.datum();
        let g = self.spec.weyl();
        let a = d.simples()[i];
        let sm = d.reflection_matrix(a);
        let rj = LaurentPoly::monomial(self.spec.inner.param_of_root(a), 1);
        let s = g.simple(i);
        let mut out = GradedElement::zero();
        for (&(w, r), f) in x.terms() {
            let sf = act_poly(&sm, f);
            let q = div_linear(&(f - &sf), d.root(a)).ok_or_else(|| Error::Computation("f − s f is not divisible by α".into()))?;
            out.add_term(g.mul(s, w), r, sf);
            out.add_term(w, r, &rj * &q);
        }
        Ok(out)
    }

    /// `T_w · x` along the given word for `w` (any reduced or unreduced word gives the same result).
    pub fn left_mul_word(&self, word: &[usize], x: &GradedElement) -> Result<GradedElement> {
        let mut y = x.clone();
        for &i in word.iter().rev() {
            y = self.left_mul_simple(i, &y)?;
        }
        Ok(y)
    }

    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let g = self.spec.weyl();
        let gam = self.spec.gamma();
        let mut out = GradedElement::zero();
        for (&(w, r), f) in a.terms() {
            for (&(v, r2), h) in b.terms() {
                // T_r h T_v T_{r2} = r(h) T_{r v r⁻¹} κ(r, r2) T_{r r2}
                let rh = act_poly(gam.mat(r), h);
                let word: Vec<usize> = g.word(w).iter().map(|&i| i as usize).collect();
                let y = self.left_mul_word(&word, &GradedElement::poly(rh))?;
                let v2 = self.spec.inner.gamma_conj(r, v);
                let k = LaurentPoly::constant(self.spec.cocycle(r, r2).clone());
                for (&(u, _), c) in y.terms() {
                    out.add_term(g.mul(u, v2), gam.mul(r, r2), &(f * c) * &k);
                }
            }
        }
        Ok(out)
    }

    /// The product in `S(t*) ⋊ C[W ⋊ Γ, ♮]` with all deformation parameters zero.
    pub fn mul_undeformed(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let g = self.spec.weyl();
        let gam = self.spec.gamma();
        let mut out = GradedElement::zero();
        for (&(w, r), f) in a.terms() {
            for (&(v, r2), h) in b.terms() {
                let moved = act_poly(&g.matrix(w).mul(gam.mat(r)), h);
                let k = LaurentPoly::constant(self.spec.cocycle(r, r2).clone());
                out.add_term(g.mul(w, self.spec.inner.gamma_conj(r, v)), gam.mul(r, r2), &(f * &moved) * &k);
            }
        }
        out
    }

    pub fn commutator(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_classical, Family, Isogeny};

    fn alg(f: Family, n: usize) -> GradedAlgebra {
        GradedAlgebra::new(GradedSpec::uniform(&build_classical(f, n, Isogeny::Sc).unwrap()).unwrap())
    }

    #[test]
    fn cross_relation_on_the_root() {
        let h = alg(Family::A, 1);
        let a = linear_form(h.spec().datum().root(0));
        let s = h.t_w(h.spec().weyl().simple(0));
        let lhs = h.mul(&GradedElement::poly(a.clone()), &s).unwrap();
        let rhs = h.mul(&s, &GradedElement::poly(a.scale(&Cyclo::from_int(-1)))).unwrap();
        let two_r = LaurentPoly::monomial("r", 1).scale(&Cyclo::from_int(2));
        assert_eq!(lhs.sub(&rhs), GradedElement::poly(two_r));
    }

    #[test]
    fn invariants_are_central_and_words_agree() {
        let h = alg(Family::A, 2);
        let g = h.spec().weyl();
        let x1 = linear_form(&[1, 0]);
        let x2 = linear_form(&[0, 1]);
        // Orbit sum of squares of the fundamental weight coordinates.
        let mut inv = LaurentPoly::zero();
        for w in 0..g.order() as u32 {
            inv = &inv + &act_poly(g.matrix(w), &(&x1 * &x1));
        }
        let f = GradedElement::poly(inv);
        for i in 0..2 {
            assert!(h.commutator(&f, &h.t_w(g.simple(i))).unwrap().is_zero());
        }
        let p = GradedElement::poly(&(&x1 * &x2) * &x2);
        let a = h.left_mul_word(&[0, 1, 0], &p).unwrap();
        let b = h.left_mul_word(&[1, 0, 1], &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(h.left_mul_word(&[0, 0], &p).unwrap(), p);
    }

    #[test]
    fn undeformed_specialization() {
        let h = alg(Family::C, 2);
        let g = h.spec().weyl();
        let f = GradedElement::poly(&linear_form(&[1, 2]) * &linear_form(&[3, -1]));
        for w in 0..g.order() as u32 {
            let t = h.t_w(w);
            let prod = h.mul(&t, &f).unwrap().specialize_r_zero(h.spec());
            assert_eq!(prod, h.mul_undeformed(&t, &f));
        }
    }

    #[test]
    fn division_by_linear_forms() {
        let a = linear_form(&[1, -1]);
        let b = &linear_form(&[2, 1]) * &LaurentPoly::monomial("r", 1);
        assert_eq!(div_linear(&(&a * &b), &[1, -1]), Some(b));
        assert_eq!(div_linear(&linear_form(&[0, 1]), &[1, -1]), None);
    }
}
