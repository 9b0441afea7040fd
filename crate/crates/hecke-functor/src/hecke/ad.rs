//! The automorphisms `Ad(x_g)` and `α_g`, and a generic relation checker.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::element::{HKey, HeckeElement};
use super::im::ImAlgebra;
use super::spec::{GammaGroup, HeckeSpec};
use crate::numkernel::{Cyclo, LaurentPoly, Rat};
use crate::rootdata::intmat::{rat_matrix_to_int, smith, Mat};
use crate::rootdata::BasedRootDatum;
use crate::weyl::ExtAffineElt;
use crate::{Error, Result};

/// `Ad(x_g)` for `x_g ∈ X ⊗ Q`: conjugation by `θ_{x_g}` computed in the
/// algebra of the lattice `P = X + Z·x_g`, restricted back to `X`.
pub struct AdXg {
    x_g: Vec<Rat>,
    big: ImAlgebra,
    to_p: Mat,
    from_p: Vec<Vec<Rat>>,
    theta: HeckeElement,
    theta_inv: HeckeElement,
}

fn violation(m: &str) -> Error {
    Error::Computation(format!("Condition 2 violation: {m}"))
}

fn int(r: &Rat) -> i64 {
    r.to_integer().to_i64().expect("integer in range")
}

impl AdXg {
    pub fn new(h: &ImAlgebra, x_g: &[Rat]) -> Result<Self> {
        let spec = h.spec();
        let d = spec.datum();
        let r = d.rank();
        if x_g.len() != r {
            return Err(Error::Validation("x_g has the wrong length".into()));
        }
        // Condition 2.ii: w(x_g) − x_g ∈ X for w ∈ W ⋊ Γ.
        if !h.moves_into_lattice(x_g) {
            return Err(violation("w(x_g) − x_g is not in X for some w ∈ W"));
        }
        let gam = spec.gamma();
        for m in gam.mats() {
            for i in 0..r {
                let mut s = -x_g[i].clone();
                for (j, xj) in x_g.iter().enumerate() {
                    s += Rat::from_integer(m.get(i, j).into()) * xj;
                }
                if !s.is_integer() {
                    return Err(violation("r(x_g) − x_g is not in X for some r ∈ Γ"));
                }
            }
        }
        let den = x_g.iter().fold(num_bigint::BigInt::one(), |a, x| a.lcm(x.denom()));
        let den = den.to_i64().ok_or_else(|| Error::Validation("denominator too large".into()))?;
        let v: Vec<i64> = x_g.iter().map(|x| int(&(x * Rat::from_integer(den.into())))).collect();
        // Basis of den·P from the columns of [den·I | v].
        let mut g = Mat::zeros(r, r + 1);
        for i in 0..r {
            g.set(i, i, den);
            g.set(i, r, v[i]);
        }
        let sn = smith(&g);
        let mut b = Mat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                b.set(i, j, sn.u_inv.get(i, j) * sn.d.get(j, j));
            }
        }
        let binv = b.inverse_rational().ok_or_else(|| Error::Computation("degenerate lattice".into()))?;
        let scale = |m: &[Vec<Rat>], k: i64| -> Vec<Vec<Rat>> {
            m.iter().map(|row| row.iter().map(|x| x * Rat::from_integer(k.into())).collect()).collect()
        };
        let to_p = rat_matrix_to_int(&scale(&binv, den), r).expect("X embeds in P");
        let from_p: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..r).map(|j| Rat::new(b.get(i, j).into(), den.into())).collect())
            .collect();
        // Coroots in P-coordinates: B^T α∨ / den.
        let bt = b.transpose();
        let mut coroots = Vec::new();
        for c in d.coroots() {
            let y = bt.mul_vec(c);
            if y.iter().any(|t| t % den != 0) {
                return Err(violation("coroots are not integral on X + Z·x_g"));
            }
            coroots.push(y.iter().map(|t| t / den).collect::<Vec<i64>>());
        }
        let roots: Vec<Vec<i64>> = d.roots().iter().map(|a| to_p.mul_vec(a)).collect();
        let dp = BasedRootDatum::new(r, roots, coroots, d.simples().to_vec())?;
        let to_p_inv = &from_p;
        let mut gmats = Vec::new();
        for m in gam.mats() {
            // R_P = to_p · R · to_p⁻¹
            let prod: Vec<Vec<Rat>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            let mut s = Rat::from_integer(0.into());
                            for k in 0..r {
                                let tr: i64 = (0..r).map(|l| to_p.get(i, l) * m.get(l, k)).sum();
                                s += Rat::from_integer(tr.into()) * &to_p_inv[k][j];
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            gmats.push(rat_matrix_to_int(&prod, r).ok_or_else(|| violation("Γ does not preserve X + Z·x_g"))?);
        }
        let simple_labels: Vec<(u32, u32)> = d.simples().iter().map(|&s| spec.label(s)).collect();
        let pspec = HeckeSpec::new(
            dp,
            simple_labels,
            spec.params().to_vec(),
            GammaGroup::from_elements(gmats)?,
            Some(spec.cocycle_table().to_vec()),
        )
        .map_err(|e| violation(&format!("labels are not admissible on X + Z·x_g ({e})")))?;
        let ngens = spec.weyl().affine_simples().len();
        if (0..ngens).any(|i| pspec.z_of(i) != spec.z_of(i)) {
            return Err(violation("parameters of the affine reflections change on X + Z·x_g"));
        }
        for w in 0..spec.weyl().order() as u32 {
            if pspec.weyl().word(w) != spec.weyl().word(w) {
                return Err(Error::Computation("Weyl group enumerations disagree".into()));
            }
        }
        let big = ImAlgebra::new(pspec)?;
        check_omega_invariance(&big)?;
        let xp: Vec<i64> = (0..r)
            .map(|i| {
                let s: Rat = (0..r).fold(Rat::from_integer(0.into()), |a, j| a + &binv[i][j] * Rat::from_integer(v[j].into()));
                int(&s)
            })
            .collect();
        let theta = big.theta(&xp);
        let theta_inv = big.theta(&xp.iter().map(|c| -c).collect::<Vec<_>>());
        Ok(AdXg { x_g: x_g.to_vec(), big, to_p, from_p, theta, theta_inv })
    }

    pub fn x_g(&self) -> &[Rat] {
        &self.x_g
    }

    fn embed(&self, h: &HeckeElement) -> HeckeElement {
        h.map_keys(|k| HKey::new(self.to_p.mul_vec(&k.t), k.w, k.r))
    }

    fn restrict(&self, h: &HeckeElement) -> Result<HeckeElement> {
        let r = self.to_p.rows();
        let mut out = HeckeElement::zero();
        for (k, c) in h.terms() {
            let mut t = Vec::with_capacity(r);
            for i in 0..r {
                let s = (0..r).fold(Rat::from_integer(0.into()), |a, j| a + &self.from_p[i][j] * Rat::from_integer(k.t[j].into()));
                if !s.is_integer() {
                    return Err(violation("Ad(x_g) leaves the algebra of X"));
                }
                t.push(int(&s));
            }
            out.add_term(HKey::new(t, k.w, k.r), c.clone());
        }
        Ok(out)
    }

    pub fn apply(&self, h: &HeckeElement) -> Result<HeckeElement> {
        let e = self.embed(h);
        let c = self.big.mul(&self.big.mul(&self.theta, &e), &self.theta_inv);
        self.restrict(&c)
    }
}

/// The literal basis map `N_w ↦ N_{t_{x_g} w t_{−x_g}}` for integral `x_g`.
/// It agrees with `Ad(x_g)` on simple reflections conjugated to simple
/// reflections but is not multiplicative in general.
pub fn literal_conjugate(h: &ImAlgebra, x_g: &[i64], e: &ExtAffineElt) -> ExtAffineElt {
    let g = h.spec().weyl();
    let t = g.translation(x_g);
    g.ext_mul(&g.ext_mul(&t, e), &g.ext_inv(&t))
}

/// `z(s)` must be constant under conjugation by length-zero elements.
fn check_omega_invariance(h: &ImAlgebra) -> Result<()> {
    let g = h.spec().weyl();
    let gens = h.affine_gens().to_vec();
    for om in g.omega_subgroup()? {
        let oi = g.ext_inv(&om);
        for (i, s) in gens.iter().enumerate() {
            let c = g.ext_mul(&g.ext_mul(&om, s), &oi);
            let j = gens.iter().position(|x| *x == c).ok_or_else(|| Error::Computation("Ω does not permute the affine simple reflections".into()))?;
            if h.spec().z_of(i) != h.spec().z_of(j) {
                return Err(violation("parameters are not Ω-invariant on X + Z·x_g"));
            }
        }
    }
    Ok(())
}

/// Order of `s_i s_j` in the extended affine Weyl group, if finite and ≤ 12.
pub fn braid_order(h: &ImAlgebra, i: usize, j: usize) -> Option<usize> {
    let g = h.spec().weyl();
    let gens = h.affine_gens();
    let p = g.ext_mul(&gens[i], &gens[j]);
    let mut cur = p.clone();
    for m in 1..=12 {
        if cur == g.ext_identity() {
            return Some(m);
        }
        cur = g.ext_mul(&cur, &p);
    }
    None
}

/// An algebra that can receive images of IM generators.
pub trait HeckeTarget {
    type Elt: Clone + PartialEq + std::fmt::Debug;
    fn unit(&self) -> Self::Elt;
    fn times(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn plus(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn scaled(&self, a: &Self::Elt, c: &LaurentPoly) -> Self::Elt;
}

impl HeckeTarget for ImAlgebra {
    type Elt = HeckeElement;
    fn unit(&self) -> HeckeElement {
        self.one()
    }
    fn times(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        self.mul(a, b)
    }
    fn plus(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        a.add(b)
    }
    fn scaled(&self, a: &HeckeElement, c: &LaurentPoly) -> HeckeElement {
        a.scale(c)
    }
}

/// Check that `f` (a candidate algebra map from `h` to `target`, given on
/// elements) sends the defining relations to relations: quadratic and braid
/// relations of the affine simple reflections, `θ_x θ_y = θ_{x+y}` on a basis
/// and its negatives, the BLZ cross relation against `θ_{±e_i}`, and the
/// relations of `C[Γ, κ]` including its action.
pub fn check_relations_preserved<T: HeckeTarget>(
    h: &ImAlgebra,
    target: &T,
    f: &dyn Fn(&HeckeElement) -> Result<T::Elt>,
) -> Result<()> {
    let fail = |m: String| Err(Error::Computation(m));
    let minus = |a: &T::Elt, b: &T::Elt| target.plus(a, &target.scaled(b, &LaurentPoly::from_int(-1)));
    let ngen = h.affine_gens().len();
    let imgs: Vec<T::Elt> = (0..ngen).map(|i| f(&h.gen(i))).collect::<Result<_>>()?;
    if f(&h.one())? != target.unit() {
        return fail("unit is not preserved".into());
    }
    for i in 0..ngen {
        let lhs = target.times(&imgs[i], &imgs[i]);
        let rhs = target.plus(&target.unit(), &target.scaled(&imgs[i], h.zdiff(i)));
        if lhs != rhs {
            return fail(format!("quadratic relation of generator {i} fails"));
        }
    }
    for i in 0..ngen {
        for j in i + 1..ngen {
            if let Some(m) = braid_order(h, i, j) {
                let mut a = target.unit();
                let mut b = target.unit();
                for k in 0..m {
                    let (x, y) = if k % 2 == 0 { (i, j) } else { (j, i) };
                    a = target.times(&a, &imgs[x]);
                    b = target.times(&b, &imgs[y]);
                }
                if a != b {
                    return fail(format!("braid relation ({i},{j}) of order {m} fails"));
                }
            }
        }
    }
    let r = h.rank();
    let mut lattice: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        lattice.push(e.clone());
        e[i] = -1;
        lattice.push(e);
    }
    for x in &lattice {
        for y in &lattice {
            let lhs = target.times(&f(&h.theta(x))?, &f(&h.theta(y))?);
            let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            if lhs != f(&h.theta(&sum))? {
                return fail("θ multiplicativity fails".into());
            }
        }
    }
    let d = h.spec().datum();
    for i in 0..d.semisimple_rank() {
        let a = d.simples()[i];
        for x in &lattice {
            let fx = super::theta::ThetaPoly::mono(x);
            let sx = fx.act(&d.reflection_matrix(a));
            let lhs = minus(
                &target.times(&f(&h.theta_poly(&fx))?, &imgs[i]),
                &target.times(&imgs[i], &f(&h.theta_poly(&sx))?),
            );
            if lhs != f(&h.theta_poly(&h.blz_rhs(&fx, a)?))? {
                return fail(format!("BLZ relation for simple root {i} fails"));
            }
        }
    }
    let gam = h.spec().gamma();
    for a in 0..gam.order() as u32 {
        let fa = f(&h.n_gamma(a))?;
        for b in 0..gam.order() as u32 {
            let lhs = target.times(&fa, &f(&h.n_gamma(b))?);
            let k = LaurentPoly::constant(h.spec().cocycle(a, b).clone());
            if lhs != target.scaled(&f(&h.n_gamma(gam.mul(a, b)))?, &k) {
                return fail("twisted group algebra relation fails".into());
            }
        }
        for (i, s) in h.affine_gens().iter().enumerate() {
            let conj = ExtAffineElt { t: gam.act(a, &s.t), w: h.spec().gamma_conj(a, s.w) };
            if target.times(&fa, &imgs[i]) != target.times(&f(&h.n(&conj))?, &fa) {
                return fail("Γ does not act on the generators as required".into());
            }
        }
    }
    Ok(())
}

/// The twist `N_w N_r ↦ ψ(r) N_w N_r` into the algebra with cocycle
/// `κ′(r, r′) = κ(r, r′) ψ(r r′) / (ψ(r) ψ(r′))`.
pub struct AlphaTwist {
    psi: Vec<Cyclo>,
    target: HeckeSpec,
}

impl AlphaTwist {
    pub fn new(spec: &HeckeSpec, psi: Vec<Cyclo>) -> Result<Self> {
        let gam = spec.gamma();
        let n = gam.order();
        if psi.len() != n {
            return Err(Error::Validation(format!("ψ needs {n} values")));
        }
        if psi.iter().any(|c| c.as_root_of_unity().is_none()) {
            return Err(Error::Validation("ψ values must be roots of unity".into()));
        }
        if !psi[0].is_one() {
            return Err(Error::Validation("ψ must be 1 on the identity".into()));
        }
        let kappa: Vec<Vec<Cyclo>> = (0..n as u32)
            .map(|a| {
                (0..n as u32)
                    .map(|b| {
                        let num = spec.cocycle(a, b) * &psi[gam.mul(a, b) as usize];
                        let den = &psi[a as usize] * &psi[b as usize];
                        &num / &den
                    })
                    .collect()
            })
            .collect();
        Ok(AlphaTwist { psi, target: spec.with_cocycle(kappa)? })
    }

    pub fn target(&self) -> &HeckeSpec {
        &self.target
    }

    pub fn psi(&self) -> &[Cyclo] {
        &self.psi
    }

    pub fn apply(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, c) in h.terms() {
            out.add_term(k.clone(), c * &LaurentPoly::constant(self.psi[k.r as usize].clone()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_classical, Family, Isogeny};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn ad_omega_on_a1_sc() {
        let spec = HeckeSpec::uniform(&build_classical(Family::A, 1, Isogeny::Sc).unwrap(), 1).unwrap();
        let h = ImAlgebra::new(spec).unwrap();
        let ad = AdXg::new(&h, &[rat(1, 1)]).unwrap();
        let g = h.spec().weyl();
        let img = ad.apply(&h.gen(0)).unwrap();
        // N_{s · t_{−α}} = N_{t_α s}
        let expect = g.ext_mul(&g.finite(1), &g.translation(&[-2]));
        assert_eq!(img, h.n(&expect));
        assert_eq!(literal_conjugate(&h, &[1], &g.finite(1)), expect);
        check_relations_preserved(&h, &h, &|x| ad.apply(x)).unwrap();
    }

    #[test]
    fn ad_half_root_on_a1_ad() {
        let spec = HeckeSpec::uniform(&build_classical(Family::A, 1, Isogeny::Ad).unwrap(), 1).unwrap();
        let h = ImAlgebra::new(spec).unwrap();
        let ad = AdXg::new(&h, &[rat(1, 2)]).unwrap();
        let back = AdXg::new(&h, &[rat(-1, 2)]).unwrap();
        check_relations_preserved(&h, &h, &|x| ad.apply(x)).unwrap();
        for x in -2..=2 {
            assert_eq!(ad.apply(&h.theta(&[x])).unwrap(), h.theta(&[x]));
        }
        for i in 0..2 {
            let gi = h.gen(i);
            assert_eq!(back.apply(&ad.apply(&gi).unwrap()).unwrap(), gi);
        }
        assert!(AdXg::new(&h, &[rat(1, 4)]).is_err());
    }

    #[test]
    fn alpha_twist_of_cyclic_gamma() {
        // Three copies of A1 permuted cyclically.
        let a1 = build_classical(Family::A, 1, Isogeny::Sc).unwrap();
        let d = a1.direct_sum(&a1).direct_sum(&a1);
        let cyc = Mat::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], 3);
        let gam = GammaGroup::generated_by(&d, &[cyc]).unwrap();
        assert_eq!(gam.order(), 3);
        let spec = HeckeSpec::new(d, vec![(1, 1); 3], vec!["z".into(); 3], gam, None).unwrap();
        let h = ImAlgebra::new(spec.clone()).unwrap();
        let gen = (0..3u32).find(|&r| r != 0).unwrap();
        let mut psi = vec![Cyclo::one(); 3];
        psi[gen as usize] = Cyclo::root_of_unity(1, 3);
        psi[spec.gamma().mul(gen, gen) as usize] = Cyclo::root_of_unity(2, 3);
        let tw = AlphaTwist::new(&spec, psi).unwrap();
        assert_eq!(tw.target().cocycle_table(), spec.cocycle_table());
        let x = h.n_gamma(gen).add(&h.gen(0));
        let mut y = x.clone();
        for _ in 0..3 {
            y = tw.apply(&y);
        }
        assert_eq!(y, x);
        assert_ne!(tw.apply(&x), x);
        let target = ImAlgebra::new(tw.target().clone()).unwrap();
        check_relations_preserved(&h, &target, &|e| Ok(tw.apply(e))).unwrap();
    }
}
