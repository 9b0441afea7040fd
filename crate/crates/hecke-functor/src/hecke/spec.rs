use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numkernel::{Cyclo, LaurentPoly};
use crate::rootdata::intmat::Mat;
use crate::rootdata::{BasedRootDatum, RDMorphism};
use crate::weyl::WeylGroup;
use crate::{Error, Result};

/// A finite group `Γ` of based automorphisms of a root datum, given by its
/// matrices on `X`. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGroup {
    mats: Vec<Mat>,
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

impl GammaGroup {
    pub fn trivial(rank: usize) -> Self {
        GammaGroup { mats: vec![Mat::identity(rank)], table: vec![vec![0]], inverse: vec![0] }
    }

    /// Closure of the given generators under multiplication.
    pub fn generated_by(datum: &BasedRootDatum, gens: &[Mat]) -> Result<Self> {
        let mut mats = vec![Mat::identity(datum.rank())];
        for g in gens {
            let f = RDMorphism::new(datum.clone(), datum.clone(), g.clone())?;
            if !f.is_based_isomorphism() {
                return Err(Error::Validation("Γ element is not an automorphism of the based root datum".into()));
            }
        }
        let mut head = 0;
        while head < mats.len() {
            for g in gens {
                let p = mats[head].mul(g);
                if !mats.contains(&p) {
                    if mats.len() > 64 {
                        return Err(Error::Validation("Γ is too large".into()));
                    }
                    mats.push(p);
                }
            }
            head += 1;
        }
        Self::from_elements(mats)
    }

    /// From a full element list with the identity first.
    pub fn from_elements(mats: Vec<Mat>) -> Result<Self> {
        if mats.is_empty() || !mats[0].is_identity() {
            return Err(Error::Validation("Γ must list the identity first".into()));
        }
        let n = mats.len();
        let mut table = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = mats[i].mul(&mats[j]);
                table[i][j] = mats
                    .iter()
                    .position(|m| *m == p)
                    .ok_or_else(|| Error::Validation("Γ is not closed under multiplication".into()))? as u32;
            }
        }
        let inverse = (0..n)
            .map(|i| table[i].iter().position(|&k| k == 0).map(|k| k as u32))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::Validation("Γ element without inverse".into()))?;
        Ok(GammaGroup { mats, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn mat(&self, r: u32) -> &Mat {
        &self.mats[r as usize]
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn act(&self, r: u32, x: &[i64]) -> Vec<i64> {
        self.mats[r as usize].mul_vec(x)
    }
}

/// Check the 2-cocycle identity and normalisation of a table over `Γ`.
pub fn check_cocycle(g: &GammaGroup, k: &[Vec<Cyclo>]) -> Result<()> {
    let n = g.order();
    if k.len() != n || k.iter().any(|r| r.len() != n) {
        return Err(Error::Validation("cocycle table has the wrong shape".into()));
    }
    for row in k {
        for c in row {
            if c.as_root_of_unity().is_none() {
                return Err(Error::Validation("cocycle values must be roots of unity".into()));
            }
        }
    }
    for r in 0..n {
        if !k[0][r].is_one() || !k[r][0].is_one() {
            return Err(Error::Validation("cocycle is not normalised".into()));
        }
    }
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            for c in 0..n as u32 {
                let ab = g.mul(a, b) as usize;
                let bc = g.mul(b, c) as usize;
                let lhs = &k[a as usize][b as usize] * &k[ab][c as usize];
                let rhs = &k[b as usize][c as usize] * &k[a as usize][bc];
                if lhs != rhs {
                    return Err(Error::Validation("cocycle identity fails".into()));
                }
            }
        }
    }
    Ok(())
}

/// Data of a twisted affine Hecke algebra `H(X, Φ, λ, λ*, z⃗) ⋊ C[Γ, κ]`.
#[derive(Clone, Debug)]
pub struct HeckeSpec {
    datum: BasedRootDatum,
    weyl: Arc<WeylGroup>,
    /// `(λ, λ*)` per root index.
    labels: Vec<(u32, u32)>,
    /// Parameter name per irreducible component.
    params: Vec<String>,
    gamma: GammaGroup,
    cocycle: Vec<Vec<Cyclo>>,
    /// `r w r⁻¹` for `r ∈ Γ`, `w ∈ W`.
    gamma_conj: Vec<Vec<u32>>,
    /// `z(s)` per affine simple reflection.
    zs: Vec<LaurentPoly>,
}

#[derive(Serialize, Deserialize)]
pub struct HeckeSpecJson {
    #[serde(flatten)]
    pub datum: BasedRootDatum,
    /// `[λ, λ*]` per simple root.
    pub labels: Vec<(u32, u32)>,
    pub params: Vec<String>,
    #[serde(default)]
    pub rgroup: Vec<Mat>,
    #[serde(default)]
    pub cocycle: Option<Vec<Vec<Cyclo>>>,
}

impl HeckeSpec {
    /// Equal labels `λ = λ* = label` on every root and one parameter `z_j`
    /// per component, trivial `Γ`.
    pub fn uniform(datum: &BasedRootDatum, label: u32) -> Result<Self> {
        let l = datum.semisimple_rank();
        let nc = datum.components().len();
        let params: Vec<String> = if nc == 1 { vec!["z".into()] } else { (0..nc).map(|j| format!("z{}", j + 1)).collect() };
        HeckeSpec::new(datum.clone(), vec![(label, label); l], params, GammaGroup::trivial(datum.rank()), None)
    }

    /// `labels` is given per simple root and extended to `W`-orbits.
    pub fn new(
        datum: BasedRootDatum,
        simple_labels: Vec<(u32, u32)>,
        params: Vec<String>,
        gamma: GammaGroup,
        cocycle: Option<Vec<Vec<Cyclo>>>,
    ) -> Result<Self> {
        let weyl = Arc::new(WeylGroup::new(&datum)?);
        let l = datum.semisimple_rank();
        if simple_labels.len() != l {
            return Err(Error::Validation(format!("expected {l} labels, got {}", simple_labels.len())));
        }
        let comps = datum.components();
        if params.len() != comps.len() {
            return Err(Error::Validation(format!("expected {} parameter names, got {}", comps.len(), params.len())));
        }
        if gamma.mats.first().map(|m| m.rows()) != Some(datum.rank()) {
            return Err(Error::Validation("Γ acts on a lattice of the wrong rank".into()));
        }
        for m in gamma.mats() {
            let f = RDMorphism::new(datum.clone(), datum.clone(), m.clone())?;
            if !f.is_based_isomorphism() {
                return Err(Error::Validation("Γ element is not an automorphism of the based root datum".into()));
            }
        }
        // Extend labels along W-orbits.
        let nr = datum.num_roots();
        let mut labels: Vec<Option<(u32, u32)>> = vec![None; nr];
        for (i, &s) in datum.simples().iter().enumerate() {
            for w in 0..weyl.order() as u32 {
                let a = weyl.act_root(w, s);
                for b in [a, datum.negative_of(a)] {
                    match labels[b] {
                        None => labels[b] = Some(simple_labels[i]),
                        Some(x) if x != simple_labels[i] => {
                            return Err(Error::Validation("labels are not constant on W-orbits".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let labels: Vec<(u32, u32)> = labels.into_iter().map(|x| x.expect("every root is W-conjugate to a simple root")).collect();
        for (a, &(lam, lams)) in labels.iter().enumerate() {
            if lam != lams && !datum.coroot(a).iter().all(|c| c % 2 == 0) {
                return Err(Error::Validation("λ* differs from λ on a root whose coroot is not in 2X∨".into()));
            }
        }
        for r in 0..gamma.order() as u32 {
            for a in 0..nr {
                let ra = datum.root_index(&gamma.act(r, datum.root(a))).expect("Γ preserves Φ");
                if labels[ra] != labels[a] {
                    return Err(Error::Validation("labels are not Γ-invariant".into()));
                }
                let ca = datum.component_of_root(a);
                if params[datum.component_of_root(ra)] != params[ca] {
                    return Err(Error::Validation("parameters are not Γ-invariant".into()));
                }
            }
        }
        let n = gamma.order();
        let cocycle = cocycle.unwrap_or_else(|| vec![vec![Cyclo::one(); n]; n]);
        check_cocycle(&gamma, &cocycle)?;
        let gamma_conj = (0..n as u32)
            .map(|r| {
                let m = gamma.mat(r);
                let mi = gamma.mat(gamma.inv(r));
                (0..weyl.order() as u32)
                    .map(|w| weyl.from_matrix(&m.mul(weyl.matrix(w)).mul(mi)).expect("Γ normalises W"))
                    .collect()
            })
            .collect();
        let mut spec = HeckeSpec { datum, weyl, labels, params, gamma, cocycle, gamma_conj, zs: vec![] };
        spec.zs = spec.compute_zs();
        Ok(spec)
    }

    pub fn from_json(j: HeckeSpecJson) -> Result<Self> {
        let gamma = if j.rgroup.is_empty() {
            GammaGroup::trivial(j.datum.rank())
        } else {
            GammaGroup::from_elements(j.rgroup)?
        };
        HeckeSpec::new(j.datum, j.labels, j.params, gamma, j.cocycle)
    }

    pub fn to_json(&self) -> HeckeSpecJson {
        HeckeSpecJson {
            datum: self.datum.clone(),
            labels: self.datum.simples().iter().map(|&s| self.labels[s]).collect(),
            params: self.params.clone(),
            rgroup: self.gamma.mats.clone(),
            cocycle: Some(self.cocycle.clone()),
        }
    }

    fn compute_zs(&self) -> Vec<LaurentPoly> {
        let roots = self.weyl.affine_simple_roots();
        let l = self.datum.semisimple_rank();
        roots
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let (lam, lams) = self.labels[a];
                let comp = self.datum.component_of_root(a);
                // The affine reflection uses λ* exactly when α_0∨ ∈ 2X∨.
                let k = if i >= l && self.datum.coroot(a).iter().all(|c| c % 2 == 0) { lams } else { lam };
                LaurentPoly::monomial(&self.params[comp], k as i64)
            })
            .collect()
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn gamma(&self) -> &GammaGroup {
        &self.gamma
    }

    pub fn cocycle(&self, a: u32, b: u32) -> &Cyclo {
        &self.cocycle[a as usize][b as usize]
    }

    pub fn cocycle_table(&self) -> &[Vec<Cyclo>] {
        &self.cocycle
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// `(λ(α), λ*(α))` for root index `a`.
    pub fn label(&self, a: usize) -> (u32, u32) {
        self.labels[a]
    }

    pub fn param_of_root(&self, a: usize) -> &str {
        &self.params[self.datum.component_of_root(a)]
    }

    /// `z(s)` for the `i`-th affine simple reflection (see [`WeylGroup::affine_simples`]).
    pub fn z_of(&self, i: usize) -> &LaurentPoly {
        &self.zs[i]
    }

    /// `r w r⁻¹` in `W`.
    pub fn gamma_conj(&self, r: u32, w: u32) -> u32 {
        self.gamma_conj[r as usize][w as usize]
    }

    /// Same data with a different cocycle.
    pub fn with_cocycle(&self, cocycle: Vec<Vec<Cyclo>>) -> Result<Self> {
        check_cocycle(&self.gamma, &cocycle)?;
        let mut s = self.clone();
        s.cocycle = cocycle;
        Ok(s)
    }
}

/// `z − z⁻¹` for a monomial-or-polynomial `z`.
pub fn z_minus_inv(z: &LaurentPoly) -> LaurentPoly {
    z - &z.bar()
}
