//! Pullback of enhanced toy parameters along homomorphisms `f : G̃ → G`
//! satisfying Condition 1: the dual map on parameters, the induced map
//! `S_φ → S_φ̃` with its `τ` twist, and the multiplicities
//! `m(ρ, ρ̃) = dim Hom_{S_φ}(ρ ⊗ τ⁻¹, ρ̃ ∘ ^S f)`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::finrep::{hom_mult, induce_any, is_linear_character, ClassFunction};
use crate::lparam::{component_group, from_point, relevant_enhancements, tau_character, to_point, ComponentGroupResult, Factor, GroupTag, ToyParameter};
use crate::numkernel::{Cyclo, Rat};
use crate::rootdata::intmat::Mat;
use crate::rootdata::{Factorization, RDMorphism};
use crate::weyl::{frac, WeylGroup};
use crate::{Error, Result};

/// A homomorphism `f : source → target` of toy groups: its character map
/// (from `X_target` to `X_source`) and an `Ad(g)` part with `g ∈ X_*(T_ad)` of
/// the target in fundamental-coweight coordinates, so that
/// `f = Ad(g) ∘ f_lattice`.
#[derive(Clone, Debug)]
pub struct GroupHomDesc {
    pub label: String,
    pub source: GroupTag,
    pub target: GroupTag,
    pub lattice_map: RDMorphism,
    pub factorization: Factorization,
    pub twist: Vec<i64>,
}

impl GroupHomDesc {
    pub fn new(label: impl Into<String>, source: GroupTag, target: GroupTag, char_map: Mat, twist: Vec<i64>) -> Result<Self> {
        let lattice_map = RDMorphism::new(source.datum()?, target.datum()?, char_map)?;
        let rep = lattice_map.condition1();
        if !rep.holds {
            return Err(Error::Validation(format!("Condition 1 fails: {}", rep.violations.join("; "))));
        }
        if twist.len() != target.semisimple_rank() {
            return Err(Error::Validation(format!("twist needs {} coweight coordinates", target.semisimple_rank())));
        }
        let factorization = lattice_map.factorize_condition1()?;
        Ok(GroupHomDesc { label: label.into(), source, target, lattice_map, factorization, twist })
    }

    pub fn identity(tag: &GroupTag) -> Result<Self> {
        let r = tag.rank();
        GroupHomDesc::new("id", tag.clone(), tag.clone(), Mat::identity(r), vec![0; tag.semisimple_rank()])
    }

    /// The inclusion `SL_n ↪ GL_n`.
    pub fn sl_to_gl(n: usize) -> Result<Self> {
        Factor::from_name("SLn", n)?;
        let mut m = Mat::zeros(n - 1, n);
        for j in 0..n {
            if j < n - 1 {
                m.set(j, j, 1);
            }
            if j > 0 {
                m.set(j - 1, j, -1);
            }
        }
        GroupHomDesc::new(format!("SL{n}→GL{n}"), GroupTag::single(Factor::Sl(n)), GroupTag::single(Factor::Gl(n)), m, vec![0; n - 1])
    }

    /// The quotient `GL_n → PGL_n`.
    pub fn gl_to_pgl(n: usize) -> Result<Self> {
        Factor::from_name("SLn", n)?;
        let mut m = Mat::zeros(n, n - 1);
        for i in 0..n - 1 {
            m.set(i, i, 1);
            m.set(i + 1, i, -1);
        }
        GroupHomDesc::new(format!("GL{n}→PGL{n}"), GroupTag::single(Factor::Gl(n)), GroupTag::single(Factor::Pgl(n)), m, vec![0; n - 1])
    }

    /// The isogeny `SL_n → PGL_n`.
    pub fn sl_to_pgl(n: usize) -> Result<Self> {
        Factor::from_name("SLn", n)?;
        // α_i ↦ α_i written in fundamental weights: column i is row i of the Cartan matrix.
        let m = Mat::from_cols(&Factor::Sl(n).datum()?.cartan_matrix(), n - 1);
        GroupHomDesc::new(format!("SL{n}→PGL{n}"), GroupTag::single(Factor::Sl(n)), GroupTag::single(Factor::Pgl(n)), m, vec![0; n - 1])
    }

    /// `g ↦ (g, 1)` from `G` to `G × T_r`.
    pub fn torus_insert(tag: &GroupTag, r: usize) -> Result<Self> {
        let big = with_torus(tag, r)?;
        let rk = tag.rank();
        let m = Mat::identity(rk).hstack(&Mat::zeros(rk, r));
        GroupHomDesc::new(format!("{tag}→{big}"), tag.clone(), big.clone(), m, vec![0; big.semisimple_rank()])
    }

    /// The projection `G × T_r → G`.
    pub fn torus_project(tag: &GroupTag, r: usize) -> Result<Self> {
        let big = with_torus(tag, r)?;
        let rk = tag.rank();
        let m = Mat::identity(rk).vstack(&Mat::zeros(r, rk));
        GroupHomDesc::new(format!("{big}→{tag}"), big, tag.clone(), m, vec![0; tag.semisimple_rank()])
    }

    /// The transpose-inverse automorphism conjugated by the antidiagonal, on
    /// every factor (inversion on tori).
    pub fn flip(tag: &GroupTag) -> Result<Self> {
        let r = tag.rank();
        let mut m = Mat::zeros(r, r);
        for (f, &o) in tag.factors.iter().zip(&tag.offsets()) {
            let k = f.rank();
            for j in 0..k {
                let (row, val) = match f {
                    Factor::Gl(_) => (o + k - 1 - j, -1),
                    Factor::Torus(_) => (o + j, -1),
                    Factor::Sl(_) | Factor::Pgl(_) => (o + k - 1 - j, 1),
                };
                m.set(row, o + j, val);
            }
        }
        GroupHomDesc::new(format!("flip({tag})"), tag.clone(), tag.clone(), m, vec![0; tag.semisimple_rank()])
    }

    /// Conjugation by `g ∈ G_ad`, given in fundamental-coweight coordinates.
    pub fn ad(tag: &GroupTag, g: Vec<i64>) -> Result<Self> {
        GroupHomDesc::new(format!("Ad({g:?})"), tag.clone(), tag.clone(), Mat::identity(tag.rank()), g)
    }

    /// `q ∘ f`.
    pub fn compose(f: &GroupHomDesc, q: &GroupHomDesc) -> Result<Self> {
        if f.target != q.source {
            return Err(Error::Validation(format!("cannot compose {} with {}", f.label, q.label)));
        }
        let lattice = f.lattice_map.then(&q.lattice_map)?;
        let pushed = push_coweight(q, &f.twist)?;
        let twist = q.twist.iter().zip(&pushed).map(|(a, b)| a + b).collect();
        GroupHomDesc::new(format!("{}∘{}", q.label, f.label), f.source.clone(), q.target.clone(), lattice.char_map().clone(), twist)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "source": tag_json(&self.source),
            "target": tag_json(&self.target),
            "char_map": self.lattice_map.char_map().to_rows(),
            "twist": self.twist,
        })
    }

    /// Either a primitive `{"kind": "sl_to_gl", "n": 3}` (kinds `identity`,
    /// `sl_to_gl`, `gl_to_pgl`, `sl_to_pgl`, `torus_insert`, `torus_project`,
    /// `flip`, `ad`), a `{"compose": [f, q, …]}` chain applied left to right,
    /// or the full form written by [`Self::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(chain) = v.get("compose").and_then(Value::as_array) {
            let mut it = chain.iter();
            let first = it.next().ok_or_else(|| Error::Validation("empty composition".into()))?;
            let mut acc = GroupHomDesc::from_json(first)?;
            for q in it {
                acc = GroupHomDesc::compose(&acc, &GroupHomDesc::from_json(q)?)?;
            }
            return Ok(acc);
        }
        if let Some(kind) = v.get("kind").and_then(Value::as_str) {
            let n = v.get("n").and_then(Value::as_u64).map(|x| x as usize);
            let r = v.get("r").and_then(Value::as_u64).unwrap_or(1) as usize;
            let tag = || -> Result<GroupTag> {
                let t = v.get("tag").ok_or_else(|| Error::Validation(format!("{kind} needs \"tag\"")))?;
                tag_from_json(t)
            };
            let need_n = || n.ok_or_else(|| Error::Validation(format!("{kind} needs \"n\"")));
            return match kind {
                "identity" => GroupHomDesc::identity(&tag()?),
                "sl_to_gl" => GroupHomDesc::sl_to_gl(need_n()?),
                "gl_to_pgl" => GroupHomDesc::gl_to_pgl(need_n()?),
                "sl_to_pgl" => GroupHomDesc::sl_to_pgl(need_n()?),
                "torus_insert" => GroupHomDesc::torus_insert(&tag()?, r),
                "torus_project" => GroupHomDesc::torus_project(&tag()?, r),
                "flip" => GroupHomDesc::flip(&tag()?),
                "ad" => {
                    let g: Vec<i64> = serde_json::from_value(v.get("g").cloned().unwrap_or(Value::Null))
                        .map_err(|e| Error::Validation(format!("ad needs an integer vector \"g\": {e}")))?;
                    GroupHomDesc::ad(&tag()?, g)
                }
                _ => Err(Error::Validation(format!("unknown homomorphism kind {kind:?}"))),
            };
        }
        let src = tag_from_json(v.get("source").ok_or_else(|| Error::Validation("homomorphism needs \"source\"".into()))?)?;
        let tgt = tag_from_json(v.get("target").ok_or_else(|| Error::Validation("homomorphism needs \"target\"".into()))?)?;
        let rows: Vec<Vec<i64>> = serde_json::from_value(v.get("char_map").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Validation(format!("bad char_map: {e}")))?;
        let twist: Vec<i64> = match v.get("twist") {
            None | Some(Value::Null) => vec![0; tgt.semisimple_rank()],
            Some(t) => serde_json::from_value(t.clone()).map_err(|e| Error::Validation(format!("bad twist: {e}")))?,
        };
        if rows.len() != src.rank() {
            return Err(Error::Validation(format!("char_map needs {} rows", src.rank())));
        }
        let label = v.get("label").and_then(Value::as_str).unwrap_or("f").to_string();
        GroupHomDesc::new(label, src, tgt.clone(), Mat::from_rows(&rows, tgt.rank()), twist)
    }
}

fn with_torus(tag: &GroupTag, r: usize) -> Result<GroupTag> {
    let mut factors = tag.factors.clone();
    factors.push(Factor::Torus(r));
    let mut zeta = tag.zeta.clone();
    zeta.push(0);
    GroupTag::new(factors, zeta)
}

pub fn tag_json(tag: &GroupTag) -> Value {
    let fs: Vec<Value> = tag.factors.iter().map(|f| json!({"tag": f.name(), "n": f.size()})).collect();
    json!({"factors": fs, "zeta": tag.zeta})
}

pub fn tag_from_json(v: &Value) -> Result<GroupTag> {
    let fs = v.get("factors").and_then(Value::as_array).ok_or_else(|| Error::Validation("tag needs \"factors\"".into()))?;
    let factors = fs
        .iter()
        .map(|f| {
            let name = f.get("tag").and_then(Value::as_str).ok_or_else(|| Error::Validation("factor needs \"tag\"".into()))?;
            let n = f.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Validation("factor needs \"n\"".into()))?;
            Factor::from_name(name, n as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta = match v.get("zeta") {
        None | Some(Value::Null) => vec![0; factors.len()],
        Some(z) => serde_json::from_value(z.clone()).map_err(|e| Error::Validation(format!("bad zeta: {e}")))?,
    };
    GroupTag::new(factors, zeta)
}

/// `q_* g` for `g ∈ X_*(T_ad)` of `q.source`, in coweight coordinates of
/// `q.target`: `(q_* g)_i = ⟨q^* α_i, g⟩`.
fn push_coweight(q: &GroupHomDesc, g: &[i64]) -> Result<Vec<i64>> {
    let (src, tgt) = (q.lattice_map.source(), q.lattice_map.target());
    tgt.simples()
        .iter()
        .map(|&s| {
            let img = q.lattice_map.char_map().mul_vec(tgt.root(s));
            let idx = src.root_index(&img).ok_or_else(|| Error::Computation("a simple root does not pull back to a root".into()))?;
            Ok(src.simple_coords(idx).iter().zip(g).map(|(a, b)| a * b).sum())
        })
        .collect()
}

/// `φ̃ = ^L f ∘ φ` for `φ` on `f.target`.
pub fn lmap_param(f: &GroupHomDesc, phi: &ToyParameter) -> Result<ToyParameter> {
    let s = to_point(&f.target, phi);
    let m = f.lattice_map.char_map();
    let t = (0..m.rows())
        .map(|i| {
            let mut q = Rat::from_integer(0.into());
            let mut a = q.clone();
            for (j, (sq, sa)) in s.iter().enumerate() {
                let c = Rat::from_integer(m.get(i, j).into());
                q += &c * sq;
                a += &c * sa;
            }
            (q, frac(&a))
        })
        .collect();
    from_point(&f.source, &t)
}

/// `W_target → W_source`, sending `s_α` to the reflection in the root `f^* α`.
pub fn weyl_map(f: &GroupHomDesc, w_tgt: &WeylGroup, w_src: &WeylGroup) -> Result<Vec<u32>> {
    let (src, tgt) = (f.lattice_map.source(), f.lattice_map.target());
    let simple_images = tgt
        .simples()
        .iter()
        .map(|&s| {
            let img = f.lattice_map.char_map().mul_vec(tgt.root(s));
            src.root_index(&img).map(|i| w_src.reflection(i)).ok_or_else(|| Error::Computation("a simple root does not pull back to a root".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    // Elements are in breadth-first order, so w = u·s_i with u already mapped.
    let mut out = vec![w_src.identity()];
    for w in 1..w_tgt.order() as u32 {
        let i = *w_tgt.word(w).last().expect("nonidentity") as usize;
        let u = w_tgt.mul_simple_right(w, i);
        out.push(w_src.mul(out[u as usize], simple_images[i]));
    }
    Ok(out)
}

/// Which side of the pairing carries `τ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TwistConvention {
    /// `Hom(ρ ⊗ τ⁻¹, ρ̃ ∘ ^S f)`.
    #[default]
    Inverse,
    /// `Hom(ρ ⊗ τ, ρ̃ ∘ ^S f)`.
    Direct,
}

/// `^S f : S_φ → S_φ̃` together with the twist `τ_φ(g)` on `S_φ`.
#[derive(Clone, Debug)]
pub struct SMapData {
    /// `S_φ`, for the parameter on the target of `f`.
    pub source: ComponentGroupResult,
    /// `S_φ̃`, for `φ̃ = ^L f ∘ φ` on the source of `f`.
    pub target: ComponentGroupResult,
    pub group_hom: Vec<u32>,
    pub twist: ClassFunction,
}

impl SMapData {
    pub fn pullback(&self, chi: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.group_hom.iter().map(|&h| chi.values[h as usize].clone()).collect() }
    }

    fn twisted(&self, rho: &ClassFunction, conv: TwistConvention) -> ClassFunction {
        match conv {
            TwistConvention::Inverse => rho.twist(&self.twist.conj()),
            TwistConvention::Direct => rho.twist(&self.twist),
        }
    }

    /// `m[ρ̃][ρ]` over all irreducibles of both groups.
    pub fn multiplicity_matrix(&self, conv: TwistConvention) -> Result<Vec<Vec<u64>>> {
        let g = &self.source.group;
        self.target
            .table
            .irr
            .iter()
            .map(|rt| {
                let pulled = self.pullback(rt);
                self.source.table.irr.iter().map(|r| hom_mult(g, &self.twisted(r, conv), &pulled)).collect()
            })
            .collect()
    }

    pub fn image(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.group_hom.iter().copied().collect();
        s.into_iter().collect()
    }

    /// `^S f` is an injective homomorphism with normal image and abelian
    /// cokernel, and the twist is a linear character trivial on `Z_φ`.
    pub fn check_invariants(&self) -> Result<()> {
        let (g, h) = (&self.source.group, &self.target.group);
        let n = g.order() as u32;
        for a in 0..n {
            for b in 0..n {
                if self.group_hom[g.mul(a, b) as usize] != h.mul(self.group_hom[a as usize], self.group_hom[b as usize]) {
                    return Err(Error::Computation("^S f is not a homomorphism".into()));
                }
            }
        }
        let img = self.image();
        if img.len() != n as usize {
            return Err(Error::Computation("^S f is not injective".into()));
        }
        if !h.is_normal(&img) || !h.quotient_is_abelian(&img) {
            return Err(Error::Computation("the image of ^S f is not normal with abelian quotient".into()));
        }
        if !is_linear_character(g, &self.twist) || !self.source.z_sub().iter().all(|&z| self.twist.values[z as usize].is_one()) {
            return Err(Error::Computation("the twist is not a character trivial on Z_φ".into()));
        }
        Ok(())
    }
}

fn check_labels(f: &GroupHomDesc) -> Result<()> {
    if f.source.is_split() != f.target.is_split() {
        return Err(Error::Validation(format!(
            "relevance mismatch: inner-twist labels {:?} on {} and {:?} on {} do not correspond",
            f.source.zeta, f.source, f.target.zeta, f.target
        )));
    }
    Ok(())
}

/// `^S f` for `φ` on `f.target`.
pub fn smap(f: &GroupHomDesc, phi: &ToyParameter) -> Result<SMapData> {
    check_labels(f)?;
    let source = component_group(&f.target, phi)?;
    let phi_t = lmap_param(f, phi)?;
    let target = component_group(&f.source, &phi_t)?;
    let wmap = weyl_map(f, &source.weyl, &target.weyl)?;
    let group_hom = (0..source.group.order() as u32)
        .map(|e| {
            target
                .element_of(wmap[source.representative(e) as usize])
                .ok_or_else(|| Error::Computation("^L f does not carry W_s into W_s̃".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let twist = tau_character(&source, &f.twist)?;
    Ok(SMapData { source, target, group_hom, twist })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackTerm {
    pub phi: ToyParameter,
    /// Index into the character table of `S_φ̃`.
    pub rho: usize,
    pub m: u64,
}

/// The constituents `(φ̃, ρ̃, m)` of the pullback of `(φ, ρ)` along `f`.
pub fn conj_a_decompose(f: &GroupHomDesc, phi: &ToyParameter, rho: usize, conv: TwistConvention) -> Result<Vec<PullbackTerm>> {
    let sm = smap(f, phi)?;
    decompose_with(&sm, rho, conv)
}

pub fn decompose_with(sm: &SMapData, rho: usize, conv: TwistConvention) -> Result<Vec<PullbackTerm>> {
    if rho >= sm.source.table.irr.len() {
        return Err(Error::Validation(format!("enhancement index {rho} out of range")));
    }
    if !relevant_enhancements(&sm.source).contains(&rho) {
        return Err(Error::Validation(format!("enhancement {rho} is not relevant for {}", sm.source.tag)));
    }
    let twisted = sm.twisted(&sm.source.table.irr[rho], conv);
    let mut out = Vec::new();
    for (i, rt) in sm.target.table.irr.iter().enumerate() {
        let m = hom_mult(&sm.source.group, &twisted, &sm.pullback(rt))?;
        if m > 0 {
            out.push(PullbackTerm { phi: sm.target.phi.clone(), rho: i, m });
        }
    }
    Ok(out)
}

/// `m(ρ, ρ̃)` via Frobenius reciprocity: `Hom_{S_φ̃}(Ind(ρ ⊗ τ⁻¹), ρ̃)`, with
/// `S_φ` identified with its image.
pub fn multiplicity_by_induction(sm: &SMapData, rho: usize, rho_t: usize, conv: TwistConvention) -> Result<u64> {
    let img = sm.image();
    if img.len() != sm.group_hom.len() {
        return Err(Error::Computation("^S f is not injective".into()));
    }
    let twisted = sm.twisted(&sm.source.table.irr[rho], conv);
    let mut on_image = vec![Cyclo::zero(); img.len()];
    for (e, &h) in sm.group_hom.iter().enumerate() {
        let pos = img.binary_search(&h).expect("image element");
        on_image[pos] = twisted.values[e].clone();
    }
    let ind = induce_any(&sm.target.group, &img, &ClassFunction { values: on_image });
    hom_mult(&sm.target.group, &ind, &sm.target.table.irr[rho_t])
}

/// `Σ_ρ̃ m(ρ, ρ̃) · deg ρ̃ = [S_φ̃ : S_φ] · deg ρ`.
pub fn conservation_holds(sm: &SMapData, rho: usize, conv: TwistConvention) -> Result<bool> {
    let terms = decompose_with(sm, rho, conv)?;
    let g = &sm.target.group;
    let lhs: Rat = terms.iter().map(|t| sm.target.table.irr[t.rho].degree(g) * Rat::from_integer(t.m.into())).sum();
    let index = Rat::new((g.order() as i64).into(), (sm.image().len() as i64).into());
    Ok(lhs == index * sm.source.table.irr[rho].degree(&sm.source.group))
}

#[derive(Clone, Debug, Default)]
pub struct TransitivityReport {
    pub holds: bool,
    pub mismatches: Vec<String>,
}

/// Compare `^S(q ∘ f)` with `^S f ∘ ^S q` for `φ` on `q.target`: parameters,
/// group maps, twists and the full multiplicity matrices.
pub fn check_transitivity(f: &GroupHomDesc, q: &GroupHomDesc, phi: &ToyParameter, conv: TwistConvention) -> Result<TransitivityReport> {
    let qf = GroupHomDesc::compose(f, q)?;
    let s_q = smap(q, phi)?;
    let s_f = smap(f, &s_q.target.phi)?;
    let s_qf = smap(&qf, phi)?;
    let mut mismatches = Vec::new();
    if s_qf.target.phi != s_f.target.phi {
        mismatches.push("^L(q∘f)(φ) differs from ^L f(^L q(φ))".to_string());
    }
    for e in 0..s_q.group_hom.len() {
        let via = s_f.group_hom[s_q.group_hom[e] as usize];
        if s_qf.group_hom[e] != via {
            mismatches.push(format!("element {e}: ^S(q∘f) gives {}, ^S f ∘ ^S q gives {via}", s_qf.group_hom[e]));
        }
        let tw = &s_q.twist.values[e] * &s_f.twist.values[s_q.group_hom[e] as usize];
        if s_qf.twist.values[e] != tw {
            mismatches.push(format!("element {e}: twist of q∘f is {}, composite twist is {tw}", s_qf.twist.values[e]));
        }
    }
    let m_q = s_q.multiplicity_matrix(conv)?;
    let m_f = s_f.multiplicity_matrix(conv)?;
    let m_qf = s_qf.multiplicity_matrix(conv)?;
    for (k, row) in m_qf.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            let prod: u64 = (0..m_q.len()).map(|j| m_f[k][j] * m_q[j][i]).sum();
            if prod != v {
                mismatches.push(format!("multiplicity of ρ̃ {k} in ρ {i}: direct {v}, composite {prod}"));
            }
        }
    }
    Ok(TransitivityReport { holds: mismatches.is_empty(), mismatches })
}

/// The union over relevant `ρ` of the constituents equals the set of relevant
/// enhancements of `φ̃`.
pub fn packet_union_check(f: &GroupHomDesc, phi: &ToyParameter, conv: TwistConvention) -> Result<bool> {
    let sm = smap(f, phi)?;
    let mut union = BTreeSet::new();
    for rho in relevant_enhancements(&sm.source) {
        for t in decompose_with(&sm, rho, conv)? {
            union.insert(t.rho);
        }
    }
    let expected: BTreeSet<usize> = relevant_enhancements(&sm.target).into_iter().collect();
    Ok(union == expected)
}

/// Seeded multiplicity-free parameters for `tag`, mixing shifted and permuted
/// copies of `(1, ζ_n, …, ζ_n^{n−1})` with random angle lists.
pub fn sample_parameters(tag: &GroupTag, count: usize, seed: u64) -> Result<Vec<ToyParameter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ToyParameter> = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 200 * count.max(1) {
            return Err(Error::Computation(format!("could not find {count} distinct parameters for {tag}")));
        }
        let eigs: Vec<Vec<(Rat, Rat)>> = tag.factors.iter().map(|f| sample_list(f, &mut rng)).collect();
        let phi = ToyParameter::new(tag, eigs)?;
        if !out.contains(&phi) {
            out.push(phi);
        }
    }
    Ok(out)
}

fn sample_list(f: &Factor, rng: &mut ChaCha8Rng) -> Vec<(Rat, Rat)> {
    let n = f.size();
    if n == 0 {
        return Vec::new();
    }
    let den = 6 * n as i64;
    let mut angles: Vec<Rat> = if rng.gen_bool(0.5) {
        let shift = Rat::new(rng.gen_range(0..den).into(), (den * n as i64).into());
        (0..n as i64).map(|j| &shift + Rat::new(j.into(), (n as i64).into())).collect()
    } else {
        let mut pool: Vec<i64> = (0..den).collect();
        pool.shuffle(rng);
        pool[..n].iter().map(|&k| Rat::new(k.into(), den.into())).collect()
    };
    angles.shuffle(rng);
    let q0 = rng.gen_range(-1..=1i64);
    let spread = rng.gen_bool(0.25);
    let mut list: Vec<(Rat, Rat)> = angles
        .into_iter()
        .map(|a| (Rat::from_integer((q0 + if spread { rng.gen_range(0..2i64) } else { 0 }).into()), a))
        .collect();
    if let Factor::Pgl(_) = f {
        let nr = Rat::from_integer((n as i64).into());
        let (sq, sa) = list.iter().fold((Rat::from_integer(0.into()), Rat::from_integer(0.into())), |(q, a), (x, y)| (q + x, a + y));
        list = list.into_iter().map(|(q, a)| (q - &sq / &nr, frac(&(a - &sa / &nr)))).collect();
    }
    list
}

pub fn pullback_json(f: &GroupHomDesc, sm: &SMapData, rho: usize, terms: &[PullbackTerm]) -> Value {
    use crate::lparam::{param_to_json, root_of_unity_label};
    let labels = |c: &ClassFunction| -> Vec<String> { c.values.iter().map(root_of_unity_label).collect() };
    json!({
        "hom": f.label,
        "phi": param_to_json(&f.target, &sm.source.phi),
        "rho": rho,
        "rho_values": labels(&sm.source.table.irr[rho]),
        "twist": labels(&sm.twist),
        "group_hom": sm.group_hom,
        "terms": terms.iter().map(|t| json!({
            "phi_tilde": param_to_json(&f.source, &t.phi),
            "rho_tilde": t.rho,
            "rho_tilde_values": labels(&sm.target.table.irr[t.rho]),
            "m": t.m,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests;
