//! Toy enhanced L-parameters: unramified, trivial on `SL_2(C)`, with Frobenius
//! image in the dual torus of a product of `GL_n`, `SL_n`, `PGL_n` and tori.
//!
//! For a torus-valued parameter `s` the component group is `W_s / W_s°`, where
//! `W_s` is the stabilizer of `s` in `W` and `W_s°` is generated by the
//! reflections in the roots of `G∨` that are trivial on `s`. The centre of the
//! simply connected dual group lies in its (connected) maximal torus, so its
//! image in the component group is trivial.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::finrep::{CharTable, ClassFunction, FiniteGroup};
use crate::numkernel::{parse_rat, rat_to_string, Cyclo, Rat};
use crate::rootdata::{build_classical, BasedRootDatum, Family, Isogeny};
use crate::weyl::{frac, TorusPoint, WeylGroup};
use crate::{Error, Result};

const MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Gl(usize),
    Sl(usize),
    Pgl(usize),
    Torus(usize),
}

impl Factor {
    /// `n` for the matrix groups, `r` for a torus.
    pub fn size(&self) -> usize {
        match *self {
            Factor::Gl(n) | Factor::Sl(n) | Factor::Pgl(n) | Factor::Torus(n) => n,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Factor::Gl(n) | Factor::Torus(n) => n,
            Factor::Sl(n) | Factor::Pgl(n) => n - 1,
        }
    }

    pub fn semisimple_rank(&self) -> usize {
        match *self {
            Factor::Torus(_) => 0,
            f => f.size() - 1,
        }
    }

    /// Order of the group in which this factor's `ζ` label lives.
    pub fn center_order(&self) -> i64 {
        match *self {
            Factor::Torus(_) => 1,
            f => f.size() as i64,
        }
    }

    /// Length of the eigenvalue list.
    pub fn list_len(&self) -> usize {
        self.size()
    }

    /// Root datum with the conventions used throughout this module: `GL_n` on
    /// `ε`-coordinates, `SL_n` on fundamental weights, `PGL_n` on simple roots.
    pub fn datum(&self) -> Result<BasedRootDatum> {
        match *self {
            Factor::Torus(r) => Ok(BasedRootDatum::torus(r)),
            Factor::Gl(1) => Ok(BasedRootDatum::torus(1)),
            Factor::Sl(1) | Factor::Pgl(1) => Ok(BasedRootDatum::torus(0)),
            Factor::Gl(n) => build_classical(Family::A, n - 1, Isogeny::GlForm),
            Factor::Sl(n) => build_classical(Family::A, n - 1, Isogeny::Sc),
            Factor::Pgl(n) => build_classical(Family::A, n - 1, Isogeny::Ad),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Factor::Gl(_) => "GLn",
            Factor::Sl(_) => "SLn",
            Factor::Pgl(_) => "PGLn",
            Factor::Torus(_) => "Torus",
        }
    }

    pub fn from_name(name: &str, n: usize) -> Result<Factor> {
        let f = match name.to_ascii_lowercase().as_str() {
            "gln" | "gl" => Factor::Gl(n),
            "sln" | "sl" => Factor::Sl(n),
            "pgln" | "pgl" => Factor::Pgl(n),
            "torus" | "t" => Factor::Torus(n),
            _ => return Err(Error::Validation(format!("unknown group factor {name:?}"))),
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        if !matches!(self, Factor::Torus(_)) && (n == 0 || n > MAX_N) {
            return Err(Error::Validation(format!("{} needs 1 ≤ n ≤ {MAX_N}, got {n}", self.name())));
        }
        if n > MAX_N {
            return Err(Error::Validation(format!("torus rank {n} exceeds {MAX_N}")));
        }
        Ok(())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gl(n) => write!(f, "GL{n}"),
            Factor::Sl(n) => write!(f, "SL{n}"),
            Factor::Pgl(n) => write!(f, "PGL{n}"),
            Factor::Torus(r) => write!(f, "T{r}"),
        }
    }
}

/// A product of factors plus the inner-twist label: per factor an integer
/// `k mod n` standing for the character `ζ ↦ ζ^k` of `μ_n` (always 0 for tori).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTag {
    pub factors: Vec<Factor>,
    pub zeta: Vec<i64>,
}

impl GroupTag {
    pub fn new(factors: Vec<Factor>, zeta: Vec<i64>) -> Result<Self> {
        if zeta.len() != factors.len() {
            return Err(Error::Validation("one ζ label per factor is required".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        let zeta = factors.iter().zip(&zeta).map(|(f, &k)| k.rem_euclid(f.center_order())).collect();
        Ok(GroupTag { factors, zeta })
    }

    pub fn split(factors: Vec<Factor>) -> Result<Self> {
        let n = factors.len();
        GroupTag::new(factors, vec![0; n])
    }

    pub fn single(f: Factor) -> Self {
        GroupTag::split(vec![f]).expect("valid factor")
    }

    pub fn is_split(&self) -> bool {
        self.zeta.iter().all(|&k| k == 0)
    }

    pub fn datum(&self) -> Result<BasedRootDatum> {
        let mut d = BasedRootDatum::torus(0);
        for f in &self.factors {
            d = d.direct_sum(&f.datum()?);
        }
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Factor::rank).sum()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(Factor::semisimple_rank).sum()
    }

    /// Offset of each factor in the coordinates of `X`.
    pub fn offsets(&self) -> Vec<usize> {
        prefix_sums(self.factors.iter().map(Factor::rank))
    }

    /// Offset of each factor among the simple roots.
    pub fn simple_offsets(&self) -> Vec<usize> {
        prefix_sums(self.factors.iter().map(Factor::semisimple_rank))
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" × "))?;
        if !self.is_split() {
            write!(f, " (ζ = {:?})", self.zeta)?;
        }
        Ok(())
    }
}

fn prefix_sums(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    it.map(|x| {
        let o = acc;
        acc += x;
        o
    })
    .collect()
}

/// One eigenvalue `q^{q_exp} · exp(2πi · angle)`.
pub type Eig = (Rat, Rat);

/// Frobenius image as one eigenvalue list per factor. `SLn` lists are classes
/// modulo scalars and are stored in a canonical form; angles lie in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToyParameter {
    pub eigs: Vec<Vec<Eig>>,
}

impl ToyParameter {
    pub fn new(tag: &GroupTag, eigs: Vec<Vec<Eig>>) -> Result<Self> {
        if eigs.len() != tag.factors.len() {
            return Err(Error::Validation("one eigenvalue list per factor is required".into()));
        }
        let mut out = Vec::new();
        for (f, list) in tag.factors.iter().zip(eigs) {
            if list.len() != f.list_len() {
                return Err(Error::Validation(format!("{f} needs {} eigenvalues, got {}", f.list_len(), list.len())));
            }
            let list: Vec<Eig> = list.into_iter().map(|(q, a)| (q, frac(&a))).collect();
            out.push(match f {
                Factor::Sl(_) => canonical_mod_scalars(&list),
                Factor::Pgl(_) => {
                    let (q, a) = sum_eigs(&list);
                    if !q.is_zero() || !a.is_integer() {
                        return Err(Error::Validation(format!("{f} parameter must have determinant 1")));
                    }
                    list
                }
                _ => list,
            });
        }
        Ok(ToyParameter { eigs: out })
    }

    /// Unitary parameter from exponents of `ζ_n`, one list per factor.
    pub fn from_root_exponents(tag: &GroupTag, exps: &[Vec<i64>], n: i64) -> Result<Self> {
        let eigs = exps
            .iter()
            .map(|l| l.iter().map(|&k| (Rat::zero(), Rat::new(k.into(), n.into()))).collect())
            .collect();
        ToyParameter::new(tag, eigs)
    }
}

fn sum_eigs(list: &[Eig]) -> Eig {
    list.iter().fold((Rat::zero(), Rat::zero()), |(q, a), (x, y)| (q + x, a + y))
}

/// Representative of `list` modulo scalars with `Σq = 0`, `Σangle ≡ 0` and the
/// first angle in `[0, 1/n)`.
fn canonical_mod_scalars(list: &[Eig]) -> Vec<Eig> {
    let n = Rat::from_integer(list.len().into());
    let (sq, sa) = sum_eigs(list);
    let shifted: Vec<Eig> = list.iter().map(|(q, a)| (q - &sq / &n, frac(&(a - &sa / &n)))).collect();
    let k = (&shifted[0].1 * &n).floor();
    let delta = k / &n;
    shifted.into_iter().map(|(q, a)| (q, frac(&(a - &delta)))).collect()
}

/// The parameter as a point of `X ⊗ C^×` in log coordinates.
pub fn to_point(tag: &GroupTag, phi: &ToyParameter) -> TorusPoint {
    let mut p = Vec::new();
    for (f, c) in tag.factors.iter().zip(&phi.eigs) {
        match f {
            Factor::Gl(_) | Factor::Torus(_) => p.extend(c.iter().cloned()),
            Factor::Sl(n) => {
                for i in 0..n - 1 {
                    p.push((&c[i].0 - &c[i + 1].0, frac(&(&c[i].1 - &c[i + 1].1))));
                }
            }
            Factor::Pgl(n) => {
                let (mut q, mut a) = (Rat::zero(), Rat::zero());
                for e in &c[..n - 1] {
                    q += &e.0;
                    a += &e.1;
                    p.push((q.clone(), frac(&a)));
                }
            }
        }
    }
    p
}

/// Inverse of [`to_point`].
pub fn from_point(tag: &GroupTag, p: &TorusPoint) -> Result<ToyParameter> {
    if p.len() != tag.rank() {
        return Err(Error::Validation("point has the wrong number of coordinates".into()));
    }
    let mut eigs = Vec::new();
    for (f, &o) in tag.factors.iter().zip(&tag.offsets()) {
        let u = &p[o..o + f.rank()];
        eigs.push(match *f {
            Factor::Gl(_) | Factor::Torus(_) => u.to_vec(),
            Factor::Sl(n) => {
                let mut c = vec![(Rat::zero(), Rat::zero())];
                for i in 0..n - 1 {
                    let (q, a) = c[i].clone();
                    c.push((q - &u[i].0, a - &u[i].1));
                }
                c
            }
            Factor::Pgl(n) => (0..n)
                .map(|k| {
                    let zero = (Rat::zero(), Rat::zero());
                    let cur = if k < n - 1 { &u[k] } else { &zero };
                    let prev = if k > 0 { &u[k - 1] } else { &zero };
                    (&cur.0 - &prev.0, &cur.1 - &prev.1)
                })
                .collect(),
        });
    }
    ToyParameter::new(tag, eigs)
}

/// `⟨s, y⟩` for a cocharacter `y`.
pub fn pair(p: &TorusPoint, y: &[i64]) -> Eig {
    let mut q = Rat::zero();
    let mut a = Rat::zero();
    for ((pq, pa), &c) in p.iter().zip(y) {
        let c = Rat::from_integer(c.into());
        q += &c * pq;
        a += &c * pa;
    }
    (q, frac(&a))
}

/// The `SL_n`-factor part of a component: `w` permutes the eigenvalues
/// (`h e_k = e_{perm[k]}`) and `h s h⁻¹ = exp(2πi·lambda) · s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlPair {
    pub factor: usize,
    pub perm: Vec<usize>,
    pub lambda: Rat,
}

#[derive(Clone, Debug)]
pub struct ComponentGroupResult {
    pub tag: GroupTag,
    pub phi: ToyParameter,
    pub weyl: WeylGroup,
    pub point: TorusPoint,
    /// `S_φ`, with the central image marked as `"z_phi"`.
    pub group: FiniteGroup,
    /// For each element of `group`, its coset of `W_s°` in `W`; the first
    /// entry is the representative.
    pub cosets: Vec<Vec<u32>>,
    pub identity_component: Vec<u32>,
    /// For each element, one pair per `SLn` factor.
    pub pairs: Vec<Vec<SlPair>>,
    pub table: CharTable,
    coset_index: HashMap<u32, u32>,
}

impl ComponentGroupResult {
    pub fn z_sub(&self) -> &[u32] {
        self.group.marked("z_phi").expect("marked at construction")
    }

    pub fn representative(&self, e: u32) -> u32 {
        self.cosets[e as usize][0]
    }

    /// The element of `S_φ` containing the Weyl element `w`, if `w ∈ W_s`.
    pub fn element_of(&self, w: u32) -> Option<u32> {
        self.coset_index.get(&w).copied()
    }

    /// Det-1 monomial matrix lifting element `e` to `SL_n(C)` for the given
    /// `SLn` factor: `c · P_perm` with `c^n · sign(perm) = 1`.
    pub fn monomial_rep(&self, e: u32, factor: usize) -> Result<Vec<Vec<Cyclo>>> {
        let pr = self.pairs[e as usize]
            .iter()
            .find(|p| p.factor == factor)
            .ok_or_else(|| Error::Validation(format!("factor {factor} is not of type SLn")))?;
        let n = pr.perm.len();
        let c = if perm_sign(&pr.perm) == 1 { Cyclo::one() } else { Cyclo::root_of_unity(1, 2 * n as u64) };
        let mut m = vec![vec![Cyclo::zero(); n]; n];
        for (k, &pk) in pr.perm.iter().enumerate() {
            m[pk][k] = c.clone();
        }
        Ok(m)
    }

    /// `c_h(Fr) = h s h⁻¹ s⁻¹` for the monomial lift `h` of `e` in the given
    /// `SLn` factor. Conjugation only permutes diagonal entries, so the
    /// `q`-parts cancel and `s` is evaluated on its unitary part.
    pub fn cocycle_value(&self, e: u32, factor: usize) -> Result<Cyclo> {
        let h = self.monomial_rep(e, factor)?;
        let s: Vec<Vec<Cyclo>> = diag(self.phi.eigs[factor].iter().map(|(_, a)| Cyclo::exp_2pi_i(a)).collect());
        let s_inv = diag(self.phi.eigs[factor].iter().map(|(_, a)| Cyclo::exp_2pi_i(&-a)).collect());
        let c = mat_mul(&mat_mul(&mat_mul(&h, &s), &unitary_inverse(&h)), &s_inv);
        scalar_of(&c).ok_or_else(|| Error::Computation("c_h is not central".into()))
    }
}

pub fn diag(d: Vec<Cyclo>) -> Vec<Vec<Cyclo>> {
    let n = d.len();
    let mut m = vec![vec![Cyclo::zero(); n]; n];
    for (i, x) in d.into_iter().enumerate() {
        m[i][i] = x;
    }
    m
}

pub fn mat_mul(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut acc = Cyclo::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Conjugate transpose, the inverse of a matrix with root-of-unity entries in
/// monomial position.
pub fn unitary_inverse(a: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// `Some(c)` if `m = c · I`.
pub fn scalar_of(m: &[Vec<Cyclo>]) -> Option<Cyclo> {
    let c = m.first()?.first()?.clone();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if (i == j && *x != c) || (i != j && !x.is_zero()) {
                return None;
            }
        }
    }
    Some(c)
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `ε_k` in the fundamental-weight coordinates of an `SL_n` factor at `offset`.
fn epsilon(rank: usize, offset: usize, n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    if k < n - 1 {
        v[offset + k] += 1;
    }
    if k > 0 {
        v[offset + k - 1] -= 1;
    }
    v
}

fn sl_pair(tag: &GroupTag, phi: &ToyParameter, weyl: &WeylGroup, w: u32, fi: usize) -> Result<SlPair> {
    let n = tag.factors[fi].size();
    let o = tag.offsets()[fi];
    let r = tag.rank();
    let eps: Vec<Vec<i64>> = (0..n).map(|k| epsilon(r, o, n, k)).collect();
    let perm: Vec<usize> = if n == 1 {
        vec![0]
    } else {
        eps.iter()
            .map(|e| {
                let img = weyl.act(w, e);
                eps.iter().position(|x| *x == img).ok_or_else(|| Error::Computation("Weyl element does not permute the ε_k".into()))
            })
            .collect::<Result<_>>()?
    };
    let c = &phi.eigs[fi];
    let lambda = frac(&(&c[0].1 - &c[perm[0]].1));
    for k in 0..n {
        let (q, a) = (&c[k], &c[perm[k]]);
        if q.0 != a.0 || frac(&(&q.1 - &a.1)) != lambda {
            return Err(Error::Computation("component does not rescale the eigenvalue list".into()));
        }
    }
    Ok(SlPair { factor: fi, perm, lambda })
}

/// `S_φ` for a torus-valued parameter.
pub fn component_group(tag: &GroupTag, phi: &ToyParameter) -> Result<ComponentGroupResult> {
    for (fi, f) in tag.factors.iter().enumerate() {
        if let Factor::Sl(_) = f {
            let l = &phi.eigs[fi];
            for i in 0..l.len() {
                if l[i + 1..].contains(&l[i]) {
                    return Err(Error::Validation(format!("multiplicity guard: the {f} eigenvalue list of factor {fi} has a repeated entry")));
                }
            }
        }
    }
    let datum = tag.datum()?;
    let weyl = WeylGroup::new(&datum)?;
    let point = to_point(tag, phi);
    let stab = weyl.stabilizer_of_point(&point)?;
    let trivial_on_s: Vec<u32> = datum
        .positive_roots()
        .into_iter()
        .filter(|&a| {
            let (q, ang) = pair(&point, datum.coroot(a));
            q.is_zero() && ang.is_zero()
        })
        .map(|a| weyl.reflection(a))
        .collect();
    let identity_component = weyl.closure(&trivial_on_s);
    let canonical = |w: u32| identity_component.iter().map(|&v| weyl.mul(w, v)).min().expect("nonempty");
    let gens: Vec<u32> = stab.generators.iter().map(|&g| canonical(g)).collect();
    let (mut group, reps) = FiniteGroup::generated(0u32, &gens, |&a, &b| canonical(weyl.mul(a, b)))?;
    let mut cosets = Vec::new();
    let mut coset_index = HashMap::new();
    for (e, &r) in reps.iter().enumerate() {
        let mut c: Vec<u32> = identity_component.iter().map(|&v| weyl.mul(r, v)).collect();
        c.sort();
        for &w in &c {
            coset_index.insert(w, e as u32);
        }
        cosets.push(c);
    }
    if coset_index.len() != stab.elements.len() {
        return Err(Error::Computation("cosets of W_s° do not exhaust W_s".into()));
    }
    let mut pairs = Vec::new();
    for &r in &reps {
        let mut row = Vec::new();
        for (fi, f) in tag.factors.iter().enumerate() {
            if let Factor::Sl(_) = f {
                row.push(sl_pair(tag, phi, &weyl, r, fi)?);
            }
        }
        pairs.push(row);
    }
    group.mark("z_phi", vec![group.identity()])?;
    let table = CharTable::compute(&group)?;
    Ok(ComponentGroupResult { tag: tag.clone(), phi: phi.clone(), weyl, point, group, cosets, identity_component, pairs, table, coset_index })
}

/// `τ_φ(g)`, for `g ∈ X_*(T_ad)` in fundamental-coweight coordinates (one
/// entry per simple root). Computed as `⟨g, c_h⟩` with `c_h = h s h⁻¹ s⁻¹`
/// evaluated on det-1 monomial lifts; only `SLn` factors contribute.
pub fn tau_character(cg: &ComponentGroupResult, g: &[i64]) -> Result<ClassFunction> {
    let tag = &cg.tag;
    if g.len() != tag.semisimple_rank() {
        return Err(Error::Validation(format!(
            "g must have {} coweight coordinates, got {}",
            tag.semisimple_rank(),
            g.len()
        )));
    }
    let so = tag.simple_offsets();
    let values = (0..cg.group.order() as u32)
        .map(|e| {
            let mut v = Cyclo::one();
            for p in &cg.pairs[e as usize] {
                let n = tag.factors[p.factor].size();
                // X_*(T_ad)/X_*(T_sc) ≅ Z/n with ω_i∨ ↦ i.
                let k: i64 = (0..n - 1).map(|i| (i as i64 + 1) * g[so[p.factor] + i]).sum();
                let c = cg.cocycle_value(e, p.factor)?;
                v = &v * &c.pow(k);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok(ClassFunction { values })
}

/// Indices into `cg.table.irr` of the enhancements relevant for the tag: those
/// whose restriction to the central image is the tag's `ζ`.
pub fn relevant_enhancements(cg: &ComponentGroupResult) -> Vec<usize> {
    // The central image is trivial, so a character restricts to the trivial
    // character of Z(G∨_sc) and matches ζ exactly when ζ is trivial.
    if !cg.tag.is_split() {
        return Vec::new();
    }
    let z = cg.z_sub();
    (0..cg.table.irr.len())
        .filter(|&i| {
            let chi = &cg.table.irr[i];
            let d = &chi.values[cg.group.identity() as usize];
            z.iter().all(|&x| chi.values[x as usize] == *d)
        })
        .collect()
}

/// The parameter `(1, ζ_n, …, ζ_n^{n−1})` of `SL_n`.
pub fn example_sln(n: usize) -> Result<(GroupTag, ToyParameter)> {
    let tag = GroupTag::split(vec![Factor::Sl(n)])?;
    let exps: Vec<i64> = (0..n as i64).collect();
    let phi = ToyParameter::from_root_exponents(&tag, &[exps], n as i64)?;
    Ok((tag, phi))
}

// ---- JSON ----

fn eig_json((q, a): &Eig) -> Value {
    json!({"q": rat_to_string(q), "angle": rat_to_string(a)})
}

fn rat_field(v: &Value, key: &str) -> Result<Rat> {
    match v.get(key) {
        None => Ok(Rat::zero()),
        Some(Value::String(s)) => parse_rat(s).map_err(Error::Validation),
        Some(Value::Number(x)) => x
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| Error::Validation(format!("{key} must be an integer or a rational string"))),
        Some(_) => Err(Error::Validation(format!("{key} must be a rational string"))),
    }
}

/// Parse `{"factors": [{"tag": "SLn", "n": 4, "eigs": [{"q": "0", "angle": "1/4"}, …]}], "zeta": [k, …]}`.
pub fn parse_param_json(v: &Value) -> Result<(GroupTag, ToyParameter)> {
    let fs = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Validation("parameter JSON needs a \"factors\" array".into()))?;
    let mut factors = Vec::new();
    let mut eigs = Vec::new();
    for f in fs {
        let name = f.get("tag").and_then(Value::as_str).ok_or_else(|| Error::Validation("factor needs a \"tag\"".into()))?;
        let n = f.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Validation("factor needs \"n\"".into()))? as usize;
        factors.push(Factor::from_name(name, n)?);
        let list = f.get("eigs").and_then(Value::as_array).ok_or_else(|| Error::Validation("factor needs \"eigs\"".into()))?;
        eigs.push(list.iter().map(|e| Ok((rat_field(e, "q")?, rat_field(e, "angle")?))).collect::<Result<Vec<_>>>()?);
    }
    let zeta = match v.get("zeta") {
        None | Some(Value::Null) => vec![0; factors.len()],
        Some(z) => serde_json::from_value(z.clone()).map_err(|e| Error::Validation(format!("bad zeta: {e}")))?,
    };
    let tag = GroupTag::new(factors, zeta)?;
    let phi = ToyParameter::new(&tag, eigs)?;
    Ok((tag, phi))
}

pub fn param_to_json(tag: &GroupTag, phi: &ToyParameter) -> Value {
    let factors: Vec<Value> = tag
        .factors
        .iter()
        .zip(&phi.eigs)
        .map(|(f, l)| json!({"tag": f.name(), "n": f.size(), "eigs": l.iter().map(eig_json).collect::<Vec<_>>()}))
        .collect();
    json!({"factors": factors, "zeta": tag.zeta})
}

/// `ζ_n^k` with `x = exp(2πi·k/n)` and `-n/2 < k ≤ n/2`, for display.
pub fn root_of_unity_label(x: &Cyclo) -> String {
    match x.as_root_of_unity() {
        Some((_, 1)) => "1".into(),
        Some((k, n)) => {
            let k = if 2 * k > n { k as i64 - n as i64 } else { k as i64 };
            format!("ζ_{n}^{k}")
        }
        None => x.to_string(),
    }
}

pub fn component_group_json(cg: &ComponentGroupResult) -> Value {
    let elements: Vec<Value> = (0..cg.group.order())
        .map(|e| {
            let w = cg.representative(e as u32);
            let pairs: Vec<Value> = cg.pairs[e]
                .iter()
                .map(|p| json!({"factor": p.factor, "perm": p.perm, "lambda": rat_to_string(&p.lambda)}))
                .collect();
            json!({"index": e, "weyl_word": cg.weyl.word(w), "order": cg.group.element_order(e as u32), "sl_pairs": pairs})
        })
        .collect();
    let chars: Vec<Value> = cg
        .table
        .irr
        .iter()
        .map(|c| Value::Array(c.values.iter().map(|x| Value::String(root_of_unity_label(x))).collect()))
        .collect();
    json!({
        "parameter": param_to_json(&cg.tag, &cg.phi),
        "order": cg.group.order(),
        "abelian": cg.group.is_abelian(),
        "z_phi": cg.z_sub(),
        "elements": elements,
        "characters": chars,
        "relevant": relevant_enhancements(cg),
    })
}

#[cfg(test)]
mod tests;
