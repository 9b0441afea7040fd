//! Finite and extended affine Weyl groups of a based root datum.

pub mod oracle;

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numkernel::Rat;
use crate::rootdata::intmat::{dot, smith, vadd, vneg, Mat};
use crate::rootdata::BasedRootDatum;
use crate::{Error, Result};

const WEYL_GUARD: usize = 100_000;

/// Which length function to use on `X ⋊ W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LengthPolicy {
    /// `Σ_{α>0, w⁻¹α>0} |⟨x,α∨⟩| + Σ_{α>0, w⁻¹α<0} |⟨x,α∨⟩ − 1|`
    #[default]
    Standard,
    /// Same with `⟨x,α∨⟩ + 1` in the second sum.
    Variant,
}

/// The finite Weyl group, enumerated. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: BasedRootDatum,
    perms: Vec<Vec<u16>>,
    mats: Vec<Mat>,
    words: Vec<Vec<u8>>,
    inverse: Vec<u32>,
    lookup: HashMap<Vec<u16>, u32>,
    right_simple: Vec<Vec<u32>>,
    left_simple: Vec<Vec<u32>>,
}

/// `t_x · w` in `X ⋊ W`; `w` indexes a [`WeylGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElt {
    pub t: Vec<i64>,
    pub w: u32,
}

/// JSON form `{"t": [...], "w_word": [...]}` with `w_word` in simple-root positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtAffineJson {
    pub t: Vec<i64>,
    pub w_word: Vec<usize>,
}

/// A subgroup of `W` as an element list plus generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
}

/// A point of the dual torus `X ⊗ C^×`: per coordinate, the pair
/// `(q-exponent, angle mod 1)` standing for `q^e · exp(2πi·angle)`.
pub type TorusPoint = Vec<(Rat, Rat)>;

pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

impl WeylGroup {
    pub fn new(datum: &BasedRootDatum) -> Result<Self> {
        let nr = datum.num_roots();
        let l = datum.semisimple_rank();
        let simple_perm: Vec<Vec<u16>> = datum
            .simples()
            .iter()
            .map(|&s| (0..nr).map(|j| datum.root_index(&datum.reflect(s, datum.root(j))).unwrap() as u16).collect())
            .collect();
        let simple_mats: Vec<Mat> = datum.simples().iter().map(|&s| datum.reflection_matrix(s)).collect();
        let id: Vec<u16> = (0..nr as u16).collect();
        let mut g = WeylGroup {
            datum: datum.clone(),
            perms: vec![id.clone()],
            mats: vec![Mat::identity(datum.rank())],
            words: vec![vec![]],
            inverse: vec![],
            lookup: HashMap::from([(id, 0)]),
            right_simple: vec![vec![u32::MAX; l]],
            left_simple: vec![],
        };
        // Breadth-first by right multiplication gives reduced words.
        let mut head = 0;
        while head < g.perms.len() {
            for i in 0..l {
                // (w s_i)(α_j) = w(s_i(α_j))
                let p: Vec<u16> = simple_perm[i].iter().map(|&k| g.perms[head][k as usize]).collect();
                let idx = match g.lookup.get(&p) {
                    Some(&k) => k,
                    None => {
                        let k = g.perms.len() as u32;
                        if g.perms.len() >= WEYL_GUARD {
                            return Err(Error::Computation("Weyl group exceeds the size guard".into()));
                        }
                        let mut word = g.words[head].clone();
                        word.push(i as u8);
                        g.mats.push(g.mats[head].mul(&simple_mats[i]));
                        g.words.push(word);
                        g.lookup.insert(p.clone(), k);
                        g.perms.push(p);
                        g.right_simple.push(vec![u32::MAX; l]);
                        k
                    }
                };
                g.right_simple[head][i] = idx;
            }
            head += 1;
        }
        let n = g.perms.len();
        g.inverse = (0..n)
            .map(|w| {
                let mut inv = vec![0u16; nr];
                for (j, &k) in g.perms[w].iter().enumerate() {
                    inv[k as usize] = j as u16;
                }
                g.lookup[&inv]
            })
            .collect();
        g.left_simple = (0..n)
            .map(|w| (0..l).map(|i| g.inverse[g.right_simple[g.inverse[w] as usize][i] as usize]).collect())
            .collect();
        Ok(g)
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Index of `s_i` (position `i` in the simple roots).
    pub fn simple(&self, i: usize) -> u32 {
        self.right_simple[0][i]
    }

    pub fn matrix(&self, w: u32) -> &Mat {
        &self.mats[w as usize]
    }

    pub fn word(&self, w: u32) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn length(&self, w: u32) -> usize {
        self.words[w as usize].len()
    }

    pub fn inv(&self, w: u32) -> u32 {
        self.inverse[w as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = &self.perms[a as usize];
        let p: Vec<u16> = self.perms[b as usize].iter().map(|&k| pa[k as usize]).collect();
        self.lookup[&p]
    }

    pub fn mul_simple_right(&self, w: u32, i: usize) -> u32 {
        self.right_simple[w as usize][i]
    }

    pub fn mul_simple_left(&self, i: usize, w: u32) -> u32 {
        self.left_simple[w as usize][i]
    }

    /// Index of root `w(α_j)`.
    pub fn act_root(&self, w: u32, j: usize) -> usize {
        self.perms[w as usize][j] as usize
    }

    pub fn act(&self, w: u32, x: &[i64]) -> Vec<i64> {
        self.mats[w as usize].mul_vec(x)
    }

    /// `w` acting on cocharacters (the inverse transpose).
    pub fn act_co(&self, w: u32, y: &[i64]) -> Vec<i64> {
        self.mats[self.inverse[w as usize] as usize].transpose().mul_vec(y)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<u32> {
        let mut w = 0;
        for &i in word {
            if i >= self.datum.semisimple_rank() {
                return Err(Error::Validation(format!("simple reflection index {i} out of range")));
            }
            w = self.mul_simple_right(w, i);
        }
        Ok(w)
    }

    /// Element acting on X by the given matrix, if any.
    pub fn from_matrix(&self, m: &Mat) -> Option<u32> {
        let p: Option<Vec<u16>> = (0..self.datum.num_roots())
            .map(|j| self.datum.root_index(&m.mul_vec(self.datum.root(j))).map(|k| k as u16))
            .collect();
        let w = *self.lookup.get(&p?)?;
        (self.mats[w as usize] == *m).then_some(w)
    }

    /// Index of the reflection `s_α` for root index `a`.
    pub fn reflection(&self, a: usize) -> u32 {
        self.from_matrix(&self.datum.reflection_matrix(a)).expect("reflection lies in W")
    }

    pub fn longest(&self) -> u32 {
        (0..self.order() as u32).max_by_key(|&w| self.length(w)).unwrap()
    }

    // ---- extended affine Weyl group ----

    pub fn ext_identity(&self) -> ExtAffineElt {
        ExtAffineElt { t: vec![0; self.datum.rank()], w: 0 }
    }

    pub fn translation(&self, x: &[i64]) -> ExtAffineElt {
        ExtAffineElt { t: x.to_vec(), w: 0 }
    }

    pub fn finite(&self, w: u32) -> ExtAffineElt {
        ExtAffineElt { t: vec![0; self.datum.rank()], w }
    }

    /// `(x, w)(x′, w′) = (x + w x′, w w′)`
    pub fn ext_mul(&self, a: &ExtAffineElt, b: &ExtAffineElt) -> ExtAffineElt {
        ExtAffineElt { t: vadd(&a.t, &self.act(a.w, &b.t)), w: self.mul(a.w, b.w) }
    }

    pub fn ext_inv(&self, a: &ExtAffineElt) -> ExtAffineElt {
        let wi = self.inv(a.w);
        ExtAffineElt { t: vneg(&self.act(wi, &a.t)), w: wi }
    }

    /// Affine action on `X ⊗ Q`.
    pub fn ext_act_rational(&self, a: &ExtAffineElt, v: &[Rat]) -> Vec<Rat> {
        let m = self.matrix(a.w);
        (0..v.len())
            .map(|i| {
                let mut s = Rat::from_integer(a.t[i].into());
                for (j, vj) in v.iter().enumerate() {
                    s += Rat::from_integer(m.get(i, j).into()) * vj;
                }
                s
            })
            .collect()
    }

    pub fn ext_length(&self, a: &ExtAffineElt) -> usize {
        self.ext_length_with(a, LengthPolicy::Standard)
    }

    pub fn ext_length_with(&self, a: &ExtAffineElt, policy: LengthPolicy) -> usize {
        let wi = self.inv(a.w);
        let shift = match policy {
            LengthPolicy::Standard => 1,
            LengthPolicy::Variant => -1,
        };
        let mut len = 0i64;
        for j in 0..self.datum.num_roots() {
            if !self.datum.is_positive(j) {
                continue;
            }
            let p = dot(&a.t, self.datum.coroot(j));
            if self.datum.is_positive(self.act_root(wi, j)) {
                len += p.abs();
            } else {
                len += (p - shift).abs();
            }
        }
        len as usize
    }

    /// Simple affine reflections: the finite `s_i` in simple-root order, then
    /// one `s_0 = t_{α_0} s_{α_0}` per irreducible component, where `α_0∨` is
    /// the highest coroot of the component.
    pub fn affine_simples(&self) -> Vec<ExtAffineElt> {
        let mut out: Vec<ExtAffineElt> = (0..self.datum.semisimple_rank()).map(|i| self.finite(self.simple(i))).collect();
        for a in self.datum.highest_coroots() {
            out.push(ExtAffineElt { t: self.datum.root(a).to_vec(), w: self.reflection(a) });
        }
        out
    }

    /// Root index of the affine simple reflection's root: `α_i` for the finite
    /// ones and `α_0` (with highest coroot) for the affine ones.
    pub fn affine_simple_roots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.datum.simples().to_vec();
        v.extend(self.datum.highest_coroots());
        v
    }

    /// Write `a = s_{i_1} ⋯ s_{i_k} · ω` with `k = ℓ(a)` and `ℓ(ω) = 0`; the
    /// indices refer to [`affine_simples`](Self::affine_simples).
    pub fn decompose(&self, a: &ExtAffineElt) -> (Vec<usize>, ExtAffineElt) {
        let gens = self.affine_simples();
        let mut cur = a.clone();
        let mut len = self.ext_length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let mut found = false;
            for (i, s) in gens.iter().enumerate() {
                let next = self.ext_mul(s, &cur);
                let l2 = self.ext_length(&next);
                if l2 < len {
                    word.push(i);
                    cur = next;
                    len = l2;
                    found = true;
                    break;
                }
            }
            assert!(found, "element of positive length without a left descent");
        }
        (word, cur)
    }

    /// Length-zero elements, one per class of `X / (ZΦ + X_c)` where `X_c` is
    /// the lattice of characters orthogonal to all coroots. For semisimple data
    /// this is all of `Ω`; otherwise `Ω` is this finite set times the central
    /// translations.
    pub fn omega_subgroup(&self) -> Result<Vec<ExtAffineElt>> {
        let r = self.datum.rank();
        if r == 0 {
            return Ok(vec![self.ext_identity()]);
        }
        let mut gens = self.datum.roots().to_vec();
        let ann = self.datum.coroot_annihilator();
        gens.extend((0..ann.cols()).map(|j| ann.col(j)));
        let s = smith(&Mat::from_cols(&gens, r));
        let diag: Vec<i64> = (0..r).map(|i| if i < s.d.cols() { s.d.get(i, i) } else { 0 }).collect();
        if diag.iter().any(|&d| d == 0) {
            return Err(Error::Computation("root and central lattices do not span X".into()));
        }
        let mut reps = vec![vec![0i64; r]];
        for (i, &d) in diag.iter().enumerate() {
            let mut next = Vec::new();
            for v in &reps {
                for a in 0..d {
                    let mut w = v.clone();
                    w[i] = a;
                    next.push(w);
                }
            }
            reps = next;
        }
        let mut out: Vec<ExtAffineElt> = reps
            .iter()
            .map(|y| {
                let x = s.u_inv.mul_vec(y);
                self.decompose(&self.translation(&x)).1
            })
            .collect();
        out.sort_by_key(|e| (e.w != 0 || e.t.iter().any(|&c| c != 0), e.clone()));
        Ok(out)
    }

    pub fn to_json(&self, a: &ExtAffineElt) -> ExtAffineJson {
        ExtAffineJson { t: a.t.clone(), w_word: self.word(a.w).iter().map(|&i| i as usize).collect() }
    }

    pub fn from_json(&self, j: &ExtAffineJson) -> Result<ExtAffineElt> {
        if j.t.len() != self.datum.rank() {
            return Err(Error::Validation("translation has the wrong length".into()));
        }
        Ok(ExtAffineElt { t: j.t.clone(), w: self.from_word(&j.w_word)? })
    }

    // ---- dual torus ----

    /// `w · t` on `X ⊗ C^×` in log coordinates.
    pub fn act_point(&self, w: u32, p: &TorusPoint) -> TorusPoint {
        let m = self.matrix(w);
        (0..p.len())
            .map(|i| {
                let mut q = Rat::zero();
                let mut a = Rat::zero();
                for (j, (qj, aj)) in p.iter().enumerate() {
                    let c = Rat::from_integer(m.get(i, j).into());
                    q += &c * qj;
                    a += &c * aj;
                }
                (q, frac(&a))
            })
            .collect()
    }

    pub fn stabilizer_of_point(&self, p: &TorusPoint) -> Result<Subgroup> {
        if p.len() != self.datum.rank() {
            return Err(Error::Validation("point has the wrong number of coordinates".into()));
        }
        // Clear denominators: coordinates become integers, angles taken mod `den`.
        let den = p.iter().fold(num_bigint::BigInt::one(), |acc, (q, a)| acc.lcm(q.denom()).lcm(a.denom()));
        let den = den.to_i64().filter(|d| *d < 1 << 40).ok_or_else(|| Error::Validation("point denominators are too large".into()))?;
        let scale = |r: &Rat| (r * Rat::from_integer(den.into())).to_integer().to_i64().ok_or_else(|| Error::Validation("point coordinate is too large".into()));
        let base: Vec<(i64, i64)> = p.iter().map(|(q, a)| Ok((scale(q)?, scale(a)?.rem_euclid(den)))).collect::<Result<_>>()?;
        let reflect = |a: usize, x: &[(i64, i64)]| -> Vec<(i64, i64)> {
            let (cv, r) = (self.datum.coroot(a), self.datum.root(a));
            let (q, ang) = x.iter().zip(cv).fold((0i64, 0i64), |(q, g), ((xq, xa), &c)| (q + c * xq, (g + c * xa).rem_euclid(den)));
            x.iter().zip(r).map(|((xq, xa), &c)| (xq - c * q, (xa - c * ang).rem_euclid(den))).collect()
        };
        // inv_pts[w] = w⁻¹·p, built along w = u·s_i so each step is one reflection.
        let mut inv_pts: Vec<Vec<(i64, i64)>> = Vec::with_capacity(self.order());
        inv_pts.push(base.clone());
        for w in 1..self.order() {
            let i = *self.words[w].last().expect("nonidentity") as usize;
            let u = self.right_simple[w][i] as usize;
            let img = reflect(self.datum.simples()[i], &inv_pts[u]);
            inv_pts.push(img);
        }
        let elements: Vec<u32> = (0..self.order() as u32).filter(|&w| inv_pts[w as usize] == base).collect();
        Ok(Subgroup { generators: self.generators_of(&elements), elements })
    }

    /// Greedy generating set of a subgroup given by its elements.
    pub fn generators_of(&self, elements: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for &e in elements {
            if span.contains(&e) {
                continue;
            }
            gens.push(e);
            span = self.closure(&gens);
        }
        gens
    }

    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![0u32];
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut head = 0;
        while head < seen.len() {
            for &g in gens {
                let x = self.mul(seen[head], g);
                if !member[x as usize] {
                    member[x as usize] = true;
                    seen.push(x);
                }
            }
            head += 1;
        }
        seen.sort();
        seen
    }
}

/// Rational point of the dual torus from a list of roots of unity `ζ_n^{k_i}`.
pub fn unitary_point(exps: &[i64], n: i64) -> TorusPoint {
    exps.iter()
        .map(|&k| (Rat::zero(), frac(&Rat::new(k.into(), n.into()))))
        .collect()
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_floor_i64(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    r.numer().div_floor(r.denom()).to_i64().expect("floor out of range")
}
