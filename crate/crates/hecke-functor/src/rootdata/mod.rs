//! Based root data, morphisms between them, and lattice utilities.

pub mod classical;
pub mod intmat;
pub mod morphism;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};
pub use classical::{build_classical, Family, Isogeny};
use intmat::{dot, rat_vec_to_int, vneg, vscale, vsub, Mat};
pub use morphism::{Condition1Report, Factorization, RDMorphism};

/// A based root datum `(X, Φ, X∨, Φ∨, Δ)` with `X = X∨ = Z^rank` paired by
/// the dot product. `roots[i]` and `coroots[i]` are matched.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedRootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simples: Vec<usize>,
    frobenius: Option<Mat>,
    simple_coords: Vec<Vec<i64>>,
    cosimple_coords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    coindex: HashMap<Vec<i64>, usize>,
}

impl std::fmt::Debug for BasedRootDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasedRootDatum")
            .field("rank", &self.rank)
            .field("roots", &self.roots)
            .field("coroots", &self.coroots)
            .field("simples", &self.simples)
            .finish()
    }
}

fn coords_in(basis: &[Vec<i64>], rank: usize, v: &[i64]) -> Option<Vec<i64>> {
    let m = Mat::from_cols(basis, rank);
    let sol = m.solve_rational(v)?;
    let ints = rat_vec_to_int(&sol)?;
    (m.mul_vec(&ints) == v).then_some(ints)
}

impl BasedRootDatum {
    /// Validate and build a datum.
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>, simples: Vec<usize>) -> Result<Self> {
        let bad = |m: &str| Err(Error::Validation(m.to_string()));
        if roots.len() != coroots.len() {
            return bad("roots and coroots differ in number");
        }
        if roots.iter().chain(coroots.iter()).any(|v| v.len() != rank) {
            return bad("root or coroot of the wrong length");
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let coindex: HashMap<Vec<i64>, usize> = coroots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        if index.len() != roots.len() || coindex.len() != coroots.len() {
            return bad("repeated root or coroot");
        }
        let sset: BTreeSet<usize> = simples.iter().copied().collect();
        if sset.len() != simples.len() || simples.iter().any(|&s| s >= roots.len()) {
            return bad("simple indices invalid");
        }
        for (a, c) in roots.iter().zip(&coroots) {
            if dot(a, c) != 2 {
                return bad("a matched root/coroot pair does not pair to 2");
            }
        }
        for (i, (a, ac)) in roots.iter().zip(&coroots).enumerate() {
            for (j, (b, bc)) in roots.iter().zip(&coroots).enumerate() {
                let n = dot(b, ac);
                let sb = vsub(b, &vscale(a, n));
                let sbc = vsub(bc, &vscale(ac, dot(a, bc)));
                match index.get(&sb) {
                    Some(&k) if coroots[k] == sbc => {}
                    _ => return bad("root system is not stable under its reflections"),
                }
                if i != j && roots[i] != vneg(b) && !(-3..=3).contains(&n) {
                    return bad("Cartan integer out of range");
                }
            }
        }
        let sroots: Vec<Vec<i64>> = simples.iter().map(|&s| roots[s].clone()).collect();
        let scoroots: Vec<Vec<i64>> = simples.iter().map(|&s| coroots[s].clone()).collect();
        let l = simples.len();
        if l > 0 && (Mat::from_cols(&sroots, rank).rank() < l || Mat::from_cols(&scoroots, rank).rank() < l) {
            return bad("simple roots are linearly dependent");
        }
        let mut simple_coords = Vec::with_capacity(roots.len());
        let mut cosimple_coords = Vec::with_capacity(roots.len());
        for (a, c) in roots.iter().zip(&coroots) {
            let Some(x) = coords_in(&sroots, rank, a) else {
                return bad("a root is not an integral combination of the simple roots");
            };
            if !(x.iter().all(|&t| t >= 0) || x.iter().all(|&t| t <= 0)) {
                return bad("a root has mixed signs in the simple basis");
            }
            let Some(y) = coords_in(&scoroots, rank, c) else {
                return bad("a coroot is not an integral combination of the simple coroots");
            };
            simple_coords.push(x);
            cosimple_coords.push(y);
        }
        Ok(BasedRootDatum { rank, roots, coroots, simples, frobenius: None, simple_coords, cosimple_coords, index, coindex })
    }

    /// Generate Φ from simple roots and coroots by reflection closure. Roots are
    /// ordered: simples, then other positive roots by height, then negatives.
    pub fn from_simple(rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::Validation("simple roots and coroots differ in number".into()));
        }
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for (a, c) in simple_roots.iter().zip(&simple_coroots) {
            if seen.insert(a.clone(), c.clone()).is_none() {
                queue.push_back((a.clone(), c.clone()));
            }
        }
        while let Some((b, bc)) = queue.pop_front() {
            for (a, ac) in simple_roots.iter().zip(&simple_coroots) {
                let sb = vsub(&b, &vscale(a, dot(&b, ac)));
                let sbc = vsub(&bc, &vscale(ac, dot(a, &bc)));
                if !seen.contains_key(&sb) {
                    if seen.len() > 100_000 {
                        return Err(Error::Validation("root system is infinite".into()));
                    }
                    seen.insert(sb.clone(), sbc.clone());
                    queue.push_back((sb, sbc));
                }
            }
        }
        let mut pos: Vec<(i64, Vec<i64>, Vec<i64>)> = Vec::new();
        for (r, c) in &seen {
            if simple_roots.contains(r) {
                continue;
            }
            let x = coords_in(&simple_roots, rank, r)
                .ok_or_else(|| Error::Validation("a root is not an integral combination of the simple roots".into()))?;
            if x.iter().all(|&t| t >= 0) {
                pos.push((x.iter().sum(), r.clone(), c.clone()));
            }
        }
        pos.sort();
        let mut roots = simple_roots.clone();
        let mut coroots = simple_coroots.clone();
        for (_, r, c) in pos {
            roots.push(r);
            coroots.push(c);
        }
        let npos = roots.len();
        for i in 0..npos {
            roots.push(vneg(&roots[i]));
            coroots.push(vneg(&coroots[i]));
        }
        if roots.len() != seen.len() {
            return Err(Error::Validation("some root is neither positive nor negative".into()));
        }
        BasedRootDatum::new(rank, roots, coroots, (0..l).collect())
    }

    /// The rank-`r` torus: no roots.
    pub fn torus(r: usize) -> Self {
        BasedRootDatum::new(r, vec![], vec![], vec![]).expect("torus datum is valid")
    }

    pub fn with_frobenius(mut self, f: Mat) -> Result<Self> {
        if f.rows() != self.rank || !f.is_unimodular() {
            return Err(Error::Validation("Frobenius action must be a lattice automorphism".into()));
        }
        self.frobenius = Some(f);
        Ok(self)
    }

    pub fn frobenius(&self) -> Option<&Mat> {
        self.frobenius.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simples.len()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn coroot_index(&self, v: &[i64]) -> Option<usize> {
        self.coindex.get(v).copied()
    }

    /// Coordinates of root `i` in the simple roots.
    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    /// Coordinates of coroot `i` in the simple coroots.
    pub fn cosimple_coords(&self, i: usize) -> &[i64] {
        &self.cosimple_coords[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.simple_coords[i].iter().any(|&t| t > 0)
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).collect()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        self.index[&vneg(&self.roots[i])]
    }

    /// `s_α(x) = x − ⟨x, α∨⟩ α` for root index `i`.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        vsub(x, &vscale(&self.roots[i], dot(x, &self.coroots[i])))
    }

    /// `s_α∨(y) = y − ⟨α, y⟩ α∨` on the cocharacter lattice.
    pub fn reflect_co(&self, i: usize, y: &[i64]) -> Vec<i64> {
        vsub(y, &vscale(&self.coroots[i], dot(&self.roots[i], y)))
    }

    /// Matrix of `s_α` on X (acting on column vectors).
    pub fn reflection_matrix(&self, i: usize) -> Mat {
        let mut m = Mat::identity(self.rank);
        for r in 0..self.rank {
            for c in 0..self.rank {
                m.set(r, c, m.get(r, c) - self.roots[i][r] * self.coroots[i][c]);
            }
        }
        m
    }

    /// `A[i][j] = ⟨α_i, α_j∨⟩` over the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simples
            .iter()
            .map(|&i| self.simples.iter().map(|&j| dot(&self.roots[i], &self.coroots[j])).collect())
            .collect()
    }

    /// Connected components of the Dynkin diagram, as lists of positions in `simples`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let a = self.cartan_matrix();
        let l = a.len();
        let mut comp = vec![usize::MAX; l];
        let mut out = Vec::new();
        for s in 0..l {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                for j in 0..l {
                    if comp[j] == usize::MAX && a[i][j] != 0 {
                        comp[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Component index (into `components()`) of root `i`.
    pub fn component_of_root(&self, i: usize) -> usize {
        let comps = self.components();
        let pos = self.simple_coords[i].iter().position(|&t| t != 0).expect("root with empty support");
        comps.iter().position(|c| c.contains(&pos)).unwrap()
    }

    /// For each component, the index of the root whose coroot is the highest coroot.
    pub fn highest_coroots(&self) -> Vec<usize> {
        let comps = self.components();
        comps
            .iter()
            .map(|c| {
                (0..self.roots.len())
                    .filter(|&i| self.is_positive(i) && c.contains(&self.simple_coords[i].iter().position(|&t| t != 0).unwrap()))
                    .max_by_key(|&i| (self.cosimple_coords[i].iter().sum::<i64>(), std::cmp::Reverse(i)))
                    .unwrap()
            })
            .collect()
    }

    /// Swap characters and cocharacters.
    pub fn dual(&self) -> BasedRootDatum {
        let mut d = BasedRootDatum::new(self.rank, self.coroots.clone(), self.roots.clone(), self.simples.clone())
            .expect("dual of a valid datum is valid");
        d.frobenius = self.frobenius.as_ref().map(|f| f.inverse_unimodular().expect("unimodular").transpose());
        d
    }

    /// Direct sum `R1 ⊕ R2` on `Z^{r1 + r2}`.
    pub fn direct_sum(&self, other: &BasedRootDatum) -> BasedRootDatum {
        let (r1, r2) = (self.rank, other.rank);
        let pad = |v: &[i64], left: bool| -> Vec<i64> {
            if left {
                let mut x = v.to_vec();
                x.extend(std::iter::repeat(0).take(r2));
                x
            } else {
                let mut x = vec![0; r1];
                x.extend_from_slice(v);
                x
            }
        };
        let mut roots: Vec<Vec<i64>> = self.roots.iter().map(|v| pad(v, true)).collect();
        roots.extend(other.roots.iter().map(|v| pad(v, false)));
        let mut coroots: Vec<Vec<i64>> = self.coroots.iter().map(|v| pad(v, true)).collect();
        coroots.extend(other.coroots.iter().map(|v| pad(v, false)));
        let mut simples = self.simples.clone();
        simples.extend(other.simples.iter().map(|&s| s + self.roots.len()));
        BasedRootDatum::new(r1 + r2, roots, coroots, simples).expect("direct sum of valid data is valid")
    }

    /// Index of `Z·Φ∨` in the cocharacter lattice, or `None` if infinite.
    pub fn coroot_lattice_index(&self) -> Option<i64> {
        lattice_index(&self.coroots, self.rank)
    }

    /// Index of `Z·Φ` in the character lattice, or `None` if infinite.
    pub fn root_lattice_index(&self) -> Option<i64> {
        lattice_index(&self.roots, self.rank)
    }

    /// Integer basis (columns) of the cocharacters orthogonal to every root.
    pub fn central_cocharacters(&self) -> Mat {
        Mat::from_rows(&self.roots, self.rank).kernel()
    }

    /// Integer basis (columns) of the characters orthogonal to every coroot.
    pub fn coroot_annihilator(&self) -> Mat {
        Mat::from_rows(&self.coroots, self.rank).kernel()
    }

    /// Transport the datum along a unimodular change of coordinates `g`
    /// (new character coordinates are `g·x`).
    pub fn transport(&self, g: &Mat) -> Result<BasedRootDatum> {
        let ginv = g.inverse_unimodular().ok_or_else(|| Error::Validation("change of basis is not unimodular".into()))?;
        let git = ginv.transpose();
        BasedRootDatum::new(
            self.rank,
            self.roots.iter().map(|r| g.mul_vec(r)).collect(),
            self.coroots.iter().map(|c| git.mul_vec(c)).collect(),
            self.simples.clone(),
        )
    }
}

fn lattice_index(gens: &[Vec<i64>], rank: usize) -> Option<i64> {
    if rank == 0 {
        return Some(1);
    }
    let s = intmat::smith(&Mat::from_cols(gens, rank));
    if s.rank() < rank {
        return None;
    }
    Some(s.diagonal().iter().product())
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simples: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frobenius: Option<Mat>,
}

impl Serialize for BasedRootDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DatumJson {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            simples: self.simples.clone(),
            frobenius: self.frobenius.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasedRootDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DatumJson::deserialize(d)?;
        let mut r = BasedRootDatum::new(j.rank, j.roots, j.coroots, j.simples).map_err(serde::de::Error::custom)?;
        if let Some(f) = j.frobenius {
            r = r.with_frobenius(f).map_err(serde::de::Error::custom)?;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_data_rejected() {
        assert!(BasedRootDatum::new(1, vec![vec![2]], vec![vec![2]], vec![0]).is_err());
        assert!(BasedRootDatum::new(1, vec![vec![2]], vec![vec![1]], vec![0]).is_err());
        assert!(BasedRootDatum::new(1, vec![vec![2], vec![-2]], vec![vec![1], vec![-1]], vec![0]).is_ok());
    }

    #[test]
    fn reflection_in_a2() {
        let r = build_classical(Family::A, 2, Isogeny::Sc).unwrap();
        let s1a2 = r.reflect(0, r.root(1));
        assert_eq!(r.root_index(&s1a2).map(|i| r.simple_coords(i).to_vec()), Some(vec![1, 1]));
        assert_eq!(r.reflect(0, r.root(0)), vneg(r.root(0)));
    }

    #[test]
    fn dual_round_trip_and_json() {
        for r in [
            build_classical(Family::B, 3, Isogeny::Sc).unwrap(),
            build_classical(Family::GL, 3, Isogeny::GlForm).unwrap(),
            BasedRootDatum::torus(0),
        ] {
            assert_eq!(r.dual().dual(), r);
            let s = serde_json::to_string(&r).unwrap();
            let back: BasedRootDatum = serde_json::from_str(&s).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn highest_coroot_of_c2() {
        let r = build_classical(Family::C, 2, Isogeny::Sc).unwrap();
        let h = r.highest_coroots();
        assert_eq!(h.len(), 1);
        assert_eq!(r.cosimple_coords(h[0]).iter().sum::<i64>(), 3);
    }
}
