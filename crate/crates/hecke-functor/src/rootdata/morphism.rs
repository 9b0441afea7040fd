use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intmat::{rat_matrix_to_int, smith, Mat};
use super::BasedRootDatum;
use crate::{Error, Result};

/// A morphism of root data coming from a group homomorphism `source → target`.
/// `char_map` is the pullback on characters, an `rank(source) × rank(target)`
/// matrix sending `X(target) → X(source)`; the cocharacter map is its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDMorphism {
    source: BasedRootDatum,
    target: BasedRootDatum,
    char_map: Mat,
}

/// Result of the Condition-1 test with the violated clauses spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition1Report {
    pub holds: bool,
    pub violations: Vec<String>,
}

impl RDMorphism {
    pub fn new(source: BasedRootDatum, target: BasedRootDatum, char_map: Mat) -> Result<Self> {
        if char_map.rows() != source.rank() || char_map.cols() != target.rank() {
            return Err(Error::Validation(format!(
                "character map must be {}x{}, got {}x{}",
                source.rank(),
                target.rank(),
                char_map.rows(),
                char_map.cols()
            )));
        }
        Ok(RDMorphism { source, target, char_map })
    }

    pub fn identity(r: &BasedRootDatum) -> Self {
        RDMorphism { source: r.clone(), target: r.clone(), char_map: Mat::identity(r.rank()) }
    }

    pub fn source(&self) -> &BasedRootDatum {
        &self.source
    }

    pub fn target(&self) -> &BasedRootDatum {
        &self.target
    }

    pub fn char_map(&self) -> &Mat {
        &self.char_map
    }

    pub fn cochar_map(&self) -> Mat {
        self.char_map.transpose()
    }

    /// `g ∘ self`, where `g` starts at `self.target()`.
    pub fn then(&self, g: &RDMorphism) -> Result<RDMorphism> {
        if self.target.rank() != g.source.rank() {
            return Err(Error::Validation("morphisms are not composable".into()));
        }
        RDMorphism::new(self.source.clone(), g.target.clone(), self.char_map.mul(&g.char_map))
    }

    /// For each source root, the target root whose pullback it is.
    pub fn root_match(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.source.num_roots()];
        for (a, alpha) in self.target.roots().iter().enumerate() {
            if let Some(b) = self.source.root_index(&self.char_map.mul_vec(alpha)) {
                m[b] = Some(a);
            }
        }
        m
    }

    pub fn condition1(&self) -> Condition1Report {
        let mut violations = Vec::new();
        let mut hit = vec![false; self.source.num_roots()];
        let ct = self.cochar_map();
        for (a, alpha) in self.target.roots().iter().enumerate() {
            let img = self.char_map.mul_vec(alpha);
            match self.source.root_index(&img) {
                None => violations.push(format!("target root {a} does not pull back to a root (image {img:?})")),
                Some(b) => {
                    if hit[b] {
                        violations.push(format!("source root {b} is hit twice"));
                    }
                    hit[b] = true;
                    if ct.mul_vec(self.source.coroot(b)) != self.target.coroot(a) {
                        violations.push(format!("coroot of source root {b} does not map to the coroot of target root {a}"));
                    }
                }
            }
        }
        for (b, h) in hit.iter().enumerate() {
            if !h {
                violations.push(format!("source root {b} is not the pullback of a target root"));
            }
        }
        Condition1Report { holds: violations.is_empty(), violations }
    }

    pub fn is_condition1(&self) -> bool {
        self.condition1().holds
    }

    /// Isomorphism of based root data: unimodular, Condition 1, simples to simples.
    pub fn is_based_isomorphism(&self) -> bool {
        if !self.char_map.is_unimodular() || !self.is_condition1() {
            return false;
        }
        let m = self.root_match();
        self.source.simples().iter().all(|&b| m[b].is_some_and(|a| self.target.simples().contains(&a)))
    }

    /// Factor `self = f3 ∘ f2 ∘ f1` through a torus insertion, a central quotient
    /// and an isomorphism.
    pub fn factorize_condition1(&self) -> Result<Factorization> {
        let rep = self.condition1();
        if !rep.holds {
            return Err(Error::Computation(format!("Condition 1 fails: {}", rep.violations.join("; "))));
        }
        let (rs, rt) = (self.source.rank(), self.target.rank());
        let mc = &self.char_map;
        // Central cocharacters of the target and the directions not reached by the source.
        let k = self.target.central_cocharacters();
        let q = mc.kernel().transpose();
        let qk = q.mul(&k);
        let s = smith(&qk);
        let c = q.rows();
        if s.rank() != c {
            return Err(Error::Computation("central torus does not complement the image".into()));
        }
        let r = s.v.select_cols(&(0..c).collect::<Vec<_>>());
        let ycochars = k.mul(&r);
        let p = ycochars.transpose();
        let stacked = mc.vstack(&p);
        let sn = smith(&stacked);
        if sn.rank() != rt {
            return Err(Error::Computation("stacked character map is not injective".into()));
        }
        let b = sn.u_inv.mul(&sn.d);
        let f3c = sn.v_inv.clone();
        let ext = self.source.direct_sum(&BasedRootDatum::torus(c));
        let mid = self.target.transport(&f3c)?;
        let mut proj = Mat::zeros(rs, rs + c);
        for i in 0..rs {
            proj.set(i, i, 1);
        }
        let f1 = RDMorphism::new(self.source.clone(), ext.clone(), proj)?;
        let f2 = RDMorphism::new(ext, mid.clone(), b)?;
        let f3 = RDMorphism::new(mid, self.target.clone(), f3c)?;
        let diag = sn.diagonal();
        Ok(Factorization {
            torus_cochars: ycochars,
            kernel_torsion: diag.iter().copied().filter(|&d| d > 1).collect(),
            kernel_torus_rank: rs + c - rt,
            f1,
            f2,
            f3,
        })
    }

    /// All automorphisms of a based root datum, as self-morphisms whose
    /// character map is the lattice automorphism.
    pub fn based_automorphisms(r: &BasedRootDatum) -> Result<Vec<RDMorphism>> {
        let n = r.rank();
        let ann = r.coroot_annihilator();
        let crank = ann.cols();
        if crank > 1 {
            return Err(Error::Computation("possibly infinite automorphism group".into()));
        }
        let a = r.cartan_matrix();
        let sroots: Vec<Vec<i64>> = r.simples().iter().map(|&s| r.root(s).to_vec()).collect();
        let basis = Mat::from_cols(&sroots, n).hstack(&ann);
        let binv = basis.inverse_rational().ok_or_else(|| Error::Computation("simple roots and centre are dependent".into()))?;
        let mut out = Vec::new();
        let signs: &[i64] = if crank == 1 { &[1, -1] } else { &[1] };
        for pi in diagram_automorphisms(&a) {
            for &eps in signs {
                let mut img_cols: Vec<Vec<i64>> = pi.iter().map(|&j| sroots[j].clone()).collect();
                img_cols.extend((0..crank).map(|j| ann.col(j).iter().map(|x| eps * x).collect()));
                let img = Mat::from_cols(&img_cols, n);
                let prod: Vec<Vec<num_rational::BigRational>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                (0..n).fold(num_rational::BigRational::from_integer(0.into()), |s, t| {
                                    s + num_rational::BigRational::from_integer(img.get(i, t).into()) * &binv[t][j]
                                })
                            })
                            .collect()
                    })
                    .collect();
                let Some(m) = rat_matrix_to_int(&prod, n) else { continue };
                if !m.is_unimodular() {
                    continue;
                }
                let f = RDMorphism::new(r.clone(), r.clone(), m)?;
                if f.is_based_isomorphism() {
                    out.push(f);
                }
            }
        }
        out.sort_by_key(|f| (!f.char_map.is_identity(), f.char_map.to_rows()));
        out.dedup();
        Ok(out)
    }
}

/// Permutations `π` with `A[π i][π j] = A[i][j]`.
pub fn diagram_automorphisms(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn rec(a: &[Vec<i64>], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            if (0..i).all(|j| a[cur[j]][c] == a[j][i] && a[c][cur[j]] == a[i][j]) {
                used[c] = true;
                cur.push(c);
                rec(a, cur, used, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(a, &mut Vec::new(), &mut vec![false; a.len()], &mut out);
    out
}

/// `f = f3 ∘ f2 ∘ f1`: `f1` inserts the torus with cocharacters
/// `torus_cochars` (columns, in the target), `f2` is a central quotient with
/// kernel `μ_{d_1} × … × μ_{d_k}` times a torus of rank `kernel_torus_rank`,
/// and `f3` is an isomorphism of based root data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub torus_cochars: Mat,
    pub kernel_torsion: Vec<i64>,
    pub kernel_torus_rank: usize,
    pub f1: RDMorphism,
    pub f2: RDMorphism,
    pub f3: RDMorphism,
}

impl Factorization {
    pub fn recompose(&self) -> Result<RDMorphism> {
        self.f1.then(&self.f2)?.then(&self.f3)
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_cochars.cols()
    }
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source: BasedRootDatum,
    target: BasedRootDatum,
    char_map: Mat,
    #[serde(default)]
    cochar_map: Option<Mat>,
}

impl Serialize for RDMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson {
            source: self.source.clone(),
            target: self.target.clone(),
            char_map: self.char_map.clone(),
            cochar_map: Some(self.cochar_map()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RDMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MorphismJson::deserialize(d)?;
        if let Some(c) = &j.cochar_map {
            if *c != j.char_map.transpose() {
                return Err(D::Error::custom("cochar_map is not the transpose of char_map"));
            }
        }
        RDMorphism::new(j.source, j.target, j.char_map).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_classical, Family, Isogeny};

    fn gl(n: usize) -> BasedRootDatum {
        build_classical(Family::GL, n, Isogeny::GlForm).unwrap()
    }

    /// SL_n (weight-lattice coordinates) into GL_n: e_i ↦ ω_i − ω_{i-1}.
    pub(crate) fn sl_to_gl(n: usize) -> RDMorphism {
        let sl = build_classical(Family::A, n - 1, Isogeny::Sc).unwrap();
        let mut m = Mat::zeros(n - 1, n);
        for i in 0..n {
            if i < n - 1 {
                m.set(i, i, 1);
            }
            if i > 0 {
                m.set(i - 1, i, -1);
            }
        }
        RDMorphism::new(sl, gl(n), m).unwrap()
    }

    #[test]
    fn sl_into_gl_is_condition1() {
        for n in 2..6 {
            let f = sl_to_gl(n);
            assert!(f.is_condition1(), "{:?}", f.condition1());
            let fac = f.factorize_condition1().unwrap();
            assert_eq!(fac.recompose().unwrap(), f);
            assert_eq!(fac.torus_rank(), 1);
            assert_eq!(fac.kernel_torsion, vec![n as i64]);
            assert!(fac.f1.is_condition1() && fac.f2.is_condition1() && fac.f3.is_condition1());
            assert!(fac.f3.is_based_isomorphism());
        }
    }

    #[test]
    fn det_and_centre_fail() {
        let det = RDMorphism::new(gl(3), gl(1), Mat::from_rows(&[vec![1], vec![1], vec![1]], 1)).unwrap();
        assert!(!det.is_condition1());
        let centre = RDMorphism::new(gl(1), gl(2), Mat::from_rows(&[vec![1, 1]], 2)).unwrap();
        assert!(!centre.is_condition1());
    }

    #[test]
    fn identity_and_gl_to_pgl() {
        let r = gl(3);
        let fac = RDMorphism::identity(&r).factorize_condition1().unwrap();
        assert_eq!(fac.torus_rank(), 0);
        assert!(fac.kernel_torsion.is_empty());
        assert_eq!(fac.kernel_torus_rank, 0);
        let pgl = build_classical(Family::A, 2, Isogeny::Ad).unwrap();
        let m = Mat::from_rows(&[vec![1, 0], vec![-1, 1], vec![0, -1]], 2);
        let q = RDMorphism::new(r, pgl, m).unwrap();
        assert!(q.is_condition1());
        let fac = q.factorize_condition1().unwrap();
        assert_eq!(fac.torus_rank(), 0);
        assert_eq!(fac.kernel_torus_rank, 1);
        assert!(fac.kernel_torsion.is_empty());
        assert_eq!(fac.recompose().unwrap(), q);
    }

    fn check_group(auts: &[RDMorphism]) {
        for f in auts {
            let inv = f.char_map().inverse_unimodular().unwrap();
            assert!(auts.iter().any(|g| *g.char_map() == inv));
            for g in auts {
                let fg = f.char_map().mul(g.char_map());
                assert!(auts.iter().any(|h| *h.char_map() == fg));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let cases = [
            (gl(1), 2),
            (gl(2), 2),
            (gl(4), 2),
            (build_classical(Family::A, 1, Isogeny::Sc).unwrap(), 1),
            (build_classical(Family::A, 2, Isogeny::Sc).unwrap(), 2),
            (build_classical(Family::D, 4, Isogeny::Ad).unwrap(), 6),
            (build_classical(Family::C, 3, Isogeny::Sc).unwrap(), 1),
        ];
        for (r, count) in cases {
            let auts = RDMorphism::based_automorphisms(&r).unwrap();
            assert_eq!(auts.len(), count, "{r:?}");
            assert!(auts[0].char_map().is_identity());
            check_group(&auts);
        }
        let g4 = gl(4);
        let flip = &RDMorphism::based_automorphisms(&g4).unwrap()[1];
        assert_eq!(flip.char_map().mul_vec(&[1, 2, 3, 4]), vec![-4, -3, -2, -1]);
        assert!(RDMorphism::based_automorphisms(&BasedRootDatum::torus(2)).is_err());
    }
}
