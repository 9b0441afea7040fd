//! Exact character tables (Dixon's modular method) and the operations on
//! class functions used for enhancements: restriction, induction across a
//! normal subgroup with abelian quotient, multiplicities, twists, and a
//! Clifford-theory re-derivation.

use super::group::FiniteGroup;
use crate::numkernel::{Cyclo, Rat};
use crate::{Error, Result};

/// A class function, stored by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn trivial(g: &FiniteGroup) -> Self {
        ClassFunction { values: vec![Cyclo::one(); g.order()] }
    }

    pub fn regular(g: &FiniteGroup) -> Self {
        let values = (0..g.order() as u32).map(|x| if x == g.identity() { Cyclo::from_int(g.order() as i64) } else { Cyclo::zero() }).collect();
        ClassFunction { values }
    }

    pub fn degree(&self, g: &FiniteGroup) -> Rat {
        self.values[g.identity() as usize].to_rational().expect("degree is rational")
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        let c = Cyclo::from_int(k);
        ClassFunction { values: self.values.iter().map(|a| a * &c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Pointwise product; with `τ` linear this is `ρ ⊗ τ`.
    pub fn twist(&self, tau: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&tau.values).map(|(a, b)| a * b).collect() }
    }
}

/// `⟨a, b⟩ = |G|⁻¹ Σ a(g) b(g)‾`.
pub fn inner(g: &FiniteGroup, a: &ClassFunction, b: &ClassFunction) -> Cyclo {
    let mut s = Cyclo::zero();
    for (x, y) in a.values.iter().zip(&b.values) {
        s = &s + &(x * &y.conj());
    }
    &s * &Cyclo::from_rat(Rat::new(1.into(), (g.order() as i64).into()))
}

/// `dim Hom(σ, ρ)` for characters `σ`, `ρ`.
pub fn hom_mult(g: &FiniteGroup, sigma: &ClassFunction, rho: &ClassFunction) -> Result<u64> {
    let v = inner(g, sigma, rho);
    v.to_rational()
        .filter(|r| r.is_integer() && *r >= Rat::from_integer(0.into()))
        .and_then(|r| num_traits::ToPrimitive::to_u64(&r.to_integer()))
        .ok_or_else(|| Error::Computation("inner product of characters is not a nonnegative integer".into()))
}

pub fn is_linear_character(g: &FiniteGroup, tau: &ClassFunction) -> bool {
    let n = g.order() as u32;
    tau.values[g.identity() as usize].is_one()
        && (0..n).all(|a| (0..n).all(|b| tau.values[g.mul(a, b) as usize] == &tau.values[a as usize] * &tau.values[b as usize]))
}

pub fn restrict(sub: &[u32], chi: &ClassFunction) -> ClassFunction {
    ClassFunction { values: sub.iter().map(|&x| chi.values[x as usize].clone()).collect() }
}

/// `Ind_N^G ψ` for any subgroup `N` (given as elements of `G`).
pub fn induce_any(g: &FiniteGroup, sub: &[u32], psi: &ClassFunction) -> ClassFunction {
    let n = g.order() as u32;
    let mut pos = vec![None; g.order()];
    for (i, &x) in sub.iter().enumerate() {
        pos[x as usize] = Some(i);
    }
    let scale = Cyclo::from_rat(Rat::new(1.into(), (sub.len() as i64).into()));
    let values = (0..n)
        .map(|x| {
            let mut s = Cyclo::zero();
            for y in 0..n {
                if let Some(i) = pos[g.conj(y, x) as usize] {
                    s = &s + &psi.values[i];
                }
            }
            &s * &scale
        })
        .collect();
    ClassFunction { values }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub classes: Vec<Vec<u32>>,
    /// Irreducible characters; the trivial one first, then by degree.
    pub irr: Vec<ClassFunction>,
}

impl CharTable {
    pub fn compute(g: &FiniteGroup) -> Result<Self> {
        dixon(g)
    }

    /// Multiplicities of each irreducible in `chi`.
    pub fn decompose(&self, g: &FiniteGroup, chi: &ClassFunction) -> Result<Vec<u64>> {
        self.irr.iter().map(|r| hom_mult(g, chi, r)).collect()
    }

    pub fn index_of(&self, chi: &ClassFunction) -> Option<usize> {
        self.irr.iter().position(|r| r == chi)
    }

    /// Values on the class representatives.
    pub fn class_values(&self, chi: &ClassFunction) -> Vec<Cyclo> {
        self.classes.iter().map(|c| chi.values[c[0] as usize].clone()).collect()
    }
}

pub fn irreducibles(g: &FiniteGroup) -> Result<Vec<ClassFunction>> {
    Ok(CharTable::compute(g)?.irr)
}

#[derive(Clone, Debug)]
pub struct Induced {
    pub character: ClassFunction,
    /// `(index into Irr(G), multiplicity)` with positive multiplicity.
    pub decomposition: Vec<(usize, u64)>,
}

fn check_normal_abelian(g: &FiniteGroup, n: &[u32]) -> Result<()> {
    if !g.is_normal(n) {
        return Err(Error::Validation("subgroup is not normal".into()));
    }
    if !g.quotient_is_abelian(n) {
        return Err(Error::Validation("quotient by the subgroup is not abelian".into()));
    }
    Ok(())
}

/// Induction across a normal subgroup with abelian quotient.
pub fn induce(g: &FiniteGroup, table: &CharTable, n: &[u32], rho: &ClassFunction) -> Result<Induced> {
    check_normal_abelian(g, n)?;
    let character = induce_any(g, n, rho);
    let mult = table.decompose(g, &character)?;
    let decomposition = mult.into_iter().enumerate().filter(|(_, m)| *m > 0).collect();
    Ok(Induced { character, decomposition })
}

#[derive(Clone, Debug)]
pub struct CliffordReport {
    /// Stabilizer of `ρ` in `G`, as elements of `G`.
    pub stabilizer: Vec<u32>,
    /// Irreducibles `ψ` of the stabilizer over `ρ` with `m_ψ = ⟨Res ψ, ρ⟩`.
    pub pieces: Vec<(ClassFunction, u64)>,
    /// `Ind_I^G ψ` for each piece; each must be irreducible.
    pub induced_pieces: Vec<ClassFunction>,
    pub holds: bool,
}

/// Re-derive `Ind_N^G ρ` through the stabilizer `I` of `ρ`:
/// `Ind_N^G ρ = ⊕ m_ψ Ind_I^G ψ` with the `Ind_I^G ψ` irreducible and
/// distinct and `Σ m_ψ² = [I : N]`.
pub fn clifford_identity_check(g: &FiniteGroup, n: &[u32], rho: &ClassFunction) -> Result<CliffordReport> {
    check_normal_abelian(g, n)?;
    let ng = g.subgroup(n)?;
    if hom_mult(&ng, rho, rho)? != 1 {
        return Err(Error::Validation("ρ is not irreducible".into()));
    }
    let pos = |x: u32| n.iter().position(|&y| y == x).expect("normal subgroup");
    let stabilizer: Vec<u32> =
        (0..g.order() as u32).filter(|&h| n.iter().enumerate().all(|(i, &x)| rho.values[pos(g.conj(h, x))] == rho.values[i])).collect();
    let ig = g.subgroup(&stabilizer)?;
    let itable = CharTable::compute(&ig)?;
    let n_in_i: Vec<u32> = n.iter().map(|x| stabilizer.iter().position(|y| y == x).expect("N ⊂ I") as u32).collect();
    let mut pieces = Vec::new();
    for psi in &itable.irr {
        let m = hom_mult(&ng, &restrict(&n_in_i, psi), rho)?;
        if m > 0 {
            pieces.push((psi.clone(), m));
        }
    }
    let induced_pieces: Vec<ClassFunction> = pieces.iter().map(|(psi, _)| induce_any(g, &stabilizer, psi)).collect();
    let mut holds = pieces.iter().map(|(_, m)| m * m).sum::<u64>() as usize == stabilizer.len() / n.len();
    for (i, a) in induced_pieces.iter().enumerate() {
        holds &= hom_mult(g, a, a)? == 1;
        for b in &induced_pieces[..i] {
            holds &= hom_mult(g, a, b)? == 0;
        }
    }
    let mut sum = ClassFunction { values: vec![Cyclo::zero(); g.order()] };
    for ((_, m), c) in pieces.iter().zip(&induced_pieces) {
        sum = sum.add(&c.scale(*m as i64));
    }
    holds &= sum == induce_any(g, n, rho);
    Ok(CliffordReport { stabilizer, pieces, induced_pieces, holds })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// Null space of a square matrix over `F_p`.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = invmod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][free]) % p;
            }
            v
        })
        .collect()
}

/// Coordinates of each `v` in the basis `basis` (assumed to contain it).
fn coordinates(basis: &[Vec<u64>], vs: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let m = basis.len();
    let k = basis[0].len();
    // Rows: [b_0 … b_{m−1} | v_0 … ] transposed to k equations.
    let mut a: Vec<Vec<u64>> = (0..k).map(|i| basis.iter().chain(vs).map(|b| b[i]).collect()).collect();
    let mut r = 0;
    for c in 0..m {
        let pr = (r..k).find(|&i| a[i][c] != 0).expect("basis vectors are independent");
        a.swap(r, pr);
        let inv = invmod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..k {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..a[i].len() {
                    a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
                }
            }
        }
        r += 1;
    }
    (0..vs.len()).map(|j| (0..m).map(|i| a[i][m + j]).collect()).collect()
}

fn dixon(g: &FiniteGroup) -> Result<CharTable> {
    let order = g.order() as u64;
    let classes = g.classes();
    let k = classes.len();
    let mut class_of = vec![0usize; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x as usize] = i;
        }
    }
    let e = g.exponent();
    let mut p = (order * 2).max(100) + 1;
    while !(p % e == 1 % e && is_prime(p)) {
        p += 1;
    }
    // M_i[j][l] = #{x ∈ C_i : x⁻¹ z_l ∈ C_j}
    let mats: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            let mut m = vec![vec![0u64; k]; k];
            for (l, cl) in classes.iter().enumerate() {
                let z = cl[0];
                for &x in &classes[i] {
                    m[class_of[g.mul(g.inv(x), z) as usize]][l] += 1;
                }
            }
            m
        })
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for m in &mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let images: Vec<Vec<u64>> = w.iter().map(|b| (0..k).map(|j| (0..k).fold(0, |s, l| (s + mulmod(m[j][l], b[l], p)) % p)).collect()).collect();
            let a = coordinates(&w, &images, p);
            let dim = w.len();
            let mut found = 0;
            for lam in 0..p {
                // (A − λ)u = 0 with A[a][b] = coordinate a of image b.
                let shifted: Vec<Vec<u64>> = (0..dim).map(|r| (0..dim).map(|c| (a[c][r] + if r == c { p - lam } else { 0 }) % p).collect()).collect();
                let ns = nullspace(shifted, p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                next.push(ns.iter().map(|u| (0..k).map(|j| (0..dim).fold(0, |s, b| (s + mulmod(u[b], w[b][j], p)) % p)).collect()).collect());
                if found == dim {
                    break;
                }
            }
            if found != dim {
                return Err(Error::Computation("class algebra does not split".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Computation("common eigenspaces are not one-dimensional".into()));
    }
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0]) as usize]).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    // Primitive e-th root of unity mod p.
    let factors: Vec<u64> = (2..p).filter(|q| (p - 1) % q == 0 && is_prime(*q)).collect();
    let gen = (2..p).find(|&a| factors.iter().all(|&q| powmod(a, (p - 1) / q, p) != 1)).expect("F_p* is cyclic");
    let omega = powmod(gen, (p - 1) / e, p);
    let inv_e = invmod(e % p, p);
    let mut irr = Vec::new();
    for s in spaces {
        let w0 = &s[0];
        if w0[0] == 0 {
            return Err(Error::Computation("central character vanishes at the identity".into()));
        }
        let n0 = invmod(w0[0], p);
        let w: Vec<u64> = w0.iter().map(|x| mulmod(*x, n0, p)).collect();
        let mut ssum = 0;
        for l in 0..k {
            ssum = (ssum + mulmod(mulmod(w[l], w[inv_class[l]], p), invmod(sizes[l], p), p)) % p;
        }
        let d2 = mulmod(order % p, invmod(ssum, p), p);
        let d = (1..=order).find(|d| d * d <= order && d * d % p == d2).ok_or_else(|| Error::Computation("no valid degree".into()))?;
        let theta: Vec<u64> = (0..k).map(|l| mulmod(mulmod(d, w[l], p), invmod(sizes[l], p), p)).collect();
        let mut by_class = Vec::with_capacity(k);
        for c in &classes {
            let x = c[0];
            let mut val = Cyclo::zero();
            for kk in 0..e {
                let mut m = 0;
                for j in 0..e {
                    let t = theta[class_of[g.pow(x, j) as usize]];
                    m = (m + mulmod(t, powmod(omega, (e - (j * kk) % e) % e, p), p)) % p;
                }
                let m = mulmod(m, inv_e, p);
                if m > d {
                    return Err(Error::Computation("eigenvalue multiplicity exceeds the degree".into()));
                }
                if m > 0 {
                    val = &val + &(&Cyclo::root_of_unity(kk as i64, e) * &Cyclo::from_int(m as i64));
                }
            }
            by_class.push(val);
        }
        let mut values = vec![Cyclo::zero(); g.order()];
        for (l, c) in classes.iter().enumerate() {
            for &x in c {
                values[x as usize] = by_class[l].clone();
            }
        }
        irr.push((d, ClassFunction { values }));
    }
    irr.sort_by(|(da, a), (db, b)| {
        let ta = a.values.iter().all(|v| v.is_one());
        let tb = b.values.iter().all(|v| v.is_one());
        (da, !ta).cmp(&(db, !tb)).then_with(|| format!("{:?}", a.values).cmp(&format!("{:?}", b.values)))
    });
    let irr: Vec<ClassFunction> = irr.into_iter().map(|(_, c)| c).collect();
    for (i, a) in irr.iter().enumerate() {
        for (j, b) in irr.iter().enumerate() {
            let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
            if inner(g, a, b) != want {
                return Err(Error::Computation("lifted characters are not orthonormal".into()));
            }
        }
    }
    Ok(CharTable { classes, irr })
}
