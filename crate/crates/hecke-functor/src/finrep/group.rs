use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
    subgroups: BTreeMap<String, Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<u32>>,
    #[serde(default)]
    subgroups: BTreeMap<String, Vec<u32>>,
}

pub const MAX_ORDER: usize = 64;

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("empty group table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::Validation(format!("group order {n} exceeds {MAX_ORDER}")));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x as usize >= n) {
                return Err(Error::Validation("table is not a square table on 0..n".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
            .ok_or_else(|| Error::Validation("no identity element".into()))? as u32;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity)
                .ok_or_else(|| Error::Validation(format!("element {x} has no inverse")))? as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return Err(Error::Validation("table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse, subgroups: BTreeMap::new() })
    }

    /// The group generated by `gens` under `mul`; element 0 is the identity.
    pub fn generated<T: Clone + Eq + Hash>(identity: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Result<(Self, Vec<T>)> {
        let mut elems = vec![identity];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = mul(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::Validation(format!("group order exceeds {MAX_ORDER}")));
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let table = elems.iter().map(|a| elems.iter().map(|b| index[&mul(a, b)] as u32).collect()).collect();
        Ok((FiniteGroup::from_table(table)?, elems))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect()).collect();
        FiniteGroup::from_table(table)
    }

    pub fn direct_product(&self, o: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order(), o.order());
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.mul((a / m) as u32, (b / m) as u32) * m as u32 + o.mul((a % m) as u32, (b % m) as u32)).collect())
            .collect();
        FiniteGroup::from_table(table)
    }

    /// Permutation group generated by `gens` (images of `0..n`).
    pub fn permutations(n: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let id: Vec<usize> = (0..n).collect();
        // (p·q)(i) = p(q(i))
        FiniteGroup::generated(id, gens, |p, q| q.iter().map(|&i| p[i]).collect())
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut tr: Vec<usize> = (0..n).collect();
        if n >= 2 {
            tr.swap(0, 1);
        }
        Ok(FiniteGroup::permutations(n, &[cyc, tr])?.0)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Ok(FiniteGroup::permutations(n, &gens)?.0)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Ok(FiniteGroup::permutations(n, &[rot, refl])?.0)
    }

    pub fn quaternion() -> Result<Self> {
        // Unit quaternions ±1, ±i, ±j, ±k as (sign, axis).
        type Q = (i8, u8);
        fn mul(a: &Q, b: &Q) -> Q {
            let (s, t) = match (a.1, b.1) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            };
            (a.0 * b.0 * s, t)
        }
        Ok(FiniteGroup::generated((1, 0), &[(1, 1), (1, 2)], mul)?.0)
    }

    /// `SL(2, p)` for a small prime `p`.
    pub fn sl2(p: i64) -> Result<Self> {
        type M = [i64; 4];
        let mul = move |a: &M, b: &M| -> M {
            [
                (a[0] * b[0] + a[1] * b[2]).rem_euclid(p),
                (a[0] * b[1] + a[1] * b[3]).rem_euclid(p),
                (a[2] * b[0] + a[3] * b[2]).rem_euclid(p),
                (a[2] * b[1] + a[3] * b[3]).rem_euclid(p),
            ]
        };
        Ok(FiniteGroup::generated([1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul)?.0)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order() as u32).fold(1, |e, a| num_integer::lcm(e, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as u32;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, s: &[u32]) -> bool {
        !s.is_empty() && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, s: &[u32]) -> bool {
        self.is_subgroup(s) && (0..self.order() as u32).all(|g| s.iter().all(|&x| s.contains(&self.conj(g, x))))
    }

    /// `G/N` is abelian iff every commutator lies in `N`.
    pub fn quotient_is_abelian(&self, n: &[u32]) -> bool {
        let m = self.order() as u32;
        (0..m).all(|a| (0..m).all(|b| n.contains(&self.mul(self.mul(a, b), self.inv(self.mul(b, a))))))
    }

    pub fn center(&self) -> Vec<u32> {
        let n = self.order() as u32;
        (0..n).filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    /// The commutator subgroup, sorted.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let n = self.order() as u32;
        let mut comms: Vec<u32> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.mul(self.mul(a, b), self.inv(self.mul(b, a)))).collect();
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut s = vec![self.identity];
        let mut i = 0;
        while i < s.len() {
            for &g in gens {
                let p = self.mul(s[i], g);
                if !s.contains(&p) {
                    s.push(p);
                }
            }
            i += 1;
        }
        s.sort();
        s
    }

    /// The subgroup on `elems` as a group in its own right, with `elems[i]`
    /// becoming element `i`.
    pub fn subgroup(&self, elems: &[u32]) -> Result<FiniteGroup> {
        if !self.is_subgroup(elems) {
            return Err(Error::Validation("elements do not form a subgroup".into()));
        }
        let pos: HashMap<u32, u32> = elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        FiniteGroup::from_table(table)
    }

    pub fn mark(&mut self, name: &str, elems: Vec<u32>) -> Result<()> {
        if !self.is_subgroup(&elems) {
            return Err(Error::Validation(format!("marked set {name} is not a subgroup")));
        }
        self.subgroups.insert(name.to_string(), elems);
        Ok(())
    }

    pub fn marked(&self, name: &str) -> Option<&[u32]> {
        self.subgroups.get(name).map(|v| v.as_slice())
    }

    pub fn marked_subgroups(&self) -> &BTreeMap<String, Vec<u32>> {
        &self.subgroups
    }

    /// Conjugacy classes, each sorted, ordered by smallest element (identity first).
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let n = self.order() as u32;
        let mut seen = vec![false; n as usize];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x as usize] {
                continue;
            }
            let mut c: Vec<u32> = (0..n).map(|g| self.conj(g, x)).collect();
            c.sort();
            c.dedup();
            for &y in &c {
                seen[y as usize] = true;
            }
            out.push(c);
        }
        out.sort_by_key(|c| if c.contains(&self.identity) { 0 } else { 1 + c[0] as usize });
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GroupJson { order: self.order(), table: self.table.clone(), subgroups: self.subgroups.clone() }).expect("serializable")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: GroupJson = serde_json::from_value(v).map_err(|e| Error::Validation(e.to_string()))?;
        if j.order != j.table.len() {
            return Err(Error::Validation("order does not match table".into()));
        }
        let mut g = FiniteGroup::from_table(j.table)?;
        for (k, v) in j.subgroups {
            g.mark(&k, v)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_orders() {
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        let q = FiniteGroup::quaternion().unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.center().len(), 2);
        assert_eq!(FiniteGroup::sl2(3).unwrap().order(), 24);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(2).unwrap()).unwrap().exponent(), 2);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().classes().len(), 5);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut g = FiniteGroup::cyclic(4).unwrap();
        g.mark("S_phi", vec![0, 2]).unwrap();
        let back = FiniteGroup::from_json_value(g.to_json_value()).unwrap();
        assert_eq!(back, g);
        assert!(g.mark("bad", vec![0, 1]).is_err());
    }
}
