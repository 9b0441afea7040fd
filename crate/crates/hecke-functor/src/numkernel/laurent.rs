use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::Cyclo;
use crate::Error;

/// A Laurent polynomial in named variables with cyclotomic coefficients.
/// Variables are kept sorted; zero terms are never stored.
#[derive(Clone, Default)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Cyclo>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Cyclo) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    pub fn from_int(i: i64) -> Self {
        Self::constant(Cyclo::from_int(i))
    }

    /// The monomial `var^exp`.
    pub fn monomial(var: &str, exp: i64) -> Self {
        let mut p = LaurentPoly { vars: vec![var.to_string()], terms: BTreeMap::new() };
        p.terms.insert(vec![exp], Cyclo::one());
        p
    }

    /// Build from explicit parts; variables may be unsorted and terms may be zero.
    pub fn from_parts(vars: Vec<String>, terms: Vec<(Vec<i64>, Cyclo)>) -> Result<Self, Error> {
        let uniq: BTreeSet<&String> = vars.iter().collect();
        if uniq.len() != vars.len() {
            return Err(Error::Validation("duplicate variable names".into()));
        }
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        let mut p = LaurentPoly { vars: sorted, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Validation("exponent vector length mismatch".into()));
            }
            let e2: Vec<i64> = order.iter().map(|&i| e[i]).collect();
            p.add_term(e2, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Cyclo)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// The constant coefficient if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn aligned_to(&self, vars: &[String]) -> BTreeMap<Vec<i64>, Cyclo> {
        if self.vars.as_slice() == vars {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing from union"))
            .collect();
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = vec![0i64; vars.len()];
            for (k, &i) in idx.iter().enumerate() {
                e2[i] = e[k];
            }
            out.insert(e2, c.clone());
        }
        out
    }

    fn union_vars(&self, other: &LaurentPoly) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let set: BTreeSet<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        set.into_iter().collect()
    }

    pub fn scale(&self, c: &Cyclo) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Exact evaluation at a point. Every variable carrying a nonzero exponent
    /// must be assigned, and variables with negative exponents must be nonzero.
    pub fn eval(&self, point: &BTreeMap<String, Cyclo>) -> Result<Cyclo, Error> {
        let mut acc = Cyclo::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in self.vars.iter().zip(e.iter()) {
                if k == 0 {
                    continue;
                }
                let val = point
                    .get(v)
                    .ok_or_else(|| Error::Computation(format!("variable {v} is unassigned")))?;
                if k < 0 && val.is_zero() {
                    return Err(Error::Computation(format!(
                        "variable {v} is inverted but assigned zero"
                    )));
                }
                t = &t * &val.pow(k);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Apply a coefficientwise map (e.g. a Galois automorphism).
    pub fn map_coeffs(&self, f: impl Fn(&Cyclo) -> Cyclo) -> LaurentPoly {
        let mut out = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Substitute var ↦ var^{-1} for every variable.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Drop variables that no longer occur.
    pub fn trimmed(&self) -> LaurentPoly {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        LaurentPoly {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
                .collect(),
        }
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let u = self.union_vars(other);
        self.aligned_to(&u) == other.aligned_to(&u)
    }
}

impl Eq for LaurentPoly {}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let vars = self.union_vars(rhs);
        let mut out = LaurentPoly { terms: self.aligned_to(&vars), vars: vars.clone() };
        for (e, c) in rhs.aligned_to(&vars) {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let vars = self.union_vars(rhs);
        let a = self.aligned_to(&vars);
        let b = rhs.aligned_to(&vars);
        let mut out = LaurentPoly { vars, terms: BTreeMap::new() };
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i64> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    vars: Vec<String>,
    terms: Vec<(Vec<i64>, Cyclo)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        LaurentPoly::from_parts(j.vars, j.terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::monomial("z", 1)
    }

    #[test]
    fn symmetric_difference_evaluations() {
        let p = &z() - &LaurentPoly::monomial("z", -1);
        let mut pt = BTreeMap::new();
        pt.insert("z".to_string(), Cyclo::one());
        assert!(p.eval(&pt).unwrap().is_zero());
        pt.insert("z".to_string(), Cyclo::root_of_unity(1, 4));
        let two_i = &Cyclo::from_int(2) * &Cyclo::root_of_unity(1, 4);
        assert_eq!(p.eval(&pt).unwrap(), two_i);
        let c = LaurentPoly::constant(Cyclo::root_of_unity(1, 3));
        assert_eq!(c.eval(&BTreeMap::new()).unwrap(), Cyclo::root_of_unity(1, 3));
    }

    #[test]
    fn evaluation_errors() {
        let p = LaurentPoly::monomial("z", -1);
        assert!(p.eval(&BTreeMap::new()).is_err());
        let mut pt = BTreeMap::new();
        pt.insert("z".to_string(), Cyclo::zero());
        assert!(p.eval(&pt).is_err());
    }

    #[test]
    fn mixed_variables_align() {
        let a = &LaurentPoly::monomial("z", 1) * &LaurentPoly::monomial("y", 2);
        let b = &LaurentPoly::monomial("y", 2) * &LaurentPoly::monomial("z", 1);
        assert_eq!(a, b);
        assert_eq!(a.vars(), &["y".to_string(), "z".to_string()]);
        let c = &a - &b;
        assert!(c.is_zero());
        assert_eq!(&LaurentPoly::monomial("z", 1) * &LaurentPoly::monomial("z", -1), LaurentPoly::one());
    }

    #[test]
    fn json_round_trip() {
        let p = &(&z() * &z()) + &LaurentPoly::constant(Cyclo::root_of_unity(1, 5));
        let s = serde_json::to_string(&p).unwrap();
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
