use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numkernel::{Cyclo, LaurentPoly};

/// Basis index `N_{t_x w} N_r` (or `θ_x N_w N_r` in the Bernstein basis).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HKey {
    pub t: Vec<i64>,
    pub w: u32,
    pub r: u32,
}

impl HKey {
    pub fn new(t: Vec<i64>, w: u32, r: u32) -> Self {
        HKey { t, w, r }
    }
}

/// A finite sum of basis elements with Laurent-polynomial coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<HKey, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn basis(k: HKey) -> Self {
        let mut e = HeckeElement::zero();
        e.terms.insert(k, LaurentPoly::one());
        e
    }

    pub fn term(k: HKey, c: LaurentPoly) -> Self {
        let mut e = HeckeElement::zero();
        e.add_term(k, c);
        e
    }

    pub fn add_term(&mut self, k: HKey, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    pub fn add_assign(&mut self, other: &HeckeElement) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &HeckeElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        let mut s = self.clone();
        s.add_scaled(other, &LaurentPoly::from_int(-1));
        s
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut s = HeckeElement::zero();
        s.add_scaled(self, c);
        s
    }

    pub fn scale_cyclo(&self, c: &Cyclo) -> HeckeElement {
        self.scale(&LaurentPoly::constant(c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HKey, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &HKey) -> LaurentPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Apply a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Apply a map to every key.
    pub fn map_keys(&self, f: impl Fn(&HKey) -> HKey) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn from_terms(terms: Vec<(HKey, LaurentPoly)>) -> Self {
        let mut e = HeckeElement::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn to_terms(&self) -> Vec<(HKey, LaurentPoly)> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c})·N[{:?},{},{}]", k.t, k.w, k.r)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
