use std::collections::BTreeMap;

use crate::numkernel::LaurentPoly;
use crate::rootdata::intmat::{dot, vadd, Mat};

/// An element `Σ c_x θ_x` of the group algebra of `X` over the parameter ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaPoly {
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl ThetaPoly {
    pub fn zero() -> Self {
        ThetaPoly::default()
    }

    pub fn mono(x: &[i64]) -> Self {
        Self::term(x.to_vec(), LaurentPoly::one())
    }

    pub fn term(x: Vec<i64>, c: LaurentPoly) -> Self {
        let mut p = ThetaPoly::zero();
        p.add_term(x, c);
        p
    }

    pub fn add_term(&mut self, x: Vec<i64>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ThetaPoly) -> ThetaPoly {
        let mut s = self.clone();
        for (x, c) in &o.terms {
            s.add_term(x.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &ThetaPoly) -> ThetaPoly {
        self.add(&o.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> ThetaPoly {
        let mut s = ThetaPoly::zero();
        for (x, d) in &self.terms {
            s.add_term(x.clone(), d * c);
        }
        s
    }

    pub fn mul(&self, o: &ThetaPoly) -> ThetaPoly {
        let mut s = ThetaPoly::zero();
        for (x, c) in &self.terms {
            for (y, d) in &o.terms {
                s.add_term(vadd(x, y), c * d);
            }
        }
        s
    }

    /// Apply a lattice map to every exponent.
    pub fn act(&self, m: &Mat) -> ThetaPoly {
        let mut s = ThetaPoly::zero();
        for (x, c) in &self.terms {
            s.add_term(m.mul_vec(x), c.clone());
        }
        s
    }

    /// Exact quotient by `1 − θ_β`, if it exists; `probe` must pair nontrivially with `β`.
    pub fn div_one_minus(&self, beta: &[i64], probe: &[i64]) -> Option<ThetaPoly> {
        let b = dot(beta, probe);
        assert!(b != 0, "probe must pair nontrivially with the divisor direction");
        // Group terms along lines base + qβ with 0 ≤ ⟨base, probe⟩ < |b|.
        let mut lines: BTreeMap<Vec<i64>, BTreeMap<i64, LaurentPoly>> = BTreeMap::new();
        for (y, c) in &self.terms {
            let q = dot(y, probe).div_euclid(b);
            let base: Vec<i64> = y.iter().zip(beta).map(|(a, bb)| a - q * bb).collect();
            lines.entry(base).or_default().insert(q, c.clone());
        }
        let mut out = ThetaPoly::zero();
        for (base, pts) in lines {
            // P = Q(1 − θ_β)  ⇒  Q_q = Σ_{q' ≤ q} P_{q'}.
            let qmin = *pts.keys().next().unwrap();
            let qmax = *pts.keys().next_back().unwrap();
            let mut acc = LaurentPoly::zero();
            for q in qmin..=qmax {
                if let Some(c) = pts.get(&q) {
                    acc = &acc + c;
                }
                if q == qmax {
                    if !acc.is_zero() {
                        return None;
                    }
                    break;
                }
                let y: Vec<i64> = base.iter().zip(beta).map(|(a, bb)| a + q * bb).collect();
                out.add_term(y, acc.clone());
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_one_minus() {
        // (1 − θ_2)(θ_0 + θ_2) = θ_0 − θ_4
        let p = ThetaPoly::mono(&[0]).sub(&ThetaPoly::mono(&[4]));
        let q = p.div_one_minus(&[2], &[1]).unwrap();
        assert_eq!(q, ThetaPoly::mono(&[0]).add(&ThetaPoly::mono(&[2])));
        let back = q.mul(&ThetaPoly::mono(&[0]).sub(&ThetaPoly::mono(&[2])));
        assert_eq!(back, p);
        assert!(ThetaPoly::mono(&[1]).div_one_minus(&[2], &[1]).is_none());
        let neg = ThetaPoly::mono(&[0]).sub(&ThetaPoly::mono(&[-4]));
        let q = neg.div_one_minus(&[-2], &[1]).unwrap();
        assert_eq!(q.mul(&ThetaPoly::mono(&[0]).sub(&ThetaPoly::mono(&[-2]))), neg);
    }
}
