use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = BigRational;

/// An element of the cyclotomic field Q(ζ_n), stored in the power basis
/// 1, ζ_n, …, ζ_n^{φ(n)-1}. The conductor `n` is always the smallest one
/// whose field contains the value, and is never ≡ 2 mod 4.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    n: u64,
    coeffs: Vec<Rat>,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d);
            num = exact_div_monic(&num, &den);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduce a dense polynomial in ζ_n modulo Φ_n.
fn reduce_mod_phi(mut dense: Vec<Rat>, n: u64) -> Vec<Rat> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    if dense.len() <= deg {
        dense.resize(deg, Rat::zero());
        return dense;
    }
    for i in (deg..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[i], Rat::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                let idx = i - deg + j;
                dense[idx] -= &c * Rat::from_integer(BigInt::from(pj));
            }
        }
    }
    dense.truncate(deg);
    dense
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    assert_eq!(g, 1, "not invertible");
    x.rem_euclid(m as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Rewrite a value of Q(ζ_{2m}), m odd, in Q(ζ_m) using ζ_{2m} = -ζ_m^{(m+1)/2}.
fn halve_conductor(coeffs: &[Rat], n: u64) -> (u64, Vec<Rat>) {
    let m = n / 2;
    let mut dense = vec![Rat::zero(); m as usize];
    let h = (m + 1) / 2;
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u64;
        let pos = ((j * h) % m) as usize;
        if j % 2 == 0 {
            dense[pos] += c;
        } else {
            dense[pos] -= c;
        }
    }
    (m, reduce_mod_phi(dense, m))
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyclo { n: 1, coeffs: vec![r] }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(i)))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coefficients, index k standing for ζ_n^k.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// ζ_n^a.
    pub fn root_of_unity(a: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let a = a.rem_euclid(n as i64) as u64;
        let g = a.gcd(&n).max(1);
        let (a, n) = if a == 0 { (0, 1) } else { (a / g, n / g) };
        let mut dense = vec![Rat::zero(); n as usize];
        dense[a as usize] = Rat::one();
        Self::from_dense(n, dense)
    }

    /// e^{2πi·q} for a rational q.
    pub fn exp_2pi_i(q: &Rat) -> Self {
        let den = q.denom().clone();
        let num = q.numer().mod_floor(&den);
        let n: u64 = den.try_into().expect("conductor too large");
        let a: i64 = num.try_into().expect("exponent too large");
        Self::root_of_unity(a, n)
    }

    /// Build from a dense vector indexed by exponents 0..n (any length ≤ n is fine).
    pub fn from_dense(n: u64, dense: Vec<Rat>) -> Self {
        let coeffs = reduce_mod_phi(dense, n);
        let mut c = Cyclo { n, coeffs };
        c.canonicalize();
        c
    }

    /// Build from (exponent, coefficient) pairs over ζ_n.
    pub fn from_terms(n: u64, terms: &[(i64, Rat)]) -> Self {
        assert!(n >= 1);
        let mut dense = vec![Rat::zero(); n as usize];
        for (k, c) in terms {
            dense[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<Rat> {
        if self.n == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn canonicalize(&mut self) {
        if self.n % 4 == 2 {
            let (m, c) = halve_conductor(&self.coeffs, self.n);
            self.n = m;
            self.coeffs = c;
        }
        if self.is_zero() {
            *self = Cyclo::zero();
            return;
        }
        'outer: loop {
            if self.n == 1 {
                return;
            }
            for p in prime_factors(self.n) {
                if let Some((m, c)) = self.descend(p) {
                    self.n = m;
                    self.coeffs = c;
                    if self.n % 4 == 2 {
                        let (m2, c2) = halve_conductor(&self.coeffs, self.n);
                        self.n = m2;
                        self.coeffs = c2;
                    }
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Try to express self in Q(ζ_{n/p}).
    fn descend(&self, p: u64) -> Option<(u64, Vec<Rat>)> {
        let n = self.n;
        let m = n / p;
        if m % p == 0 {
            // Φ_n(x) = Φ_m(x^p): the subfield is spanned by powers divisible by p.
            if self
                .coeffs
                .iter()
                .enumerate()
                .any(|(k, c)| k as u64 % p != 0 && !c.is_zero())
            {
                return None;
            }
            let c: Vec<Rat> = self.coeffs.iter().step_by(p as usize).cloned().collect();
            return Some((m, c));
        }
        if m == 1 && p == 2 {
            return Some((1, vec![self.coeffs[0].clone()]));
        }
        // gcd(p, m) = 1: split ζ_n^k = ζ_m^a ζ_p^b and compare the ζ_p-components.
        let pp = if m == 1 { 0 } else { mod_inverse(p % m, m) };
        let mm = mod_inverse(m % p, p);
        let mut parts: Vec<Vec<Rat>> = vec![vec![Rat::zero(); m as usize]; p as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u64;
            let a = if m == 1 { 0 } else { (k * pp) % m };
            let b = (k * mm) % p;
            parts[b as usize][a as usize] += c;
        }
        let reduced: Vec<Vec<Rat>> = parts.into_iter().map(|d| reduce_mod_phi(d, m)).collect();
        for b in 2..p as usize {
            if reduced[b] != reduced[1] {
                return None;
            }
        }
        let c: Vec<Rat> = reduced[0]
            .iter()
            .zip(reduced[1].iter())
            .map(|(x, y)| x - y)
            .collect();
        Some((m, c))
    }

    fn lift(&self, l: u64) -> Vec<Rat> {
        if self.n == l {
            return self.coeffs.clone();
        }
        let step = (l / self.n) as usize;
        let mut dense = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        reduce_mod_phi(dense, l)
    }

    fn join(&self, other: &Cyclo) -> u64 {
        self.n.lcm(&other.n)
    }

    pub fn galois(&self, k: i64) -> Cyclo {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n as i64;
        let mut dense = vec![Rat::zero(); self.n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[((j as i64) * k).rem_euclid(n) as usize] += c;
            }
        }
        Cyclo::from_dense(self.n, dense)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Cyclo::from_rat(self.coeffs[0].recip()));
        }
        let mut prod = Cyclo::one();
        for k in 2..self.n {
            if k.gcd(&self.n) == 1 {
                prod = &prod * &self.galois(k as i64);
            }
        }
        let norm = (&prod * self).to_rational().expect("norm is rational");
        Some(&prod * &Cyclo::from_rat(norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Cyclo {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// If self = ζ_m^a for some m, return (a, m) with m minimal and 0 ≤ a < m.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let m = if self.n % 2 == 1 { 2 * self.n } else { self.n };
        for a in 0..m {
            if &Cyclo::root_of_unity(a as i64, m) == self {
                let g = a.gcd(&m);
                return Some(if a == 0 { (0, 1) } else { (a / g, m / g) });
            }
        }
        None
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.n == 1 && rhs.n == 1 {
            return Cyclo::from_rat(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let l = self.join(rhs);
        let a = self.lift(l);
        let b = rhs.lift(l);
        let sum = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        let mut c = Cyclo { n: l, coeffs: sum };
        c.canonicalize();
        c
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.n == 1 && rhs.n == 1 {
            return Cyclo::from_rat(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        if self.n == 1 {
            let s = &self.coeffs[0];
            return Cyclo { n: rhs.n, coeffs: rhs.coeffs.iter().map(|c| c * s).collect() };
        }
        if rhs.n == 1 {
            let s = &rhs.coeffs[0];
            return Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() };
        }
        let l = self.join(rhs);
        let a = self.lift(l);
        let b = rhs.lift(l);
        let mut dense = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        Cyclo::from_dense(l, dense)
    }
}

impl<'a> Div<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &Cyclo) -> Cyclo {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        if let Some((a, m)) = self.as_root_of_unity() {
            return write!(f, "z{m}^{a}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.n, k)?;
            } else {
                write!(f, "({c})*z{}^{}", self.n, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Ok(r) = Rat::from_str(s) {
        return Ok(r);
    }
    BigInt::from_str(s).map(Rat::from_integer).map_err(|_| format!("bad rational {s:?}"))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    n: u64,
    coeffs: Vec<(i64, String)>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, rat_to_string(c)))
            .collect();
        CycloJson { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        if j.n == 0 {
            return Err(D::Error::custom("cyclotomic conductor must be positive"));
        }
        let mut terms = Vec::with_capacity(j.coeffs.len());
        for (k, c) in j.coeffs {
            terms.push((k, parse_rat(&c).map_err(D::Error::custom)?));
        }
        Ok(Cyclo::from_terms(j.n, &terms))
    }
}

/// Convenience: is this rational a nonnegative integer? Returns it if so.
pub fn rat_as_u64(r: &Rat) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().try_into().ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(Cyclo::root_of_unity(0, 5), Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(7, 7), Cyclo::one());
        let i = Cyclo::root_of_unity(1, 4);
        assert_eq!(&i * &i, Cyclo::from_int(-1));
        assert_eq!(Cyclo::root_of_unity(1, 2), Cyclo::from_int(-1));
    }

    #[test]
    fn conductor_is_minimised() {
        let z6 = Cyclo::root_of_unity(1, 6);
        let sq = &z6 * &z6;
        assert_eq!(sq.conductor(), 3);
        assert_eq!(sq, Cyclo::root_of_unity(1, 3));
        // ζ_6 itself lives in Q(ζ_3).
        assert_eq!(z6.conductor(), 3);
        // ζ_8 + ζ_8^{-1} = √2 has conductor 8; ζ_5 + ζ_5^4 stays in Q(ζ_5).
        let z8 = Cyclo::root_of_unity(1, 8);
        assert_eq!((&z8 + &z8.conj()).conductor(), 8);
        // ζ_3 + ζ_3^2 = -1.
        let z3 = Cyclo::root_of_unity(1, 3);
        assert_eq!(&z3 + &z3.pow(2), Cyclo::from_int(-1));
        // Sum of all primitive 15th roots is μ(15) = 1.
        let mut s = Cyclo::zero();
        for k in 1..15 {
            if k % 3 != 0 && k % 5 != 0 {
                s = &s + &Cyclo::root_of_unity(k, 15);
            }
        }
        assert_eq!(s, Cyclo::one());
        // ζ_12^3 = i has conductor 4.
        assert_eq!(Cyclo::root_of_unity(3, 12).conductor(), 4);
        let mixed = &Cyclo::root_of_unity(1, 4) * &Cyclo::root_of_unity(1, 3);
        assert_eq!(mixed, Cyclo::root_of_unity(7, 12));
    }

    #[test]
    fn inverse_and_division() {
        let a = &Cyclo::from_int(2) + &Cyclo::root_of_unity(1, 5);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, Cyclo::one());
        let c = &Cyclo::from_rat(r(3, 7)) + &Cyclo::root_of_unity(2, 9);
        assert_eq!(&(&a / &c) * &c, a);
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(Cyclo::root_of_unity(5, 12).as_root_of_unity(), Some((5, 12)));
        assert_eq!(Cyclo::from_int(-1).as_root_of_unity(), Some((1, 2)));
        assert_eq!(Cyclo::root_of_unity(2, 6).as_root_of_unity(), Some((1, 3)));
        assert_eq!(Cyclo::from_int(2).as_root_of_unity(), None);
    }

    #[test]
    fn exp_of_rational() {
        assert_eq!(Cyclo::exp_2pi_i(&r(-1, 3)), Cyclo::root_of_unity(2, 3));
        assert_eq!(Cyclo::exp_2pi_i(&r(5, 2)), Cyclo::from_int(-1));
    }

    #[test]
    fn json_round_trip() {
        let a = &Cyclo::from_rat(r(1, 2)) + &Cyclo::root_of_unity(3, 8);
        let s = serde_json::to_string(&a).unwrap();
        let b: Cyclo = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let c: Cyclo = serde_json::from_str(r#"{"n":6,"coeffs":[[2,"1"]]}"#).unwrap();
        assert_eq!(c, Cyclo::root_of_unity(1, 3));
    }
}
