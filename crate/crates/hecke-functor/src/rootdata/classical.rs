use serde::{Deserialize, Serialize};

use super::BasedRootDatum;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    GL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isogeny {
    /// Character lattice = weight lattice.
    Sc,
    /// Character lattice = root lattice.
    Ad,
    /// `GL_{n}` (or `GL_{n+1}` for family A).
    #[serde(rename = "gl")]
    GlForm,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "GL" => Ok(Family::GL),
            _ => Err(Error::Validation(format!("unknown family {s}"))),
        }
    }
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sc" => Ok(Isogeny::Sc),
            "ad" => Ok(Isogeny::Ad),
            "gl" | "gl-form" | "glform" => Ok(Isogeny::GlForm),
            _ => Err(Error::Validation(format!("unknown isogeny type {s}"))),
        }
    }
}

/// Cartan matrix `A[i][j] = ⟨α_i, α_j∨⟩` in Bourbaki numbering.
pub fn cartan(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let min = match family {
        Family::A | Family::GL => 1,
        Family::B | Family::C => 2,
        Family::D => 3,
    };
    if n < min || n > 8 {
        return Err(Error::Validation(format!("unsupported rank {n} for family {family:?}")));
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let chain = if family == Family::D { n - 1 } else { n };
    for i in 0..chain.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match family {
        Family::B => a[n - 2][n - 1] = -2,
        Family::C => a[n - 1][n - 2] = -2,
        Family::D => {
            a[n - 1][n - 3] = -1;
            a[n - 3][n - 1] = -1;
        }
        _ => {}
    }
    Ok(a)
}

/// The standard datum of the given type. For `GL` the isogeny is ignored and
/// `n` is the matrix size; `(A, n, GlForm)` is `GL_{n+1}`.
pub fn build_classical(family: Family, n: usize, isogeny: Isogeny) -> Result<BasedRootDatum> {
    if family == Family::GL || (family == Family::A && isogeny == Isogeny::GlForm) {
        let m = if family == Family::GL { n } else { n + 1 };
        if m == 0 || m > 9 {
            return Err(Error::Validation(format!("unsupported size {m} for GL")));
        }
        let simple: Vec<Vec<i64>> = (0..m - 1)
            .map(|i| {
                let mut v = vec![0; m];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        return BasedRootDatum::from_simple(m, simple.clone(), simple);
    }
    let a = cartan(family, n)?;
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    match isogeny {
        Isogeny::Sc => BasedRootDatum::from_simple(n, a.clone(), (0..n).map(unit).collect()),
        Isogeny::Ad => {
            let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
            BasedRootDatum::from_simple(n, (0..n).map(unit).collect(), cols)
        }
        Isogeny::GlForm => Err(Error::Validation(format!("no GL form for family {family:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_sc() {
        let r = build_classical(Family::A, 1, Isogeny::Sc).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.root(0), &[2]);
        assert_eq!(r.coroot(0), &[1]);
    }

    #[test]
    fn gl_n_standard() {
        let r = build_classical(Family::GL, 3, Isogeny::GlForm).unwrap();
        assert_eq!(r.root(0), &[1, -1, 0]);
        assert_eq!(r.coroot(1), &[0, 1, -1]);
        assert_eq!(r.num_roots(), 6);
    }

    #[test]
    fn a2_ad_coroot_index() {
        let r = build_classical(Family::A, 2, Isogeny::Ad).unwrap();
        assert_eq!(r.coroot_lattice_index(), Some(3));
        assert_eq!(r.root_lattice_index(), Some(1));
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Family::A, 3, 12),
            (Family::B, 3, 18),
            (Family::C, 3, 18),
            (Family::D, 4, 24),
            (Family::B, 2, 8),
        ];
        for (f, n, count) in cases {
            for iso in [Isogeny::Sc, Isogeny::Ad] {
                assert_eq!(build_classical(f, n, iso).unwrap().num_roots(), count, "{f:?}{n}");
            }
        }
        assert!(build_classical(Family::B, 1, Isogeny::Sc).is_err());
        assert!(build_classical(Family::A, 9, Isogeny::Sc).is_err());
    }
}
