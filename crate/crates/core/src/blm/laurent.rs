use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Element of `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn q() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c);
        out
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c.into())
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Quantum integer `[k] = (q^k - q^-k) / (q - q^-1)`.
    pub fn qint(k: i64) -> Self {
        let mut out = Self::zero();
        let sign = if k < 0 { -BigInt::one() } else { BigInt::one() };
        let m = k.abs();
        for i in 0..m {
            out.add_term(m - 1 - 2 * i, sign.clone());
        }
        out
    }
}

fn binom_cache() -> &'static RwLock<HashMap<(i64, usize), LaurentPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<(i64, usize), LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Quantum binomial `[m choose j]`, any integer `m`.
///
/// For `m < 0` this uses `[m choose j] = (-1)^j [j - m - 1 choose j]`, which is
/// the product formula `Π [m - i + 1] / [i]` with negative factors pulled out.
pub fn gauss_binom(m: i64, j: usize) -> LaurentPoly {
    if j == 0 {
        return LaurentPoly::one();
    }
    if m < 0 {
        let pos = gauss_binom(j as i64 - m - 1, j);
        return if j % 2 == 0 { pos } else { -pos };
    }
    if j as i64 > m {
        return LaurentPoly::zero();
    }
    if let Some(v) = binom_cache().read().unwrap().get(&(m, j)) {
        return v.clone();
    }
    // [m, j] = q^-j [m-1, j] + q^(m-j) [m-1, j-1]
    let v = &gauss_binom(m - 1, j).shift(-(j as i64)) + &gauss_binom(m - 1, j - 1).shift(m - j as i64);
    binom_cache().write().unwrap().insert((m, j), v.clone());
    v
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match *e {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}*")?,
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON form: `[[exponent, "coefficient"], ...]` in increasing exponent.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentJson(pub Vec<(i64, String)>);

impl From<&LaurentPoly> for LaurentJson {
    fn from(p: &LaurentPoly) -> Self {
        LaurentJson(p.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect())
    }
}

impl TryFrom<LaurentJson> for LaurentPoly {
    type Error = crate::Error;
    fn try_from(j: LaurentJson) -> crate::Result<Self> {
        let mut out = LaurentPoly::zero();
        for (e, c) in j.0 {
            let c: BigInt = c
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad coefficient `{c}`")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    #[test]
    fn binomials() {
        assert_eq!(gauss_binom(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(gauss_binom(7, 0), LaurentPoly::one());
        assert_eq!(gauss_binom(-3, 0), LaurentPoly::one());
        assert_eq!(gauss_binom(-1, 1), lp(&[(0, -1)]));
        assert_eq!(gauss_binom(2, 3), LaurentPoly::zero());
        // [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4
        assert_eq!(gauss_binom(4, 2), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
    }

    #[test]
    fn binomial_is_product_formula() {
        // [m choose j] [j]! = [m][m-1]...[m-j+1], negative m included
        for m in -6i64..=8 {
            for j in 0..=5usize {
                let mut lhs = gauss_binom(m, j);
                let mut rhs = LaurentPoly::one();
                for i in 1..=j as i64 {
                    lhs = &lhs * &LaurentPoly::qint(i);
                    rhs = &rhs * &LaurentPoly::qint(m - i + 1);
                }
                assert_eq!(lhs, rhs, "m={m} j={j}");
                assert_eq!(gauss_binom(m, j).bar(), gauss_binom(m, j));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(gauss_binom(2, 1).to_string(), "q + q^-1");
        assert_eq!(lp(&[(0, -2), (3, 1)]).to_string(), "q^3 - 2");
    }
}
