//! The center `End(1_n)` as a copy of Sym.
//!
//! Everything is stored in `b+` coordinates: `b+(h_i)` is the clockwise bubble
//! with `i` extra dots. The counterclockwise bubbles are `b-(h_i) = (-1)^i b+(e_i)`,
//! and since the antipode sends `h_i` to `(-1)^i e_i` this says `b- = b+ ∘ S`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symfunc::{complete, elementary, SymElement, SymTermJson};

/// An element of `End(1_n)`, stored as `b+(value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterElement {
    pub weight: i64,
    pub value: SymElement,
}

impl CenterElement {
    pub fn identity(n: i64) -> Self {
        b_plus(&SymElement::one(), n)
    }

    /// Degrees `2|τ|` of the stored terms, ascending and without repeats.
    pub fn degrees(&self) -> Vec<usize> {
        self.value.degrees().into_iter().map(|d| 2 * d).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { expected: self.weight, found: other.weight });
        }
        Ok(CenterElement { weight: self.weight, value: &self.value * &other.value })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { expected: self.weight, found: other.weight });
        }
        Ok(CenterElement { weight: self.weight, value: &self.value + &other.value })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CenterJson { weight: self.weight, terms: self.value.to_json_terms() })
            .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: CenterJson = serde_json::from_value(v.clone())?;
        Ok(CenterElement { weight: j.weight, value: SymElement::from_json_terms(&j.terms)? })
    }
}

#[derive(Serialize, Deserialize)]
struct CenterJson {
    weight: i64,
    terms: Vec<SymTermJson>,
}

pub fn b_plus(x: &SymElement, n: i64) -> CenterElement {
    CenterElement { weight: n, value: x.clone().unbounded() }
}

pub fn b_minus(x: &SymElement, n: i64) -> CenterElement {
    CenterElement { weight: n, value: x.antipode().unbounded() }
}

/// Counterclockwise bubbles of degree `0, 2, ..., 2D`, obtained by inverting the
/// clockwise series `Σ b+(h_i) t^i` one coefficient at a time.
pub fn fake_bubble_series(n: i64, max_degree: usize) -> Vec<CenterElement> {
    let mut out: Vec<SymElement> = vec![SymElement::one()];
    for k in 1..=max_degree {
        let mut acc = SymElement::zero();
        for i in 1..=k {
            acc = &acc - &(&complete(i) * &out[k - i]);
        }
        out.push(acc);
    }
    out.into_iter().map(|v| CenterElement { weight: n, value: v }).collect()
}

/// `Σ_{l=0}^m (-1)^{m-l} l h_l e_{m-l}`; equals `p_m`.
pub fn commutator_identity(m: i64) -> Result<SymElement> {
    if m <= 0 {
        return Err(Error::OutOfRange(format!("commutator identity needs m >= 1, got {m}")));
    }
    let m = m as usize;
    let mut acc = SymElement::zero();
    for l in 1..=m {
        let term = (&complete(l) * &elementary(m - l)).scale(&BigInt::from(l));
        acc = if (m - l) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{power_sum, Partition};

    #[test]
    fn examples() {
        let h1 = complete(1);
        assert_eq!(b_minus(&h1, 3).value, -SymElement::schur(Partition::new(vec![1])));
        assert_eq!(b_plus(&SymElement::one(), 0), CenterElement::identity(0));
        for m in 1..=6 {
            let p = power_sum(m);
            assert_eq!(b_minus(&p, 1).value, -b_plus(&p, 1).value);
        }
    }

    #[test]
    fn series_matches_antipode() {
        let series = fake_bubble_series(-2, 8);
        assert_eq!(series[0], CenterElement::identity(-2));
        for (k, c) in series.iter().enumerate() {
            assert_eq!(*c, b_minus(&complete(k), -2), "degree {}", 2 * k);
        }
    }

    #[test]
    fn identity_is_power_sum() {
        assert!(commutator_identity(0).is_err());
        for m in 1..=8 {
            assert_eq!(commutator_identity(m).unwrap(), power_sum(m as usize));
        }
    }
}
