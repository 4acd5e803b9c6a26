//! Idempotented integral quantum sl2 in Lusztig's canonical basis.
//!
//! Words are read right to left: in `E^(a) F^(b) 1_n` the `F^(b)` acts first.

mod laurent;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use laurent::{gauss_binom, LaurentJson, LaurentPoly};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// `E^(a) F^(b) 1_n`, canonical when `n < b - a`
    EF,
    /// `F^(b) E^(a) 1_n`, canonical when `n >= b - a`
    FE,
}

/// A canonical basis element `E^(a)F^(b)1_n` or `F^(b)E^(a)1_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord {
    pub shape: Shape,
    pub a: usize,
    pub b: usize,
    pub n: i64,
}

impl CanonicalWord {
    /// `E^(a) F^(b) 1_n`; requires `n <= b - a`. The boundary case and words with
    /// `a = 0` or `b = 0` are stored as FE.
    pub fn ef(a: usize, b: usize, n: i64) -> Result<Self> {
        let bound = b as i64 - a as i64;
        if n > bound && a > 0 && b > 0 {
            return Err(Error::OutOfRange(format!("E^({a})F^({b})1_{n} needs n <= {bound}")));
        }
        let shape = if n >= bound || a == 0 || b == 0 { Shape::FE } else { Shape::EF };
        Ok(CanonicalWord { shape, a, b, n })
    }

    /// `F^(b) E^(a) 1_n`; requires `n >= b - a` unless one power is zero.
    pub fn fe(b: usize, a: usize, n: i64) -> Result<Self> {
        let bound = b as i64 - a as i64;
        if n < bound && a > 0 && b > 0 {
            return Err(Error::OutOfRange(format!("F^({b})E^({a})1_{n} needs n >= {bound}")));
        }
        Ok(CanonicalWord { shape: Shape::FE, a, b, n })
    }

    pub fn source(&self) -> i64 {
        self.n
    }

    pub fn target(&self) -> i64 {
        self.n + 2 * (self.a as i64 - self.b as i64)
    }

    /// The word as blocks, leftmost first.
    pub fn blocks(&self) -> Vec<(Gen, usize)> {
        let mut out = match self.shape {
            Shape::EF => vec![(Gen::E, self.a), (Gen::F, self.b)],
            Shape::FE => vec![(Gen::F, self.b), (Gen::E, self.a)],
        };
        out.retain(|&(_, p)| p > 0);
        out
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, p) in self.blocks() {
            let g = if g == Gen::E { 'E' } else { 'F' };
            if p == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^({p})")?;
            }
        }
        write!(f, "1_{}", self.n)
    }
}

/// A `Z[q,q^-1]`-combination of canonical basis elements in a fixed hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlmElement {
    source: i64,
    target: i64,
    terms: BTreeMap<CanonicalWord, LaurentPoly>,
}

impl BlmElement {
    pub fn zero(source: i64, target: i64) -> Self {
        BlmElement { source, target, terms: BTreeMap::new() }
    }

    pub fn idempotent(n: i64) -> Self {
        Self::basis(CanonicalWord { shape: Shape::FE, a: 0, b: 0, n })
    }

    pub fn basis(w: CanonicalWord) -> Self {
        let mut out = Self::zero(w.source(), w.target());
        out.terms.insert(w, LaurentPoly::one());
        out
    }

    /// `E^(a) 1_n`.
    pub fn e(a: usize, n: i64) -> Self {
        Self::basis(CanonicalWord { shape: Shape::FE, a, b: 0, n })
    }

    /// `F^(b) 1_n`.
    pub fn f(b: usize, n: i64) -> Self {
        Self::basis(CanonicalWord { shape: Shape::FE, a: 0, b, n })
    }

    pub fn source(&self) -> i64 {
        self.source
    }

    pub fn target(&self) -> i64 {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &CanonicalWord) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: CanonicalWord, c: &LaurentPoly) {
        debug_assert_eq!((w.source(), w.target()), (self.source, self.target));
        let slot = self.terms.entry(w).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (w, d) in &self.terms {
            out.add_term(*w, &(d * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.source != other.source {
            return Err(Error::WeightMismatch { expected: self.source, found: other.source });
        }
        if self.target != other.target {
            return Err(Error::WeightMismatch { expected: self.target, found: other.target });
        }
        Ok(())
    }

    /// `self ∘ other`: `other` acts first.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::WeightMismatch { expected: self.source, found: other.target });
        }
        let mut out = Self::zero(other.source, self.target);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut blocks = w1.blocks();
                blocks.extend(w2.blocks());
                let prod = normalize(&blocks, other.source);
                let c = c1 * c2;
                for (w, d) in prod.terms {
                    out.add_term(w, &(&d * &c));
                }
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at `q = 1`.
    pub fn specialize_q1(&self) -> BTreeMap<CanonicalWord, BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (*w, c.eval_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl fmt::Display for BlmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == LaurentPoly::one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

/// Canonical-basis expansion of the word `blocks` (leftmost block acts last) on `1_n`.
pub fn normalize(blocks: &[(Gen, usize)], n: i64) -> BlmElement {
    let target = weight_after(blocks, n);
    let mut out = BlmElement::zero(n, target);
    let mut stack: Vec<(LaurentPoly, Vec<(Gen, usize)>)> = vec![(LaurentPoly::one(), blocks.to_vec())];
    while let Some((c, mut word)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let c = &c * &merge_blocks(&mut word);
        if c.is_zero() {
            continue;
        }
        // rightmost E^(a) F^(b) pair
        let found = (0..word.len().saturating_sub(1))
            .rev()
            .find(|&k| word[k].0 == Gen::E && word[k + 1].0 == Gen::F);
        match found {
            Some(k) => {
                let right = weight_after(&word[k + 2..], n);
                let (a, b) = (word[k].1, word[k + 1].1);
                // E^(a)F^(b)1_m = Σ_j [a-b+m choose j] F^(b-j) E^(a-j) 1_m, valid for all m
                for j in 0..=a.min(b) {
                    let coeff = gauss_binom(a as i64 - b as i64 + right, j);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut w = word[..k].to_vec();
                    w.push((Gen::F, b - j));
                    w.push((Gen::E, a - j));
                    w.extend_from_slice(&word[k + 2..]);
                    stack.push((&c * &coeff, w));
                }
            }
            None => {
                let (b, a) = fe_powers(&word);
                let bound = b as i64 - a as i64;
                if n >= bound || a == 0 || b == 0 {
                    out.add_term(CanonicalWord { shape: Shape::FE, a, b, n }, &c);
                } else {
                    // F^(b)E^(a)1_n = Σ_j [b-a-n choose j] E^(a-j) F^(b-j) 1_n
                    for j in 0..=a.min(b) {
                        let coeff = gauss_binom(bound - n, j);
                        if coeff.is_zero() {
                            continue;
                        }
                        let w = CanonicalWord::ef(a - j, b - j, n).expect("n < b - a");
                        out.add_term(w, &(&c * &coeff));
                    }
                }
            }
        }
    }
    out
}

/// Drops empty blocks and merges neighbours of the same kind, returning the
/// accumulated binomial factor.
fn merge_blocks(word: &mut Vec<(Gen, usize)>) -> LaurentPoly {
    let mut c = LaurentPoly::one();
    let mut merged: Vec<(Gen, usize)> = Vec::with_capacity(word.len());
    for &(g, p) in word.iter() {
        if p == 0 {
            continue;
        }
        match merged.last_mut() {
            Some((g2, p2)) if *g2 == g => {
                c = &c * &gauss_binom((*p2 + p) as i64, p);
                *p2 += p;
            }
            _ => merged.push((g, p)),
        }
    }
    *word = merged;
    c
}

/// Weight reached after applying `blocks` to `1_n`.
pub fn weight_after(blocks: &[(Gen, usize)], n: i64) -> i64 {
    blocks.iter().fold(n, |w, &(g, p)| match g {
        Gen::E => w + 2 * p as i64,
        Gen::F => w - 2 * p as i64,
    })
}

fn fe_powers(word: &[(Gen, usize)]) -> (usize, usize) {
    let mut b = 0;
    let mut a = 0;
    for &(g, p) in word {
        match g {
            Gen::F => b += p,
            Gen::E => a += p,
        }
    }
    (b, a)
}

/// Parses `E E^(2) F F3` style words into blocks.
pub fn parse_word(s: &str) -> Result<Vec<(Gen, usize)>> {
    s.split_whitespace()
        .map(|tok| {
            let bad = || Error::Parse(format!("bad BLM generator `{tok}`"));
            let g = match tok.chars().next() {
                Some('E') => Gen::E,
                Some('F') => Gen::F,
                _ => return Err(bad()),
            };
            let rest = tok[1..].trim_start_matches('^').trim_matches(|c| c == '(' || c == ')');
            let p = if rest.is_empty() { 1 } else { rest.parse().map_err(|_| bad())? };
            Ok((g, p))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    shape: Shape,
    a: usize,
    b: usize,
    coeff: LaurentJson,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    source: i64,
    target: i64,
    terms: Vec<TermJson>,
}

impl BlmElement {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ElementJson {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson { shape: w.shape, a: w.a, b: w.b, coeff: c.into() })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ElementJson = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(j.source, j.target);
        for t in j.terms {
            let w = match t.shape {
                Shape::EF => CanonicalWord::ef(t.a, t.b, j.source)?,
                Shape::FE => CanonicalWord::fe(t.b, t.a, j.source)?,
            };
            if w.target() != j.target {
                return Err(Error::WeightMismatch { expected: j.target, found: w.target() });
            }
            out.add_term(w, &LaurentPoly::try_from(t.coeff)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ee_merge() {
        for n in -3..=3 {
            let x = BlmElement::e(1, n + 2).mul(&BlmElement::e(1, n)).unwrap();
            assert_eq!(x, BlmElement::e(2, n).scale(&gauss_binom(2, 1)));
        }
    }

    #[test]
    fn ef_at_weight_one() {
        let x = BlmElement::e(1, -1).mul(&BlmElement::f(1, 1)).unwrap();
        let mut expect = BlmElement::idempotent(1);
        expect.add_term(CanonicalWord::fe(1, 1, 1).unwrap(), &LaurentPoly::one());
        assert_eq!(x, expect);
    }

    #[test]
    fn boundary_is_fe() {
        let w = CanonicalWord::ef(1, 2, 1).unwrap();
        assert_eq!(w.shape, Shape::FE);
        assert!(CanonicalWord::ef(1, 1, 1).is_err());
        assert!(CanonicalWord::fe(2, 1, 0).is_err());
        assert_eq!(CanonicalWord::ef(2, 0, 5).unwrap().shape, Shape::FE);
    }

    #[test]
    fn fe_below_bound_becomes_ef() {
        // F E 1_{-1}: E F 1_{-1} = F E 1_{-1} + [-1] 1_{-1}, so F E 1_{-1} = E F 1_{-1} + 1_{-1}
        let x = normalize(&[(Gen::F, 1), (Gen::E, 1)], -1);
        let mut expect = BlmElement::idempotent(-1);
        expect.add_term(CanonicalWord::ef(1, 1, -1).unwrap(), &LaurentPoly::one());
        assert_eq!(x, expect);
    }

    #[test]
    fn json_round_trip() {
        let x = normalize(&parse_word("E F^(2) E").unwrap(), 0);
        assert_eq!(BlmElement::from_json(&x.to_json()).unwrap(), x);
    }
}
