//! The trace of the categorified quantum group, in the triangular basis
//! `F̂^(b)_μ b+(τ) Ê^(a)_λ 1_n`.
//!
//! Composition is carried over from the current algebra: `Ê^(a)_{j^a} ↦ E_j^(a)`,
//! `F̂^(b)_{j^b} ↦ F_j^(b)`, and on the center `b-(x) ↦ φ(x)`, which is forced by the
//! commutator `[Ê_i, F̂_j] = b-(p_{i+j})`. In `b+` coordinates this reads
//! `b+(s_τ) ↦ (-1)^{|τ|} φ(s_{τ^t})`.

mod plus;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use plus::{
    compose_plus, compose_rectangles, partition_of_rectangles, rect_decompose, rect_matrix, rect_recompose,
    rectangles_of, PlusElement, RectMatrix,
};

use crate::currentalg::{block_from_partition, partition_from_block, GarlandElement, GarlandWord};
use crate::error::{Error, Result};
use crate::symfunc::{Partition, SymElement};

/// `F̂^(b)_μ b+(τ) Ê^(a)_λ 1_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceBasisWord {
    pub n: i64,
    pub b: usize,
    pub mu: Partition,
    pub tau: Partition,
    pub a: usize,
    pub lambda: Partition,
}

impl TraceBasisWord {
    pub fn new(n: i64, b: usize, mu: Partition, tau: Partition, a: usize, lambda: Partition) -> Result<Self> {
        if mu.len() > b {
            return Err(Error::TooManyRows { partition: mu.parts().to_vec(), bound: b });
        }
        if lambda.len() > a {
            return Err(Error::TooManyRows { partition: lambda.parts().to_vec(), bound: a });
        }
        Ok(TraceBasisWord { n, b, mu, tau, a, lambda })
    }

    pub fn idempotent(n: i64) -> Self {
        TraceBasisWord {
            n,
            b: 0,
            mu: Partition::empty(),
            tau: Partition::empty(),
            a: 0,
            lambda: Partition::empty(),
        }
    }

    pub fn source(&self) -> i64 {
        self.n
    }

    pub fn target(&self) -> i64 {
        self.n + 2 * (self.a as i64 - self.b as i64)
    }

    /// `2(|λ| + |μ| + |τ|)`.
    pub fn degree(&self) -> usize {
        2 * (self.lambda.size() + self.mu.size() + self.tau.size())
    }
}

impl fmt::Display for TraceBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.b > 0 {
            parts.push(format!("F^({})_{}", self.b, self.mu));
        }
        if !self.tau.is_empty() {
            parts.push(format!("b+{}", self.tau));
        }
        if self.a > 0 {
            parts.push(format!("E^({})_{}", self.a, self.lambda));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An integer combination of triangular basis words in one hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceElement {
    source: i64,
    target: i64,
    terms: BTreeMap<TraceBasisWord, BigInt>,
}

impl TraceElement {
    pub fn zero(source: i64, target: i64) -> Self {
        TraceElement { source, target, terms: BTreeMap::new() }
    }

    pub fn basis(w: TraceBasisWord) -> Self {
        let mut out = Self::zero(w.source(), w.target());
        out.terms.insert(w, BigInt::one());
        out
    }

    pub fn idempotent(n: i64) -> Self {
        Self::basis(TraceBasisWord::idempotent(n))
    }

    /// `Ê^(a)_λ 1_n`.
    pub fn e(a: usize, lambda: Partition, n: i64) -> Result<Self> {
        Ok(Self::basis(TraceBasisWord::new(n, 0, Partition::empty(), Partition::empty(), a, lambda)?))
    }

    /// `F̂^(b)_μ 1_n`.
    pub fn f(b: usize, mu: Partition, n: i64) -> Result<Self> {
        Ok(Self::basis(TraceBasisWord::new(n, b, mu, Partition::empty(), 0, Partition::empty())?))
    }

    /// `b+(x) 1_n`.
    pub fn b_plus(x: &SymElement, n: i64) -> Self {
        let mut out = Self::zero(n, n);
        for (tau, c) in x.iter() {
            let mut w = TraceBasisWord::idempotent(n);
            w.tau = tau.clone();
            out.add_term(w, c.clone());
        }
        out
    }

    /// `b-(x) 1_n = b+(S x) 1_n`.
    pub fn b_minus(x: &SymElement, n: i64) -> Self {
        Self::b_plus(&x.antipode(), n)
    }

    pub fn from_plus(p: &PlusElement) -> Self {
        let mut out = Self::zero(p.n, p.target());
        for (lambda, c) in p.x.iter() {
            let w = TraceBasisWord {
                a: p.a,
                lambda: lambda.clone(),
                ..TraceBasisWord::idempotent(p.n)
            };
            out.add_term(w, c.clone());
        }
        out
    }

    /// The `Ê`-only part as a [`PlusElement`]; fails if other words are present.
    pub fn to_plus(&self) -> Result<PlusElement> {
        let a = (self.target - self.source) / 2;
        if a < 0 {
            return Err(Error::Shape("not in the positive half".into()));
        }
        let mut x = SymElement::zero();
        for (w, c) in &self.terms {
            if w.b != 0 || !w.tau.is_empty() {
                return Err(Error::Shape(format!("{w} is not in the positive half")));
            }
            x.add_term(w.lambda.clone(), c.clone());
        }
        Ok(PlusElement::new(self.source, a as usize, x))
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TraceBasisWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TraceBasisWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: TraceBasisWord, c: BigInt) {
        debug_assert_eq!((w.source(), w.target()), (self.source, self.target), "{w}");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source {
            return Err(Error::WeightMismatch { expected: self.source, found: other.source });
        }
        if self.target != other.target {
            return Err(Error::WeightMismatch { expected: self.target, found: other.target });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(TraceBasisWord::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (w, c) in &self.terms {
            if w.degree() == degree {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for TraceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// `b+(s_τ) ↦ (-1)^{|τ|} φ(s_{τ^t})`, returned as `(sign, ρ)`.
fn center_to_current(tau: &Partition) -> (i64, Partition) {
    (if tau.size() % 2 == 0 { 1 } else { -1 }, tau.conjugate())
}

pub fn to_current(x: &TraceElement) -> Result<GarlandElement> {
    let mut out = GarlandElement::zero(x.source, x.target);
    for (w, c) in &x.terms {
        let es = rect_decompose(w.a, &w.lambda)?;
        let fs = rect_decompose(w.b, &w.mu)?;
        let (sign, rho) = center_to_current(&w.tau);
        for (nu_f, cf) in &fs {
            for (nu_e, ce) in &es {
                let g = GarlandWord {
                    n: w.n,
                    f: block_from_partition(nu_f, w.b),
                    tau: rho.clone(),
                    e: block_from_partition(nu_e, w.a),
                };
                out.add_term(g, c * cf * ce * sign);
            }
        }
    }
    Ok(out)
}

pub fn from_current(y: &GarlandElement) -> Result<TraceElement> {
    let mut out = TraceElement::zero(y.source(), y.target());
    for (g, c) in y.iter() {
        let (a, b) = (g.e_thickness(), g.f_thickness());
        let es = rect_recompose(a, &partition_from_block(&g.e))?;
        let fs = rect_recompose(b, &partition_from_block(&g.f))?;
        // φ(s_ρ) = b-(s_ρ) = (-1)^{|ρ|} b+(s_{ρ^t})
        let (sign, tau) = center_to_current(&g.tau);
        for (mu, cf) in fs.iter() {
            for (lambda, ce) in es.iter() {
                let w = TraceBasisWord {
                    n: g.n,
                    b,
                    mu: mu.clone(),
                    tau: tau.clone(),
                    a,
                    lambda: lambda.clone(),
                };
                out.add_term(w, c * cf * ce * sign);
            }
        }
    }
    Ok(out)
}

/// `x ∘ y` (`y` acts first), transported through the current algebra.
pub fn compose(x: &TraceElement, y: &TraceElement) -> Result<TraceElement> {
    if y.target != x.source {
        return Err(Error::WeightMismatch { expected: x.source, found: y.target });
    }
    from_current(&to_current(x)?.mul(&to_current(y)?)?)
}

/// `Ê^(a)_λ b+(τ) F̂^(b)_μ 1_n` in the stored triangular basis.
pub fn ef_word(n: i64, a: usize, lambda: Partition, tau: Partition, b: usize, mu: Partition) -> Result<TraceElement> {
    let f = TraceElement::f(b, mu, n)?;
    let mid = f.target();
    let t = TraceElement::b_plus(&SymElement::schur(tau), mid);
    let e = TraceElement::e(a, lambda, mid)?;
    compose(&e, &compose(&t, &f)?)
}

/// Triangular basis words `1_m ... 1_n` of degree exactly `2d`, with F-thickness at most `max_b`.
pub fn basis_words(n: i64, m: i64, d: usize, max_b: usize) -> Result<Vec<TraceBasisWord>> {
    if (m - n).rem_euclid(2) != 0 {
        return Err(Error::OutOfRange(format!("weights {n} and {m} differ by an odd number")));
    }
    let shift = (m - n) / 2;
    let mut out = Vec::new();
    for b in 0..=max_b {
        let a = b as i64 + shift;
        if a < 0 {
            continue;
        }
        let a = a as usize;
        for dm in 0..=d {
            for dt in 0..=d - dm {
                let dl = d - dm - dt;
                for mu in Partition::bounded_of_size(dm, b, dm) {
                    for tau in Partition::all_of_size(dt) {
                        for lambda in Partition::bounded_of_size(dl, a, dl) {
                            out.push(TraceBasisWord { n, b, mu: mu.clone(), tau: tau.clone(), a, lambda });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of basis words of degree `2d` (zero for `d < 0`).
pub fn graded_dim(n: i64, m: i64, d: i64, max_b: usize) -> Result<usize> {
    if d < 0 {
        if (m - n).rem_euclid(2) != 0 {
            return Err(Error::OutOfRange(format!("weights {n} and {m} differ by an odd number")));
        }
        return Ok(0);
    }
    Ok(basis_words(n, m, d as usize, max_b)?.len())
}

/// Degree-`2d` dimension of the positive half `1_{n+2a} ... Ê^(a) 1_n`.
pub fn plus_graded_dim(a: usize, d: usize) -> usize {
    Partition::bounded_of_size(d, a, d).len()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    b: usize,
    mu: Vec<usize>,
    tau: Vec<usize>,
    a: usize,
    lambda: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    source: i64,
    target: i64,
    terms: Vec<TermJson>,
}

fn partition_from(v: &[usize]) -> Result<Partition> {
    Partition::try_new(&v.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

impl TraceElement {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ElementJson {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    b: w.b,
                    mu: w.mu.parts().to_vec(),
                    tau: w.tau.parts().to_vec(),
                    a: w.a,
                    lambda: w.lambda.parts().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ElementJson = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(j.source, j.target);
        for t in j.terms {
            let w = TraceBasisWord::new(
                j.source,
                t.b,
                partition_from(&t.mu)?,
                partition_from(&t.tau)?,
                t.a,
                partition_from(&t.lambda)?,
            )?;
            if w.target() != j.target {
                return Err(Error::WeightMismatch { expected: j.target, found: w.target() });
            }
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::power_sum;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn ef_commutator() {
        for n in -3..=3i64 {
            for i in 0..=2usize {
                for j in 0..=2usize {
                    let e_after = TraceElement::e(1, p(&[i]), n - 2).unwrap();
                    let f_first = TraceElement::f(1, p(&[j]), n).unwrap();
                    let f_after = TraceElement::f(1, p(&[j]), n + 2).unwrap();
                    let e_first = TraceElement::e(1, p(&[i]), n).unwrap();
                    let lhs = compose(&e_after, &f_first)
                        .unwrap()
                        .sub(&compose(&f_after, &e_first).unwrap())
                        .unwrap();
                    let expect = if i + j == 0 {
                        TraceElement::idempotent(n).scale(&BigInt::from(n))
                    } else {
                        TraceElement::b_minus(&power_sum(i + j), n)
                    };
                    assert_eq!(lhs, expect, "i={i} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn round_trip() {
        let w = TraceBasisWord::new(1, 2, p(&[2, 1]), p(&[2]), 3, p(&[1, 1])).unwrap();
        let x = TraceElement::basis(w);
        assert_eq!(from_current(&to_current(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn rectangles_map_to_generators() {
        let x = TraceElement::e(2, p(&[3, 3]), 0).unwrap();
        assert_eq!(to_current(&x).unwrap(), GarlandElement::e(3, 2, 0));
        let y = TraceElement::f(3, p(&[1, 1, 1]), 0).unwrap();
        assert_eq!(to_current(&y).unwrap(), GarlandElement::f(1, 3, 0));
    }

    #[test]
    fn dims() {
        assert_eq!(graded_dim(0, 2, -1, 3).unwrap(), 0);
        assert_eq!(graded_dim(0, 2, 0, 0).unwrap(), 1);
        assert_eq!(graded_dim(0, 2, 0, 2).unwrap(), 3);
        assert_eq!(plus_graded_dim(2, 4), 3);
    }

    #[test]
    fn json_round_trip() {
        let x = ef_word(-2, 1, p(&[1]), p(&[1]), 1, p(&[])).unwrap();
        assert_eq!(TraceElement::from_json(&x.to_json()).unwrap(), x);
    }
}
