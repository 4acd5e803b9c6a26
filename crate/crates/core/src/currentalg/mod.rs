//! The idempotented integral current algebra of sl2.
//!
//! Products are computed in rational PBW form and read back in the integral
//! Garland basis `F_{i_1}^(a_1)... φ(s_τ) E_{k_1}^(c_1)... 1_n`; integrality of the
//! result is checked rather than assumed.

mod pbw;
mod phi;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use pbw::{left_mul, monomial_product, Pbw, PbwElement, RawGen};
pub use phi::{h_jb_recursive, h_jb_via_sym, h_monomial_to_schur, hblock_mul, phi, phi_inv, phi_schur, HBlock};

use crate::error::{Error, Result};
use crate::symfunc::{Partition, SymElement};

/// `F_{i_1}^(a_1) ... φ(s_τ) E_{k_1}^(c_1) ... 1_n`, loop indices strictly decreasing in each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarlandWord {
    pub n: i64,
    pub f: Vec<(usize, usize)>,
    pub tau: Partition,
    pub e: Vec<(usize, usize)>,
}

impl GarlandWord {
    pub fn idempotent(n: i64) -> Self {
        GarlandWord { n, f: vec![], tau: Partition::empty(), e: vec![] }
    }

    pub fn new(n: i64, f: Vec<(usize, usize)>, tau: Partition, e: Vec<(usize, usize)>) -> Result<Self> {
        for block in [&f, &e] {
            if block.windows(2).any(|w| w[0].0 <= w[1].0) || block.iter().any(|&(_, p)| p == 0) {
                return Err(Error::OutOfRange(format!(
                    "divided-power block {block:?} needs strictly decreasing loop indices and positive powers"
                )));
            }
        }
        Ok(GarlandWord { n, f, tau, e })
    }

    pub fn f_thickness(&self) -> usize {
        self.f.iter().map(|&(_, a)| a).sum()
    }

    pub fn e_thickness(&self) -> usize {
        self.e.iter().map(|&(_, c)| c).sum()
    }

    pub fn source(&self) -> i64 {
        self.n
    }

    pub fn target(&self) -> i64 {
        self.n + 2 * (self.e_thickness() as i64 - self.f_thickness() as i64)
    }

    pub fn loop_degree(&self) -> usize {
        let block = |b: &[(usize, usize)]| b.iter().map(|&(i, a)| i * a).sum::<usize>();
        block(&self.f) + self.tau.size() + block(&self.e)
    }

    /// The word in rational PBW coordinates.
    pub fn to_pbw(&self) -> PbwElement {
        let (f, fden) = expand_block(&self.f);
        let (e, eden) = expand_block(&self.e);
        let den = BigRational::from_integer(fden * eden);
        let mut out = PbwElement::zero(self.n);
        for (rho, c) in phi_schur(&self.tau) {
            let m = Pbw { f: f.clone(), h: rho.parts().iter().rev().copied().collect(), e: e.clone() };
            out.add_term(m, c / den.clone());
        }
        out
    }
}

type IntegralPbw = Arc<(Vec<(Pbw, BigInt)>, BigInt)>;

/// PBW coordinates of a single word, as integers over a denominator.
fn word_pbw(w: &GarlandWord) -> IntegralPbw {
    static CACHE: OnceLock<RwLock<HashMap<GarlandWord, IntegralPbw>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(w) {
        return v.clone();
    }
    let terms = w.to_pbw().terms;
    let den = terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut out: Vec<(Pbw, BigInt)> =
        terms.into_iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect();
    out.sort();
    let v = Arc::new((out, den));
    cache.write().unwrap().insert(w.clone(), v.clone());
    v
}

/// PBW coordinates as integers over one common denominator.
fn integral_pbw(x: &GarlandElement) -> (Vec<(Pbw, BigInt)>, BigInt) {
    let parts: Vec<(IntegralPbw, &BigInt)> = x.terms.iter().map(|(w, c)| (word_pbw(w), c)).collect();
    let den = parts.iter().fold(BigInt::one(), |l, (p, _)| l.lcm(&p.1));
    let mut acc: HashMap<Pbw, BigInt> = HashMap::new();
    for (p, c) in &parts {
        let scale = *c * (&den / &p.1);
        for (m, d) in &p.0 {
            *acc.entry(m.clone()).or_insert_with(BigInt::zero) += &scale * d;
        }
    }
    let mut out: Vec<(Pbw, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort();
    (out, den)
}

/// Sorted multiset of indices and the product of factorials of the powers.
fn expand_block(block: &[(usize, usize)]) -> (Vec<usize>, BigInt) {
    let mut idx = Vec::new();
    let mut den = BigInt::one();
    for &(i, a) in block {
        idx.extend(std::iter::repeat(i).take(a));
        den *= factorial(a);
    }
    idx.sort_unstable();
    (idx, den)
}

fn factorial(a: usize) -> BigInt {
    (1..=a).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Multiset (sorted) to `(index, multiplicity)` pairs with decreasing index.
fn collect_block(v: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in v.iter().rev() {
        match out.last_mut() {
            Some((j, a)) if *j == i => *a += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

impl fmt::Display for GarlandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let fmt_gen = |g: char, i: usize, a: usize| {
            if a == 1 {
                format!("{g}{i}")
            } else {
                format!("{g}{i}^({a})")
            }
        };
        for &(i, a) in &self.f {
            parts.push(fmt_gen('F', i, a));
        }
        if !self.tau.is_empty() {
            parts.push(format!("phi(s{})", self.tau));
        }
        for &(k, c) in &self.e {
            parts.push(fmt_gen('E', k, c));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An integral combination of Garland words in one hom space `1_m U 1_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarlandElement {
    source: i64,
    target: i64,
    terms: BTreeMap<GarlandWord, BigInt>,
}

impl GarlandElement {
    pub fn zero(source: i64, target: i64) -> Self {
        GarlandElement { source, target, terms: BTreeMap::new() }
    }

    pub fn basis(w: GarlandWord) -> Self {
        let mut out = Self::zero(w.source(), w.target());
        out.terms.insert(w, BigInt::one());
        out
    }

    pub fn idempotent(n: i64) -> Self {
        Self::basis(GarlandWord::idempotent(n))
    }

    /// `E_i^(a) 1_n`.
    pub fn e(i: usize, a: usize, n: i64) -> Self {
        let e = if a == 0 { vec![] } else { vec![(i, a)] };
        Self::basis(GarlandWord { n, f: vec![], tau: Partition::empty(), e })
    }

    /// `F_i^(a) 1_n`.
    pub fn f(i: usize, a: usize, n: i64) -> Self {
        let f = if a == 0 { vec![] } else { vec![(i, a)] };
        Self::basis(GarlandWord { n, f, tau: Partition::empty(), e: vec![] })
    }

    /// `φ(x) 1_n`.
    pub fn phi(x: &SymElement, n: i64) -> Self {
        let mut out = Self::zero(n, n);
        for (tau, c) in x.iter() {
            out.add_term(GarlandWord { n, f: vec![], tau: tau.clone(), e: vec![] }, c.clone());
        }
        out
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

    pub fn iter(&self) -> impl Iterator<Item = (&GarlandWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &GarlandWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: GarlandWord, c: BigInt) {
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
        if (self.source, self.target) != (other.source, other.target) {
            let (expected, found) = if self.source != other.source {
                (self.source, other.source)
            } else {
                (self.target, other.target)
            };
            return Err(Error::WeightMismatch { expected, found });
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

    /// Homogeneous loop degrees present.
    pub fn loop_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(GarlandWord::loop_degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn to_pbw(&self) -> PbwElement {
        let mut out = PbwElement::zero(self.source);
        for (w, c) in &self.terms {
            let c = BigRational::from_integer(c.clone());
            for (m, d) in w.to_pbw().terms {
                out.add_term(m, d * c.clone());
            }
        }
        out
    }

    /// Reads a PBW element back in the Garland basis, insisting on integer coefficients.
    pub fn from_pbw(x: &PbwElement, target: i64) -> Result<Self> {
        let den = x.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let terms = x.terms.iter().map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())));
        Self::from_integral_pbw(terms, &den, x.source, target)
    }

    /// `Σ c_m m · 1_n / den` in the Garland basis.
    fn from_integral_pbw(
        terms: impl IntoIterator<Item = (Pbw, BigInt)>,
        den: &BigInt,
        n: i64,
        target: i64,
    ) -> Result<Self> {
        let mut acc: BTreeMap<GarlandWord, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            if m.target(n) != target {
                return Err(Error::WeightMismatch { expected: target, found: m.target(n) });
            }
            let f = collect_block(&m.f);
            let e = collect_block(&m.e);
            let (_, fden) = expand_block(&f);
            let (_, eden) = expand_block(&e);
            let c = c * fden * eden;
            let mut rho_parts = m.h;
            rho_parts.reverse();
            let rho = Partition::new(rho_parts);
            for (tau, chi) in h_monomial_to_schur(&rho).iter() {
                let w = GarlandWord { n, f: f.clone(), tau: tau.clone(), e: e.clone() };
                *acc.entry(w).or_insert_with(BigInt::zero) += &c * chi;
            }
        }
        let mut out = Self::zero(n, target);
        for (w, c) in acc {
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(den);
            if !r.is_zero() {
                let coeff = BigRational::new(c, den.clone());
                return Err(Error::NonIntegral { coeff: coeff.to_string(), term: w.to_string() });
            }
            out.add_term(w, q);
        }
        Ok(out)
    }

    /// `self · other`, with `other` acting first.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::WeightMismatch { expected: self.source, found: other.target });
        }
        let (x, dx) = integral_pbw(self);
        let (y, dy) = integral_pbw(other);
        let n = other.source;
        let mut acc: HashMap<Pbw, BigInt> = HashMap::new();
        for (m, c) in &x {
            for (p, d) in &y {
                let cd = c * d;
                for (q, k) in monomial_product(m, p, n).iter() {
                    *acc.entry(q.clone()).or_insert_with(BigInt::zero) += &cd * k;
                }
            }
        }
        Self::from_integral_pbw(acc, &(dx * dy), n, self.target)
    }

    /// The automorphism `E_i ↔ F_i`, `H_i ↦ -H_i`, sending `1_n` to `1_{-n}`.
    pub fn apply_phi_automorphism(&self) -> Result<Self> {
        let mut acc = PbwElement::zero(-self.source);
        for (w, c) in &self.terms {
            let c = BigRational::from_integer(c.clone());
            // image of F^(a)... φ(s_τ) E^(c)... is E^(a)... φ(S s_τ) F^(c)...
            let (new_f, fden) = expand_block(&w.e);
            let (new_e, eden) = expand_block(&w.f);
            let mut x = PbwElement::zero(-self.source);
            x.add_term(Pbw { f: new_f, h: vec![], e: vec![] }, BigRational::one());
            let tau = SymElement::schur(w.tau.clone()).antipode();
            let mut y = PbwElement::zero(-self.source);
            for (rho, d) in phi(&tau) {
                let h: Vec<usize> = rho.parts().iter().rev().copied().collect();
                for (p, v) in x.left_mul_monomial(&Pbw { f: vec![], h, e: vec![] }).terms {
                    y.add_term(p, v * d.clone());
                }
            }
            let z = y.left_mul_monomial(&Pbw { f: vec![], h: vec![], e: new_e });
            let scale = c / BigRational::from_integer(fden * eden);
            for (p, v) in z.terms {
                acc.add_term(p, v * scale.clone());
            }
        }
        Self::from_pbw(&acc, -self.target)
    }
}

impl fmt::Display for GarlandElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
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

/// One factor `X_i^p` of an input word, or `X_i^(p)` when `divided`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gen: RawGen,
    pub power: usize,
    pub divided: bool,
}

/// Parses words such as `E0 F1^2 H2 E0^(3)`.
pub fn parse_word(s: &str) -> Result<Vec<Factor>> {
    s.split_whitespace()
        .map(|tok| {
            let bad = || Error::Parse(format!("bad current-algebra generator `{tok}`"));
            let kind = tok.chars().next().ok_or_else(bad)?;
            let (idx, pow) = match tok[1..].split_once('^') {
                Some((i, p)) => (i, Some(p)),
                None => (&tok[1..], None),
            };
            let idx = idx.trim_start_matches('_');
            let i: usize = idx.parse().map_err(|_| bad())?;
            let gen = match kind {
                'E' => RawGen::E(i),
                'F' => RawGen::F(i),
                'H' => RawGen::H(i),
                _ => return Err(bad()),
            };
            let (power, divided) = match pow {
                None => (1, false),
                Some(p) if p.starts_with('(') && p.ends_with(')') => {
                    (p[1..p.len() - 1].parse().map_err(|_| bad())?, true)
                }
                Some(p) => (p.parse().map_err(|_| bad())?, false),
            };
            if divided && matches!(gen, RawGen::H(_)) {
                return Err(bad());
            }
            Ok(Factor { gen, power, divided })
        })
        .collect()
}

/// Normal form of a word acting on `1_n` (rightmost factor first).
pub fn normal_form(word: &[Factor], n: i64) -> Result<GarlandElement> {
    let mut x = PbwElement::one(n);
    let mut target = n;
    for factor in word.iter().rev() {
        let Factor { gen, power, divided } = *factor;
        for _ in 0..power {
            x = x.left_mul(gen);
        }
        if divided {
            x = x.scale(&BigRational::new(BigInt::one(), factorial(power)));
        }
        target += match gen {
            RawGen::E(_) => 2 * power as i64,
            RawGen::F(_) => -2 * power as i64,
            RawGen::H(_) => 0,
        };
    }
    GarlandElement::from_pbw(&x, target)
}

/// Garland words `1_m ... 1_n` of loop degree at most `max_degree`.
///
/// Loop-degree-zero words `F_0^(b) E_0^(b + (m-n)/2)` exist for every `b`, so the
/// total F-thickness is capped by `max_f`.
pub fn enumerate_basis(n: i64, m: i64, max_degree: usize, max_f: usize) -> Result<Vec<GarlandWord>> {
    if (m - n).rem_euclid(2) != 0 {
        return Err(Error::OutOfRange(format!("weights {n} and {m} differ by an odd number")));
    }
    let shift = (m - n) / 2;
    let mut out = Vec::new();
    for b in 0..=max_f {
        let a = b as i64 + shift;
        if a < 0 {
            continue;
        }
        let a = a as usize;
        for df in 0..=max_degree {
            let fs = blocks_of(b, df);
            for dt in 0..=max_degree - df {
                let taus = Partition::all_of_size(dt);
                for de in 0..=max_degree - df - dt {
                    let es = blocks_of(a, de);
                    for f in &fs {
                        for tau in &taus {
                            for e in &es {
                                out.push(GarlandWord { n, f: f.clone(), tau: tau.clone(), e: e.clone() });
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Divided-power blocks of total thickness `t` and loop degree `d`: partitions
/// of `d` into at most `t` parts, zeros padding to exactly `t` indices.
pub fn blocks_of(t: usize, d: usize) -> Vec<Vec<(usize, usize)>> {
    if t == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    Partition::bounded_of_size(d, t, d)
        .into_iter()
        .map(|lambda| block_from_partition(&lambda, t))
        .collect()
}

/// Rows of `λ ∈ P(t)` (zeros included) as `(index, multiplicity)` with decreasing index.
pub fn block_from_partition(lambda: &Partition, t: usize) -> Vec<(usize, usize)> {
    let mut rows = lambda.padded(t);
    rows.reverse();
    collect_block(&rows)
}

/// Inverse of [`block_from_partition`].
pub fn partition_from_block(block: &[(usize, usize)]) -> Partition {
    let mut parts = Vec::new();
    for &(i, a) in block {
        parts.extend(std::iter::repeat(i).take(a));
    }
    Partition::new(parts.into_iter().filter(|&x| x > 0).collect::<Vec<_>>())
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    f: Vec<(usize, usize)>,
    tau: Vec<usize>,
    e: Vec<(usize, usize)>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    source: i64,
    target: i64,
    terms: Vec<TermJson>,
}

impl GarlandElement {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ElementJson {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    f: w.f.clone(),
                    tau: w.tau.parts().to_vec(),
                    e: w.e.clone(),
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
            let tau = Partition::try_new(&t.tau.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
            let w = GarlandWord::new(j.source, t.f, tau, t.e)?;
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

    fn nf(s: &str, n: i64) -> GarlandElement {
        normal_form(&parse_word(s).unwrap(), n).unwrap()
    }

    #[test]
    fn ef_commutator() {
        for n in -3..=3 {
            for i in 0..=2 {
                for j in 0..=2 {
                    let lhs = nf(&format!("E{i} F{j}"), n).sub(&nf(&format!("F{j} E{i}"), n)).unwrap();
                    let expect = if i + j == 0 {
                        GarlandElement::idempotent(n).scale(&BigInt::from(n))
                    } else {
                        GarlandElement::phi(&power_sum(i + j), n)
                    };
                    assert_eq!(lhs, expect, "i={i} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn cli_example() {
        assert_eq!(nf("E0 F0", 1).to_string(), "F0 E0 + 1");
    }

    #[test]
    fn h_past_e() {
        // H_1 E_0 = E_0 H_1 + 2 E_1
        let x = nf("H1 E0", 0);
        let y = nf("E0 H1", 0).add(&GarlandElement::e(1, 1, 0).scale(&BigInt::from(2))).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn e_commute_and_divide() {
        assert_eq!(nf("E0 E1", 2), nf("E1 E0", 2));
        assert_eq!(nf("E0 E0", 0), GarlandElement::e(0, 2, 0).scale(&BigInt::from(2)));
        let prod = GarlandElement::e(0, 1, 2).mul(&GarlandElement::e(0, 1, 0)).unwrap();
        assert_eq!(prod, GarlandElement::e(0, 2, 0).scale(&BigInt::from(2)));
    }

    #[test]
    fn phi_automorphism() {
        let x = GarlandElement::e(2, 2, 3);
        assert_eq!(x.apply_phi_automorphism().unwrap(), GarlandElement::f(2, 2, -3));
        let y = GarlandElement::f(1, 1, 4).mul(&GarlandElement::e(0, 2, 0)).unwrap();
        let z = GarlandElement::phi(&power_sum(2), 2)
            .mul(&GarlandElement::f(1, 1, 4))
            .and_then(|t| t.mul(&GarlandElement::e(0, 2, 0)))
            .unwrap();
        let y = y.add(&z).unwrap();
        assert_eq!(y.apply_phi_automorphism().unwrap().apply_phi_automorphism().unwrap(), y);
        let p = GarlandElement::phi(&power_sum(3), 1);
        assert_eq!(p.apply_phi_automorphism().unwrap(), GarlandElement::phi(&power_sum(3), -1).scale(&-BigInt::one()));
    }

    #[test]
    fn enumerate() {
        let b = enumerate_basis(0, 2, 0, 0).unwrap();
        assert_eq!(b, vec![GarlandWord { n: 0, f: vec![], tau: Partition::empty(), e: vec![(0, 1)] }]);
        assert_eq!(enumerate_basis(3, 3, 0, 0).unwrap(), vec![GarlandWord::idempotent(3)]);
        assert!(enumerate_basis(0, 1, 0, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = nf("E1 F0 E0 H2", 1);
        assert_eq!(GarlandElement::from_json(&x.to_json()).unwrap(), x);
    }
}
