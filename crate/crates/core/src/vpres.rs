//! Generators and relations for the hom categories between objects
//! `F^(b) E^(a) 1_n`, and rewriting to the normal forms `t_ν d_μ d'_λ u_σ b_τ`.
//!
//! A word is written left to right and read right to left: its last letter acts
//! first on the source object `(b, a)`.
//!
//! Degrees, with `k = n + a - b = (n + m)/2` fixed on the hom category:
//! `t_j` adds a thickness-one cup between the `F` and `E` strands, which after
//! sliding through the splitters costs `1 + k` plus `2j` for the dots; `u_j`
//! is the matching cap and has the same degree. `d_λ`, `d'_λ`, `b_λ` have degree `2|λ|`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symfunc::{schur_product, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VGen {
    T(usize),
    U(usize),
    D(Partition),
    Dp(Partition),
    B(Partition),
}

impl VGen {
    fn shift(&self) -> i64 {
        match self {
            VGen::T(_) => 1,
            VGen::U(_) => -1,
            _ => 0,
        }
    }

    /// Degree of the generator on a hom category with `k = n + a - b`.
    pub fn degree(&self, k: i64) -> i64 {
        match self {
            VGen::T(j) | VGen::U(j) => 1 + k + 2 * *j as i64,
            VGen::D(l) | VGen::Dp(l) | VGen::B(l) => 2 * l.size() as i64,
        }
    }
}

impl fmt::Display for VGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VGen::T(j) => write!(f, "t{j}"),
            VGen::U(j) => write!(f, "u{j}"),
            VGen::D(l) => write!(f, "d{l}"),
            VGen::Dp(l) => write!(f, "dp{l}"),
            VGen::B(l) => write!(f, "b{l}"),
        }
    }
}

/// Thickness pair `(b, a)` of the object `F^(b) E^(a) 1_n`.
pub type Thick = (usize, usize);

/// A linear combination of words with a common source, target and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VElement {
    pub n: i64,
    pub source: Thick,
    pub target: Thick,
    terms: BTreeMap<Vec<VGen>, BigInt>,
}

impl VElement {
    pub fn zero(n: i64, source: Thick, target: Thick) -> Self {
        VElement { n, source, target, terms: BTreeMap::new() }
    }

    pub fn word(n: i64, source: Thick, word: Vec<VGen>) -> Result<Self> {
        let target = path(source, &word)?.0;
        let mut out = Self::zero(n, source, target);
        out.add_term(word, BigInt::one());
        Ok(out)
    }

    /// `k = n + a - b`, the same at every object of the hom category.
    pub fn k(&self) -> i64 {
        self.n + self.source.1 as i64 - self.source.0 as i64
    }

    pub fn add_term(&mut self, w: Vec<VGen>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<VGen>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees of the words present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let k = self.k();
        let mut d: Vec<i64> = self.terms.keys().map(|w| w.iter().map(|g| g.degree(k)).sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            if w.is_empty() {
                write!(f, "1")?;
            } else {
                let s: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Target object and the object before each letter (`before[k]` is where
/// `word[k]` starts). Fails if a thickness would go negative.
fn path(source: Thick, word: &[VGen]) -> Result<(Thick, Vec<Thick>)> {
    let mut before = vec![(0, 0); word.len()];
    let (mut b, mut a) = (source.0 as i64, source.1 as i64);
    for k in (0..word.len()).rev() {
        before[k] = (b as usize, a as usize);
        b += word[k].shift();
        a += word[k].shift();
        if b < 0 || a < 0 {
            return Err(Error::Shape(format!("word leaves the objects at letter {}", word[k])));
        }
    }
    Ok(((b as usize, a as usize), before))
}

/// `c̃_k` at the object `(b, a)`, as `(word, coefficient)` pairs in normal order.
pub fn c_tilde_terms(kk: i64, thick: Thick) -> Vec<(Vec<VGen>, BigInt)> {
    let mut out = Vec::new();
    if kk < 0 {
        return out;
    }
    let kk = kk as usize;
    let (b, a) = thick;
    for i1 in 0..=kk.min(b) {
        for i2 in 0..=(kk - i1) {
            if a == 0 && i2 > 0 {
                continue;
            }
            let i0 = kk - i1 - i2;
            let mut w = Vec::new();
            if i1 > 0 {
                w.push(VGen::D(Partition::column(i1)));
            }
            if i2 > 0 {
                w.push(VGen::Dp(Partition::row(i2)));
            }
            if i0 > 0 {
                w.push(VGen::B(Partition::row(i0)));
            }
            let c = if i1 % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            out.push((w, c));
        }
    }
    out
}

pub fn c_tilde(kk: i64, n: i64, thick: Thick) -> VElement {
    let mut out = VElement::zero(n, thick, thick);
    for (w, c) in c_tilde_terms(kk, thick) {
        out.add_term(w, c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// always rewrite the leftmost redex
    Leftmost,
    /// always rewrite the rightmost redex
    Rightmost,
}

/// Letters that are zero or the identity at their object.
fn simplify_letter(g: &VGen, at: Thick) -> Option<Option<VGen>> {
    let (b, a) = at;
    match g {
        VGen::U(_) if a == 0 || b == 0 => None,
        VGen::D(l) if l.len() > b => None,
        VGen::Dp(l) if l.len() > a => None,
        VGen::D(l) | VGen::Dp(l) | VGen::B(l) if l.is_empty() => Some(None),
        _ => Some(Some(g.clone())),
    }
}

/// Result of one rewrite at position `k` (the pair `word[k], word[k+1]`).
fn rewrite_pair(x: &VGen, y: &VGen, at: Thick, kk: i64) -> Option<Vec<(Vec<VGen>, BigInt)>> {
    let one = BigInt::one;
    let neg = || -BigInt::one();
    let (b, a) = at;
    use VGen::*;
    let out = match (x, y) {
        (T(i), T(j)) if i == j => vec![],
        (T(i), T(j)) if i < j => vec![(vec![T(*j), T(*i)], neg())],
        (U(i), U(j)) if i == j => vec![],
        (U(i), U(j)) if i > j => vec![(vec![U(*j), U(*i)], neg())],
        (U(i), T(j)) => {
            // u_i t_j + t_j u_i = c̃_{1+k+i+j}
            let mut v = Vec::new();
            if a > 0 && b > 0 {
                v.push((vec![T(*j), U(*i)], neg()));
            }
            v.extend(c_tilde_terms(1 + kk + *i as i64 + *j as i64, at));
            v
        }
        (Dp(l), T(i)) => pieri_slide(l, *i, a, |nu, m| vec![T(i + m), Dp(nu)]),
        (D(l), T(i)) => pieri_slide(l, *i, b, |nu, m| vec![T(i + m), D(nu)]),
        (U(i), Dp(l)) => {
            if a == 0 || b == 0 {
                vec![]
            } else {
                pieri_slide(l, *i, a - 1, |nu, m| vec![Dp(nu), U(i + m)])
            }
        }
        (U(i), D(l)) => {
            if a == 0 || b == 0 {
                vec![]
            } else {
                pieri_slide(l, *i, b - 1, |nu, m| vec![D(nu), U(i + m)])
            }
        }
        (Dp(l), D(m)) => vec![(vec![D(m.clone()), Dp(l.clone())], one())],
        (D(x1), D(y1)) => merge(x1, y1, Some(b), D),
        (Dp(x1), Dp(y1)) => merge(x1, y1, Some(a), Dp),
        (B(x1), B(y1)) => merge(x1, y1, None, B),
        (B(l), other) => vec![(vec![other.clone(), B(l.clone())], one())],
        _ => return None,
    };
    Some(out)
}

/// `X_λ g_i = Σ_{λ/ν horizontal strip of size m} g_{i+m} X_ν`, keeping `ν ∈ P(rows)`.
fn pieri_slide(
    lambda: &Partition,
    i: usize,
    rows: usize,
    make: impl Fn(Partition, usize) -> Vec<VGen>,
) -> Vec<(Vec<VGen>, BigInt)> {
    let _ = i;
    let mut out = Vec::new();
    for m in 0..=lambda.size() {
        for nu in lambda.remove_horizontal_strip(m) {
            if nu.len() <= rows {
                out.push((make(nu, m), BigInt::one()));
            }
        }
    }
    out
}

fn merge(x: &Partition, y: &Partition, rows: Option<usize>, make: fn(Partition) -> VGen) -> Vec<(Vec<VGen>, BigInt)> {
    schur_product(x, y, rows)
        .into_terms()
        .into_iter()
        .map(|(l, c)| (vec![make(l)], c))
        .collect()
}

/// Position of a redex in `word`, or `None` if the word is in normal form.
fn find_redex(word: &[VGen], before: &[Thick], k: i64, strategy: Strategy) -> Option<(usize, Vec<(Vec<VGen>, BigInt)>)> {
    let positions: Vec<usize> = (0..word.len().saturating_sub(1)).collect();
    let mut scan: Box<dyn Iterator<Item = &usize>> = match strategy {
        Strategy::Leftmost => Box::new(positions.iter()),
        Strategy::Rightmost => Box::new(positions.iter().rev()),
    };
    scan.find_map(|&p| rewrite_pair(&word[p], &word[p + 1], before[p + 1], k).map(|r| (p, r)))
}

/// Normal form with a bound on the number of rewrite steps.
pub fn normal_form_with(x: &VElement, strategy: Strategy, max_steps: usize) -> Result<(VElement, usize)> {
    let k = x.k();
    let mut out = VElement::zero(x.n, x.source, x.target);
    let mut work: Vec<(Vec<VGen>, BigInt)> = x.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut steps = 0usize;
    while let Some((word, c)) = work.pop() {
        let (_, before) = path(x.source, &word)?;
        // drop identities, kill zero letters
        let mut cleaned = Vec::with_capacity(word.len());
        let mut dead = false;
        for (g, at) in word.iter().zip(&before) {
            match simplify_letter(g, *at) {
                None => {
                    dead = true;
                    break;
                }
                Some(Some(g)) => cleaned.push(g),
                Some(None) => {}
            }
        }
        if dead {
            continue;
        }
        if cleaned.len() != word.len() {
            work.push((cleaned, c));
            continue;
        }
        match find_redex(&word, &before, k, strategy) {
            None => out.add_term(word, c),
            Some((p, replacement)) => {
                steps += 1;
                if steps > max_steps {
                    return Err(Error::OutOfRange(format!("rewriting exceeded {max_steps} steps")));
                }
                for (mid, d) in replacement {
                    let mut w = word[..p].to_vec();
                    w.extend(mid);
                    w.extend_from_slice(&word[p + 2..]);
                    work.push((w, &c * d));
                }
            }
        }
    }
    Ok((out, steps))
}

pub fn normal_form(x: &VElement) -> Result<VElement> {
    Ok(normal_form_with(x, Strategy::Leftmost, 1_000_000)?.0)
}

/// Composite `x ∘ y` (`y` first).
pub fn compose(x: &VElement, y: &VElement) -> Result<VElement> {
    if x.n != y.n || x.source != y.target {
        return Err(Error::Shape(format!(
            "cannot compose {:?}->{:?} after {:?}->{:?}",
            x.source, x.target, y.source, y.target
        )));
    }
    let mut out = VElement::zero(y.n, y.source, x.target);
    for (w1, c1) in &x.terms {
        for (w2, c2) in &y.terms {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            out.add_term(w, c1 * c2);
        }
    }
    normal_form(&out)
}

/// Index data of the normal form `t_ν d_μ d'_λ u_σ b_τ` at source `(b, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VNormalForm {
    pub nu: (usize, Partition),
    pub mu: Partition,
    pub lambda: Partition,
    pub sigma: (usize, Partition),
    pub tau: Partition,
}

impl VNormalForm {
    /// `t_ν = t_{ν_1+i-1} ... t_{ν_i}`, `u_σ = u_{σ_j} u_{σ_{j-1}+1} ... u_{σ_1+j-1}`.
    pub fn to_word(&self) -> Vec<VGen> {
        let (i, nu) = &self.nu;
        let (j, sigma) = &self.sigma;
        let mut w = Vec::new();
        let nu_p = nu.padded(*i);
        for r in 0..*i {
            w.push(VGen::T(nu_p[r] + i - 1 - r));
        }
        if !self.mu.is_empty() {
            w.push(VGen::D(self.mu.clone()));
        }
        if !self.lambda.is_empty() {
            w.push(VGen::Dp(self.lambda.clone()));
        }
        let sigma_p = sigma.padded(*j);
        for r in (0..*j).rev() {
            w.push(VGen::U(sigma_p[r] + j - 1 - r));
        }
        if !self.tau.is_empty() {
            w.push(VGen::B(self.tau.clone()));
        }
        w
    }

    pub fn degree(&self, k: i64) -> i64 {
        self.to_word().iter().map(|g| g.degree(k)).sum()
    }
}

/// Index sets shared by `B(n,a,b,δ)` and the diagrammatic bases.
///
/// The cap at the bottom has thickness `j <= min(a, b)` and the cup at the top
/// has thickness `i = j + δ <= min(a, b) + δ`.
fn index_pairs(a: usize, b: usize, delta: i64) -> Vec<(usize, usize)> {
    (0..=a.min(b))
        .filter_map(|j| {
            let i = j as i64 + delta;
            (i >= 0).then_some((i as usize, j))
        })
        .collect()
}

/// Partitions with at most `rows` rows of size at most `max_size`.
fn small_partitions(rows: Option<usize>, max_size: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|d| Partition::bounded_of_size(d, rows.unwrap_or(usize::MAX), d))
        .collect()
}

/// All normal forms in `B(n,a,b,δ)` of degree at most `max_degree`.
pub fn normal_forms(n: i64, a: usize, b: usize, delta: i64, max_degree: i64) -> Vec<VNormalForm> {
    let k = n + a as i64 - b as i64;
    let mut out = Vec::new();
    for (i, j) in index_pairs(a, b, delta) {
        let base = (i + j) as i64 * k + (i * i + j * j) as i64;
        if base > max_degree {
            continue;
        }
        let budget = ((max_degree - base) / 2) as usize;
        for nu in small_partitions(Some(i), budget) {
            for mu in small_partitions(Some(b - j), budget - nu.size()) {
                for lambda in small_partitions(Some(a - j), budget - nu.size() - mu.size()) {
                    let used = nu.size() + mu.size() + lambda.size();
                    for sigma in small_partitions(Some(j), budget - used) {
                        for tau in small_partitions(None, budget - used - sigma.size()) {
                            out.push(VNormalForm {
                                nu: (i, nu.clone()),
                                mu: mu.clone(),
                                lambda: lambda.clone(),
                                sigma: (j, sigma.clone()),
                                tau,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Degree-indexed counts of the normal-form words, each checked to be
/// irreducible; degrees are summed letter by letter.
pub fn enumerate_forms(n: i64, a: usize, b: usize, delta: i64, max_degree: i64) -> Result<BTreeMap<i64, usize>> {
    let k = n + a as i64 - b as i64;
    let mut counts = BTreeMap::new();
    let mut seen = HashSet::new();
    for nf in normal_forms(n, a, b, delta, max_degree) {
        let word = nf.to_word();
        let x = VElement::word(n, (b, a), word.clone())?;
        let y = normal_form(&x)?;
        if y != x {
            return Err(Error::Shape(format!("listed normal form {x} rewrites to {y}")));
        }
        if !seen.insert(word.clone()) {
            return Err(Error::Shape(format!("normal form {x} listed twice")));
        }
        let deg: i64 = word.iter().map(|g| g.degree(k)).sum();
        if deg <= max_degree {
            *counts.entry(deg).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// Degree-indexed counts of `B+(n,a,b,δ)` from the diagram degrees
/// `(i+j)(n+a-b) + i^2 + j^2 + 2(|λ|+|μ|+|ν|+|σ|+|τ|)`.
pub fn enumerate_bplus(n: i64, a: usize, b: usize, delta: i64, max_degree: i64) -> BTreeMap<i64, usize> {
    enumerate_diagrams(n + a as i64 - b as i64, a, b, delta, max_degree)
}

/// Same for `B-(n,a,b,δ)`, where the cup and cap shifts enter with the opposite sign:
/// `-(i+j)(n+a-b) + i^2 + j^2 + 2(...)`.
pub fn enumerate_bminus(n: i64, a: usize, b: usize, delta: i64, max_degree: i64) -> BTreeMap<i64, usize> {
    enumerate_diagrams(-(n + a as i64 - b as i64), a, b, delta, max_degree)
}

fn enumerate_diagrams(k: i64, a: usize, b: usize, delta: i64, max_degree: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (i, j) in index_pairs(a, b, delta) {
        let base = (i + j) as i64 * k + (i * i + j * j) as i64;
        if base > max_degree {
            continue;
        }
        let budget = ((max_degree - base) / 2) as usize;
        // number of decorations of total size s: coefficient of q^s in the product
        // of the generating functions for P(a-j), P(b-j), P(i), P(j), P
        let rows = [Some(a - j), Some(b - j), Some(i), Some(j), None];
        let mut series = vec![0usize; budget + 1];
        series[0] = 1;
        for r in rows {
            let counts: Vec<usize> = (0..=budget)
                .map(|s| Partition::bounded_of_size(s, r.unwrap_or(usize::MAX), s).len())
                .collect();
            let mut next = vec![0usize; budget + 1];
            for (s1, c1) in series.iter().enumerate() {
                for (s2, c2) in counts.iter().enumerate().take(budget + 1 - s1) {
                    next[s1 + s2] += c1 * c2;
                }
            }
            series = next;
        }
        for (s, c) in series.into_iter().enumerate() {
            if c > 0 {
                *out.entry(base + 2 * s as i64).or_insert(0) += c;
            }
        }
    }
    out
}

/// Minimal degree of an element of `B±(n,a,b,δ)` and the elements attaining it,
/// as index tuples `(i, j, total decoration size)`.
pub fn minimal_degree(plus: bool, n: i64, a: usize, b: usize, delta: i64) -> Option<(i64, Vec<(usize, usize)>)> {
    let k = n + a as i64 - b as i64;
    let k = if plus { k } else { -k };
    let mut best: Option<(i64, Vec<(usize, usize)>)> = None;
    for (i, j) in index_pairs(a, b, delta) {
        let d = (i + j) as i64 * k + (i * i + j * j) as i64;
        match &mut best {
            Some((m, v)) if d == *m => v.push((i, j)),
            Some((m, _)) if d > *m => {}
            _ => best = Some((d, vec![(i, j)])),
        }
    }
    best
}

/// Parses words such as `t1 u0 d(2,1) dp(1) b(1)`; `d()` is `d_∅`.
pub fn parse_word(s: &str) -> Result<Vec<VGen>> {
    s.split_whitespace()
        .map(|tok| {
            let bad = || Error::Parse(format!("bad presentation generator `{tok}`"));
            let part = |rest: &str| -> Result<Partition> {
                let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let parts: Vec<i64> = if inner.trim().is_empty() {
                    vec![]
                } else {
                    inner.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
                };
                Partition::try_new(&parts)
            };
            if let Some(r) = tok.strip_prefix("dp") {
                Ok(VGen::Dp(part(r)?))
            } else if let Some(r) = tok.strip_prefix('d') {
                Ok(VGen::D(part(r)?))
            } else if let Some(r) = tok.strip_prefix('b') {
                Ok(VGen::B(part(r)?))
            } else if let Some(r) = tok.strip_prefix('t') {
                Ok(VGen::T(r.parse().map_err(|_| bad())?))
            } else if let Some(r) = tok.strip_prefix('u') {
                Ok(VGen::U(r.parse().map_err(|_| bad())?))
            } else {
                Err(bad())
            }
        })
        .collect()
}

/// A random composable word of length `len` starting at `source`, letters with
/// indices and label sizes at most `max_index`, thickness capped at `max_thick`.
pub fn random_word(rng: &mut ChaCha8Rng, source: Thick, len: usize, max_index: usize, max_thick: usize) -> Vec<VGen> {
    let mut rev = Vec::with_capacity(len);
    let (mut b, mut a) = source;
    let random_partition = |rng: &mut ChaCha8Rng, rows: usize| -> Partition {
        let size = rng.gen_range(0..=max_index);
        let options = Partition::bounded_of_size(size, rows, max_index);
        if options.is_empty() {
            Partition::empty()
        } else {
            options[rng.gen_range(0..options.len())].clone()
        }
    };
    while rev.len() < len {
        let g = match rng.gen_range(0..5) {
            0 if b < max_thick && a < max_thick => {
                b += 1;
                a += 1;
                VGen::T(rng.gen_range(0..=max_index))
            }
            1 if b > 0 && a > 0 => {
                b -= 1;
                a -= 1;
                VGen::U(rng.gen_range(0..=max_index))
            }
            2 => VGen::D(random_partition(rng, b)),
            3 => VGen::Dp(random_partition(rng, a)),
            4 => VGen::B(random_partition(rng, max_index)),
            _ => continue,
        };
        rev.push(g);
    }
    rev.reverse();
    rev
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: i64, src: Thick, s: &str) -> VElement {
        VElement::word(n, src, parse_word(s).unwrap()).unwrap()
    }

    #[test]
    fn c_tilde_examples() {
        assert!(c_tilde(-1, 0, (1, 1)).is_zero());
        assert_eq!(c_tilde(0, 0, (1, 1)), el(0, (1, 1), ""));
        let mut expect = VElement::zero(0, (1, 1), (1, 1));
        for (w, c) in [("b(1)", 1), ("d(1)", -1), ("dp(1)", 1)] {
            expect.add_term(parse_word(w).unwrap(), BigInt::from(c));
        }
        assert_eq!(c_tilde(1, 0, (1, 1)), expect);
    }

    #[test]
    fn ut_with_vanishing_correction() {
        // k = n + a - b = -5; 1 + k + i + j < 0 for i = j = 0
        let x = normal_form(&el(-5, (1, 1), "u0 t0")).unwrap();
        let mut expect = VElement::zero(-5, (1, 1), (1, 1));
        expect.add_term(parse_word("t0 u0").unwrap(), -BigInt::one());
        assert_eq!(x, expect);
    }

    #[test]
    fn t_squared() {
        assert!(normal_form(&el(0, (0, 0), "t2 t2")).unwrap().is_zero());
        let x = normal_form(&el(0, (0, 0), "t0 t1")).unwrap();
        assert_eq!(x.iter().next().unwrap().0, &parse_word("t1 t0").unwrap());
    }

    #[test]
    fn dprime_slides_past_t() {
        // d'_(1) t_0 = t_1 d'_∅ + t_0 d'_(1) at (0,1)->(1,2)
        let x = normal_form(&el(0, (0, 1), "dp(1) t0")).unwrap();
        let mut expect = VElement::zero(0, (0, 1), (1, 2));
        expect.add_term(parse_word("t1").unwrap(), BigInt::one());
        expect.add_term(parse_word("t0 dp(1)").unwrap(), BigInt::one());
        assert_eq!(x, expect);
    }

    #[test]
    fn strategies_agree() {
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let w = random_word(&mut rng, (1, 2), 6, 2, 3);
            let x = VElement::word(1, (1, 2), w).unwrap();
            let (l, _) = normal_form_with(&x, Strategy::Leftmost, 100_000).unwrap();
            let (r, _) = normal_form_with(&x, Strategy::Rightmost, 100_000).unwrap();
            assert_eq!(l, r, "{x}");
        }
    }

    #[test]
    fn forms_match_diagrams() {
        for (a, b) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
            for delta in -1..=1 {
                let n = b as i64 - a as i64 + 1;
                assert_eq!(
                    enumerate_forms(n, a, b, delta, 6).unwrap(),
                    enumerate_bplus(n, a, b, delta, 6),
                    "a={a} b={b} δ={delta}"
                );
            }
        }
    }
}
