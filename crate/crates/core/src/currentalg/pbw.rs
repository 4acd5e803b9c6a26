//! Rational PBW normal forms `F... H... E... 1_n` for the current algebra.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A raw (non-divided) generator; `H(0)` acts on `1_m` as the scalar `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RawGen {
    E(usize),
    F(usize),
    H(usize),
}

/// `F_{f...} H_{h...} E_{e...}` with each block a sorted multiset of loop indices.
/// The `h` block never contains index 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pbw {
    pub f: Vec<usize>,
    pub h: Vec<usize>,
    pub e: Vec<usize>,
}

impl Pbw {
    /// Weight of `self · 1_n`.
    pub fn target(&self, n: i64) -> i64 {
        n + 2 * (self.e.len() as i64 - self.f.len() as i64)
    }

    pub fn loop_degree(&self) -> usize {
        self.f.iter().chain(&self.h).chain(&self.e).sum()
    }
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

type Terms = Arc<Vec<(Pbw, BigInt)>>;
type Key = (RawGen, Pbw, i64);

fn cache() -> &'static RwLock<HashMap<Key, Terms>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Terms>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `g · m · 1_n` expanded in PBW monomials. All structure constants are integers.
pub fn left_mul(g: RawGen, m: &Pbw, n: i64) -> Terms {
    let key = (g, m.clone(), n);
    if let Some(v) = cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(left_mul_uncached(g, m, n));
    cache().write().unwrap().insert(key, v.clone());
    v
}

fn left_mul_uncached(g: RawGen, m: &Pbw, n: i64) -> Vec<(Pbw, BigInt)> {
    let mut acc: HashMap<Pbw, BigInt> = HashMap::new();
    let mut push = |p: Pbw, c: BigInt| {
        *acc.entry(p).or_insert_with(BigInt::zero) += c;
    };
    match g {
        RawGen::F(i) => {
            let mut p = m.clone();
            insert_sorted(&mut p.f, i);
            push(p, BigInt::one());
        }
        RawGen::H(0) => push(m.clone(), BigInt::from(m.target(n))),
        RawGen::H(i) => {
            let mut p = m.clone();
            insert_sorted(&mut p.h, i);
            push(p, BigInt::one());
            // [H_i, F_j] = -2 F_{i+j}
            for k in 0..m.f.len() {
                let mut p = m.clone();
                let j = p.f.remove(k);
                insert_sorted(&mut p.f, j + i);
                push(p, BigInt::from(-2));
            }
        }
        RawGen::E(i) => {
            if let Some(&f1) = m.f.first() {
                // E_i F_j = F_j E_i + H_{i+j}
                let mut rest = m.clone();
                rest.f.remove(0);
                for (p, c) in left_mul(RawGen::E(i), &rest, n).iter() {
                    let mut p = p.clone();
                    insert_sorted(&mut p.f, f1);
                    push(p, c.clone());
                }
                for (p, c) in left_mul(RawGen::H(i + f1), &rest, n).iter() {
                    push(p.clone(), c.clone());
                }
            } else if let Some(&h1) = m.h.first() {
                // E_i H_j = H_j E_i - 2 E_{i+j}
                let mut rest = m.clone();
                rest.h.remove(0);
                for (p, c) in left_mul(RawGen::E(i), &rest, n).iter() {
                    let mut p = p.clone();
                    insert_sorted(&mut p.h, h1);
                    push(p, c.clone());
                }
                for (p, c) in left_mul(RawGen::E(i + h1), &rest, n).iter() {
                    push(p.clone(), -c * 2);
                }
            } else {
                let mut p = m.clone();
                insert_sorted(&mut p.e, i);
                push(p, BigInt::one());
            }
        }
    }
    let mut out: Vec<(Pbw, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort();
    out
}

type PairKey = (Pbw, Pbw, i64);

fn pair_cache() -> &'static RwLock<HashMap<PairKey, Terms>> {
    static CACHE: OnceLock<RwLock<HashMap<PairKey, Terms>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `m · p · 1_n` expanded in PBW monomials, with integer coefficients.
pub fn monomial_product(m: &Pbw, p: &Pbw, n: i64) -> Terms {
    let key = (m.clone(), p.clone(), n);
    if let Some(v) = pair_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let mut cur: HashMap<Pbw, BigInt> = HashMap::from([(p.clone(), BigInt::one())]);
    let gens = m.e.iter().rev().map(|&k| RawGen::E(k))
        .chain(m.h.iter().rev().map(|&k| RawGen::H(k)))
        .chain(m.f.iter().rev().map(|&k| RawGen::F(k)));
    for g in gens {
        let mut next: HashMap<Pbw, BigInt> = HashMap::new();
        for (q, c) in &cur {
            for (r, d) in left_mul(g, q, n).iter() {
                *next.entry(r.clone()).or_insert_with(BigInt::zero) += c * d;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut out: Vec<(Pbw, BigInt)> = cur.into_iter().collect();
    out.sort();
    let v = Arc::new(out);
    pair_cache().write().unwrap().insert(key, v.clone());
    v
}

/// A rational combination of PBW monomials acting on `1_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    pub source: i64,
    pub terms: HashMap<Pbw, BigRational>,
}

impl PbwElement {
    pub fn one(n: i64) -> Self {
        let mut terms = HashMap::new();
        terms.insert(Pbw::default(), BigRational::one());
        PbwElement { source: n, terms }
    }

    pub fn zero(n: i64) -> Self {
        PbwElement { source: n, terms: HashMap::new() }
    }

    pub fn add_term(&mut self, p: Pbw, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn left_mul(&self, g: RawGen) -> Self {
        let mut out = Self::zero(self.source);
        for (m, c) in &self.terms {
            for (p, d) in left_mul(g, m, self.source).iter() {
                out.add_term(p.clone(), c * BigRational::from_integer(d.clone()));
            }
        }
        out
    }

    /// Applies the monomial `m` (rightmost generator first) from the left.
    pub fn left_mul_monomial(&self, m: &Pbw) -> Self {
        let mut out = self.clone();
        for &k in m.e.iter().rev() {
            out = out.left_mul(RawGen::E(k));
        }
        for &k in m.h.iter().rev() {
            out = out.left_mul(RawGen::H(k));
        }
        for &k in m.f.iter().rev() {
            out = out.left_mul(RawGen::F(k));
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.source);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(f: &[usize], h: &[usize], e: &[usize]) -> Pbw {
        Pbw { f: f.to_vec(), h: h.to_vec(), e: e.to_vec() }
    }

    #[test]
    fn commutator_ef() {
        // E_0 F_0 1_1 = F_0 E_0 1_1 + 1_1
        let r = left_mul(RawGen::E(0), &mono(&[0], &[], &[]), 1);
        let expect = vec![(mono(&[], &[], &[]), BigInt::one()), (mono(&[0], &[], &[0]), BigInt::one())];
        assert_eq!(*r, expect);
        // E_1 F_2 1_n = F_2 E_1 1_n + H_3 1_n
        let r = left_mul(RawGen::E(1), &mono(&[2], &[], &[]), -4);
        assert!(r.contains(&(mono(&[], &[3], &[]), BigInt::one())));
    }

    #[test]
    fn h_past_e() {
        // E_0 H_1 = H_1 E_0 - 2 E_1
        let r = left_mul(RawGen::E(0), &mono(&[], &[1], &[]), 0);
        let expect = vec![(mono(&[], &[], &[1]), BigInt::from(-2)), (mono(&[], &[1], &[0]), BigInt::one())];
        assert_eq!(*r, expect);
    }
}
