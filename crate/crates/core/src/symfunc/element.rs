use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A finite integer combination of Schur functions.
///
/// With `bound = Some(a)` the element lives in `Sym_a` (symmetric polynomials
/// in `a` variables) and every supported partition has at most `a` rows.
/// `bound = None` is the ring of symmetric functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymElement {
    terms: BTreeMap<Partition, BigInt>,
    bound: Option<usize>,
}

impl SymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn schur(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, BigInt::one());
        SymElement { terms, bound: None }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c.into());
        }
        out
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    /// Reinterprets the element in `Sym_a`, dropping rows beyond `a`.
    pub fn truncate(&self, a: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(p, _)| p.len() <= a)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        SymElement { terms, bound: Some(a) }
    }

    /// Forgets the variable bound (the inverse limit lift by Schur functions).
    pub fn unbounded(mut self) -> Self {
        self.bound = None;
        self
    }

    pub fn with_bound(self, bound: Option<usize>) -> Self {
        match bound {
            Some(a) => self.truncate(a),
            None => self.unbounded(),
        }
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

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Partition, BigInt> {
        self.terms
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if let Some(a) = self.bound {
            if p.len() > a {
                return;
            }
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return SymElement { terms: BTreeMap::new(), bound: self.bound };
        }
        SymElement {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
            bound: self.bound,
        }
    }

    /// Exact division of every coefficient; errors if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            if !(c % d).is_zero() {
                return Err(Error::NonIntegral {
                    coeff: format!("{c}/{d}"),
                    term: format!("s{p}"),
                });
            }
            terms.insert(p.clone(), c / d);
        }
        Ok(SymElement { terms, bound: self.bound })
    }

    /// Degrees `|λ|` present in the support.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        SymElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.size() == degree)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            bound: self.bound,
        }
    }

    pub fn max_rows(&self) -> usize {
        self.terms.keys().map(Partition::len).max().unwrap_or(0)
    }

    fn joint_bound(&self, other: &Self) -> Result<Option<usize>> {
        match (self.bound, other.bound) {
            (Some(a), Some(b)) if a != b => Err(Error::BoundMismatch(Some(a), Some(b))),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    /// Product in the Schur basis. A bound on either side projects the other
    /// factor to the same `Sym_a` first (a ring map); distinct bounds are an error.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let bound = self.joint_bound(other)?;
        let mut out = SymElement { terms: BTreeMap::new(), bound };
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                let coeff = c * d;
                for (r, n) in schur_product(p, q, bound).iter() {
                    out.add_term(r.clone(), &coeff * n);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let bound = self.joint_bound(other)?;
        let mut out = self.clone().with_bound(bound);
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one().with_bound(self.bound);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `S(s_λ) = (-1)^{|λ|} s_{λ^t}`.
    pub fn antipode(&self) -> Self {
        let mut out = SymElement { terms: BTreeMap::new(), bound: None };
        for (p, c) in &self.terms {
            let c = if p.size() % 2 == 1 { -c } else { c.clone() };
            out.add_term(p.conjugate(), c);
        }
        out
    }

    /// `ω(s_λ) = s_{λ^t}`.
    pub fn omega(&self) -> Self {
        let mut out = SymElement { terms: BTreeMap::new(), bound: None };
        for (p, c) in &self.terms {
            out.add_term(p.conjugate(), c.clone());
        }
        out
    }

    /// Counit: the coefficient of `s_∅`.
    pub fn counit(&self) -> BigInt {
        self.coeff(&Partition::empty())
    }

    /// Multiplication by `p_r` via the Murnaghan–Nakayama rule.
    pub fn mul_power_sum(&self, r: usize) -> Self {
        if r == 0 {
            panic!("p_0 is not an element of Sym");
        }
        let mut out = SymElement { terms: BTreeMap::new(), bound: self.bound };
        for (p, c) in &self.terms {
            for (nu, height) in p.add_border_strip(r) {
                let v = if height % 2 == 1 { -c } else { c.clone() };
                out.add_term(nu, v);
            }
        }
        out
    }
}

type ProductKey = (Partition, Partition, Option<usize>);

fn product_cache() -> &'static RwLock<HashMap<ProductKey, SymElement>> {
    static CACHE: OnceLock<RwLock<HashMap<ProductKey, SymElement>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `s_μ s_ν` in the Schur basis, optionally truncated to `bound` rows.
///
/// One factor is expanded by a Jacobi–Trudi determinant (in `h` or `e`,
/// whichever has fewer rows) and applied to the other through iterated
/// Pieri rules. Truncation commutes with every step, so it is applied
/// throughout.
pub fn schur_product(mu: &Partition, nu: &Partition, bound: Option<usize>) -> SymElement {
    let (mu, nu) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    let key = (mu.clone(), nu.clone(), bound);
    if let Some(hit) = product_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let result = schur_product_uncached(mu, nu, bound);
    product_cache().write().unwrap().insert(key, result.clone());
    result
}

fn schur_product_uncached(mu: &Partition, nu: &Partition, bound: Option<usize>) -> SymElement {
    if let Some(a) = bound {
        if mu.len() > a || nu.len() > a {
            return SymElement { terms: BTreeMap::new(), bound };
        }
    }
    // pick the factor to expand: the one with the shortest determinant
    let (expand, base, use_h) = {
        let cands = [(nu, mu, nu.len()), (mu, nu, mu.len())];
        let conj = [(nu, mu, nu.first()), (mu, nu, mu.first())];
        let best_h = cands.iter().min_by_key(|c| c.2).unwrap();
        let best_e = conj.iter().min_by_key(|c| c.2).unwrap();
        if best_h.2 <= best_e.2 {
            (best_h.0, best_h.1, true)
        } else {
            (best_e.0, best_e.1, false)
        }
    };
    let mut start = SymElement::schur(base.clone());
    start.bound = bound;
    let rows: Vec<usize> = if use_h {
        expand.parts().to_vec()
    } else {
        expand.conjugate().parts().to_vec()
    };
    let mut out = SymElement { terms: BTreeMap::new(), bound };
    let mut used = vec![false; rows.len()];
    jacobi_trudi_rec(&rows, 0, &mut used, false, start, use_h, &mut out);
    out
}

/// Expands `det(g_{rows[i] - i + j})` row by row, applying the chosen column's
/// generator to the running product `acc`.
fn jacobi_trudi_rec(
    rows: &[usize],
    i: usize,
    used: &mut [bool],
    odd: bool,
    acc: SymElement,
    use_h: bool,
    out: &mut SymElement,
) {
    if acc.is_zero() {
        return;
    }
    if i == rows.len() {
        for (p, c) in acc.terms {
            out.add_term(p, if odd { -c } else { c });
        }
        return;
    }
    let n = rows.len();
    for j in 0..n {
        if used[j] {
            continue;
        }
        let k = rows[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            continue;
        }
        // sign of the permutation: count inversions contributed by placing column j at row i
        let inversions = used[j + 1..].iter().filter(|&&u| u).count();
        let next_odd = odd ^ (inversions % 2 == 1);
        let next = pieri(&acc, k as usize, use_h);
        used[j] = true;
        jacobi_trudi_rec(rows, i + 1, used, next_odd, next, use_h, out);
        used[j] = false;
    }
}

/// Multiplies by `h_k` (horizontal strips) or `e_k` (vertical strips).
pub fn pieri(x: &SymElement, k: usize, use_h: bool) -> SymElement {
    let mut out = SymElement { terms: BTreeMap::new(), bound: x.bound };
    for (p, c) in &x.terms {
        let shapes = if use_h {
            p.add_horizontal_strip(k)
        } else {
            p.add_vertical_strip(k)
        };
        for nu in shapes {
            out.add_term(nu, c.clone());
        }
    }
    out
}

impl Add for &SymElement {
    type Output = SymElement;
    fn add(self, rhs: &SymElement) -> SymElement {
        self.try_add(rhs).expect("incompatible variable bounds")
    }
}

impl Add for SymElement {
    type Output = SymElement;
    fn add(self, rhs: SymElement) -> SymElement {
        &self + &rhs
    }
}

impl AddAssign<&SymElement> for SymElement {
    fn add_assign(&mut self, rhs: &SymElement) {
        if self.bound.is_none() {
            self.bound = rhs.bound;
            if let Some(a) = self.bound {
                self.terms.retain(|p, _| p.len() <= a);
            }
        }
        for (p, c) in &rhs.terms {
            self.add_term(p.clone(), c.clone());
        }
    }
}

impl Neg for &SymElement {
    type Output = SymElement;
    fn neg(self) -> SymElement {
        SymElement {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
            bound: self.bound,
        }
    }
}

impl Neg for SymElement {
    type Output = SymElement;
    fn neg(self) -> SymElement {
        -&self
    }
}

impl Sub for &SymElement {
    type Output = SymElement;
    fn sub(self, rhs: &SymElement) -> SymElement {
        self + &(-rhs)
    }
}

impl Sub for SymElement {
    type Output = SymElement;
    fn sub(self, rhs: SymElement) -> SymElement {
        &self - &rhs
    }
}

impl Mul for &SymElement {
    type Output = SymElement;
    fn mul(self, rhs: &SymElement) -> SymElement {
        self.try_mul(rhs).expect("incompatible variable bounds")
    }
}

impl Mul for SymElement {
    type Output = SymElement;
    fn mul(self, rhs: SymElement) -> SymElement {
        &self * &rhs
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "s{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if let Some(a) = self.bound {
            write!(f, " [Sym_{a}]")?;
        }
        Ok(())
    }
}

/// One `{partition, coeff}` record of the JSON form; coefficients are decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymTermJson {
    pub partition: Vec<usize>,
    pub coeff: String,
}

impl SymElement {
    /// JSON terms sorted by partition (ascending lexicographic).
    pub fn to_json_terms(&self) -> Vec<SymTermJson> {
        self.terms
            .iter()
            .map(|(p, c)| SymTermJson {
                partition: p.parts().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[SymTermJson]) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms {
            let parts: Vec<i64> = t.partition.iter().map(|&x| x as i64).collect();
            let p = Partition::try_new(&parts)?;
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_terms()).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<SymTermJson> = serde_json::from_value(v.clone())?;
        Self::from_json_terms(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> SymElement {
        SymElement::schur(Partition::new(v.to_vec()))
    }

    #[test]
    fn small_products() {
        assert_eq!(&s(&[1]) * &s(&[1]), &s(&[2]) + &s(&[1, 1]));
        assert_eq!(&s(&[1]) * &s(&[1, 1]), &s(&[2, 1]) + &s(&[1, 1, 1]));
        assert_eq!(&s(&[2, 1]) * &SymElement::one(), s(&[2, 1]));
        // s21 * s21 = s42 + s411 + s33 + 2 s321 + s3111 + s222 + s2211
        let prod = &s(&[2, 1]) * &s(&[2, 1]);
        assert_eq!(prod.coeff(&Partition::new(vec![3, 2, 1])), BigInt::from(2));
        assert_eq!(prod.len(), 7);
    }

    #[test]
    fn truncation() {
        assert!(s(&[1, 1]).truncate(1).is_zero());
        assert_eq!(s(&[2]).truncate(1), s(&[2]).truncate(1));
        let sq = (&s(&[1]) * &s(&[1])).truncate(1);
        assert_eq!(sq, s(&[2]).truncate(1));
        let bounded = s(&[1]).truncate(1);
        assert_eq!(&bounded * &bounded, s(&[2]).truncate(1));
    }

    #[test]
    fn mismatched_bounds_rejected() {
        let x = s(&[1]).truncate(1);
        let y = s(&[1]).truncate(2);
        assert!(x.try_mul(&y).is_err());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(s(&[2, 1]).antipode(), -s(&[2, 1]));
        let x = &s(&[3, 1]) + &s(&[2]).scale(&BigInt::from(5));
        assert_eq!(x.antipode().antipode(), x);
        assert_eq!(x.omega().omega(), x);
    }

    #[test]
    fn murnaghan_nakayama_matches_hooks() {
        // p_3 = s3 - s21 + s111
        let p3 = SymElement::one().mul_power_sum(3);
        assert_eq!(p3, &(&s(&[3]) - &s(&[2, 1])) + &s(&[1, 1, 1]));
    }

    #[test]
    fn json_roundtrip() {
        let x = &s(&[2, 1]).scale(&BigInt::from(-3)) + &s(&[]);
        let back = SymElement::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
    }
}
