//! The positive half: `Ê^(a)_x 1_n` for `x ∈ Sym_a`, composed with the wedge rule,
//! and the change of basis to products of rectangles.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symfunc::{box_duals, wedge, Partition, SymElement};

/// `Ê^(a)_x 1_n`; the label `x` lives in `Sym_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusElement {
    pub n: i64,
    pub a: usize,
    pub x: SymElement,
}

impl PlusElement {
    pub fn new(n: i64, a: usize, x: SymElement) -> Self {
        PlusElement { n, a, x: x.truncate(a) }
    }

    pub fn basis(n: i64, a: usize, lambda: Partition) -> Result<Self> {
        if lambda.len() > a {
            return Err(Error::TooManyRows { partition: lambda.parts().to_vec(), bound: a });
        }
        Ok(Self::new(n, a, SymElement::schur(lambda)))
    }

    /// `Ê^(a)_{l^a} 1_n`.
    pub fn rectangle(n: i64, a: usize, l: usize) -> Self {
        Self::new(n, a, SymElement::schur(Partition::rectangle(l, a)))
    }

    pub fn target(&self) -> i64 {
        self.n + 2 * self.a as i64
    }
}

/// `x ∘ y`: `Σ_{τ ∈ P(a,b)} (-1)^{|τ̂|} Ê^(a+b)(∧_{a,b}(x s_τ ⊗ s_τ̂ y))`.
pub fn compose_plus(x: &PlusElement, y: &PlusElement) -> Result<PlusElement> {
    if x.n != y.target() {
        return Err(Error::WeightMismatch { expected: y.target(), found: x.n });
    }
    let (a, b) = (x.a, y.a);
    let mut out = SymElement::zero().truncate(a + b);
    for tau in Partition::in_box(a, b) {
        let (_, _, hat) = box_duals(&tau, a, b)?;
        let left = x.x.try_mul(&SymElement::schur(tau.clone()).truncate(a))?;
        let right = SymElement::schur(hat.clone()).truncate(b).try_mul(&y.x)?;
        let w = wedge(a, b, &left, &right)?;
        out = if hat.size() % 2 == 0 { &out + &w } else { &out - &w };
    }
    Ok(PlusElement { n: y.n, a: a + b, x: out })
}

/// Rows of `ν ∈ P(a)` grouped into rectangles `(value, height)`, values decreasing.
pub fn rectangles_of(nu: &Partition, a: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for v in nu.padded(a) {
        match out.last_mut() {
            Some((l, h)) if *l == v => *h += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Composite of rectangles `Ê^(h_1)_{l_1^{h_1}} ∘ ... ∘ Ê^(h_p)_{l_p^{h_p}} 1_n`.
pub fn compose_rectangles(rects: &[(usize, usize)], n: i64) -> Result<PlusElement> {
    let mut acc = PlusElement::new(n, 0, SymElement::one());
    let mut weight = n;
    for &(l, h) in rects.iter().rev() {
        let r = PlusElement::rectangle(weight, h, l);
        weight = r.target();
        acc = compose_plus(&r, &acc)?;
    }
    Ok(acc)
}

/// The rectangle-product basis of `Sym_a` in degree `d` against the Schur basis.
#[derive(Debug)]
pub struct RectMatrix {
    pub a: usize,
    pub degree: usize,
    /// partitions of `d` with at most `a` rows, increasing lexicographic order
    pub index: Vec<Partition>,
    /// `R(ν)` in Schur coordinates
    pub forward: BTreeMap<Partition, SymElement>,
    /// `s_λ` in rectangle coordinates
    pub inverse: BTreeMap<Partition, BTreeMap<Partition, BigInt>>,
}

impl RectMatrix {
    /// Whether `R(ν) - s_ν` only involves partitions lexicographically below `ν`.
    pub fn is_unitriangular(&self) -> bool {
        self.forward.iter().all(|(nu, r)| {
            r.coeff(nu).is_one() && r.iter().all(|(lambda, c)| lambda == nu || c.is_zero() || lambda < nu)
        })
    }
}

fn matrix_cache() -> &'static RwLock<HashMap<(usize, usize), Arc<RectMatrix>>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<RectMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The change of basis for thickness `a` in degree `d`; the weight plays no role.
pub fn rect_matrix(a: usize, d: usize) -> Result<Arc<RectMatrix>> {
    if let Some(m) = matrix_cache().read().unwrap().get(&(a, d)) {
        return Ok(m.clone());
    }
    let mut index = Partition::bounded_of_size(d, a, d);
    index.sort();
    let mut forward = BTreeMap::new();
    for nu in &index {
        let r = compose_rectangles(&rectangles_of(nu, a), 0)?;
        forward.insert(nu.clone(), r.x.unbounded());
    }
    let mut inverse: BTreeMap<Partition, BTreeMap<Partition, BigInt>> = BTreeMap::new();
    for lambda in &index {
        let r = &forward[lambda];
        if !r.coeff(lambda).is_one() || r.iter().any(|(k, c)| k > lambda && !c.is_zero()) {
            return Err(Error::Shape(format!(
                "rectangle product for {lambda} is not unitriangular (a = {a})"
            )));
        }
        // s_λ = R(λ) - Σ_{κ < λ} M[λ][κ] s_κ
        let mut row: BTreeMap<Partition, BigInt> = BTreeMap::new();
        row.insert(lambda.clone(), BigInt::one());
        for (kappa, c) in r.iter() {
            if kappa == lambda {
                continue;
            }
            for (nu, d) in &inverse[kappa] {
                let slot = row.entry(nu.clone()).or_insert_with(BigInt::zero);
                *slot -= c * d;
            }
        }
        row.retain(|_, c| !c.is_zero());
        inverse.insert(lambda.clone(), row);
    }
    let m = Arc::new(RectMatrix { a, degree: d, index, forward, inverse });
    matrix_cache().write().unwrap().insert((a, d), m.clone());
    Ok(m)
}

/// `Ê^(a)_λ` as an integer combination of rectangle products, each indexed by
/// the partition `ν ∈ P(a)` whose rows it reads.
pub fn rect_decompose(a: usize, lambda: &Partition) -> Result<BTreeMap<Partition, BigInt>> {
    if lambda.len() > a {
        return Err(Error::TooManyRows { partition: lambda.parts().to_vec(), bound: a });
    }
    Ok(rect_matrix(a, lambda.size())?.inverse[lambda].clone())
}

/// The rectangle product with rows `ν` expanded in the `Ê^(a)_λ` basis.
pub fn rect_recompose(a: usize, nu: &Partition) -> Result<SymElement> {
    if nu.len() > a {
        return Err(Error::TooManyRows { partition: nu.parts().to_vec(), bound: a });
    }
    Ok(rect_matrix(a, nu.size())?.forward[nu].clone())
}

/// Validates a rectangle sequence `(value, height)` with strictly decreasing
/// values and returns the partition of its rows.
pub fn partition_of_rectangles(rects: &[(usize, usize)]) -> Result<(usize, Partition)> {
    if rects.windows(2).any(|w| w[0].0 <= w[1].0) || rects.iter().any(|&(_, h)| h == 0) {
        return Err(Error::OutOfRange(format!(
            "rectangle sequence {rects:?} needs strictly decreasing values and positive heights"
        )));
    }
    let a = rects.iter().map(|&(_, h)| h).sum();
    let mut parts = Vec::new();
    for &(l, h) in rects {
        parts.extend(std::iter::repeat(l).take(h));
    }
    parts.retain(|&x| x > 0);
    Ok((a, Partition::new(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> SymElement {
        SymElement::schur(Partition::new(v.to_vec()))
    }

    #[test]
    fn merge_of_empty_rectangles() {
        let x = PlusElement::rectangle(2, 1, 0);
        let y = PlusElement::rectangle(0, 1, 0);
        let z = compose_plus(&x, &y).unwrap();
        assert_eq!(z, PlusElement::new(0, 2, s(&[]).scale(&BigInt::from(2))));
    }

    #[test]
    fn one_and_zero() {
        let x = PlusElement::rectangle(2, 1, 1);
        let y = PlusElement::rectangle(0, 1, 0);
        assert_eq!(compose_plus(&x, &y).unwrap(), PlusElement::new(0, 2, s(&[1])));
        let x = PlusElement::rectangle(2, 1, 0);
        let y = PlusElement::rectangle(0, 1, 1);
        assert_eq!(compose_plus(&x, &y).unwrap(), PlusElement::new(0, 2, s(&[1])));
    }

    #[test]
    fn unit() {
        let y = PlusElement::basis(3, 2, Partition::new(vec![2, 1])).unwrap();
        let id = PlusElement::new(7, 0, SymElement::one());
        assert_eq!(compose_plus(&id, &y).unwrap(), y);
    }

    #[test]
    fn decompose_round_trip() {
        for a in 1..=4 {
            for d in 0..=5 {
                let m = rect_matrix(a, d).unwrap();
                assert!(m.is_unitriangular());
                for lambda in &m.index {
                    let mut acc = SymElement::zero();
                    for (nu, c) in rect_decompose(a, lambda).unwrap() {
                        acc = &acc + &rect_recompose(a, &nu).unwrap().scale(&c);
                    }
                    assert_eq!(acc, s(lambda.parts()), "a={a} λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn two_rows_exact() {
        let d = rect_decompose(2, &Partition::new(vec![1])).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&Partition::new(vec![1])], BigInt::one());
    }
}
