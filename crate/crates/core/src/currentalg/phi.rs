//! The isomorphism `φ` from Sym onto the polynomial algebra in the `H_i`,
//! `φ(p_i) = H_i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symfunc::{plethystic_elementary, power_sum_product, Partition, SymElement};

/// A combination of commuting monomials `H_ρ = H_{ρ_1} H_{ρ_2} ...`, `ρ_i >= 1`.
pub type HBlock = BTreeMap<Partition, BigRational>;

/// Characters `χ^τ(ρ)` for `τ, ρ ⊢ d`, keyed by `ρ` then `τ`.
fn char_table(d: usize) -> Arc<HashMap<Partition, SymElement>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<HashMap<Partition, SymElement>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&d) {
        return t.clone();
    }
    let t: HashMap<Partition, SymElement> = Partition::all_of_size(d)
        .into_iter()
        .map(|rho| {
            let p = power_sum_product(&rho);
            (rho, p)
        })
        .collect();
    let t = Arc::new(t);
    cache.write().unwrap().insert(d, t.clone());
    t
}

/// `φ(p_ρ)` is `H_ρ`; this returns `p_ρ` in the Schur basis.
pub fn h_monomial_to_schur(rho: &Partition) -> SymElement {
    char_table(rho.size())[rho].clone()
}

/// `φ(s_τ) = Σ_ρ χ^τ(ρ) / z_ρ H_ρ`.
pub fn phi_schur(tau: &Partition) -> HBlock {
    let table = char_table(tau.size());
    let mut out = HBlock::new();
    for rho in Partition::all_of_size(tau.size()) {
        let chi = table[&rho].coeff(tau);
        if chi.is_zero() {
            continue;
        }
        let z = BigInt::from(rho.z_factor());
        out.insert(rho, BigRational::new(chi, z));
    }
    out
}

pub fn phi(x: &SymElement) -> HBlock {
    let mut out = HBlock::new();
    for (tau, c) in x.iter() {
        for (rho, d) in phi_schur(tau) {
            add(&mut out, rho, d * BigRational::from_integer(c.clone()));
        }
    }
    out
}

/// Inverse of [`phi`]; fails if the result has a non-integral Schur coefficient.
pub fn phi_inv(h: &HBlock) -> Result<SymElement> {
    let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for (rho, c) in h {
        for (tau, chi) in h_monomial_to_schur(rho).iter() {
            add(&mut acc, tau.clone(), c * BigRational::from_integer(chi.clone()));
        }
    }
    let mut out = SymElement::zero();
    for (tau, c) in acc {
        if !c.is_integer() {
            return Err(Error::NonIntegral { coeff: c.to_string(), term: format!("s{tau}") });
        }
        out.add_term(tau, c.to_integer());
    }
    Ok(out)
}

fn add(m: &mut BTreeMap<Partition, BigRational>, k: Partition, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = m.entry(k.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        m.remove(&k);
    }
}

pub fn hblock_mul(x: &HBlock, y: &HBlock) -> HBlock {
    let mut out = HBlock::new();
    for (r1, c1) in x {
        for (r2, c2) in y {
            let mut parts = r1.parts().to_vec();
            parts.extend_from_slice(r2.parts());
            parts.sort_unstable_by(|a, b| b.cmp(a));
            add(&mut out, Partition::new(parts), c1 * c2);
        }
    }
    out
}

/// `H_{j,b}` from `b H_{j,b} = Σ_{l=1}^b (-1)^{l-1} H_{j,b-l} H_{lj}`, `j >= 1`.
pub fn h_jb_recursive(j: usize, b: usize) -> HBlock {
    assert!(j >= 1);
    let mut hs: Vec<HBlock> = vec![[(Partition::empty(), BigRational::one())].into_iter().collect()];
    for k in 1..=b {
        let mut acc = HBlock::new();
        for l in 1..=k {
            let hl: HBlock = [(Partition::new(vec![l * j]), BigRational::one())].into_iter().collect();
            let sign = if l % 2 == 1 { BigRational::one() } else { -BigRational::one() };
            for (rho, c) in hblock_mul(&hs[k - l], &hl) {
                add(&mut acc, rho, c * sign.clone());
            }
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(k));
        hs.push(acc.into_iter().map(|(r, c)| (r, c * inv.clone())).collect());
    }
    hs.pop().unwrap()
}

/// `φ(e_{j,b})` through the symmetric-function expansion of `e_{j,b}`.
pub fn h_jb_via_sym(j: usize, b: usize) -> Result<HBlock> {
    Ok(phi(&plethystic_elementary(j, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::power_sum;

    #[test]
    fn phi_of_power_sum() {
        for j in 1..=5 {
            let h = phi(&power_sum(j));
            let expect: HBlock = [(Partition::new(vec![j]), BigRational::one())].into_iter().collect();
            assert_eq!(h, expect);
        }
        assert_eq!(phi(&SymElement::one()), [(Partition::empty(), BigRational::one())].into_iter().collect());
    }

    #[test]
    fn round_trip() {
        for tau in Partition::in_box(3, 3) {
            let x = SymElement::schur(tau);
            assert_eq!(phi_inv(&phi(&x)).unwrap(), x);
        }
    }

    #[test]
    fn h_jb_two_ways() {
        for j in 1..=4 {
            for b in 0..=4 {
                assert_eq!(h_jb_recursive(j, b), h_jb_via_sym(j, b).unwrap(), "j={j} b={b}");
            }
        }
    }
}
