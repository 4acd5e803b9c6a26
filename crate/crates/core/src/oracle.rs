//! Slow reference computations used only by the verification suites.
//!
//! Nothing here is called from the algebra implementations; the point is to
//! have a second, structurally different route to the same numbers.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::hochschild::FinLinCat;
use crate::symfunc::{Partition, SymElement};

/// Sparse multivariate integer polynomial; exponent vectors have fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u32>, c: i128) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_monomial(exps, c);
        p
    }

    pub fn add_monomial(&mut self, exps: Vec<u32>, c: i128) {
        if c == 0 {
            return;
        }
        let v = self.terms.get(&exps).copied().unwrap_or(0) + c;
        if v == 0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_monomial(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: i128) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_monomial(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Vec<u32>, i128> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert(0) += c1 * c2;
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    /// Leading term in lexicographic order of exponent vectors.
    pub fn leading(&self) -> Option<(&Vec<u32>, &i128)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` if a nonzero remainder appears.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (dlead, dc) = divisor.leading()?;
        let dlead = dlead.clone();
        let dc = *dc;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((lead, c)) = rem.leading() {
            if lead.iter().zip(&dlead).any(|(a, b)| a < b) || c % dc != 0 {
                return None;
            }
            let e: Vec<u32> = lead.iter().zip(&dlead).map(|(a, b)| a - b).collect();
            let q = c / dc;
            quot.add_monomial(e.clone(), q);
            rem = rem.add(&divisor.mul(&Poly::monomial(e, -q)));
        }
        Some(quot)
    }
}

/// Schur polynomial in `nvars` variables, summing `x^T` over semistandard tableaux.
pub fn schur_polynomial(shape: &Partition, nvars: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    if shape.len() > nvars {
        return out;
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut filling: HashMap<(usize, usize), usize> = HashMap::new();
    fill_tableaux(&cells, 0, nvars, &mut filling, &mut out);
    out
}

fn fill_tableaux(
    cells: &[(usize, usize)],
    k: usize,
    nvars: usize,
    filling: &mut HashMap<(usize, usize), usize>,
    out: &mut Poly,
) {
    if k == cells.len() {
        let mut exps = vec![0u32; nvars];
        for v in filling.values() {
            exps[*v] += 1;
        }
        out.add_monomial(exps, 1);
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { filling[&(r, c - 1)] } else { 0 };
    let lo_col = if r > 0 { filling[&(r - 1, c)] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..nvars {
        filling.insert((r, c), v);
        fill_tableaux(cells, k + 1, nvars, filling, out);
    }
    filling.remove(&(r, c));
}

/// Alternant `a_α = det(x_i^{α_j})` as an explicit polynomial.
pub fn alternant(alpha: &[i64]) -> Poly {
    let n = alpha.len();
    let mut out = Poly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p, sign| {
        let mut exps = vec![0u32; n];
        for (i, &j) in p.iter().enumerate() {
            exps[i] = alpha[j] as u32;
        }
        out.add_monomial(exps, sign);
    }, 1);
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize], i128), sign: i128) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f, if i == k { sign } else { -sign });
        p.swap(k, i);
    }
}

/// `s_m = a_{m+δ} / a_δ` for a quasi-index `m`, by literal polynomial division.
pub fn generalized_schur(m: &[i64]) -> Poly {
    let a = m.len();
    let shifted: Vec<i64> = m.iter().enumerate().map(|(j, &x)| x + (a - 1 - j) as i64).collect();
    let delta: Vec<i64> = (0..a).map(|j| (a - 1 - j) as i64).collect();
    let num = alternant(&shifted);
    let den = alternant(&delta);
    num.div_exact(&den).expect("alternant quotient is a polynomial")
}

/// Number of semistandard tableaux of `shape` with content `content`.
pub fn kostka(shape: &Partition, content: &[usize], memo: &mut HashMap<(Partition, Vec<usize>), u64>) -> u64 {
    let content: Vec<usize> = {
        let mut c: Vec<usize> = content.iter().copied().filter(|&x| x > 0).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        c
    };
    if shape.size() != content.iter().sum::<usize>() {
        return 0;
    }
    if content.is_empty() {
        return 1;
    }
    let key = (shape.clone(), content.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // largest entry occupies a horizontal strip of size = its multiplicity
    let last = *content.last().unwrap();
    let rest = &content[..content.len() - 1];
    let mut total = 0;
    for inner in shape.remove_horizontal_strip(last) {
        total += kostka(&inner, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Schur coefficients of `s_μ s_ν` from monomial coefficients in `|μ|+|ν|` variables.
///
/// The coefficient of `x^λ` in the product is `Σ_{α+β=λ} K_{μα} K_{νβ}`; the
/// Schur coefficients then follow from the unitriangular Kostka matrix.
pub fn schur_product_via_monomials(mu: &Partition, nu: &Partition) -> SymElement {
    let n = mu.size() + nu.size();
    let mut memo = HashMap::new();
    let targets = Partition::all_of_size(n); // decreasing lex order
    let mut monomial_coeff: BTreeMap<Partition, i128> = BTreeMap::new();
    for lambda in &targets {
        let parts = lambda.padded(n);
        let mut total: i128 = 0;
        let mut alpha = vec![0usize; n];
        split_rec(&parts, 0, mu.size(), &mut alpha, &mut |alpha| {
            let beta: Vec<usize> = parts.iter().zip(alpha).map(|(l, a)| l - a).collect();
            let k1 = kostka(mu, alpha, &mut memo) as i128;
            if k1 == 0 {
                return;
            }
            total += k1 * kostka(nu, &beta, &mut memo) as i128;
        });
        monomial_coeff.insert(lambda.clone(), total);
    }
    let mut out = SymElement::zero();
    let mut residual = monomial_coeff;
    for lambda in &targets {
        let c = residual[lambda];
        if c == 0 {
            continue;
        }
        out.add_term(lambda.clone(), c.into());
        for rho in &targets {
            let k = kostka(lambda, rho.parts(), &mut memo) as i128;
            if k != 0 {
                *residual.get_mut(rho).unwrap() -= c * k;
            }
        }
    }
    out
}

fn split_rec(parts: &[usize], i: usize, remaining: usize, alpha: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == parts.len() {
        if remaining == 0 {
            f(alpha);
        }
        return;
    }
    for a in 0..=parts[i].min(remaining) {
        alpha[i] = a;
        split_rec(parts, i + 1, remaining - a, alpha, f);
    }
    alpha[i] = 0;
}

/// Dimensions of `HH_0 .. HH_{top-1}` over `Q` (`prime = None`) or over `F_p`.
///
/// Chains are indexed by all `(top+1)`-tuples of basis morphisms in mixed radix,
/// and the boundary is assembled densely from the composition table; ranks come
/// from fraction-free elimination (over `Q`) or plain elimination mod `p`.
pub fn hochschild_dims_dense(c: &FinLinCat, top: usize, prime: Option<u64>) -> Vec<usize> {
    let nb = c.basis.len();
    let cyclic = |t: &[usize]| -> bool {
        let k = t.len();
        (0..k).all(|i| c.basis[t[(i + 1) % k]].target == c.basis[t[i]].source)
    };
    let tuples = |len: usize| -> Vec<Vec<usize>> {
        let total = nb.pow(len as u32);
        (0..total)
            .map(|mut code| {
                let mut t = vec![0; len];
                for slot in t.iter_mut().rev() {
                    *slot = code % nb;
                    code /= nb;
                }
                t
            })
            .filter(|t| cyclic(t))
            .collect()
    };
    let chains: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| tuples(n + 1)).collect();
    let mut ranks = vec![0usize; top + 2];
    for n in 1..=top {
        let rows = &chains[n - 1];
        let row_of: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut m = vec![vec![BigInt::zero(); chains[n].len()]; rows.len()];
        for (col, t) in chains[n].iter().enumerate() {
            for i in 0..=n {
                let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
                let (g, f) = if i < n { (t[i], t[i + 1]) } else { (t[n], t[0]) };
                for (b, coef) in c.compose_basis(g, f) {
                    let face: Vec<usize> = if i < n {
                        t[..i].iter().copied().chain([b]).chain(t[i + 2..].iter().copied()).collect()
                    } else {
                        [b].into_iter().chain(t[1..n].iter().copied()).collect()
                    };
                    m[row_of[&face]][col] += coef * sign;
                }
            }
        }
        ranks[n] = match prime {
            None => rank_over_q(m),
            Some(p) => rank_mod_p(&m, p),
        };
    }
    (0..top).map(|n| chains[n].len() - ranks[n] - ranks[n + 1]).collect()
}

/// Bareiss elimination; all intermediate quantities stay integral.
fn rank_over_q(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in col + 1..cols {
                let v = (&m[rank][col] * &m[r][k] - &m[r][col] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

fn rank_mod_p(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let iv = inv(a[rank][col]);
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = (a[r][col] as u128 * iv as u128 % p as u128) as u64;
                for k in col..cols {
                    let sub = (f as u128 * a[rank][k] as u128 % p as u128) as u64;
                    a[r][k] = (a[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_polynomial_two_vars() {
        // s_(1)(x1,x2) = x1 + x2
        let p = schur_polynomial(&Partition::new(vec![1]), 2);
        assert_eq!(p.terms.len(), 2);
        // s_(1,1)(x1,x2) = x1 x2
        let p = schur_polynomial(&Partition::new(vec![1, 1]), 2);
        assert_eq!(p, Poly::monomial(vec![1, 1], 1));
    }

    #[test]
    fn generalized_schur_example() {
        // s_(0,2) = -s_(1,1) in two variables
        let lhs = generalized_schur(&[0, 2]);
        let rhs = schur_polynomial(&Partition::new(vec![1, 1]), 2).scale(-1);
        assert_eq!(lhs, rhs);
        assert!(generalized_schur(&[0, 1]).is_zero());
    }

    #[test]
    fn monomial_oracle_small() {
        let one = Partition::new(vec![1]);
        let prod = schur_product_via_monomials(&one, &one);
        assert_eq!(prod.len(), 2);
    }
}
