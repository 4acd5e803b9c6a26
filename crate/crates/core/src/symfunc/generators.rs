use std::fmt;
use std::str::FromStr;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::SymElement;
use super::partition::Partition;
use crate::error::{Error, Result};

/// Multiplicative generators accepted by [`to_schur`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymGen {
    /// elementary `e_j`
    E(usize),
    /// complete homogeneous `h_j`
    H(usize),
    /// power sum `p_t`, `t >= 1`
    P(usize),
    /// `e_{t,j} = e_j(x_1^t, x_2^t, ...)`
    Et(usize, usize),
}

pub fn elementary(j: usize) -> SymElement {
    SymElement::schur(Partition::column(j))
}

pub fn complete(j: usize) -> SymElement {
    SymElement::schur(Partition::row(j))
}

/// `p_m` from the Newton identity `m h_m = Σ_{i=1}^m h_{m-i} p_i`.
pub fn power_sum(m: usize) -> SymElement {
    assert!(m >= 1, "p_0 is not an element of Sym");
    let mut ps: Vec<SymElement> = vec![SymElement::zero()];
    for k in 1..=m {
        let mut acc = complete(k).scale(&BigInt::from(k));
        for i in 1..k {
            acc = &acc - &(&complete(k - i) * &ps[i]);
        }
        ps.push(acc);
    }
    ps.pop().unwrap()
}

/// `p_m` as the alternating sum of hooks `Σ_r (-1)^r s_{(m-r, 1^r)}`.
pub fn power_sum_hooks(m: usize) -> SymElement {
    SymElement::from_terms((0..m).map(|r| {
        let sign: i64 = if r % 2 == 0 { 1 } else { -1 };
        (Partition::hook(m, r), sign)
    }))
}

/// `e_{t,j}` from the recursion `j e_{t,j} = Σ_{i=1}^j (-1)^{i-1} e_{t,j-i} p_{it}`.
pub fn plethystic_elementary(t: usize, j: usize) -> Result<SymElement> {
    if j == 0 {
        return Ok(SymElement::one());
    }
    if t == 0 {
        return Err(Error::OutOfRange("e_{0,j} for j > 0 is not in Sym".into()));
    }
    let mut es = vec![SymElement::one()];
    for k in 1..=j {
        let mut acc = SymElement::zero();
        for i in 1..=k {
            let term = &es[k - i] * &power_sum(i * t);
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        es.push(acc.div_exact(&BigInt::from(k))?);
    }
    Ok(es.pop().unwrap())
}

pub fn generator(g: SymGen) -> Result<SymElement> {
    Ok(match g {
        SymGen::E(j) => elementary(j),
        SymGen::H(j) => complete(j),
        SymGen::P(0) => return Err(Error::OutOfRange("p_0 is not in Sym".into())),
        SymGen::P(t) => power_sum(t),
        SymGen::Et(t, j) => plethystic_elementary(t, j)?,
    })
}

/// Schur expansion of a product of generators.
pub fn to_schur(word: &[SymGen]) -> Result<SymElement> {
    let mut acc = SymElement::one();
    for &g in word {
        acc = &acc * &generator(g)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Parses words such as `e2 h1 p3 e2,1`.
pub fn parse_word(s: &str) -> Result<Vec<SymGen>> {
    s.split_whitespace().map(SymGen::from_str).collect()
}

impl FromStr for SymGen {
    type Err = Error;
    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad symmetric-function generator `{tok}`"));
        let (head, rest) = tok.split_at(1);
        let rest = rest.trim_start_matches('_').trim_matches(|c| c == '{' || c == '}' || c == '(' || c == ')');
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        match head {
            "e" if rest.contains(',') => {
                let (t, j) = rest.split_once(',').ok_or_else(bad)?;
                Ok(SymGen::Et(num(t)?, num(j)?))
            }
            "e" => Ok(SymGen::E(num(rest)?)),
            "h" => Ok(SymGen::H(num(rest)?)),
            "p" => Ok(SymGen::P(num(rest)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SymGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymGen::E(j) => write!(f, "e{j}"),
            SymGen::H(j) => write!(f, "h{j}"),
            SymGen::P(t) => write!(f, "p{t}"),
            SymGen::Et(t, j) => write!(f, "e{t},{j}"),
        }
    }
}

/// `Σ_{l=0}^m (-1)^l h_{m-l} e_l`, which vanishes for `m >= 1`.
pub fn alternating_he(m: usize) -> SymElement {
    let mut acc = SymElement::zero();
    for l in 0..=m {
        let term = &complete(m - l) * &elementary(l);
        acc = if l % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Checks `j e_j = Σ (-1)^{i-1} e_{j-i} p_i` and `j h_j = Σ h_{j-i} p_i` in degree `j`.
pub fn newton_identities_hold(j: usize) -> bool {
    let mut lhs_e = SymElement::zero();
    let mut lhs_h = SymElement::zero();
    for i in 1..=j {
        let p = power_sum(i);
        let te = &elementary(j - i) * &p;
        lhs_e = if i % 2 == 1 { &lhs_e + &te } else { &lhs_e - &te };
        lhs_h = &lhs_h + &(&complete(j - i) * &p);
    }
    let k = BigInt::from(j);
    (&lhs_e - &elementary(j).scale(&k)).is_zero() && (&lhs_h - &complete(j).scale(&k)).is_zero()
}

/// `p_ρ` in the Schur basis; the coefficient of `s_λ` is the character `χ^λ(ρ)`.
pub fn power_sum_product(rho: &Partition) -> SymElement {
    rho.parts()
        .iter()
        .fold(SymElement::one(), |acc, &r| acc.mul_power_sum(r))
}

/// `e_{t,j}` from the cycle-index sum `Σ_{ρ ⊢ j} (-1)^{j-l(ρ)} p_{tρ} / Π_i i^{m_i} w(m_i)`,
/// with `w(m) = m!` when `factorial` is set and `w(m) = m` otherwise (only `m_i > 0` enter).
/// Fails if a Schur coefficient comes out non-integral.
pub fn elementary_cycle_index(t: usize, j: usize, factorial: bool) -> Result<SymElement> {
    if t == 0 {
        return Err(Error::OutOfRange("e_{0,j} needs t >= 1".into()));
    }
    let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for rho in Partition::all_of_size(j) {
        let mut denom = BigInt::one();
        for (i, &m) in rho.multiplicities().iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            denom *= BigInt::from(i).pow(m as u32);
            denom *= if factorial { (1..=m).map(BigInt::from).product() } else { BigInt::from(m) };
        }
        let sign = if (j - rho.len()) % 2 == 0 { 1 } else { -1 };
        let scaled = Partition::new(rho.parts().iter().map(|r| r * t).collect::<Vec<_>>());
        for (lambda, c) in power_sum_product(&scaled).iter() {
            *acc.entry(lambda.clone()).or_insert_with(BigRational::zero) += BigRational::new(c * sign, denom.clone());
        }
    }
    let mut out = SymElement::zero();
    for (lambda, c) in acc {
        if !c.is_integer() {
            return Err(Error::NonIntegral { coeff: c.to_string(), term: format!("s{lambda}") });
        }
        out.add_term(lambda, c.to_integer());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> SymElement {
        SymElement::schur(Partition::new(v.to_vec()))
    }

    #[test]
    fn examples() {
        assert_eq!(to_schur(&[SymGen::P(1)]).unwrap(), s(&[1]));
        assert_eq!(to_schur(&[SymGen::E(2)]).unwrap(), s(&[1, 1]));
        assert_eq!(to_schur(&[SymGen::H(2)]).unwrap(), s(&[2]));
        assert_eq!(to_schur(&[SymGen::Et(2, 1)]).unwrap(), &s(&[2]) - &s(&[1, 1]));
    }

    #[test]
    fn power_sums_agree() {
        for m in 1..=8 {
            assert_eq!(power_sum(m), power_sum_hooks(m), "m={m}");
            assert_eq!(power_sum(m), SymElement::one().mul_power_sum(m));
        }
    }

    #[test]
    fn parse() {
        assert_eq!(
            parse_word("e2 h1 p3 e2,1 e_{3,2}").unwrap(),
            vec![SymGen::E(2), SymGen::H(1), SymGen::P(3), SymGen::Et(2, 1), SymGen::Et(3, 2)]
        );
        assert!(parse_word("x2").is_err());
    }

    #[test]
    fn p0_rejected() {
        assert!(to_schur(&[SymGen::P(0)]).is_err());
        assert!(plethystic_elementary(0, 2).is_err());
    }

    #[test]
    fn cycle_index_needs_factorials() {
        for t in 1..=3 {
            for j in 0..=6 {
                assert_eq!(elementary_cycle_index(t, j, true).unwrap(), plethystic_elementary(t, j).unwrap());
            }
        }
        // a triple part is where m_i and m_i! first differ
        let plain = elementary_cycle_index(1, 3, false);
        assert!(plain.map_or(true, |x| x != elementary(3)));
    }
}
