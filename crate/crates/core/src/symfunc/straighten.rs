use num_bigint::BigInt;

use super::element::SymElement;
use super::partition::Partition;
use crate::error::{Error, Result};

/// A sequence `(m_1, ..., m_a)` with `m_j >= j - a`, indexing a generalized Schur
/// polynomial in `a` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiIndex {
    entries: Vec<i64>,
}

impl QuasiIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let a = entries.len() as i64;
        for (j, &m) in entries.iter().enumerate() {
            if m < (j as i64 + 1) - a {
                return Err(Error::QuasiIndexBound { entries, position: j + 1 });
            }
        }
        Ok(QuasiIndex { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Result of straightening: zero, or `sign * s_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Straightened {
    Zero,
    Signed(i8, Partition),
}

impl Straightened {
    pub fn to_element(&self, rows: usize) -> SymElement {
        match self {
            Straightened::Zero => SymElement::zero().truncate(rows),
            Straightened::Signed(sign, p) => {
                let mut x = SymElement::zero().truncate(rows);
                x.add_term(p.clone(), BigInt::from(*sign));
                x
            }
        }
    }
}

/// Rewrites `s_m` for a quasi-index `m` as `±s_λ` or zero: shift by the
/// staircase, sort strictly decreasing (tracking the permutation sign), shift back.
pub fn straighten(m: &QuasiIndex) -> Straightened {
    let a = m.len();
    let mut shifted: Vec<i64> = m
        .entries()
        .iter()
        .enumerate()
        .map(|(j, &x)| x + (a - 1 - j) as i64)
        .collect();
    // insertion sort, counting transpositions
    let mut swaps = 0usize;
    for i in 1..shifted.len() {
        let mut k = i;
        while k > 0 && shifted[k - 1] < shifted[k] {
            shifted.swap(k - 1, k);
            swaps += 1;
            k -= 1;
        }
    }
    if shifted.windows(2).any(|w| w[0] == w[1]) {
        return Straightened::Zero;
    }
    let parts: Vec<usize> = shifted
        .iter()
        .enumerate()
        .map(|(j, &x)| (x - (a - 1 - j) as i64) as usize)
        .collect();
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Straightened::Signed(sign, Partition::new(parts))
}

/// Convenience wrapper validating raw entries first.
pub fn straighten_entries(entries: &[i64]) -> Result<Straightened> {
    Ok(straighten(&QuasiIndex::new(entries.to_vec())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            straighten_entries(&[0, 2]).unwrap(),
            Straightened::Signed(-1, Partition::new(vec![1, 1]))
        );
        assert_eq!(
            straighten_entries(&[2, 1]).unwrap(),
            Straightened::Signed(1, Partition::new(vec![2, 1]))
        );
        assert_eq!(straighten_entries(&[0, 1]).unwrap(), Straightened::Zero);
        assert_eq!(straighten_entries(&[-1, 0]).unwrap(), Straightened::Zero);
        assert_eq!(
            straighten_entries(&[-1, 1]).unwrap(),
            Straightened::Signed(-1, Partition::empty())
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(straighten_entries(&[-2, 0]).is_err());
        assert!(straighten_entries(&[0, -1]).is_err());
    }

    #[test]
    fn adjacent_swap_rule() {
        // s_(..., m_k, m_{k+1}, ...) = -s_(..., m_{k+1}-1, m_k+1, ...)
        let m = [3i64, 0, 2, 1];
        for k in 0..3 {
            let mut swapped = m;
            swapped[k] = m[k + 1] - 1;
            swapped[k + 1] = m[k] + 1;
            let lhs = straighten_entries(&m).unwrap();
            let rhs = straighten_entries(&swapped).unwrap();
            match (lhs, rhs) {
                (Straightened::Zero, Straightened::Zero) => {}
                (Straightened::Signed(s1, p1), Straightened::Signed(s2, p2)) => {
                    assert_eq!(p1, p2);
                    assert_eq!(s1, -s2);
                }
                other => panic!("mismatch {other:?}"),
            }
        }
    }
}
