use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, stored with trailing zeros trimmed.
///
/// The derived ordering is lexicographic on the parts, which agrees with the
/// lexicographic order on zero-padded sequences because stored parts are
/// positive.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Panics otherwise.
    pub fn new(parts: impl Into<Vec<usize>>) -> Self {
        let parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        Self::trimmed(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Checked constructor for untrusted input (JSON, CLI).
    pub fn try_new(parts: &[i64]) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Ok(Self::trimmed(parts.iter().map(|&p| p as usize).collect()))
    }

    fn trimmed(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// The rectangle `(value^rows)`.
    pub fn rectangle(value: usize, rows: usize) -> Self {
        Self::trimmed(vec![value; rows])
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        Self::trimmed(vec![k])
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Self::trimmed(vec![1; k])
    }

    /// The hook `(k - r, 1^r)` with `k > r`.
    pub fn hook(k: usize, r: usize) -> Self {
        assert!(r < k);
        let mut parts = vec![k - r];
        parts.extend(std::iter::repeat(1).take(r));
        Self::trimmed(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Parts padded with zeros to exactly `rows` entries. Panics if too long.
    pub fn padded(&self, rows: usize) -> Vec<usize> {
        assert!(self.len() <= rows);
        let mut v = self.parts.clone();
        v.resize(rows, 0);
        v
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Complement inside the `rows x cols` box: `(cols - λ_rows, ..., cols - λ_1)`.
    pub fn complement(&self, rows: usize, cols: usize) -> Result<Partition> {
        self.check_box(rows, cols)?;
        let padded = self.padded(rows);
        Ok(Self::trimmed(padded.iter().rev().map(|&p| cols - p).collect()))
    }

    /// `(λ^c)^t`, which lies in the `cols x rows` box.
    pub fn hat(&self, rows: usize, cols: usize) -> Result<Partition> {
        Ok(self.complement(rows, cols)?.conjugate())
    }

    fn check_box(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits(rows, cols) {
            Ok(())
        } else {
            Err(Error::NotInBox {
                partition: self.parts.clone(),
                rows,
                cols,
            })
        }
    }

    /// Multiplicities `m_i` for `i = 1..=λ_1` (index 0 is unused and zero).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of a permutation of cycle type λ.
    pub fn z_factor(&self) -> u128 {
        let mut z: u128 = 1;
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= (i as u128) * (k as u128);
            }
        }
        z
    }

    /// Whether `self / inner` is a horizontal strip (at most one box per column).
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        if inner.len() > self.len() {
            return false;
        }
        (0..self.len()).all(|i| {
            let outer = self.part(i);
            let below = inner.part(i);
            below <= outer && (i == 0 || outer <= inner.part(i - 1))
        })
    }

    /// All ν with ν/λ a horizontal strip of size `k`.
    pub fn add_horizontal_strip(&self, k: usize) -> Vec<Partition> {
        let rows = self.len() + 1;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(rows);
        self.horizontal_rec(0, rows, k, &mut current, &mut out);
        out
    }

    fn horizontal_rec(
        &self,
        i: usize,
        rows: usize,
        remaining: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == rows {
            if remaining == 0 {
                out.push(Self::trimmed(current.clone()));
            }
            return;
        }
        let base = self.part(i);
        let cap = if i == 0 {
            remaining
        } else {
            (self.part(i - 1) - base).min(remaining)
        };
        for add in (0..=cap).rev() {
            current.push(base + add);
            self.horizontal_rec(i + 1, rows, remaining - add, current, out);
            current.pop();
        }
    }

    /// All ν with ν/λ a vertical strip of size `k`.
    pub fn add_vertical_strip(&self, k: usize) -> Vec<Partition> {
        self.conjugate()
            .add_horizontal_strip(k)
            .into_iter()
            .map(|p| p.conjugate())
            .collect()
    }

    /// All ν with λ/ν a horizontal strip of size `k`.
    pub fn remove_horizontal_strip(&self, k: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.len());
        self.remove_rec(0, k, &mut current, &mut out);
        out
    }

    fn remove_rec(&self, i: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == self.len() {
            if remaining == 0 {
                out.push(Self::trimmed(current.clone()));
            }
            return;
        }
        let top = self.part(i);
        let floor = self.part(i + 1);
        let max_remove = (top - floor).min(remaining);
        for r in 0..=max_remove {
            current.push(top - r);
            self.remove_rec(i + 1, remaining - r, current, out);
            current.pop();
        }
    }

    /// Border strips of size `r` added to λ, with their heights (rows spanned minus one).
    pub fn add_border_strip(&self, r: usize) -> Vec<(Partition, usize)> {
        if r == 0 {
            return vec![(self.clone(), 0)];
        }
        let total = self.len() + r;
        // beta numbers: β_i = λ_i + (total - 1 - i), strictly decreasing
        let beta: Vec<usize> = (0..total).map(|i| self.part(i) + (total - 1 - i)).collect();
        let mut out = Vec::new();
        for k in 0..total {
            let target = beta[k] + r;
            if beta.contains(&target) {
                continue;
            }
            let height = beta.iter().filter(|&&b| b > beta[k] && b < target).count();
            let mut nb = beta.clone();
            nb[k] = target;
            nb.sort_unstable_by(|a, b| b.cmp(a));
            let parts = nb.iter().enumerate().map(|(i, &b)| b - (total - 1 - i)).collect();
            out.push((Self::trimmed(parts), height));
        }
        out
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        Self::bounded_of_size(n, usize::MAX, n)
    }

    /// Partitions of `n` with at most `rows` parts and parts at most `cols`.
    pub fn bounded_of_size(n: usize, rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        bounded_rec(n, rows, cols, &mut current, &mut out);
        out
    }

    /// Partitions in the `rows x cols` box, all sizes.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        (0..=rows * cols)
            .flat_map(|n| Self::bounded_of_size(n, rows, cols))
            .collect()
    }
}

fn bounded_rec(n: usize, rows: usize, cols: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if rows == 0 {
        return;
    }
    for p in (1..=cols.min(n)).rev() {
        current.push(p);
        bounded_rec(n - p, rows - 1, p, current, out);
        current.pop();
    }
}

/// Number of partitions of `n` with at most `rows` parts.
pub fn count_partitions(n: usize, rows: usize) -> u64 {
    // p(n, k) = p(n, k-1) + p(n-k, k)
    let mut table = vec![vec![0u64; rows + 1]; n + 1];
    for k in 0..=rows {
        table[0][k] = 1;
    }
    for m in 1..=n {
        for k in 1..=rows {
            table[m][k] = table[m][k - 1] + if m >= k { table[m - k][k] } else { 0 };
        }
    }
    table[n][rows]
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::try_new(&v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn box_duals_small() {
        let l = p(&[2, 1]);
        assert_eq!(l.conjugate(), p(&[2, 1]));
        assert_eq!(l.complement(2, 2).unwrap(), p(&[1]));
        assert_eq!(l.hat(2, 2).unwrap(), p(&[1]));

        let e = Partition::empty();
        assert_eq!(e.complement(2, 3).unwrap(), p(&[3, 3]));
        assert_eq!(e.hat(2, 3).unwrap(), p(&[2, 2, 2]));

        let full = Partition::rectangle(3, 2);
        assert!(full.complement(2, 3).unwrap().is_empty());
        assert!(full.hat(2, 3).unwrap().is_empty());
    }

    #[test]
    fn complement_rejects_outside_box() {
        assert!(p(&[3]).complement(2, 2).is_err());
        assert!(p(&[1, 1, 1]).complement(2, 2).is_err());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[2, 0, 0]), p(&[2]));
        assert_eq!(Partition::try_new(&[1, 0]).unwrap(), p(&[1]));
        assert!(Partition::try_new(&[1, 2]).is_err());
        assert!(Partition::try_new(&[-1]).is_err());
    }

    #[test]
    fn lex_order_matches_padded() {
        assert!(p(&[2, 1]) < p(&[2, 1, 1]));
        assert!(p(&[2, 1, 1]) < p(&[2, 2]));
        assert!(p(&[1, 1, 1]) < p(&[2]));
    }

    #[test]
    fn counts() {
        assert_eq!(Partition::all_of_size(6).len(), 11);
        assert_eq!(count_partitions(6, 6), 11);
        assert_eq!(count_partitions(10, 3), Partition::bounded_of_size(10, 3, 10).len() as u64);
        assert_eq!(Partition::in_box(2, 3).len(), 10);
    }

    #[test]
    fn strips() {
        let l = p(&[2, 1]);
        let h = l.add_horizontal_strip(2);
        assert_eq!(h.len(), 4); // (4,1) (3,2) (3,1,1) (2,2,1)
        assert!(h.iter().all(|n| n.is_horizontal_strip_over(&l)));
        let v = l.add_vertical_strip(1);
        assert_eq!(v.len(), 3);
        let r = p(&[3, 1]).remove_horizontal_strip(2);
        assert_eq!(r, vec![p(&[2]), p(&[1, 1])]);
    }

    #[test]
    fn border_strips_of_empty_are_hooks() {
        let strips = Partition::empty().add_border_strip(3);
        assert_eq!(strips.len(), 3);
        for (nu, ht) in strips {
            assert_eq!(nu.size(), 3);
            assert_eq!(nu.len() - 1, ht);
        }
    }
}
