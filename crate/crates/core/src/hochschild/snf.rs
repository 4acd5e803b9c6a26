//! Smith normal form over `Z` with arbitrary-precision entries.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[j]` maps row index to entry
    pub columns: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.columns[j].entry(i).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.columns[j].remove(&i);
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, c) in col {
                m[i][j] = c.clone();
            }
        }
        m
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            for (&k, c) in col {
                for (&i, d) in &self.columns[k] {
                    out.add_entry(i, j, c * d);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    /// entry of least absolute value in the remaining block
    MinAbs,
    /// first nonzero entry in column-major order
    FirstNonzero,
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    /// nonzero diagonal entries, all positive
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

// row_i += c * row_k
fn row_axpy(m: &mut [Vec<BigInt>], i: usize, k: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let src = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], j: usize, k: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[k].is_zero() {
            let t = c * &row[k];
            row[j] += t;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

fn find_pivot(a: &[Vec<BigInt>], t: usize, strategy: Pivot) -> Option<(usize, usize)> {
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    match strategy {
        Pivot::FirstNonzero => (t..cols).flat_map(|j| (t..rows).map(move |i| (i, j))).find(|&(i, j)| !a[i][j].is_zero()),
        Pivot::MinAbs => {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                        if a[i][j].abs().is_one() {
                            return best;
                        }
                    }
                }
            }
            best
        }
    }
}

/// Smith normal form of a dense `rows x cols` matrix, with transforms.
pub fn smith(matrix: &[Vec<BigInt>], cols: usize, strategy: Pivot) -> Smith {
    let rows = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t, strategy) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    Smith { u, v, diagonal }
}

/// Invariant factors (nonzero diagonal of the Smith form) of a sparse matrix.
///
/// Unit pivots are eliminated sparsely, cheapest fill-in first; what is left
/// goes through the dense routine.
pub fn invariant_factors(m: &SparseMatrix, strategy: Pivot) -> Vec<BigInt> {
    let mut rows: HashMap<usize, HashMap<usize, BigInt>> = HashMap::new();
    let mut cols: HashMap<usize, HashSet<usize>> = HashMap::new();
    for (j, col) in m.columns.iter().enumerate() {
        for (&i, c) in col {
            rows.entry(i).or_default().insert(j, c.clone());
            cols.entry(j).or_default().insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (&i, row) in &rows {
            for (&j, c) in row {
                if !c.abs().is_one() {
                    continue;
                }
                let cost = (row.len() - 1) * (cols[&j].len() - 1);
                if best.map_or(true, |(_, _, b)| cost < b || (cost == b && (i, j) < (best.unwrap().0, best.unwrap().1))) {
                    best = Some((i, j, cost));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let prow = rows.remove(&pi).unwrap();
        let p = prow[&pj].clone();
        let others: Vec<usize> = cols[&pj].iter().copied().filter(|&i| i != pi).collect();
        for i in others {
            let row = rows.get_mut(&i).unwrap();
            // p is a unit, so p^{-1} = p
            let factor = &row[&pj] * &p;
            for (&j, c) in &prow {
                let slot = row.entry(j).or_insert_with(BigInt::zero);
                *slot -= &factor * c;
                if slot.is_zero() {
                    row.remove(&j);
                    cols.get_mut(&j).unwrap().remove(&i);
                } else {
                    cols.entry(j).or_default().insert(i);
                }
            }
            if row.is_empty() {
                rows.remove(&i);
            }
        }
        for j in prow.keys() {
            if let Some(set) = cols.get_mut(j) {
                set.remove(&pi);
            }
        }
        cols.remove(&pj);
        units += 1;
    }
    let mut row_ids: Vec<usize> = rows.keys().copied().collect();
    row_ids.sort_unstable();
    let mut col_ids: Vec<usize> = rows.values().flat_map(|r| r.keys().copied()).collect();
    col_ids.sort_unstable();
    col_ids.dedup();
    let col_pos: HashMap<usize, usize> = col_ids.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<BigInt>> = row_ids
        .iter()
        .map(|i| {
            let mut r = vec![BigInt::zero(); col_ids.len()];
            for (j, c) in &rows[i] {
                r[col_pos[j]] = c.clone();
            }
            r
        })
        .collect();
    let rest = smith(&dense, col_ids.len(), strategy).diagonal;
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

/// Invariant factors with the unit ones dropped.
pub fn torsion_of(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().filter(|d| !d.is_one()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn classic_example() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        for s in [Pivot::MinAbs, Pivot::FirstNonzero] {
            let r = smith(&a, 3, s);
            let d: Vec<i64> = r.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
            assert_eq!(d, vec![2, 6, 12]);
            let uav = mat_mul(&mat_mul(&r.u, &a), &r.v);
            for (i, row) in uav.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j { BigInt::from(d[i]) } else { BigInt::zero() };
                    assert_eq!(*x, expect);
                }
            }
        }
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let a = m(&[&[1, 2, 0, 3], &[0, 4, 0, 6], &[2, 0, 0, 0], &[0, 0, 0, 2]]);
        let mut s = SparseMatrix::zero(4, 4);
        for (i, r) in a.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                s.add_entry(i, j, x.clone());
            }
        }
        let dense = smith(&a, 4, Pivot::MinAbs).diagonal;
        assert_eq!(invariant_factors(&s, Pivot::FirstNonzero), dense);
    }
}
