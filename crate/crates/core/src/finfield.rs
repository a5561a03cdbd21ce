//! Exact arithmetic over prime fields and rank computations over them.

use crate::error::{Error, Result};
use crate::subset::Subset;

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const GF2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces any integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::ZeroDivision(self.p));
        }
        // Extended Euclid on (a, p).
        let (mut old_r, mut r) = (a as i64, self.p as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Ok(self.reduce(old_s))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FieldMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|e| e % field.p).collect();
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    /// All rows must have the same length; `cols` disambiguates the
    /// zero-row case.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::MatrixShape {
                    rows: rows.len(),
                    cols,
                    len: row.len(),
                });
            }
            entries.extend(row.iter().map(|&e| field.reduce(e)));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::MatrixShape {
                rows: other.rows,
                cols: other.cols,
                len: self.cols,
            });
        }
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn rank(&self) -> usize {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.rank_of_indices(&cols)
    }

    /// Rank of the submatrix formed by the given columns.
    pub fn rank_of_columns(&self, cols: &[usize]) -> Result<usize> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::ColumnOutOfRange {
                index: bad,
                cols: self.cols,
            });
        }
        Ok(self.rank_of_indices(cols))
    }

    /// Rank of the column submatrix selected by a bitmask.
    pub fn rank_of_subset(&self, cols: Subset) -> Result<usize> {
        let idx: Vec<usize> = cols.iter().collect();
        self.rank_of_columns(&idx)
    }

    fn rank_of_indices(&self, cols: &[usize]) -> usize {
        if cols.is_empty() || self.rows == 0 {
            return 0;
        }
        if self.field.p == 2 && cols.len() <= 64 {
            // Each row of the selected submatrix becomes one machine word.
            let words = (0..self.rows).map(|r| {
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &c)| acc | ((self.get(r, c) as u64) << j))
            });
            return rank_gf2_words(words);
        }
        let mut sub: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        rank_dense(self.field, &mut sub)
    }
}

/// Rank over GF(2) of a set of vectors of length at most 64, each packed
/// into a word.
pub fn rank_gf2_words<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    // Basis indexed by leading bit.
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

/// Rank over GF(2) of vectors of arbitrary length packed into words.
/// The input is consumed as scratch space.
pub fn rank_gf2_bitrows(rows: &mut [Vec<u64>]) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut rank = 0;
    for w in 0..width {
        for bit in 0..64 {
            let mask = 1u64 << bit;
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let p = &head[rank];
            for row in tail.iter_mut() {
                if row[w] & mask != 0 {
                    for (x, y) in row[w..].iter_mut().zip(&p[w..]) {
                        *x ^= *y;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                return rank;
            }
        }
    }
    rank
}

/// Row-reduces `m` in place over `field` and returns its rank.
pub fn rank_dense(field: PrimeField, m: &mut [Vec<u32>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field
            .inv(m[rank][c])
            .expect("pivot entries are nonzero by selection");
        for x in m[rank][c..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let p = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&p[c..]) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> FieldMatrix {
        FieldMatrix::from_rows(
            PrimeField::GF2,
            6,
            &[
                vec![1, 0, 0, 1, 0, 1],
                vec![0, 1, 0, 1, 1, 0],
                vec![0, 0, 1, 1, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn field_ops_small_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(PrimeField::GF2.add(1, 1), 0);
        assert_eq!(f5.neg(2), 3);
        assert_eq!(f5.inv(0), Err(Error::ZeroDivision(5)));
    }

    #[test]
    fn inverses_are_inverses() {
        for p in [2u64, 3, 5, 7, 13, 101, 65521] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p.min(300) as u32 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} a={a}");
                assert_eq!(f.inv(a).unwrap(), f.pow(a, p - 2));
            }
        }
    }

    #[test]
    fn composite_moduli_rejected() {
        for q in [0u64, 1, 4, 6, 9, 25, 49] {
            assert_eq!(PrimeField::new(q), Err(Error::NotPrime(q)));
        }
    }

    #[test]
    fn rank_of_running_example_columns() {
        let h = h1();
        assert_eq!(h.rank_of_columns(&[0, 3, 4]).unwrap(), 2);
        assert_eq!(h.rank_of_columns(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(h.rank_of_columns(&[]).unwrap(), 0);
        assert_eq!(
            h.rank_of_columns(&[0, 6]),
            Err(Error::ColumnOutOfRange { index: 6, cols: 6 })
        );
    }

    #[test]
    fn dense_and_packed_gf2_agree() {
        let h = h1();
        for mask in 0u64..64 {
            let cols: Vec<usize> = Subset(mask).iter().collect();
            let mut dense: Vec<Vec<u32>> = (0..3)
                .map(|r| cols.iter().map(|&c| h.get(r, c)).collect())
                .collect();
            let mut packed: Vec<Vec<u64>> = (0..3)
                .map(|r| {
                    vec![cols
                        .iter()
                        .enumerate()
                        .fold(0u64, |a, (j, &c)| a | ((h.get(r, c) as u64) << j))]
                })
                .collect();
            let expected = rank_dense(PrimeField::GF2, &mut dense);
            assert_eq!(h.rank_of_subset(Subset(mask)).unwrap(), expected);
            assert_eq!(rank_gf2_bitrows(&mut packed), expected);
        }
    }

    #[test]
    fn rank_over_gf5() {
        let f5 = PrimeField::new(5).unwrap();
        // Third row = first + 2 * second over GF(5).
        let m =
            FieldMatrix::from_rows(f5, 3, &[vec![1, 2, 3], vec![0, 1, 4], vec![1, 4, 11]]).unwrap();
        assert_eq!(m.rank(), 2);
        let zero = FieldMatrix::zeros(f5, 2, 3);
        assert_eq!(zero.rank(), 0);
    }
}
