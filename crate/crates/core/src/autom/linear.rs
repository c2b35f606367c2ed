use alloc::vec;
use alloc::vec::Vec;

use crate::field::PrimeField;

/// An `F_p`-linear map of `H = F/F_2`, as an `r x r` matrix whose column `j`
/// holds the coordinates of the image of `X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMapH {
    field: PrimeField,
    entries: Vec<Vec<u32>>,
}

impl LinearMapH {
    pub fn identity(field: PrimeField, rank: usize) -> Self {
        let mut entries = vec![vec![0; rank]; rank];
        for (k, row) in entries.iter_mut().enumerate() {
            row[k] = 1 % field.modulus();
        }
        LinearMapH { field, entries }
    }

    /// From row-major entries; each value is reduced mod p.
    pub fn from_rows(field: PrimeField, rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        let entries = rows
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), n, "matrix must be square");
                row.into_iter().map(|v| field.reduce(v)).collect()
            })
            .collect();
        LinearMapH { field, entries }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rank_of_space(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j)`, 1-based: the `X_i` coordinate of the image of `X_j`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMapH::identity(self.field, self.entries.len())
    }

    /// Matrix product `self * other`, the map `other` followed by `self`.
    pub fn mul(&self, other: &LinearMapH) -> LinearMapH {
        let n = self.entries.len();
        let f = self.field;
        let mut entries = vec![vec![0; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = (0..n).fold(0, |acc, k| f.add(acc, f.mul(self.entries[i][k], other.entries[k][j])));
            }
        }
        LinearMapH { field: f, entries }
    }

    /// Rank over `F_p`, by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        eliminate(self.field, &mut m, None)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.entries.len()
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<LinearMapH> {
        let n = self.entries.len();
        let mut m = self.entries.clone();
        let mut inv = LinearMapH::identity(self.field, n).entries;
        if eliminate(self.field, &mut m, Some(&mut inv)) < n {
            return None;
        }
        Some(LinearMapH { field: self.field, entries: inv })
    }
}

/// Reduces `m` to reduced row echelon form, mirroring every row operation on
/// `mirror`, and returns the rank.
fn eliminate(f: PrimeField, m: &mut [Vec<u32>], mut mirror: Option<&mut Vec<Vec<u32>>>) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        if let Some(mm) = mirror.as_deref_mut() {
            mm.swap(rank, pivot);
        }
        let scale = f.inv(m[rank][col]).expect("nonzero pivot");
        scale_row(f, &mut m[rank], scale);
        if let Some(mm) = mirror.as_deref_mut() {
            scale_row(f, &mut mm[rank], scale);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = f.neg(m[r][col]);
                let src = m[rank].clone();
                add_row(f, &mut m[r], &src, factor);
                if let Some(mm) = mirror.as_deref_mut() {
                    let src = mm[rank].clone();
                    add_row(f, &mut mm[r], &src, factor);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn scale_row(f: PrimeField, row: &mut [u32], c: u32) {
    for v in row {
        *v = f.mul(*v, c);
    }
}

fn add_row(f: PrimeField, row: &mut [u32], src: &[u32], c: u32) {
    for (v, s) in row.iter_mut().zip(src) {
        *v = f.add(*v, f.mul(*s, c));
    }
}
