//! Exact monomial matrices.
//!
//! Every operator that appears in a partial-permutation model (the partial
//! isometry, its adjoint, powers, products with diagonal 0/1 projections) has
//! at most one nonzero entry per column. Such a matrix is stored column-wise as
//! the image of each basis vector, so products and identities are evaluated on
//! basis vectors in `O(size)` without general matrix multiplication.

use std::fmt;

use crate::model::PartialInjection;

/// Column `j` holds the image of the basis vector `e_j`: `Some((i, c))` means
/// `e_j ↦ c·e_i`, `None` means `e_j ↦ 0`. A zero coefficient is never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    cols: Vec<Option<(usize, i64)>>,
}

impl Monomial {
    pub fn identity(size: usize) -> Self {
        Self {
            cols: (0..size).map(|j| Some((j, 1))).collect(),
        }
    }

    pub fn zero(size: usize) -> Self {
        Self {
            cols: vec![None; size],
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: impl IntoIterator<Item = i64>) -> Self {
        Self {
            cols: entries
                .into_iter()
                .enumerate()
                .map(|(j, c)| (c != 0).then_some((j, c)))
                .collect(),
        }
    }

    /// Diagonal 0/1 projection onto the given indices.
    pub fn projection(size: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::zero(size);
        for j in support {
            m.cols[j] = Some((j, 1));
        }
        m
    }

    /// The partial isometry `U e_j = e_{σ(j)}` on `dom σ`, `U e_j = 0` elsewhere.
    pub fn from_injection(sigma: &PartialInjection) -> Self {
        Self {
            cols: (0..sigma.size())
                .map(|j| sigma.apply(j).map(|k| (k, 1)))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn apply_basis(&self, j: usize) -> Option<(usize, i64)> {
        self.cols[j]
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.size(), rhs.size());
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let (mid, c) = (*col)?;
                let (row, d) = self.cols[mid]?;
                let coeff = c * d;
                (coeff != 0).then_some((row, coeff))
            })
            .collect();
        Monomial { cols }
    }

    /// Conjugate transpose. Entries are integers, so this is the transpose.
    pub fn adjoint(&self) -> Monomial {
        let mut cols = vec![None; self.size()];
        for (j, col) in self.cols.iter().enumerate() {
            if let Some((i, c)) = *col {
                debug_assert!(cols[i].is_none(), "adjoint of a non-monomial column set");
                cols[i] = Some((j, c));
            }
        }
        Monomial { cols }
    }

    pub fn pow(&self, n: usize) -> Monomial {
        (0..n).fold(Monomial::identity(self.size()), |acc, _| acc.mul(self))
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, col)| col.is_none_or(|(i, _)| i == j))
    }

    /// Diagonal entries, zero where the column maps off-diagonal or to zero.
    pub fn diagonal_entries(&self) -> Vec<i64> {
        self.cols
            .iter()
            .enumerate()
            .map(|(j, col)| match col {
                Some((i, c)) if *i == j => *c,
                _ => 0,
            })
            .collect()
    }

    /// Columns on which `self` and `other` differ.
    pub fn differing_columns(&self, other: &Monomial) -> Vec<usize> {
        self.cols
            .iter()
            .zip(&other.cols)
            .enumerate()
            .filter_map(|(j, (a, b))| (a != b).then_some(j))
            .collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Monomial[")?;
        for (j, col) in self.cols.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            match col {
                Some((i, 1)) => write!(f, "{j}→{i}")?,
                Some((i, c)) => write!(f, "{j}→{c}·{i}")?,
                None => write!(f, "{j}→0")?,
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_follows_columns() {
        let shift = Monomial {
            cols: vec![Some((1, 1)), Some((2, 1)), None],
        };
        let sq = shift.mul(&shift);
        assert_eq!(sq.apply_basis(0), Some((2, 1)));
        assert_eq!(sq.apply_basis(1), None);
        assert_eq!(shift.pow(3), Monomial::zero(3));
    }

    #[test]
    fn adjoint_of_shift_is_backward_shift() {
        let shift = Monomial {
            cols: vec![Some((1, 1)), Some((2, 1)), None],
        };
        let back = shift.adjoint();
        assert_eq!(back.apply_basis(0), None);
        assert_eq!(back.apply_basis(2), Some((1, 1)));
        assert_eq!(shift.mul(&back), Monomial::projection(3, [1, 2]));
        assert_eq!(back.mul(&shift), Monomial::projection(3, [0, 1]));
    }

    #[test]
    fn diagonal_drops_zeros() {
        let d = Monomial::diagonal([1, 0, 2]);
        assert!(d.is_diagonal());
        assert_eq!(d.apply_basis(1), None);
        assert_eq!(d.diagonal_entries(), vec![1, 0, 2]);
    }
}
