//! Dense exact rational matrices: Kronecker products, multiplication, and
//! fraction-free rank computation.

use super::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        RatMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds from machine-integer numerators with a common denominator.
    pub fn from_ints(rows: usize, cols: usize, numerators: &[i64], denominator: i64) -> Self {
        assert_eq!(numerators.len(), rows * cols);
        let entries = numerators
            .iter()
            .map(|&n| Rat::new(BigInt::from(n), BigInt::from(denominator)))
            .collect();
        RatMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "trace requires a square matrix");
        (0..self.rows).map(|i| &self[(i, i)]).fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product: (A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l].
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// n-fold Kronecker power (n ≥ 1).
    pub fn kron_pow(&self, n: usize) -> RatMatrix {
        assert!(n >= 1);
        let mut out = self.clone();
        for _ in 1..n {
            out = out.kron(self);
        }
        out
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination: each row
    /// is first scaled to integers, then eliminated with exact divisions.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| int_row(self.row(i))).collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0usize;
        let mut prev_pivot = BigInt::one();
        let mut col = 0usize;
        while rank < rows && col < cols {
            // pivot search in the current column
            let pivot_row = (rank..rows).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot_row else {
                col += 1;
                continue;
            };
            m.swap(rank, pr);
            let pivot = m[rank][col].clone();
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let val = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                    // Bareiss: division by the previous pivot is exact
                    m[r][c] = val / &prev_pivot;
                }
                m[r][col] = BigInt::zero();
            }
            prev_pivot = pivot;
            rank += 1;
            col += 1;
        }
        rank
    }
}

fn int_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

/// Reduces an integer vector to primitive form (gcd 1), keeping signs. Returns
/// the all-zero vector unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and reduces to primitive integers.
pub fn to_primitive_ints(v: &[Rat]) -> Vec<BigInt> {
    primitive(&int_row(v))
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Exact inner product of two rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Kronecker product of two vectors (a⊗b, a-index most significant).
pub fn kron_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::rat::{rat, rint};
    use super::*;

    fn k_matrix() -> RatMatrix {
        RatMatrix::from_ints(4, 4, &[-1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1], 2)
    }

    #[test]
    fn kron_identity() {
        let i2 = RatMatrix::identity(2);
        assert_eq!(i2.kron(&i2), RatMatrix::identity(4));
    }

    #[test]
    fn kron_kk_row0() {
        let kk = k_matrix().kron_pow(2);
        let want: Vec<Rat> = [1, -1, -1, -1, -1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, 1]
            .iter()
            .map(|&n| rat(n, 4))
            .collect();
        assert_eq!(kk.row(0), &want[..]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(4).rank(), 4);
        assert_eq!(k_matrix().rank(), 4);
        let ones = RatMatrix::new(4, 4, vec![rint(1); 16]);
        assert_eq!(ones.rank(), 1);
        assert_eq!(RatMatrix::zero(3, 5).rank(), 0);
    }

    #[test]
    fn rank_rectangular() {
        // two independent rows, one dependent
        let m = RatMatrix::from_ints(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1], 1);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn primitive_reduction() {
        let v: Vec<BigInt> = [6, -9, 0].iter().map(|&n| BigInt::from(n)).collect();
        let got = primitive(&v);
        assert_eq!(got, [BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        let w = [rat(1, 2), rat(1, 3), rint(0)];
        assert_eq!(
            to_primitive_ints(&w),
            [BigInt::from(3), BigInt::from(2), BigInt::from(0)]
        );
    }
}
