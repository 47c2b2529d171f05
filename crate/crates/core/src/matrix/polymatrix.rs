use std::fmt;

use super::BitMatrix;
use crate::gf2::Gf2Poly;

/// Dense matrix over GF(2)[X].
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gf2Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Gf2Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Gf2Poly::one() } else { Gf2Poly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Gf2Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// `I - X A`.
    pub fn i_minus_xa(a: &BitMatrix) -> Self {
        assert!(a.is_square());
        let x = Gf2Poly::x();
        Self::from_fn(a.rows(), a.cols(), |i, j| {
            let mut p = if a.get(i, j) { x.clone() } else { Gf2Poly::zero() };
            if i == j {
                p += &Gf2Poly::one();
            }
            p
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gf2Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Gf2Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Gf2Poly) {
        self.entries[i * self.cols + j] += p;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Gf2Poly]) -> Vec<Gf2Poly> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Gf2Poly::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, p: &Gf2Poly) -> PolyMatrix {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    /// Determinant by Bareiss fraction-free elimination; every division is
    /// exact in GF(2)[X].
    pub fn det(&self) -> Gf2Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Gf2Poly::one();
        }
        let mut m: Vec<Vec<Gf2Poly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = Gf2Poly::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Gf2Poly::zero();
            };
            m.swap(k, p);
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[k][k] * &m[i][j]) + &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = Gf2Poly::zero();
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].clone()
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        Self::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            self.get(if r < i { r } else { r + 1 }, if c < j { c } else { c + 1 }).clone()
        })
    }

    /// Cofactor; signs vanish in characteristic 2.
    pub fn cofactor(&self, i: usize, j: usize) -> Gf2Poly {
        self.minor(i, j).det()
    }

    /// Transposed cofactor matrix, one determinant per entry.
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.rows;
        if n == 1 {
            return PolyMatrix::identity(1);
        }
        Self::from_fn(n, n, |i, j| self.cofactor(j, i))
    }

    /// `det(M + lambda E_ij) = det M + lambda * C_ij(M)`.
    pub fn det_rank1_update(&self, i: usize, j: usize, lambda: &Gf2Poly) -> Gf2Poly {
        &self.det() + &(lambda * &self.cofactor(i, j))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Oracle: permanent by subset DP (equals det in characteristic 2).
    fn permanent(m: &PolyMatrix) -> Gf2Poly {
        let n = m.rows();
        let mut dp = vec![Gf2Poly::zero(); 1 << n];
        dp[0] = Gf2Poly::one();
        for mask in 0usize..(1 << n) {
            let row = mask.count_ones() as usize;
            if row >= n || dp[mask].is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) == 0 && !m.get(row, j).is_zero() {
                    let add = &dp[mask] * m.get(row, j);
                    dp[mask | (1 << j)] += &add;
                }
            }
        }
        dp[(1 << n) - 1].clone()
    }

    fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(0u64..16, n * n)
            .prop_map(move |ws| PolyMatrix::from_fn(n, n, |i, j| Gf2Poly::from_u64(ws[i * n + j])))
    }

    proptest! {
        #[test]
        fn bareiss_matches_permanent(m in (1usize..7).prop_flat_map(poly_matrix)) {
            prop_assert_eq!(m.det(), permanent(&m));
        }

        #[test]
        fn adjugate_identity(m in (1usize..6).prop_flat_map(poly_matrix)) {
            let n = m.rows();
            let adj = m.adjugate();
            prop_assert_eq!(m.mul(&adj), PolyMatrix::identity(n).scale(&m.det()));
        }

        #[test]
        fn rank_one_update(m in (2usize..6).prop_flat_map(poly_matrix), i in 0usize..2, j in 0usize..2, w in 0u64..8) {
            let lambda = Gf2Poly::from_u64(w);
            let mut updated = m.clone();
            updated.add_to(i, j, &lambda);
            prop_assert_eq!(m.det_rank1_update(i, j, &lambda), updated.det());
        }
    }
}
