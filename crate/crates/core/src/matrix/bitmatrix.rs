use std::fmt;

use super::F2Vec;
use crate::error::{Error, Result};
use crate::gf2::Gf2Poly;

/// Dense matrix over GF(2) with packed rows. Zero-sized dimensions are
/// allowed so that an autonomous machine can carry an `n x 0` input matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Sets every listed position; duplicates are idempotent.
    pub fn from_coords(rows: usize, cols: usize, coords: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for &(i, j) in coords {
            if i >= rows || j >= cols {
                return Err(Error::Dimension(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }

    /// Rows as `0`/`1` strings, column 0 first; spaces are ignored.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect())
            .collect();
        let cols = parsed.first().map_or(0, |r| r.len());
        if parsed.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let mut m = Self::zeros(parsed.len(), cols);
        for (i, r) in parsed.iter().enumerate() {
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] ^= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vec(&self, i: usize) -> F2Vec {
        F2Vec::from_words(self.cols, self.row(i).to_vec())
    }

    pub fn col_vec(&self, j: usize) -> F2Vec {
        let mut v = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Columns holding a one in row `i`.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.data[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    /// `col[dst] ^= col[src]`.
    pub fn xor_col(&mut self, dst: usize, src: usize) {
        for i in 0..self.rows {
            if self.get(i, src) {
                self.toggle(i, dst);
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            if x != y {
                self.toggle(i, a);
                self.toggle(i, b);
            }
        }
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                w[j] += 1;
            }
        }
        w
    }

    /// Positions of the ones, row-major.
    pub fn coords(&self) -> Vec<(usize, usize)> {
        (0..self.rows).flat_map(|i| self.row_ones(i).map(move |j| (i, j))).collect()
    }

    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let base = i * out.stride;
            for k in self.row_ones(i) {
                for (o, r) in out.data[base..base + out.stride].iter_mut().zip(rhs.row(k)) {
                    *o ^= r;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        assert_eq!(self.cols, v.len(), "vector length differs");
        let mut out = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if v.dot_words(self.row(i)) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, j) in self.coords() {
            t.set(j, i, true);
        }
        t
    }

    /// Adds `block` with its top-left corner at `(r0, c0)`.
    pub fn xor_block(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        for (i, j) in block.coords() {
            self.toggle(r0 + i, c0 + j);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> BitMatrix {
        let mut b = BitMatrix::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                if self.get(r0 + i, c0 + j) {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.swap_rows(p, rank);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Some `x` with `self x = b`, free variables set to 0.
    pub fn solve(&self, b: &F2Vec) -> Option<F2Vec> {
        assert_eq!(b.len(), self.rows);
        let mut m = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                m.set(i, j, true);
            }
            m.set(i, self.cols, b.get(i));
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.swap_rows(p, rank);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row(r, rank);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if (rank..m.rows).any(|r| m.get(r, self.cols)) {
            return None;
        }
        let mut x = F2Vec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, m.get(r, self.cols));
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| m.get(r, c))?;
            m.swap_rows(p, c);
            inv.swap_rows(p, c);
            for r in 0..n {
                if r != c && m.get(r, c) {
                    m.xor_row(r, c);
                    inv.xor_row(r, c);
                }
            }
        }
        Some(inv)
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `det(xI - A)` via reduction to upper Hessenberg form by similarity
    /// followed by the Hessenberg determinant recurrence.
    pub fn charpoly(&self) -> Gf2Poly {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| h.get(i, k)) else { continue };
            h.swap_rows(p, k + 1);
            h.swap_cols(p, k + 1);
            for i in k + 2..n {
                if h.get(i, k) {
                    // E h E with E = I + e_i e_{k+1}^T, which is its own inverse.
                    h.xor_row(i, k + 1);
                    h.xor_col(k + 1, i);
                }
            }
        }
        let x = Gf2Poly::x();
        let mut p: Vec<Gf2Poly> = Vec::with_capacity(n + 1);
        p.push(Gf2Poly::one());
        for m in 1..=n {
            let mut factor = x.clone();
            if h.get(m - 1, m - 1) {
                factor += &Gf2Poly::one();
            }
            let mut pm = &factor * &p[m - 1];
            // Chain of subdiagonal entries h[i][i-1] .. h[m-1][m-2].
            for i in (1..m).rev() {
                if !h.get(i, i - 1) {
                    break;
                }
                if h.get(i - 1, m - 1) {
                    pm += &p[i - 1];
                }
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" ")?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn matrix_strategy(n: usize, density: f64) -> impl Strategy<Value = BitMatrix> {
        prop::collection::vec(prop::bool::weighted(density), n * n).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(n, n);
            for (k, b) in bits.into_iter().enumerate() {
                m.set(k / n, k % n, b);
            }
            m
        })
    }

    // Oracle: over GF(2) the determinant equals the permanent; expand it by
    // a subset DP over columns with polynomial entries of xI - A.
    pub fn charpoly_oracle(a: &BitMatrix) -> Gf2Poly {
        let n = a.rows();
        let entry = |i: usize, j: usize| {
            let mut p = Gf2Poly::zero();
            if a.get(i, j) {
                p += &Gf2Poly::one();
            }
            if i == j {
                p += &Gf2Poly::x();
            }
            p
        };
        let mut dp = vec![Gf2Poly::zero(); 1 << n];
        dp[0] = Gf2Poly::one();
        for mask in 0usize..(1 << n) {
            let row = mask.count_ones() as usize;
            if row >= n || dp[mask].is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    let e = entry(row, j);
                    if !e.is_zero() {
                        let add = &dp[mask] * &e;
                        dp[mask | (1 << j)] += &add;
                    }
                }
            }
        }
        dp[(1 << n) - 1].clone()
    }

    fn eval_poly_at(p: &Gf2Poly, a: &BitMatrix) -> BitMatrix {
        let n = a.rows();
        let mut acc = BitMatrix::zeros(n, n);
        let d = p.degree().unwrap_or(0);
        for k in (0..=d).rev() {
            acc = acc.mul(a);
            if p.coeff(k) {
                acc = acc.add(&BitMatrix::identity(n));
            }
        }
        acc
    }

    #[test]
    fn identity_and_transpose() {
        let m = BitMatrix::from_row_strings(&["110", "011"]).unwrap();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.mul(&BitMatrix::identity(3)), m);
        assert_eq!(m.weight(), 4);
        assert_eq!(m.col_weights(), vec![1, 2, 1]);
        assert_eq!(m.coords(), vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
    }

    #[test]
    fn charpoly_of_companion() {
        // Galois matrix of x^8+x^6+x^5+x^3+1: det(xI - A) is the reciprocal
        // x^8 + x^5 + x^3 + x^2 + 1.
        let q: Gf2Poly = "x^8+x^6+x^5+x^3+1".parse().unwrap();
        let mut a = BitMatrix::zeros(8, 8);
        for k in 0..8 {
            if q.coeff(k + 1) {
                a.set(k, 0, true);
            }
            if k + 1 < 8 {
                a.set(k, k + 1, true);
            }
        }
        assert_eq!(a.charpoly(), q.reverse(8));
        assert_eq!(charpoly_oracle(&a), q.reverse(8));
    }

    #[test]
    fn large_sparse_charpoly_is_monic() {
        let n = 300;
        let mut a = BitMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, (i + 1) % n, true);
        }
        // Single cycle: charpoly x^n + 1.
        let expect = &Gf2Poly::monomial(n) + &Gf2Poly::one();
        assert_eq!(a.charpoly(), expect);
    }

    proptest! {
        #[test]
        fn charpoly_matches_permanent_oracle(a in (1usize..8).prop_flat_map(|n| matrix_strategy(n, 0.4))) {
            prop_assert_eq!(a.charpoly(), charpoly_oracle(&a));
        }

        #[test]
        fn cayley_hamilton(a in (1usize..24).prop_flat_map(|n| matrix_strategy(n, 0.2))) {
            let p = a.charpoly();
            prop_assert_eq!(p.degree(), Some(a.rows()));
            prop_assert_eq!(eval_poly_at(&p, &a).weight(), 0);
        }

        #[test]
        fn inverse_and_rank(a in (1usize..20).prop_flat_map(|n| matrix_strategy(n, 0.5))) {
            let n = a.rows();
            match a.inverse() {
                Some(inv) => {
                    prop_assert_eq!(a.rank(), n);
                    prop_assert_eq!(a.mul(&inv), BitMatrix::identity(n));
                    prop_assert_eq!(inv.mul(&a), BitMatrix::identity(n));
                }
                None => prop_assert!(a.rank() < n),
            }
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn solve_finds_consistent_solutions(a in matrix_strategy(9, 0.3), x in prop::collection::vec(any::<bool>(), 9)) {
            let b = a.mul_vec(&F2Vec::from_bools(&x));
            let y = a.solve(&b).expect("b is in the image");
            prop_assert_eq!(a.mul_vec(&y), b.clone());
            let mut off = b;
            off.flip(0);
            if a.rank() == 9 {
                prop_assert!(a.solve(&off).is_some());
            } else if let Some(z) = a.solve(&off) {
                prop_assert_eq!(a.mul_vec(&z), off);
            }
        }

        #[test]
        fn mul_is_associative(
            a in matrix_strategy(7, 0.4), b in matrix_strategy(7, 0.4), c in matrix_strategy(7, 0.4)
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            let v = a.col_vec(0);
            prop_assert_eq!(a.mul(&b).mul_vec(&v), a.mul_vec(&b.mul_vec(&v)));
        }
    }
}
