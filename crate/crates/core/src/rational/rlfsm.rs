use super::matrix::{fraction_solve, rational_connection, RationalConnection, RationalMatrix};
use crate::error::{Error, Result};
use crate::gf2::{Fraction, Gf2Poly, RationalSeries};
use crate::matrix::{BitMatrix, F2Vec};

/// Rational linear finite state machine. Cell `i` holds a bit `m_i` and a
/// carry numerator `c_i` over the row denominator `Q_i`.
///
/// One clock computes `N_i = sum_j m_j R_ij + c_i`, then
/// `m_i' = N_i(0)` and `c_i' = (N_i + m_i' Q_i) / X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rlfsm {
    a: RationalMatrix,
    row_den: Vec<Gf2Poly>,
    row_num: Vec<Vec<Gf2Poly>>,
    extraction: Option<BitMatrix>,
    m: F2Vec,
    carries: Vec<Gf2Poly>,
}

impl Rlfsm {
    /// Zero state; outputs are the cell bits.
    pub fn new(a: RationalMatrix) -> Self {
        let n = a.n();
        let row_den = (0..n).map(|i| a.row_denominator(i)).collect();
        let row_num = (0..n).map(|i| a.row_numerators(i)).collect();
        Self { a, row_den, row_num, extraction: None, m: F2Vec::zeros(n), carries: vec![Gf2Poly::zero(); n] }
    }

    pub fn with_extraction(mut self, c: BitMatrix) -> Result<Self> {
        if c.cols() != self.n() {
            return Err(Error::Dimension(format!("extraction has {} columns, expected {}", c.cols(), self.n())));
        }
        self.extraction = Some(c);
        Ok(self)
    }

    /// Sets the state after checking `deg c_i < carry_bound(i)`.
    pub fn with_state(mut self, m: F2Vec, carries: Vec<Gf2Poly>) -> Result<Self> {
        self.set_state(m, carries)?;
        Ok(self)
    }

    pub fn set_state(&mut self, m: F2Vec, carries: Vec<Gf2Poly>) -> Result<()> {
        let n = self.n();
        if m.len() != n || carries.len() != n {
            return Err(Error::Dimension(format!("state needs {n} bits and {n} carries")));
        }
        for (i, c) in carries.iter().enumerate() {
            if c.degree().map_or(false, |d| d >= self.a.carry_bound(i)) {
                return Err(Error::CarryOutOfDomain(i));
            }
        }
        self.m = m;
        self.carries = carries;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn extraction(&self) -> Option<&BitMatrix> {
        self.extraction.as_ref()
    }

    pub fn bits(&self) -> &F2Vec {
        &self.m
    }

    pub fn carries(&self) -> &[Gf2Poly] {
        &self.carries
    }

    pub fn row_denominators(&self) -> &[Gf2Poly] {
        &self.row_den
    }

    pub fn carries_in_domain(&self) -> bool {
        self.carries
            .iter()
            .enumerate()
            .all(|(i, c)| c.degree().map_or(true, |d| d < self.a.carry_bound(i)))
    }

    fn output(&self) -> F2Vec {
        match &self.extraction {
            Some(c) => c.mul_vec(&self.m),
            None => self.m.clone(),
        }
    }

    /// Emits the output of the current state, then clocks once.
    pub fn step(&mut self) -> F2Vec {
        let out = self.output();
        let n = self.n();
        let mut m = F2Vec::zeros(n);
        let mut carries = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.carries[i].clone();
            for j in self.m.ones() {
                acc += &self.row_num[i][j];
            }
            let bit = acc.constant_term();
            if bit {
                acc += &self.row_den[i];
            }
            m.set(i, bit);
            carries.push(acc.shr(1));
        }
        self.m = m;
        self.carries = carries;
        out
    }

    /// Output sequences over `steps` clocks, one per output.
    pub fn output_sequences(&self, steps: usize) -> Vec<Vec<bool>> {
        let mut r = self.clone();
        let width = self.extraction.as_ref().map_or(self.n(), |c| c.rows());
        let mut out = vec![Vec::with_capacity(steps); width];
        for _ in 0..steps {
            let y = r.step();
            for (k, o) in out.iter_mut().enumerate() {
                o.push(y.get(k));
            }
        }
        out
    }

    /// Cell bit streams `m_i(t)` over `steps` clocks, ignoring extraction.
    pub fn cell_streams(&self, steps: usize) -> Vec<Vec<bool>> {
        let mut r = self.clone();
        r.extraction = None;
        r.output_sequences(steps)
    }

    /// `M = (I - XA)^-1 (m + X c / Q)` from the current state.
    pub fn cell_series(&self) -> Result<Vec<RationalSeries>> {
        let n = self.n();
        let rhs: Vec<Fraction> = (0..n)
            .map(|i| {
                let mut num = self.carries[i].shl(1);
                if self.m.get(i) {
                    num += &self.row_den[i];
                }
                Fraction::new(num, self.row_den[i].clone()).expect("row denominator is nonzero")
            })
            .collect();
        let sol = fraction_solve(self.a.i_minus_xa_fractions(), rhs).ok_or(Error::Singular)?;
        sol.iter().map(Fraction::to_series).collect()
    }

    pub fn connection(&self) -> Result<RationalConnection> {
        rational_connection(&self.a)
    }
}
