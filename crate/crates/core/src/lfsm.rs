//! Binary linear finite state machines: `m' = A m + B u`, output `C m`.

use crate::error::{Error, Result};
use crate::gf2::{BitSequence, Gf2Poly, RationalSeries};
use crate::matrix::{BitMatrix, F2Vec, PolyMatrix};

/// Default bound on the dimension for adjugate computations.
pub const ADJUGATE_MAX_DIM: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lfsm {
    a: BitMatrix,
    b: BitMatrix,
    c: BitMatrix,
    state: F2Vec,
}

/// Generating series of every cell and every output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesView {
    pub cells: Vec<RationalSeries>,
    pub outputs: Vec<RationalSeries>,
}

/// `det(I - X A)`, padded to degree `n` when `A` is invertible.
pub fn connection_polynomial(a: &BitMatrix) -> Gf2Poly {
    a.charpoly().reverse(a.rows())
}

/// `adj(I - X A)` via `B_0 = I`, `B_t = A B_{t-1} + q_t I`; the coefficient
/// of `X^t` in entry `(i, j)` is `B_t[i][j]`.
pub fn adjugate_i_minus_xa(a: &BitMatrix) -> Result<PolyMatrix> {
    adjugate_i_minus_xa_bounded(a, ADJUGATE_MAX_DIM)
}

pub fn adjugate_i_minus_xa_bounded(a: &BitMatrix, bound: usize) -> Result<PolyMatrix> {
    let (adj, _) = adjugate_with_det(a, bound)?;
    Ok(adj)
}

/// Adjugate together with `det(I - X A)`.
pub fn adjugate_with_det(a: &BitMatrix, bound: usize) -> Result<(PolyMatrix, Gf2Poly)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("transition matrix is {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    if n > bound {
        return Err(Error::TooLarge { n, bound });
    }
    let q = connection_polynomial(a);
    let words = n.div_ceil(64).max(1);
    let mut acc = vec![0u64; n * n * words];
    let mut bt = BitMatrix::identity(n);
    for t in 0..n {
        if t > 0 {
            bt = a.mul(&bt);
            if q.coeff(t) {
                for i in 0..n {
                    bt.toggle(i, i);
                }
            }
        }
        for (i, j) in bt.coords() {
            acc[(i * n + j) * words + t / 64] |= 1 << (t % 64);
        }
    }
    let adj = PolyMatrix::from_fn(n, n, |i, j| {
        let base = (i * n + j) * words;
        Gf2Poly::from_words(acc[base..base + words].to_vec())
    });
    Ok((adj, q))
}

/// `det(I - X (A + E_ij)) = Q_0 + X adj_ji` for the toggled entry `(i, j)`.
pub fn rank1_connection(q0: &Gf2Poly, adj: &PolyMatrix, i: usize, j: usize) -> Gf2Poly {
    q0 + &adj.get(j, i).shl(1)
}

impl Lfsm {
    pub fn new(a: BitMatrix, b: BitMatrix, c: BitMatrix, state: F2Vec) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || n == 0 {
            return Err(Error::Dimension(format!("A must be square and non-empty, got {}x{}", a.rows(), a.cols())));
        }
        if b.rows() != n {
            return Err(Error::Dimension(format!("B has {} rows, expected {n}", b.rows())));
        }
        if c.cols() != n {
            return Err(Error::Dimension(format!("C has {} columns, expected {n}", c.cols())));
        }
        if state.len() != n {
            return Err(Error::Dimension(format!("state has {} cells, expected {n}", state.len())));
        }
        Ok(Self { a, b, c, state })
    }

    /// No inputs, output cell 0, zero state.
    pub fn autonomous(a: BitMatrix) -> Result<Self> {
        let n = a.rows();
        let mut c = BitMatrix::zeros(1, n);
        if n > 0 {
            c.set(0, 0, true);
        }
        Self::new(a, BitMatrix::zeros(n, 0), c, F2Vec::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn inputs(&self) -> usize {
        self.b.cols()
    }

    pub fn outputs(&self) -> usize {
        self.c.rows()
    }

    pub fn transition(&self) -> &BitMatrix {
        &self.a
    }

    pub fn input_matrix(&self) -> &BitMatrix {
        &self.b
    }

    pub fn extraction(&self) -> &BitMatrix {
        &self.c
    }

    pub fn state(&self) -> &F2Vec {
        &self.state
    }

    pub fn set_state(&mut self, state: F2Vec) -> Result<()> {
        if state.len() != self.n() {
            return Err(Error::Dimension(format!("state has {} cells, expected {}", state.len(), self.n())));
        }
        self.state = state;
        Ok(())
    }

    pub fn with_state(mut self, state: F2Vec) -> Result<Self> {
        self.set_state(state)?;
        Ok(self)
    }

    pub fn with_io(self, b: BitMatrix, c: BitMatrix) -> Result<Self> {
        Self::new(self.a, b, c, self.state)
    }

    /// Emits `C m` from the current state, then updates `m <- A m + B u`.
    pub fn step(&mut self, input: &F2Vec) -> Result<F2Vec> {
        if input.len() != self.inputs() {
            return Err(Error::Dimension(format!("input has {} bits, expected {}", input.len(), self.inputs())));
        }
        let out = self.c.mul_vec(&self.state);
        let mut next = self.a.mul_vec(&self.state);
        if self.inputs() > 0 {
            next.xor_assign(&self.b.mul_vec(input));
        }
        self.state = next;
        Ok(out)
    }

    /// Step with zero input.
    pub fn clock(&mut self) -> F2Vec {
        let zero = F2Vec::zeros(self.inputs());
        self.step(&zero).expect("zero input has the right width")
    }

    /// States at clocks `0..=steps`, starting with the current one.
    pub fn trajectory(&mut self, steps: usize) -> Vec<F2Vec> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(self.state.clone());
        for _ in 0..steps {
            self.clock();
            out.push(self.state.clone());
        }
        out
    }

    /// Sequence of every cell over `steps` clocks of autonomous operation.
    pub fn cell_sequences(&self, steps: usize) -> Vec<BitSequence> {
        let mut l = self.clone();
        let mut cols: Vec<Vec<bool>> = vec![Vec::with_capacity(steps); self.n()];
        for _ in 0..steps {
            for (i, col) in cols.iter_mut().enumerate() {
                col.push(l.state.get(i));
            }
            l.clock();
        }
        cols.into_iter().map(BitSequence::from).collect()
    }

    /// Sequence of every output over `steps` clocks of autonomous operation.
    pub fn output_sequences(&self, steps: usize) -> Vec<BitSequence> {
        let mut l = self.clone();
        let mut cols: Vec<Vec<bool>> = vec![Vec::with_capacity(steps); self.outputs()];
        for _ in 0..steps {
            let y = l.clock();
            for (r, col) in cols.iter_mut().enumerate() {
                col.push(y.get(r));
            }
        }
        cols.into_iter().map(BitSequence::from).collect()
    }

    pub fn connection_polynomial(&self) -> Gf2Poly {
        connection_polynomial(&self.a)
    }

    pub fn adjugate(&self) -> Result<PolyMatrix> {
        adjugate_i_minus_xa(&self.a)
    }

    /// `M = adj(I - XA) / Q * (m + X B U)` for finite input polynomials `U`.
    pub fn cell_series(&self, inputs: Option<&[Gf2Poly]>) -> Result<SeriesView> {
        let n = self.n();
        let (adj, q) = adjugate_with_det(&self.a, ADJUGATE_MAX_DIM)?;
        let mut w: Vec<Gf2Poly> =
            (0..n).map(|i| if self.state.get(i) { Gf2Poly::one() } else { Gf2Poly::zero() }).collect();
        if let Some(u) = inputs {
            if u.len() != self.inputs() {
                return Err(Error::Dimension(format!("{} input series for {} inputs", u.len(), self.inputs())));
            }
            for (i, wi) in w.iter_mut().enumerate() {
                for k in self.b.row_ones(i) {
                    *wi += &u[k].shl(1);
                }
            }
        }
        let nums = adj.mul_vec(&w);
        let cells = nums
            .iter()
            .map(|p| RationalSeries::new(p.clone(), q.clone()))
            .collect::<Result<Vec<_>>>()?;
        let outputs = (0..self.outputs())
            .map(|r| {
                let mut acc = Gf2Poly::zero();
                for i in self.c.row_ones(r) {
                    acc += &nums[i];
                }
                RationalSeries::new(acc, q.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesView { cells, outputs })
    }

    /// `A' = P^-1 A P`, `B' = P^-1 B`, `C' = C P`, `m' = P^-1 m`.
    pub fn similar(&self, p: &BitMatrix) -> Result<Lfsm> {
        if p.rows() != self.n() || !p.is_square() {
            return Err(Error::Dimension("change of basis must be n x n".into()));
        }
        let pinv = p.inverse().ok_or(Error::Singular)?;
        Lfsm::new(pinv.mul(&self.a).mul(p), pinv.mul(&self.b), self.c.mul(p), pinv.mul_vec(&self.state))
    }

    /// Checks `X p^(t+1) = p^(t) mod Q` with `p^(t) = adj(I - XA) m^(t)` along
    /// `steps` autonomous clocks.
    pub fn p_sequence_check(&self, steps: usize) -> Result<bool> {
        let (adj, q) = adjugate_with_det(&self.a, ADJUGATE_MAX_DIM)?;
        let to_polys =
            |v: &F2Vec| -> Vec<Gf2Poly> { v.iter().map(|b| if b { Gf2Poly::one() } else { Gf2Poly::zero() }).collect() };
        let mut l = self.clone();
        let mut prev = adj.mul_vec(&to_polys(&l.state));
        for _ in 0..steps {
            l.clock();
            let cur = adj.mul_vec(&to_polys(&l.state));
            for (pc, pp) in cur.iter().zip(&prev) {
                if !(&(&pc.shl(1) + pp) % &q).is_zero() {
                    return Ok(false);
                }
            }
            prev = cur;
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{charpoly_oracle, matrix_strategy};
    use proptest::prelude::*;

    fn random_state(n: usize, bits: &[bool]) -> F2Vec {
        F2Vec::from_bools(&bits[..n])
    }

    #[test]
    fn output_comes_from_pre_update_state() {
        let a = BitMatrix::from_row_strings(&["01", "10"]).unwrap();
        let mut l = Lfsm::autonomous(a).unwrap().with_state(F2Vec::from_bools(&[true, false])).unwrap();
        assert!(l.clock().get(0));
        assert!(!l.state().get(0));
        assert!(!l.clock().get(0));
    }

    #[test]
    fn input_enters_after_output() {
        let a = BitMatrix::zeros(1, 1);
        let b = BitMatrix::identity(1);
        let c = BitMatrix::identity(1);
        let mut l = Lfsm::new(a, b, c, F2Vec::zeros(1)).unwrap();
        assert!(!l.step(&F2Vec::from_bools(&[true])).unwrap().get(0));
        assert!(l.step(&F2Vec::from_bools(&[false])).unwrap().get(0));
        assert!(l.step(&F2Vec::zeros(2)).is_err());
    }

    #[test]
    fn adjugate_bound_is_enforced() {
        let a = BitMatrix::identity(10);
        assert_eq!(adjugate_i_minus_xa_bounded(&a, 8), Err(Error::TooLarge { n: 10, bound: 8 }));
    }

    proptest! {
        #[test]
        fn connection_matches_permanent_oracle(a in (1usize..8).prop_flat_map(|n| matrix_strategy(n, 0.35))) {
            let n = a.rows();
            prop_assert_eq!(connection_polynomial(&a), charpoly_oracle(&a).reverse(n));
            prop_assert_eq!(connection_polynomial(&a), PolyMatrix::i_minus_xa(&a).det());
        }

        #[test]
        fn adjugate_identity(a in (1usize..14).prop_flat_map(|n| matrix_strategy(n, 0.25))) {
            let n = a.rows();
            let (adj, q) = adjugate_with_det(&a, 64).unwrap();
            let m = PolyMatrix::i_minus_xa(&a);
            prop_assert_eq!(m.mul(&adj), PolyMatrix::identity(n).scale(&q));
            prop_assert_eq!(adj.mul(&m), PolyMatrix::identity(n).scale(&q));
        }

        #[test]
        fn adjugate_matches_cofactors(a in (2usize..6).prop_flat_map(|n| matrix_strategy(n, 0.4))) {
            let adj = adjugate_i_minus_xa(&a).unwrap();
            prop_assert_eq!(adj, PolyMatrix::i_minus_xa(&a).adjugate());
        }

        #[test]
        fn rank1_update_matches_recomputation(
            a in (2usize..12).prop_flat_map(|n| matrix_strategy(n, 0.2)), i in 0usize..64, j in 0usize..64
        ) {
            let n = a.rows();
            let (i, j) = (i % n, j % n);
            let (adj, q0) = adjugate_with_det(&a, 64).unwrap();
            let mut b = a.clone();
            b.toggle(i, j);
            prop_assert_eq!(rank1_connection(&q0, &adj, i, j), connection_polynomial(&b));
        }

        #[test]
        fn series_match_simulation(
            a in (1usize..12).prop_flat_map(|n| matrix_strategy(n, 0.3)),
            bits in prop::collection::vec(any::<bool>(), 12),
            u in prop::collection::vec(any::<bool>(), 0..10),
        ) {
            let n = a.rows();
            let mut b = BitMatrix::zeros(n, 1);
            b.set(n - 1, 0, true);
            let c = BitMatrix::identity(n);
            let l = Lfsm::new(a, b, c, random_state(n, &bits)).unwrap();
            let upoly = Gf2Poly::from_bits(&u);
            let view = l.cell_series(Some(&[upoly])).unwrap();
            let steps = 4 * n + 8;
            let mut sim = l.clone();
            let mut outs = vec![Vec::new(); n];
            for t in 0..steps {
                let input = F2Vec::from_bools(&[u.get(t).copied().unwrap_or(false)]);
                let y = sim.step(&input).unwrap();
                for (i, o) in outs.iter_mut().enumerate() { o.push(y.get(i)); }
            }
            for i in 0..n {
                let e = view.cells[i].expand(steps);
                prop_assert_eq!(e.bits(), &outs[i][..]);
                prop_assert_eq!(&view.outputs[i], &view.cells[i]);
            }
        }

        #[test]
        fn similarity_preserves_behaviour(
            a in matrix_strategy(6, 0.4), p in matrix_strategy(6, 0.5), bits in prop::collection::vec(any::<bool>(), 6)
        ) {
            prop_assume!(p.inverse().is_some());
            let l = Lfsm::new(a, BitMatrix::zeros(6, 0), BitMatrix::identity(6), F2Vec::from_bools(&bits)).unwrap();
            let s = l.similar(&p).unwrap();
            prop_assert_eq!(s.connection_polynomial(), l.connection_polynomial());
            prop_assert_eq!(s.output_sequences(40), l.output_sequences(40));
        }

        #[test]
        fn p_sequence_congruence(a in (1usize..10).prop_flat_map(|n| matrix_strategy(n, 0.3)), bits in prop::collection::vec(any::<bool>(), 10)) {
            let n = a.rows();
            let l = Lfsm::autonomous(a).unwrap().with_state(random_state(n, &bits)).unwrap();
            prop_assert!(l.p_sequence_check(3 * n).unwrap());
        }
    }
}
