use crate::error::{Error, Result};
use crate::families::galois_matrix;
use crate::gf2::{Gf2Poly, RationalSeries};
use crate::lfsm::{adjugate_with_det, Lfsm, ADJUGATE_MAX_DIM};
use crate::matrix::{BitMatrix, F2Vec};

/// Transfer of a single-input single-output machine from a zero state:
/// `X C adj(I - XA) B / det(I - XA)`. The factor `X` is the one clock
/// between an input and its first effect on the state.
pub fn vane_transfer(l: &Lfsm) -> Result<RationalSeries> {
    if l.inputs() != 1 || l.outputs() != 1 {
        return Err(Error::Dimension(format!(
            "vane needs one input and one output, got {} and {}",
            l.inputs(),
            l.outputs()
        )));
    }
    let (adj, q) = adjugate_with_det(l.transition(), ADJUGATE_MAX_DIM)?;
    let b: Vec<Gf2Poly> = l.input_matrix().col_vec(0).iter().map(bit_poly).collect();
    let col = adj.mul_vec(&b);
    let mut num = Gf2Poly::zero();
    for j in l.extraction().row_ones(0) {
        num += &col[j];
    }
    RationalSeries::new(num.shl(1), q)
}

/// Transfer from `input_cell` to `output_cell` of transition matrix `a`:
/// `X adj_{out,in} / det(I - XA)`.
pub fn transfer_between(a: &BitMatrix, input_cell: usize, output_cell: usize) -> Result<RationalSeries> {
    let (adj, q) = adjugate_with_det(a, ADJUGATE_MAX_DIM)?;
    if input_cell >= a.rows() || output_cell >= a.rows() {
        return Err(Error::Dimension("cell outside the matrix".into()));
    }
    RationalSeries::new(adj.get(output_cell, input_cell).shl(1), q)
}

fn bit_poly(b: bool) -> Gf2Poly {
    if b {
        Gf2Poly::one()
    } else {
        Gf2Poly::zero()
    }
}

/// Number of cells of the Galois vane realizing `r`.
pub fn vane_length(r: &RationalSeries) -> usize {
    r.num().degree().unwrap_or(0).max(r.den().degree().unwrap_or(0))
}

/// Galois vane with transfer `r`: transition from the denominator, input
/// column `B[k-1] = r_k` from the numerator, output cell 0. Requires
/// `r(0) = 0`.
pub fn compile_vane(r: &RationalSeries) -> Result<Lfsm> {
    if r.constant_term() {
        return Err(Error::Feedthrough(format!("transfer {r} has a nonzero constant term")));
    }
    if r.is_zero() {
        return Err(Error::Feedthrough("zero transfer needs no vane".into()));
    }
    let d = vane_length(r);
    let a = galois_matrix(r.den(), d);
    let mut b = BitMatrix::zeros(d, 1);
    for k in 1..=d {
        if r.num().coeff(k) {
            b.set(k - 1, 0, true);
        }
    }
    let mut c = BitMatrix::zeros(1, d);
    c.set(0, 0, true);
    Lfsm::new(a, b, c, F2Vec::zeros(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(num: &str, den: &str) -> RationalSeries {
        RationalSeries::new(num.parse().unwrap(), den.parse().unwrap()).unwrap()
    }

    #[test]
    fn ring_vane_transfers() {
        // Ring of 8 cells with feedbacks (3,7) and (7,2).
        let a = crate::families::RingSpec::new(8, vec![(3, 7), (7, 2)]).unwrap().matrix();
        let q = "x^8+x^6+x^5+x^3+1";
        assert_eq!(transfer_between(&a, 0, 0).unwrap(), s("x^7+x^4+x", q));
        assert_eq!(transfer_between(&a, 2, 3).unwrap(), s("x^8+x^6+x^5+x^3", q));
        assert_eq!(transfer_between(&a, 3, 2).unwrap(), s("x^2", q));
    }

    #[test]
    fn feedthrough_is_rejected() {
        assert!(matches!(compile_vane(&s("x+1", "x^2+x+1")), Err(Error::Feedthrough(_))));
    }

    #[test]
    fn transfer_matches_simulated_impulse_response() {
        let r = s("x^4+x", "x^3+x+1");
        let mut l = compile_vane(&r).unwrap();
        let mut out = Vec::new();
        for t in 0..40 {
            out.push(l.step(&F2Vec::from_bools(&[t == 0])).unwrap().get(0));
        }
        assert_eq!(r.expand(40).bits(), &out[..]);
    }

    proptest! {
        #[test]
        fn compile_round_trip(num in 1u64..(1 << 10), den in 0u64..(1 << 8)) {
            let num = Gf2Poly::from_u64(num).shl(1);
            let r = RationalSeries::new(num, Gf2Poly::from_u64((den << 1) | 1)).unwrap();
            let l = compile_vane(&r).unwrap();
            prop_assert_eq!(l.n(), vane_length(&r));
            prop_assert_eq!(vane_transfer(&l).unwrap(), r);
        }
    }
}
