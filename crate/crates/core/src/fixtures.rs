//! Published example machines, built in code. The JSON and text files under
//! `fixtures/` hold the same data and are checked against these builders.

use crate::families::{fibonacci, galois, BlockOp, RingSpec, WordBlock, WordBlockSpec};
use crate::gf2::{Gf2Poly, RationalSeries};
use crate::lfsm::Lfsm;
use crate::matrix::{BitMatrix, F2Vec};
use crate::rational::{BlockComponent, RationalMatrix, Rlfsm, WindmillSpec};

fn poly(s: &str) -> Gf2Poly {
    s.parse().expect("fixture polynomial")
}

fn frac(num: &str, den: &str) -> RationalSeries {
    RationalSeries::new(poly(num), poly(den)).expect("fixture fraction")
}

/// `x^8 + x^6 + x^5 + x^3 + 1`, primitive.
pub fn q8() -> Gf2Poly {
    poly("x^8+x^6+x^5+x^3+1")
}

/// Galois register over [`q8`].
pub fn t0() -> Lfsm {
    galois(&q8()).expect("valid polynomial")
}

/// Fibonacci register over [`q8`].
pub fn t1() -> Lfsm {
    fibonacci(&q8()).expect("valid polynomial")
}

pub fn t2_spec() -> RingSpec {
    RingSpec::new(8, vec![(3, 7), (7, 2)]).expect("valid ring")
}

/// Ring register over [`q8`] with feedbacks `(3,7)` and `(7,2)`.
pub fn t2() -> Lfsm {
    t2_spec().build().expect("valid ring")
}

const RING128_FEEDBACKS: [(usize, usize); 64] = [
    (4, 78), (5, 19), (8, 44), (9, 106), (10, 70), (12, 14), (14, 115), (15, 55),
    (17, 82), (21, 64), (22, 12), (25, 127), (27, 107), (28, 112), (31, 59), (34, 111),
    (35, 48), (37, 36), (38, 23), (39, 88), (43, 37), (44, 26), (46, 60), (47, 100),
    (49, 24), (50, 25), (51, 2), (51, 27), (55, 124), (57, 113), (59, 71), (61, 29),
    (69, 123), (72, 52), (73, 118), (77, 46), (80, 74), (81, 83), (83, 98), (87, 53),
    (88, 73), (91, 47), (93, 10), (94, 21), (95, 93), (97, 13), (98, 117), (99, 50),
    (100, 3), (101, 104), (104, 1), (105, 114), (106, 108), (107, 105), (109, 4), (111, 28),
    (112, 68), (113, 42), (114, 31), (119, 18), (120, 49), (121, 32), (123, 94), (124, 6),
];

/// 128-cell ring register with 64 feedbacks.
pub fn ring128_spec() -> RingSpec {
    RingSpec::new(128, RING128_FEEDBACKS.to_vec()).expect("valid ring")
}

fn word_spec(n: usize, k: usize, extra: &[(usize, usize, BlockOp)]) -> WordBlockSpec {
    let mut spec = WordBlockSpec::ring(n, k).expect("k divides n");
    spec.blocks.extend(extra.iter().map(|&(row, col, op)| WordBlock { row, col, op }));
    WordBlockSpec::new(spec.n, spec.k, spec.blocks).expect("valid word spec")
}

/// 40-bit register over 8-bit words with three shifted feedbacks.
pub fn word40_spec() -> WordBlockSpec {
    use BlockOp::*;
    word_spec(40, 8, &[(0, 2, Right(1)), (3, 3, Left(3)), (4, 1, Left(1))])
}

/// 512-bit register over 32-bit words with eight shifted feedbacks.
pub fn word512_spec() -> WordBlockSpec {
    use BlockOp::*;
    word_spec(
        512,
        32,
        &[
            (1, 8, Right(14)),
            (2, 6, Left(8)),
            (3, 11, Left(12)),
            (5, 5, Left(2)),
            (7, 14, Right(11)),
            (8, 0, Left(13)),
            (13, 11, Right(13)),
            (15, 2, Right(10)),
        ],
    )
}

/// Four-vane windmill with `alpha = x^5+x^3+x^2+1`, `beta = 1`, shifts `(1,0,0,0)`.
pub fn windmill_e0() -> WindmillSpec {
    WindmillSpec::new(poly("x^5+x^3+x^2+1"), Gf2Poly::one(), vec![1, 0, 0, 0]).expect("valid windmill")
}

/// Connection polynomial of the 12-cell filtered register.
pub fn q12() -> Gf2Poly {
    poly("x^12+x^11+x^9+x^7+x^6+x^5+1")
}

/// Cells read by the filter, in the order of the rational rows.
pub const FILTER_CELLS: [usize; 4] = [0, 5, 7, 9];

pub fn filtered_lfsr() -> Lfsm {
    galois(&q12()).expect("valid polynomial")
}

/// The filtered register seen through its four filter cells.
pub fn filtered_rlfsm() -> Rlfsm {
    Rlfsm::new(
        RationalMatrix::from_entries(
            4,
            &[
                (0, 0, frac("x^4", "1")),
                (0, 1, frac("x^4", "1")),
                (1, 0, frac("x+1", "1")),
                (1, 2, frac("x", "1")),
                (2, 0, frac("x", "1")),
                (2, 3, frac("x", "1")),
                (3, 0, frac("x^2+x", "1")),
            ],
        )
        .expect("4x4"),
    )
}

/// Rational state matching binary state `a` of [`filtered_lfsr`]: the
/// filter cells as bits, the cells between them as carry coefficients.
pub fn filtered_state(a: &F2Vec) -> (F2Vec, Vec<Gf2Poly>) {
    let run = |cells: std::ops::Range<usize>| {
        let mut p = Gf2Poly::zero();
        for (k, c) in cells.enumerate() {
            if a.get(c) {
                p.set_coeff(k, true);
            }
        }
        p
    };
    let m = F2Vec::from_bools(&FILTER_CELLS.map(|c| a.get(c)));
    (m, vec![run(1..5), run(6..7), run(8..9), run(10..12)])
}

/// First rational example: 2x2 with mixed denominators.
pub fn l1() -> Rlfsm {
    Rlfsm::new(
        RationalMatrix::from_entries(2, &[(0, 0, frac("x^2", "x^3+1")), (0, 1, frac("x", "x^2+x+1")), (1, 0, frac("1", "1"))])
            .expect("2x2"),
    )
}

/// Second rational example: 3x3, two entries sharing `x^2+x+1` in one column.
pub fn l2() -> Rlfsm {
    Rlfsm::new(
        RationalMatrix::from_entries(
            3,
            &[
                (0, 0, frac("x+1", "x^3+x+1")),
                (0, 1, frac("x", "x^2+x+1")),
                (1, 0, frac("x^3+x^2", "1")),
                (1, 1, frac("x^2", "1")),
                (1, 2, frac("1", "1")),
                (2, 1, frac("x+1", "x^2+x+1")),
            ],
        )
        .expect("3x3"),
    )
}

/// `A_1 = A_2 = (x^6+x^3+1)/Q8` and `A_3 = (x^7+x^5+x^4+x^2)/Q8` on a cycle.
pub fn three_vane() -> Rlfsm {
    let q = q8().to_string();
    let a1 = frac("x^6+x^3+1", &q);
    let a3 = frac("x^7+x^5+x^4+x^2", &q);
    Rlfsm::new(RationalMatrix::from_entries(3, &[(0, 1, a1.clone()), (1, 2, a1), (2, 0, a3)]).expect("3x3"))
}

fn io(n: usize, input: usize, output: usize) -> (BitMatrix, BitMatrix) {
    let mut b = BitMatrix::zeros(n, 1);
    b.set(input, 0, true);
    let mut c = BitMatrix::zeros(1, n);
    c.set(0, output, true);
    (b, c)
}

/// Ring circuits for [`three_vane`], ordered as the blocks of the binary
/// matrix: entry `(1,2)`, then `(0,1)`, then `(2,0)`.
pub fn three_vane_ring_components() -> Vec<BlockComponent> {
    let part = |row, col, input, output| {
        let (b, c) = io(8, input, output);
        BlockComponent { row, col, circuit: t2().with_io(b, c).expect("8 cells") }
    };
    vec![part(1, 2, 0, 0), part(0, 1, 0, 0), part(2, 0, 2, 3)]
}

/// Galois circuits for [`three_vane`] in the same block order.
pub fn three_vane_galois_components() -> Vec<BlockComponent> {
    let part = |row, col, b: [u8; 8]| {
        let mut bm = BitMatrix::zeros(8, 1);
        for (k, &bit) in b.iter().enumerate() {
            bm.set(k, 0, bit == 1);
        }
        let (_, c) = io(8, 0, 0);
        BlockComponent { row, col, circuit: t0().with_io(bm, c).expect("8 cells") }
    };
    vec![part(1, 2, [1, 0, 0, 1, 0, 0, 1, 0]), part(0, 1, [1, 0, 0, 1, 0, 0, 1, 0]), part(2, 0, [0, 0, 1, 0, 1, 1, 0, 1])]
}

/// The 24-cell binary matrix with ring blocks, written out directly.
pub fn three_vane_tr() -> BitMatrix {
    let mut a = BitMatrix::zeros(24, 24);
    let t2 = t2();
    for k in 0..3 {
        a.xor_block(8 * k, 8 * k, t2.transition());
    }
    a.set(0, 16 + 3, true);
    a.set(8, 0, true);
    a.set(16 + 2, 8, true);
    a
}

/// The 24-cell binary matrix with Galois blocks, written out directly.
pub fn three_vane_tg() -> BitMatrix {
    let mut a = BitMatrix::zeros(24, 24);
    let t0 = t0();
    for k in 0..3 {
        a.xor_block(8 * k, 8 * k, t0.transition());
    }
    // B_1 C_3 feeds block 0 from cell 16, B_2 C_1 feeds block 1 from cell 0.
    for k in [0, 3, 6] {
        a.set(k, 16, true);
        a.set(8 + k, 0, true);
    }
    for k in [2, 4, 5, 7] {
        a.set(16 + k, 8, true);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtered_state_is_in_domain() {
        let a = F2Vec::from_words(12, vec![0xfff]);
        let (m, c) = filtered_state(&a);
        assert!(filtered_rlfsm().with_state(m, c).is_ok());
    }

    #[test]
    fn block_expansions_match_written_matrices() {
        use crate::rational::{expand_rlfsm, ExpansionStrategy};
        let r = three_vane();
        let ring = expand_rlfsm(&r, &ExpansionStrategy::Block(three_vane_ring_components())).unwrap();
        assert_eq!(ring.lfsm.transition(), &three_vane_tr());
        let gal = expand_rlfsm(&r, &ExpansionStrategy::Block(three_vane_galois_components())).unwrap();
        assert_eq!(gal.lfsm.transition(), &three_vane_tg());
    }

    #[test]
    fn block_matrices_have_expected_weights() {
        assert_eq!(three_vane_tr().weight(), 33);
        assert_eq!(three_vane_tg().weight(), 43);
    }
}
