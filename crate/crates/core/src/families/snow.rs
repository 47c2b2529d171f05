use crate::lfsm::Lfsm;
use crate::matrix::BitMatrix;

/// Images of the bits of the top byte under multiplication by alpha.
const V: [u32; 8] = [
    0xE19F_CF13, 0x6B97_3726, 0xD687_6E4C, 0x05A7_DC98, 0x0AE7_1199, 0x1467_229B, 0x28CE_449F, 0x5035_8897,
];

/// Multiplication by alpha on 32-bit words: bytes move up one position and
/// the top byte folds back through `V`.
pub fn alpha_matrix() -> BitMatrix {
    let mut m = BitMatrix::zeros(32, 32);
    for r in 0..24 {
        m.set(r + 8, r, true);
    }
    for (c, v) in V.iter().enumerate() {
        for i in 0..32 {
            if (v >> i) & 1 == 1 {
                m.set(i, 24 + c, true);
            }
        }
    }
    m
}

/// The 512-bit register `s_{t+16} = alpha s_t + s_{t+2} + alpha^-1 s_{t+11}`.
pub fn snow2_matrix() -> BitMatrix {
    let alpha = alpha_matrix();
    let alpha_inv = alpha.inverse().expect("alpha is invertible");
    let mut a = BitMatrix::zeros(512, 512);
    for r in 0..15 {
        a.xor_block(32 * r, 32 * (r + 1), &BitMatrix::identity(32));
    }
    a.xor_block(480, 0, &alpha);
    a.xor_block(480, 64, &BitMatrix::identity(32));
    a.xor_block(480, 352, &alpha_inv);
    a
}

pub fn snow2() -> Lfsm {
    Lfsm::autonomous(snow2_matrix()).expect("square matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: multiplication by alpha written directly on bytes.
    fn mul_alpha(w: u32) -> u32 {
        let top = (w >> 24) as u8;
        let mut out = w << 8;
        for (c, v) in V.iter().enumerate() {
            if (top >> c) & 1 == 1 {
                out ^= v;
            }
        }
        out
    }

    #[test]
    fn alpha_matrix_matches_word_operation() {
        let m = alpha_matrix();
        for w in [1u32, 0x8000_0000, 0x1234_5678, 0xdead_beef, 0xff00_0000] {
            let v = crate::matrix::F2Vec::from_words(32, vec![w as u64]);
            assert_eq!(m.mul_vec(&v).words()[0] as u32, mul_alpha(w), "{w:#x}");
        }
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(32));
    }
}
