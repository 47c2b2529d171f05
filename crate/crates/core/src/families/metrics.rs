use crate::lfsm::connection_polynomial;
use crate::matrix::BitMatrix;

/// Gate-level figures of one clock of a binary transition matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardwareMetrics {
    /// Depth of the deepest two-input XOR tree: `max ceil(log2 w)` over row
    /// weights `w`, with weights 0 and 1 costing nothing.
    pub critical_path: u32,
    /// Largest column weight.
    pub fan_out: usize,
    /// XOR gates: `w_H(A) - n`.
    pub cost: isize,
    /// Hamming weight of the connection polynomial.
    pub weight_q: usize,
}

pub fn xor_depth(w: usize) -> u32 {
    if w <= 1 {
        0
    } else {
        usize::BITS - (w - 1).leading_zeros()
    }
}

pub fn hardware_metrics(a: &BitMatrix) -> HardwareMetrics {
    let n = a.rows();
    let critical_path = (0..n).map(|i| xor_depth(a.row_weight(i))).max().unwrap_or(0);
    let fan_out = a.col_weights().into_iter().max().unwrap_or(0);
    HardwareMetrics {
        critical_path,
        fan_out,
        cost: a.weight() as isize - n as isize,
        weight_q: connection_polynomial(a).weight(),
    }
}
