//! Concrete machine families: classic registers, ring registers, word
//! registers and the SNOW 2.0 register, plus their hardware figures.

pub mod classic;
pub mod metrics;
pub mod ring;
pub mod snow;
pub mod word;

pub use classic::{cellular, fibonacci, fibonacci_matrix, galois, galois_matrix, top_bottom};
pub use metrics::{hardware_metrics, HardwareMetrics};
pub use ring::{build_ring, RingSpec};
pub use snow::{snow2, snow2_matrix};
pub use word::{build_word, BlockOp, WordBlock, WordBlockSpec, WordLfsr};
