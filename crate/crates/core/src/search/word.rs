use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Candidate, GenConfig, Layout};
use crate::families::{BlockOp, WordBlock, WordBlockSpec};
use crate::lfsm::connection_polynomial;

/// Uniform in `[-k/2, k/2] \ {0}`.
pub fn random_shift(k: usize, rng: &mut ChaCha8Rng) -> i32 {
    let h = (k / 2) as i32;
    let s = rng.gen_range(-h..h);
    if s >= 0 {
        s + 1
    } else {
        s
    }
}

/// Word ring plus `f` blocks at uniform positions with random shifts. A
/// block equal to one already drawn is redrawn, since the two would cancel.
pub fn word_trial(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Candidate> {
    let k = cfg.k.expect("validated word size");
    let words = cfg.n / k;
    let mut spec = WordBlockSpec::ring(cfg.n, k).expect("validated word size");
    let mut extra: Vec<WordBlock> = Vec::with_capacity(cfg.f);
    while extra.len() < cfg.f {
        let s = random_shift(k, rng);
        let b = WordBlock { row: rng.gen_range(0..words), col: rng.gen_range(0..words), op: BlockOp::from_shift(s) };
        if !extra.contains(&b) {
            extra.push(b);
        }
    }
    spec.blocks.extend(extra);
    let q = connection_polynomial(&spec.matrix());
    let primitivity = cfg.accept(&q)?;
    Some(Candidate { layout: Layout::Word(spec), connection: q, primitivity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::worker_rng;

    #[test]
    fn shifts_are_nonzero_and_bounded() {
        let mut rng = worker_rng(11, 0);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..2000 {
            let s = random_shift(8, &mut rng);
            assert!(s != 0 && s.abs() <= 4);
            seen.insert(s);
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![-4, -3, -2, -1, 1, 2, 3, 4]);
    }
}
