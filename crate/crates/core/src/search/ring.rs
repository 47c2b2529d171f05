use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Candidate, GenConfig, Layout};
use crate::families::RingSpec;
use crate::lfsm::{adjugate_with_det, connection_polynomial, rank1_connection, ADJUGATE_MAX_DIM};
use crate::matrix::BitMatrix;

/// Adds `f` feedbacks to the ring `a`, each at a uniform position whose row
/// and column still have weight 1. Drawing a skeleton position is a no-op.
/// Returns `None` when the only free positions lie on the skeleton.
pub fn place_feedbacks(a: &mut BitMatrix, f: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let n = a.rows();
    let mut row_free: Vec<bool> = (0..n).map(|i| a.row_weight(i) == 1).collect();
    let mut col_free: Vec<bool> = (0..n).map(|j| a.col_weight(j) == 1).collect();
    let mut placed = Vec::with_capacity(f);
    while placed.len() < f {
        let rows: Vec<usize> = (0..n).filter(|&i| row_free[i]).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| col_free[j]).collect();
        if !rows.iter().any(|&i| cols.iter().any(|&j| !a.get(i, j))) {
            return None;
        }
        loop {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if row_free[i] && col_free[j] && !a.get(i, j) {
                a.set(i, j, true);
                row_free[i] = false;
                col_free[j] = false;
                placed.push((i, j));
                break;
            }
        }
    }
    Some(placed)
}

pub fn ring_trial_naive(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Candidate> {
    let mut a = RingSpec::skeleton(cfg.n);
    let feedbacks = place_feedbacks(&mut a, cfg.f, rng)?;
    let q = connection_polynomial(&a);
    let primitivity = cfg.accept(&q)?;
    Some(Candidate { layout: Layout::Ring(RingSpec { n: cfg.n, feedbacks }), connection: q, primitivity })
}

/// One adjugate of `I - XA` after `f - 1` feedbacks; every valid last
/// position `(i, j)` is then tested as `Q_0 + X adj_ji`, in random order.
pub fn ring_trial_cofactor(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Candidate> {
    let n = cfg.n;
    let mut a = RingSpec::skeleton(n);
    let mut feedbacks = place_feedbacks(&mut a, cfg.f - 1, rng)?;
    let (adj, q0) = adjugate_with_det(&a, ADJUGATE_MAX_DIM.max(n)).expect("square matrix within the bound");
    let rows: Vec<usize> = (0..n).filter(|&i| a.row_weight(i) == 1).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| a.col_weight(j) == 1).collect();
    let mut candidates: Vec<(usize, usize)> =
        rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).filter(|&(i, j)| !a.get(i, j)).collect();
    candidates.shuffle(rng);
    for (i, j) in candidates {
        let q = rank1_connection(&q0, &adj, i, j);
        if let Some(primitivity) = cfg.accept(&q) {
            feedbacks.push((i, j));
            return Some(Candidate { layout: Layout::Ring(RingSpec { n, feedbacks }), connection: q, primitivity });
        }
    }
    None
}
