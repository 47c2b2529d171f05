use std::collections::VecDeque;

use serde::Serialize;

use crate::matrix::BitMatrix;

/// Diameter of the influence graph, edge `j -> i` iff `a_ij = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffusionReport {
    /// `None` when some cell never influences another; serialized as
    /// `"unreachable"`.
    #[serde(serialize_with = "delay_or_unreachable")]
    pub delay: Option<usize>,
    /// Largest distance from each source; `None` if it misses a cell.
    pub eccentricities: Vec<Option<usize>>,
    pub strongly_connected: bool,
    /// A `(from, to)` pair with no path, when one exists.
    pub unreachable: Option<(usize, usize)>,
}

fn delay_or_unreachable<S: serde::Serializer>(d: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_u64(*d as u64),
        None => s.serialize_str("unreachable"),
    }
}

/// Shortest path lengths, in clocks, from `src` to every cell.
pub fn distances_from(a: &BitMatrix, src: usize) -> Vec<Option<usize>> {
    let t = a.transpose();
    bfs(&t, src)
}

fn bfs(t: &BitMatrix, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; t.rows()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(j) = queue.pop_front() {
        let d = dist[j].expect("queued nodes have a distance");
        for i in t.row_ones(j) {
            if dist[i].is_none() {
                dist[i] = Some(d + 1);
                queue.push_back(i);
            }
        }
    }
    dist
}

pub fn diffusion_delay(a: &BitMatrix) -> DiffusionReport {
    assert!(a.is_square(), "transition matrix must be square");
    let t = a.transpose();
    let n = a.rows();
    let mut eccentricities = Vec::with_capacity(n);
    let mut unreachable = None;
    for src in 0..n {
        let dist = bfs(&t, src);
        match dist.iter().position(Option::is_none) {
            Some(dst) => {
                unreachable.get_or_insert((src, dst));
                eccentricities.push(None);
            }
            None => eccentricities.push(dist.iter().flatten().copied().max()),
        }
    }
    let strongly_connected = unreachable.is_none();
    let delay = if strongly_connected { eccentricities.iter().flatten().copied().max() } else { None };
    DiffusionReport { delay, eccentricities, strongly_connected, unreachable }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fibonacci_matrix, galois_matrix};
    use crate::gf2::Gf2Poly;
    use crate::matrix::matrix_strategy;
    use proptest::prelude::*;

    // Oracle: smallest t with every entry of (A | I)^t nonzero, by
    // boolean matrix powers.
    fn delay_oracle(a: &BitMatrix) -> Option<usize> {
        let n = a.rows();
        let mut step = a.clone();
        for i in 0..n {
            step.set(i, i, true);
        }
        let mut reach = BitMatrix::identity(n);
        for t in 0..=n {
            if reach.weight() == n * n {
                return Some(t);
            }
            let mut next = BitMatrix::zeros(n, n);
            for i in 0..n {
                for k in 0..n {
                    if step.get(i, k) {
                        for j in reach.row_ones(k).collect::<Vec<_>>() {
                            next.set(i, j, true);
                        }
                    }
                }
            }
            reach = next;
        }
        None
    }

    #[test]
    fn classic_registers_need_n_minus_one() {
        for n in [4, 8, 17, 64] {
            let q = &(&Gf2Poly::monomial(n) + &Gf2Poly::x()) + &Gf2Poly::one();
            assert_eq!(diffusion_delay(&galois_matrix(&q, n)).delay, Some(n - 1));
            assert_eq!(diffusion_delay(&fibonacci_matrix(&q, n)).delay, Some(n - 1));
        }
    }

    #[test]
    fn complete_graph_is_one() {
        let mut a = BitMatrix::zeros(5, 5);
        for i in 0..5 {
            for j in 0..5 {
                a.set(i, j, true);
            }
        }
        assert_eq!(diffusion_delay(&a).delay, Some(1));
    }

    #[test]
    fn disconnected_reports_a_pair() {
        let a = BitMatrix::identity(3);
        let r = diffusion_delay(&a);
        assert_eq!(r.delay, None);
        assert_eq!(r.unreachable, Some((0, 1)));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["delay"], "unreachable");
    }

    proptest! {
        #[test]
        fn bfs_matches_reachability_powers(a in (2usize..12).prop_flat_map(|n| matrix_strategy(n, 0.25))) {
            prop_assert_eq!(diffusion_delay(&a).delay, delay_oracle(&a));
        }

        #[test]
        fn delay_respects_growth_bound(a in (2usize..16).prop_flat_map(|n| matrix_strategy(n, 0.3))) {
            if let Some(d) = diffusion_delay(&a).delay {
                // Cells reached after t clocks number at most w^t, w counting
                // the source itself.
                let w = (0..a.rows()).map(|i| a.row_weight(i)).max().unwrap().max(1) + 1;
                prop_assert!((w as f64).powi(d as i32) >= a.rows() as f64);
            }
        }
    }
}
