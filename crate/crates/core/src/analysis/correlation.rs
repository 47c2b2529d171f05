use num_integer::Integer;
use num_rational::Rational64;

use crate::lfsm::Lfsm;
use crate::matrix::F2Vec;

/// `C(tau) = sum_{i < N} (-1)^{a_{i+tau} + b_i}`, `N = lcm(s, t)`, with `a`
/// and `b` given by one period each.
pub fn cross_correlation(a: &[bool], b: &[bool], tau: usize) -> i64 {
    let (s, t) = (a.len(), b.len());
    let n = s.lcm(&t);
    (0..n).map(|i| if a[(i + tau) % s] == b[i % t] { 1 } else { -1 }).sum()
}

/// `(A - D) / N` with `A` agreements and `D` disagreements over `N` terms.
pub fn correlation(a: &[bool], b: &[bool]) -> Rational64 {
    let n = a.len().lcm(&b.len()) as i64;
    Rational64::new(cross_correlation(a, b, 0), n)
}

/// Correlation between the state streams of an initialization and its
/// flip at `bit`, for `t = 0..=horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvalancheProfile {
    /// `w_H(A^t e_bit)`.
    pub differences: Vec<usize>,
    /// `1 - 2 w_H(A^t e_bit) / n`.
    pub correlation: Vec<Rational64>,
}

/// By linearity the difference trajectory is `A^t e_bit`, independent of
/// the initialization.
pub fn avalanche_correlation(l: &Lfsm, bit: usize, horizon: usize) -> AvalancheProfile {
    let n = l.n();
    let a = l.transition();
    let mut d = F2Vec::unit(n, bit);
    let mut differences = Vec::with_capacity(horizon + 1);
    for _ in 0..=horizon {
        differences.push(d.weight());
        d = a.mul_vec(&d);
    }
    let correlation = differences.iter().map(|&w| Rational64::new(n as i64 - 2 * w as i64, n as i64)).collect();
    AvalancheProfile { differences, correlation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::distances_from;
    use crate::matrix::matrix_strategy;
    use proptest::prelude::*;

    #[test]
    fn self_and_complement() {
        let a = [true, false, false, true, true];
        let c: Vec<bool> = a.iter().map(|b| !b).collect();
        assert_eq!(correlation(&a, &a), Rational64::from_integer(1));
        assert_eq!(correlation(&a, &c), Rational64::from_integer(-1));
    }

    #[test]
    fn mixed_periods_use_the_lcm() {
        let a = [true, false];
        let b = [true, true, false];
        // Over 6 terms: a = 101010, b = 110110 agree at 0, 3, 4, 5... count directly.
        let agree = (0..6).filter(|&i| a[i % 2] == b[i % 3]).count() as i64;
        assert_eq!(cross_correlation(&a, &b, 0), 2 * agree - 6);
    }

    #[test]
    fn m_sequence_shift_is_minus_one() {
        let q: crate::gf2::Gf2Poly = "x^8+x^6+x^5+x^3+1".parse().unwrap();
        let s = crate::gf2::RationalSeries::new(crate::gf2::Gf2Poly::one(), q).unwrap().expand(255);
        for tau in [1, 7, 100, 254] {
            assert_eq!(cross_correlation(s.bits(), s.bits(), tau), -1);
        }
    }

    proptest! {
        #[test]
        fn difference_trajectory_is_linear(
            a in (2usize..32).prop_flat_map(|n| matrix_strategy(n, 0.2)),
            seed in any::<u64>(),
            bit_seed in any::<usize>(),
        ) {
            let n = a.rows();
            let bit = bit_seed % n;
            let init = F2Vec::from_bools(&(0..n).map(|i| (seed >> (i % 64)) & 1 == 1).collect::<Vec<_>>());
            let mut flipped = init.clone();
            flipped.flip(bit);
            let mut x = Lfsm::autonomous(a.clone()).unwrap().with_state(init).unwrap();
            let mut y = Lfsm::autonomous(a.clone()).unwrap().with_state(flipped).unwrap();
            let profile = avalanche_correlation(&x, bit, 3 * n);
            let dist = distances_from(&a, bit);
            for t in 0..=3 * n {
                let diff = x.state().xor(y.state());
                prop_assert_eq!(diff.weight(), profile.differences[t]);
                for j in diff.ones() {
                    // A cell differs only once the flipped bit can reach it.
                    prop_assert!(dist[j].map_or(false, |d| d <= t));
                }
                x.clock();
                y.clock();
            }
            prop_assert_eq!(profile.correlation[0], Rational64::new(n as i64 - 2, n as i64));
        }
    }
}
