use std::collections::BTreeMap;

use serde::Serialize;

/// Lags beyond this are not computed by [`sequence_stats`].
pub const AUTOCORRELATION_MAX_LAGS: usize = 4096;

/// Statistics over one period of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceStats {
    pub period: usize,
    pub ones: usize,
    pub zeros: usize,
    /// Run length to count, cyclic over the period.
    pub runs_of_ones: BTreeMap<usize, usize>,
    pub runs_of_zeros: BTreeMap<usize, usize>,
    /// `C(tau)` for `tau < min(period, AUTOCORRELATION_MAX_LAGS)`.
    pub autocorrelation: Vec<i64>,
}

/// Smallest `p` such that `s` is `p`-periodic over its whole length, among
/// `p <= len / 2`; otherwise the length.
pub fn detect_period(s: &[bool]) -> usize {
    (1..=s.len() / 2).find(|&p| (p..s.len()).all(|i| s[i] == s[i - p])).unwrap_or(s.len())
}

/// `C(tau) = sum_{i < p} (-1)^{a_{i+tau} + a_i}` over one period.
pub fn autocorrelation(period: &[bool], tau: usize) -> i64 {
    let p = period.len();
    (0..p).map(|i| if period[(i + tau) % p] == period[i] { 1 } else { -1 }).sum()
}

/// Cyclic runs of one period. A constant period is a single run.
pub fn runs(period: &[bool]) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let mut ones = BTreeMap::new();
    let mut zeros = BTreeMap::new();
    let p = period.len();
    if p == 0 {
        return (ones, zeros);
    }
    let Some(start) = (0..p).find(|&i| period[i] != period[(i + p - 1) % p]) else {
        let hist = if period[0] { &mut ones } else { &mut zeros };
        hist.insert(p, 1);
        return (ones, zeros);
    };
    let mut len = 0;
    for k in 0..p {
        let i = (start + k) % p;
        len += 1;
        if k + 1 == p || period[(i + 1) % p] != period[i] {
            let hist = if period[i] { &mut ones } else { &mut zeros };
            *hist.entry(len).or_insert(0) += 1;
            len = 0;
        }
    }
    (ones, zeros)
}

/// Statistics over `declared_period` bits, or over the detected period.
pub fn sequence_stats(s: &[bool], declared_period: Option<usize>) -> SequenceStats {
    let period = declared_period.unwrap_or_else(|| detect_period(s));
    assert!(period <= s.len(), "sequence shorter than its declared period");
    let one = &s[..period];
    let ones = one.iter().filter(|&&b| b).count();
    let (runs_of_ones, runs_of_zeros) = runs(one);
    let lags = period.min(AUTOCORRELATION_MAX_LAGS);
    let autocorrelation = (0..lags).map(|tau| autocorrelation(one, tau)).collect();
    SequenceStats { period, ones, zeros: period - ones, runs_of_ones, runs_of_zeros, autocorrelation }
}
