use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rlfsm::Rlfsm;
use crate::error::{Error, Result};
use crate::gf2::{min_poly, Gf2Poly, RationalSeries};

/// Cyclic cascade of `v` vanes: entry `(j, j+1 mod v)` is `(alpha/beta) X^{i_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindmillSpec {
    pub alpha: Gf2Poly,
    pub beta: Gf2Poly,
    pub shifts: Vec<usize>,
}

impl WindmillSpec {
    pub fn new(alpha: Gf2Poly, beta: Gf2Poly, shifts: Vec<usize>) -> Result<Self> {
        if !beta.constant_term() {
            return Err(Error::InvalidConfig(format!("beta = {beta} vanishes at 0")));
        }
        if shifts.is_empty() {
            return Err(Error::InvalidConfig("a windmill needs at least one vane".into()));
        }
        if alpha.is_zero() {
            return Err(Error::InvalidConfig("alpha is zero".into()));
        }
        Ok(Self { alpha, beta, shifts })
    }

    pub fn v(&self) -> usize {
        self.shifts.len()
    }

    /// `n = sum_j i_j`.
    pub fn total_shift(&self) -> usize {
        self.shifts.iter().sum()
    }

    /// Cells of the Galois vane for `X (alpha/beta) X^{i_j}`:
    /// `max(deg alpha + i_j + 1, deg beta)`.
    pub fn vane_lengths(&self) -> Vec<usize> {
        let da = self.alpha.degree().unwrap_or(0);
        let db = self.beta.degree().unwrap_or(0);
        self.shifts.iter().map(|i| (da + i + 1).max(db)).collect()
    }

    /// `det(I - XA) = 1 + X^{n+v} (alpha/beta)^v`, one factor `X` per edge
    /// of the cycle.
    pub fn predicted_det(&self) -> RationalSeries {
        let v = self.v() as u32;
        let bv = self.beta.pow(v);
        let num = &bv + &self.alpha.pow(v).shl(self.total_shift() + self.v());
        RationalSeries::new(num, bv).expect("beta(0) = 1")
    }

    pub fn matrix(&self) -> RationalMatrix {
        let v = self.v();
        let mut a = RationalMatrix::zeros(v);
        for (j, &i) in self.shifts.iter().enumerate() {
            let e = RationalSeries::new(self.alpha.shl(i), self.beta.clone()).expect("beta(0) = 1");
            a.set(j, (j + 1) % v, e);
        }
        a
    }
}

pub fn build_windmill(spec: &WindmillSpec) -> Rlfsm {
    Rlfsm::new(spec.matrix())
}

/// Result of the interleaving search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleaveReport {
    /// Output `i` goes to position `sigma[i]` of each block of `v` bits.
    pub sigma: Vec<usize>,
    pub ok: bool,
    pub min_poly: Gf2Poly,
    pub connection: Gf2Poly,
}

impl InterleaveReport {
    pub fn linear_complexity(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }
}

/// Largest vane count accepted by [`windmill_interleave_check`].
pub const INTERLEAVE_MAX_VANES: usize = 8;

/// Interleaves the cell streams as `s_{vt + sigma(i)} = m_i(t)` and tests
/// whether the minimal polynomial divides `Q(X^v)`. Among passing
/// permutations the one with the smallest linear complexity is returned,
/// ties going to the lexicographically first.
pub fn windmill_interleave_check(r: &Rlfsm, horizon: usize) -> Result<InterleaveReport> {
    let v = r.n();
    if v > INTERLEAVE_MAX_VANES {
        return Err(Error::TooLarge { n: v, bound: INTERLEAVE_MAX_VANES });
    }
    let q = r.connection()?.numerator().clone();
    let needed = 2 * q.degree().unwrap_or(0);
    if horizon < needed {
        return Err(Error::InsufficientHorizon { needed });
    }
    let target = q.compose_monomial(v);
    let streams = r.output_sequences(horizon);
    let mut sigma: Vec<usize> = (0..v).collect();
    let mut best: Option<InterleaveReport> = None;
    let mut first: Option<InterleaveReport> = None;
    loop {
        let mut s = vec![false; v * horizon];
        for (i, stream) in streams.iter().enumerate() {
            for (t, &b) in stream.iter().enumerate() {
                s[v * t + sigma[i]] = b;
            }
        }
        let p = min_poly(&s);
        let ok = p.divides(&target);
        let report = InterleaveReport { sigma: sigma.clone(), ok, min_poly: p, connection: q.clone() };
        if first.is_none() {
            first = Some(report.clone());
        }
        if report.ok && best.as_ref().map_or(true, |b| report.linear_complexity() < b.linear_complexity()) {
            best = Some(report);
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(best.or(first).expect("at least one permutation"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
