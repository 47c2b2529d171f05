use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lfsm::Lfsm;
use crate::matrix::BitMatrix;

/// Ring register of `n` cells (`m_i <- m_{i+1 mod n}`) plus feedback
/// positions `(i, j)` meaning `a_ij = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub n: usize,
    pub feedbacks: Vec<(usize, usize)>,
}

impl RingSpec {
    pub fn new(n: usize, feedbacks: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig("ring needs at least 2 cells".into()));
        }
        if let Some(&(i, j)) = feedbacks.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::InvalidConfig(format!("feedback ({i},{j}) outside a ring of {n} cells")));
        }
        Ok(Self { n, feedbacks })
    }

    /// Ring skeleton of `n` cells.
    pub fn skeleton(n: usize) -> BitMatrix {
        let mut a = BitMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, (i + 1) % n, true);
        }
        a
    }

    /// Positions that are set are kept; duplicates are idempotent.
    pub fn matrix(&self) -> BitMatrix {
        let mut a = Self::skeleton(self.n);
        for &(i, j) in &self.feedbacks {
            a.set(i, j, true);
        }
        a
    }

    pub fn build(&self) -> Result<Lfsm> {
        Lfsm::autonomous(self.matrix())
    }

    /// Recovers the `RingSpec` from a matrix containing the ring skeleton.
    pub fn from_matrix(a: &BitMatrix) -> Option<Self> {
        let n = a.rows();
        if !a.is_square() || n < 2 || (0..n).any(|i| !a.get(i, (i + 1) % n)) {
            return None;
        }
        let feedbacks = a.coords().into_iter().filter(|&(i, j)| j != (i + 1) % n).collect();
        Some(Self { n, feedbacks })
    }
}

pub fn build_ring(spec: &RingSpec) -> Result<Lfsm> {
    spec.build()
}

impl fmt::Display for RingSpec {
    /// `n=128; (4,78) (5,19)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (i, j) in &self.feedbacks {
            write!(f, " ({i},{j})")?;
        }
        Ok(())
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |rest: &str, why: &str| Error::Format(format!("ring spec at offset {}: {why}", s.len() - rest.len()));
        let (head, rest) = s.split_once(';').unwrap_or((s, ""));
        let size = head.trim().strip_prefix("n").map(|t| t.trim_start()).and_then(|t| t.strip_prefix('='));
        let n = size
            .ok_or_else(|| bad(s, "expected n=<size>"))?
            .trim()
            .parse::<usize>()
            .map_err(|_| bad(s, "bad size"))?;
        let mut feedbacks = Vec::new();
        let mut rest = rest.trim_start();
        while !rest.trim_end().is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad(rest, "expected '('"))?;
            let (pair, tail) = open.split_once(')').ok_or_else(|| bad(rest, "missing ')'"))?;
            let (i, j) = pair.split_once(',').ok_or_else(|| bad(rest, "expected (i,j)"))?;
            let i = i.trim().parse().map_err(|_| bad(rest, "bad row index"))?;
            let j = j.trim().parse().map_err(|_| bad(rest, "bad column index"))?;
            feedbacks.push((i, j));
            rest = tail.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
        }
        RingSpec::new(n, feedbacks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Poly;

    #[test]
    fn parse_and_display() {
        let spec: RingSpec = "n=8; (3,7) (7,2)".parse().unwrap();
        assert_eq!(spec.feedbacks, vec![(3, 7), (7, 2)]);
        assert_eq!(spec.to_string(), "n=8; (3,7) (7,2)");
        assert_eq!(spec.to_string().parse::<RingSpec>().unwrap(), spec);
        assert!("n=8; (3,8)".parse::<RingSpec>().is_err());
        assert!("8; (3,1)".parse::<RingSpec>().is_err());
    }

    #[test]
    fn skeleton_connection_is_xn_plus_1() {
        let l = RingSpec::new(8, vec![]).unwrap().build().unwrap();
        assert_eq!(l.connection_polynomial(), "x^8+1".parse::<Gf2Poly>().unwrap());
    }

    #[test]
    fn duplicates_are_idempotent() {
        let a = RingSpec::new(8, vec![(3, 7), (3, 7), (7, 2)]).unwrap().matrix();
        let b = RingSpec::new(8, vec![(3, 7), (7, 2)]).unwrap().matrix();
        assert_eq!(a, b);
        assert_eq!(RingSpec::from_matrix(&a).unwrap().feedbacks, vec![(3, 7), (7, 2)]);
    }
}
