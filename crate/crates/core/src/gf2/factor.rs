use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Prime factorizations of `2^n - 1`, with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorTable {
    entries: BTreeMap<usize, Vec<BigUint>>,
}

const BUILTIN: &[(usize, &[&str])] = &[
    (1, &[]),
    (2, &["3"]),
    (3, &["7"]),
    (4, &["3", "5"]),
    (5, &["31"]),
    (6, &["3", "3", "7"]),
    (7, &["127"]),
    (8, &["3", "5", "17"]),
    (9, &["7", "73"]),
    (10, &["3", "11", "31"]),
    (11, &["23", "89"]),
    (12, &["3", "3", "5", "7", "13"]),
    (13, &["8191"]),
    (14, &["3", "43", "127"]),
    (15, &["7", "31", "151"]),
    (16, &["3", "5", "17", "257"]),
    (17, &["131071"]),
    (18, &["3", "3", "3", "7", "19", "73"]),
    (19, &["524287"]),
    (20, &["3", "5", "5", "11", "31", "41"]),
    (21, &["7", "7", "127", "337"]),
    (22, &["3", "23", "89", "683"]),
    (23, &["47", "178481"]),
    (24, &["3", "3", "5", "7", "13", "17", "241"]),
    (32, &["3", "5", "17", "257", "65537"]),
    (40, &["3", "5", "5", "11", "17", "31", "41", "61681"]),
    (64, &["3", "5", "17", "257", "641", "65537", "6700417"]),
    (128, &["3", "5", "17", "257", "641", "65537", "274177", "6700417", "67280421310721"]),
];

pub fn mersenne(n: usize) -> BigUint {
    (BigUint::one() << n) - BigUint::one()
}

impl FactorTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Degrees 1..=24, 32, 40, 64 and 128.
    pub fn builtin() -> Self {
        let mut t = Self::empty();
        for (n, primes) in BUILTIN {
            let ps = primes.iter().map(|p| p.parse().expect("builtin prime")).collect();
            t.insert(*n, ps).expect("builtin factorization");
        }
        t
    }

    /// Adds a factorization after checking that the product is `2^n - 1`.
    /// Primality of the factors is the caller's responsibility.
    pub fn insert(&mut self, n: usize, mut primes: Vec<BigUint>) -> Result<()> {
        if n == 0 {
            return Err(Error::BadFactorization { degree: 0, reason: "degree must be positive".into() });
        }
        let product = primes.iter().fold(BigUint::one(), |acc, p| acc * p);
        if product != mersenne(n) {
            return Err(Error::BadFactorization { degree: n, reason: "product differs from 2^n-1".into() });
        }
        if primes.iter().any(|p| p <= &BigUint::one()) {
            return Err(Error::BadFactorization { degree: n, reason: "factor below 2".into() });
        }
        primes.sort();
        self.entries.insert(n, primes);
        Ok(())
    }

    pub fn get(&self, n: usize) -> Option<&[BigUint]> {
        self.entries.get(&n).map(|v| v.as_slice())
    }

    pub fn contains(&self, n: usize) -> bool {
        self.entries.contains_key(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Distinct prime divisors of `2^n - 1`.
    pub fn distinct_primes(&self, n: usize) -> Option<Vec<BigUint>> {
        let mut ps = self.get(n)?.to_vec();
        ps.dedup();
        Some(ps)
    }

    /// Euler's totient of `2^n - 1`.
    pub fn phi_mersenne(&self, n: usize) -> Option<BigUint> {
        let ps = self.get(n)?;
        let mut phi = BigUint::one();
        let mut i = 0;
        while i < ps.len() {
            let p = &ps[i];
            let mut j = i;
            while j < ps.len() && &ps[j] == p {
                j += 1;
            }
            phi *= p - BigUint::one();
            for _ in 1..(j - i) {
                phi *= p;
            }
            i = j;
        }
        Some(phi)
    }

    pub fn merge(&mut self, other: FactorTable) {
        self.entries.extend(other.entries);
    }

    /// JSON object mapping a degree to an array of decimal primes, e.g.
    /// `{"8": ["3", "5", "17"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, Vec<String>> =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("factor file: {e}")))?;
        let mut t = Self::empty();
        for (deg, primes) in raw {
            let n: usize = deg.parse().map_err(|_| Error::Format(format!("factor file: bad degree {deg:?}")))?;
            let ps = primes
                .iter()
                .map(|p| p.parse::<BigUint>().map_err(|_| Error::Format(format!("factor file: bad prime {p:?}"))))
                .collect::<Result<Vec<_>>>()?;
            t.insert(n, ps)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let raw: BTreeMap<String, Vec<String>> = self
            .entries
            .iter()
            .map(|(n, ps)| (n.to_string(), ps.iter().map(|p| p.to_string()).collect()))
            .collect();
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    // Oracle: trial division primality, adequate for factors below 2^64.
    fn is_prime_small(p: &BigUint) -> bool {
        let Some(p) = p.to_u64_digits().first().copied().filter(|_| p.bits() <= 64) else { return true };
        if p < 2 {
            return false;
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return false;
            }
            d += 1;
            if d > 5_000_000 {
                return true;
            }
        }
        true
    }

    #[test]
    fn builtin_products_and_primes() {
        let t = FactorTable::builtin();
        for n in t.degrees() {
            let prod = t.get(n).unwrap().iter().fold(BigUint::one(), |a, p| a * p);
            assert_eq!(prod, mersenne(n), "degree {n}");
            for p in t.get(n).unwrap() {
                assert!(is_prime_small(p), "{p} in degree {n}");
            }
        }
    }

    #[test]
    fn phi_values() {
        let t = FactorTable::builtin();
        assert_eq!(t.phi_mersenne(8).unwrap(), BigUint::from(128u32));
        assert_eq!(t.phi_mersenne(12).unwrap(), BigUint::from(1728u32));
        assert_eq!(t.phi_mersenne(16).unwrap(), BigUint::from(32768u32));
        // Oracle: count units by gcd for small n.
        for n in 2..=12usize {
            let m = (1u64 << n) - 1;
            let count = (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64;
            assert_eq!(t.phi_mersenne(n).unwrap(), BigUint::from(count), "n = {n}");
        }
    }

    #[test]
    fn rejects_wrong_product() {
        let mut t = FactorTable::empty();
        assert!(t.insert(8, vec![3u32.into(), 85u32.into()]).is_ok());
        assert!(t.insert(8, vec![3u32.into(), 5u32.into()]).is_err());
        assert!(FactorTable::from_json(r#"{"4": ["3", "7"]}"#).is_err());
        assert!(FactorTable::from_json(r#"{"4": ["3", "5"]}"#).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let t = FactorTable::builtin();
        assert_eq!(FactorTable::from_json(&t.to_json()).unwrap(), t);
    }
}
