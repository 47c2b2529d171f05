use super::Gf2Poly;

/// Shortest recurrence generating a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplexity {
    /// Connection polynomial `C` with `C(0) = 1`.
    pub connection: Gf2Poly,
    /// Linear complexity `L`; `deg C <= L`.
    pub complexity: usize,
}

/// Berlekamp-Massey over GF(2). The all-zero sequence yields `C = 1, L = 0`.
pub fn berlekamp_massey(s: &[bool]) -> LinearComplexity {
    let mut c = Gf2Poly::one();
    let mut b = Gf2Poly::one();
    let mut l = 0usize;
    let mut m = 1usize;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in c.exponents().skip_while(|&e| e == 0) {
            if i > l {
                break;
            }
            d ^= s[n - i];
        }
        if !d {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            c += &b.shl(m);
            l = n + 1 - l;
            b = t;
            m = 1;
        } else {
            c += &b.shl(m);
            m += 1;
        }
    }
    LinearComplexity { connection: c, complexity: l }
}

/// Connection polynomial of the shortest LFSR generating `s`.
pub fn min_poly(s: &[bool]) -> Gf2Poly {
    berlekamp_massey(s).connection
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::RationalSeries;
    use proptest::prelude::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn satisfies(s: &[bool], c: &Gf2Poly, l: usize) -> bool {
        (l..s.len()).all(|n| {
            let mut acc = s[n];
            for i in 1..=l {
                if c.coeff(i) {
                    acc ^= s[n - i];
                }
            }
            !acc
        })
    }

    // Oracle: exhaustive search for the shortest recurrence.
    fn brute_complexity(s: &[bool]) -> usize {
        for l in 0..=s.len() {
            for taps in 0u32..(1 << l) {
                let c = Gf2Poly::from_u64(((taps as u64) << 1) | 1);
                if satisfies(s, &c, l) {
                    return l;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(min_poly(&bits("111111")).to_string(), "x+1");
        assert_eq!(min_poly(&bits("110110")).to_string(), "x^2+x+1");
        assert_eq!(min_poly(&bits("000000")), Gf2Poly::one());
        assert_eq!(min_poly(&[]), Gf2Poly::one());
    }

    #[test]
    fn recovers_denominator_of_series() {
        let den: Gf2Poly = "x^8+x^6+x^5+x^3+1".parse().unwrap();
        let num: Gf2Poly = "x^5+x+1".parse().unwrap();
        let s = RationalSeries::new(num, den.clone()).unwrap().expand(16);
        assert_eq!(min_poly(s.bits()), den);
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(s in prop::collection::vec(any::<bool>(), 0..13)) {
            let r = berlekamp_massey(&s);
            prop_assert_eq!(r.complexity, brute_complexity(&s));
            prop_assert!(r.connection.constant_term());
            prop_assert!(r.connection.degree().unwrap() <= r.complexity);
            prop_assert!(satisfies(&s, &r.connection, r.complexity));
        }
    }
}
