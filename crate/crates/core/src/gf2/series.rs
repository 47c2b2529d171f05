use std::fmt;
use std::ops::{Add, Mul};

use super::{BitSequence, Gf2Poly};
use crate::error::{Error, Result};

/// Element of GF(2)(X): reduced `num/den` with `den != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: Gf2Poly,
    den: Gf2Poly,
}

impl Fraction {
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        Ok(Self { num: &num / &g, den: &den / &g })
    }

    pub fn zero() -> Self {
        Self { num: Gf2Poly::zero(), den: Gf2Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Gf2Poly::one())
    }

    pub fn from_poly(p: Gf2Poly) -> Self {
        Self { num: p, den: Gf2Poly::one() }
    }

    pub fn num(&self) -> &Gf2Poly {
        &self.num
    }

    pub fn den(&self) -> &Gf2Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Succeeds when the denominator is invertible in GF(2)[[X]].
    pub fn to_series(&self) -> Result<RationalSeries> {
        RationalSeries::new(self.num.clone(), self.den.clone())
    }
}

impl<'a> Add<&'a Fraction> for &Fraction {
    type Output = Fraction;
    fn add(self, rhs: &'a Fraction) -> Fraction {
        if self.den == rhs.den {
            return Fraction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Fraction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Mul<&'a Fraction> for &Fraction {
    type Output = Fraction;
    fn mul(self, rhs: &'a Fraction) -> Fraction {
        if self.is_zero() || rhs.is_zero() {
            return Fraction::zero();
        }
        Fraction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Power series `num/den` in GF(2)[[X]]: reduced, with `den(0) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: Gf2Poly,
    den: Gf2Poly,
}

impl RationalSeries {
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (&num / &g, &den / &g);
        if !den.constant_term() {
            return Err(Error::NonUnitDenominator(den.to_string()));
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self { num: Gf2Poly::zero(), den: Gf2Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Gf2Poly::one())
    }

    pub fn from_poly(p: Gf2Poly) -> Self {
        Self { num: p, den: Gf2Poly::one() }
    }

    pub fn num(&self) -> &Gf2Poly {
        &self.num
    }

    pub fn den(&self) -> &Gf2Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Since `den(0) = 1` the series starts with `num(0)`.
    pub fn constant_term(&self) -> bool {
        self.num.constant_term()
    }

    pub fn to_fraction(&self) -> Fraction {
        Fraction { num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.constant_term() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Multiplication by `X^k`.
    pub fn shl(&self, k: usize) -> Self {
        Self { num: self.num.shl(k), den: self.den.clone() }
    }

    /// Splits `r = r(0) + X * rest`.
    pub fn split_first(&self) -> (bool, Self) {
        let c = self.constant_term();
        let mut num = self.num.clone();
        if c {
            num += &self.den;
        }
        (c, Self::new(num.shr(1), self.den.clone()).expect("denominator unchanged"))
    }

    /// First `count` coefficients.
    pub fn expand(&self, count: usize) -> BitSequence {
        let mut r = self.num.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let c = r.constant_term();
            if c {
                r += &self.den;
            }
            out.push(c);
            r = r.shr(1);
        }
        BitSequence::from(out)
    }

    /// Purely periodic iff `deg num < deg den`.
    pub fn is_purely_periodic(&self) -> bool {
        self.num.is_zero() || self.num.degree() < self.den.degree()
    }
}

impl<'a> Add<&'a RationalSeries> for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &'a RationalSeries) -> RationalSeries {
        if self.den == rhs.den {
            return RationalSeries::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalSeries::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Mul<&'a RationalSeries> for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &'a RationalSeries) -> RationalSeries {
        if self.is_zero() || rhs.is_zero() {
            return RationalSeries::zero();
        }
        RationalSeries::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Add for RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: RationalSeries) -> RationalSeries {
        &self + &rhs
    }
}

impl Mul for RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: RationalSeries) -> RationalSeries {
        &self * &rhs
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn series_strategy() -> impl Strategy<Value = RationalSeries> {
        (prop::collection::vec(any::<bool>(), 0..24), prop::collection::vec(any::<bool>(), 0..24)).prop_map(
            |(n, mut d)| {
                d.insert(0, true);
                RationalSeries::new(Gf2Poly::from_bits(&n), Gf2Poly::from_bits(&d)).unwrap()
            },
        )
    }

    #[test]
    fn rejects_non_unit_denominator() {
        assert!(matches!(RationalSeries::new(p("1"), p("x")), Err(Error::NonUnitDenominator(_))));
        assert_eq!(RationalSeries::new(p("1"), Gf2Poly::zero()), Err(Error::DivisionByZero));
        // X/X reduces to 1, which is fine.
        assert_eq!(RationalSeries::new(p("x"), p("x")).unwrap(), RationalSeries::one());
    }

    #[test]
    fn expansion_of_simple_series() {
        let s = RationalSeries::new(p("1"), p("x+1")).unwrap();
        assert_eq!(s.expand(5).to_string(), "11111");
        let s = RationalSeries::new(p("1"), p("x^2+x+1")).unwrap();
        assert_eq!(s.expand(9).to_string(), "110110110");
    }

    #[test]
    fn split_first_peels_constant() {
        let s = RationalSeries::new(p("1"), p("x^2+x+1")).unwrap();
        let (c, rest) = s.split_first();
        assert!(c);
        assert_eq!(rest.expand(8).to_string(), "10110110");
    }

    proptest! {
        #[test]
        fn expand_is_ring_homomorphism(a in series_strategy(), b in series_strategy()) {
            let n = 64;
            let sum = (&a + &b).expand(n);
            let ea = a.expand(n);
            let eb = b.expand(n);
            let expect: Vec<bool> = ea.iter().zip(eb.iter()).map(|(x, y)| x ^ y).collect();
            prop_assert_eq!(sum.bits(), &expect[..]);
            // Cauchy product oracle.
            let prod = (&a * &b).expand(n);
            let mut cauchy = vec![false; n];
            for i in 0..n { for j in 0..=i { cauchy[i] ^= ea.get(j) & eb.get(i - j); } }
            prop_assert_eq!(prod.bits(), &cauchy[..]);
        }

        #[test]
        fn reduced_form_is_canonical(a in series_strategy(), c in prop::collection::vec(any::<bool>(), 0..10)) {
            let mut c = c; c.insert(0, true);
            let c = Gf2Poly::from_bits(&c);
            let scaled = RationalSeries::new(a.num() * &c, a.den() * &c).unwrap();
            prop_assert_eq!(scaled, a);
        }

        #[test]
        fn inverse_round_trip(a in series_strategy()) {
            prop_assume!(a.constant_term());
            prop_assert_eq!(&a * &a.inverse().unwrap(), RationalSeries::one());
        }
    }
}
