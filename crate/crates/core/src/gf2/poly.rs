use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Polynomial over GF(2). Bit `i` of the packed words is the coefficient of
/// `X^i`; trailing zero words are never stored, so equality is structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

#[inline]
fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// `dst ^= src * X^shift`; `dst` must already be long enough.
#[inline]
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w << bs;
            let hi = w >> (64 - bs);
            if hi != 0 {
                dst[i + ws + 1] ^= hi;
            }
        }
    }
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    words.get(i / 64).map_or(false, |w| (w >> (i % 64)) & 1 == 1)
}

fn words_degree(words: &[u64]) -> Option<usize> {
    let top = words.iter().rposition(|&w| w != 0)?;
    Some(top * 64 + 63 - words[top].leading_zeros() as usize)
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        Self { words }
    }

    pub fn from_u64(w: u64) -> Self {
        Self::from_words(vec![w])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    /// Sum of `X^e`; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip_coeff(e);
        }
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_exponents(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        words_degree(&self.words)
    }

    pub fn coeff(&self, i: usize) -> bool {
        bit(&self.words, i)
    }

    pub fn set_coeff(&mut self, i: usize, v: bool) {
        if self.coeff(i) != v {
            self.flip_coeff(i);
        }
    }

    pub fn flip_coeff(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// Multiplication by `X^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = vec![0; self.words.len() + k / 64 + 1];
        xor_shifted(&mut words, &self.words, k);
        Self::from_words(words)
    }

    /// Floor division by `X^k`.
    pub fn shr(&self, k: usize) -> Self {
        let ws = k / 64;
        let bs = k % 64;
        if ws >= self.words.len() {
            return Self::zero();
        }
        let src = &self.words[ws..];
        let mut words = Vec::with_capacity(src.len());
        for i in 0..src.len() {
            let lo = src[i] >> bs;
            let hi = if bs > 0 && i + 1 < src.len() { src[i + 1] << (64 - bs) } else { 0 };
            words.push(lo | hi);
        }
        Self::from_words(words)
    }

    /// Reduction modulo `X^k`.
    pub fn truncate(&self, k: usize) -> Self {
        let mut words: Vec<u64> = self.words.iter().take(k.div_ceil(64)).copied().collect();
        if k % 64 != 0 {
            if let Some(last) = words.get_mut(k / 64) {
                *last &= (1u64 << (k % 64)) - 1;
            }
        }
        Self::from_words(words)
    }

    pub fn square(&self) -> Self {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread(w as u32));
            words.push(spread((w >> 32) as u32));
        }
        Self::from_words(words)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        for i in (0..32).rev() {
            result = result.square();
            if (e >> i) & 1 == 1 {
                result = &result * self;
            }
        }
        result
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn checked_divrem(&self, m: &Self) -> Result<(Self, Self)> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.words.clone();
        let Some(dr) = words_degree(&r) else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dr < dm {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![0u64; (dr - dm) / 64 + 1];
        for pos in (dm..=dr).rev() {
            if bit(&r, pos) {
                let s = pos - dm;
                q[s / 64] |= 1 << (s % 64);
                xor_shifted(&mut r, &m.words, s);
            }
        }
        Ok((Self::from_words(q), Self::from_words(r)))
    }

    pub fn checked_rem(&self, m: &Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.words.clone();
        if let Some(dr) = words_degree(&r) {
            for pos in (dm..=dr).rev() {
                if bit(&r, pos) {
                    xor_shifted(&mut r, &m.words, pos - dm);
                }
            }
        }
        Ok(Self::from_words(r))
    }

    /// `self / m` when the division is exact.
    pub fn exact_div(&self, m: &Self) -> Result<Self> {
        let (q, r) = self.checked_divrem(m)?;
        if !r.is_zero() {
            return Err(Error::Format(format!("{m} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && (other % self).is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        &(self / &g) * other
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        &(self * other) % m
    }

    pub fn square_mod(&self, m: &Self) -> Self {
        &self.square() % m
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let base = self % m;
        let mut result = &Self::one() % m;
        for i in (0..e.bits()).rev() {
            result = result.square_mod(m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    /// `X^(2^k) mod m`.
    pub fn x_pow_2k_mod(k: usize, m: &Self) -> Self {
        let mut r = &Self::x() % m;
        for _ in 0..k {
            r = r.square_mod(m);
        }
        r
    }

    /// `X^n p(1/X)`; requires `deg p <= n`.
    pub fn reverse(&self, n: usize) -> Self {
        debug_assert!(self.degree().map_or(true, |d| d <= n));
        Self::from_exponents(self.exponents().map(|e| n - e))
    }

    /// `p(X^v)`.
    pub fn compose_monomial(&self, v: usize) -> Self {
        Self::from_exponents(self.exponents().map(|e| e * v))
    }

    /// Minimal lowercase hex, bit `i` = coefficient of `X^i`.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let mut s = String::from("0x");
        let top = self.words.len() - 1;
        s.push_str(&format!("{:x}", self.words[top]));
        for w in self.words[..top].iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParsePoly { input: s.to_string(), reason: reason.to_string() };
        let digits = s
            .trim()
            .strip_prefix("0x")
            .or_else(|| s.trim().strip_prefix("0X"))
            .ok_or_else(|| err("missing 0x prefix"))?;
        if digits.is_empty() {
            return Err(err("no hex digits"));
        }
        let mut words = Vec::with_capacity(digits.len() / 16 + 1);
        let bytes = digits.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).map_err(|_| err("non-ascii input"))?;
            words.push(u64::from_str_radix(chunk, 16).map_err(|_| err("invalid hex digit"))?);
            end = start;
        }
        Ok(Self::from_words(words))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Gf2Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Gf2Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Accepts `x^8+x^6+x^5+x^3+1` (terms in any order, `X` or `x`) or `0x169`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: String| Error::ParsePoly { input: s.to_string(), reason };
        if compact.starts_with("0x") || compact.starts_with("0X") {
            return Self::from_hex(&compact);
        }
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in compact.split('+') {
            let e = match term {
                "1" => 0,
                "x" | "X" => 1,
                _ => {
                    let rest = term
                        .strip_prefix("x^")
                        .or_else(|| term.strip_prefix("X^"))
                        .ok_or_else(|| err(format!("bad term {term:?}")))?;
                    rest.parse::<usize>().map_err(|_| err(format!("bad exponent in {term:?}")))?
                }
            };
            p.flip_coeff(e);
        }
        Ok(p)
    }
}

impl<'a> Add<&'a Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: &'a Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        self.trim();
    }
}

impl SubAssign<&Gf2Poly> for Gf2Poly {
    fn sub_assign(&mut self, rhs: &Gf2Poly) {
        *self += rhs;
    }
}

impl<'a> Sub<&'a Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    fn sub(self, rhs: &'a Gf2Poly) -> Gf2Poly {
        self + rhs
    }
}

impl<'a> Mul<&'a Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &'a Gf2Poly) -> Gf2Poly {
        if self.is_zero() || rhs.is_zero() {
            return Gf2Poly::zero();
        }
        let (sparse, dense) = if self.weight() <= rhs.weight() { (self, rhs) } else { (rhs, self) };
        let mut words = vec![0u64; self.words.len() + rhs.words.len() + 1];
        for e in sparse.exponents() {
            xor_shifted(&mut words, &dense.words, e);
        }
        Gf2Poly::from_words(words)
    }
}

impl MulAssign<&Gf2Poly> for Gf2Poly {
    fn mul_assign(&mut self, rhs: &Gf2Poly) {
        *self = &*self * rhs;
    }
}

impl<'a> Rem<&'a Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    /// Panics on a zero divisor, like integer `%`.
    fn rem(self, rhs: &'a Gf2Poly) -> Gf2Poly {
        self.checked_rem(rhs).expect("polynomial remainder by zero")
    }
}

impl<'a> Div<&'a Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    /// Floor division; panics on a zero divisor.
    fn div(self, rhs: &'a Gf2Poly) -> Gf2Poly {
        self.checked_divrem(rhs).expect("polynomial division by zero").0
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Gf2Poly> for Gf2Poly {
            type Output = Gf2Poly;
            fn $method(self, rhs: Gf2Poly) -> Gf2Poly { (&self).$method(&rhs) }
        }
        impl<'a> $tr<&'a Gf2Poly> for Gf2Poly {
            type Output = Gf2Poly;
            fn $method(self, rhs: &'a Gf2Poly) -> Gf2Poly { (&self).$method(rhs) }
        }
        impl $tr<Gf2Poly> for &Gf2Poly {
            type Output = Gf2Poly;
            fn $method(self, rhs: Gf2Poly) -> Gf2Poly { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Rem rem, Div div);

impl AddAssign<Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: Gf2Poly) {
        *self += &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Oracle: schoolbook arithmetic on coefficient vectors.
    fn naive_mul(a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut out = vec![false; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= x & y;
            }
        }
        out
    }

    fn bits(p: &Gf2Poly, len: usize) -> Vec<bool> {
        (0..len).map(|i| p.coeff(i)).collect()
    }

    fn poly_strategy(max_bits: usize) -> impl Strategy<Value = Gf2Poly> {
        prop::collection::vec(any::<bool>(), 0..max_bits).prop_map(|b| Gf2Poly::from_bits(&b))
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(Gf2Poly::one().degree(), Some(0));
        assert_eq!(Gf2Poly::monomial(200).degree(), Some(200));
    }

    #[test]
    fn text_and_hex_forms() {
        let p: Gf2Poly = "x^8+x^6+x^5+x^3+1".parse().unwrap();
        assert_eq!(p.to_hex(), "0x169");
        assert_eq!(p, "0x169".parse().unwrap());
        assert_eq!(p, "1 + x^3 + X^5+x^6+x^8".parse().unwrap());
        assert_eq!(p.to_string(), "x^8+x^6+x^5+x^3+1");
        assert_eq!("x+x".parse::<Gf2Poly>().unwrap(), Gf2Poly::zero());
        assert_eq!(Gf2Poly::zero().to_string(), "0");
        assert_eq!(Gf2Poly::zero().to_hex(), "0x0");
        assert!("x^".parse::<Gf2Poly>().is_err());
        assert!("y+1".parse::<Gf2Poly>().is_err());
        assert!("".parse::<Gf2Poly>().is_err());
        let big = Gf2Poly::monomial(130) + Gf2Poly::one();
        assert_eq!(Gf2Poly::from_hex(&big.to_hex()).unwrap(), big);
    }

    #[test]
    fn small_products() {
        let a: Gf2Poly = "x+1".parse().unwrap();
        assert_eq!((&a * &a).to_string(), "x^2+1");
        assert_eq!(a.square(), &a * &a);
        let q: Gf2Poly = "x^2+x+1".parse().unwrap();
        assert_eq!(q.pow(3), "x^6+x^5+x^3+x+1".parse::<Gf2Poly>().unwrap());
    }

    #[test]
    fn divrem_by_zero_errors() {
        assert_eq!(Gf2Poly::one().checked_divrem(&Gf2Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn shifts_and_reverse() {
        let p: Gf2Poly = "x^70+x^3+1".parse().unwrap();
        assert_eq!(p.shl(60).shr(60), p);
        assert_eq!(p.shr(3).to_string(), "x^67+1");
        assert_eq!(p.truncate(64).to_string(), "x^3+1");
        assert_eq!(p.reverse(70).to_string(), "x^70+x^67+1");
        assert_eq!(p.compose_monomial(2).to_string(), "x^140+x^6+1");
    }

    proptest! {
        #[test]
        fn mul_matches_schoolbook(a in poly_strategy(150), b in poly_strategy(150)) {
            let la = a.degree().map_or(0, |d| d + 1);
            let lb = b.degree().map_or(0, |d| d + 1);
            let expect = Gf2Poly::from_bits(&naive_mul(&bits(&a, la), &bits(&b, lb)));
            prop_assert_eq!(&a * &b, expect);
        }

        #[test]
        fn square_matches_mul(a in poly_strategy(200)) {
            prop_assert_eq!(a.square(), &a * &a);
        }

        #[test]
        fn ring_laws(a in poly_strategy(90), b in poly_strategy(90), c in poly_strategy(90)) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &a, Gf2Poly::zero());
        }

        #[test]
        fn division_identity(a in poly_strategy(200), m in poly_strategy(100)) {
            prop_assume!(!m.is_zero());
            let (q, r) = a.checked_divrem(&m).unwrap();
            prop_assert_eq!(&(&q * &m) + &r, a.clone());
            prop_assert!(r.degree() < m.degree());
            prop_assert_eq!(a.checked_rem(&m).unwrap(), r);
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(80), b in poly_strategy(80), c in poly_strategy(20)) {
            prop_assume!(!c.is_zero());
            let (x, y) = (&a * &c, &b * &c);
            let g = x.gcd(&y);
            prop_assume!(!g.is_zero());
            prop_assert!(g.divides(&x) && g.divides(&y) && c.divides(&g));
        }

        #[test]
        fn text_round_trip(a in poly_strategy(300)) {
            prop_assert_eq!(a.to_string().parse::<Gf2Poly>().unwrap(), a.clone());
            prop_assert_eq!(Gf2Poly::from_hex(&a.to_hex()).unwrap(), a);
        }

        #[test]
        fn pow_mod_matches_repeated_mul(a in poly_strategy(40), m in poly_strategy(30), e in 0u32..60) {
            prop_assume!(m.degree().map_or(false, |d| d > 0));
            let mut expect = &Gf2Poly::one() % &m;
            for _ in 0..e { expect = expect.mul_mod(&a, &m); }
            prop_assert_eq!(a.pow_mod(&BigUint::from(e), &m), expect);
        }
    }
}
