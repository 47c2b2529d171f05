use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::factor::mersenne;
use super::{FactorTable, Gf2Poly};
use crate::error::{Error, Result};

/// Largest degree for which the order of X is found by stepping powers.
pub const BRUTE_FORCE_ORDER_DEGREE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// Irreducible, and X has order strictly below `2^n - 1`.
    Irreducible,
    /// Irreducible; no factorization of `2^n - 1` was available.
    IrreducibleUnknownOrder,
    Reducible,
}

impl Primitivity {
    pub fn is_primitive(self) -> bool {
        self == Primitivity::Primitive
    }

    pub fn is_irreducible(self) -> bool {
        self != Primitivity::Reducible
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `X^(2^n) = X mod g` and `gcd(X^(2^(n/r)) - X, g) = 1` for
/// every prime `r | n`.
pub fn is_irreducible(g: &Gf2Poly) -> bool {
    let Some(n) = g.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !g.constant_term() {
        return false;
    }
    let x = Gf2Poly::x();
    if Gf2Poly::x_pow_2k_mod(n, g) != x {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = &Gf2Poly::x_pow_2k_mod(n / r, g) + &x;
        h.gcd(g).is_one()
    })
}

/// Classifies `g`; primitivity needs the factorization of `2^deg g - 1`.
pub fn is_primitive(g: &Gf2Poly, factors: &FactorTable) -> Primitivity {
    if !is_irreducible(g) {
        return Primitivity::Reducible;
    }
    let n = g.degree().expect("irreducible has a degree");
    if !g.constant_term() {
        return Primitivity::Irreducible;
    }
    let Some(primes) = factors.distinct_primes(n) else {
        return Primitivity::IrreducibleUnknownOrder;
    };
    let e = mersenne(n);
    let x = Gf2Poly::x();
    let primitive = primes.iter().all(|p| !x.pow_mod(&(&e / p), g).is_one());
    if primitive {
        Primitivity::Primitive
    } else {
        Primitivity::Irreducible
    }
}

/// Multiplicative order of X modulo `g`.
///
/// Irreducible `g` with a known factorization of `2^n - 1` uses the
/// factorization; otherwise degrees up to [`BRUTE_FORCE_ORDER_DEGREE`] are
/// stepped directly.
pub fn x_order(g: &Gf2Poly, factors: &FactorTable) -> Result<BigUint> {
    let n = g.degree().ok_or(Error::DivisionByZero)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    if !g.constant_term() {
        return Err(Error::XDividesG);
    }
    if is_irreducible(g) {
        if let Some(primes) = factors.get(n) {
            let x = Gf2Poly::x();
            let mut order = mersenne(n);
            for p in primes {
                let candidate = &order / p;
                if (&candidate * p) == order && x.pow_mod(&candidate, g).is_one() {
                    order = candidate;
                }
            }
            return Ok(order);
        }
    }
    if n > BRUTE_FORCE_ORDER_DEGREE {
        return Err(Error::FactorizationRequired(n));
    }
    Ok(BigUint::from(brute_order(g)))
}

fn brute_order(g: &Gf2Poly) -> u64 {
    let n = g.degree().unwrap();
    let one = Gf2Poly::one();
    let mut cur = &Gf2Poly::x() % g;
    let mut k = 1u64;
    while cur != one {
        cur = cur.shl(1);
        if cur.coeff(n) {
            cur += g;
        }
        k += 1;
        debug_assert!(k < (1u64 << n) + 1);
    }
    k
}

/// Number of primitive polynomials of degree `n`: `phi(2^n - 1) / n`.
pub fn primitive_count(n: usize, factors: &FactorTable) -> Option<BigUint> {
    let phi = factors.phi_mersenne(n)?;
    let q = &phi / BigUint::from(n);
    debug_assert!((&q * BigUint::from(n)) == phi || q.is_zero());
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    // Oracle: irreducible iff no factor of degree <= n/2 divides it.
    fn brute_irreducible(g: &Gf2Poly) -> bool {
        let n = g.degree().unwrap();
        if n == 0 {
            return false;
        }
        (2u64..(1 << (n / 2 + 1))).all(|f| {
            let f = Gf2Poly::from_u64(f);
            f.degree().unwrap() > n / 2 || !f.divides(g)
        })
    }

    #[test]
    fn documented_examples() {
        let t = FactorTable::builtin();
        assert_eq!(is_primitive(&p("0x169"), &t), Primitivity::Primitive);
        assert_eq!(is_primitive(&p("x^4+x^3+x^2+x+1"), &t), Primitivity::Irreducible);
        assert_eq!(x_order(&p("x^4+x^3+x^2+x+1"), &t).unwrap(), BigUint::from(5u32));
        assert_eq!(is_primitive(&p("x^4+x^2+1"), &t), Primitivity::Reducible);
        assert_eq!(x_order(&p("x^4+x^2+1"), &t).unwrap(), BigUint::from(6u32));
        assert_eq!(x_order(&p("x^3+x"), &t), Err(Error::XDividesG));
        assert_eq!(is_primitive(&p("x^24+x^21+x^16+x^9+x^7+x^3+1"), &t), Primitivity::Primitive);
    }

    #[test]
    fn sextic_with_a_quadratic_factor() {
        // x^6+x^3+x^2+x+1 = (x^2+x+1)(x^4+x^3+1): reducible, X of order 15.
        let t = FactorTable::builtin();
        let g = p("x^6+x^3+x^2+x+1");
        assert_eq!(&p("x^2+x+1") * &p("x^4+x^3+1"), g);
        assert_eq!(is_primitive(&g, &t), Primitivity::Reducible);
        assert_eq!(x_order(&g, &t).unwrap(), BigUint::from(15u32));
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for w in 2u64..(1 << 11) {
            let g = Gf2Poly::from_u64(w);
            assert_eq!(is_irreducible(&g), brute_irreducible(&g), "{g}");
        }
    }

    #[test]
    fn order_matches_brute_force() {
        let t = FactorTable::builtin();
        for w in (3u64..(1 << 11)).step_by(2) {
            let g = Gf2Poly::from_u64(w);
            let fast = x_order(&g, &t).unwrap();
            assert_eq!(fast, BigUint::from(brute_order(&g)), "{g}");
            let prim = is_primitive(&g, &t);
            let full = mersenne(g.degree().unwrap());
            assert_eq!(prim.is_primitive(), is_irreducible(&g) && fast == full, "{g}");
        }
    }

    #[test]
    fn primitive_counts() {
        let t = FactorTable::builtin();
        for n in 2..=12usize {
            let count = (0u64..(1 << (n - 1)))
                .map(|low| Gf2Poly::from_u64((1 << n) | (low << 1) | 1))
                .filter(|g| is_primitive(g, &t).is_primitive())
                .count();
            assert_eq!(BigUint::from(count), primitive_count(n, &t).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn unknown_order_without_factorization() {
        let t = FactorTable::empty();
        assert_eq!(is_primitive(&p("0x169"), &t), Primitivity::IrreducibleUnknownOrder);
        assert_eq!(x_order(&p("0x169"), &t).unwrap(), BigUint::from(255u32));
        let big = p("x^31+x^3+1");
        assert_eq!(x_order(&big, &t), Err(Error::FactorizationRequired(31)));
    }
}
