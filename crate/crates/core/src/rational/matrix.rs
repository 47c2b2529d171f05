use crate::error::{Error, Result};
use crate::gf2::{Fraction, Gf2Poly, RationalSeries};
use crate::matrix::{BitMatrix, PolyMatrix};

/// Square matrix over GF(2)[[X]] with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<RationalSeries>,
}

/// `det(I - XA)` and the polynomial `T = G^n det(I - XA)` with
/// `G = prod_i Q_i` over the row denominators `Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalConnection {
    pub det: RationalSeries,
    pub t_poly: Gf2Poly,
    pub g: Gf2Poly,
}

impl RationalConnection {
    /// Reduced numerator of `det(I - XA)`: the connection polynomial.
    pub fn numerator(&self) -> &Gf2Poly {
        self.det.num()
    }
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![RationalSeries::zero(); n * n] }
    }

    pub fn new(n: usize, entries: Vec<RationalSeries>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(Self { n, entries })
    }

    pub fn from_entries(n: usize, entries: &[(usize, usize, RationalSeries)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("empty rational matrix".into()));
        }
        let mut m = Self::zeros(n);
        for (i, j, e) in entries {
            if *i >= n || *j >= n {
                return Err(Error::Dimension(format!("entry ({i},{j}) outside {n}x{n}")));
            }
            m.set(*i, *j, e.clone());
        }
        Ok(m)
    }

    pub fn from_binary(a: &BitMatrix) -> Self {
        let n = a.rows();
        let mut m = Self::zeros(n);
        for (i, j) in a.coords() {
            m.set(i, j, RationalSeries::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalSeries {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RationalSeries) {
        self.entries[i * self.n + j] = e;
    }

    /// Nonzero entries, row-major.
    pub fn nonzero(&self) -> Vec<(usize, usize, &RationalSeries)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let e = self.get(i, j);
                (!e.is_zero()).then_some((i, j, e))
            })
            .collect()
    }

    /// `Q_i = lcm` of the denominators in row `i`.
    pub fn row_denominator(&self, i: usize) -> Gf2Poly {
        (0..self.n).fold(Gf2Poly::one(), |acc, j| acc.lcm(self.get(i, j).den()))
    }

    /// `R_ij = A_ij Q_i`, polynomials over the row denominator.
    pub fn row_numerators(&self, i: usize) -> Vec<Gf2Poly> {
        let q = self.row_denominator(i);
        (0..self.n)
            .map(|j| {
                let e = self.get(i, j);
                &(&q / e.den()) * e.num()
            })
            .collect()
    }

    /// Carries of row `i` live in polynomials of degree below this bound:
    /// `max(max_j deg R_ij, deg Q_i)`.
    pub fn carry_bound(&self, i: usize) -> usize {
        let q = self.row_denominator(i);
        let r = self.row_numerators(i).iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        r.max(q.degree().unwrap_or(0))
    }

    /// `Q_i delta_ij - X R_ij`: row `i` of `I - XA` scaled by `Q_i`.
    pub fn cleared_i_minus_xa(&self) -> PolyMatrix {
        let mut p = PolyMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let q = self.row_denominator(i);
            for (j, r) in self.row_numerators(i).into_iter().enumerate() {
                let mut e = r.shl(1);
                if i == j {
                    e += &q;
                }
                p.set(i, j, e);
            }
        }
        p
    }

    /// `I - XA` over the fraction field.
    pub fn i_minus_xa_fractions(&self) -> Vec<Vec<Fraction>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j).shl(1).to_fraction();
                        if i == j {
                            &Fraction::one() + &e
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Determinant by Gaussian elimination with reduced fractions.
pub fn fraction_det(mut m: Vec<Vec<Fraction>>) -> Fraction {
    let n = m.len();
    let mut det = Fraction::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Fraction::zero();
        };
        m.swap(k, p);
        let pivot = m[k][k].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] + &t;
            }
        }
    }
    det
}

/// Solves `M x = b` over the fraction field; `None` if `M` is singular.
pub fn fraction_solve(mut m: Vec<Vec<Fraction>>, mut b: Vec<Fraction>) -> Option<Vec<Fraction>> {
    let n = m.len();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        b.swap(k, p);
        let inv = m[k][k].inverse().ok()?;
        for j in k..n {
            m[k][j] = &m[k][j] * &inv;
        }
        b[k] = &b[k] * &inv;
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] + &t;
            }
            let t = &f * &b[k];
            b[i] = &b[i] + &t;
        }
    }
    Some(b)
}

/// `det(I - XA)` and `T(X)`.
pub fn rational_connection(a: &RationalMatrix) -> Result<RationalConnection> {
    let det = fraction_det(a.i_minus_xa_fractions()).to_series()?;
    let n = a.n();
    let g = (0..n).fold(Gf2Poly::one(), |acc, i| &acc * &a.row_denominator(i));
    // det(P) = prod Q_i det(I - XA) with P the row-cleared matrix, so
    // T = G^n det(I - XA) = G^(n-1) det(P).
    let t_poly = &g.pow(n as u32 - 1) * &a.cleared_i_minus_xa().det();
    Ok(RationalConnection { det, t_poly, g })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(num: &str, den: &str) -> RationalSeries {
        RationalSeries::new(num.parse().unwrap(), den.parse().unwrap()).unwrap()
    }

    #[test]
    fn scalar_entry() {
        // det(1 - X a/b) = (b + X a)/b.
        let a = RationalMatrix::from_entries(1, &[(0, 0, s("x^2", "x^3+1"))]).unwrap();
        let c = rational_connection(&a).unwrap();
        assert_eq!(c.det, s("1", "x^3+1"));
        assert_eq!(c.numerator(), &"1".parse::<Gf2Poly>().unwrap());
        assert_eq!(a.carry_bound(0), 3);
    }

    #[test]
    fn binary_matrices_agree_with_charpoly() {
        let ring = crate::families::RingSpec::new(8, vec![(3, 7), (7, 2)]).unwrap().matrix();
        let c = rational_connection(&RationalMatrix::from_binary(&ring)).unwrap();
        assert_eq!(c.numerator(), &crate::lfsm::connection_polynomial(&ring));
        assert!(c.det.is_polynomial());
        assert_eq!(&c.t_poly, c.numerator());
    }

    #[test]
    fn cleared_and_fraction_routes_agree() {
        let a = RationalMatrix::from_entries(
            3,
            &[
                (0, 0, s("x+1", "x^3+x+1")),
                (0, 1, s("x", "x^2+x+1")),
                (1, 0, s("x^3+x^2", "1")),
                (1, 1, s("x^2", "1")),
                (1, 2, s("1", "1")),
                (2, 1, s("x+1", "x^2+x+1")),
            ],
        )
        .unwrap();
        let c = rational_connection(&a).unwrap();
        let prod_q = (0..3).fold(Gf2Poly::one(), |acc, i| &acc * &a.row_denominator(i));
        let via_cleared = RationalSeries::new(a.cleared_i_minus_xa().det(), prod_q).unwrap();
        assert_eq!(c.det, via_cleared);
        let back = RationalSeries::new(c.t_poly.clone(), c.g.pow(3)).unwrap();
        assert_eq!(back, c.det);
    }
}
