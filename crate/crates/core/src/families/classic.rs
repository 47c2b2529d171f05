use crate::error::{Error, Result};
use crate::gf2::Gf2Poly;
use crate::lfsm::{connection_polynomial, Lfsm};
use crate::matrix::BitMatrix;

fn check_connection(q: &Gf2Poly) -> Result<usize> {
    let n = q.degree().ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if !q.constant_term() {
        return Err(Error::InvalidPolynomial(format!("{q} has constant term 0")));
    }
    if n < 2 {
        return Err(Error::InvalidPolynomial(format!("{q} has degree below 2")));
    }
    Ok(n)
}

/// Galois matrix of length `d >= deg q`: shift `m_k <- m_{k+1}` with
/// feedback `q_{k+1} m_0` into every cell. Requires `q(0) = 1`.
pub fn galois_matrix(q: &Gf2Poly, d: usize) -> BitMatrix {
    let mut a = BitMatrix::zeros(d, d);
    for k in 0..d {
        if q.coeff(k + 1) {
            a.set(k, 0, true);
        }
        if k + 1 < d {
            a.set(k, k + 1, true);
        }
    }
    a
}

/// Fibonacci matrix: shift `m_k <- m_{k+1}`, last cell receives
/// `sum_j q_{n-j} m_j`.
pub fn fibonacci_matrix(q: &Gf2Poly, n: usize) -> BitMatrix {
    let mut a = BitMatrix::zeros(n, n);
    for k in 0..n - 1 {
        a.set(k, k + 1, true);
    }
    for j in 0..n {
        if q.coeff(n - j) {
            a.toggle(n - 1, j);
        }
    }
    a
}

pub fn galois(q: &Gf2Poly) -> Result<Lfsm> {
    let n = check_connection(q)?;
    Lfsm::autonomous(galois_matrix(q, n))
}

pub fn fibonacci(q: &Gf2Poly) -> Result<Lfsm> {
    let n = check_connection(q)?;
    Lfsm::autonomous(fibonacci_matrix(q, n))
}

/// Linear cellular automaton with null boundary: tridiagonal, with `diag`
/// on the main diagonal (rule 150 where set, rule 90 elsewhere).
pub fn cellular(diag: &[bool]) -> Result<Lfsm> {
    let n = diag.len();
    if n < 2 {
        return Err(Error::InvalidConfig("cellular automaton needs at least 2 cells".into()));
    }
    let mut a = BitMatrix::zeros(n, n);
    for i in 0..n {
        a.set(i, i, diag[i]);
        if i + 1 < n {
            a.set(i, i + 1, true);
            a.set(i + 1, i, true);
        }
    }
    Lfsm::autonomous(a)
}

/// Hybrid register: Galois feedback `q_1 .. q_{s-1}` into the top cells,
/// Fibonacci taps in the bottom row solved so that `det(I - XA) = q`.
/// `s = 1` gives the Fibonacci register and `s = n` the Galois register.
pub fn top_bottom(q: &Gf2Poly, split: usize) -> Result<Lfsm> {
    let n = check_connection(q)?;
    if split == 0 || split > n {
        return Err(Error::InvalidConfig(format!("split {split} outside 1..={n}")));
    }
    let mut base = BitMatrix::zeros(n, n);
    for k in 0..n - 1 {
        base.set(k, k + 1, true);
    }
    for k in 0..split - 1 {
        if q.coeff(k + 1) {
            base.set(k, 0, true);
        }
    }
    // det(I - XA) is affine in the bottom row, so each tap contributes a
    // fixed polynomial; solve the resulting system over GF(2).
    let d0 = connection_polynomial(&base);
    let target = q + &d0;
    let deltas: Vec<Gf2Poly> = (0..n)
        .map(|c| {
            let mut a = base.clone();
            a.toggle(n - 1, c);
            &connection_polynomial(&a) + &d0
        })
        .collect();
    let taps = solve_poly_combination(&deltas, &target, n + 1).ok_or(Error::SplitNotRealizable)?;
    let mut a = base;
    for (c, &t) in taps.iter().enumerate() {
        if t {
            a.toggle(n - 1, c);
        }
    }
    debug_assert_eq!(&connection_polynomial(&a), q);
    Lfsm::autonomous(a)
}

/// Finds `f` with `sum f_c v_c = target`, comparing `coeffs` coefficients.
fn solve_poly_combination(vs: &[Gf2Poly], target: &Gf2Poly, coeffs: usize) -> Option<Vec<bool>> {
    let unknowns = vs.len();
    // Augmented system: one row per coefficient, one column per unknown.
    let mut m = BitMatrix::zeros(coeffs, unknowns + 1);
    for r in 0..coeffs {
        for (c, v) in vs.iter().enumerate() {
            m.set(r, c, v.coeff(r));
        }
        m.set(r, unknowns, target.coeff(r));
    }
    if target.degree().map_or(false, |d| d >= coeffs) {
        return None;
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..unknowns {
        let Some(p) = (row..coeffs).find(|&r| m.get(r, c)) else { continue };
        m.swap_rows(p, row);
        for r in 0..coeffs {
            if r != row && m.get(r, c) {
                m.xor_row(r, row);
            }
        }
        pivots.push(c);
        row += 1;
    }
    if (row..coeffs).any(|r| m.get(r, unknowns)) {
        return None;
    }
    let mut f = vec![false; unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        f[c] = m.get(r, unknowns);
    }
    Some(f)
}
