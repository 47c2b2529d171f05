use super::rlfsm::Rlfsm;
use super::vane::{compile_vane, vane_transfer};
use crate::error::{Error, Result};
use crate::families::galois_matrix;
use crate::gf2::{Fraction, Gf2Poly, RationalSeries};
use crate::lfsm::{adjugate_with_det, Lfsm, ADJUGATE_MAX_DIM};
use crate::matrix::{BitMatrix, F2Vec};

/// Order in which per-coefficient parts are laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EntryOrder {
    #[default]
    RowMajor,
    ColumnMajor,
}

/// A user circuit realizing entry `(row, col)`: one input, one output,
/// transfer `X A_{row,col}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockComponent {
    pub row: usize,
    pub col: usize,
    pub circuit: Lfsm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionStrategy {
    /// One Galois vane per nonzero entry.
    PerCoefficient(EntryOrder),
    /// One Galois register per row over the row denominator.
    PerRow,
    /// Explicit circuits, one per nonzero entry.
    Block(Vec<BlockComponent>),
}

/// A sub-circuit of the expansion. Its state occupies cells
/// `offset..offset + a.rows()`; input `(j, b)` feeds `b m_j`, and `output`
/// contributes to `m_row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub row: usize,
    pub offset: usize,
    pub a: BitMatrix,
    pub inputs: Vec<(usize, F2Vec)>,
    pub output: F2Vec,
}

impl Part {
    fn len(&self) -> usize {
        self.a.rows()
    }
}

/// Binary circuit equivalent to an RLFSM.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub lfsm: Lfsm,
    pub parts: Vec<Part>,
    /// Row `i` selects the cells summing to `m_i`.
    pub cell_map: BitMatrix,
    template: Rlfsm,
}

pub fn expand_rlfsm(r: &Rlfsm, strategy: &ExpansionStrategy) -> Result<Expansion> {
    let n = r.n();
    let mut parts = match strategy {
        ExpansionStrategy::PerCoefficient(order) => per_coefficient(r, *order)?,
        ExpansionStrategy::PerRow => per_row(r),
        ExpansionStrategy::Block(components) => block(r, components)?,
    };
    // A row without entries holds its initial bit for one clock.
    for i in 0..n {
        if !parts.iter().any(|p| p.row == i) {
            parts.push(Part {
                row: i,
                offset: 0,
                a: BitMatrix::zeros(1, 1),
                inputs: Vec::new(),
                output: F2Vec::unit(1, 0),
            });
        }
    }
    let mut total = 0;
    for p in &mut parts {
        p.offset = total;
        total += p.len();
    }
    let mut a = BitMatrix::zeros(total, total);
    let mut cell_map = BitMatrix::zeros(n, total);
    for p in &parts {
        a.xor_block(p.offset, p.offset, &p.a);
        for c in p.output.ones() {
            cell_map.toggle(p.row, p.offset + c);
        }
    }
    for p in &parts {
        for (j, b) in &p.inputs {
            for q in parts.iter().filter(|q| q.row == *j) {
                for rr in b.ones() {
                    for c in q.output.ones() {
                        a.toggle(p.offset + rr, q.offset + c);
                    }
                }
            }
        }
    }
    let c = match r.extraction() {
        Some(e) => e.mul(&cell_map),
        None => cell_map.clone(),
    };
    let lfsm = Lfsm::new(a, BitMatrix::zeros(total, 0), c, F2Vec::zeros(total))?;
    Ok(Expansion { lfsm, parts, cell_map, template: r.clone() })
}

fn vane_part(row: usize, col: usize, transfer: &RationalSeries) -> Result<Part> {
    let v = compile_vane(transfer)?;
    Ok(Part {
        row,
        offset: 0,
        a: v.transition().clone(),
        inputs: vec![(col, v.input_matrix().col_vec(0))],
        output: v.extraction().row_vec(0),
    })
}

fn per_coefficient(r: &Rlfsm, order: EntryOrder) -> Result<Vec<Part>> {
    let mut entries = r.matrix().nonzero();
    if order == EntryOrder::ColumnMajor {
        entries.sort_by_key(|&(i, j, _)| (j, i));
    }
    entries.into_iter().map(|(i, j, e)| vane_part(i, j, &e.shl(1))).collect()
}

fn per_row(r: &Rlfsm) -> Vec<Part> {
    let a = r.matrix();
    let mut parts = Vec::new();
    for i in 0..r.n() {
        let q = a.row_denominator(i);
        let nums = a.row_numerators(i);
        let Some(d_num) = nums.iter().filter_map(|p| p.degree()).max() else { continue };
        let d = q.degree().unwrap_or(0).max(d_num + 1);
        let inputs = nums
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| {
                let mut b = F2Vec::zeros(d);
                for k in p.exponents() {
                    b.set(k, true);
                }
                (j, b)
            })
            .collect();
        parts.push(Part { row: i, offset: 0, a: galois_matrix(&q, d), inputs, output: F2Vec::unit(d, 0) });
    }
    parts
}

fn block(r: &Rlfsm, components: &[BlockComponent]) -> Result<Vec<Part>> {
    let a = r.matrix();
    let n = r.n();
    let mut covered = vec![false; n * n];
    let mut parts = Vec::new();
    for comp in components {
        if comp.row >= n || comp.col >= n {
            return Err(Error::InvalidConfig(format!("component ({},{}) outside {n}x{n}", comp.row, comp.col)));
        }
        let cell = comp.row * n + comp.col;
        if covered[cell] {
            return Err(Error::InvalidConfig(format!("entry ({},{}) has two components", comp.row, comp.col)));
        }
        covered[cell] = true;
        let want = a.get(comp.row, comp.col).shl(1);
        let got = vane_transfer(&comp.circuit)?;
        if got != want {
            return Err(Error::InvalidConfig(format!(
                "component ({},{}) has transfer {got}, expected {want}",
                comp.row, comp.col
            )));
        }
        parts.push(Part {
            row: comp.row,
            offset: 0,
            a: comp.circuit.transition().clone(),
            inputs: vec![(comp.col, comp.circuit.input_matrix().col_vec(0))],
            output: comp.circuit.extraction().row_vec(0),
        });
    }
    if let Some((i, j, _)) = a.nonzero().into_iter().find(|&(i, j, _)| !covered[i * n + j]) {
        return Err(Error::InvalidConfig(format!("entry ({i},{j}) has no component")));
    }
    Ok(parts)
}

impl Expansion {
    pub fn n(&self) -> usize {
        self.lfsm.n()
    }

    /// The RLFSM state producing the same cell streams as binary state `s`:
    /// `m_i = C'_i s` and `m_i + X c_i / Q_i = sum_p C_p adj_p s_p / det_p`.
    pub fn rlfsm_state(&self, s: &F2Vec) -> Result<Rlfsm> {
        if s.len() != self.n() {
            return Err(Error::Dimension(format!("state has {} cells, expected {}", s.len(), self.n())));
        }
        let n = self.template.n();
        let m = self.cell_map.mul_vec(s);
        let mut free = vec![Fraction::zero(); n];
        for p in &self.parts {
            let (adj, det) = adjugate_with_det(&p.a, ADJUGATE_MAX_DIM)?;
            let mut num = Gf2Poly::zero();
            for c in p.output.ones() {
                for k in (0..p.len()).filter(|&k| s.get(p.offset + k)) {
                    num += adj.get(c, k);
                }
            }
            let f = Fraction::new(num, det)?;
            free[p.row] = &free[p.row] + &f;
        }
        let mut carries = Vec::with_capacity(n);
        for (i, f) in free.iter().enumerate() {
            let q = &self.template.row_denominators()[i];
            let bit = if m.get(i) { Fraction::one() } else { Fraction::zero() };
            let scaled = &(f + &bit) * &Fraction::from_poly(q.clone());
            if !scaled.den().is_one() || scaled.num().constant_term() {
                return Err(Error::InvalidState(format!("cell {i} has no carry for this binary state")));
            }
            carries.push(scaled.num().shr(1));
        }
        self.template.clone().with_state(m, carries)
    }

    /// A binary state whose cells reproduce the streams of `r`, found by a
    /// linear solve over the first `n'` clocks and verified afterwards.
    /// Every state reached after one clock has a preimage; an initial state
    /// with `deg(m_i Q_i + X c_i)` at the register length does not.
    pub fn binary_state(&self, r: &Rlfsm) -> Result<F2Vec> {
        let big_n = self.n();
        let n = r.n();
        let streams = r.cell_streams(big_n);
        let a = self.lfsm.transition();
        let mut rows = BitMatrix::zeros(n * big_n, big_n);
        let mut rhs = F2Vec::zeros(n * big_n);
        let mut obs = self.cell_map.clone();
        for t in 0..big_n {
            for i in 0..n {
                for c in obs.row_ones(i) {
                    rows.set(t * n + i, c, true);
                }
                rhs.set(t * n + i, streams[i][t]);
            }
            obs = obs.mul(a);
        }
        let s = rows.solve(&rhs).ok_or_else(|| Error::InvalidState("state not reachable by the expansion".into()))?;
        let steps = self.verification_horizon(r)?;
        if !self.streams_agree(&s, r, steps) {
            return Err(Error::InvalidState("expansion diverges from the rational machine".into()));
        }
        Ok(s)
    }

    /// `4 max(deg T, n')` clocks.
    pub fn verification_horizon(&self, r: &Rlfsm) -> Result<usize> {
        let t = r.connection()?.t_poly.degree().unwrap_or(0);
        Ok(4 * t.max(self.n()))
    }

    /// Compares the cell streams of binary state `s` with those of `r`.
    pub fn streams_agree(&self, s: &F2Vec, r: &Rlfsm, steps: usize) -> bool {
        let mut bin = self.lfsm.clone().with_io(BitMatrix::zeros(self.n(), 0), self.cell_map.clone()).expect("dimensions match");
        if bin.set_state(s.clone()).is_err() {
            return false;
        }
        let expect = r.cell_streams(steps);
        let got = bin.output_sequences(steps);
        expect.iter().zip(&got).all(|(e, g)| e[..] == *g.bits())
    }
}
