//! Randomized generation of ring and word registers with primitive
//! connection polynomials.
//!
//! All randomness comes from ChaCha8 seeded with `seed`; worker `w` draws
//! from stream `w`. Workers run lockstep rounds and the accepted result is
//! the one with the smallest `(round, worker)`, so multi-worker runs are as
//! reproducible as single-worker ones.

mod ring;
mod word;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{diffusion_delay, DiffusionReport};
use crate::error::{Error, Result};
use crate::families::{hardware_metrics, HardwareMetrics, RingSpec, WordBlockSpec};
use crate::gf2::{is_primitive, FactorTable, Gf2Poly, Primitivity};
use crate::lfsm::Lfsm;

pub use ring::{place_feedbacks, ring_trial_cofactor, ring_trial_naive};
pub use word::{random_shift, word_trial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Place all feedbacks, then test the full determinant.
    Naive,
    /// Place all but one, then scan the last position via the cofactors.
    Cofactor,
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub n: usize,
    /// Feedback count: single 1s for rings, extra blocks for word registers.
    pub f: usize,
    /// Word size, word registers only.
    pub k: Option<usize>,
    pub seed: u64,
    /// Bound on the total trial count across workers.
    pub max_trials: u64,
    pub workers: usize,
    pub factors: FactorTable,
    /// Accept irreducible candidates when `2^n - 1` has no factorization.
    pub allow_irreducible: bool,
}

impl GenConfig {
    pub fn new(n: usize, f: usize, seed: u64) -> Self {
        Self {
            n,
            f,
            k: None,
            seed,
            max_trials: 1_000_000,
            workers: 1,
            factors: FactorTable::builtin(),
            allow_irreducible: false,
        }
    }

    fn validate_common(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig("n must be at least 2".into()));
        }
        if self.max_trials == 0 {
            return Err(Error::InvalidConfig("max_trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("at least one worker is needed".into()));
        }
        if !self.factors.contains(self.n) && !self.allow_irreducible {
            return Err(Error::FactorizationRequired(self.n));
        }
        Ok(())
    }

    /// Whether a candidate connection polynomial is accepted.
    pub(crate) fn accept(&self, q: &Gf2Poly) -> Option<Primitivity> {
        if q.degree() != Some(self.n) || q.weight() % 2 == 0 {
            return None;
        }
        match is_primitive(q, &self.factors) {
            Primitivity::Primitive => Some(Primitivity::Primitive),
            Primitivity::IrreducibleUnknownOrder if self.allow_irreducible => Some(Primitivity::IrreducibleUnknownOrder),
            _ => None,
        }
    }
}

/// Structure of a generated register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    Ring(RingSpec),
    Word(WordBlockSpec),
}

/// An accepted candidate before analysis.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub layout: Layout,
    pub connection: Gf2Poly,
    pub primitivity: Primitivity,
}

#[derive(Clone, Debug)]
pub struct GenResult {
    pub automaton: Lfsm,
    pub layout: Layout,
    pub connection: Gf2Poly,
    /// `Primitive`, or `IrreducibleUnknownOrder` in irreducible-only mode.
    pub primitivity: Primitivity,
    /// Trials up to and including the accepted one, counted in lockstep
    /// order: `round * workers + worker + 1`.
    pub trials: u64,
    pub round: u64,
    pub worker: usize,
    pub metrics: HardwareMetrics,
    pub diffusion: DiffusionReport,
}

fn finish(c: Candidate, round: u64, worker: usize, workers: usize) -> Result<GenResult> {
    let automaton = match &c.layout {
        Layout::Ring(r) => r.build()?,
        Layout::Word(w) => w.build()?,
    };
    let metrics = hardware_metrics(automaton.transition());
    let diffusion = diffusion_delay(automaton.transition());
    Ok(GenResult {
        automaton,
        layout: c.layout,
        connection: c.connection,
        primitivity: c.primitivity,
        trials: round * workers as u64 + worker as u64 + 1,
        round,
        worker,
        metrics,
        diffusion,
    })
}

/// RNG of worker `w`.
pub fn worker_rng(seed: u64, w: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(w as u64);
    rng
}

/// Runs `trial` in lockstep rounds over `cfg.workers` workers.
fn run<F>(cfg: &GenConfig, trial: F) -> Result<GenResult>
where
    F: Fn(&GenConfig, &mut ChaCha8Rng) -> Option<Candidate> + Sync,
{
    let workers = cfg.workers;
    let rounds = cfg.max_trials.div_ceil(workers as u64);
    let best = AtomicU64::new(u64::MAX);
    let found: Mutex<Vec<(u64, usize, Candidate)>> = Mutex::new(Vec::new());
    let work = |w: usize| {
        let mut rng = worker_rng(cfg.seed, w);
        for round in 0..rounds {
            if round > best.load(Ordering::Acquire) || round * workers as u64 + w as u64 >= cfg.max_trials {
                return;
            }
            if let Some(c) = trial(cfg, &mut rng) {
                best.fetch_min(round, Ordering::AcqRel);
                found.lock().expect("no worker panics while holding the lock").push((round, w, c));
                return;
            }
        }
    };
    if workers == 1 {
        work(0);
    } else {
        std::thread::scope(|s| {
            for w in 0..workers {
                let work = &work;
                s.spawn(move || work(w));
            }
        });
    }
    let winner = found.into_inner().expect("workers joined").into_iter().min_by_key(|(r, w, _)| (*r, *w));
    match winner {
        Some((round, w, c)) => finish(c, round, w, workers),
        None => Err(Error::MaxTrialsExceeded { trials: cfg.max_trials }),
    }
}

fn validate_ring(cfg: &GenConfig) -> Result<()> {
    cfg.validate_common()?;
    if cfg.f > cfg.n {
        return Err(Error::InvalidConfig(format!("{} feedbacks exceed n = {}", cfg.f, cfg.n)));
    }
    Ok(())
}

/// Random ring registers with `f` feedbacks, each row and column of weight
/// at most 2, until the connection polynomial is primitive.
pub fn gen_hw_naive(cfg: &GenConfig) -> Result<GenResult> {
    validate_ring(cfg)?;
    run(cfg, ring_trial_naive)
}

/// As [`gen_hw_naive`], but each trial places `f - 1` feedbacks and scans
/// every valid last position through one adjugate.
pub fn gen_hw_cofactor(cfg: &GenConfig) -> Result<GenResult> {
    validate_ring(cfg)?;
    if cfg.f == 0 {
        return Err(Error::InvalidConfig("the cofactor scan needs at least one feedback".into()));
    }
    run(cfg, ring_trial_cofactor)
}

pub fn gen_hw(cfg: &GenConfig, algo: Algorithm) -> Result<GenResult> {
    match algo {
        Algorithm::Naive => gen_hw_naive(cfg),
        Algorithm::Cofactor => gen_hw_cofactor(cfg),
    }
}

/// Word ring of `n / k` words plus `f` shifted feedback blocks.
pub fn gen_word(cfg: &GenConfig) -> Result<GenResult> {
    cfg.validate_common()?;
    let k = cfg.k.ok_or_else(|| Error::InvalidConfig("word size k is required".into()))?;
    if k < 2 || k > 64 || cfg.n % k != 0 {
        return Err(Error::InvalidConfig(format!("word size {k} must lie in 2..=64 and divide n = {}", cfg.n)));
    }
    if cfg.f > cfg.n / k {
        return Err(Error::InvalidConfig(format!("{} feedbacks exceed {} words", cfg.f, cfg.n / k)));
    }
    run(cfg, word_trial)
}

/// `2^(n-2) n / phi(2^n - 1)`: the expected number of trials when a
/// candidate is a random polynomial of degree `n` with both end
/// coefficients set.
pub fn expected_trials(n: usize, factors: &FactorTable) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidConfig("n must be at least 2".into()));
    }
    let phi = factors.phi_mersenne(n).ok_or(Error::FactorizationRequired(n))?;
    let num = (BigInt::from(1) << (n - 2)) * BigInt::from(n);
    Ok(BigRational::new(num, BigInt::from(phi)))
}
