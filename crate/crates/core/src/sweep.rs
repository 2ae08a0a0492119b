//! Seeded randomized sweeps over catalog entries, derivation edges and
//! Mellin cases.
//!
//! Every trial owns a ChaCha8 stream whose 256-bit key is four SplitMix64
//! outputs of `seed ^ (stream << 32) ^ trial`, so a trial's parameters do
//! not depend on which other targets are swept, on `--jobs`, or on the
//! platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::catalog::{
    derivation_check, derivation_edges, float_omega, instantiate, verify, DerivationEdge, InstantiateOptions, Mode,
    Params, TheoremId, Values, Verdict,
};
use crate::mellin::{verify_mellin_case, MellinCase, MellinInstance};
use crate::rational::Rational;
use crate::report::{Record, RecordDetail};

pub const PRNG_DESCRIPTION: &str =
    "ChaCha8 (rand_chacha 0.9); per-trial key = SplitMix64 x4 of seed ^ (stream << 32) ^ trial; bounded integers by rejection on u64";

/// Candidate bindings drawn per trial before the trial is reported as
/// inapplicable.
pub const MAX_ATTEMPTS: u32 = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub theorems: Vec<TheoremId>,
    #[serde(default)]
    pub edges: bool,
    #[serde(default)]
    pub mellin_cases: Vec<MellinCase>,
    pub trials: u32,
    pub seed: u64,
    pub m_max: u64,
    pub k_max: u64,
    /// Numerators of sampled rationals lie in `[-magnitude, magnitude]`.
    pub magnitude: i64,
    /// Denominators lie in `[1, den_max]`.
    pub den_max: i64,
    /// Magnitude bound for Mellin parameters.
    pub mellin_magnitude: i64,
    pub float_tol: f64,
    pub quad_tol: f64,
    /// Smallest convergence parameter accepted for non-terminating series.
    pub min_omega: Rational,
    #[serde(default)]
    pub permissive: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: TheoremId::ALL.to_vec(),
            edges: false,
            mellin_cases: Vec::new(),
            trials: 100,
            seed: 0,
            m_max: 8,
            k_max: 8,
            magnitude: 20,
            den_max: 20,
            mellin_magnitude: 10,
            float_tol: 1e-10,
            quad_tol: 1e-8,
            min_omega: Rational::new(1, 4),
            permissive: false,
        }
    }
}

impl SweepConfig {
    fn opts(&self) -> InstantiateOptions {
        InstantiateOptions { permissive: self.permissive }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random source for one trial of one target.
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn new(seed: u64, stream: u64, trial: u64) -> Self {
        let mut state = seed ^ (stream << 32) ^ trial;
        let mut key = [0u8; 32];
        for chunk in key.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        TrialRng(ChaCha8Rng::from_seed(key))
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        let zone = u64::MAX - (u64::MAX - span + 1) % span;
        loop {
            let x = self.0.next_u64();
            if x <= zone {
                return lo + (x % span) as i64;
            }
        }
    }

    pub fn rational(&mut self, magnitude: i64, den_max: i64) -> Rational {
        let num = self.int(-magnitude, magnitude);
        let den = self.int(1, den_max);
        Rational::new(num, den)
    }

    pub fn positive_rational(&mut self, magnitude: i64, den_max: i64) -> Rational {
        let num = self.int(1, magnitude);
        let den = self.int(1, den_max);
        Rational::new(num, den)
    }
}

/// Stream number of a target; fixed so filtering targets leaves the others'
/// parameter sequences unchanged.
fn theorem_stream(id: TheoremId) -> u64 {
    TheoremId::ALL.iter().position(|x| *x == id).expect("catalog id") as u64
}

fn edge_stream(index: usize) -> u64 {
    1000 + index as u64
}

fn mellin_stream(case: MellinCase) -> u64 {
    match case {
        MellinCase::Generic => 2000,
        MellinCase::Numbered(n) => 2000 + n as u64,
    }
}

fn sample_values(rng: &mut TrialRng, cfg: &SweepConfig, magnitude: i64) -> Values {
    let low = if cfg.permissive { 0 } else { 1 };
    Values {
        m: rng.int(low, cfg.m_max as i64),
        k: rng.int(low, cfg.k_max as i64),
        a: rng.rational(magnitude, cfg.den_max),
        b: rng.rational(magnitude, cfg.den_max),
        g: rng.rational(magnitude, cfg.den_max),
        d: rng.rational(magnitude, cfg.den_max),
    }
}

/// Draws parameters for `id` until the instance is valid and both sides are
/// defined; `None` after [`MAX_ATTEMPTS`].
fn run_theorem_trial(id: TheoremId, cfg: &SweepConfig, trial: u32) -> (u32, Option<RecordDetail>) {
    let mut rng = TrialRng::new(cfg.seed, theorem_stream(id), trial as u64);
    for attempt in 1..=MAX_ATTEMPTS {
        let v = sample_values(&mut rng, cfg, cfg.magnitude);
        if id.mode() == Mode::Float {
            if let Some(omega) = float_omega(id, &v) {
                if omega < cfg.min_omega {
                    continue;
                }
            }
        }
        let params = Params::from_values(id, &v);
        let Ok(inst) = instantiate(id, &params, cfg.opts()) else { continue };
        let report = verify(&inst, cfg.float_tol);
        if report.verdict == Verdict::Inapplicable && report.invalid_instance == Some(true) {
            continue;
        }
        return (attempt, Some(RecordDetail::Theorem(Box::new(report))));
    }
    (MAX_ATTEMPTS, None)
}

fn run_edge_trial(index: usize, edge: &DerivationEdge, cfg: &SweepConfig, trial: u32) -> (u32, Option<RecordDetail>) {
    let mut rng = TrialRng::new(cfg.seed, edge_stream(index), trial as u64);
    for attempt in 1..=MAX_ATTEMPTS {
        let v = sample_values(&mut rng, cfg, cfg.magnitude);
        let params = Params::from_values(edge.child, &v);
        match derivation_check(edge.child, edge.parent, &params, cfg.opts()) {
            Ok(rep) => return (attempt, Some(RecordDetail::Edge(Box::new(rep)))),
            Err(_) => continue,
        }
    }
    (MAX_ATTEMPTS, None)
}

fn sample_mellin(rng: &mut TrialRng, cfg: &SweepConfig, case: MellinCase) -> MellinInstance {
    let mag = cfg.mellin_magnitude;
    let den = cfg.den_max.min(mag.max(1));
    let v = sample_values(rng, cfg, mag);
    let mu = rng.positive_rational(mag, den);
    let mut inst = MellinInstance::new(case, mu);
    match case.theorem() {
        Some(id) => {
            let p = Params::from_values(id, &v);
            inst.m = p.m;
            inst.k = p.k;
            inst.alpha = p.alpha;
            inst.beta = p.beta;
            inst.gamma = p.gamma;
        }
        None => {
            inst.m = Some(v.m as u64);
            inst.ell = Some(v.k as u64);
            inst.a = Some(v.a);
            inst.b = Some(v.b);
            inst.s = Some(rng.positive_rational(mag, den));
            inst.lambda = Some(v.g);
        }
    }
    inst
}

fn run_mellin_trial(case: MellinCase, cfg: &SweepConfig, trial: u32) -> (u32, Option<RecordDetail>) {
    let mut rng = TrialRng::new(cfg.seed, mellin_stream(case), trial as u64);
    for attempt in 1..=MAX_ATTEMPTS {
        let inst = sample_mellin(&mut rng, cfg, case);
        let report = verify_mellin_case(&inst, cfg.quad_tol, cfg.opts());
        if report.verdict == Verdict::Inapplicable && report.invalid_instance == Some(true) {
            continue;
        }
        return (attempt, Some(RecordDetail::Mellin(Box::new(report))));
    }
    (MAX_ATTEMPTS, None)
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Theorem(TheoremId),
    Edge(usize),
    Mellin(MellinCase),
}

fn jobs(cfg: &SweepConfig) -> Vec<(Job, u32)> {
    let mut targets: Vec<Job> = cfg.theorems.iter().map(|&id| Job::Theorem(id)).collect();
    if cfg.edges {
        targets.extend((0..derivation_edges().len()).map(Job::Edge));
    }
    targets.extend(cfg.mellin_cases.iter().map(|&c| Job::Mellin(c)));
    targets.into_iter().flat_map(|t| (0..cfg.trials).map(move |i| (t, i))).collect()
}

fn run_job(job: Job, trial: u32, cfg: &SweepConfig, edges: &[DerivationEdge]) -> (String, u32, Option<RecordDetail>) {
    match job {
        Job::Theorem(id) => {
            let (n, d) = run_theorem_trial(id, cfg, trial);
            (id.key().to_string(), n, d)
        }
        Job::Edge(i) => {
            let e = &edges[i];
            let (n, d) = run_edge_trial(i, e, cfg, trial);
            (format!("{}<-{}", e.child.key(), e.parent.key()), n, d)
        }
        Job::Mellin(c) => {
            let (n, d) = run_mellin_trial(c, cfg, trial);
            (format!("mellin.{c}"), n, d)
        }
    }
}

/// Runs every trial and returns the records in job order. `jobs` bounds the
/// worker threads (0 picks the default).
pub fn run_sweep(cfg: &SweepConfig, threads: usize) -> Vec<Record> {
    let list = jobs(cfg);
    let edges = derivation_edges();
    let work = |(i, &(job, trial)): (usize, &(Job, u32))| {
        let (target, attempts, detail) = run_job(job, trial, cfg, &edges);
        Record::new(i as u64, target, trial, attempts, detail)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
        if let Ok(pool) = pool {
            return pool.install(|| list.par_iter().enumerate().map(work).collect());
        }
    }
    let _ = threads;
    list.iter().enumerate().map(work).collect()
}
