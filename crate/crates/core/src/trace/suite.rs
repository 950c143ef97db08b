use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{trc0, RingMatrix};
use crate::check::{trial_rng, trial_seed, Finding, Ledger};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingSpec};
use crate::with_ring;
use crate::witt::{TruncationSet, WittVector};

/// Which Witt multiplication the multiplicativity law is checked against.
pub trait Backend: Sync {
    fn name(&self) -> &'static str;
    fn mul<R: Ring>(&self, x: &WittVector<R>, y: &WittVector<R>) -> Result<WittVector<R>>;
}

pub struct StandardBackend;

impl Backend for StandardBackend {
    fn name(&self) -> &'static str {
        "standard"
    }
    fn mul<R: Ring>(&self, x: &WittVector<R>, y: &WittVector<R>) -> Result<WittVector<R>> {
        x.mul(y)
    }
}

/// Returns its first argument: a broken multiplication for negative controls.
pub struct StubMulBackend;

impl Backend for StubMulBackend {
    fn name(&self) -> &'static str {
        "stub-mul"
    }
    fn mul<R: Ring>(&self, x: &WittVector<R>, _y: &WittVector<R>) -> Result<WittVector<R>> {
        Ok(x.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TraceConfig {
    pub sizes: Vec<usize>,
    pub rings: Vec<RingSpec>,
    pub truncations: Vec<TruncationSet>,
    /// Trials per ring and truncation set.
    pub trials: usize,
    /// Frobenius indices `1..=max_power`.
    pub max_power: u64,
    /// Integer entries are drawn from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    pub seed: u64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            sizes: vec![1, 2, 3],
            rings: vec![RingSpec::Integers, RingSpec::Mod(5)],
            truncations: vec![TruncationSet::divisors_of(12)],
            trials: 200,
            max_power: 4,
            entry_bound: 2,
            seed: 0,
        }
    }
}

impl TraceConfig {
    pub fn empty() -> Self {
        TraceConfig { sizes: vec![], rings: vec![], truncations: vec![], trials: 0, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCase {
    pub ring: RingSpec,
    pub truncation: TruncationSet,
    pub trials: usize,
    /// Seed of each trial, for replay.
    pub seeds: Vec<u64>,
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub seed: u64,
    pub backend: String,
    pub cases: Vec<TraceCase>,
    /// Per-law verdicts over all cases.
    pub findings: Vec<Finding>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

const MAX_ATTEMPTS: usize = 100_000;

fn random_invertible<R: Ring>(ring: &R, size: usize, bound: i64, rng: &mut ChaCha8Rng) -> Result<RingMatrix<R>> {
    for _ in 0..MAX_ATTEMPTS {
        let entries: Vec<i64> = (0..size * size).map(|_| rng.random_range(-bound..=bound)).collect();
        let m = RingMatrix::from_fn(ring.clone(), size, |i, j| ring.from_i64(entries[i * size + j]));
        if m.is_invertible() {
            return Ok(m);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no invertible {size}×{size} matrix over {} found with entries in [-{bound}, {bound}]",
        ring.spec()
    )))
}

/// Checks on random invertible matrices:
/// `trc0(α ⊕ β) = trc0(α) + trc0(β)`, `trc0(α ⊗ β) = trc0(α)·trc0(β)`,
/// `F_r trc0(α) = trc0(α^r)`, `trc0(gαg⁻¹) = trc0(α)` and
/// `ghost_m trc0(α) = tr(α^m)`.
pub fn trace_property_suite<B: Backend>(config: &TraceConfig, backend: &B) -> Result<TraceReport> {
    if config.sizes.contains(&0) {
        return Err(Error::InvalidArgument("matrix sizes must be positive".into()));
    }
    let mut cases = Vec::new();
    let mut all = Ledger::default();
    let mut case_index = 0u64;
    for &spec in &config.rings {
        for set in &config.truncations {
            let case_seed = trial_seed(config.seed, case_index);
            case_index += 1;
            let (ledger, seeds) = if config.sizes.is_empty() || set.is_empty() {
                (Ledger::default(), vec![])
            } else {
                with_ring!(spec, |ring| run_case(&ring, set, config, case_seed, backend))?
            };
            let findings = ledger.findings();
            for f in &findings {
                let label = format!("{spec} {set}: ");
                all.check(&f.name, f.passed, || label + f.witness.as_deref().unwrap_or(""));
            }
            cases.push(TraceCase { ring: spec, truncation: set.clone(), trials: seeds.len(), seeds, findings });
        }
    }
    Ok(TraceReport { seed: config.seed, backend: backend.name().into(), cases, findings: all.findings() })
}

fn run_case<R: Ring, B: Backend>(
    ring: &R,
    set: &TruncationSet,
    config: &TraceConfig,
    seed: u64,
    backend: &B,
) -> Result<(Ledger, Vec<u64>)> {
    let ledgers: Vec<Ledger> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| trial(ring, set, config, seed, t, backend))
        .collect::<Result<_>>()?;
    let mut all = Ledger::default();
    for l in ledgers {
        all.merge(l);
    }
    Ok((all, (0..config.trials as u64).map(|t| trial_seed(seed, t)).collect()))
}

fn trial<R: Ring, B: Backend>(
    ring: &R,
    set: &TruncationSet,
    config: &TraceConfig,
    seed: u64,
    t: u64,
    backend: &B,
) -> Result<Ledger> {
    let mut rng = trial_rng(seed, t);
    let pick = |rng: &mut ChaCha8Rng| config.sizes[rng.random_range(0..config.sizes.len())];
    let (na, nb) = (pick(&mut rng), pick(&mut rng));
    let alpha = random_invertible(ring, na, config.entry_bound, &mut rng)?;
    let beta = random_invertible(ring, nb, config.entry_bound, &mut rng)?;
    let g = random_invertible(ring, na, config.entry_bound, &mut rng)?;
    let at = || format!("trial {t} (seed {}): α={alpha}, β={beta}, g={g}", trial_seed(seed, t));
    let mut l = Ledger::default();

    let ta = trc0(&alpha, set, false)?;
    let tb = trc0(&beta, set, false)?;
    let sum = trc0(&alpha.block_sum(&beta)?, set, false)?;
    l.check("block-sum-additive", sum == ta.add(&tb)?, at);
    let product = trc0(&alpha.kron(&beta)?, set, false)?;
    l.check("kronecker-multiplicative", product == backend.mul(&ta, &tb)?, at);
    for r in 1..=config.max_power {
        let target = set.quotient(r);
        if target.is_empty() {
            continue;
        }
        let ok = ta.frobenius(r) == trc0(&alpha.pow(r), &target, false)?;
        l.check("frobenius-power", ok, || format!("r={r}, {}", at()));
    }
    let conj = g.mul(&alpha)?.mul(&g.inverse().expect("sampled invertible"))?;
    l.check("similarity-invariant", trc0(&conj, set, false)? == ta, at);
    let power_sums: Vec<R::Elem> = set.elements().iter().map(|&m| alpha.pow(m).trace()).collect();
    l.check("ghost-power-sums", ta.ghost() == power_sums, at);
    Ok(l)
}
