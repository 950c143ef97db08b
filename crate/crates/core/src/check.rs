//! Verdicts shared by the verification suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One named check with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Finding {
    pub fn new(name: impl Into<String>, failures: Vec<String>) -> Self {
        Finding { name: name.into(), passed: failures.is_empty(), witness: failures.into_iter().next() }
    }
}

pub(crate) const MAX_WITNESSES: usize = 8;

pub(crate) struct Collector(pub Vec<String>);

impl Collector {
    pub fn new() -> Self {
        Collector(Vec::new())
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok && self.0.len() < MAX_WITNESSES {
            self.0.push(msg());
        }
    }
}

/// Seed of trial `index` in a run seeded with `seed` (SplitMix64 step), so
/// trials can run in any order and be replayed one at a time.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index))
}

/// Named failure lists merged into findings, in first-seen order.
#[derive(Default)]
pub(crate) struct Ledger {
    entries: Vec<(String, Vec<String>)>,
}

impl Ledger {
    pub fn check(&mut self, name: &str, ok: bool, msg: impl FnOnce() -> String) {
        let pos = match self.entries.iter().position(|(n, _)| n == name) {
            Some(p) => p,
            None => {
                self.entries.push((name.to_string(), Vec::new()));
                self.entries.len() - 1
            }
        };
        let list = &mut self.entries[pos].1;
        if !ok && list.len() < MAX_WITNESSES {
            list.push(msg());
        }
    }

    pub fn merge(&mut self, other: Ledger) {
        for (name, failures) in other.entries {
            for f in failures.iter() {
                self.check(&name, false, || f.clone());
            }
            self.check(&name, true, String::new);
        }
    }

    pub fn findings(self) -> Vec<Finding> {
        self.entries.into_iter().map(|(n, f)| Finding::new(n, f)).collect()
    }
}
