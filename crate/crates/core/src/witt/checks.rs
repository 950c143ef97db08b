//! Randomized law checks for Witt vector rings and the index diagram
//! `n ↦ W⟨n⟩(A)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::truncation::TruncationSet;
use super::vector::WittVector;
use crate::check::{trial_rng, trial_seed, Finding, Ledger};
use crate::error::Result;
use crate::indexcat::{build_index_category, IndexMorphism};
use crate::ring::{Integers, Ring, RingSpec, SampleRing};

pub fn random_vector<R: SampleRing>(ring: &R, set: &TruncationSet, rng: &mut impl Rng) -> WittVector<R> {
    let coords = set.elements().iter().map(|_| ring.sample(rng)).collect();
    WittVector::from_coords(ring.clone(), set.clone(), coords).expect("one coordinate per element")
}

fn show<R: Ring>(x: &WittVector<R>) -> String {
    format!("({})", x.format_coords().join(","))
}

fn pointwise<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], op: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem) -> Vec<R::Elem> {
    a.iter().zip(b).map(|(x, y)| op(ring, x, y)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub ring: RingSpec,
    pub truncation: TruncationSet,
    pub trials: usize,
    pub seed: u64,
    pub findings: Vec<Finding>,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

/// Checks the commutative ring axioms of `W_S(A)`, that the ghost map is a
/// ring homomorphism, that Frobenius and restriction are ring
/// homomorphisms intertwined by the ghost map with index dilation, the
/// ghost formula for Verschiebung, and (for quotients of `ℤ`) that the
/// operations commute with reduction from `W_S(ℤ)`.
pub fn check_ring_axioms<R: SampleRing>(ring: &R, set: &TruncationSet, trials: usize, seed: u64) -> Result<WittReport> {
    let ledgers: Vec<Ledger> = (0..trials as u64)
        .into_par_iter()
        .map(|t| ring_trial(ring, set, seed, t))
        .collect::<Result<_>>()?;
    let mut all = Ledger::default();
    for l in ledgers {
        all.merge(l);
    }
    Ok(WittReport { ring: ring.spec(), truncation: set.clone(), trials, seed, findings: all.findings() })
}

fn ring_trial<R: SampleRing>(ring: &R, set: &TruncationSet, seed: u64, t: u64) -> Result<Ledger> {
    let mut rng = trial_rng(seed, t);
    let x = random_vector(ring, set, &mut rng);
    let y = random_vector(ring, set, &mut rng);
    let z = random_vector(ring, set, &mut rng);
    let at = || format!("trial {t} (seed {}): x={}, y={}, z={}", trial_seed(seed, t), show(&x), show(&y), show(&z));
    let zero = WittVector::zero(ring.clone(), set.clone());
    let one = WittVector::one(ring.clone(), set.clone());
    let mut l = Ledger::default();

    let xy = x.add(&y)?;
    let yz = y.add(&z)?;
    l.check("addition-associative", xy.add(&z)? == x.add(&yz)?, at);
    l.check("addition-commutative", xy == y.add(&x)?, at);
    l.check("additive-identity", x.add(&zero)? == x, at);
    l.check("additive-inverse", x.add(&x.neg())? == zero, at);
    let pxy = x.mul(&y)?;
    let pyz = y.mul(&z)?;
    l.check("multiplication-associative", pxy.mul(&z)? == x.mul(&pyz)?, at);
    l.check("multiplication-commutative", pxy == y.mul(&x)?, at);
    l.check("multiplicative-identity", x.mul(&one)? == x, at);
    l.check("distributive", x.mul(&yz)? == pxy.add(&x.mul(&z)?)?, at);

    let (gx, gy) = (x.ghost(), y.ghost());
    l.check("ghost-additive", xy.ghost() == pointwise(ring, &gx, &gy, R::add), at);
    l.check("ghost-multiplicative", pxy.ghost() == pointwise(ring, &gx, &gy, R::mul), at);

    if let (Some(lx), Some(ly)) = (lift(ring, &x), lift(ring, &y)) {
        let reduce = |v: WittVector<Integers>| v.map_ring(ring.clone(), |c| ring.from_int(c));
        l.check("lifting", reduce(lx.add(&ly)?) == xy && reduce(lx.mul(&ly)?) == pxy, at);
    }

    for &r in set.elements() {
        let (fx, fy) = (x.frobenius(r), y.frobenius(r));
        let ok = xy.frobenius(r) == fx.add(&fy)? && pxy.frobenius(r) == fx.mul(&fy)?;
        l.check("frobenius-ring-homomorphism", ok, || format!("F_{r}, {}", at()));
        let dilated: Vec<R::Elem> = fx.set().elements().iter().map(|&n| gx[set.position(r * n).unwrap()].clone()).collect();
        l.check("ghost-frobenius", fx.ghost() == dilated, || format!("F_{r}, {}", at()));
        let v = fx.verschiebung(r, set)?;
        let gf = fx.ghost();
        let expected: Vec<R::Elem> = set
            .elements()
            .iter()
            .map(|&n| match fx.set().position(n / r) {
                Some(i) if n % r == 0 => ring.mul(&ring.from_i64(r as i64), &gf[i]),
                _ => ring.zero(),
            })
            .collect();
        l.check("ghost-verschiebung", v.ghost() == expected, || format!("V_{r}, {}", at()));
        let sub = TruncationSet::divisors_of(r);
        let (rx, ry) = (x.restrict(&sub)?, y.restrict(&sub)?);
        let ok = xy.restrict(&sub)? == rx.add(&ry)? && pxy.restrict(&sub)? == rx.mul(&ry)?;
        l.check("restriction-ring-homomorphism", ok, || format!("⟨{r}⟩, {}", at()));
    }
    Ok(l)
}

fn lift<R: SampleRing>(ring: &R, x: &WittVector<R>) -> Option<WittVector<Integers>> {
    let coords = x.coords().iter().map(|c| ring.lift(c)).collect::<Option<Vec<_>>>()?;
    WittVector::from_coords(Integers, x.set().clone(), coords).ok()
}

/// How restriction is evaluated in [`check_index_diagram`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RestrictionMode {
    /// Keep the coordinates indexed by the subset.
    #[default]
    Projection,
    /// Keep the leading coordinates by position, ignoring their indices.
    /// Wrong whenever the subset is not an initial segment; a negative control.
    Positional,
}

fn restrict_with<R: Ring>(x: &WittVector<R>, target: &TruncationSet, mode: RestrictionMode) -> Result<WittVector<R>> {
    match mode {
        RestrictionMode::Projection => x.restrict(target),
        RestrictionMode::Positional => {
            WittVector::from_coords(x.ring().clone(), target.clone(), x.coords()[..target.len()].to_vec())
        }
    }
}

/// `(r, s): rns → n` acts as `F_r ∘ R_s: W⟨rns⟩ → W⟨rn⟩ → W⟨n⟩`.
fn act<R: Ring>(p: &IndexMorphism, x: &WittVector<R>, mode: RestrictionMode) -> Result<WittVector<R>> {
    let mid = TruncationSet::divisors_of(p.source / p.s);
    Ok(restrict_with(x, &mid, mode)?.frobenius(p.r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub ring: RingSpec,
    pub bound: u64,
    pub trials: usize,
    pub seed: u64,
    pub mode: RestrictionMode,
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub findings: Vec<Finding>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

/// Realizes `n ↦ W⟨n⟩(A)` on the index category up to `bound`, with
/// `F_r` acting by Frobenius and `R_s` by restriction, and checks on random
/// vectors that identities act trivially, that composites act as the
/// composite of the actions, and that `F_r R_s = R_s F_r`.
pub fn check_index_diagram<R: SampleRing>(
    ring: &R,
    bound: u64,
    trials: usize,
    seed: u64,
    mode: RestrictionMode,
) -> Result<DiagramReport> {
    let ic = build_index_category(bound)?;
    let c = &ic.category;
    let pairs: Vec<(usize, usize)> = c.composable_pairs().collect();
    let ledgers: Vec<Ledger> = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<Ledger> {
            let mut rng = trial_rng(seed, t);
            let xs: Vec<WittVector<R>> =
                (1..=bound).map(|n| random_vector(ring, &TruncationSet::divisors_of(n), &mut rng)).collect();
            let at = |n: u64| format!("trial {t} (seed {}): x={}", trial_seed(seed, t), show(&xs[(n - 1) as usize]));
            let images = ic
                .morphisms
                .iter()
                .map(|p| act(p, &xs[(p.source - 1) as usize], mode))
                .collect::<Result<Vec<_>>>()?;
            let mut l = Ledger::default();
            for n in 1..=bound {
                let id = ic.index(&IndexMorphism::identity(n)).unwrap();
                l.check("identities", images[id] == xs[(n - 1) as usize], || format!("id_{n}, {}", at(n)));
            }
            for &(g, f) in &pairs {
                let (pg, pf) = (&ic.morphisms[g], &ic.morphisms[f]);
                let ok = act(pg, &images[f], mode)? == images[c.compose(g, f)];
                l.check("functoriality", ok, || format!("{pg} after {pf}, {}", at(pf.source)));
            }
            for p in ic.morphisms.iter().filter(|p| p.r > 1 && p.s > 1) {
                let x = &xs[(p.source - 1) as usize];
                let target = TruncationSet::divisors_of(p.target);
                let frob_first = restrict_with(&x.frobenius(p.r), &target, mode)?;
                l.check("frobenius-restriction-commute", frob_first == images[ic.index(p).unwrap()], || {
                    format!("F_{} R_{} on W⟨{}⟩, {}", p.r, p.s, p.source, at(p.source))
                });
            }
            Ok(l)
        })
        .collect::<Result<_>>()?;
    let mut all = Ledger::default();
    for l in ledgers {
        all.merge(l);
    }
    Ok(DiagramReport {
        ring: ring.spec(),
        bound,
        trials,
        seed,
        mode,
        morphisms: ic.morphisms.len(),
        composable_pairs: pairs.len(),
        findings: all.findings(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{IntegersMod, Rationals};

    #[test]
    fn ring_axioms_small_runs() {
        let s = TruncationSet::divisors_of(12);
        let r = check_ring_axioms(&Integers, &s, 20, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.findings.iter().any(|f| f.name == "lifting"));
        let r = check_ring_axioms(&IntegersMod::new(6).unwrap(), &s, 20, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_ring_axioms(&Rationals, &TruncationSet::divisors_of(6), 10, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(!r.findings.iter().any(|f| f.name == "lifting"));
    }

    #[test]
    fn index_diagram_passes_and_control_fails() {
        let z4 = IntegersMod::new(4).unwrap();
        let r = check_index_diagram(&z4, 12, 100, 7, RestrictionMode::Projection).unwrap();
        assert!(r.passed(), "{r:?}");
        let bad = check_index_diagram(&z4, 12, 20, 7, RestrictionMode::Positional).unwrap();
        let commute = bad.findings.iter().find(|f| f.name == "frobenius-restriction-commute").unwrap();
        assert!(!commute.passed);
        assert!(bad.findings.iter().find(|f| f.name == "identities").unwrap().passed);
    }

    #[test]
    fn reports_are_reproducible() {
        let z5 = IntegersMod::new(5).unwrap();
        let s = TruncationSet::divisors_of(12);
        let a = check_ring_axioms(&z5, &s, 15, 99).unwrap();
        assert_eq!(a, check_ring_axioms(&z5, &s, 15, 99).unwrap());
    }
}
