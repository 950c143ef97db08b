//! Named verification suites, their configuration, and the report.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barcat::{
    check_diagonal_on_tuples, cyclic_bar, diagonal_restriction_of, frobenius_bar_of, nerve, project_to_nerve, FinCategory,
    Monoid,
};
use crate::check::{trial_seed, Finding};
use crate::error::{Error, Result};
use crate::homology::homology_through;
use crate::indexcat::{
    build_index_category, check_relations, check_theta_iso, collapsing_control, constant_terminal, corrupt_composition,
    grothendieck_construct, group_action_instances, index_dictionary, naturals_on_divisibility, power_action,
    twisted_index_category, verify_kan_scaffold, CatValuedFunctor,
};
use crate::ring::{Integers, IntegersMod, RingSpec};
use crate::simplicial::{builtin, validate, validate_map, SimplicialMap, SimplicialSet};
use crate::subdivision::{edgewise_subdivide, expand_homotopy, fixed_subcomplex, two_prime_display, verify_cube_face_relations};
use crate::trace::{trace_property_suite, trc0, RingMatrix, StandardBackend, StubMulBackend, TraceConfig};
use crate::witt::{check_index_diagram, check_ring_axioms, RestrictionMode, TruncationSet};

/// Sizes and trial counts for the suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub index_bound: u64,
    pub grothendieck_bound: u64,
    pub theta_bound: u64,
    pub kan_bound: u64,
    pub witt_moduli: Vec<u64>,
    pub witt_truncation: u64,
    pub witt_trials: usize,
    pub diagram_bound: u64,
    pub diagram_trials: usize,
    pub trace_trials: usize,
    pub trace_max_power: u64,
    pub trace_truncation: u64,
    pub space_truncation: usize,
    pub bar_truncation: usize,
    /// Simplex budget for the bar-operator suite: each monoid's cyclic bar
    /// construction is truncated at the largest degree within the budget.
    pub bar_budget: usize,
    pub bar_degree: usize,
    pub coherence_primes: Vec<u64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            index_bound: 24,
            grothendieck_bound: 12,
            theta_bound: 6,
            kan_bound: 6,
            witt_moduli: vec![0, 2, 4, 5, 6],
            witt_truncation: 12,
            witt_trials: 500,
            diagram_bound: 12,
            diagram_trials: 100,
            trace_trials: 200,
            trace_max_power: 4,
            trace_truncation: 12,
            space_truncation: 11,
            bar_truncation: 8,
            bar_budget: 70_000,
            bar_degree: 4,
            coherence_primes: vec![2, 3, 5],
        }
    }
}

impl Bounds {
    fn check(&self) -> Result<()> {
        let positive = [
            ("index_bound", self.index_bound),
            ("grothendieck_bound", self.grothendieck_bound),
            ("theta_bound", self.theta_bound),
            ("kan_bound", self.kan_bound),
            ("witt_truncation", self.witt_truncation),
            ("witt_trials", self.witt_trials as u64),
            ("diagram_bound", self.diagram_bound),
            ("diagram_trials", self.diagram_trials as u64),
            ("trace_trials", self.trace_trials as u64),
            ("trace_max_power", self.trace_max_power),
            ("trace_truncation", self.trace_truncation),
            ("space_truncation", self.space_truncation as u64),
            ("bar_truncation", self.bar_truncation as u64),
            ("bar_budget", self.bar_budget as u64),
            ("bar_degree", self.bar_degree as u64),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::InvalidArgument(format!("bound `{name}` must be positive"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Registered suite names; `full` expands to every suite.
    pub checks: Vec<String>,
    pub bounds: Bounds,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn full(seed: u64) -> Self {
        SuiteConfig { checks: vec!["full".into()], bounds: Bounds::default(), seed }
    }

    /// The suites to run, in registry order without repeats. Fails on an
    /// unknown name or a zero bound, before anything runs.
    pub fn resolve(&self) -> Result<Vec<&'static str>> {
        self.bounds.check()?;
        let mut wanted = BTreeSet::new();
        for name in &self.checks {
            if name == "full" {
                wanted.extend(0..SUITES.len());
                continue;
            }
            let i = SUITES.iter().position(|(n, _)| n == name).ok_or_else(|| Error::UnknownCheck(name.clone()))?;
            wanted.insert(i);
        }
        Ok(wanted.into_iter().map(|i| SUITES[i].0).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub findings: Vec<Finding>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    /// The report with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0.0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("epicyclic {} seed {}\n", self.tool_version, self.seed);
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            out += &format!("{verdict} {} ({:.0} ms)\n", c.name, c.elapsed_ms);
            for f in &c.findings {
                let mark = if f.passed { "ok  " } else { "FAIL" };
                out += &format!("    {mark} {}", f.name);
                if let Some(w) = &f.witness {
                    out += &format!(": {w}");
                }
                out += "\n";
            }
        }
        out += if self.passed { "all checks passed\n" } else { "some checks failed\n" };
        out
    }
}

type SuiteFn = fn(&Bounds, u64) -> Result<Vec<Finding>>;

/// Every registered suite, in report order.
pub const SUITES: [(&str, SuiteFn); 11] = [
    ("index-relations", index_relations),
    ("index-grothendieck", index_grothendieck),
    ("theta", theta),
    ("kan-scaffold", kan_scaffold),
    ("witt-ring", witt_ring),
    ("witt-diagram", witt_diagram),
    ("trace-laws", trace_laws),
    ("subdivision", subdivision),
    ("bar-operators", bar_operators),
    ("conjugacy", conjugacy),
    ("coherence", coherence),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one named suite.
pub fn run_check(name: &str, bounds: &Bounds, seed: u64) -> Result<Vec<Finding>> {
    let (i, (_, f)) =
        SUITES.iter().enumerate().find(|(_, (n, _))| *n == name).ok_or_else(|| Error::UnknownCheck(name.into()))?;
    f(bounds, trial_seed(seed, i as u64))
}

/// Runs the configured suites, concurrently, and assembles the report in
/// registry order. An error inside a suite is reported as a failed finding.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let names = config.resolve()?;
    let checks: Vec<CheckOutcome> = names
        .par_iter()
        .map(|&name| {
            let start = Instant::now();
            let findings = run_check(name, &config.bounds, config.seed)
                .unwrap_or_else(|e| vec![Finding::new("error", vec![e.to_string()])]);
            CheckOutcome {
                name: name.into(),
                passed: findings.iter().all(|f| f.passed),
                findings,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        seed: config.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn expect(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Finding {
    Finding::new(name, if ok { vec![] } else { vec![witness()] })
}

fn prefixed(prefix: &str, findings: Vec<Finding>) -> Vec<Finding> {
    findings.into_iter().map(|f| Finding { name: format!("{prefix}: {}", f.name), ..f }).collect()
}

/// Collapses a list of findings into one, keeping the first failure.
fn summarize(name: impl Into<String>, findings: &[Finding]) -> Finding {
    let failures =
        findings.iter().filter(|f| !f.passed).map(|f| format!("{}: {}", f.name, f.witness.as_deref().unwrap_or(""))).collect();
    Finding::new(name, failures)
}

fn index_relations(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let ic = build_index_category(b.index_bound)?;
    let report = check_relations(&ic);
    let mut failures = report.failures.clone();
    failures.extend(report.law_violations.iter().map(|v| v.to_string()));
    Ok(vec![Finding::new(format!("relations ({} instances)", report.instances), failures)])
}

fn index_grothendieck(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let bound = b.grothendieck_bound;
    let groth = grothendieck_construct(&naturals_on_divisibility(bound))?;
    let ic = build_index_category(bound)?;
    let (sub, dict) = index_dictionary(&groth, bound, &ic);
    let laws = groth.category.validate().iter().map(|v| v.to_string()).collect();
    let iso = dict.is_isomorphism(&ic.category, &sub.category);
    let q = 4;
    let small = build_index_category(bound.min(6))?;
    let twisted = twisted_index_category(small.bound, q as u64)?;
    let power = grothendieck_construct(&power_action(&small, q))?;
    let twisted_iso = crate::barcat::Functor {
        objects: (0..small.bound as usize).map(|n| power.object(n, 0)).collect(),
        morphisms: (0..twisted.morphism_count()).map(|i| power.morphism(i / q, i % q, 0).unwrap()).collect(),
    }
    .is_isomorphism(&twisted, &power.category);
    Ok(vec![
        Finding::new("category-laws", laws),
        expect(format!("isomorphic to the index category at bound {bound}"), iso, || {
            "dictionary (r,s) ↦ (r,s) is not an isomorphism".into()
        }),
        expect("twisted composition law is a Grothendieck construction", twisted_iso, || {
            format!("power-map construction over ℤ/{q} differs from (r₁r₂, s₁s₂, r₂z₁+z₂)")
        }),
    ])
}

fn theta_instances(b: &Bounds) -> Vec<(String, CatValuedFunctor)> {
    let mut out = vec![
        ("terminal over S3".to_string(), constant_terminal(&Monoid::symmetric3().as_category())),
        (format!("N≤{0} on 𝒩≤{0}", b.theta_bound), naturals_on_divisibility(b.theta_bound)),
    ];
    out.extend(group_action_instances().into_iter().map(|(n, f)| (n.to_string(), f)));
    out
}

fn theta(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (name, f) in theta_instances(b) {
        let g = grothendieck_construct(&f)?;
        let r = check_theta_iso(&f, &g, None)?;
        let mut failures = Vec::new();
        if !r.hypothesis {
            failures.push(format!("hypothesis fails: {}", r.hypothesis_witness.unwrap_or_default()));
        }
        if !r.theta_iso {
            failures.push(format!("Θ is not an isomorphism: {}", r.theta_witness.unwrap_or_default()));
        }
        out.push(Finding::new(name, failures));
    }
    let f = collapsing_control();
    let r = check_theta_iso(&f, &grothendieck_construct(&f)?, None)?;
    out.push(expect("negative control fails the hypothesis", !r.hypothesis && r.hypothesis_witness.is_some(), || {
        "collapsing functor passed the hypothesis".into()
    }));
    out.push(expect("hypothesis implies Θ iso on the control", r.consistent(), || {
        "hypothesis held but Θ is not an isomorphism".into()
    }));
    Ok(out)
}

fn kan_scaffold(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    let instances = [
        ("terminal over Z/3".to_string(), constant_terminal(&Monoid::cyclic(3).as_category())),
        (format!("N≤{0} on 𝒩≤{0}", b.kan_bound), naturals_on_divisibility(b.kan_bound)),
    ];
    for (name, f) in &instances {
        let g = grothendieck_construct(f)?;
        out.push(summarize(name.clone(), &verify_kan_scaffold(f, &g, 0)?.findings));
    }
    let f = &instances[0].1;
    let corrupted = corrupt_composition(&grothendieck_construct(f)?)
        .ok_or_else(|| Error::InvalidArgument("nothing to corrupt".into()))?;
    let report = verify_kan_scaffold(f, &corrupted, 0)?;
    let caught = !report.findings[0].passed && report.findings[0].witness.as_deref().is_some_and(|w| w.contains("(h, g, f)"));
    out.push(expect("corrupted composition is caught with a witness triple", caught, || format!("{report:?}")));
    Ok(out)
}

fn moduli_rings(b: &Bounds) -> Vec<RingSpec> {
    b.witt_moduli.iter().map(|&m| if m == 0 { RingSpec::Integers } else { RingSpec::Mod(m) }).collect()
}

fn witt_ring(b: &Bounds, seed: u64) -> Result<Vec<Finding>> {
    let set = TruncationSet::divisors_of(b.witt_truncation);
    moduli_rings(b)
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            let s = trial_seed(seed, i as u64);
            let report = crate::with_ring!(spec, |ring| check_ring_axioms(&ring, &set, b.witt_trials, s))?;
            Ok(summarize(format!("W_{set}({spec}), {} trials", b.witt_trials), &report.findings))
        })
        .collect()
}

fn witt_diagram(b: &Bounds, seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (i, spec) in moduli_rings(b).into_iter().enumerate() {
        let s = trial_seed(seed, i as u64);
        let report = crate::with_ring!(spec, |ring| check_index_diagram(
            &ring,
            b.diagram_bound,
            b.diagram_trials,
            s,
            RestrictionMode::Projection
        ))?;
        out.push(summarize(format!("n ↦ W⟨n⟩({spec}) on 𝕀≤{}", b.diagram_bound), &report.findings));
    }
    let z4 = IntegersMod::new(4)?;
    let bad = check_index_diagram(&z4, b.diagram_bound, b.diagram_trials.min(20), seed, RestrictionMode::Positional)?;
    let caught = bad.findings.iter().any(|f| f.name == "frobenius-restriction-commute" && !f.passed);
    out.push(expect("mis-ordered restriction breaks F_rR_s = R_sF_r", caught, || {
        "positional restriction was not detected".into()
    }));
    Ok(out)
}

fn zmatrix(rows: &[&[i64]]) -> RingMatrix<Integers> {
    RingMatrix::from_rows(Integers, rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect())
        .expect("square")
}

fn trace_laws(b: &Bounds, seed: u64) -> Result<Vec<Finding>> {
    let config = TraceConfig {
        trials: b.trace_trials,
        max_power: b.trace_max_power,
        truncations: vec![TruncationSet::divisors_of(b.trace_truncation)],
        seed,
        ..TraceConfig::default()
    };
    let report = trace_property_suite(&config, &StandardBackend)?;
    let mut out = report.findings;
    let stub = trace_property_suite(&TraceConfig { trials: config.trials.min(20), ..config.clone() }, &StubMulBackend)?;
    let caught = stub.findings.iter().any(|f| f.name == "kronecker-multiplicative" && !f.passed);
    out.push(expect("stub multiplication is caught", caught, || "stub Witt product passed law (b)".into()));
    let swap = zmatrix(&[&[0, 1], &[1, 0]]);
    let (s4, s2) = (TruncationSet::divisors_of(4), TruncationSet::divisors_of(2));
    let t = trc0(&swap, &s4, false)?;
    let f2 = t.frobenius(2);
    let i2 = trc0(&zmatrix(&[&[1, 0], &[0, 1]]), &s2, false)?;
    let ok = t.format_coords() == ["0", "1", "0"] && f2.format_coords() == ["2", "-1"] && f2 == i2;
    out.push(expect("trc0(swap) = (0,1,0), F_2 ↦ (2,-1) = trc0(I₂)", ok, || {
        format!("trc0(swap) = {:?}, F_2 = {:?}, trc0(I₂) = {:?}", t.format_coords(), f2.format_coords(), i2.format_coords())
    }));
    Ok(out)
}

fn spaces(b: &Bounds) -> Vec<(String, SimplicialSet)> {
    let n = b.space_truncation;
    let m = b.bar_truncation;
    vec![
        ("circle".into(), builtin("circle", n).expect("builtin")),
        ("sphere2".into(), builtin("sphere2", n).expect("builtin")),
        ("B^cy(Z/2)".into(), cyclic_bar(&Monoid::cyclic(2).as_category(), m).set),
        ("B^cy(Z/3)".into(), cyclic_bar(&Monoid::cyclic(3).as_category(), m).set),
    ]
}

fn subdivision(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (name, x) in spaces(b) {
        let mut sd = Vec::new();
        for r in [2usize, 3] {
            let s = edgewise_subdivide(&x, r)?;
            let violations: Vec<String> = validate(&s.result).iter().map(|v| v.to_string()).collect();
            out.push(Finding::new(format!("sd_{r} {name} is a valid cyclic object"), violations));
            let fixed = fixed_subcomplex(&s)?;
            let violations = validate(&fixed.complex).iter().map(|v| v.to_string()).collect();
            out.push(Finding::new(format!("C_{r}-fixed points of sd_{r} {name}"), violations));
            let top = s.result.truncation();
            if top > 0 {
                let before = homology_through(&x, top - 1)?;
                let after = homology_through(&s.result, top - 1)?;
                out.push(expect(format!("H_≤{} sd_{r} {name} = H_≤{} {name}", top - 1, top - 1), before == after, || {
                    let show = |h: &[crate::homology::HomologyGroup]| h.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
                    format!("{} vs {}", show(&after), show(&before))
                }));
            }
            sd.push(s);
        }
        for (r, s) in [(2usize, 2usize), (2, 3), (3, 2)] {
            let inner = edgewise_subdivide(&x, s)?;
            let twice = edgewise_subdivide(&inner.result, r)?;
            let once = edgewise_subdivide(&x, r * s)?;
            out.push(expect(format!("sd_{r} sd_{s} {name} = sd_{} {name}", r * s), twice.result == once.result, || {
                format!("counts {:?} vs {:?}", twice.result.counts(), once.result.counts())
            }));
        }
    }
    Ok(out)
}

fn bar_monoids() -> Vec<(&'static str, Monoid)> {
    vec![
        ("Z/2", Monoid::cyclic(2)),
        ("Z/3", Monoid::cyclic(3)),
        ("Z/4", Monoid::cyclic(4)),
        ("S3", Monoid::symmetric3()),
        ("idempotent pair", Monoid::idempotent_pair()),
    ]
}

/// Largest `N` with `|M|^{N+1}` within the budget, so that `Δ_r` reaches
/// degree `(N+1)/r - 1`; capped where `Δ_2` already covers `max_degree`.
fn bar_truncation_for(m: &Monoid, budget: usize, max_degree: usize) -> usize {
    let cap = 2 * (max_degree + 1) - 1;
    let mut n = 0;
    while n < cap && m.len().checked_pow(n as u32 + 2).is_some_and(|c| c <= budget) {
        n += 1;
    }
    n
}

fn maps_equal_on(f: &SimplicialMap, g: &SimplicialMap, top: usize) -> bool {
    f.components.iter().zip(&g.components).take(top + 1).all(|(a, b)| a == b)
}

fn bar_operators(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (name, m) in bar_monoids() {
        let n = bar_truncation_for(&m, b.bar_budget, b.bar_degree);
        out.extend(bar_operator_findings(&m.as_category(), name, n, b.bar_degree, &BarCheck::ALL)?);
    }
    Ok(out)
}

/// The operator checks on a cyclic bar construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BarCheck {
    /// Cyclic validation of `B^cy(C)` and the nerve.
    Validate,
    /// `Δ_r`, `R_r` for `r ∈ {2, 3}`, enumerated and on tuples.
    Diagonal,
    /// `F̄_rF̄_s = F̄_rs` for `r, s ∈ {1, 2, 3}`.
    Frobenius,
    /// `project_to_nerve ∘ F̄_r = project_to_nerve`.
    Projection,
    /// `F̄_r(f) = f^r` in degree 0.
    Power,
}

impl BarCheck {
    pub const ALL: [BarCheck; 5] =
        [BarCheck::Validate, BarCheck::Diagonal, BarCheck::Frobenius, BarCheck::Projection, BarCheck::Power];
}

/// Runs the selected checks on `B^cy(C)` truncated at `truncation`.
/// Statements are checked in degrees up to `degree`, or as far as the
/// truncation allows; the tuple-level `Δ_r` check always reaches `degree`.
pub fn bar_operator_findings(
    c: &FinCategory,
    name: &str,
    truncation: usize,
    degree: usize,
    checks: &[BarCheck],
) -> Result<Vec<Finding>> {
    let n = truncation;
    let full = cyclic_bar(c, n);
    let mut out = Vec::new();
    if checks.contains(&BarCheck::Validate) {
        let nv = nerve(c, n);
        let mut problems: Vec<String> = validate(&full.set).iter().map(|v| v.to_string()).collect();
        problems.extend(validate(&nv.set).iter().map(|v| format!("nerve: {v}")));
        out.push(Finding::new(format!("B^cy({name}) and its nerve are valid through degree {n}"), problems));
    }
    if checks.contains(&BarCheck::Diagonal) {
        for r in [2usize, 3] {
            if n + 1 >= r {
                let dr = diagonal_restriction_of(&full, r)?;
                let top = dr.delta.top_degree().unwrap_or(0).min(degree);
                let id_bar = SimplicialMap::identity(&dr.bar.set, top);
                let id_fixed = SimplicialMap::identity(&dr.fixed.complex, top);
                let inverse = maps_equal_on(&dr.restriction.after(&dr.delta), &id_bar, top)
                    && maps_equal_on(&dr.delta.after(&dr.restriction), &id_fixed, top);
                let mut problems: Vec<String> = validate_map(&dr.delta, &dr.bar.set, &dr.fixed.complex, true)
                    .iter()
                    .chain(validate_map(&dr.restriction, &dr.fixed.complex, &dr.bar.set, true).iter())
                    .map(|v| v.to_string())
                    .collect();
                if !inverse {
                    problems.insert(0, "R_r ∘ Δ_r or Δ_r ∘ R_r is not the identity".into());
                }
                out.push(Finding::new(format!("Δ_{r}, R_{r} on B^cy({name}), degrees ≤ {top}"), problems));
            }
            let on_tuples = check_diagonal_on_tuples(c, r, degree)?;
            out.push(Finding::new(format!("Δ_{r}, R_{r} on tuples of B^cy({name}), degrees ≤ {degree}"), on_tuples));
        }
    }
    let frob: Vec<Option<SimplicialMap>> =
        (0..=9).map(|r| if r == 0 { None } else { frobenius_bar_of(&full, r).ok() }).collect();
    if checks.contains(&BarCheck::Frobenius) {
        let mut composite = Vec::new();
        for r in 1..=3 {
            for s in 1..=3 {
                let (Some(fr), Some(fs), Some(frs)) = (&frob[r], &frob[s], &frob[r * s]) else { continue };
                let top = [fr, fs, frs].iter().filter_map(|f| f.top_degree()).min().unwrap_or(0).min(degree);
                if !maps_equal_on(&fr.after(fs), frs, top) {
                    composite.push(format!("F̄_{r}F̄_{s} != F̄_{} in degrees ≤ {top}", r * s));
                }
            }
        }
        out.push(Finding::new(format!("F̄_rF̄_s = F̄_rs on B^cy({name})"), composite));
    }
    if checks.contains(&BarCheck::Projection) {
        let nv = nerve(c, n);
        let p = project_to_nerve(c, &full, &nv);
        let mut equivariant = Vec::new();
        for (r, f) in frob.iter().enumerate() {
            let Some(f) = f else { continue };
            let top = f.top_degree().unwrap_or(0).min(degree);
            if !maps_equal_on(&p.after(f), &p, top) {
                equivariant.push(format!("projection ∘ F̄_{r} differs from the projection below degree {top}"));
            }
        }
        out.push(Finding::new(format!("projection ∘ F̄_r = projection on B^cy({name})"), equivariant));
    }
    if checks.contains(&BarCheck::Power) {
        let mut powers = Vec::new();
        for (r, f) in frob.iter().enumerate() {
            let Some(f) = f else { continue };
            for (sigma, &image) in f.components[0].iter().enumerate() {
                let g = full.label(0, sigma)[0];
                let power = (1..r).fold(g, |acc, _| c.compose(acc, g));
                if full.label(0, image)[0] != power {
                    powers.push(format!("F̄_{r}({}) is not its {r}-th power", c.morphism(g).label));
                    break;
                }
            }
        }
        out.push(Finding::new(format!("F̄_r is the r-th power on B^cy_0({name})"), powers));
    }
    Ok(out)
}

fn conjugacy(_b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (name, m) in [("S3", Monoid::symmetric3()), ("Z/4", Monoid::cyclic(4))] {
        let h = homology_through(&cyclic_bar(&m.as_category(), 2).set, 0)?;
        let classes = m.conjugacy_class_count();
        out.push(expect(format!("H_0(B^cy({name})) has rank {classes}"), h[0].betti == classes && h[0].torsion.is_empty(), || {
            format!("H_0 = {}", h[0])
        }));
    }
    Ok(out)
}

fn coherence(b: &Bounds, _seed: u64) -> Result<Vec<Finding>> {
    let primes = &b.coherence_primes;
    let mut out = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let u: Vec<u64> = primes.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let failures = verify_cube_face_relations(&u)?
            .into_iter()
            .filter(|c| !(c.lower && c.upper))
            .map(|c| format!("V = {:?}: lower {} upper {}", c.v, c.lower, c.upper))
            .collect();
        out.push(Finding::new(format!("faces of h^{u:?}"), failures));
    }
    if let [p, q, ..] = primes[..] {
        let h = expand_homotopy(&BTreeSet::from([p, q]));
        out.push(expect(format!("h^{{{p},{q}}} matches the displayed expansion"), h == two_prime_display(p, q), || h.to_string()));
    }
    Ok(prefixed("coherence", out))
}
