use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use serde_json::{json, Map, Value};

use epicyclic::barcat::{cyclic_bar, Monoid};
use epicyclic::check::Finding;
use epicyclic::homology::{homology_through, HomologyGroup};
use epicyclic::ring::{Ring, RingSpec};
use epicyclic::schema::{to_json, CategoryDoc, Document, MonoidDoc, SimplicialDoc, WittDoc};
use epicyclic::simplicial::{builtin, validate, SimplicialSet};
use epicyclic::subdivision::{edgewise_subdivide, expand_homotopy, fixed_subcomplex, verify_cube_face_relations};
use epicyclic::suite::{bar_operator_findings, run_check, run_suite, suite_names, BarCheck, Bounds, Report, SuiteConfig};
use epicyclic::trace::{trace_property_suite, trc0_with_residual, RingMatrix, StandardBackend, TraceConfig};
use epicyclic::witt::{TruncationSet, WittVector};
use epicyclic::with_ring;

use crate::io::{load_category, load_complex, read_document, usage, Output};
use crate::{
    BarCheckArg, BarcyArgs, Cli, CoherenceArgs, Command, ExportArgs, HomologyArgs, IndexCheck, IndexcatArgs, InspectArgs,
    SubdivideArgs, SuiteArgs, TraceArgs, WittArgs, WittOp,
};

/// Runs the command; `Ok(false)` means it ran and some check failed.
pub fn run(cli: &Cli, out: &Output) -> Result<bool> {
    match &cli.command {
        Command::Subdivide(a) => subdivide(a, out),
        Command::Coherence(a) => coherence(a),
        Command::Barcy(a) => barcy(a),
        Command::Homology(a) => homology(a, out),
        Command::Indexcat(a) => indexcat(a, cli.seed.unwrap_or(0)),
        Command::Witt(a) => witt(a, out),
        Command::Trace(a) => trace(a, cli.seed, out),
        Command::Suite(a) => suite(a, cli.seed, out),
        Command::Inspect(a) => inspect(a),
        Command::Export(a) => export(a, out),
    }
}

fn print_findings(findings: &[Finding]) -> bool {
    for f in findings {
        let mark = if f.passed { "ok  " } else { "FAIL" };
        match &f.witness {
            Some(w) => println!("{mark} {}: {w}", f.name),
            None => println!("{mark} {}", f.name),
        }
    }
    findings.iter().all(|f| f.passed)
}

fn subdivide(a: &SubdivideArgs, out: &Output) -> Result<bool> {
    if a.r == 0 {
        bail!(usage("--r must be positive"));
    }
    let (name, x) = load_complex(a.source.input.as_deref(), a.source.builtin.as_deref(), a.source.truncation)?;
    let s = edgewise_subdivide(&x, a.r)?;
    let result = if a.fixed { fixed_subcomplex(&s)?.complex } else { s.result.clone() };
    let violations = validate(&result);
    let what = if a.fixed { format!("(sd_{} {name})^C_{}", a.r, a.r) } else { format!("sd_{} {name}", a.r) };
    eprintln!("{what}: truncation {}, counts {:?}, cyclic {}", result.truncation(), result.counts(), result.is_cyclic());
    for v in violations.iter().take(10) {
        eprintln!("FAIL {v}");
    }
    out.emit(a.emit.as_deref(), &to_json(&Document::Simplicial(SimplicialDoc::from_set(&result))))?;
    Ok(violations.is_empty())
}

fn coherence(a: &CoherenceArgs) -> Result<bool> {
    let primes: BTreeSet<u64> = a.primes.iter().copied().collect();
    if primes.len() != a.primes.len() || primes.iter().any(|&p| !is_prime(p)) {
        bail!(usage("--primes must be distinct primes"));
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut ok = true;
    for mask in 0u64..(1 << primes.len()) {
        let u: Vec<u64> = primes.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let checks = verify_cube_face_relations(&u)?;
        let failed: Vec<_> = checks.iter().filter(|c| !(c.lower && c.upper)).collect();
        ok &= failed.is_empty();
        let mark = if failed.is_empty() { "ok  " } else { "FAIL" };
        println!("{mark} U = {u:?}: {} face relations", checks.len());
        for c in failed {
            println!("     V = {:?}: lower {} upper {}", c.v, c.lower, c.upper);
        }
    }
    if a.show {
        println!("h^{primes:?} = {}", expand_homotopy(&primes.iter().copied().collect()));
    }
    Ok(ok)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn barcy(a: &BarcyArgs) -> Result<bool> {
    let (name, c) = load_category(&a.monoid)?;
    let checks: Vec<BarCheck> = if a.check.contains(&BarCheckArg::All) {
        BarCheck::ALL.to_vec()
    } else {
        a.check
            .iter()
            .map(|c| match c {
                BarCheckArg::Validate => BarCheck::Validate,
                BarCheckArg::Diagonal => BarCheck::Diagonal,
                BarCheckArg::Frobenius => BarCheck::Frobenius,
                BarCheckArg::Projection => BarCheck::Projection,
                BarCheckArg::Power => BarCheck::Power,
                BarCheckArg::All => unreachable!(),
            })
            .collect()
    };
    let laws = c.validate();
    if !laws.is_empty() {
        return Err(epicyclic::Error::Schema(format!("{name} is not a category: {}", laws[0])).into());
    }
    let truncation = a.truncation.unwrap_or(a.degree);
    let findings = bar_operator_findings(&c, &name, truncation, a.degree, &checks)?;
    Ok(print_findings(&findings))
}

fn group_json(g: &HomologyGroup) -> Value {
    let torsion: Vec<Value> = g
        .torsion
        .iter()
        .map(|t| match i64::try_from(t) {
            Ok(n) => json!(n),
            Err(_) => json!(t.to_string()),
        })
        .collect();
    json!({ "betti": g.betti, "torsion": torsion })
}

fn homology(a: &HomologyArgs, out: &Output) -> Result<bool> {
    let (_, x) = load_complex(a.source.input.as_deref(), a.source.builtin.as_deref(), a.source.truncation)?;
    let groups = homology_through(&x, a.through)?;
    let map: Map<String, Value> = groups.iter().enumerate().map(|(k, g)| (k.to_string(), group_json(g))).collect();
    out.emit(a.emit.as_deref(), &to_json(&Value::Object(map)))?;
    Ok(true)
}

fn indexcat(a: &IndexcatArgs, seed: u64) -> Result<bool> {
    if a.bound == 0 {
        bail!(usage("--bound must be positive"));
    }
    let all = a.check.contains(&IndexCheck::All);
    let wants = |c: IndexCheck| all || a.check.contains(&c);
    let bounds = Bounds {
        index_bound: a.bound,
        grothendieck_bound: a.bound,
        theta_bound: a.bound,
        kan_bound: a.bound,
        ..Bounds::default()
    };
    let mut findings = Vec::new();
    if wants(IndexCheck::Relations) || wants(IndexCheck::Factorization) {
        let ic = epicyclic::indexcat::build_index_category(a.bound)?;
        let report = epicyclic::indexcat::check_relations(&ic);
        let (factor, relation): (Vec<String>, Vec<String>) =
            report.failures.iter().cloned().partition(|f| f.contains("factorization"));
        if wants(IndexCheck::Relations) {
            let mut failures = relation;
            failures.extend(report.law_violations.iter().map(|v| v.to_string()));
            findings.push(Finding::new(format!("relations on 𝕀≤{} ({} morphisms)", a.bound, ic.morphisms.len()), failures));
        }
        if wants(IndexCheck::Factorization) {
            findings.push(Finding::new(format!("unique factorization F_r∘R_s on 𝕀≤{}", a.bound), factor));
        }
    }
    for (check, suite) in [
        (IndexCheck::Grothendieck, "index-grothendieck"),
        (IndexCheck::Theta, "theta"),
        (IndexCheck::Kan, "kan-scaffold"),
    ] {
        if wants(check) {
            findings.extend(run_check(suite, &bounds, seed)?);
        }
    }
    Ok(print_findings(&findings))
}

fn parse_coords<R: Ring>(ring: &R, set: &TruncationSet, coords: &[String]) -> Result<WittVector<R>> {
    if coords.len() != set.len() {
        bail!(usage(format!("{} coordinates given for S = {set} of size {}", coords.len(), set.len())));
    }
    let parsed = coords.iter().map(|c| ring.parse(c.trim())).collect::<epicyclic::Result<Vec<_>>>()?;
    Ok(WittVector::from_coords(ring.clone(), set.clone(), parsed)?)
}

fn witt(a: &WittArgs, out: &Output) -> Result<bool> {
    let spec: RingSpec = a.ring.parse().map_err(|e: epicyclic::Error| usage(e.to_string()))?;
    with_ring!(spec, |ring| witt_in(&ring, a, out))
}

fn witt_in<R: Ring>(ring: &R, a: &WittArgs, out: &Output) -> Result<bool> {
    let x = match (&a.input, &a.coords) {
        (Some(path), None) => match read_document(path)? {
            Document::Witt(doc) => doc.to_vector(ring.clone())?,
            other => return Err(epicyclic::Error::Schema(format!("expected a witt document, found `{}`", other.kind())).into()),
        },
        (None, Some(coords)) => {
            let n = a.trunc.ok_or_else(|| usage("--trunc is required with --coords"))?;
            parse_coords(ring, &TruncationSet::divisors_of(n), coords)?
        }
        _ => bail!(usage("give exactly one of --input or --coords")),
    };
    let other = || -> Result<WittVector<R>> {
        let coords = a.other.as_ref().ok_or_else(|| usage("--other is required for add and mul"))?;
        parse_coords(ring, x.set(), coords)
    };
    let r = || a.r.filter(|&r| r > 0).ok_or_else(|| usage("--r must be a positive integer"));
    let result = match a.op {
        WittOp::Add => x.add(&other()?)?,
        WittOp::Mul => x.mul(&other()?)?,
        WittOp::Frob => x.frobenius(r()?),
        WittOp::Ver => {
            let r = r()?;
            let target = TruncationSet::divisors_of(a.to.unwrap_or(r * x.set().max()));
            x.verschiebung(r, &target)?
        }
        WittOp::Restrict => {
            let n = a.to.ok_or_else(|| usage("--to is required for restrict"))?;
            x.restrict(&TruncationSet::divisors_of(n))?
        }
        WittOp::Ghost => {
            let ghost: Vec<String> = x.ghost().iter().map(|g| ring.format(g)).collect();
            let doc = json!({ "ring": ring.spec().to_string(), "S": x.set().elements(), "ghost": ghost });
            out.emit(a.emit.as_deref(), &to_json(&doc))?;
            return Ok(true);
        }
    };
    out.emit(a.emit.as_deref(), &to_json(&Document::Witt(WittDoc::from_vector(&result))))?;
    Ok(true)
}

fn trace(a: &TraceArgs, seed: Option<u64>, out: &Output) -> Result<bool> {
    if a.laws {
        let mut config = match &a.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<TraceConfig>(&text).map_err(|e| epicyclic::Error::Schema(e.to_string()))?
            }
            None => TraceConfig::default(),
        };
        if let Some(seed) = seed {
            config.seed = seed;
        }
        let report = trace_property_suite(&config, &StandardBackend)?;
        let passed = report.passed();
        for f in &report.findings {
            let mark = if f.passed { "ok  " } else { "FAIL" };
            eprintln!("{mark} {}{}", f.name, f.witness.as_deref().map(|w| format!(": {w}")).unwrap_or_default());
        }
        out.emit(a.emit.as_deref(), &to_json(&report))?;
        return Ok(passed);
    }
    let spec: RingSpec = a.ring.parse().map_err(|e: epicyclic::Error| usage(e.to_string()))?;
    let text = a.matrix.as_deref().expect("clap requires --matrix");
    let rows: Vec<Vec<Value>> = serde_json::from_str(text).map_err(|e| usage(format!("--matrix is not a JSON matrix: {e}")))?;
    with_ring!(spec, |ring| {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| match v {
                        Value::String(s) => ring.parse(s),
                        other => ring.parse(&other.to_string()),
                    })
                    .collect::<epicyclic::Result<Vec<_>>>()
            })
            .collect::<epicyclic::Result<Vec<_>>>()?;
        let alpha = RingMatrix::from_rows(ring, rows).map_err(|e| usage(e.to_string()))?;
        let set = TruncationSet::divisors_of(a.trunc);
        let (w, residual) = trc0_with_residual(&alpha, &set, a.allow_singular)?;
        if let Some(k) = residual {
            eprintln!("note: det(1 - tα) has a coordinate at {k}, outside S; it is dropped by restriction");
        }
        out.emit(a.emit.as_deref(), &to_json(&Document::Witt(WittDoc::from_vector(&w))))?;
        Ok(true)
    })
}

fn suite(a: &SuiteArgs, seed: Option<u64>, out: &Output) -> Result<bool> {
    if a.list {
        for name in suite_names() {
            println!("{name}");
        }
        println!("full");
        return Ok(true);
    }
    let mut config = match &a.config {
        Some(path) => match read_document(path)? {
            Document::SuiteConfig(c) => c,
            other => {
                return Err(epicyclic::Error::Schema(format!("expected a suite-config document, found `{}`", other.kind())).into())
            }
        },
        None => SuiteConfig::default(),
    };
    config.checks.extend(a.check.iter().cloned());
    if let Some(seed) = seed {
        config.seed = seed;
    }
    // Resolve before running anything, so a bad name runs nothing.
    if let Err(e) = config.resolve() {
        bail!(usage(e.to_string()));
    }
    let report = run_suite(&config)?;
    let dir = out.dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let writer = Output { dir: Some(dir) };
    let json_path = writer.write(Path::new(&format!("{}.json", a.report)), &to_json(&Document::Report(report.clone())))?;
    let text_path = writer.write(Path::new(&format!("{}.txt", a.report)), &report.to_text())?;
    print!("{}", report.to_text());
    eprintln!("wrote {} and {}", json_path.display(), text_path.display());
    Ok(report.passed)
}

fn inspect(a: &InspectArgs) -> Result<bool> {
    match read_document(&a.path)? {
        Document::Simplicial(doc) => {
            let x = doc.to_set()?;
            println!("kind: simplicial");
            println!("truncation: {}", x.truncation());
            for (k, c) in x.counts().iter().enumerate() {
                println!("  degree {k}: {c} simplices, {} nondegenerate", x.nondegenerate(k).map(|v| v.len()).unwrap_or(0));
            }
            println!("cyclic: {}", x.cyclic().map(|c| format!("yes, period {}", c.period)).unwrap_or_else(|| "no".into()));
            let v = validate(&x);
            println!("validation: {}", if v.is_empty() { "ok".to_string() } else { format!("{} violations, first: {}", v.len(), v[0]) });
        }
        Document::Category(doc) => {
            println!("kind: category");
            println!("objects: {}", doc.objects.len());
            println!("morphisms: {}", doc.morphisms.len());
            let laws = doc.to_category()?.validate();
            match laws.first() {
                None => println!("category laws: ok"),
                Some(v) => println!("category laws: {} violations, first: {v}", laws.len()),
            }
        }
        Document::Monoid(doc) => {
            let m = doc.to_monoid()?;
            println!("kind: monoid");
            println!("elements: {}", m.elements().join(", "));
            println!("group: {}", m.is_group());
            if m.is_group() {
                println!("conjugacy classes: {}", m.conjugacy_class_count());
            }
        }
        Document::Witt(doc) => {
            println!("kind: witt");
            println!("ring: {}", doc.ring);
            println!("S: {}", doc.set);
            println!("coords: [{}]", doc.coords.join(", "));
            let ghost = with_ring!(doc.ring, |ring| doc
                .to_vector(ring)
                .map(|v| v.ghost().iter().map(|g| ring.format(g)).collect::<Vec<_>>()))?;
            println!("ghost: [{}]", ghost.join(", "));
        }
        Document::Report(r) => inspect_report(&r),
        Document::SuiteConfig(c) => {
            println!("kind: suite-config");
            println!("checks: {}", if c.checks.is_empty() { "(none)".into() } else { c.checks.join(", ") });
            println!("seed: {}", c.seed);
            match c.resolve() {
                Ok(names) => println!("resolves to: {}", names.join(", ")),
                Err(e) => println!("does not resolve: {e}"),
            }
        }
    }
    Ok(true)
}

fn inspect_report(r: &Report) {
    println!("kind: report");
    println!("tool version: {}", r.tool_version);
    println!("seed: {}", r.seed);
    println!("passed: {}", r.passed);
    for c in &r.checks {
        let failed = c.findings.iter().filter(|f| !f.passed).count();
        println!("  {} {}: {} findings, {failed} failed, {:.0} ms", if c.passed { "PASS" } else { "FAIL" }, c.name, c.findings.len(), c.elapsed_ms);
    }
}

fn export(a: &ExportArgs, out: &Output) -> Result<bool> {
    let doc = if let Some(x) = builtin(&a.name, a.truncation) {
        Document::Simplicial(SimplicialDoc::from_set(&x))
    } else if let Some(m) = a.name.strip_prefix("bar:").and_then(Monoid::builtin) {
        let x: SimplicialSet = cyclic_bar(&m.as_category(), a.truncation).set;
        Document::Simplicial(SimplicialDoc::from_set(&x))
    } else if let Some(m) = Monoid::builtin(&a.name) {
        if a.as_category {
            Document::Category(CategoryDoc::from_category(&m.as_category()))
        } else {
            Document::Monoid(MonoidDoc::from_monoid(&m))
        }
    } else {
        bail!(usage(format!("unknown builtin `{}`", a.name)));
    };
    out.emit(a.emit.as_deref(), &to_json(&doc))?;
    Ok(true)
}
