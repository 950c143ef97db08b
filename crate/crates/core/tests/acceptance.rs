//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p epicyclic --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use epicyclic::barcat::{cyclic_bar, diagonal_restriction, Monoid};
use epicyclic::homology::{homology_through, HomologyGroup};
use epicyclic::indexcat::{
    build_index_category, check_relations, check_theta_iso, collapsing_control, grothendieck_construct,
    group_action_instances, index_dictionary, naturals_on_divisibility, IndexMorphism,
};
use epicyclic::ring::{Integers, IntegersMod};
use epicyclic::simplicial::{builtin, validate, SimplicialSet};
use epicyclic::subdivision::{edgewise_subdivide, expand_homotopy, fixed_subcomplex, two_prime_display, verify_cube_face_relations};
use epicyclic::suite::{run_check, run_suite, Bounds, SuiteConfig};
use epicyclic::trace::{trace_property_suite, trc0, RingMatrix, StandardBackend, TraceConfig};
use epicyclic::witt::{check_index_diagram, check_ring_axioms, random_vector, RestrictionMode, TruncationSet, WittVector};

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(detail: impl Into<String>) -> Self {
        Outcome { failures: Vec::new(), detail: detail.into() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn seconds(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// Number of morphisms `(r, s): rsn → n` with source at most `bound`.
fn index_morphism_count(bound: u64) -> usize {
    let mut count = 0;
    for n in 1..=bound {
        for r in 1..=bound {
            for s in 1..=bound {
                if r * s * n <= bound {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new("");
    let ic = build_index_category(24).expect("index category");
    let report = check_relations(&ic);
    out.require(report.passed(), || format!("relation failures: {:?}", report.failures));
    out.require(ic.morphisms.len() == index_morphism_count(24), || {
        format!("{} morphisms, expected {}", ic.morphisms.len(), index_morphism_count(24))
    });
    let c = &ic.category;
    let mut pairs = 0;
    for (g, f) in c.composable_pairs() {
        pairs += 1;
        let (mg, mf, mh) = (&ic.morphisms[g], &ic.morphisms[f], &ic.morphisms[c.compose(g, f)]);
        let ok = mh.r == mg.r * mf.r && mh.s == mg.s * mf.s && mh.source == mf.source && mh.target == mg.target;
        out.require(ok, || format!("{mg:?} ∘ {mf:?} = {mh:?}"));
    }
    let find = |phi: IndexMorphism| ic.index(&phi).expect("in range");
    for n in 1..=24u64 {
        let id = c.identity(ic.object(n));
        out.require(find(IndexMorphism::frobenius(n, 1).unwrap()) == id, || format!("F_1 at {n} is not the identity"));
        out.require(find(IndexMorphism::restriction(n, 1).unwrap()) == id, || format!("R_1 at {n} is not the identity"));
        for r in 1..=24 / n {
            for s in 1..=24 / (n * r) {
                // F_r: rn → n, then F_s: srn → rn
                let fr = find(IndexMorphism::frobenius(n, r).unwrap());
                let fs = find(IndexMorphism::frobenius(r * n, s).unwrap());
                let rr = find(IndexMorphism::restriction(n, r).unwrap());
                let rs = find(IndexMorphism::restriction(r * n, s).unwrap());
                out.require(c.compose(fr, fs) == find(IndexMorphism::frobenius(n, r * s).unwrap()), || {
                    format!("F_{r}F_{s} != F_{} at {n}", r * s)
                });
                out.require(c.compose(rr, rs) == find(IndexMorphism::restriction(n, r * s).unwrap()), || {
                    format!("R_{r}R_{s} != R_{} at {n}", r * s)
                });
                // F_r R_s and R_s F_r, both rsn → n
                let f_then = c.compose(fr, find(IndexMorphism::restriction(r * n, s).unwrap()));
                let r_then = c.compose(find(IndexMorphism::restriction(n, s).unwrap()), find(IndexMorphism::frobenius(s * n, r).unwrap()));
                out.require(f_then == r_then, || format!("F_{r}R_{s} != R_{s}F_{r} at {n}"));
            }
        }
    }
    let is_f = |f: usize| ic.morphisms[f].s == 1;
    let is_r = |f: usize| ic.morphisms[f].r == 1;
    for phi in 0..c.morphism_count() {
        let mut factorizations = 0;
        for &b in c.outgoing(c.src(phi)).iter().filter(|&&b| is_r(b)) {
            for &a in c.outgoing(c.dst(b)).iter().filter(|&&a| is_f(a)) {
                if c.compose(a, b) == phi {
                    factorizations += 1;
                }
            }
        }
        out.require(factorizations == 1, || format!("{:?} has {factorizations} factorizations F_r R_s", ic.morphisms[phi]));
    }
    out.detail = format!("{} morphisms, {pairs} composable pairs", c.morphism_count());
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new("");
    let groth = grothendieck_construct(&naturals_on_divisibility(12)).expect("construction");
    let laws = groth.category.validate();
    out.require(laws.is_empty(), || format!("category laws fail: {:?}", &laws[..laws.len().min(3)]));
    let ic = build_index_category(12).expect("index category");
    let (sub, dict) = index_dictionary(&groth, 12, &ic);
    out.require(sub.category.object_count() == 12, || format!("{} finite objects", sub.category.object_count()));
    out.require(sub.category.morphism_count() == index_morphism_count(12), || {
        format!("{} morphisms on finite objects, expected {}", sub.category.morphism_count(), index_morphism_count(12))
    });
    let violations = dict.violations(&ic.category, &sub.category);
    out.require(violations.is_empty(), || format!("dictionary is not a functor: {violations:?}"));
    out.require(dict.is_isomorphism(&ic.category, &sub.category), || "dictionary is not an isomorphism".into());
    for (phi, &image) in dict.morphisms.iter().enumerate() {
        let m = &ic.morphisms[phi];
        let label = &sub.category.morphism(image).label;
        out.require(label.contains(&format!("{}", m.r)), || format!("{m:?} ↦ {label}"));
    }
    out.detail = format!(
        "{} objects, {} morphisms in the construction",
        groth.category.object_count(),
        groth.category.morphism_count()
    );
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new("");
    let mut instances = vec![("N≤6 on 𝒩≤6".to_string(), naturals_on_divisibility(6))];
    instances.extend(group_action_instances().into_iter().map(|(n, f)| (n.to_string(), f)));
    out.require(instances.len() >= 4, || "fewer than three group-action instances".into());
    let mut names = Vec::new();
    for (name, f) in &instances {
        let g = grothendieck_construct(f).expect("construction");
        let r = check_theta_iso(f, &g, None).expect("theta");
        out.require(r.hypothesis, || format!("{name}: hypothesis fails: {:?}", r.hypothesis_witness));
        out.require(r.theta_iso, || format!("{name}: Θ is not an isomorphism: {:?}", r.theta_witness));
        out.require(r.objects_checked == g.category.object_count(), || {
            format!("{name}: Θ checked at {} of {} objects", r.objects_checked, g.category.object_count())
        });
        names.push(name.clone());
    }
    let f = collapsing_control();
    let g = grothendieck_construct(&f).expect("construction");
    let r = check_theta_iso(&f, &g, None).expect("theta");
    out.require(!r.hypothesis && r.hypothesis_witness.is_some(), || "negative control passed the hypothesis".into());
    out.detail = format!("{}; control rejected: {}", names.join(", "), r.hypothesis_witness.unwrap_or_default());
    out
}

/// `w_m = Σ_{d | m} d·a_d^{m/d}`, from the coordinates alone.
fn ghost_oracle(v: &WittVector<Integers>) -> Vec<BigInt> {
    let set = v.set().elements();
    set.iter()
        .map(|&m| {
            set.iter()
                .zip(v.coords())
                .filter(|(&d, _)| m % d == 0)
                .map(|(&d, a)| BigInt::from(d) * Pow::pow(a, (m / d) as u32))
                .sum()
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new("");
    let set = TruncationSet::divisors_of(12);
    let mut detail = Vec::new();
    for m in [0u64, 2, 4, 5, 6] {
        let (axioms, diagram) = if m == 0 {
            (check_ring_axioms(&Integers, &set, 500, m), check_index_diagram(&Integers, 12, 100, m, RestrictionMode::Projection))
        } else {
            let ring = IntegersMod::new(m).unwrap();
            (check_ring_axioms(&ring, &set, 500, m), check_index_diagram(&ring, 12, 100, m, RestrictionMode::Projection))
        };
        let (axioms, diagram) = (axioms.expect("axioms"), diagram.expect("diagram"));
        for f in axioms.findings.iter().chain(&diagram.findings).filter(|f| !f.passed) {
            out.failures.push(format!("m = {m}: {} ({})", f.name, f.witness.as_deref().unwrap_or("")));
        }
        detail.push(format!("m={m}: {} laws, {} pairs", axioms.findings.len(), diagram.composable_pairs));
    }
    // Independent ghost and reduction checks over ℤ.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let z6 = IntegersMod::new(6).unwrap();
    let reduce = |v: &WittVector<Integers>| {
        v.map_ring(z6, |a| {
            let r: BigInt = a.mod_floor(&BigInt::from(6));
            u64::try_from(r).unwrap()
        })
    };
    for _ in 0..200 {
        let x = random_vector(&Integers, &set, &mut rng);
        let y = random_vector(&Integers, &set, &mut rng);
        let (sum, product) = (x.add(&y).unwrap(), x.mul(&y).unwrap());
        let (gx, gy) = (ghost_oracle(&x), ghost_oracle(&y));
        let add_ok = ghost_oracle(&sum).iter().zip(gx.iter().zip(&gy)).all(|(s, (a, b))| *s == a + b);
        let mul_ok = ghost_oracle(&product).iter().zip(gx.iter().zip(&gy)).all(|(p, (a, b))| *p == a * b);
        out.require(add_ok && mul_ok, || format!("ghost oracle disagrees at x = {:?}, y = {:?}", x.format_coords(), y.format_coords()));
        out.require(x.ghost() == gx, || format!("ghost({:?}) differs from the oracle", x.format_coords()));
        let reduced = reduce(&x).mul(&reduce(&y)).unwrap();
        out.require(reduce(&product) == reduced, || "reduction mod 6 is not multiplicative".into());
    }
    let one = WittVector::one(Integers, TruncationSet::divisors_of(2));
    let two = one.add(&one).unwrap();
    out.require(two.format_coords() == ["2", "-1"], || format!("1 + 1 = {:?}", two.format_coords()));
    out.detail = detail.join("; ");
    out
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn zmatrix(rows: &[Vec<i64>]) -> RingMatrix<Integers> {
    RingMatrix::from_rows(Integers, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new("");
    let config = TraceConfig::default();
    out.require(
        config.sizes.iter().all(|&s| s <= 3) && config.trials == 200 && config.max_power == 4 && config.entry_bound == 2,
        || format!("default configuration drifted: {config:?}"),
    );
    let report = trace_property_suite(&config, &StandardBackend).expect("trace suite");
    for f in report.findings.iter().filter(|f| !f.passed) {
        out.failures.push(format!("{}: {}", f.name, f.witness.as_deref().unwrap_or("")));
    }
    let swap = zmatrix(&[vec![0, 1], vec![1, 0]]);
    let t = trc0(&swap, &TruncationSet::divisors_of(4), false).unwrap();
    let f2 = t.frobenius(2);
    let i2 = trc0(&zmatrix(&[vec![1, 0], vec![0, 1]]), &TruncationSet::divisors_of(2), false).unwrap();
    out.require(t.format_coords() == ["0", "1", "0"], || format!("trc0(swap) = {:?}", t.format_coords()));
    out.require(f2.format_coords() == ["2", "-1"] && f2 == i2, || {
        format!("F_2 trc0(swap) = {:?}, trc0(I₂) = {:?}", f2.format_coords(), i2.format_coords())
    });
    // Ghost components against traces of powers, by plain integer arithmetic.
    let set = TruncationSet::divisors_of(12);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 50 {
        let n = rng.random_range(1..=3);
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-2..=2)).collect()).collect();
        let Ok(w) = trc0(&zmatrix(&a), &set, false) else { continue };
        checked += 1;
        let mut power = a.clone();
        let mut traces = vec![(0..n).map(|i| a[i][i]).sum::<i64>()];
        for _ in 2..=12 {
            power = mat_mul(&power, &a);
            traces.push((0..n).map(|i| power[i][i]).sum());
        }
        let expected: Vec<BigInt> = set.elements().iter().map(|&m| BigInt::from(traces[m as usize - 1])).collect();
        out.require(w.ghost() == expected, || format!("ghost trc0({a:?}) = {:?}, traces {expected:?}", w.ghost()));
    }
    out.detail = format!("{} cases, worked chain (0,1,0) ↦ (2,-1)", report.cases.len());
    out
}

fn group(betti: usize, torsion: &[i64]) -> HomologyGroup {
    HomologyGroup { betti, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
}

/// Known integral homology through `top`.
fn expected_homology(name: &str, top: usize) -> Vec<HomologyGroup> {
    (0..=top)
        .map(|k| match name {
            "circle" => group(usize::from(k <= 1), &[]),
            "sphere2" => group(usize::from(k == 0 || k == 2), &[]),
            // B^cy(ℤ/n) ≃ ⊔_n Bℤ/n for abelian ℤ/n
            _ => {
                let n: usize = name.trim_start_matches("B^cy(Z/").trim_end_matches(')').parse().unwrap();
                match k {
                    0 => group(n, &[]),
                    k if k % 2 == 1 => group(0, &vec![n as i64; n]),
                    _ => group(0, &[]),
                }
            }
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new("");
    let spaces: Vec<(&str, SimplicialSet)> = vec![
        ("circle", builtin("circle", 11).unwrap()),
        ("sphere2", builtin("sphere2", 11).unwrap()),
        ("B^cy(Z/2)", cyclic_bar(&Monoid::cyclic(2).as_category(), 8).set),
        ("B^cy(Z/3)", cyclic_bar(&Monoid::cyclic(3).as_category(), 8).set),
    ];
    let mut degrees = Vec::new();
    for (name, x) in &spaces {
        let base = homology_through(x, x.truncation() - 1).unwrap();
        out.require(base == expected_homology(name, x.truncation() - 1), || {
            format!("H_*({name}) = {}", base.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
        });
        for r in [2usize, 3] {
            let s = edgewise_subdivide(x, r).unwrap();
            let top = s.result.truncation();
            for k in 0..=top {
                out.require(s.result.count(k) == x.count(r * (k + 1) - 1), || format!("|sd_{r} {name}_{k}| is wrong"));
            }
            let v = validate(&s.result);
            // Δ[2]/∂Δ[2] has no cyclic structure, so sd_r of it is validated as a simplicial set
            out.require(s.result.is_cyclic() == x.is_cyclic() && v.is_empty(), || format!("sd_{r} {name}: {:?}", &v[..v.len().min(3)]));
            let fixed = fixed_subcomplex(&s).unwrap();
            out.require(validate(&fixed.complex).is_empty(), || format!("C_{r}-fixed part of sd_{r} {name} is invalid"));
            if top > 0 {
                let h = homology_through(&s.result, top - 1).unwrap();
                out.require(h == expected_homology(name, top - 1), || format!("H_*(sd_{r} {name}) differs below degree {top}"));
                degrees.push(top - 1);
            }
        }
        for (r, t) in [(2usize, 2usize), (2, 3), (3, 2)] {
            let twice = edgewise_subdivide(&edgewise_subdivide(x, t).unwrap().result, r).unwrap().result;
            let once = edgewise_subdivide(x, r * t).unwrap().result;
            out.require(twice == once, || format!("sd_{r} sd_{t} {name} != sd_{} {name}", r * t));
        }
    }
    out.detail = format!("homology compared through degrees {degrees:?}");
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new("");
    let bounds = Bounds::default();
    let findings = run_check("bar-operators", &bounds, 0).expect("bar operators");
    for f in findings.iter().filter(|f| !f.passed) {
        out.failures.push(format!("{}: {}", f.name, f.witness.as_deref().unwrap_or("")));
    }
    // Fixed points and degree-0 powers, counted directly.
    for m in [Monoid::cyclic(2), Monoid::cyclic(3), Monoid::symmetric3()] {
        let c = m.as_category();
        let dr = diagonal_restriction(&c, 2, 5).unwrap();
        for k in 0..=dr.delta.top_degree().unwrap() {
            let expected = m.len().pow(k as u32 + 1);
            out.require(dr.fixed.complex.count(k) == expected, || {
                format!("{} C_2-fixed {k}-simplices, expected {expected}", dr.fixed.complex.count(k))
            });
        }
        let f2 = epicyclic::barcat::frobenius_bar(&c, 2, 3).unwrap();
        let bar = cyclic_bar(&c, 3);
        for g in 0..m.len() {
            let square = m.table()[g][g];
            out.require(bar.label(0, f2.components[0][g]) == [square], || format!("F̄_2({}) is not its square", m.elements()[g]));
        }
    }
    let on_tuples = findings.iter().filter(|f| f.name.contains("on tuples")).count();
    out.detail = format!("{} findings, {on_tuples} tuple-level checks through degree {}", findings.len(), bounds.bar_degree);
    out
}

/// Conjugacy classes of a group given by its multiplication table.
fn conjugacy_classes(table: &[Vec<usize>]) -> usize {
    let n = table.len();
    let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).unwrap();
    let inv = |g: usize| (0..n).find(|&h| table[g][h] == e).unwrap();
    let mut classes: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for x in 0..n {
        classes.insert((0..n).map(|g| table[table[g][x]][inv(g)]).collect());
    }
    classes.len()
}

/// Connected components of the 1-skeleton, by union-find.
fn components(x: &SimplicialSet) -> usize {
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut parent: Vec<usize> = (0..x.count(0)).collect();
    for e in 0..x.count(1) {
        let (a, b) = (root(&mut parent, x.face(1, 0, e)), root(&mut parent, x.face(1, 1, e)));
        parent[a] = b;
    }
    (0..parent.len()).filter(|&v| parent[v] == v).count()
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new("");
    let s3 = Monoid::symmetric3();
    let bar = cyclic_bar(&s3.as_category(), 2).set;
    let h = homology_through(&bar, 1).unwrap();
    let classes = conjugacy_classes(s3.table());
    let pieces = components(&bar);
    out.require(classes == 3, || format!("S3 has {classes} conjugacy classes by brute force"));
    out.require(pieces == classes, || format!("the 1-skeleton has {pieces} components"));
    out.require(h[0].betti == classes && h[0].torsion.is_empty(), || format!("H_0 = {}", h[0]));
    out.detail = format!("H_0 = {}, {classes} classes, {pieces} components", h[0]);
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new("");
    let primes = [2u64, 3, 5];
    let mut cubes = 0;
    for mask in 0..8u32 {
        let u: Vec<u64> = primes.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        for check in verify_cube_face_relations(&u).unwrap() {
            cubes += 1;
            out.require(check.lower && check.upper, || format!("U = {u:?}, V = {:?}", check.v));
        }
    }
    for (p, q) in [(2, 3), (2, 5), (3, 5)] {
        let h = expand_homotopy(&BTreeSet::from([p, q]));
        out.require(h == two_prime_display(p, q), || format!("h^{{{p},{q}}} = {h}"));
    }
    out.detail = format!("{cubes} face relations over 8 subsets");
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new("");
    let config = SuiteConfig::full(20_240_601);
    let first = run_suite(&config).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let second = single.install(|| run_suite(&config)).unwrap();
    out.require(first.without_timings() == second.without_timings(), || "reports differ between runs".into());
    let other = run_suite(&SuiteConfig { seed: 1, ..config.clone() }).unwrap();
    let verdicts = |r: &epicyclic::suite::Report| r.checks.iter().map(|c| (c.name.clone(), c.passed)).collect::<Vec<_>>();
    out.require(verdicts(&first) == verdicts(&other), || "verdicts depend on the seed".into());
    out.detail = format!("{} checks, passed = {}, identical across thread counts", first.checks.len(), first.passed);
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("index relations", criterion_1, seconds(1)),
        ("Grothendieck construction", criterion_2, seconds(1)),
        ("comma-category lemma", criterion_3, None),
        ("Witt ring", criterion_4, seconds(30)),
        ("trace laws", criterion_5, seconds(60)),
        ("subdivision", criterion_6, seconds(30)),
        ("bar operators", criterion_7, seconds(30)),
        ("conjugacy shadow", criterion_8, None),
        ("coherence cubes", criterion_9, seconds(1)),
        ("determinism", criterion_10, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            outcome.require(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let passed = outcome.failures.is_empty();
        all &= passed;
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("criterion {:2} {verdict} {name} [{:.2} s] {}", i + 1, elapsed.as_secs_f64(), outcome.detail);
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
