//! The category `(K↓p)` for the projection `p: K⋉F → K`, the functors
//! `π_K`, `r_K`, `j_K`, `i_K`, the adjunction `j_K ⊣ r_K`, and the
//! transformation `Φ → Ψ` comparing the two homotopy-limit maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::checks::{check_product_functor, Collector, Finding};
use super::grothendieck::{comma_over, CatValuedFunctor, Grothendieck};
use crate::barcat::{FinCategory, Functor, MorphismInfo};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KanReport {
    pub findings: Vec<Finding>,
}

impl KanReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

/// `(K↓p)`: objects `(f: K → L, A ∈ F(L))`; a morphism `(f, A) → (f', A')`
/// is `(l, a): (L, A) → (L', A')` in `K⋉F` with `l f = f'`.
struct UnderP {
    category: FinCategory,
    objects: Vec<(usize, usize)>,
    /// `(m, f)`: the morphism `m` of `K⋉F` out of `(dst f, A)`.
    morphisms: Vec<(usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize), usize>,
}

fn under_p(f: &CatValuedFunctor, groth: &Grothendieck, k: usize) -> Result<UnderP> {
    let base = &f.base;
    let g = &groth.category;
    let mut arrows: Vec<usize> = base.outgoing(k).to_vec();
    arrows.sort_unstable();
    let objects: Vec<(usize, usize)> = arrows
        .iter()
        .flat_map(|&a| (0..f.fibres[base.dst(a)].object_count()).map(move |x| (a, x)))
        .collect();
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    let mut infos = Vec::new();
    for (i, &(arrow, a)) in objects.iter().enumerate() {
        for &m in g.outgoing(groth.object(base.dst(arrow), a)) {
            let (l, _, target) = groth.morphisms[m];
            let dst = object_index[&(base.compose(l, arrow), target)];
            morphisms.push((m, arrow));
            infos.push(MorphismInfo { src: i, dst, label: g.morphism(m).label.clone() });
        }
    }
    let morphism_index: HashMap<(usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let labels = objects
        .iter()
        .map(|&(arrow, a)| format!("({},{})", base.morphism(arrow).label, f.fibres[base.dst(arrow)].objects()[a]))
        .collect();
    let identities = objects
        .iter()
        .map(|&(arrow, a)| morphism_index[&(g.identity(groth.object(base.dst(arrow), a)), arrow)])
        .collect();
    let category = FinCategory::from_fn(labels, infos, identities, |m2, m1| {
        let ((g2, _), (g1, arrow)) = (morphisms[m2], morphisms[m1]);
        morphism_index.get(&(g.try_compose(g2, g1)?, arrow)).copied()
    })?;
    Ok(UnderP { category, objects, morphisms, object_index, morphism_index })
}

/// A copy of `groth` whose composition table sends the first composable
/// pair of non-identities with a parallel alternative to that alternative.
/// A negative control for [`verify_kan_scaffold`].
pub fn corrupt_composition(groth: &Grothendieck) -> Option<Grothendieck> {
    let c = &groth.category;
    let (pair, wrong) = c.composable_pairs().find_map(|(g, f)| {
        if c.is_identity(g) || c.is_identity(f) {
            return None;
        }
        let h = c.compose(g, f);
        c.hom(c.src(h), c.dst(h)).find(|&w| w != h).map(|w| ((g, f), w))
    })?;
    let mut table = c.composition_table().clone();
    table.insert(pair, wrong);
    let category = FinCategory::from_parts(c.objects().to_vec(), c.morphisms().to_vec(), c.identities().to_vec(), table).ok()?;
    let mut out = groth.clone();
    out.category = category;
    Some(out)
}

/// Builds the scaffold at object `k` and checks every claimed structure.
pub fn verify_kan_scaffold(f: &CatValuedFunctor, groth: &Grothendieck, k: usize) -> Result<KanReport> {
    let mut findings = Vec::new();
    let law_failures = groth.category.validate().iter().map(|v| format!("K⋉F: {v}")).collect::<Vec<_>>();
    findings.push(Finding::new("category-laws", law_failures));
    let kp = match under_p(f, groth, k) {
        Ok(kp) => kp,
        Err(e) => {
            findings.push(Finding::new("under-p", vec![e.to_string()]));
            return Ok(KanReport { findings });
        }
    };
    let base = &f.base;
    let g = &groth.category;
    let fibre = &f.fibres[k];
    let id_k = base.identity(k);
    findings.push(Finding::new(
        "under-p",
        kp.category.validate().iter().map(|v| format!("(K↓p): {v}")).collect(),
    ));

    let pi = Functor {
        objects: kp.objects.iter().map(|&(arrow, a)| groth.object(base.dst(arrow), a)).collect(),
        morphisms: kp.morphisms.iter().map(|&(m, _)| m).collect(),
    };
    let r = Functor {
        objects: kp.objects.iter().map(|&(arrow, a)| f.on_object(arrow, a)).collect(),
        morphisms: kp
            .morphisms
            .iter()
            .map(|&(m, arrow)| f.on_morphism(arrow, groth.morphisms[m].1))
            .collect(),
    };
    let j_morphism = |b: usize| kp.morphism_index[&(groth.morphism(id_k, b, fibre.dst(b)).unwrap(), id_k)];
    let j = Functor {
        objects: (0..fibre.object_count()).map(|a| kp.object_index[&(id_k, a)]).collect(),
        morphisms: (0..fibre.morphism_count()).map(j_morphism).collect(),
    };
    let i = Functor {
        objects: (0..fibre.object_count()).map(|a| groth.object(k, a)).collect(),
        morphisms: (0..fibre.morphism_count())
            .map(|b| groth.morphism(id_k, b, fibre.dst(b)).unwrap())
            .collect(),
    };
    let functors = [
        ("pi", pi.violations(&kp.category, g)),
        ("r", r.violations(&kp.category, fibre)),
        ("j", j.violations(fibre, &kp.category)),
        ("i", i.violations(fibre, g)),
    ];
    let mut all_functors = true;
    for (name, v) in functors {
        all_functors &= v.is_empty();
        findings.push(Finding::new(format!("{name}-functor"), v));
    }
    if !all_functors {
        return Ok(KanReport { findings });
    }
    findings.push(Finding::new(
        "pi-j-equals-i",
        if pi.after(&j) == i { vec![] } else { vec!["π_K ∘ j_K differs from i_K".into()] },
    ));
    findings.push(Finding::new(
        "unit-identity",
        if r.after(&j) == Functor::identity(fibre) { vec![] } else { vec!["r_K ∘ j_K is not the identity".into()] },
    ));

    // counit ε_{(f,A)} = (f, id): (id_K, F(f)A) → (f, A)
    let counit: Vec<usize> = kp
        .objects
        .iter()
        .map(|&(arrow, a)| {
            let image = f.on_object(arrow, a);
            let m = groth.morphism(arrow, f.fibres[k].identity(image), a).unwrap();
            kp.morphism_index[&(m, id_k)]
        })
        .collect();
    let kc = &kp.category;
    let mut out = Collector::new();
    for (x, &e) in counit.iter().enumerate() {
        out.check(kc.src(e) == j.objects[r.objects[x]] && kc.dst(e) == x, || {
            format!("counit at {} has the wrong endpoints", kc.objects()[x])
        });
    }
    for phi in 0..kc.morphism_count() {
        let (x, y) = (kc.src(phi), kc.dst(phi));
        out.check(kc.compose(phi, counit[x]) == kc.compose(counit[y], j.morphisms[r.morphisms[phi]]), || {
            format!("counit naturality fails at {}", kc.morphism(phi).label)
        });
    }
    findings.push(Finding::new("counit-naturality", out.0));

    let mut out = Collector::new();
    for (x, &e) in counit.iter().enumerate() {
        out.check(r.morphisms[e] == fibre.identity(r.objects[x]), || {
            format!("r_K(ε) is not an identity at {}", kc.objects()[x])
        });
    }
    for a in 0..fibre.object_count() {
        out.check(counit[j.objects[a]] == kc.identity(j.objects[a]), || {
            format!("ε at j_K({}) is not an identity", fibre.objects()[a])
        });
    }
    findings.push(Finding::new("triangle-identities", out.0));

    let mut out = Collector::new();
    for a in 0..fibre.object_count() {
        for x in 0..kc.object_count() {
            let mut images: Vec<usize> = kc.hom(j.objects[a], x).map(|phi| r.morphisms[phi]).collect();
            let expected: Vec<usize> = fibre.hom(a, r.objects[x]).collect();
            images.sort_unstable();
            let distinct = images.windows(2).all(|w| w[0] != w[1]);
            out.check(distinct && images == expected, || {
                format!("Hom(j_K {}, {}) → Hom({}, r_K …) is not bijective", fibre.objects()[a], kc.objects()[x], fibre.objects()[a])
            });
        }
    }
    findings.push(Finding::new("adjunction-bijection", out.0));

    // θ_{(f,A)} = (f, id): (K, F(f)A) → (L, A), from i_K r_K to π_K
    let theta: Vec<usize> = counit.iter().map(|&e| kp.morphisms[e].0).collect();
    let mut out = Collector::new();
    for phi in 0..kc.morphism_count() {
        let (x, y) = (kc.src(phi), kc.dst(phi));
        out.check(g.compose(pi.morphisms[phi], theta[x]) == g.compose(theta[y], i.morphisms[r.morphisms[phi]]), || {
            format!("i_K r_K → π_K is not natural at {}", kc.morphism(phi).label)
        });
    }
    findings.push(Finding::new("ir-to-pi-naturality", out.0));

    let mut phi_failures = Vec::new();
    let mut psi_failures = Vec::new();
    let mut triangle_failures = Collector::new();
    let mut naturality_failures = Collector::new();
    let d1 = comma_over(base, k)?;
    for x in 0..kc.object_count() {
        let (arrow, a_target) = kp.objects[x];
        let d2 = comma_over(kc, x)?;
        let t = comma_over(g, groth.object(base.dst(arrow), a_target))?;
        // Φ(k, φ) = (f k, F(f_0 k)(a)) for φ = ((l, a), f_0): (f_0, A_0) → (f, A)
        let phi_arrow = |kk: usize, phi: usize| {
            let (m, f0) = kp.morphisms[phi];
            let a = groth.morphisms[m].1;
            groth.morphism(base.compose(arrow, kk), f.on_morphism(base.compose(f0, kk), a), a_target)
        };
        let phi_obj = |i1: usize, j1: usize| t.object(phi_arrow(d1.objects[i1], d2.objects[j1])?);
        let phi_mor = |x1: usize, y1: usize| {
            let (k0, k1) = d1.morphisms[x1];
            let (psi, phi1) = d2.morphisms[y1];
            let kk = base.compose(k1, k0);
            let (m0, f0) = kp.morphisms[psi];
            let (l0, a0, a0_target) = groth.morphisms[m0];
            let f0_target = base.compose(l0, f0);
            let h = groth.morphism(
                k0,
                f.on_morphism(base.compose(f0, kk), a0),
                f.on_object(base.compose(f0_target, k1), a0_target),
            )?;
            t.morphism(h, phi_arrow(k1, phi1)?)
        };
        let psi_obj = |_: usize, j1: usize| t.object(kp.morphisms[d2.objects[j1]].0);
        let psi_mor = |_: usize, y1: usize| {
            let (psi, phi1) = d2.morphisms[y1];
            t.morphism(kp.morphisms[psi].0, kp.morphisms[phi1].0)
        };
        let (phi_table, v) = check_product_functor(&d1.category, &d2.category, &t.category, phi_obj, phi_mor);
        phi_failures.extend(v.into_iter().map(|w| format!("Φ at {}: {w}", kc.objects()[x])));
        let (psi_table, v) = check_product_functor(&d1.category, &d2.category, &t.category, psi_obj, psi_mor);
        psi_failures.extend(v.into_iter().map(|w| format!("Ψ at {}: {w}", kc.objects()[x])));
        let (Some(phi_t), Some(psi_t)) = (phi_table, psi_table) else { continue };
        let n2 = d2.category.object_count();
        let m2 = d2.category.morphism_count();
        // components (f_0 k, id): (K_0, F(f_0 k)(A_0)) → (L_0, A_0)
        let mut component = vec![None; d1.category.object_count() * n2];
        for i1 in 0..d1.category.object_count() {
            for j1 in 0..n2 {
                let kk = d1.objects[i1];
                let phi = d2.objects[j1];
                let (m, f0) = kp.morphisms[phi];
                let a0 = kp.objects[kc.src(phi)].1;
                let f0k = base.compose(f0, kk);
                let image = f.on_object(f0k, a0);
                let u = groth.morphism(f0k, f.fibres[base.src(kk)].identity(image), a0);
                let c = u.and_then(|u| t.morphism(u, m));
                let ok = c.is_some_and(|c| {
                    t.category.src(c) == phi_t.objects[i1 * n2 + j1] && t.category.dst(c) == psi_t.objects[i1 * n2 + j1]
                });
                triangle_failures.check(ok, || {
                    format!("Φ → Ψ component at {} is not a triangle over {}", d2.category.objects()[j1], kc.objects()[x])
                });
                component[i1 * n2 + j1] = c;
            }
        }
        let comp = |i1: usize, j1: usize| component[i1 * n2 + j1];
        let mut natural = |x1: usize, y1: usize| {
            let (s1, s2) = (d1.category.src(x1), d2.category.src(y1));
            let (e1, e2) = (d1.category.dst(x1), d2.category.dst(y1));
            let ok = match (comp(s1, s2), comp(e1, e2)) {
                (Some(cs), Some(ce)) => {
                    t.category.compose(psi_t.morphisms[x1 * m2 + y1], cs)
                        == t.category.compose(ce, phi_t.morphisms[x1 * m2 + y1])
                }
                _ => false,
            };
            naturality_failures.check(ok, || format!("Φ → Ψ is not natural at ({x1}, {y1}) over {}", kc.objects()[x]));
        };
        for x1 in 0..d1.category.morphism_count() {
            for j1 in 0..n2 {
                natural(x1, d2.category.identity(j1));
            }
        }
        for y1 in 0..m2 {
            for i1 in 0..d1.category.object_count() {
                natural(d1.category.identity(i1), y1);
            }
        }
    }
    phi_failures.truncate(8);
    psi_failures.truncate(8);
    findings.push(Finding::new("phi-functor", phi_failures));
    findings.push(Finding::new("psi-functor", psi_failures));
    findings.push(Finding::new("phi-psi-triangles", triangle_failures.0));
    findings.push(Finding::new("phi-psi-naturality", naturality_failures.0));
    Ok(KanReport { findings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcat::Monoid;
    use crate::indexcat::grothendieck::*;

    #[test]
    fn terminal_scaffold() {
        let base = Monoid::cyclic(3).as_category();
        let f = constant_terminal(&base);
        let g = grothendieck_construct(&f).unwrap();
        let report = verify_kan_scaffold(&f, &g, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn naturals_scaffold() {
        let f = naturals_on_divisibility(6);
        let g = grothendieck_construct(&f).unwrap();
        let report = verify_kan_scaffold(&f, &g, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn control_scaffold_and_semidirect() {
        let f = collapsing_control();
        let g = grothendieck_construct(&f).unwrap();
        for k in 0..2 {
            assert!(verify_kan_scaffold(&f, &g, k).unwrap().passed());
        }
        let f = semidirect(&Monoid::cyclic(4), &Monoid::cyclic(5), |b, a| (b << a) % 5);
        let g = grothendieck_construct(&f).unwrap();
        assert!(verify_kan_scaffold(&f, &g, 0).unwrap().passed());
    }

    #[test]
    fn corrupted_composition_is_reported() {
        let base = Monoid::cyclic(3).as_category();
        let f = constant_terminal(&base);
        let g = corrupt_composition(&grothendieck_construct(&f).unwrap()).unwrap();
        let report = verify_kan_scaffold(&f, &g, 0).unwrap();
        assert!(!report.passed());
        let laws = &report.findings[0];
        assert!(!laws.passed);
        assert!(laws.witness.as_deref().unwrap().contains("(h, g, f)"), "{laws:?}");
    }
}
