//! The comparison functor `Θ_{(K,A)}: (K↓K) × (F(K)↓A) → (K⋉F ↓ (K,A))`
//! and the hypothesis under which it is an isomorphism.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::checks::{bijective, check_product_functor, Collector};
use super::grothendieck::{comma_over, induced_on_comma, CatValuedFunctor, Comma, Grothendieck};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    /// Every `F(f): (F(L)↓A) → (F(K)↓F(f)A)` is an isomorphism.
    pub hypothesis: bool,
    pub hypothesis_witness: Option<String>,
    /// `Θ_{(K,A)}` is a functor and bijective on objects and morphisms, at
    /// every object checked.
    pub theta_iso: bool,
    pub theta_witness: Option<String>,
    pub objects_checked: usize,
}

impl ThetaReport {
    /// Whether the hypothesis forces `Θ` to be an isomorphism here.
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.theta_iso
    }
}

pub(crate) struct FibreCommas {
    cache: HashMap<(usize, usize), Comma>,
}

impl FibreCommas {
    pub fn new() -> Self {
        FibreCommas { cache: HashMap::new() }
    }

    /// `(F(K) ↓ A)`.
    pub fn get(&mut self, f: &CatValuedFunctor, k: usize, a: usize) -> Result<&Comma> {
        Ok(match self.cache.entry((k, a)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(comma_over(&f.fibres[k], a)?),
        })
    }
}

/// Checks the hypothesis for every base morphism and every object of its
/// target fibre.
pub fn check_lemma_hypothesis(f: &CatValuedFunctor) -> Result<Vec<String>> {
    let mut out = Collector::new();
    let mut commas = FibreCommas::new();
    for (km, info) in f.base.morphisms().iter().enumerate() {
        for a in 0..f.fibres[info.dst].object_count() {
            let from = commas.get(f, info.dst, a)?.clone();
            let to = commas.get(f, info.src, f.on_object(km, a))?;
            let ok = induced_on_comma(&f.actions[km], &from, to)
                .is_some_and(|g| g.is_isomorphism(&from.category, &to.category));
            out.check(ok, || {
                format!(
                    "F({}) on (F({})↓{}) is not an isomorphism",
                    info.label,
                    f.base.objects()[info.dst],
                    f.fibres[info.dst].objects()[a]
                )
            });
        }
    }
    Ok(out.0)
}

/// Builds `Θ_{(K,A)}` and checks that it is an isomorphism of categories.
pub fn check_theta_at(
    f: &CatValuedFunctor,
    groth: &Grothendieck,
    object: (usize, usize),
    commas: &mut FibreCommas,
) -> Result<Vec<String>> {
    let (k_obj, a_obj) = object;
    let base_comma = comma_over(&f.base, k_obj)?;
    let fibre_comma = commas.get(f, k_obj, a_obj)?.clone();
    let target = comma_over(&groth.category, groth.object(k_obj, a_obj))?;
    let fibre = &f.fibres[k_obj];
    // (k: K0 → K, a: A0 → A) ↦ (k, F(k)(a)): (K0, F(k)(A0)) → (K, A)
    let theta_arrow = |k: usize, a: usize| groth.morphism(k, f.on_morphism(k, a), a_obj);
    let on_objects = |i: usize, j: usize| target.object(theta_arrow(base_comma.objects[i], fibre_comma.objects[j])?);
    let on_morphisms = |x: usize, y: usize| {
        let (k0, k_target) = base_comma.morphisms[x];
        let (a0, a_target) = fibre_comma.morphisms[y];
        let k = f.base.compose(k_target, k0);
        let image_target = f.on_object(k_target, fibre.src(a_target));
        let g = groth.morphism(k0, f.on_morphism(k, a0), image_target)?;
        target.morphism(g, theta_arrow(k_target, a_target)?)
    };
    let (table, mut failures) =
        check_product_functor(&base_comma.category, &fibre_comma.category, &target.category, on_objects, on_morphisms);
    if let Some(t) = table {
        if !bijective(&t.objects, target.category.object_count()) {
            failures.push("Θ is not bijective on objects".into());
        }
        if !bijective(&t.morphisms, target.category.morphism_count()) {
            failures.push("Θ is not bijective on morphisms".into());
        }
    }
    Ok(failures)
}

/// Checks the hypothesis once and `Θ` at every object of `K ⋉ F` (or at
/// the given object only).
pub fn check_theta_iso(
    f: &CatValuedFunctor,
    groth: &Grothendieck,
    at: Option<(usize, usize)>,
) -> Result<ThetaReport> {
    let hypothesis = check_lemma_hypothesis(f)?;
    let mut commas = FibreCommas::new();
    let objects: Vec<(usize, usize)> = match at {
        Some(o) => vec![o],
        None => groth.objects.clone(),
    };
    let mut theta_witness = None;
    for &o in &objects {
        let failures = check_theta_at(f, groth, o, &mut commas)?;
        if let Some(w) = failures.into_iter().next() {
            theta_witness = Some(format!("at {}: {w}", groth.category.objects()[groth.object(o.0, o.1)]));
            break;
        }
    }
    Ok(ThetaReport {
        hypothesis: hypothesis.is_empty(),
        hypothesis_witness: hypothesis.into_iter().next(),
        theta_iso: theta_witness.is_none(),
        theta_witness,
        objects_checked: objects.len(),
    })
}
