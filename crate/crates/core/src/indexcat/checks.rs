//! Shared plumbing for category-level checks.

use crate::barcat::FinCategory;
pub use crate::check::Finding;
pub(crate) use crate::check::Collector;

/// A functor `C₁ × C₂ → T` given on objects and morphisms of the factors,
/// tabulated with product indices `i·|C₂| + j`.
pub struct ProductFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// Tabulates a functor out of a product and checks it: endpoints,
/// identities, functoriality in each variable with the other fixed at an
/// identity, and `F(f, g) = F(f, id)∘F(id, g) = F(id, g)∘F(f, id)`.
/// Together these imply functoriality on all composable pairs.
pub fn check_product_functor(
    c1: &FinCategory,
    c2: &FinCategory,
    target: &FinCategory,
    on_objects: impl Fn(usize, usize) -> Option<usize>,
    on_morphisms: impl Fn(usize, usize) -> Option<usize>,
) -> (Option<ProductFunctor>, Vec<String>) {
    let mut out = Collector::new();
    let (n2, m2) = (c2.object_count(), c2.morphism_count());
    let mut objects = Vec::with_capacity(c1.object_count() * n2);
    for i in 0..c1.object_count() {
        for j in 0..n2 {
            match on_objects(i, j) {
                Some(o) if o < target.object_count() => objects.push(o),
                _ => {
                    out.check(false, || format!("object ({i}, {j}) has no image"));
                    return (None, out.0);
                }
            }
        }
    }
    let mut morphisms = Vec::with_capacity(c1.morphism_count() * m2);
    for f in 0..c1.morphism_count() {
        for g in 0..m2 {
            match on_morphisms(f, g) {
                Some(h) if h < target.morphism_count() => morphisms.push(h),
                _ => {
                    out.check(false, || format!("morphism ({f}, {g}) has no image"));
                    return (None, out.0);
                }
            }
        }
    }
    let obj = |i: usize, j: usize| objects[i * n2 + j];
    let mor = |f: usize, g: usize| morphisms[f * m2 + g];
    for f in 0..c1.morphism_count() {
        for g in 0..m2 {
            let h = mor(f, g);
            out.check(
                target.src(h) == obj(c1.src(f), c2.src(g)) && target.dst(h) == obj(c1.dst(f), c2.dst(g)),
                || format!("morphism ({f}, {g}) is not sent between the images of its endpoints"),
            );
        }
    }
    if !out.0.is_empty() {
        return (None, out.0);
    }
    for i in 0..c1.object_count() {
        for j in 0..n2 {
            out.check(mor(c1.identity(i), c2.identity(j)) == target.identity(obj(i, j)), || {
                format!("identity at ({i}, {j}) is not preserved")
            });
        }
    }
    for (g, f) in c1.composable_pairs() {
        for j in 0..n2 {
            let id = c2.identity(j);
            out.check(target.compose(mor(g, id), mor(f, id)) == mor(c1.compose(g, f), id), || {
                format!("composition of ({g}, {f}) in the first variable fails at object {j}")
            });
        }
    }
    for (g, f) in c2.composable_pairs() {
        for i in 0..c1.object_count() {
            let id = c1.identity(i);
            out.check(target.compose(mor(id, g), mor(id, f)) == mor(id, c2.compose(g, f)), || {
                format!("composition of ({g}, {f}) in the second variable fails at object {i}")
            });
        }
    }
    for f in 0..c1.morphism_count() {
        for g in 0..m2 {
            let (a, b) = (mor(f, c2.identity(c2.src(g))), mor(c1.identity(c1.dst(f)), g));
            let (c, d) = (mor(c1.identity(c1.src(f)), g), mor(f, c2.identity(c2.dst(g))));
            out.check(target.compose(b, a) == mor(f, g) && target.compose(d, c) == mor(f, g), || {
                format!("({f}, {g}) does not factor through the two variables")
            });
        }
    }
    (Some(ProductFunctor { objects, morphisms }), out.0)
}

pub(crate) fn bijective(map: &[usize], size: usize) -> bool {
    if map.len() != size {
        return false;
    }
    let mut hit = vec![false; size];
    map.iter().all(|&x| x < size && !std::mem::replace(&mut hit[x], true))
}
