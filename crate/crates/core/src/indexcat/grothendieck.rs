//! Category-valued functors, their Grothendieck constructions, and comma
//! categories.

use std::collections::HashMap;

use crate::barcat::{FinCategory, Functor, Monoid, MorphismInfo};
use crate::error::{Error, Result};

/// A contravariant functor `F: K^op → Cat` on a finite category.
///
/// `actions[k]` is `F(k): F(dst k) → F(src k)`.
#[derive(Clone, Debug)]
pub struct CatValuedFunctor {
    pub base: FinCategory,
    pub fibres: Vec<FinCategory>,
    pub actions: Vec<Functor>,
}

impl CatValuedFunctor {
    /// `F(id) = id`, `F(k' ∘ k) = F(k) ∘ F(k')`, and each `F(k)` a functor.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = &self.base;
        if self.fibres.len() != k.object_count() || self.actions.len() != k.morphism_count() {
            out.push("one fibre per object and one functor per morphism are required".into());
            return out;
        }
        for (f, m) in k.morphisms().iter().enumerate() {
            for v in self.actions[f].violations(&self.fibres[m.dst], &self.fibres[m.src]) {
                out.push(format!("F({}) : {v}", m.label));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..k.object_count() {
            if self.actions[k.identity(o)] != Functor::identity(&self.fibres[o]) {
                out.push(format!("F(id) is not the identity at object {}", k.objects()[o]));
            }
        }
        for (g, f) in k.composable_pairs() {
            let lhs = &self.actions[k.compose(g, f)];
            let rhs = self.actions[f].after(&self.actions[g]);
            if *lhs != rhs {
                out.push(format!("F({}∘{}) != F({})∘F({})", k.morphism(g).label, k.morphism(f).label,
                    k.morphism(f).label, k.morphism(g).label));
            }
        }
        out
    }

    /// `F(k)` applied to an object of `F(dst k)`.
    pub fn on_object(&self, k: usize, a: usize) -> usize {
        self.actions[k].objects[a]
    }

    pub fn on_morphism(&self, k: usize, a: usize) -> usize {
        self.actions[k].morphisms[a]
    }
}

/// `K ⋉ F` with its index dictionaries.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: FinCategory,
    /// `(K, A)` per object.
    pub objects: Vec<(usize, usize)>,
    /// `(k, a, A')` per morphism `(k, a): (K, A) → (K', A')`.
    pub morphisms: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize), usize>,
}

impl Grothendieck {
    pub fn object(&self, k: usize, a: usize) -> usize {
        self.object_index[&(k, a)]
    }

    pub fn morphism(&self, k: usize, a: usize, target: usize) -> Option<usize> {
        self.morphism_index.get(&(k, a, target)).copied()
    }
}

/// Objects `(K, A)`; morphisms `(k, a): (K, A) → (K', A')` with
/// `a: A → F(k)(A')`; composition `(k', a') ∘ (k, a) = (k'k, F(k)(a') ∘ a)`.
pub fn grothendieck_construct(f: &CatValuedFunctor) -> Result<Grothendieck> {
    let violations = f.violations();
    if !violations.is_empty() {
        return Err(Error::FunctorLaw(violations.join("; ")));
    }
    let k = &f.base;
    let mut objects = Vec::new();
    for (o, fibre) in f.fibres.iter().enumerate() {
        objects.extend((0..fibre.object_count()).map(|a| (o, a)));
    }
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::new();
    for (km, info) in k.morphisms().iter().enumerate() {
        let (src_fibre, dst_fibre) = (&f.fibres[info.src], &f.fibres[info.dst]);
        for target in 0..dst_fibre.object_count() {
            let image = f.on_object(km, target);
            morphisms.extend(src_fibre.incoming(image).iter().map(|&a| (km, a, target)));
        }
    }
    morphisms.sort_unstable();
    let morphism_index: HashMap<(usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let infos = morphisms
        .iter()
        .map(|&(km, a, target)| {
            let info = k.morphism(km);
            MorphismInfo {
                src: object_index[&(info.src, f.fibres[info.src].src(a))],
                dst: object_index[&(info.dst, target)],
                label: format!("({},{})", info.label, f.fibres[info.src].morphism(a).label),
            }
        })
        .collect();
    let labels = objects
        .iter()
        .map(|&(o, a)| format!("({},{})", k.objects()[o], f.fibres[o].objects()[a]))
        .collect();
    let identities = objects
        .iter()
        .map(|&(o, a)| morphism_index[&(k.identity(o), f.fibres[o].identity(a), a)])
        .collect();
    let category = FinCategory::from_fn(labels, infos, identities, |g, h| {
        let (k2, a2, t2) = morphisms[g];
        let (k1, a1, _) = morphisms[h];
        let fibre = &f.fibres[k.src(k1)];
        let a = fibre.try_compose(f.on_morphism(k1, a2), a1)?;
        morphism_index.get(&(k.try_compose(k2, k1)?, a, t2)).copied()
    })?;
    Ok(Grothendieck { category, objects, morphisms, object_index, morphism_index })
}

/// `(C ↓ X)` with its index dictionaries.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: FinCategory,
    /// The morphism `f: Y → X` of `C` per object.
    pub objects: Vec<usize>,
    /// `(u, f')` per morphism `u: (f'u) → f'`.
    pub morphisms: Vec<(usize, usize)>,
    object_index: HashMap<usize, usize>,
    morphism_index: HashMap<(usize, usize), usize>,
}

impl Comma {
    pub fn object(&self, f: usize) -> Option<usize> {
        self.object_index.get(&f).copied()
    }

    pub fn morphism(&self, u: usize, target: usize) -> Option<usize> {
        self.morphism_index.get(&(u, target)).copied()
    }
}

/// Objects are morphisms into `x`; a morphism `f → f'` is `u` with
/// `f' ∘ u = f`.
pub fn comma_over(c: &FinCategory, x: usize) -> Result<Comma> {
    if x >= c.object_count() {
        return Err(Error::InvalidArgument(format!("no object {x}")));
    }
    let objects: Vec<usize> = c.incoming(x).to_vec();
    let object_index: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut morphisms = Vec::new();
    for &target in &objects {
        for &u in c.incoming(c.src(target)) {
            morphisms.push((u, target));
        }
    }
    let morphism_index: HashMap<(usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let infos = morphisms
        .iter()
        .map(|&(u, target)| MorphismInfo {
            src: object_index[&c.compose(target, u)],
            dst: object_index[&target],
            label: c.morphism(u).label.clone(),
        })
        .collect();
    let labels = objects.iter().map(|&f| c.morphism(f).label.clone()).collect();
    let identities = objects.iter().map(|&f| morphism_index[&(c.identity(c.src(f)), f)]).collect();
    let category = FinCategory::from_fn(labels, infos, identities, |g, h| {
        let (u2, t2) = morphisms[g];
        let (u1, _) = morphisms[h];
        morphism_index.get(&(c.try_compose(u2, u1)?, t2)).copied()
    })?;
    Ok(Comma { category, objects, morphisms, object_index, morphism_index })
}

/// The functor `(C ↓ X) → (D ↓ G(X))` induced by a functor `G: C → D`.
pub fn induced_on_comma(g: &Functor, from: &Comma, to: &Comma) -> Option<Functor> {
    let objects = from.objects.iter().map(|&f| to.object(g.morphisms[f])).collect::<Option<Vec<_>>>()?;
    let morphisms = from
        .morphisms
        .iter()
        .map(|&(u, t)| to.morphism(g.morphisms[u], g.morphisms[t]))
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { objects, morphisms })
}

/// `F` constant at the terminal category.
pub fn constant_terminal(base: &FinCategory) -> CatValuedFunctor {
    let point = crate::barcat::Monoid::trivial().as_category();
    CatValuedFunctor {
        base: base.clone(),
        fibres: vec![point.clone(); base.object_count()],
        actions: vec![Functor::identity(&point); base.morphism_count()],
    }
}

/// A monoid `G` acting from the right on a monoid `H` by `b ↦ b^a`,
/// as a functor on the one-object category of `G`.
pub fn semidirect(g: &Monoid, h: &Monoid, act: impl Fn(usize, usize) -> usize) -> CatValuedFunctor {
    let hc = h.as_category();
    let actions = (0..g.len())
        .map(|a| Functor { objects: vec![0], morphisms: (0..h.len()).map(|b| act(b, a)).collect() })
        .collect();
    CatValuedFunctor { base: g.as_category(), fibres: vec![hc], actions }
}

/// The semidirect product monoid with `(a₁,b₁)(a₂,b₂) = (a₁a₂, b₁^{a₂} b₂)`,
/// element `(a, b)` at index `a·|H| + b`.
pub fn semidirect_monoid(g: &Monoid, h: &Monoid, act: impl Fn(usize, usize) -> usize) -> Monoid {
    let nh = h.len();
    let labels = (0..g.len() * nh).map(|i| format!("({},{})", g.elements()[i / nh], h.elements()[i % nh])).collect();
    Monoid::from_fn(labels, |x, y| {
        let (a1, b1, a2, b2) = (x / nh, x % nh, y / nh, y % nh);
        g.mul(a1, a2) * nh + h.mul(act(b1, a2), b2)
    })
    .expect("semidirect product has an identity")
}

/// The multiplicative monoid `{1, …, B} ∪ {∞}` where products above `B`
/// become the absorbing element `∞` (index `B`).
pub fn truncated_naturals(bound: u64) -> Monoid {
    let b = bound as usize;
    let labels = (1..=bound).map(|n| n.to_string()).chain(std::iter::once("∞".to_string())).collect();
    Monoid::from_fn(labels, |x, y| {
        if x == b || y == b {
            return b;
        }
        let p = (x + 1) * (y + 1);
        if p <= b {
            p - 1
        } else {
            b
        }
    })
    .expect("truncated naturals")
}

/// `N_B` acting on `𝒩_B = (N_B ↓ *)` by multiplication: the finite
/// stand-in for the natural numbers acting on `𝒩`.
pub fn naturals_on_divisibility(bound: u64) -> CatValuedFunctor {
    let nb = truncated_naturals(bound);
    let base = nb.as_category();
    let fibre = comma_over(&base, 0).expect("one object").category;
    // objects of 𝒩_B are indexed like N_B; morphism (u, n) of the comma
    // goes to (u, r n)
    let comma = comma_over(&base, 0).expect("one object");
    let actions = (0..nb.len())
        .map(|r| Functor {
            objects: comma.objects.iter().map(|&n| comma.object(nb.mul(r, n)).unwrap()).collect(),
            morphisms: comma.morphisms.iter().map(|&(u, t)| comma.morphism(u, nb.mul(r, t)).unwrap()).collect(),
        })
        .collect();
    CatValuedFunctor { base, fibres: vec![fibre], actions }
}

/// A base arrow `0 → 1` whose functor collapses two objects over a common
/// target, so `F(f)` on comma categories is not injective.
pub fn collapsing_control() -> CatValuedFunctor {
    let mi = |src, dst, label: &str| MorphismInfo { src, dst, label: label.into() };
    let base = FinCategory::from_fn(
        vec!["0".into(), "1".into()],
        vec![mi(0, 0, "id0"), mi(1, 1, "id1"), mi(0, 1, "f")],
        vec![0, 1],
        |g, h| Some(if g < 2 { h } else { g }),
    )
    .expect("arrow category");
    // F(1): x → z ← y
    let f1 = FinCategory::from_fn(
        vec!["x".into(), "y".into(), "z".into()],
        vec![mi(0, 0, "idx"), mi(1, 1, "idy"), mi(2, 2, "idz"), mi(0, 2, "p"), mi(1, 2, "q")],
        vec![0, 1, 2],
        |g, h| Some(if g == 2 { h } else { g }),
    )
    .expect("cospan");
    // F(0): w → z'
    let f0 = FinCategory::from_fn(
        vec!["w".into(), "z'".into()],
        vec![mi(0, 0, "idw"), mi(1, 1, "idz'"), mi(0, 1, "p'")],
        vec![0, 1],
        |g, h| Some(if g == 1 { h } else { g }),
    )
    .expect("arrow");
    let collapse = Functor { objects: vec![0, 0, 1], morphisms: vec![0, 0, 1, 2, 2] };
    CatValuedFunctor {
        base,
        actions: vec![Functor::identity(&f0), Functor::identity(&f1), collapse],
        fibres: vec![f0, f1],
    }
}

/// Group actions on cyclic groups: `ℤ/2` on `ℤ/3` by inversion, `ℤ/4` on
/// `ℤ/5` through `b ↦ 2^a b`, and `S₃` on `ℤ/3` through the sign.
pub fn group_action_instances() -> Vec<(&'static str, CatValuedFunctor)> {
    const ODD: [usize; 3] = [1, 2, 5];
    vec![
        ("Z/2 on Z/3", semidirect(&Monoid::cyclic(2), &Monoid::cyclic(3), |b, a| if a == 0 { b } else { (3 - b) % 3 })),
        ("Z/4 on Z/5", semidirect(&Monoid::cyclic(4), &Monoid::cyclic(5), |b, a| (b << a) % 5)),
        (
            "S3 on Z/3",
            semidirect(&Monoid::symmetric3(), &Monoid::cyclic(3), |b, a| if ODD.contains(&a) { (3 - b) % 3 } else { b }),
        ),
    ]
}

/// `n ↦ ℤ/q` on the index category, `(r, s)` acting by multiplication by
/// `r`: a discrete stand-in for the circle with its power maps.
pub fn power_action(ic: &super::IndexCategory, q: usize) -> CatValuedFunctor {
    let circle = Monoid::cyclic(q);
    CatValuedFunctor {
        fibres: vec![circle.as_category(); ic.category.object_count()],
        actions: ic
            .morphisms
            .iter()
            .map(|p| Functor { objects: vec![0], morphisms: (0..q).map(|z| z * p.r as usize % q).collect() })
            .collect(),
        base: ic.category.clone(),
    }
}

/// The full subcategory of `N_B ⋉ 𝒩_B` on finite objects, with the
/// dictionary from the index category: `(r, s): m → n` ↦ `(r, s)`.
pub fn index_dictionary(
    groth: &Grothendieck,
    bound: u64,
    ic: &super::IndexCategory,
) -> (crate::barcat::Subcategory, Functor) {
    let b = bound as usize;
    let nb = truncated_naturals(bound);
    let comma = comma_over(&nb.as_category(), 0).expect("one object");
    let sub = groth.category.full_subcategory(|o| groth.objects[o].1 != comma.object(b).unwrap());
    let position: HashMap<usize, usize> = sub.morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let obj_position: HashMap<usize, usize> = sub.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let objects = (1..=bound)
        .map(|n| obj_position[&groth.object(0, comma.object((n - 1) as usize).unwrap())])
        .collect();
    let morphisms = ic
        .morphisms
        .iter()
        .map(|p| {
            let (r, s, n) = ((p.r - 1) as usize, (p.s - 1) as usize, (p.target - 1) as usize);
            let a = comma.morphism(s, nb.mul(r, n)).unwrap();
            position[&groth.morphism(r, a, comma.object(n).unwrap()).unwrap()]
        })
        .collect();
    (sub, Functor { objects, morphisms })
}
