//! Finite categories given by explicit tables.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismInfo {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

/// A finite category: objects, morphisms with source and target,
/// identities, and a composition table total on composable pairs.
///
/// Morphisms and objects are referenced by index. `compose(g, f)` is
/// `g ∘ f`, defined when `dst(f) == src(g)`.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    /// `dense[g][incoming_pos[f]] = g ∘ f`, the lookup behind `compose`.
    dense: Vec<Vec<usize>>,
    incoming_pos: Vec<usize>,
}

/// A failed category law, with the morphisms that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum LawViolation {
    /// `h ∘ (g ∘ f) != (h ∘ g) ∘ f`
    Associativity { h: usize, g: usize, f: usize },
    /// `id ∘ f != f`
    LeftIdentity { f: usize },
    /// `f ∘ id != f`
    RightIdentity { f: usize },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::Associativity { h, g, f } => {
                write!(fm, "associativity fails on (h, g, f) = ({h}, {g}, {f})")
            }
            LawViolation::LeftIdentity { f } => write!(fm, "left identity fails at {f}"),
            LawViolation::RightIdentity { f } => write!(fm, "right identity fails at {f}"),
        }
    }
}

impl FinCategory {
    /// Builds a category, checking that the tables are structurally sound:
    /// identities are endomorphisms of their object and the composition
    /// table is defined exactly on composable pairs with the right
    /// endpoints. Law violations are not checked here; see [`validate`].
    ///
    /// [`validate`]: FinCategory::validate
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n_obj || m.dst >= n_obj {
                return Err(Error::Schema(format!("morphism {i} has an endpoint out of range")));
            }
        }
        if identities.len() != n_obj {
            return Err(Error::Schema(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }
        for (o, &id) in identities.iter().enumerate() {
            let ok = morphisms.get(id).is_some_and(|m| m.src == o && m.dst == o);
            if !ok {
                return Err(Error::Schema(format!("identity of object {o} is not an endomorphism of it")));
            }
        }
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut incoming = vec![Vec::new(); n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            incoming[m.dst].push(i);
        }
        for (&(g, f), &h) in &composition {
            if g >= n_mor || f >= n_mor || h >= n_mor {
                return Err(Error::Schema(format!("composition entry ({g}, {f}) ↦ {h} out of range")));
            }
            let (mg, mf, mh) = (&morphisms[g], &morphisms[f], &morphisms[h]);
            if mf.dst != mg.src {
                return Err(Error::Schema(format!("composition entry for non-composable pair ({g}, {f})")));
            }
            if mh.src != mf.src || mh.dst != mg.dst {
                return Err(Error::Schema(format!("composite {g}∘{f} = {h} has the wrong endpoints")));
            }
        }
        let mut incoming_pos = vec![0; n_mor];
        for fs in &incoming {
            for (i, &f) in fs.iter().enumerate() {
                incoming_pos[f] = i;
            }
        }
        let mut dense = Vec::with_capacity(n_mor);
        for (g, mg) in morphisms.iter().enumerate() {
            let mut row = Vec::with_capacity(incoming[mg.src].len());
            for &f in &incoming[mg.src] {
                match composition.get(&(g, f)) {
                    Some(&h) => row.push(h),
                    None => return Err(Error::Schema(format!("composition table lacks {g}∘{f}"))),
                }
            }
            dense.push(row);
        }
        Ok(FinCategory { objects, morphisms, identities, composition, outgoing, incoming, dense, incoming_pos })
    }

    /// Builds a category from a composition function evaluated on every
    /// composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let mut incoming = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if m.dst < incoming.len() {
                incoming[m.dst].push(i);
            }
        }
        let mut composition = HashMap::new();
        for (g, mg) in morphisms.iter().enumerate() {
            let Some(fs) = incoming.get(mg.src) else { continue };
            for &f in fs {
                let h = compose(g, f).ok_or_else(|| {
                    Error::Schema(format!("no composite for {g}∘{f}"))
                })?;
                composition.insert((g, f), h);
            }
        }
        Self::from_parts(objects, morphisms, identities, composition)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorphismInfo] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &MorphismInfo {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let m = &self.morphisms[f];
        m.src == m.dst && self.identities[m.src] == f
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        let (mg, mf) = (self.morphisms.get(g)?, self.morphisms.get(f)?);
        if mf.dst != mg.src {
            return None;
        }
        Some(self.dense[g][self.incoming_pos[f]])
    }

    /// `g ∘ f`. Panics if the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn outgoing(&self, object: usize) -> &[usize] {
        &self.outgoing[object]
    }

    pub fn incoming(&self, object: usize) -> &[usize] {
        &self.incoming[object]
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[a].iter().copied().filter(move |&f| self.morphisms[f].dst == b)
    }

    /// All composable pairs `(g, f)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.morphisms
            .iter()
            .enumerate()
            .flat_map(move |(g, mg)| self.incoming[mg.src].iter().map(move |&f| (g, f)))
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    /// Checks associativity on all composable triples and both identity
    /// laws.
    pub fn validate(&self) -> Vec<LawViolation> {
        let mut out = Vec::new();
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[mf.dst], f) != f {
                out.push(LawViolation::LeftIdentity { f });
            }
            if self.compose(f, self.identities[mf.src]) != f {
                out.push(LawViolation::RightIdentity { f });
            }
        }
        let assoc: Vec<Vec<LawViolation>> = (0..self.morphisms.len())
            .into_par_iter()
            .map(|f| {
                let mut bad = Vec::new();
                for &g in &self.outgoing[self.morphisms[f].dst] {
                    let gf = self.compose(g, f);
                    for &h in &self.outgoing[self.morphisms[g].dst] {
                        if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                            bad.push(LawViolation::Associativity { h, g, f });
                        }
                    }
                }
                bad
            })
            .collect();
        out.extend(assoc.into_iter().flatten());
        out
    }

    /// Whether every morphism has a two-sided inverse.
    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| self.inverse(f).is_some())
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.dst, m.src).find(|&g| {
            self.compose(g, f) == self.identities[m.src] && self.compose(f, g) == self.identities[m.dst]
        })
    }

    /// Full subcategory on the objects satisfying `keep`, with the index
    /// maps back into `self`.
    pub fn full_subcategory(&self, keep: impl Fn(usize) -> bool) -> Subcategory {
        let objects: Vec<usize> = (0..self.objects.len()).filter(|&o| keep(o)).collect();
        let mut object_index = HashMap::new();
        for (i, &o) in objects.iter().enumerate() {
            object_index.insert(o, i);
        }
        let morphisms: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| object_index.contains_key(&self.src(f)) && object_index.contains_key(&self.dst(f)))
            .collect();
        let mut morphism_index = HashMap::new();
        for (i, &f) in morphisms.iter().enumerate() {
            morphism_index.insert(f, i);
        }
        let category = FinCategory::from_fn(
            objects.iter().map(|&o| self.objects[o].clone()).collect(),
            morphisms
                .iter()
                .map(|&f| MorphismInfo {
                    src: object_index[&self.src(f)],
                    dst: object_index[&self.dst(f)],
                    label: self.morphisms[f].label.clone(),
                })
                .collect(),
            objects.iter().map(|&o| morphism_index[&self.identities[o]]).collect(),
            |g, f| morphism_index.get(&self.compose(morphisms[g], morphisms[f])).copied(),
        )
        .expect("full subcategory of a valid category");
        Subcategory { category, objects, morphisms }
    }
}

/// A full subcategory with its inclusion.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub category: FinCategory,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// A finite monoid given by its multiplication table, `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl Monoid {
    /// Checks the table is square with entries in range and has a
    /// two-sided identity. Associativity is a law, checked by
    /// [`FinCategory::validate`] on [`Monoid::as_category`].
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Schema("a monoid has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Schema(format!("multiplication table must be {n}×{n} with entries < {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Schema("multiplication table has no identity element".into()))?;
        Ok(Monoid { elements, table, identity })
    }

    pub fn from_fn(elements: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = elements.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(elements, table)
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
            .expect("cyclic group")
    }

    /// The symmetric group on three letters, elements as permutation words,
    /// product `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Self::from_fn(labels, |a, b| {
            let (s, t) = (perms[a], perms[b]);
            index([s[t[0]], s[t[1]], s[t[2]]])
        })
        .expect("S3")
    }

    /// `{1, x}` with `x² = x`.
    pub fn idempotent_pair() -> Self {
        Self::new(vec!["1".into(), "x".into()], vec![vec![0, 1], vec![1, 1]]).expect("idempotent monoid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Resolves builtin names: `z<n>` (cyclic), `s3`, `idem2`, `trivial`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "s3" | "S3" => Some(Self::symmetric3()),
            "idem2" => Some(Self::idempotent_pair()),
            "trivial" => Some(Self::trivial()),
            _ => {
                let n: usize = name.strip_prefix('z').or_else(|| name.strip_prefix('Z'))?.parse().ok()?;
                (n > 0).then(|| Self::cyclic(n))
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    /// Number of conjugacy classes, counted directly from the table.
    /// Only meaningful for groups.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut classes = 0;
        for g in 0..n {
            if seen[g] {
                continue;
            }
            classes += 1;
            for h in 0..n {
                if let Some(hi) = self.inverse(h) {
                    seen[self.mul(self.mul(h, g), hi)] = true;
                }
            }
        }
        classes
    }

    /// The one-object category with composition `g ∘ f = g·f`.
    pub fn as_category(&self) -> FinCategory {
        let morphisms = self
            .elements
            .iter()
            .map(|l| MorphismInfo { src: 0, dst: 0, label: l.clone() })
            .collect();
        FinCategory::from_fn(vec!["*".into()], morphisms, vec![self.identity], |g, f| Some(self.mul(g, f)))
            .expect("monoid category")
    }
}

/// A functor between finite categories as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }

    /// Lists every failure of the functor laws, one line each.
    pub fn violations(&self, src: &FinCategory, dst: &FinCategory) -> Vec<String> {
        let mut out = Vec::new();
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.morphism_count() {
            out.push("functor tables do not match the source category".into());
            return out;
        }
        if self.objects.iter().any(|&o| o >= dst.object_count())
            || self.morphisms.iter().any(|&f| f >= dst.morphism_count())
        {
            out.push("functor tables point outside the target category".into());
            return out;
        }
        for (f, m) in src.morphisms().iter().enumerate() {
            let image = dst.morphism(self.morphisms[f]);
            if image.src != self.objects[m.src] || image.dst != self.objects[m.dst] {
                out.push(format!("morphism {f} is not sent between the images of its endpoints"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..src.object_count() {
            if self.morphisms[src.identity(o)] != dst.identity(self.objects[o]) {
                out.push(format!("identity of object {o} is not preserved"));
            }
        }
        for (g, f) in src.composable_pairs() {
            let lhs = self.morphisms[src.compose(g, f)];
            let rhs = dst.compose(self.morphisms[g], self.morphisms[f]);
            if lhs != rhs {
                out.push(format!("composition not preserved on ({g}, {f})"));
            }
        }
        out
    }

    pub fn is_bijective(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        fn bijective(map: &[usize], target: usize) -> bool {
            if map.len() != target {
                return false;
            }
            let mut hit = vec![false; target];
            map.iter().all(|&x| x < target && !std::mem::replace(&mut hit[x], true))
        }
        bijective(&self.objects, dst.object_count()) && bijective(&self.morphisms, dst.morphism_count())
            && self.objects.len() == src.object_count()
    }

    /// A functor that is bijective on objects and morphisms is an
    /// isomorphism of categories.
    pub fn is_isomorphism(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        self.violations(src, dst).is_empty() && self.is_bijective(src, dst)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Two objects with an isomorphism between them.
    pub(crate) fn iso_groupoid() -> FinCategory {
        let morphisms = vec![
            MorphismInfo { src: 0, dst: 0, label: "1a".into() },
            MorphismInfo { src: 1, dst: 1, label: "1b".into() },
            MorphismInfo { src: 0, dst: 1, label: "u".into() },
            MorphismInfo { src: 1, dst: 0, label: "v".into() },
        ];
        FinCategory::from_fn(vec!["a".into(), "b".into()], morphisms, vec![0, 1], |g, f| {
            Some(match (g, f) {
                (0, x) | (1, x) => x,
                (x, 0) | (x, 1) => x,
                (2, 3) => 1,
                (3, 2) => 0,
                _ => return None,
            })
        })
        .unwrap()
    }

    #[test]
    fn cyclic_group_is_a_valid_category() {
        let c = Monoid::cyclic(3).as_category();
        assert!(c.validate().is_empty());
        assert!(c.is_groupoid());
    }

    #[test]
    fn corrupted_composite_is_one_associativity_witness() {
        let c = Monoid::cyclic(3).as_category();
        let mut table = c.composition_table().clone();
        // 1 + 1 should be 2
        table.insert((1, 1), 0);
        let bad = FinCategory::from_parts(c.objects().to_vec(), c.morphisms().to_vec(), c.identities().to_vec(), table)
            .unwrap();
        let v = bad.validate();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| matches!(x, LawViolation::Associativity { .. })));
        // 1∘(1∘2) = 1 but (1∘1)∘2 = 2
        assert!(v.contains(&LawViolation::Associativity { h: 1, g: 1, f: 2 }));
    }

    #[test]
    fn groupoid_with_isomorphism_validates() {
        let c = iso_groupoid();
        assert!(c.validate().is_empty());
        assert!(c.is_groupoid());
        assert_eq!(c.inverse(2), Some(3));
    }

    #[test]
    fn schema_errors_are_distinct() {
        let m = vec![MorphismInfo { src: 0, dst: 1, label: "f".into() }];
        let err = FinCategory::from_parts(vec!["a".into()], m, vec![0], HashMap::new()).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
        assert!(Monoid::new(vec!["a".into(), "b".into()], vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn groupoid_like_examples() {
        assert!(Monoid::cyclic(2).as_category().is_groupoid());
        assert!(!Monoid::idempotent_pair().as_category().is_groupoid());
        assert!(Monoid::trivial().as_category().is_groupoid());
    }

    #[test]
    fn s3_structure() {
        let s3 = Monoid::symmetric3();
        assert!(s3.is_group());
        assert!(s3.as_category().validate().is_empty());
        assert_eq!(s3.conjugacy_class_count(), 3);
        assert_eq!(Monoid::cyclic(4).conjugacy_class_count(), 4);
    }
}
