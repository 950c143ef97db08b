//! The index category with objects `1..=B` and morphisms `(r, s): m → n`,
//! `m = r·n·s`, generated by Frobenius `F_r = (r, 1)` and restriction
//! `R_s = (1, s)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::barcat::{FinCategory, LawViolation, MorphismInfo};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexMorphism {
    pub source: u64,
    pub target: u64,
    pub r: u64,
    pub s: u64,
}

impl IndexMorphism {
    pub fn new(target: u64, r: u64, s: u64) -> Result<Self> {
        if target == 0 || r == 0 || s == 0 {
            return Err(Error::InvalidArgument("index morphisms need positive n, r, s".into()));
        }
        let source = r
            .checked_mul(target)
            .and_then(|x| x.checked_mul(s))
            .ok_or_else(|| Error::InvalidArgument("m = rns overflows".into()))?;
        Ok(IndexMorphism { source, target, r, s })
    }

    /// `F_r: rn → n`.
    pub fn frobenius(target: u64, r: u64) -> Result<Self> {
        Self::new(target, r, 1)
    }

    /// `R_s: sn → n`.
    pub fn restriction(target: u64, s: u64) -> Result<Self> {
        Self::new(target, 1, s)
    }

    pub fn identity(n: u64) -> Self {
        IndexMorphism { source: n, target: n, r: 1, s: 1 }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &IndexMorphism) -> Option<IndexMorphism> {
        (first.target == self.source).then(|| IndexMorphism {
            source: first.source,
            target: self.target,
            r: self.r * first.r,
            s: self.s * first.s,
        })
    }
}

impl fmt::Display for IndexMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}): {}→{}", self.r, self.s, self.source, self.target)
    }
}

/// The unique factorization `φ = F_r ∘ R_s`, as the pair of morphisms
/// `(F_r: rn → n, R_s: m → rn)`.
pub fn factor_unique(phi: &IndexMorphism) -> (IndexMorphism, IndexMorphism) {
    let f = IndexMorphism { source: phi.r * phi.target, target: phi.target, r: phi.r, s: 1 };
    let r = IndexMorphism { source: phi.source, target: phi.r * phi.target, r: 1, s: phi.s };
    (f, r)
}

/// The index category truncated to objects `1..=B`.
#[derive(Clone, Debug)]
pub struct IndexCategory {
    pub bound: u64,
    pub category: FinCategory,
    pub morphisms: Vec<IndexMorphism>,
    lookup: HashMap<IndexMorphism, usize>,
}

impl IndexCategory {
    pub fn index(&self, phi: &IndexMorphism) -> Option<usize> {
        self.lookup.get(phi).copied()
    }

    /// Object index of `n`.
    pub fn object(&self, n: u64) -> usize {
        (n - 1) as usize
    }
}

pub fn build_index_category(bound: u64) -> Result<IndexCategory> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let mut morphisms = Vec::new();
    for m in 1..=bound {
        for n in (1..=m).filter(|n| m % n == 0) {
            let q = m / n;
            for r in (1..=q).filter(|r| q % r == 0) {
                morphisms.push(IndexMorphism { source: m, target: n, r, s: q / r });
            }
        }
    }
    let lookup: HashMap<IndexMorphism, usize> = morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let infos = morphisms
        .iter()
        .map(|p| MorphismInfo { src: (p.source - 1) as usize, dst: (p.target - 1) as usize, label: p.to_string() })
        .collect();
    let identities = (1..=bound).map(|n| lookup[&IndexMorphism::identity(n)]).collect();
    let category = FinCategory::from_fn(
        (1..=bound).map(|n| n.to_string()).collect(),
        infos,
        identities,
        |g, f| morphisms[g].after(&morphisms[f]).and_then(|h| lookup.get(&h).copied()),
    )?;
    Ok(IndexCategory { bound, category, morphisms, lookup })
}

/// Outcome of the relation check, with the first failing instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub instances: usize,
    pub failures: Vec<String>,
    pub law_violations: Vec<LawViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.law_violations.is_empty()
    }
}

/// Checks `F_1 = R_1 = id`, `F_rF_s = F_{rs}`, `R_rR_s = R_{rs}` and
/// `F_rR_s = R_sF_r` on every instance inside the bound, the category
/// laws, and unique factorization of every morphism.
pub fn check_relations(ic: &IndexCategory) -> RelationReport {
    let mut report = RelationReport { law_violations: ic.category.validate(), ..Default::default() };
    let c = &ic.category;
    let b = ic.bound;
    let idx = |p: IndexMorphism| ic.index(&p);
    let mut fail = |msg: String| {
        if report.failures.len() < 20 {
            report.failures.push(msg);
        }
    };
    let mut instances = 0;
    for n in 1..=b {
        instances += 2;
        let id = c.identity(ic.object(n));
        if idx(IndexMorphism::frobenius(n, 1).unwrap()) != Some(id) {
            fail(format!("F_1 at {n} is not the identity"));
        }
        if idx(IndexMorphism::restriction(n, 1).unwrap()) != Some(id) {
            fail(format!("R_1 at {n} is not the identity"));
        }
        for r in 1..=b / n {
            for s in 1..=b / (n * r) {
                instances += 3;
                let f = |t: u64, k: u64| idx(IndexMorphism::frobenius(t, k).unwrap()).unwrap();
                let rr = |t: u64, k: u64| idx(IndexMorphism::restriction(t, k).unwrap()).unwrap();
                if c.compose(f(n, r), f(r * n, s)) != f(n, r * s) {
                    fail(format!("F_{r}F_{s} != F_{} at {n}", r * s));
                }
                if c.compose(rr(n, r), rr(r * n, s)) != rr(n, r * s) {
                    fail(format!("R_{r}R_{s} != R_{} at {n}", r * s));
                }
                if c.compose(f(n, r), rr(r * n, s)) != c.compose(rr(n, s), f(s * n, r)) {
                    fail(format!("F_{r}R_{s} != R_{s}F_{r} at {n}"));
                }
            }
        }
    }
    for (i, phi) in ic.morphisms.iter().enumerate() {
        instances += 1;
        let q = phi.source / phi.target;
        let matches = (1..=q)
            .filter(|r| q % r == 0)
            .filter(|&r| {
                let (fr, rs) = factor_unique(&IndexMorphism { r, s: q / r, ..*phi });
                c.compose(idx(fr).unwrap(), idx(rs).unwrap()) == i
            })
            .count();
        if matches != 1 {
            fail(format!("{phi} has {matches} factorizations F_r∘R_s"));
        }
    }
    report.instances = instances;
    report
}

/// The discrete skeleton of `𝕀 ⋉ 𝕋` with `𝕋` replaced by `ℤ/q`: morphisms
/// `(r, s, z)` composed by `(r₁,s₁,z₁)·(r₂,s₂,z₂) = (r₁r₂, s₁s₂, r₂z₁ + z₂)`.
pub fn twisted_index_category(bound: u64, q: u64) -> Result<FinCategory> {
    if q == 0 {
        return Err(Error::InvalidArgument("circle stand-in must be a nontrivial cyclic group".into()));
    }
    let base = build_index_category(bound)?;
    let qs = q as usize;
    let infos = base
        .morphisms
        .iter()
        .flat_map(|p| (0..q).map(move |z| (p, z)))
        .map(|(p, z)| MorphismInfo {
            src: (p.source - 1) as usize,
            dst: (p.target - 1) as usize,
            label: format!("({},{},{z})", p.r, p.s),
        })
        .collect();
    let identities = (1..=bound).map(|n| base.index(&IndexMorphism::identity(n)).unwrap() * qs).collect();
    FinCategory::from_fn((1..=bound).map(|n| n.to_string()).collect(), infos, identities, |g, f| {
        let (p1, z1) = (&base.morphisms[g / qs], (g % qs) as u64);
        let (p2, z2) = (&base.morphisms[f / qs], (f % qs) as u64);
        let p = p1.after(p2)?;
        let z = (p2.r % q * z1 + z2) % q;
        Some(base.index(&p)? * qs + z as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_one_is_trivial() {
        let ic = build_index_category(1).unwrap();
        assert_eq!(ic.category.object_count(), 1);
        assert_eq!(ic.morphisms, vec![IndexMorphism::identity(1)]);
    }

    #[test]
    fn frobenius_and_restriction_commute() {
        let f2 = IndexMorphism::frobenius(2, 2).unwrap();
        let r3 = IndexMorphism::restriction(4, 3).unwrap();
        let r3b = IndexMorphism::restriction(2, 3).unwrap();
        let f2b = IndexMorphism::frobenius(6, 2).unwrap();
        let expected = IndexMorphism { source: 12, target: 2, r: 2, s: 3 };
        assert_eq!(f2.after(&r3), Some(expected));
        assert_eq!(r3b.after(&f2b), Some(expected));
        assert_eq!(IndexMorphism::identity(2).after(&expected), Some(expected));
    }

    #[test]
    fn factorization_examples() {
        let (f, r) = factor_unique(&IndexMorphism::identity(7));
        assert_eq!((f.r, f.s, r.r, r.s), (1, 1, 1, 1));
        let (f, r) = factor_unique(&IndexMorphism::new(2, 2, 3).unwrap());
        assert_eq!((f.source, f.target, r.source, r.target), (4, 2, 12, 4));
        let (f, r) = factor_unique(&IndexMorphism::new(1, 5, 1).unwrap());
        assert_eq!(r, IndexMorphism::identity(5));
        assert_eq!(f.r, 5);
    }

    #[test]
    fn relations_hold() {
        let report = check_relations(&build_index_category(24).unwrap());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn twisted_law_is_a_category() {
        let c = twisted_index_category(6, 4).unwrap();
        assert!(c.validate().is_empty());
    }
}
