//! Symbolic expansion of the coherence homotopies
//! `h^U(v, t) = ∏_{p∈U} ((1 - t_p) D_p v + t_p D̄_p v)` and the check of
//! their cube-face relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A composite `D̄_B ∘ D_A`: the `D` operators are applied first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalCubeLabel {
    pub d: BTreeSet<u64>,
    pub dbar: BTreeSet<u64>,
}

impl FormalCubeLabel {
    pub fn identity() -> Self {
        FormalCubeLabel { d: BTreeSet::new(), dbar: BTreeSet::new() }
    }

    pub fn d(primes: impl IntoIterator<Item = u64>) -> Self {
        FormalCubeLabel { d: primes.into_iter().collect(), dbar: BTreeSet::new() }
    }

    pub fn dbar(primes: impl IntoIterator<Item = u64>) -> Self {
        FormalCubeLabel { d: BTreeSet::new(), dbar: primes.into_iter().collect() }
    }

    /// Product of two factors in the convention `D_p · D_q = D_{pq}`,
    /// `D̄_p · D̄_q = D̄_{pq}`, with `D` applied before `D̄`.
    pub fn product(&self, other: &Self) -> Self {
        FormalCubeLabel {
            d: self.d.union(&other.d).copied().collect(),
            dbar: self.dbar.union(&other.dbar).copied().collect(),
        }
    }
}

impl fmt::Display for FormalCubeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join("");
        match (self.d.is_empty(), self.dbar.is_empty()) {
            (true, true) => write!(f, "id"),
            (false, true) => write!(f, "D_{}", name(&self.d)),
            (true, false) => write!(f, "D̄_{}", name(&self.dbar)),
            (false, false) => write!(f, "D̄_{}∘D_{}", name(&self.dbar), name(&self.d)),
        }
    }
}

/// Squarefree-or-not monomial in the face parameters: prime ↦ exponent.
type Monomial = BTreeMap<u64, u32>;

/// A finite integer combination of `monomial · label` terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<(FormalCubeLabel, Monomial), i64>,
}

impl FormalSum {
    pub fn label(label: FormalCubeLabel) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((label, Monomial::new()), 1);
        FormalSum { terms }
    }

    fn add_term(&mut self, label: FormalCubeLabel, monomial: Monomial, c: i64) {
        let key = (label, monomial);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// The one-factor homotopy `(1 - t_p) D_p + t_p D̄_p`.
    pub fn factor(p: u64) -> Self {
        let mut s = FormalSum::default();
        let t = Monomial::from([(p, 1)]);
        s.add_term(FormalCubeLabel::d([p]), Monomial::new(), 1);
        s.add_term(FormalCubeLabel::d([p]), t.clone(), -1);
        s.add_term(FormalCubeLabel::dbar([p]), t, 1);
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FormalSum::default();
        for ((l1, m1), c1) in &self.terms {
            for ((l2, m2), c2) in &other.terms {
                let mut m = m1.clone();
                for (&p, &e) in m2 {
                    *m.entry(p).or_insert(0) += e;
                }
                out.add_term(l1.product(l2), m, c1 * c2);
            }
        }
        out
    }

    /// Substitutes `t_p = value` (0 or 1) for every `p ∈ primes`.
    pub fn substitute(&self, primes: &BTreeSet<u64>, value: bool) -> Self {
        let mut out = FormalSum::default();
        for ((label, monomial), &c) in &self.terms {
            let mut m = Monomial::new();
            let mut vanishes = false;
            for (&p, &e) in monomial {
                if primes.contains(&p) {
                    vanishes |= !value && e > 0;
                } else {
                    m.insert(p, e);
                }
            }
            if !vanishes {
                out.add_term(label.clone(), m, c);
            }
        }
        out
    }

    /// Precomposes every label with `D_V`.
    pub fn after_d(&self, v: &BTreeSet<u64>) -> Self {
        self.map_labels(|l| l.product(&FormalCubeLabel::d(v.iter().copied())))
    }

    /// Postcomposes every label with `D̄_V`.
    pub fn then_dbar(&self, v: &BTreeSet<u64>) -> Self {
        self.map_labels(|l| l.product(&FormalCubeLabel::dbar(v.iter().copied())))
    }

    fn map_labels(&self, f: impl Fn(&FormalCubeLabel) -> FormalCubeLabel) -> Self {
        let mut out = FormalSum::default();
        for ((label, monomial), &c) in &self.terms {
            out.add_term(f(label), monomial.clone(), c);
        }
        out
    }

    /// Terms grouped by label, each with its polynomial coefficient
    /// written out as `(monomial, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&FormalCubeLabel, &Monomial, i64)> {
        self.terms.iter().map(|((l, m), &c)| (l, m, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((label, m), c)) in self.terms.iter().enumerate() {
            let sign = match (i, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let magnitude = c.unsigned_abs();
            let coefficient = if magnitude == 1 { String::new() } else { format!("{magnitude}·") };
            let mono: String = m
                .iter()
                .map(|(p, e)| if *e == 1 { format!("t{p}·") } else { format!("t{p}^{e}·") })
                .collect();
            write!(f, "{sign}{coefficient}{mono}{label}")?;
        }
        Ok(())
    }
}

/// `h^U` as a formal sum.
pub fn expand_homotopy(u: &BTreeSet<u64>) -> FormalSum {
    u.iter()
        .fold(FormalSum::label(FormalCubeLabel::identity()), |acc, &p| acc.mul(&FormalSum::factor(p)))
}

/// The two-prime homotopy written out term by term:
/// `(1-t_p)(1-t_q) D_{pq} + (1-t_p) t_q D̄_q D_p + t_p (1-t_q) D̄_p D_q + t_p t_q D̄_{pq}`.
pub fn two_prime_display(p: u64, q: u64) -> FormalSum {
    let mut out = FormalSum::default();
    let mut put = |label: FormalCubeLabel, monos: &[(&[u64], i64)]| {
        for (m, c) in monos {
            out.add_term(label.clone(), m.iter().map(|&x| (x, 1)).collect(), *c);
        }
    };
    put(FormalCubeLabel::d([p, q]), &[(&[], 1), (&[p], -1), (&[q], -1), (&[p, q], 1)]);
    put(FormalCubeLabel { d: [p].into(), dbar: [q].into() }, &[(&[q], 1), (&[p, q], -1)]);
    put(FormalCubeLabel { d: [q].into(), dbar: [p].into() }, &[(&[p], 1), (&[p, q], -1)]);
    put(FormalCubeLabel::dbar([p, q]), &[(&[p, q], 1)]);
    out
}

/// Verdict for one pair `V ⊆ U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeCheck {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    /// `∂_V h^U = h^{U-V} ∘ (D_V × I^{U-V})`
    pub lower: bool,
    /// `∂^V h^U = D̄_V ∘ h^{U-V}`
    pub upper: bool,
}

const MAX_PRIMES: usize = 6;

/// Checks both cube-face relations for every `V ⊆ U` as identities of
/// formal sums.
pub fn verify_cube_face_relations(u: &[u64]) -> Result<Vec<CubeCheck>> {
    let set: BTreeSet<u64> = u.iter().copied().collect();
    if set.len() != u.len() {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    if let Some(&p) = set.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if set.len() > MAX_PRIMES {
        return Err(Error::InvalidArgument(format!("at most {MAX_PRIMES} primes are supported")));
    }
    let h = expand_homotopy(&set);
    let elems: Vec<u64> = set.iter().copied().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << elems.len()) {
        let v: BTreeSet<u64> =
            elems.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let rest: BTreeSet<u64> = set.difference(&v).copied().collect();
        let h_rest = expand_homotopy(&rest);
        let lower = h.substitute(&v, false) == h_rest.after_d(&v);
        let upper = h.substitute(&v, true) == h_rest.then_dbar(&v);
        out.push(CubeCheck { u: elems.clone(), v: v.into_iter().collect(), lower, upper });
    }
    Ok(out)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_is_identity() {
        let h = expand_homotopy(&BTreeSet::new());
        assert_eq!(h, FormalSum::label(FormalCubeLabel::identity()));
        let report = verify_cube_face_relations(&[]).unwrap();
        assert_eq!(report.len(), 1);
        assert!(report[0].lower && report[0].upper);
    }

    #[test]
    fn single_prime_faces() {
        let u = BTreeSet::from([2]);
        let h = expand_homotopy(&u);
        assert_eq!(h.substitute(&u, false), FormalSum::label(FormalCubeLabel::d([2])));
        assert_eq!(h.substitute(&u, true), FormalSum::label(FormalCubeLabel::dbar([2])));
    }

    #[test]
    fn two_prime_expansion_matches_display() {
        // (1-tp)(1-tq) D_pq + (1-tp) tq D̄_q∘D_p + tp (1-tq) D̄_p∘D_q + tp tq D̄_pq
        let (p, q) = (2u64, 3u64);
        let poly = |pairs: &[(&[u64], i64)], label: FormalCubeLabel| {
            let mut s = FormalSum::default();
            for (mono, c) in pairs {
                s.add_term(label.clone(), mono.iter().map(|&x| (x, 1)).collect(), *c);
            }
            s
        };
        let mut expected = FormalSum::default();
        let parts = [
            poly(&[(&[], 1), (&[p], -1), (&[q], -1), (&[p, q], 1)], FormalCubeLabel::d([p, q])),
            poly(&[(&[q], 1), (&[p, q], -1)], FormalCubeLabel { d: [p].into(), dbar: [q].into() }),
            poly(&[(&[p], 1), (&[p, q], -1)], FormalCubeLabel { d: [q].into(), dbar: [p].into() }),
            poly(&[(&[p, q], 1)], FormalCubeLabel::dbar([p, q])),
        ];
        for part in parts {
            for (l, m, c) in part.terms() {
                expected.add_term(l.clone(), m.clone(), c);
            }
        }
        assert_eq!(expand_homotopy(&BTreeSet::from([p, q])), expected);
        assert_eq!(two_prime_display(p, q), expected);
    }

    #[test]
    fn all_faces_hold() {
        for u in [&[2u64, 3][..], &[2, 3, 5], &[2, 3, 5, 7, 11, 13]] {
            let report = verify_cube_face_relations(u).unwrap();
            assert_eq!(report.len(), 1 << u.len());
            assert!(report.iter().all(|c| c.lower && c.upper));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verify_cube_face_relations(&[4]).is_err());
        assert!(verify_cube_face_relations(&[2, 2]).is_err());
        assert!(verify_cube_face_relations(&[2, 3, 5, 7, 11, 13, 17]).is_err());
    }

    #[test]
    fn wrong_face_is_detected() {
        // swapping which end of the interval carries D_p breaks the relation
        let u = BTreeSet::from([2]);
        let h = expand_homotopy(&u);
        assert_ne!(h.substitute(&u, true), FormalSum::label(FormalCubeLabel::d([2])));
    }
}
