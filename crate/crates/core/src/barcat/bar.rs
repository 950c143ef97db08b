//! Nerves and cyclic bar constructions of finite categories.

use std::collections::HashMap;

use super::category::FinCategory;
use crate::error::{Error, Result};
use crate::simplicial::{CyclicStructure, Monotone, Operator, SimplicialMap, SimplicialSet};
use crate::subdivision::{dbar_map, edgewise_subdivide, fixed_subcomplex, source_degree, FixedSubcomplex};

/// A simplicial set whose simplices are tuples of morphism (or object)
/// indices, listed in lexicographic order.
#[derive(Clone, Debug)]
pub struct TupleComplex {
    pub set: SimplicialSet,
    labels: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl TupleComplex {
    fn new(labels: Vec<Vec<Vec<usize>>>) -> (Vec<Vec<Vec<usize>>>, Vec<HashMap<Vec<usize>, usize>>) {
        let index = labels
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        (labels, index)
    }

    pub fn label(&self, k: usize, sigma: usize) -> &[usize] {
        &self.labels[k][sigma]
    }

    pub fn labels(&self, k: usize) -> &[Vec<usize>] {
        &self.labels[k]
    }

    pub fn lookup(&self, k: usize, tuple: &[usize]) -> Option<usize> {
        self.index.get(k)?.get(tuple).copied()
    }
}

fn assemble(
    labels: Vec<Vec<Vec<usize>>>,
    face: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
    degeneracy: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
    rotation: Option<&dyn Fn(&[usize]) -> Vec<usize>>,
) -> TupleComplex {
    let (labels, index) = TupleComplex::new(labels);
    let n = labels.len() - 1;
    let table = |k: usize, dst: usize, op: &dyn Fn(&[usize]) -> Vec<usize>| -> Vec<usize> {
        labels[k].iter().map(|t| index[dst][&op(t)]).collect()
    };
    let faces = (0..=n)
        .map(|k| match k {
            0 => Vec::new(),
            _ => (0..=k).map(|i| table(k, k - 1, &|t| face(k, i, t))).collect(),
        })
        .collect();
    let degeneracies = (0..=n)
        .map(|k| match k < n {
            true => (0..=k).map(|i| table(k, k + 1, &|t| degeneracy(k, i, t))).collect(),
            false => Vec::new(),
        })
        .collect();
    let cyclic = rotation.map(|rot| CyclicStructure {
        period: 1,
        rotations: (0..=n).map(|k| table(k, k, rot)).collect(),
    });
    let counts = labels.iter().map(Vec::len).collect();
    let set = SimplicialSet::from_parts(counts, faces, degeneracies, cyclic).expect("bar tables are total");
    TupleComplex { set, labels, index }
}

/// Tuples `(g_0, …, g_len-1)` of morphisms with `dst(g_i) = src(g_{i-1})`,
/// optionally closed up by `dst(g_0) = src(g_{len-1})`, in lexicographic
/// order.
fn chains(c: &FinCategory, len: usize, cyclic: bool) -> Vec<Vec<usize>> {
    fn go(c: &FinCategory, len: usize, cyclic: bool, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            if !cyclic || c.dst(prefix[0]) == c.src(prefix[len - 1]) {
                out.push(prefix.clone());
            }
            return;
        }
        let candidates: Vec<usize> = match prefix.last() {
            None => (0..c.morphism_count()).collect(),
            Some(&prev) => c.incoming(c.src(prev)).to_vec(),
        };
        let mut candidates = candidates;
        candidates.sort_unstable();
        for g in candidates {
            prefix.push(g);
            go(c, len, cyclic, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(c, len, cyclic, &mut Vec::new(), &mut out);
    out
}

/// The nerve: `k`-simplices are chains `(f_1, …, f_k)` with
/// `f_i: c_i → c_{i-1}`; degree 0 holds the objects.
pub fn nerve(c: &FinCategory, truncation: usize) -> TupleComplex {
    let labels: Vec<Vec<Vec<usize>>> = (0..=truncation)
        .map(|k| match k {
            0 => (0..c.object_count()).map(|o| vec![o]).collect(),
            _ => chains(c, k, false),
        })
        .collect();
    let face = |k: usize, i: usize, t: &[usize]| -> Vec<usize> {
        if k == 1 {
            return vec![if i == 0 { c.src(t[0]) } else { c.dst(t[0]) }];
        }
        let mut out = t.to_vec();
        if i == 0 {
            out.remove(0);
        } else if i == k {
            out.pop();
        } else {
            let g = c.compose(t[i - 1], t[i]);
            out.splice(i - 1..=i, [g]);
        }
        out
    };
    let degeneracy = |k: usize, i: usize, t: &[usize]| -> Vec<usize> {
        if k == 0 {
            return vec![c.identity(t[0])];
        }
        // vertex c_i is the source of f_i, or the target of f_1 when i = 0
        let vertex = if i == 0 { c.dst(t[0]) } else { c.src(t[i - 1]) };
        let mut out = t.to_vec();
        out.insert(i, c.identity(vertex));
        out
    };
    assemble(labels, face, degeneracy, None)
}

/// The cyclic bar construction: `k`-simplices are tuples `(f_0, …, f_k)`
/// with `f_0: c_0 → c_k` and `f_i: c_i → c_{i-1}`.
///
/// `d_i` composes `f_i ∘ f_{i+1}` for `i < k`, `d_k` replaces `f_0` by
/// `f_k ∘ f_0`, `s_i` inserts an identity after `f_i`, and `t_k` moves
/// `f_k` to the front.
pub fn cyclic_bar(c: &FinCategory, truncation: usize) -> TupleComplex {
    let labels: Vec<Vec<Vec<usize>>> = (0..=truncation).map(|k| chains(c, k + 1, true)).collect();
    let face = |k: usize, i: usize, t: &[usize]| bar_face(c, k, i, t);
    let degeneracy = |_k: usize, i: usize, t: &[usize]| bar_degeneracy(c, i, t);
    let rotation = |t: &[usize]| bar_rotation(t, 1);
    assemble(labels, face, degeneracy, Some(&rotation))
}

fn bar_face(c: &FinCategory, k: usize, i: usize, t: &[usize]) -> Vec<usize> {
    let mut out = t.to_vec();
    if i < k {
        let g = c.compose(t[i], t[i + 1]);
        out.splice(i..=i + 1, [g]);
    } else {
        out[0] = c.compose(t[k], t[0]);
        out.pop();
    }
    out
}

fn bar_degeneracy(c: &FinCategory, i: usize, t: &[usize]) -> Vec<usize> {
    let mut out = t.to_vec();
    out.insert(i + 1, c.identity(c.src(t[i])));
    out
}

fn bar_rotation(t: &[usize], steps: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.rotate_right(steps % t.len());
    out
}

/// `B^cy(C)(f)` applied to a tuple directly.
fn bar_apply(c: &FinCategory, f: &Monotone, t: &[usize]) -> Vec<usize> {
    let mut out = t.to_vec();
    for op in f.operator_word() {
        out = match op {
            Operator::Face(i) => bar_face(c, out.len() - 1, i, &out),
            Operator::Degeneracy(j) => bar_degeneracy(c, j, &out),
        };
    }
    out
}

fn is_cyclic_chain(c: &FinCategory, t: &[usize]) -> bool {
    let len = t.len();
    (0..len).all(|i| c.src(t[i]) == c.dst(t[(i + 1) % len]))
}

/// Checks `Δ_r` and `R_r` on `B^cy(C)` through `degree` by acting on
/// tuples, without building `sd_r B^cy(C)`, whose size grows like
/// `|C|^{r(degree+1)}`.
///
/// In each degree `k` this checks that every repetition `Δ_r x` is a
/// simplex fixed by the `C_r` generator `T^{k+1}`, that the subdivided
/// faces, degeneracies and rotation commute with `Δ_r`, that `R_r Δ_r x =
/// x`, and that every `C_r`-fixed simplex is `Δ_r` of its first block.
/// Returns the failures, if any.
pub fn check_diagonal_on_tuples(c: &FinCategory, r: usize, degree: usize) -> Result<Vec<String>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let repeat = |t: &[usize]| -> Vec<usize> { t.iter().copied().cycle().take(t.len() * r).collect() };
    let mut failures = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < 8 {
            failures.push(msg);
        }
    };
    for k in 0..=degree {
        for x in chains(c, k + 1, true) {
            let y = repeat(&x);
            if !is_cyclic_chain(c, &y) {
                fail(format!("Δ_{r}{x:?} is not a simplex"));
                continue;
            }
            if bar_rotation(&y, k + 1) != y {
                fail(format!("Δ_{r}{x:?} is not fixed by C_{r}"));
            }
            if y[..=k] != x[..] {
                fail(format!("R_{r}Δ_{r}{x:?} != {x:?}"));
            }
            if bar_rotation(&y, 1) != repeat(&bar_rotation(&x, 1)) {
                fail(format!("Δ_{r} does not commute with t_{k} at {x:?}"));
            }
            for i in 0..=k {
                if k > 0 {
                    let sub = bar_apply(c, &Monotone::coface(k, i).concatenate(r), &y);
                    if sub != repeat(&bar_face(c, k, i, &x)) {
                        fail(format!("Δ_{r} does not commute with d_{i} at {x:?}"));
                    }
                }
                let sub = bar_apply(c, &Monotone::codegeneracy(k, i).concatenate(r), &y);
                if sub != repeat(&bar_degeneracy(c, i, &x)) {
                    fail(format!("Δ_{r} does not commute with s_{i} at {x:?}"));
                }
            }
        }
        // A fixed simplex is periodic, so it repeats its first block; that
        // block must itself be a cyclic chain.
        for z in chains(c, k + 1, false) {
            if is_cyclic_chain(c, &repeat(&z)) && !is_cyclic_chain(c, &z) {
                fail(format!("fixed simplex Δ_{r}{z:?} is not in the image of Δ_{r}"));
            }
        }
    }
    Ok(failures)
}

/// `B^cy(C)` in the range where `Δ_r` is defined, the `C_r`-fixed part of
/// `sd_r B^cy(C)`, and the mutually inverse maps between them.
#[derive(Clone, Debug)]
pub struct DiagonalRestriction {
    pub bar: TupleComplex,
    pub fixed: FixedSubcomplex,
    /// `Δ_r`: block repetition, into `fixed.complex`.
    pub delta: SimplicialMap,
    /// `R_r`: the first block, out of `fixed.complex`.
    pub restriction: SimplicialMap,
}

/// `Δ_r` and `R_r` for `B^cy(C)` truncated at `truncation`.
pub fn diagonal_restriction(c: &FinCategory, r: usize, truncation: usize) -> Result<DiagonalRestriction> {
    let full = cyclic_bar(c, truncation);
    diagonal_restriction_of(&full, r)
}

/// [`diagonal_restriction`] on an already built `B^cy(C)`.
pub fn diagonal_restriction_of(full: &TupleComplex, r: usize) -> Result<DiagonalRestriction> {
    let sd = edgewise_subdivide(&full.set, r)?;
    let fixed = fixed_subcomplex(&sd)?;
    let top = sd.result.truncation();
    let bar = truncate_tuples(full, top);
    let mut delta = Vec::with_capacity(top + 1);
    let mut restriction = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let degree = source_degree(r, k);
        let included = &fixed.inclusion.components[k];
        let position: HashMap<usize, usize> = included.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let dk = bar.labels[k]
            .iter()
            .map(|t| {
                let repeated: Vec<usize> = t.iter().copied().cycle().take(t.len() * r).collect();
                let global = full.lookup(degree, &repeated).expect("repetition is a simplex");
                position.get(&global).copied().ok_or_else(|| {
                    Error::InvalidArgument(format!("block repetition of {t:?} is not fixed by C_{r}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rk = included
            .iter()
            .map(|&global| {
                let tuple = full.label(degree, global);
                bar.lookup(k, &tuple[..k + 1]).expect("a block is a simplex")
            })
            .collect();
        delta.push(dk);
        restriction.push(rk);
    }
    Ok(DiagonalRestriction {
        bar,
        fixed,
        delta: SimplicialMap { components: delta },
        restriction: SimplicialMap { components: restriction },
    })
}

fn truncate_tuples(x: &TupleComplex, top: usize) -> TupleComplex {
    TupleComplex {
        set: x.set.truncate(top).expect("top within truncation"),
        labels: x.labels[..=top].to_vec(),
        index: x.index[..=top].to_vec(),
    }
}

/// `F̄_r = D̄_r ∘ incl ∘ Δ_r`, an endomorphism of `B^cy(C)` on degrees
/// `k ≤ ⌊(N+1)/r⌋ - 1`.
pub fn frobenius_bar(c: &FinCategory, r: usize, truncation: usize) -> Result<SimplicialMap> {
    frobenius_bar_of(&cyclic_bar(c, truncation), r)
}

pub fn frobenius_bar_of(full: &TupleComplex, r: usize) -> Result<SimplicialMap> {
    let dr = diagonal_restriction_of(full, r)?;
    let dbar = dbar_map(&full.set, r)?;
    Ok(dbar.after(&dr.fixed.inclusion.after(&dr.delta)))
}

/// `(f_0, …, f_k) ↦ (f_1, …, f_k)`, forgetting the loop-closing morphism.
pub fn project_to_nerve(c: &FinCategory, bar: &TupleComplex, nerve: &TupleComplex) -> SimplicialMap {
    let top = bar.set.truncation().min(nerve.set.truncation());
    let components = (0..=top)
        .map(|k| {
            bar.labels[k]
                .iter()
                .map(|t| match k {
                    0 => nerve.lookup(0, &[c.src(t[0])]),
                    _ => nerve.lookup(k, &t[1..]),
                })
                .map(|x| x.expect("projection of a cyclic chain is a chain"))
                .collect()
        })
        .collect();
    SimplicialMap { components }
}

/// Every morphism invertible; for a discrete category this is the
/// statement that its component category is a groupoid.
pub fn is_groupoid_like(c: &FinCategory) -> bool {
    c.is_groupoid()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcat::Monoid;
    use crate::simplicial::{validate, validate_map};

    fn z(n: usize) -> FinCategory {
        Monoid::cyclic(n).as_category()
    }

    #[test]
    fn nerve_counts_and_validity() {
        let n = nerve(&z(2), 3);
        assert_eq!(n.set.counts(), &[1, 2, 4, 8]);
        assert!(validate(&n.set).is_empty());
        let trivial = nerve(&Monoid::trivial().as_category(), 3);
        assert_eq!(trivial.set.counts(), &[1, 1, 1, 1]);
        assert!(validate(&nerve(&Monoid::symmetric3().as_category(), 3).set).is_empty());
        assert!(validate(&nerve(&super::super::category::tests::iso_groupoid(), 3).set).is_empty());
    }

    #[test]
    fn cyclic_bar_counts_and_validity() {
        let b = cyclic_bar(&z(2), 3);
        assert_eq!(b.set.counts(), &[2, 4, 8, 16]);
        assert!(validate(&b.set).is_empty());
        assert!(validate(&cyclic_bar(&z(3), 4).set).is_empty());
        assert!(validate(&cyclic_bar(&super::super::category::tests::iso_groupoid(), 3).set).is_empty());
        assert!(validate(&cyclic_bar(&Monoid::idempotent_pair().as_category(), 3).set).is_empty());
    }

    #[test]
    fn first_face_composes_the_pair() {
        let c = z(3);
        let b = cyclic_bar(&c, 2);
        let sigma = b.lookup(1, &[1, 2]).unwrap();
        let image = b.set.face(1, 0, sigma);
        assert_eq!(b.label(0, image), &[c.compose(1, 2)]);
    }

    #[test]
    fn diagonal_examples() {
        let c = z(2);
        let dr = diagonal_restriction(&c, 2, 3).unwrap();
        // fixed points of t_1 on B^cy_1 are the diagonal pairs
        assert_eq!(dr.fixed.complex.count(0), 2);
        for g in 0..2 {
            let fixed_index = dr.delta.components[0][g];
            let global = dr.fixed.inclusion.components[0][fixed_index];
            let full = cyclic_bar(&c, 3);
            assert_eq!(full.label(1, global), &[g, g]);
        }
        let c3 = z(3);
        let dr = diagonal_restriction(&c3, 2, 3).unwrap();
        let full = cyclic_bar(&c3, 3);
        for (j, &global) in dr.fixed.inclusion.components[1].iter().enumerate() {
            let t = full.label(3, global);
            assert_eq!(t[..2], t[2..]);
            assert_eq!(dr.bar.label(1, dr.restriction.components[1][j]), &t[..2]);
        }
    }

    #[test]
    fn frobenius_examples() {
        let c = z(3);
        let f2 = frobenius_bar(&c, 2, 3).unwrap();
        let b = cyclic_bar(&c, 3);
        for g in 0..3 {
            assert_eq!(f2.components[0][g], (2 * g) % 3);
        }
        let sigma = b.lookup(1, &[1, 2]).unwrap();
        assert_eq!(b.label(1, f2.components[1][sigma]), &[1, 2]);
        let f1 = frobenius_bar(&c, 1, 3).unwrap();
        assert_eq!(f1, SimplicialMap::identity(&b.set, 3));
        assert!(validate_map(&f2, &b.set, &b.set, false).is_empty());
    }

    #[test]
    fn projection_is_two_to_one() {
        let c = z(2);
        let b = cyclic_bar(&c, 2);
        let n = nerve(&c, 2);
        let p = project_to_nerve(&c, &b, &n);
        assert!(validate_map(&p, &b.set, &n.set, false).is_empty());
        let mut fibres = vec![0; n.set.count(1)];
        for &y in &p.components[1] {
            fibres[y] += 1;
        }
        assert!(fibres.iter().all(|&f| f == 2));
    }

    #[test]
    fn groupoid_like() {
        assert!(is_groupoid_like(&z(2)));
        assert!(!is_groupoid_like(&Monoid::idempotent_pair().as_category()));
        assert!(is_groupoid_like(&Monoid::trivial().as_category()));
    }

    #[test]
    fn tuple_operators_match_the_tables() {
        let c = Monoid::symmetric3().as_category();
        let b = cyclic_bar(&c, 4);
        let f = Monotone::new(vec![0, 0, 2, 4], 4).unwrap();
        for sigma in (0..b.set.count(4)).step_by(97) {
            let image = b.set.apply_monotone(&f, sigma).unwrap();
            assert_eq!(bar_apply(&c, &f, b.label(4, sigma)), b.label(3, image));
        }
    }

    #[test]
    fn diagonal_on_tuples() {
        for m in [Monoid::cyclic(2), Monoid::symmetric3(), Monoid::idempotent_pair()] {
            let c = m.as_category();
            for r in [1, 2, 3] {
                assert_eq!(check_diagonal_on_tuples(&c, r, 3).unwrap(), Vec::<String>::new());
            }
        }
        assert!(check_diagonal_on_tuples(&Monoid::cyclic(2).as_category(), 0, 1).is_err());
    }
}
