//! Truncated finite simplicial and cyclic sets.
//!
//! A simplex is referenced by its degree and its index in that degree.
//! Operators are stored as index tables: `faces[k][i][x]` is the index of
//! `d_i x` for `x ∈ X_k`.

mod builtin;
mod monotone;
mod validate;

pub use builtin::{builtin, circle, point, sphere2, standard_sphere};
pub use monotone::{Monotone, Operator};
pub use validate::{validate, validate_map, Violation};

use crate::error::{Error, Result};

/// Cyclic operators `t_k: X_k → X_k`.
///
/// `period` is 1 for an ordinary cyclic set, where `t_k^{k+1} = id`. An
/// `r`-fold edgewise subdivision of a cyclic set carries operators of
/// order `r(k+1)`, recorded as `period = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicStructure {
    pub period: usize,
    pub rotations: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    truncation: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    cyclic: Option<CyclicStructure>,
}

impl SimplicialSet {
    /// Assembles a truncated simplicial set, checking that every operator
    /// table is present, total, and lands in range. Simplicial identities
    /// are checked separately by [`validate`].
    ///
    /// `faces[k]` must hold `k+1` tables for `1 ≤ k ≤ N` (and be empty for
    /// `k = 0`); `degeneracies[k]` holds `k+1` tables for `k < N`.
    pub fn from_parts(
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        cyclic: Option<CyclicStructure>,
    ) -> Result<Self> {
        let Some(truncation) = counts.len().checked_sub(1) else {
            return Err(Error::Schema("at least degree 0 must be present".into()));
        };
        if faces.len() != truncation + 1 || degeneracies.len() != truncation + 1 {
            return Err(Error::Schema(format!(
                "expected operator tables for degrees 0..={truncation}"
            )));
        }
        let check = |what: &str, k: usize, i: usize, table: &[usize], src: usize, dst: usize| {
            if table.len() != counts[src] {
                return Err(Error::Schema(format!(
                    "{what}_{i} on degree {k} has {} entries, expected {}",
                    table.len(),
                    counts[src]
                )));
            }
            if let Some(&bad) = table.iter().find(|&&x| x >= counts[dst]) {
                return Err(Error::Schema(format!(
                    "{what}_{i} on degree {k} maps to index {bad}, but degree {dst} has {} simplices",
                    counts[dst]
                )));
            }
            Ok(())
        };
        for k in 0..=truncation {
            let expected = if k == 0 { 0 } else { k + 1 };
            if faces[k].len() != expected {
                return Err(Error::Schema(format!("degree {k} needs {expected} face maps")));
            }
            for (i, t) in faces[k].iter().enumerate() {
                check("d", k, i, t, k, k - 1)?;
            }
            let expected = if k < truncation { k + 1 } else { 0 };
            if degeneracies[k].len() != expected {
                return Err(Error::Schema(format!("degree {k} needs {expected} degeneracy maps")));
            }
            for (i, t) in degeneracies[k].iter().enumerate() {
                check("s", k, i, t, k, k + 1)?;
            }
        }
        if let Some(c) = &cyclic {
            if c.period == 0 {
                return Err(Error::Schema("cyclic period must be positive".into()));
            }
            if c.rotations.len() != truncation + 1 {
                return Err(Error::Schema("cyclic operators missing for some degree".into()));
            }
            for (k, t) in c.rotations.iter().enumerate() {
                check("t", k, 0, t, k, k)?;
            }
        }
        Ok(SimplicialSet { truncation, counts, faces, degeneracies, cyclic })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts[k]
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic.is_some()
    }

    pub fn cyclic(&self) -> Option<&CyclicStructure> {
        self.cyclic.as_ref()
    }

    /// Replaces (or removes) the cyclic structure.
    pub fn with_cyclic(self, cyclic: Option<CyclicStructure>) -> Result<Self> {
        Self::from_parts(self.counts, self.faces, self.degeneracies, cyclic)
    }

    /// Table of `d_i` on degree `k ≥ 1`.
    pub fn face_map(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// Table of `s_i` on degree `k < N`.
    pub fn degeneracy_map(&self, k: usize, i: usize) -> &[usize] {
        &self.degeneracies[k][i]
    }

    /// Table of `t_k`, if cyclic.
    pub fn rotation_map(&self, k: usize) -> Option<&[usize]> {
        self.cyclic.as_ref().map(|c| c.rotations[k].as_slice())
    }

    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    pub fn degeneracy(&self, k: usize, i: usize, x: usize) -> usize {
        self.degeneracies[k][i][x]
    }

    /// The same complex truncated at `top`.
    pub fn truncate(&self, top: usize) -> Result<Self> {
        self.check_degree(top)?;
        let mut degeneracies = self.degeneracies[..=top].to_vec();
        degeneracies[top].clear();
        let cyclic = self.cyclic.as_ref().map(|c| CyclicStructure {
            period: c.period,
            rotations: c.rotations[..=top].to_vec(),
        });
        Ok(SimplicialSet {
            truncation: top,
            counts: self.counts[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degeneracies,
            cyclic,
        })
    }

    pub(crate) fn faces_raw(&self) -> &[Vec<Vec<usize>>] {
        &self.faces
    }

    pub(crate) fn degeneracies_raw(&self) -> &[Vec<Vec<usize>>] {
        &self.degeneracies
    }

    /// `X(f)(σ)` for a monotone `f: [m] → [n]` and `σ ∈ X_n`.
    pub fn apply_monotone(&self, f: &Monotone, sigma: usize) -> Result<usize> {
        let n = f.codomain();
        self.check_degree(n.max(f.domain()))?;
        if sigma >= self.counts[n] {
            return Err(Error::InvalidArgument(format!("no simplex {sigma} in degree {n}")));
        }
        let mut degree = n;
        let mut x = sigma;
        for op in f.operator_word() {
            match op {
                Operator::Face(i) => {
                    x = self.faces[degree][i][x];
                    degree -= 1;
                }
                Operator::Degeneracy(j) => {
                    x = self.degeneracies[degree][j][x];
                    degree += 1;
                }
            }
        }
        Ok(x)
    }

    /// The full table of `X(f): X_n → X_m`.
    pub fn monotone_map(&self, f: &Monotone) -> Result<Vec<usize>> {
        let n = f.codomain();
        self.check_degree(n.max(f.domain()))?;
        let mut table: Vec<usize> = (0..self.counts[n]).collect();
        let mut degree = n;
        for op in f.operator_word() {
            let step = match op {
                Operator::Face(i) => {
                    let t = &self.faces[degree][i];
                    degree -= 1;
                    t
                }
                Operator::Degeneracy(j) => {
                    let t = &self.degeneracies[degree][j];
                    degree += 1;
                    t
                }
            };
            for x in table.iter_mut() {
                *x = step[*x];
            }
        }
        Ok(table)
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.truncation {
            return Err(Error::TruncationTooSmall { needed: k, available: self.truncation });
        }
        Ok(())
    }

    /// Simplices of degree `k` not in the image of any degeneracy.
    pub fn nondegenerate(&self, k: usize) -> Result<Vec<usize>> {
        self.check_degree(k)?;
        let mut degenerate = vec![false; self.counts[k]];
        if k > 0 {
            for table in &self.degeneracies[k - 1] {
                for &y in table {
                    degenerate[y] = true;
                }
            }
        }
        Ok((0..self.counts[k]).filter(|&x| !degenerate[x]).collect())
    }

    /// Eilenberg–Zilber factorization `σ = s_{j_1} ⋯ s_{j_t} τ` with
    /// `j_1 > ⋯ > j_t` and `τ` nondegenerate. Returns `(j_1..j_t, deg τ, τ)`.
    pub fn eilenberg_zilber(&self, k: usize, sigma: usize) -> (Vec<usize>, usize, usize) {
        let mut word = Vec::new();
        let (mut degree, mut x) = (k, sigma);
        while degree > 0 {
            let found = (0..degree).rev().find(|&j| {
                let y = self.faces[degree][j][x];
                self.degeneracies[degree - 1][j][y] == x
            });
            match found {
                Some(j) => {
                    word.push(j);
                    x = self.faces[degree][j][x];
                    degree -= 1;
                }
                None => break,
            }
        }
        (word, degree, x)
    }
}

/// Degreewise maps `f_k: X_k → Y_k` for `k = 0..=degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplicialSet, degree: usize) -> Self {
        SimplicialMap {
            components: (0..=degree).map(|k| (0..x.count(k)).collect()).collect(),
        }
    }

    /// Highest degree on which the map is defined, `None` when empty.
    pub fn top_degree(&self) -> Option<usize> {
        self.components.len().checked_sub(1)
    }

    /// `self ∘ first`, on the common degree range.
    pub fn after(&self, first: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            components: self
                .components
                .iter()
                .zip(&first.components)
                .map(|(g, f)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn truncated(&self, degree: usize) -> SimplicialMap {
        SimplicialMap { components: self.components.iter().take(degree + 1).cloned().collect() }
    }
}
