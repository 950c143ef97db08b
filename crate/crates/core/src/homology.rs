//! Integral homology of truncated simplicial sets from normalized chains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialSet;

/// Sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zero(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[j].insert(i, v);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, &v) in col {
                out[i][j] = BigInt::from(v);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        let mut out = SparseMatrix::zero(self.rows, other.cols());
        for (j, col) in other.columns.iter().enumerate() {
            let target = &mut out.columns[j];
            for (&k, &b) in col {
                for (&i, &a) in &self.columns[k] {
                    let e = target.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            target.retain(|_, v| *v != 0);
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …` of an integer matrix.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let v = &a[t][j] * &q;
                a[i][j] -= v;
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..rows {
                let v = &a[i][t] * &q;
                a[i][j] -= v;
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Invariant factors of a sparse matrix. Unit pivots are eliminated in
/// machine integers first; the remaining block goes through the exact
/// dense algorithm. Overflow restarts the whole computation densely.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let mut factors = vec![BigInt::one(); units];
            factors.extend(smith_normal_form(&rest));
            factors
        }
        None => smith_normal_form(&m.to_dense()),
    }
}

fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    // rows as maps column -> value
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for (&i, &v) in col {
            rows[i].insert(j, v);
        }
    }
    let mut cols: Vec<std::collections::BTreeSet<usize>> =
        m.columns.iter().map(|c| c.keys().copied().collect()).collect();
    let mut alive_rows: Vec<bool> = vec![true; m.rows];
    let mut alive_cols: Vec<bool> = vec![true; m.cols()];
    let mut units = 0;
    // sweep the columns repeatedly, pivoting on unit entries; elimination
    // can create new units in columns already passed over
    let mut progress = true;
    while progress {
        progress = false;
        for pj in 0..m.cols() {
            if !alive_cols[pj] || cols[pj].is_empty() {
                continue;
            }
            let Some(pi) = cols[pj].iter().copied().filter(|&i| rows[i][&pj].abs() == 1).min_by_key(|&i| rows[i].len())
            else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[pi]);
            let p = pivot_row[&pj];
            let others: Vec<usize> = cols[pj].iter().copied().filter(|&i| i != pi).collect();
            for i in others {
                let factor = rows[i][&pj].checked_mul(p)?;
                for (&j, &v) in &pivot_row {
                    let entry = rows[i].entry(j).or_insert(0);
                    *entry = entry.checked_sub(factor.checked_mul(v)?)?;
                    if *entry == 0 {
                        rows[i].remove(&j);
                        cols[j].remove(&i);
                    } else {
                        cols[j].insert(i);
                    }
                }
            }
            for &j in pivot_row.keys() {
                cols[j].remove(&pi);
            }
            alive_rows[pi] = false;
            alive_cols[pj] = false;
            units += 1;
            progress = true;
        }
    }
    let keep_rows: Vec<usize> = (0..m.rows).filter(|&i| alive_rows[i] && !rows[i].is_empty()).collect();
    let keep_cols: Vec<usize> = (0..m.cols()).filter(|&j| alive_cols[j] && !cols[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = keep_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let rest = keep_rows
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); keep_cols.len()];
            for (&j, &v) in &rows[i] {
                row[col_pos[&j]] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((units, rest))
}

/// Normalized chains: `C_k` is free on the nondegenerate `k`-simplices and
/// `∂_k = Σ (-1)^i d_i` with degenerate faces dropped.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub basis: Vec<Vec<usize>>,
    /// `boundaries[k]: C_k → C_{k-1}`; `boundaries[0]` is the zero map.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Chains through degree `top`, checking `∂∂ = 0`.
    pub fn normalized(x: &SimplicialSet, top: usize) -> Result<Self> {
        if top > x.truncation() {
            return Err(Error::TruncationTooSmall { needed: top, available: x.truncation() });
        }
        let basis: Vec<Vec<usize>> = (0..=top).map(|k| x.nondegenerate(k)).collect::<Result<_>>()?;
        let position: Vec<Vec<Option<usize>>> = basis
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let mut pos = vec![None; x.count(k)];
                for (p, &s) in b.iter().enumerate() {
                    pos[s] = Some(p);
                }
                pos
            })
            .collect();
        let mut boundaries = vec![SparseMatrix::zero(0, basis[0].len())];
        for k in 1..=top {
            let mut m = SparseMatrix::zero(basis[k - 1].len(), basis[k].len());
            for (col, &sigma) in basis[k].iter().enumerate() {
                for i in 0..=k {
                    if let Some(row) = position[k - 1][x.face(k, i, sigma)] {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        *m.columns[col].entry(row).or_insert(0) += sign;
                    }
                }
                m.columns[col].retain(|_, v| *v != 0);
            }
            boundaries.push(m);
        }
        for k in 2..=top {
            let composite = boundaries[k - 1].mul(&boundaries[k]);
            if !composite.is_some_and(|c| c.is_zero()) {
                return Err(Error::BoundaryNotNilpotent { degree: k });
            }
        }
        Ok(ChainComplex { basis, boundaries })
    }

    pub fn rank(&self, k: usize) -> usize {
        self.basis[k].len()
    }
}

/// `H_k ≅ ℤ^betti ⊕ ⊕ ℤ/torsion_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_k(X)` for `k < N`. The top degree is refused: its kernel is not
/// bounded by any boundaries under truncation.
pub fn homology(x: &SimplicialSet, k: usize) -> Result<HomologyGroup> {
    Ok(homology_through(x, k)?.pop().expect("at least degree 0"))
}

/// `H_0, …, H_k(X)` sharing one chain complex.
pub fn homology_through(x: &SimplicialSet, k: usize) -> Result<Vec<HomologyGroup>> {
    let n = x.truncation();
    if k >= n {
        return Err(Error::HomologyDegree { degree: k, truncation: n });
    }
    let chains = ChainComplex::normalized(x, k + 1)?;
    let factors: Vec<Vec<BigInt>> = chains.boundaries.iter().map(invariant_factors).collect();
    Ok((0..=k)
        .map(|d| {
            let rank_out = factors[d].len();
            let rank_in = factors[d + 1].len();
            HomologyGroup {
                betti: chains.rank(d) - rank_out - rank_in,
                torsion: factors[d + 1].iter().filter(|f| !f.is_one()).cloned().collect(),
            }
        })
        .collect())
}
