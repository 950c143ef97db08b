use std::collections::HashMap;

use super::{CyclicStructure, SimplicialSet};

/// `Δ[d]/∂Δ[d]` truncated at `truncation`.
///
/// Degree `n` consists of the basepoint (index 0) followed by the
/// surjections `[n] → [d]`, encoded by their fibre sizes, in
/// lexicographic order.
pub fn standard_sphere(d: usize, truncation: usize) -> SimplicialSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=truncation).map(|n| compositions(n + 1, d + 1)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, c)| (c.clone(), i + 1)).collect())
        .collect();
    let counts = levels.iter().map(|l| l.len() + 1).collect();
    let lookup = |n: usize, c: &[usize]| -> usize {
        if c.contains(&0) {
            0
        } else {
            index[n][c]
        }
    };
    let block_of = |c: &[usize], pos: usize| -> usize {
        let mut acc = 0;
        for (b, &len) in c.iter().enumerate() {
            acc += len;
            if pos < acc {
                return b;
            }
        }
        unreachable!("position inside the composition")
    };
    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    for n in 0..=truncation {
        if n > 0 {
            let tables = (0..=n)
                .map(|i| {
                    std::iter::once(0)
                        .chain(levels[n].iter().map(|c| {
                            let mut c2 = c.clone();
                            c2[block_of(c, i)] -= 1;
                            lookup(n - 1, &c2)
                        }))
                        .collect()
                })
                .collect();
            faces.push(tables);
        }
        if n < truncation {
            let tables = (0..=n)
                .map(|i| {
                    std::iter::once(0)
                        .chain(levels[n].iter().map(|c| {
                            let mut c2 = c.clone();
                            c2[block_of(c, i)] += 1;
                            lookup(n + 1, &c2)
                        }))
                        .collect()
                })
                .collect();
            degeneracies.push(tables);
        } else {
            degeneracies.push(Vec::new());
        }
    }
    SimplicialSet::from_parts(counts, faces, degeneracies, None).expect("well-formed sphere")
}

/// Ordered compositions of `total` into `parts` positive parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if total >= 1 {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// The simplicial circle `Δ[1]/∂Δ[1]` with its cyclic structure.
///
/// In degree `n` the simplex `j ≥ 1` is the sequence `0^j 1^{n+1-j}`, and
/// `t_n` acts by `j ↦ j + 1 mod (n + 1)`.
pub fn circle(truncation: usize) -> SimplicialSet {
    let base = standard_sphere(1, truncation);
    let rotations = (0..=truncation)
        .map(|n| (0..=n).map(|j| (j + 1) % (n + 1)).collect())
        .collect();
    // compositions(n+1, 2) lists (1, n), (2, n-1), ...: index j holds 0^j 1^{n+1-j}
    base.with_cyclic(Some(CyclicStructure { period: 1, rotations }))
        .expect("circle rotations are total")
}

/// `Δ[2]/∂Δ[2]`.
pub fn sphere2(truncation: usize) -> SimplicialSet {
    standard_sphere(2, truncation)
}

/// The one-point cyclic set.
pub fn point(truncation: usize) -> SimplicialSet {
    let faces = (0..=truncation)
        .map(|k| if k == 0 { Vec::new() } else { vec![vec![0]; k + 1] })
        .collect();
    let degeneracies = (0..=truncation)
        .map(|k| if k < truncation { vec![vec![0]; k + 1] } else { Vec::new() })
        .collect();
    let rotations = vec![vec![0]; truncation + 1];
    SimplicialSet::from_parts(
        vec![1; truncation + 1],
        faces,
        degeneracies,
        Some(CyclicStructure { period: 1, rotations }),
    )
    .expect("point")
}

/// Named complexes: `circle`, `sphere2`, `point`.
pub fn builtin(name: &str, truncation: usize) -> Option<SimplicialSet> {
    match name {
        "circle" => Some(circle(truncation)),
        "sphere2" => Some(sphere2(truncation)),
        "point" => Some(point(truncation)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(circle(3).counts(), &[1, 2, 3, 4]);
        // 1 + C(n, 2) in degree n
        assert_eq!(sphere2(4).counts(), &[1, 1, 2, 4, 7]);
        assert_eq!(point(2).counts(), &[1, 1, 1]);
    }
}
