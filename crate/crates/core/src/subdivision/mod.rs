//! Edgewise subdivision, its cyclic group action, fixed points, and the
//! last-block map back to the original complex.

mod coherence;

pub use coherence::{expand_homotopy, two_prime_display, verify_cube_face_relations, CubeCheck, FormalCubeLabel, FormalSum};

use crate::error::{Error, Result};
use crate::simplicial::{CyclicStructure, Monotone, SimplicialMap, SimplicialSet};

/// `sd_r X` together with the generator of its `C_r`-action.
#[derive(Clone, Debug)]
pub struct SubdividedComplex {
    pub r: usize,
    pub result: SimplicialSet,
    /// `t^{k+1}` in degree `k` (for an `s`-fold subdivided input,
    /// `t^{s(k+1)}`), present when the input is cyclic.
    pub cr_generator: Option<Vec<Vec<usize>>>,
}

/// Degree of the original complex feeding degree `k` of `sd_r`.
pub fn source_degree(r: usize, k: usize) -> usize {
    r * (k + 1) - 1
}

/// `sd_r X = X ∘ ⊔_r`, with faces and degeneracies obtained by applying
/// `X` to concatenated cofaces and codegeneracies.
pub fn edgewise_subdivide(x: &SimplicialSet, r: usize) -> Result<SubdividedComplex> {
    if r == 0 {
        return Err(Error::InvalidArgument("subdivision factor must be positive".into()));
    }
    let n = x.truncation();
    if n + 1 < r {
        return Err(Error::TruncationTooSmall { needed: r - 1, available: n });
    }
    let top = (n + 1) / r - 1;
    let counts = (0..=top).map(|k| x.count(source_degree(r, k))).collect();
    let mut faces = Vec::with_capacity(top + 1);
    let mut degeneracies = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut fk = Vec::new();
        if k > 0 {
            for i in 0..=k {
                fk.push(x.monotone_map(&Monotone::coface(k, i).concatenate(r))?);
            }
        }
        faces.push(fk);
        let mut sk = Vec::new();
        if k < top {
            for i in 0..=k {
                sk.push(x.monotone_map(&Monotone::codegeneracy(k, i).concatenate(r))?);
            }
        }
        degeneracies.push(sk);
    }
    let (cyclic, cr_generator) = match x.cyclic() {
        Some(c) => {
            let rotations: Vec<Vec<usize>> =
                (0..=top).map(|k| c.rotations[source_degree(r, k)].clone()).collect();
            let generator = rotations
                .iter()
                .enumerate()
                .map(|(k, t)| power(t, c.period * (k + 1)))
                .collect();
            (Some(CyclicStructure { period: c.period * r, rotations }), Some(generator))
        }
        None => (None, None),
    };
    let result = SimplicialSet::from_parts(counts, faces, degeneracies, cyclic)?;
    Ok(SubdividedComplex { r, result, cr_generator })
}

fn power(t: &[usize], e: usize) -> Vec<usize> {
    (0..t.len())
        .map(|mut x| {
            for _ in 0..e {
                x = t[x];
            }
            x
        })
        .collect()
}

/// The `C_r`-fixed subcomplex and its inclusion into `sd_r X`.
#[derive(Clone, Debug)]
pub struct FixedSubcomplex {
    pub complex: SimplicialSet,
    pub inclusion: SimplicialMap,
}

/// Degreewise fixed points of the `C_r` generator. When the input carries
/// no cyclic structure the whole complex is returned.
///
/// The fixed points are checked to be closed under every face,
/// degeneracy and cyclic operator; a failure is reported as an error.
pub fn fixed_subcomplex(s: &SubdividedComplex) -> Result<FixedSubcomplex> {
    let x = &s.result;
    let Some(generator) = &s.cr_generator else {
        let top = x.truncation();
        return Ok(FixedSubcomplex { complex: x.clone(), inclusion: SimplicialMap::identity(x, top) });
    };
    let top = x.truncation();
    let fixed: Vec<Vec<usize>> =
        (0..=top).map(|k| (0..x.count(k)).filter(|&i| generator[k][i] == i).collect()).collect();
    let mut index: Vec<Vec<Option<usize>>> = (0..=top).map(|k| vec![None; x.count(k)]).collect();
    for (k, list) in fixed.iter().enumerate() {
        for (j, &i) in list.iter().enumerate() {
            index[k][i] = Some(j);
        }
    }
    let restrict = |what: &str, table: &[usize], k: usize, dst: usize| -> Result<Vec<usize>> {
        fixed[k]
            .iter()
            .map(|&i| {
                index[dst][table[i]].ok_or_else(|| {
                    Error::InvalidArgument(format!("{what} on degree {k} leaves the fixed points at simplex {i}"))
                })
            })
            .collect()
    };
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for k in 0..=top {
        let mut fk = Vec::new();
        if k > 0 {
            for i in 0..=k {
                fk.push(restrict("face", x.face_map(k, i), k, k - 1)?);
            }
        }
        faces.push(fk);
        let mut sk = Vec::new();
        if k < top {
            for i in 0..=k {
                sk.push(restrict("degeneracy", x.degeneracy_map(k, i), k, k + 1)?);
            }
        }
        degeneracies.push(sk);
    }
    let cyclic = match x.cyclic() {
        Some(c) => {
            let rotations = (0..=top)
                .map(|k| restrict("rotation", &c.rotations[k], k, k))
                .collect::<Result<Vec<_>>>()?;
            Some(CyclicStructure { period: c.period / s.r, rotations })
        }
        None => None,
    };
    let counts = fixed.iter().map(Vec::len).collect();
    let complex = SimplicialSet::from_parts(counts, faces, degeneracies, cyclic)?;
    Ok(FixedSubcomplex { complex, inclusion: SimplicialMap { components: fixed } })
}

/// `D̄_r: sd_r X → X`, which in degree `k` is `d_0^{(r-1)(k+1)}`, that is,
/// `X` applied to the inclusion of `[k]` as the last block of `⊔_r[k]`.
pub fn dbar_map(x: &SimplicialSet, r: usize) -> Result<SimplicialMap> {
    if r == 0 {
        return Err(Error::InvalidArgument("subdivision factor must be positive".into()));
    }
    let n = x.truncation();
    if n + 1 < r {
        return Err(Error::TruncationTooSmall { needed: r - 1, available: n });
    }
    let top = (n + 1) / r - 1;
    let components = (0..=top)
        .map(|k| {
            let offset = (r - 1) * (k + 1);
            let last_block = Monotone::new((offset..offset + k + 1).collect(), source_degree(r, k))?;
            x.monotone_map(&last_block)
        })
        .collect::<Result<_>>()?;
    Ok(SimplicialMap { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle, sphere2, validate, validate_map};

    #[test]
    fn sd1_is_identity() {
        let s1 = circle(3);
        let sd = edgewise_subdivide(&s1, 1).unwrap();
        assert_eq!(sd.result, s1);
        for (k, g) in sd.cr_generator.unwrap().iter().enumerate() {
            assert_eq!(g, &(0..s1.count(k)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn sd2_circle_counts() {
        let sd = edgewise_subdivide(&circle(3), 2).unwrap();
        assert_eq!(sd.result.truncation(), 1);
        assert_eq!(sd.result.counts(), &[2, 4]);
        assert!(validate(&sd.result).is_empty());
    }

    #[test]
    fn generator_has_order_r_and_commutes() {
        for r in 2..=3 {
            let sd = edgewise_subdivide(&circle(8), r).unwrap();
            let g = sd.cr_generator.as_ref().unwrap();
            let y = &sd.result;
            for k in 0..=y.truncation() {
                assert_eq!(power(&g[k], r), (0..y.count(k)).collect::<Vec<_>>());
            }
            let action = SimplicialMap { components: g.clone() };
            assert!(validate_map(&action, y, y, false).is_empty());
        }
    }

    #[test]
    fn dbar_is_iterated_d0() {
        let x = sphere2(7);
        for r in 1..=3 {
            let f = dbar_map(&x, r).unwrap();
            let sd = edgewise_subdivide(&x, r).unwrap();
            assert!(validate_map(&f, &sd.result, &x, false).is_empty());
            for (k, comp) in f.components.iter().enumerate() {
                for (sigma, &image) in comp.iter().enumerate() {
                    let mut y = sigma;
                    let mut deg = source_degree(r, k);
                    for _ in 0..(r - 1) * (k + 1) {
                        y = x.face(deg, 0, y);
                        deg -= 1;
                    }
                    assert_eq!(image, y);
                }
            }
        }
    }

    #[test]
    fn rejects_short_truncation() {
        assert!(matches!(edgewise_subdivide(&circle(1), 3), Err(Error::TruncationTooSmall { .. })));
        assert!(matches!(dbar_map(&circle(1), 3), Err(Error::TruncationTooSmall { .. })));
    }
}
