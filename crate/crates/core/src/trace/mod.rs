//! The characteristic series `det(1 − tα)` of a matrix, read as a truncated
//! Witt vector, and randomized checks of its homomorphism laws.

mod matrix;
mod suite;

pub use matrix::RingMatrix;
pub use suite::{trace_property_suite, Backend, StandardBackend, StubMulBackend, TraceCase, TraceConfig, TraceReport};

use crate::error::{Error, Result};
use crate::ring::{Ring, TruncatedPolynomials};
use crate::witt::{TruncationSet, WittVector};

/// `det(I − tα)` modulo `t^{precision+1}`, as the Berkowitz determinant
/// of `I − tα` over `R[t]/(t^{precision+1})`.
pub fn char_series<R: Ring>(alpha: &RingMatrix<R>, precision: usize) -> Vec<R::Elem> {
    let base = alpha.ring().clone();
    let poly = TruncatedPolynomials::new(base.clone(), precision);
    let n = alpha.size();
    let m = RingMatrix::from_fn(poly.clone(), n, |i, j| {
        let mut e = poly.monomial(base.neg(alpha.get(i, j)), 1);
        if i == j {
            e[0] = base.one();
        }
        e
    });
    m.det()
}

/// `trc0(α)` over `S` together with the least exponent outside `S` where the
/// product expansion of `det(1 − tα)` has a nonzero coordinate. Such
/// coordinates are dropped: that projection is the restriction from the
/// full Witt ring `W_{1..max S}`.
pub fn trc0_with_residual<R: Ring>(
    alpha: &RingMatrix<R>,
    set: &TruncationSet,
    allow_singular: bool,
) -> Result<(WittVector<R>, Option<u64>)> {
    if !allow_singular && !alpha.is_invertible() {
        return Err(Error::NotInvertible(alpha.ring().spec().to_string()));
    }
    let f = char_series(alpha, set.max() as usize);
    let strict = WittVector::from_series_strict(alpha.ring().clone(), set.clone(), &f);
    match strict {
        Ok(v) => Ok((v, None)),
        Err(Error::ResidualCoefficient { exponent }) => {
            Ok((WittVector::from_series(alpha.ring().clone(), set.clone(), &f)?, Some(exponent)))
        }
        Err(e) => Err(e),
    }
}

/// The class of the automorphism `α` in `W_S(R)`.
pub fn trc0<R: Ring>(alpha: &RingMatrix<R>, set: &TruncationSet, allow_singular: bool) -> Result<WittVector<R>> {
    Ok(trc0_with_residual(alpha, set, allow_singular)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, IntegersMod};
    use num_bigint::BigInt;

    fn zm(rows: &[&[i64]]) -> RingMatrix<Integers> {
        RingMatrix::from_rows(Integers, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn char_series_examples() {
        assert_eq!(char_series(&zm(&[&[1]]), 3), ints(&[1, -1, 0, 0]));
        assert_eq!(char_series(&zm(&[&[0, 1], &[1, 0]]), 4), ints(&[1, 0, -1, 0, 0]));
        assert_eq!(char_series(&zm(&[&[0, 1], &[0, 0]]), 4), ints(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = zm(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(a.det(), BigInt::from(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RingMatrix::identity(Integers, 3));
        assert!(zm(&[&[2, 0], &[0, 1]]).inverse().is_none());
        let f5 = IntegersMod::new(5).unwrap();
        let b = RingMatrix::from_rows(f5, vec![vec![2, 1], vec![0, 3]]).unwrap();
        assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), RingMatrix::identity(f5, 2));
    }

    #[test]
    fn trc0_examples() {
        let s4 = TruncationSet::divisors_of(4);
        let one = trc0(&zm(&[&[1]]), &s4, false).unwrap();
        assert_eq!(one, WittVector::one(Integers, s4.clone()));
        let swap = zm(&[&[0, 1], &[1, 0]]);
        let t = trc0(&swap, &s4, false).unwrap();
        assert_eq!(t.coords(), ints(&[0, 1, 0]).as_slice());
        assert_eq!(t.ghost(), ints(&[0, 2, 2]));
        let s2 = TruncationSet::divisors_of(2);
        let f2 = t.frobenius(2);
        assert_eq!(f2.coords(), ints(&[2, -1]).as_slice());
        assert_eq!(f2, trc0(&zm(&[&[1, 0], &[0, 1]]), &s2, false).unwrap());
    }

    #[test]
    fn singular_input_needs_override() {
        let n = zm(&[&[0, 1], &[0, 0]]);
        let s2 = TruncationSet::divisors_of(2);
        assert!(matches!(trc0(&n, &s2, false), Err(Error::NotInvertible(_))));
        assert_eq!(trc0(&n, &s2, true).unwrap(), WittVector::zero(Integers, s2));
    }

    #[test]
    fn residual_is_reported() {
        let i2 = zm(&[&[1, 0], &[0, 1]]);
        let (v, residual) = trc0_with_residual(&i2, &TruncationSet::divisors_of(4), false).unwrap();
        assert_eq!(residual, Some(3));
        assert_eq!(v.coords(), ints(&[2, -1, -4]).as_slice());
        assert_eq!(v.ghost(), ints(&[2, 2, 2]));
    }
}
