use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A square matrix over an exact commutative ring, stored row-major.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<R: Ring> {
    ring: R,
    size: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|row| row.len() != size) {
            return Err(Error::Schema(format!("matrix with {size} rows is not square")));
        }
        Ok(RingMatrix { ring, size, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(ring: R, size: usize, f: impl Fn(usize, usize) -> R::Elem) -> Self {
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        RingMatrix { ring, size, entries }
    }

    pub fn identity(ring: R, size: usize) -> Self {
        let (zero, one) = (ring.zero(), ring.one());
        Self::from_fn(ring, size, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(ring: R, perm: &[usize]) -> Self {
        let (zero, one) = (ring.zero(), ring.one());
        Self::from_fn(ring, perm.len(), |i, j| if perm[j] == i { one.clone() } else { zero.clone() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        self.entries.chunks(self.size.max(1)).map(|r| r.to_vec()).take(self.size).collect()
    }

    /// Applies a ring map entrywise.
    pub fn map<T: Ring>(&self, ring: T, f: impl Fn(&R::Elem) -> T::Elem) -> RingMatrix<T> {
        RingMatrix { ring, size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size || self.ring != other.ring {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(RingMatrix { ring: self.ring.clone(), size: self.size, entries })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(self.ring.clone(), |a| self.ring.mul(c, a))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let (n, r) = (self.size, &self.ring);
        Ok(Self::from_fn(r.clone(), n, |i, j| {
            (0..n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(self.get(i, k), other.get(k, j))))
        }))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ring.clone(), self.size);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same size");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same size");
            }
        }
        acc
    }

    /// The block-diagonal matrix `self ⊕ other`.
    pub fn block_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Mismatch);
        }
        let (a, n) = (self.size, self.size + other.size);
        let zero = self.ring.zero();
        Ok(Self::from_fn(self.ring.clone(), n, |i, j| match (i < a, j < a) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - a, j - a).clone(),
            _ => zero.clone(),
        }))
    }

    /// The Kronecker product, rows and columns indexed by `(i, k) ↦ i·m + k`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Mismatch);
        }
        let (m, r) = (other.size, &self.ring);
        Ok(Self::from_fn(r.clone(), self.size * m, |i, j| {
            r.mul(self.get(i / m, j / m), other.get(i % m, j % m))
        }))
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.size).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    /// Coefficients `[1, c₁, …, c_n]` of `det(λI − A) = Σ c_k λ^{n−k}`, by
    /// Berkowitz's division-free algorithm.
    pub fn char_poly_coefficients(&self) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.size;
        let mut v = vec![r.one()];
        for k in 0..n {
            // leading (k+1)×(k+1) block [[M, C], [R, a]] with M of size k
            let mut col = vec![r.one(), r.neg(self.get(k, k))];
            let mut mc: Vec<R::Elem> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rmc = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(k, j), &mc[j])));
                col.push(r.neg(&rmc));
                mc = (0..k)
                    .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &mc[j]))))
                    .collect();
            }
            v = (0..k + 2)
                .map(|i| {
                    (0..=i.min(k)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&col[i - j], &v[j])))
                })
                .collect();
        }
        v
    }

    /// Division-free determinant.
    pub fn det(&self) -> R::Elem {
        let c = self.char_poly_coefficients();
        let last = c[self.size].clone();
        if self.size % 2 == 1 {
            self.ring.neg(&last)
        } else {
            last
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(&self.det())
    }

    /// `adj(A) = (−1)^{n−1} (A^{n−1} + c₁A^{n−2} + … + c_{n−1}I)`.
    pub fn adjugate(&self) -> Self {
        let n = self.size;
        let r = &self.ring;
        if n == 0 {
            return self.clone();
        }
        let c = self.char_poly_coefficients();
        let mut acc = Self::identity(r.clone(), n);
        for ck in c.iter().take(n).skip(1) {
            acc = acc.mul(self).expect("same size").add(&Self::identity(r.clone(), n).scale(ck)).expect("same size");
        }
        if n % 2 == 0 {
            acc.scale(&r.neg(&r.one()))
        } else {
            acc
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.ring.unit_inverse(&self.det())?;
        Some(self.adjugate().scale(&d))
    }
}

impl<R: Ring> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|a| self.ring.format(a)).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
