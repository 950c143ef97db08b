use num_integer::Integer;

use super::series;
use super::truncation::TruncationSet;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A truncated big Witt vector: coordinates `a_n`, `n ∈ S`.
///
/// The vector corresponds to the power series `∏_{n∈S} (1 - a_n t^n)`
/// modulo `t^{max(S)+1}`. Addition is multiplication of these series.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<R: Ring> {
    ring: R,
    set: TruncationSet,
    coords: Vec<R::Elem>,
}

impl<R: Ring> WittVector<R> {
    pub fn from_coords(ring: R, set: TruncationSet, coords: Vec<R::Elem>) -> Result<Self> {
        if coords.len() != set.len() {
            return Err(Error::Schema(format!(
                "expected {} coordinates for S = {set}, got {}",
                set.len(),
                coords.len()
            )));
        }
        Ok(WittVector { ring, set, coords })
    }

    pub fn zero(ring: R, set: TruncationSet) -> Self {
        let coords = vec![ring.zero(); set.len()];
        WittVector { ring, set, coords }
    }

    /// The Teichmüller lift `[a] = (a, 0, 0, ...)`, series `1 - a t`.
    pub fn teichmuller(ring: R, set: TruncationSet, a: R::Elem) -> Self {
        let mut v = Self::zero(ring, set);
        if let Some(i) = v.set.position(1) {
            v.coords[i] = a;
        }
        v
    }

    /// The multiplicative unit `[1]`.
    pub fn one(ring: R, set: TruncationSet) -> Self {
        let one = ring.one();
        Self::teichmuller(ring, set, one)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }

    pub fn coord(&self, n: u64) -> Option<&R::Elem> {
        self.set.position(n).map(|i| &self.coords[i])
    }

    fn precision(&self) -> usize {
        self.set.max() as usize
    }

    /// Unique coordinates with `∏ (1 - a_n t^n) ≡ f`, projected onto `S`.
    ///
    /// The recursion extracts a coordinate for every `n ≤ max(S)`; those
    /// with `n ∉ S` are discarded, which is the restriction from the full
    /// big Witt ring and hence a ring homomorphism.
    pub fn from_series(ring: R, set: TruncationSet, f: &[R::Elem]) -> Result<Self> {
        let (v, _) = Self::extract(ring, set, f)?;
        Ok(v)
    }

    /// Like [`from_series`](Self::from_series) but fails if any coordinate
    /// outside `S` is nonzero, i.e. the series does not factor over `S`.
    pub fn from_series_strict(ring: R, set: TruncationSet, f: &[R::Elem]) -> Result<Self> {
        let (v, residual) = Self::extract(ring, set, f)?;
        match residual {
            Some(exponent) => Err(Error::ResidualCoefficient { exponent }),
            None => Ok(v),
        }
    }

    fn extract(ring: R, set: TruncationSet, f: &[R::Elem]) -> Result<(Self, Option<u64>)> {
        let precision = set.max() as usize;
        if f.first().is_none_or(|c| *c != ring.one()) {
            // The zero ring has 0 = 1, so every series is a unit series there.
            if !(ring.is_zero(&ring.one()) || set.is_empty()) {
                return Err(Error::NotUnitSeries);
            }
        }
        if f.len() < precision + 1 {
            return Err(Error::InsufficientPrecision {
                have: f.len().saturating_sub(1),
                need: precision,
            });
        }
        let mut g = series::resize(&ring, f, precision);
        let mut coords = vec![ring.zero(); set.len()];
        let mut residual = None;
        for n in 1..=precision {
            let a = ring.neg(&g[n]);
            if ring.is_zero(&a) {
                continue;
            }
            match set.position(n as u64) {
                Some(i) => coords[i] = a.clone(),
                None => {
                    residual.get_or_insert(n as u64);
                }
            }
            // divide by (1 - a t^n): multiply by Σ a^k t^{nk}
            let mut inv = series::one(&ring, precision);
            let mut p = ring.one();
            let mut e = n;
            while e <= precision {
                p = ring.mul(&p, &a);
                inv[e] = p.clone();
                e += n;
            }
            g = series::mul(&ring, &g, &inv, precision);
        }
        Ok((WittVector { ring, set, coords }, residual))
    }

    /// `∏_{n∈S} (1 - a_n t^n)` modulo `t^{max(S)+1}`.
    pub fn to_series(&self) -> Vec<R::Elem> {
        let precision = self.precision();
        let mut f = series::one(&self.ring, precision);
        for (&n, a) in self.set.elements().iter().zip(&self.coords) {
            if self.ring.is_zero(a) {
                continue;
            }
            let factor = series::binomial_factor(&self.ring, a, n, 1, precision);
            f = series::mul(&self.ring, &f, &factor, precision);
        }
        f
    }

    /// Ghost components `w_m = Σ_{d|m} d·a_d^{m/d}`, one per `m ∈ S`.
    pub fn ghost(&self) -> Vec<R::Elem> {
        let r = &self.ring;
        self.set
            .elements()
            .iter()
            .map(|&m| {
                let mut w = r.zero();
                for (&d, a) in self.set.elements().iter().zip(&self.coords) {
                    if d > m {
                        break;
                    }
                    if m % d == 0 && !r.is_zero(a) {
                        let term = r.mul(&r.from_i64(d as i64), &r.pow(a, m / d));
                        w = r.add(&w, &term);
                    }
                }
                w
            })
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.set != other.set {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let p = self.precision();
        let f = series::mul(&self.ring, &self.to_series(), &other.to_series(), p);
        Self::from_series(self.ring.clone(), self.set.clone(), &f)
    }

    pub fn neg(&self) -> Self {
        let p = self.precision();
        let f = series::inverse(&self.ring, &self.to_series(), p);
        Self::from_series(self.ring.clone(), self.set.clone(), &f)
            .expect("inverse of a unit series is a unit series")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product via the generator rule
    /// `(1 - a t^m) * (1 - b t^n) = (1 - a^{n/g} b^{m/g} t^{lcm(m,n)})^g`,
    /// `g = gcd(m, n)`, extended biadditively.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let r = &self.ring;
        let p = self.precision();
        let mut f = series::one(r, p);
        for (&m, a) in self.set.elements().iter().zip(&self.coords) {
            if r.is_zero(a) {
                continue;
            }
            for (&n, b) in other.set.elements().iter().zip(&other.coords) {
                if r.is_zero(b) {
                    continue;
                }
                let g = m.gcd(&n);
                let l = m / g * n;
                if l > p as u64 {
                    continue;
                }
                let c = r.mul(&r.pow(a, n / g), &r.pow(b, m / g));
                let factor = series::binomial_factor(r, &c, l, g, p);
                f = series::mul(r, &f, &factor, p);
            }
        }
        Self::from_series(r.clone(), self.set.clone(), &f)
    }

    /// Frobenius `F_r: W_S → W_{S/r}`, additive extension of
    /// `F_r(1 - a t^n) = (1 - a^{r/g} t^{n/g})^g`, `g = gcd(r, n)`.
    pub fn frobenius(&self, r: u64) -> Self {
        assert!(r > 0, "Frobenius index must be positive");
        let ring = &self.ring;
        let target = self.set.quotient(r);
        let p = target.max() as usize;
        let mut f = series::one(ring, p);
        for (&n, a) in self.set.elements().iter().zip(&self.coords) {
            if ring.is_zero(a) {
                continue;
            }
            let g = r.gcd(&n);
            let c = ring.pow(a, r / g);
            let factor = series::binomial_factor(ring, &c, n / g, g, p);
            f = series::mul(ring, &f, &factor, p);
        }
        Self::from_series(ring.clone(), target, &f).expect("unit series")
    }

    /// Verschiebung `V_r: W_{S/r} → W_S`, the substitution `t ↦ t^r`.
    /// `self` must live over `target.quotient(r)`.
    pub fn verschiebung(&self, r: u64, target: &TruncationSet) -> Result<Self> {
        if r == 0 || target.quotient(r) != self.set {
            return Err(Error::Mismatch);
        }
        let coords = target
            .elements()
            .iter()
            .map(|&n| {
                if n % r == 0 {
                    self.coord(n / r).cloned().expect("n/r ∈ S/r")
                } else {
                    self.ring.zero()
                }
            })
            .collect();
        Ok(WittVector {
            ring: self.ring.clone(),
            set: target.clone(),
            coords,
        })
    }

    /// Restriction to a divisor-closed subset: coordinate projection.
    pub fn restrict(&self, target: &TruncationSet) -> Result<Self> {
        if !target.is_subset_of(&self.set) {
            return Err(Error::NotASubset(target.elements().to_vec()));
        }
        let coords = target
            .elements()
            .iter()
            .map(|&n| self.coord(n).cloned().expect("subset"))
            .collect();
        Ok(WittVector {
            ring: self.ring.clone(),
            set: target.clone(),
            coords,
        })
    }

    /// Applies a ring homomorphism coordinatewise (e.g. reduction `ℤ → ℤ/m`).
    pub fn map_ring<T: Ring>(&self, target: T, f: impl Fn(&R::Elem) -> T::Elem) -> WittVector<T> {
        WittVector {
            coords: self.coords.iter().map(f).collect(),
            ring: target,
            set: self.set.clone(),
        }
    }

    pub fn format_coords(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ring.format(c)).collect()
    }
}
