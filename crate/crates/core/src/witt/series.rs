//! Truncated power series over a [`Ring`], stored as coefficient vectors in
//! ascending degree. All routines work modulo `t^{precision+1}`.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::ring::Ring;

pub fn one<R: Ring>(ring: &R, precision: usize) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); precision + 1];
    v[0] = ring.one();
    v
}

/// Truncates or zero-pads to exactly `precision + 1` coefficients.
pub fn resize<R: Ring>(ring: &R, f: &[R::Elem], precision: usize) -> Vec<R::Elem> {
    let mut v: Vec<R::Elem> = f.iter().take(precision + 1).cloned().collect();
    v.resize(precision + 1, ring.zero());
    v
}

pub fn mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], precision: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); precision + 1];
    for (i, x) in a.iter().enumerate().take(precision + 1) {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(precision + 1 - i) {
            if ring.is_zero(y) {
                continue;
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

/// Inverse of a series with constant term 1, by the division-free
/// recursion `g_n = -Σ_{i=1}^n f_i g_{n-i}`.
pub fn inverse<R: Ring>(ring: &R, f: &[R::Elem], precision: usize) -> Vec<R::Elem> {
    debug_assert!(f.first().is_some_and(|c| *c == ring.one()));
    let f = resize(ring, f, precision);
    let mut g = vec![ring.zero(); precision + 1];
    g[0] = ring.one();
    for n in 1..=precision {
        let mut acc = ring.zero();
        for i in 1..=n {
            if !ring.is_zero(&f[i]) {
                acc = ring.add(&acc, &ring.mul(&f[i], &g[n - i]));
            }
        }
        g[n] = ring.neg(&acc);
    }
    g
}

/// `(1 - c t^e)^d` modulo `t^{precision+1}`, expanded binomially.
pub fn binomial_factor<R: Ring>(
    ring: &R,
    c: &R::Elem,
    e: u64,
    d: u64,
    precision: usize,
) -> Vec<R::Elem> {
    let mut out = one(ring, precision);
    if e == 0 {
        // (1 - c)^d is a constant; only reachable for malformed input.
        let base = ring.sub(&ring.one(), c);
        out[0] = ring.pow(&base, d);
        return out;
    }
    let neg_c = ring.neg(c);
    let mut power = ring.one();
    for j in 1..=d {
        let exp = e.saturating_mul(j);
        if exp > precision as u64 {
            break;
        }
        power = ring.mul(&power, &neg_c);
        let coeff = ring.from_int(&binomial(BigInt::from(d), BigInt::from(j)));
        out[exp as usize] = ring.mul(&coeff, &power);
    }
    out
}

/// Substitutes `t ↦ t^r`.
pub fn dilate<R: Ring>(ring: &R, f: &[R::Elem], r: u64, precision: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); precision + 1];
    for (i, c) in f.iter().enumerate() {
        let e = i as u64 * r;
        if e > precision as u64 {
            break;
        }
        out[e as usize] = c.clone();
    }
    out
}

/// Logarithmic derivative `-t f'/f`; its `m`-th coefficient is the `m`-th
/// ghost component of the Witt vector represented by `f`.
pub fn neg_log_derivative<R: Ring>(ring: &R, f: &[R::Elem], precision: usize) -> Vec<R::Elem> {
    let f = resize(ring, f, precision);
    let tf: Vec<R::Elem> = f
        .iter()
        .enumerate()
        .map(|(i, c)| ring.neg(&ring.mul(&ring.from_i64(i as i64), c)))
        .collect();
    mul(ring, &tf, &inverse(ring, &f, precision), precision)
}

pub fn format<R: Ring>(ring: &R, f: &[R::Elem]) -> String {
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(i, c)| match i {
            0 => ring.format(c),
            1 => format!("{}·t", ring.format(c)),
            _ => format!("{}·t^{i}", ring.format(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
