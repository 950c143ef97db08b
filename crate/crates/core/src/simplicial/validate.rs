use std::fmt;

use serde::{Deserialize, Serialize};

use super::{SimplicialMap, SimplicialSet};

/// One failed identity, with the degree of the simplex it was evaluated
/// on and that simplex's index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    pub degree: usize,
    pub witness: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails in degree {} at simplex {}", self.identity, self.degree, self.witness)
    }
}

struct Sink {
    out: Vec<Violation>,
}

impl Sink {
    fn check(&mut self, ok: bool, identity: impl FnOnce() -> String, degree: usize, witness: usize) {
        if !ok {
            self.out.push(Violation { identity: identity(), degree, witness });
        }
    }
}

/// Exhaustively checks the simplicial identities, and the cyclic ones when
/// a cyclic structure is present, on every simplex where both sides are
/// defined within the truncation.
pub fn validate(x: &SimplicialSet) -> Vec<Violation> {
    let n = x.truncation();
    let d = x.faces_raw();
    let s = x.degeneracies_raw();
    let mut sink = Sink { out: Vec::new() };

    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                for sigma in 0..x.count(k) {
                    let lhs = d[k - 1][i][d[k][j][sigma]];
                    let rhs = d[k - 1][j - 1][d[k][i][sigma]];
                    sink.check(lhs == rhs, || format!("d_{i} d_{j} = d_{} d_{i}", j - 1), k, sigma);
                }
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        if k + 2 > n {
            break;
        }
        for j in 0..=k {
            for i in 0..=j {
                for sigma in 0..x.count(k) {
                    let lhs = s[k + 1][i][s[k][j][sigma]];
                    let rhs = s[k + 1][j + 1][s[k][i][sigma]];
                    sink.check(lhs == rhs, || format!("s_{i} s_{j} = s_{} s_{i}", j + 1), k, sigma);
                }
            }
        }
    }
    for k in 0..n {
        for j in 0..=k {
            for i in 0..=k + 1 {
                for sigma in 0..x.count(k) {
                    let lhs = d[k + 1][i][s[k][j][sigma]];
                    let (rhs, name) = if i < j {
                        (s[k - 1][j - 1][d[k][i][sigma]], format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (sigma, format!("d_{i} s_{j} = id"))
                    } else {
                        (s[k - 1][j][d[k][i - 1][sigma]], format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    sink.check(lhs == rhs, || name, k, sigma);
                }
            }
        }
    }

    if let Some(c) = x.cyclic() {
        let t = &c.rotations;
        for k in 0..=n {
            let order = c.period * (k + 1);
            let mut seen = vec![false; x.count(k)];
            for sigma in 0..x.count(k) {
                seen[t[k][sigma]] = true;
                let mut y = sigma;
                for _ in 0..order {
                    y = t[k][y];
                }
                sink.check(y == sigma, || format!("t_{k}^{order} = id"), k, sigma);
            }
            for (sigma, hit) in seen.into_iter().enumerate() {
                sink.check(hit, || format!("t_{k} is a bijection"), k, sigma);
            }
        }
        for k in 1..=n {
            for sigma in 0..x.count(k) {
                let lhs = d[k][0][t[k][sigma]];
                sink.check(lhs == d[k][k][sigma], || format!("d_0 t_{k} = d_{k}"), k, sigma);
                for i in 1..=k {
                    let lhs = d[k][i][t[k][sigma]];
                    let rhs = t[k - 1][d[k][i - 1][sigma]];
                    sink.check(lhs == rhs, || format!("d_{i} t_{k} = t_{} d_{}", k - 1, i - 1), k, sigma);
                }
            }
        }
        for k in 0..n {
            for sigma in 0..x.count(k) {
                let lhs = s[k][0][t[k][sigma]];
                let rhs = t[k + 1][t[k + 1][s[k][k][sigma]]];
                sink.check(lhs == rhs, || format!("s_0 t_{k} = t_{}^2 s_{k}", k + 1), k, sigma);
                for i in 1..=k {
                    let lhs = s[k][i][t[k][sigma]];
                    let rhs = t[k + 1][s[k][i - 1][sigma]];
                    sink.check(lhs == rhs, || format!("s_{i} t_{k} = t_{} s_{}", k + 1, i - 1), k, sigma);
                }
            }
        }
    }
    sink.out
}

/// Checks that `f` commutes with faces and degeneracies (and the cyclic
/// operators when `cyclic` is set) on its degree range.
pub fn validate_map(f: &SimplicialMap, source: &SimplicialSet, target: &SimplicialSet, cyclic: bool) -> Vec<Violation> {
    let mut sink = Sink { out: Vec::new() };
    let Some(top) = f.top_degree() else { return sink.out };
    if top > source.truncation() || top > target.truncation() {
        sink.check(false, || "map degree range exceeds a truncation".into(), top, 0);
        return sink.out;
    }
    for k in 0..=top {
        if f.components[k].len() != source.count(k) || f.components[k].iter().any(|&y| y >= target.count(k)) {
            sink.check(false, || format!("component {k} is not a total map"), k, 0);
            return sink.out;
        }
    }
    let c = &f.components;
    for k in 1..=top {
        for i in 0..=k {
            for sigma in 0..source.count(k) {
                let lhs = c[k - 1][source.face(k, i, sigma)];
                let rhs = target.face(k, i, c[k][sigma]);
                sink.check(lhs == rhs, || format!("f d_{i} = d_{i} f"), k, sigma);
            }
        }
    }
    for k in 0..top {
        for i in 0..=k {
            for sigma in 0..source.count(k) {
                let lhs = c[k + 1][source.degeneracy(k, i, sigma)];
                let rhs = target.degeneracy(k, i, c[k][sigma]);
                sink.check(lhs == rhs, || format!("f s_{i} = s_{i} f"), k, sigma);
            }
        }
    }
    if cyclic {
        match (source.rotation_map(0), target.rotation_map(0)) {
            (Some(_), Some(_)) => {
                for k in 0..=top {
                    let ts = source.rotation_map(k).unwrap();
                    let tt = target.rotation_map(k).unwrap();
                    for sigma in 0..source.count(k) {
                        sink.check(c[k][ts[sigma]] == tt[c[k][sigma]], || format!("f t_{k} = t_{k} f"), k, sigma);
                    }
                }
            }
            _ => sink.check(false, || "cyclic map between non-cyclic sets".into(), 0, 0),
        }
    }
    sink.out
}
