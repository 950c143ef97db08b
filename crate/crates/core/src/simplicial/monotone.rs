use crate::error::{Error, Result};

/// A weakly monotone map `[m] → [n]`, stored as its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monotone {
    values: Vec<usize>,
    codomain: usize,
}

impl Monotone {
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > codomain)
        {
            return Err(Error::NotMonotone(values));
        }
        Ok(Monotone { values, codomain })
    }

    pub fn identity(n: usize) -> Self {
        Monotone { values: (0..=n).collect(), codomain: n }
    }

    /// Coface `δ_i: [n-1] → [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        Monotone {
            values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect(),
            codomain: n,
        }
    }

    /// Codegeneracy `σ_i: [n+1] → [n]`, hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        Monotone {
            values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(),
            codomain: n,
        }
    }

    pub fn domain(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Monotone) -> Monotone {
        assert_eq!(first.codomain, self.domain(), "maps are not composable");
        Monotone {
            values: first.values.iter().map(|&v| self.values[v]).collect(),
            codomain: self.codomain,
        }
    }

    /// The `r`-fold concatenation `⊔_r f: [r(m+1)-1] → [r(n+1)-1]`.
    pub fn concatenate(&self, r: usize) -> Monotone {
        let block = self.codomain + 1;
        let values = (0..r)
            .flat_map(|b| self.values.iter().map(move |&v| b * block + v))
            .collect();
        Monotone { values, codomain: r * block - 1 }
    }

    /// Factors `f = ι ∘ g` into face and degeneracy generators, returned
    /// in the order the simplicial operators are applied to a simplex
    /// of degree `n`: first the faces `d_i` (descending `i`), then the
    /// degeneracies `s_j` (ascending `j`).
    pub fn operator_word(&self) -> Vec<Operator> {
        let mut word = Vec::new();
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let mut missing: Vec<usize> = (0..=self.codomain).filter(|v| image.binary_search(v).is_err()).collect();
        missing.reverse();
        word.extend(missing.into_iter().map(Operator::Face));
        let repeats = self.values.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j);
        word.extend(repeats.map(Operator::Degeneracy));
        word
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_monotone() {
        assert!(Monotone::new(vec![1, 0], 1).is_err());
        assert!(Monotone::new(vec![0, 3], 2).is_err());
        assert!(Monotone::new(vec![0, 0, 2], 2).is_ok());
    }

    #[test]
    fn generator_words() {
        assert_eq!(Monotone::coface(3, 1).operator_word(), vec![Operator::Face(1)]);
        assert_eq!(Monotone::codegeneracy(2, 0).operator_word(), vec![Operator::Degeneracy(0)]);
        assert!(Monotone::identity(4).operator_word().is_empty());
        // δ_0 ∘ σ_0 : [1] → [1], values (1, 1)
        let f = Monotone::coface(1, 0).after(&Monotone::codegeneracy(0, 0));
        assert_eq!(f.values(), &[1, 1]);
        assert_eq!(f.operator_word(), vec![Operator::Face(0), Operator::Degeneracy(0)]);
    }

    #[test]
    fn concatenation_of_coface() {
        // ⊔_2 δ_0 : [3] → [5] skips 0 and 3
        let f = Monotone::coface(2, 0).concatenate(2);
        assert_eq!(f.values(), &[1, 2, 4, 5]);
        assert_eq!(f.codomain(), 5);
        assert_eq!(Monotone::identity(2).concatenate(3), Monotone::identity(8));
    }
}
