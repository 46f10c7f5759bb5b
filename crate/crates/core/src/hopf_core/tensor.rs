use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{FieldCtx, Scalar};

/// Sparse vector in a basis indexed by `usize`; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vector {
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize, ctx: &FieldCtx) -> Self {
        Vector::term(i, ctx.one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let mut v = Vector::zero();
        for (i, c) in values.iter().enumerate() {
            v.add_term(i, c.clone());
        }
        v
    }

    pub fn to_dense(&self, dim: usize, ctx: &FieldCtx) -> Vec<Scalar> {
        (0..dim).map(|i| self.get(i).cloned().unwrap_or_else(|| ctx.zero())).collect()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    /// Coefficient at `i`, or zero of `ctx`.
    pub fn coeff(&self, i: usize, ctx: &FieldCtx) -> Scalar {
        self.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.entries.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_term(i, c * x);
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (&i, x) in &other.entries {
            out.add_term(i, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (&i, x) in &other.entries {
            out.add_term(i, -x);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Bilinear extension of `f` on basis pairs.
    pub fn bilinear(&self, other: &Vector, mut f: impl FnMut(usize, usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_scaled(&(a * b), &f(i, j));
            }
        }
        out
    }

    /// Linear extension of `f` on basis elements.
    pub fn linear(&self, mut f: impl FnMut(usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in self.iter() {
            out.add_scaled(a, &f(i));
        }
        out
    }

    /// First index where the vectors differ, with both coefficients.
    pub fn first_difference(&self, other: &Vector, ctx: &FieldCtx) -> Option<(usize, Scalar, Scalar)> {
        let keys: std::collections::BTreeSet<usize> =
            self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter().find_map(|k| {
            let a = self.coeff(k, ctx);
            let b = other.coeff(k, ctx);
            (a != b).then_some((k, a, b))
        })
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("({c})e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse element of a tensor power V^{⊗r}, keyed by index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(rank: usize) -> Self {
        Tensor {
            rank,
            entries: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        debug_assert_eq!(key.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.entries.remove(&key);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.entries.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Tensor) {
        assert_eq!(self.rank, other.rank, "tensor rank mismatch");
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.entries {
            self.add_term(k.clone(), c * x);
        }
    }

    pub fn from_vector(v: &Vector) -> Self {
        let mut t = Tensor::zero(1);
        for (i, c) in v.iter() {
            t.add_term(vec![i], c.clone());
        }
        t
    }

    /// The rank-1 tensor viewed as a vector. Panics on other ranks.
    pub fn to_vector(&self) -> Vector {
        assert_eq!(self.rank, 1);
        Vector::from_terms(self.entries.iter().map(|(k, c)| (k[0], c.clone())))
    }

    /// v₁ ⊗ v₂ ⊗ … ⊗ v_r.
    pub fn outer(vectors: &[&Vector]) -> Self {
        let Some(one) = vectors
            .iter()
            .find_map(|v| v.iter().next().map(|(_, c)| c.field().one()))
        else {
            return Tensor::zero(vectors.len());
        };
        let mut t = Tensor::zero(0);
        t.entries.insert(Vec::new(), one);
        for v in vectors {
            t = t.extend_with(v);
        }
        t
    }

    fn extend_with(&self, v: &Vector) -> Tensor {
        let mut out = Tensor::zero(self.rank + 1);
        for (k, c) in &self.entries {
            for (i, x) in v.iter() {
                let mut key = k.clone();
                key.push(i);
                out.add_term(key, c * x);
            }
        }
        out
    }

    /// self ⊗ other.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.rank + other.rank);
        for (k1, a) in &self.entries {
            for (k2, b) in &other.entries {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, a * b);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.entries.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &[usize]) -> Option<&Scalar> {
        self.entries.get(key)
    }

    /// Replaces each basis key by the tensor `f(key)` (multilinear extension).
    pub fn expand(&self, out_rank: usize, mut f: impl FnMut(&[usize]) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(out_rank);
        for (k, c) in &self.entries {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Applies `f` to leg `leg`, where `f(i)` is a tensor of rank `width`.
    pub fn map_leg(&self, leg: usize, width: usize, mut f: impl FnMut(usize) -> Tensor) -> Tensor {
        let rank = self.rank - 1 + width;
        self.expand(rank, |key| {
            let image = f(key[leg]);
            let mut out = Tensor::zero(rank);
            for (ik, c) in image.iter() {
                let mut full = key[..leg].to_vec();
                full.extend_from_slice(ik);
                full.extend_from_slice(&key[leg + 1..]);
                out.add_term(full, c.clone());
            }
            out
        })
    }

    /// Permutes legs: output leg `i` is input leg `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zero(self.rank);
        for (k, c) in &self.entries {
            out.add_term(perm.iter().map(|&p| k[p]).collect(), c.clone());
        }
        out
    }

    /// First key (in lexicographic order) where the tensors differ.
    pub fn first_difference(&self, other: &Tensor, ctx: &FieldCtx) -> Option<(Vec<usize>, Scalar, Scalar)> {
        let keys: std::collections::BTreeSet<&Vec<usize>> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find_map(|k| {
            let a = self.entries.get(k).cloned().unwrap_or_else(|| ctx.zero());
            let b = other.entries.get(k).cloned().unwrap_or_else(|| ctx.zero());
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_and_permute() {
        let k = FieldCtx::Rationals;
        let a = Vector::from_dense(&[k.from_int(1), k.from_int(2)]);
        let b = Vector::basis(1, &k);
        let t = Tensor::outer(&[&a, &b]);
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&[1, 1]), Some(&k.from_int(2)));
        let f = t.permute(&[1, 0]);
        assert_eq!(f.get(&[1, 1]), Some(&k.from_int(2)));
        assert_eq!(f.get(&[1, 0]), Some(&k.from_int(1)));
        assert!(Tensor::outer(&[&a, &Vector::zero()]).is_zero());
    }

    #[test]
    fn cancellation_drops_entries() {
        let k = FieldCtx::Rationals;
        let mut v = Vector::basis(3, &k);
        v.add_term(3, k.from_int(-1));
        assert!(v.is_zero());
    }
}
