//! Tensors `T^mu_{a1..ak}` symmetric in their lower indices.
//!
//! Only one entry per sorted lower multi-index is stored, so two tensors are
//! equal exactly when their stored entries are equal.

use crate::scalar::Scalar;

/// All non-decreasing index tuples of length `rank` over `0..dim`, in
/// lexicographic order.
pub fn multi_indices(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, rank: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, rank, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, rank, 0, &mut Vec::with_capacity(rank), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multisets of size `rank` drawn from `dim` symbols.
pub fn multiset_count(dim: usize, rank: usize) -> usize {
    if rank == 0 {
        1
    } else {
        binomial(dim + rank - 1, rank)
    }
}

/// Position of a sorted tuple in [`multi_indices`].
fn rank_of(dim: usize, sorted: &[usize]) -> usize {
    let k = sorted.len();
    let mut pos = 0;
    let mut lo = 0;
    for (j, &i) in sorted.iter().enumerate() {
        let rest = k - j - 1;
        for v in lo..i {
            pos += multiset_count(dim - v, rest);
        }
        lo = i;
    }
    pos
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<T> {
    dim: usize,
    rank: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymTensor<T> {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        let len = dim * multiset_count(dim, rank);
        Self { dim, rank, data: vec![T::zero(); len] }
    }

    /// Builds the tensor from a function of `(mu, sorted lower indices)`.
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(usize, &[usize]) -> T) -> Self {
        let idx = multi_indices(dim, rank);
        let mut data = Vec::with_capacity(dim * idx.len());
        for mu in 0..dim {
            for lower in &idx {
                data.push(f(mu, lower));
            }
        }
        Self { dim, rank, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn slot(&self, mu: usize, lower: &[usize]) -> usize {
        debug_assert_eq!(lower.len(), self.rank);
        let mut buf = [0usize; 8];
        let sorted = &mut buf[..lower.len()];
        sorted.copy_from_slice(lower);
        sorted.sort_unstable();
        mu * multiset_count(self.dim, self.rank) + rank_of(self.dim, sorted)
    }

    /// Entry `T^mu_{lower}`; the order of `lower` is irrelevant.
    pub fn get(&self, mu: usize, lower: &[usize]) -> &T {
        &self.data[self.slot(mu, lower)]
    }

    pub fn set(&mut self, mu: usize, lower: &[usize], value: T) {
        let s = self.slot(mu, lower);
        self.data[s] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Stored entries in `(mu, multi-index)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Vec<usize>, &T)> {
        let idx = multi_indices(self.dim, self.rank);
        let per = idx.len();
        self.data.iter().enumerate().map(move |(k, v)| (k / per, idx[k % per].clone(), v))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymTensor<U> {
        SymTensor { dim: self.dim, rank: self.rank, data: self.data.iter().map(f).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Self { dim: self.dim, rank: self.rank, data }
    }
}
