//! Splitting a sparse square matrix into decoupled diagonal blocks, each
//! stored as a band matrix under a caller supplied ordering.

use num_complex::Complex;
use num_traits::Zero;

use super::band::{band_bidiagonalize, BandMatrix, BandTriangular};
use super::matrix::CMatrix;
use super::svd::Bidiagonal;
use crate::scalar::Real;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Index sets of the connected components of the sparsity graph of `a`
/// (an edge for every nonzero off-diagonal entry). Each set is sorted by
/// `key`, and sets are ordered by their smallest index.
pub fn decouple<T: Real>(a: &CMatrix<T>, key: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut sets = DisjointSets::new(n);
    for r in 0..n {
        for c in 0..n {
            if r != c && !a[(r, c)].is_zero() {
                sets.union(r, c);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = sets.find(i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    for g in &mut groups {
        g.sort_by_key(|&i| (key(i), i));
    }
    groups
}

/// One decoupled block in band storage.
#[derive(Clone, Debug)]
pub struct BandBlock<T> {
    pub indices: Vec<usize>,
    pub band: BandMatrix<T>,
    pub lower: usize,
    pub upper: usize,
}

/// A square matrix held as a direct sum of band blocks. Shifted singular
/// values are computed block by block in `O(n^2 b)` work.
#[derive(Clone, Debug)]
pub struct BlockBand<T> {
    n: usize,
    blocks: Vec<BandBlock<T>>,
}

impl<T: Real> BlockBand<T> {
    pub fn new(a: &CMatrix<T>, key: impl Fn(usize) -> usize) -> Self {
        let groups = decouple(a, key);
        let blocks = groups
            .into_iter()
            .map(|indices| {
                let m = indices.len();
                let (mut lower, mut upper) = (0usize, 0usize);
                for (r, &gr) in indices.iter().enumerate() {
                    for (c, &gc) in indices.iter().enumerate() {
                        if !a[(gr, gc)].is_zero() {
                            if r > c {
                                lower = lower.max(r - c);
                            } else {
                                upper = upper.max(c - r);
                            }
                        }
                    }
                }
                let mut band = BandMatrix::zeros(m, lower, upper);
                for (r, &gr) in indices.iter().enumerate() {
                    let c0 = r.saturating_sub(lower);
                    let c1 = (r + upper).min(m - 1);
                    for c in c0..=c1 {
                        band.set(r, c, a[(gr, indices[c])]);
                    }
                }
                BandBlock {
                    indices,
                    band,
                    lower,
                    upper,
                }
            })
            .collect();
        BlockBand {
            n: a.rows(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BandBlock<T>] {
        &self.blocks
    }

    /// Largest bandwidth `lower + upper` over the blocks.
    pub fn bandwidth(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.lower + b.upper)
            .max()
            .unwrap_or(0)
    }

    /// Real bidiagonal forms of `A - z` for every block.
    pub fn shifted_bidiagonals(&self, z: Complex<T>) -> Vec<Bidiagonal<T>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut band = b.band.clone();
                band.shift_diagonal(-z);
                band_bidiagonalize(&band, b.lower, b.upper)
            })
            .collect()
    }

    /// Smallest singular value of `A - z`.
    pub fn sigma_min_shifted(&self, z: Complex<T>) -> T {
        self.blocks
            .iter()
            .map(|b| {
                let mut band = b.band.clone();
                band.shift_diagonal(-z);
                BandTriangular::new(&band, b.lower, b.upper).sigma_min()
            })
            .fold(T::infinity(), |m, s| m.min(s))
    }

    /// Spectral norm of `A`.
    pub fn norm2(&self) -> T {
        self.shifted_bidiagonals(Complex::zero())
            .iter()
            .map(|b| b.sigma_max())
            .fold(T::zero(), |m, s| m.max(s))
    }
}
