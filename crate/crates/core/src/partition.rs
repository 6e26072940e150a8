//! Partitions of {1..r} in partition-vector normal form, with refinement and
//! union-find join. Internally indices are 0-based; parts and the vector are
//! exposed 1-based to match the f_i numbering.
//!
//! Normal form: v[i] is the smallest element of the part containing i, so
//! v[0] = 0, v[v[i]] = v[i] and v[i] <= i.

use crate::error::{Error, Result};
use crate::factor::trager::SubfieldFactorization;
use crate::numfield::KPoly;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionVec {
    v: Vec<usize>,
}

impl std::fmt::Debug for PartitionVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partition{:?}", self.parts_1based())
    }
}

/// Minimal union-find with path compression; the minimum element of each set
/// is kept as its root so representatives never need renormalizing.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        // smaller index becomes the root
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

impl PartitionVec {
    /// Finest partition: every element alone.
    pub fn discrete(r: usize) -> Self {
        PartitionVec {
            v: (0..r).collect(),
        }
    }

    /// Coarsest partition: one part.
    pub fn trivial(r: usize) -> Self {
        PartitionVec { v: vec![0; r] }
    }

    /// Build from 0-based parts (used by tests and the echelon extraction).
    pub fn from_parts_0based(r: usize, parts: &[Vec<usize>]) -> Self {
        let mut v = vec![usize::MAX; r];
        for part in parts {
            let min = *part.iter().min().expect("empty part");
            for &i in part {
                v[i] = min;
            }
        }
        assert!(v.iter().all(|&x| x != usize::MAX), "parts must cover 1..r");
        let p = PartitionVec { v };
        debug_assert!(p.is_normal_form());
        p
    }

    /// Build directly from a representative vector (0-based); panics when the
    /// vector is not in normal form.
    pub fn from_vec_0based(v: Vec<usize>) -> Self {
        let p = PartitionVec { v };
        assert!(p.is_normal_form(), "not a valid partition vector");
        p
    }

    pub fn is_normal_form(&self) -> bool {
        self.v
            .iter()
            .enumerate()
            .all(|(i, &vi)| vi <= i && self.v[vi] == vi)
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    /// Representative (smallest element) of the part containing i, 0-based.
    pub fn rep(&self, i: usize) -> usize {
        self.v[i]
    }

    /// The vector in 1-based form, v[i] in {1..i+1}.
    pub fn vec_1based(&self) -> Vec<usize> {
        self.v.iter().map(|&x| x + 1).collect()
    }

    /// Number of parts.
    pub fn num_parts(&self) -> usize {
        self.v.iter().enumerate().filter(|&(i, &vi)| i == vi).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.v.iter().enumerate().all(|(i, &vi)| i == vi)
    }

    pub fn is_trivial(&self) -> bool {
        self.v.iter().all(|&vi| vi == 0)
    }

    /// Parts as sorted 0-based index sets, ordered by smallest element (the
    /// part containing index 0 first).
    pub fn parts_0based(&self) -> Vec<Vec<usize>> {
        let mut reps: Vec<usize> = vec![];
        let mut parts: Vec<Vec<usize>> = vec![];
        for (i, &vi) in self.v.iter().enumerate() {
            if i == vi {
                reps.push(i);
                parts.push(vec![i]);
            } else {
                let idx = reps.binary_search(&vi).expect("normal form");
                parts[idx].push(i);
            }
        }
        parts
    }

    pub fn parts_1based(&self) -> Vec<Vec<usize>> {
        self.parts_0based()
            .into_iter()
            .map(|p| p.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    /// Lattice join: the finest partition refined by both inputs, computed by
    /// union-find over both representative maps.
    pub fn join(&self, other: &PartitionVec) -> Result<PartitionVec> {
        if self.len() != other.len() {
            return Err(Error::PartitionLength(self.len(), other.len()));
        }
        let mut uf = UnionFind::new(self.len());
        for i in 0..self.len() {
            uf.union(i, self.v[i]);
            uf.union(i, other.v[i]);
        }
        let v = (0..self.len()).map(|i| uf.find(i)).collect();
        let p = PartitionVec { v };
        debug_assert!(p.is_normal_form());
        Ok(p)
    }

    /// True when every part of self lies inside a single part of `coarser`.
    pub fn refines(&self, coarser: &PartitionVec) -> Result<bool> {
        if self.len() != coarser.len() {
            return Err(Error::PartitionLength(self.len(), coarser.len()));
        }
        Ok((0..self.len()).all(|i| coarser.v[i] == coarser.v[self.v[i]]))
    }
}

/// Product of the factors selected by one part (0-based indices into the
/// subfield factorization), expanded over K.
pub fn p_product(sf: &SubfieldFactorization, part: &[usize]) -> Result<KPoly> {
    if part.is_empty() {
        return Err(Error::EmptyPart);
    }
    let mut acc = KPoly::one(sf.field());
    for &i in part {
        acc = acc.mul(&sf.factors()[i]);
    }
    Ok(acc)
}

/// All P-products of a partition, in part order.
pub fn p_products(sf: &SubfieldFactorization, p: &PartitionVec) -> Result<Vec<KPoly>> {
    p.parts_0based()
        .iter()
        .map(|part| p_product(sf, part))
        .collect()
}
