//! Canonical partitions of `{0..n-1}`.

use serde::{Deserialize, Serialize};

/// A partition stored as a block-id array. Labels are canonical: the block of
/// element 0 is 0 and new labels appear in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    block_id: Vec<u32>,
}

impl Partition {
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut map = std::collections::HashMap::new();
        let block_id = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { block_id }
    }

    pub fn discrete(n: usize) -> Self {
        Partition { block_id: (0..n as u32).collect() }
    }

    pub fn full(n: usize) -> Self {
        Partition { block_id: vec![0; n] }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut labels: Vec<usize> = (0..n).map(|i| n + i).collect();
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        Self::from_labels(&labels)
    }

    pub fn len(&self) -> usize {
        self.block_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_id.is_empty()
    }

    pub fn block_ids(&self) -> &[u32] {
        &self.block_id
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.block_id[a] as usize
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_id[a] == self.block_id[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_id.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block_id.iter().enumerate() {
            out[b as usize].push(x);
        }
        out
    }

    pub fn block(&self, a: usize) -> Vec<usize> {
        let b = self.block_id[a];
        (0..self.len()).filter(|&x| self.block_id[x] == b).collect()
    }

    /// Sorted multiset of block sizes.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &b in &self.block_id {
            sizes[b as usize] += 1;
        }
        sizes.sort_unstable();
        sizes
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self` refines `other`.
    pub fn le(&self, other: &Partition) -> bool {
        let mut image = vec![u32::MAX; self.num_blocks()];
        for (x, &b) in self.block_id.iter().enumerate() {
            let o = other.block_id[x];
            let slot = &mut image[b as usize];
            if *slot == u32::MAX {
                *slot = o;
            } else if *slot != o {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(u32, u32)> = self.block_id.iter().zip(&other.block_id).map(|(&a, &b)| (a, b)).collect();
        Partition::from_labels(&pairs)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.num_blocks()];
            for (x, &b) in part.block_id.iter().enumerate() {
                let f = &mut first[b as usize];
                if *f == usize::MAX {
                    *f = x;
                } else {
                    uf.union(*f, x);
                }
            }
        }
        uf.to_partition()
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn to_partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[5, 5, 2, 9, 2]);
        assert_eq!(p.block_ids(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.block_sizes(), vec![1, 2, 2]);
    }

    #[test]
    fn lattice_ops() {
        let a = Partition::from_labels(&[0, 0, 1, 1, 2, 2]);
        let b = Partition::from_labels(&[0, 1, 1, 2, 2, 3]);
        assert!(a.join(&b).is_full());
        assert!(a.meet(&b).is_discrete());
        assert!(a.meet(&b).le(&a));
        assert!(!a.le(&b));
    }
}
