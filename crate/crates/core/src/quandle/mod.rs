//! Finite quandles given by their operation table.

mod construct;
mod iso;
mod report;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::groups::GroupError;
use crate::partition::{Partition, UnionFind};
use crate::permgroup::{Perm, PermGroup, PermGroupError};

pub use construct::*;
pub use iso::*;
pub use report::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("table is not square")]
    NotSquare,
    #[error("entry {value} at ({row}, {col}) out of range")]
    EntryOutOfRange { row: usize, col: usize, value: u32 },
    #[error("row {0} is not a permutation (left quasigroup axiom fails)")]
    NotLeftQuasigroup(usize),
    #[error("{0} * {0} != {0} (idempotence fails)")]
    NotIdempotent(usize),
    #[error("left distributivity fails at ({0}, {1}, {2})")]
    NotLeftDistributive(usize, usize, usize),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("polynomial is reducible")]
    ReduciblePolynomial,
    #[error("multiplication by t is not invertible (zero constant term)")]
    TNotInvertible,
    #[error("H is not a subgroup")]
    NotSubgroup,
    #[error("H is not contained in Fix(f)")]
    NotFixed,
    #[error("set is not closed under conjugation")]
    NotClosed,
    #[error("size {size} exceeds the limit {limit}")]
    SizeExceeded { size: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    PermGroup(#[from] PermGroupError),
}

/// A finite quandle on `{0..n-1}` with `table[a*n + b] = a * b`.
#[derive(Clone)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<u32>,
    ldiv: Vec<u32>,
    left: Vec<Perm>,
    lmlt: OnceLock<Result<PermGroup, PermGroupError>>,
    dis: OnceLock<Result<PermGroup, PermGroupError>>,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle(n={})", self.n)
    }
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteQuandle {}

impl FiniteQuandle {
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, QuandleError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(QuandleError::NotSquare);
        }
        Self::from_table(n, rows.iter().flatten().copied().collect())
    }

    /// Validates the axioms and reports the first failure with a witness.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self, QuandleError> {
        if table.len() != n * n {
            return Err(QuandleError::NotSquare);
        }
        if let Some(i) = table.iter().position(|&x| x as usize >= n) {
            return Err(QuandleError::EntryOutOfRange { row: i / n, col: i % n, value: table[i] });
        }
        let mut left = Vec::with_capacity(n);
        for a in 0..n {
            let row = table[a * n..(a + 1) * n].to_vec();
            let p = Perm::from_images(row).map_err(|_| QuandleError::NotLeftQuasigroup(a))?;
            left.push(p);
        }
        for a in 0..n {
            if table[a * n + a] as usize != a {
                return Err(QuandleError::NotIdempotent(a));
            }
        }
        for a in 0..n {
            let row_a = &table[a * n..(a + 1) * n];
            for b in 0..n {
                let ab = row_a[b] as usize;
                let row_b = &table[b * n..(b + 1) * n];
                let row_ab = &table[ab * n..(ab + 1) * n];
                for c in 0..n {
                    if row_a[row_b[c] as usize] != row_ab[row_a[c] as usize] {
                        return Err(QuandleError::NotLeftDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(Self::assemble(n, table, left))
    }

    fn assemble(n: usize, table: Vec<u32>, left: Vec<Perm>) -> Self {
        let mut ldiv = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                ldiv[a * n + table[a * n + b] as usize] = b as u32;
            }
        }
        FiniteQuandle { n, table, ldiv, left, lmlt: OnceLock::new(), dis: OnceLock::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// `a \ b`, the unique `x` with `a * x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b] as usize
    }

    /// `a / b`, the unique `x` with `x * b = a`, when `R_b` is bijective.
    pub fn rdiv(&self, a: usize, b: usize) -> Option<usize> {
        let mut found = None;
        for x in 0..self.n {
            if self.op(x, b) == a {
                if found.is_some() {
                    return None;
                }
                found = Some(x);
            }
        }
        found
    }

    pub fn left_translation(&self, a: usize) -> &Perm {
        &self.left[a]
    }

    pub fn left_translations(&self) -> &[Perm] {
        &self.left
    }

    pub fn right_translation(&self, b: usize) -> Vec<u32> {
        (0..self.n).map(|x| self.op(x, b) as u32).collect()
    }

    pub fn right_translation_is_bijective(&self, b: usize) -> bool {
        let mut seen = vec![false; self.n];
        (0..self.n).all(|x| !std::mem::replace(&mut seen[self.op(x, b)], true))
    }

    pub fn lmlt(&self) -> Result<&PermGroup, QuandleError> {
        self.lmlt.get_or_init(|| PermGroup::closure(self.n, &self.left)).as_ref().map_err(|e| e.clone().into())
    }

    /// Generated by `L_a L_0⁻¹`.
    pub fn dis(&self) -> Result<&PermGroup, QuandleError> {
        self.dis
            .get_or_init(|| {
                if self.n == 0 {
                    return PermGroup::closure(0, &[]);
                }
                let l0i = self.left[0].inverse();
                let gens: Vec<Perm> = self.left.iter().map(|l| l.compose(&l0i)).collect();
                PermGroup::closure(self.n, &gens)
            })
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// Orbits of LMlt (equal to the Dis orbits).
    pub fn orbit_partition(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                uf.union(b, self.op(a, b));
            }
        }
        uf.to_partition()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.orbit_partition().num_blocks() == 1
    }

    pub fn is_latin(&self) -> bool {
        (0..self.n).all(|b| self.right_translation_is_bijective(b))
    }

    pub fn is_faithful(&self) -> bool {
        self.lambda_cong().is_discrete()
    }

    pub fn is_projection(&self) -> bool {
        (0..self.n).all(|a| self.left[a].is_identity())
    }

    pub fn is_involutory(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, self.op(a, b)) == b))
    }

    /// Kernel of `a ↦ L_a`.
    pub fn lambda_cong(&self) -> Partition {
        Partition::from_labels(&self.left.iter().map(|l| l.images()).collect::<Vec<_>>())
    }

    /// Subquandle generated by `xs`, as a sorted element list.
    pub fn sg(&self, xs: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        let mut elems: Vec<usize> = Vec::new();
        for &x in xs {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            let mut j = 0;
            while j <= i {
                let b = elems[j];
                for c in [self.op(a, b), self.op(b, a), self.ldiv(a, b), self.ldiv(b, a)] {
                    if !member[c] {
                        member[c] = true;
                        elems.push(c);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Closed under `*` (for finite sets this implies closure under `\`).
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| member[self.op(a, b)]))
    }

    /// Subquandle on a closed set, relabelled by increasing element.
    pub fn subquandle(&self, set: &[usize]) -> Result<FiniteQuandle, QuandleError> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut pos = vec![u32::MAX; self.n];
        for (i, &x) in sorted.iter().enumerate() {
            pos[x] = i as u32;
        }
        let m = sorted.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &sorted {
            for &b in &sorted {
                let c = pos[self.op(a, b)];
                if c == u32::MAX {
                    return Err(QuandleError::NotClosed);
                }
                table.push(c);
            }
        }
        FiniteQuandle::from_table(m, table)
    }

    pub fn direct_product(q1: &FiniteQuandle, q2: &FiniteQuandle) -> FiniteQuandle {
        let (n1, n2) = (q1.n, q2.n);
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push((q1.op(x / n2, y / n2) * n2 + q2.op(x % n2, y % n2)) as u32);
            }
        }
        FiniteQuandle::from_table(n, table).expect("product of quandles is a quandle")
    }

    /// Applies a relabelling `perm` (old element `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &Perm) -> FiniteQuandle {
        let n = self.n;
        let inv = perm.inverse();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = perm.apply(self.op(inv.apply(a), inv.apply(b))) as u32;
            }
        }
        FiniteQuandle::from_table(n, table).expect("relabelled quandle")
    }

    /// True when `map` is a quandle homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteQuandle, map: &[usize]) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| map[self.op(a, b)] == target.op(map[a], map[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_and_dihedral_tables() {
        let p3 = FiniteQuandle::from_rows(&[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert!(p3.is_projection() && !p3.is_connected());
        let d3: Vec<Vec<u32>> = (0..3).map(|a| (0..3).map(|b| ((2 * a + 3 - b) % 3) as u32).collect()).collect();
        let q = FiniteQuandle::from_rows(&d3).unwrap();
        assert!(q.is_latin() && q.is_connected() && q.is_faithful());
    }

    #[test]
    fn axiom_witnesses() {
        let bad = FiniteQuandle::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(bad.unwrap_err(), QuandleError::NotIdempotent(0));
        let bad = FiniteQuandle::from_rows(&[vec![0, 0], vec![0, 1]]);
        assert_eq!(bad.unwrap_err(), QuandleError::NotLeftQuasigroup(0));
        // idempotent left quasigroup that is not distributive
        let t = vec![vec![0, 2, 1, 3], vec![2, 1, 3, 0], vec![1, 0, 2, 3], vec![0, 1, 2, 3]];
        assert!(matches!(FiniteQuandle::from_rows(&t), Err(QuandleError::NotLeftDistributive(..))));
    }

    #[test]
    fn sg_of_single_element() {
        let q = affine_cyclic(5, 2).unwrap();
        assert_eq!(q.sg(&[3]), vec![3]);
        assert_eq!(q.sg(&[0, 1]).len(), 5);
    }

    #[test]
    fn p2_lambda_is_full() {
        let p2 = projection(2);
        assert!(p2.lambda_cong().is_full());
        assert!(!p2.is_connected());
    }
}
