//! Permutations and permutation groups given by generators.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{Partition, UnionFind};

/// Largest group materialized by [`PermGroup::closure`].
pub const MAX_GROUP_ORDER: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermGroupError {
    #[error("group closure exceeded {limit} elements")]
    SizeExceeded { limit: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("subgroup is not contained in the ambient group")]
    NotSubgroup,
}

/// A permutation of `{0..n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(PermGroupError::NotAPermutation(images));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermGroupError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x as usize >= n {
                    return Err(PermGroupError::PointOutOfRange { point: x as usize, degree: n });
                }
                images[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self ∘ other ∘ self⁻¹`
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Cycle lengths in non-increasing order (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `[a, b] = a⁻¹ b⁻¹ a b`
pub fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// A finite permutation group with its element list materialized.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: OnceLock<HashMap<Perm, usize>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermGroup {
    /// The group generated by `gens`, materialized by breadth-first search over
    /// generator words.
    pub fn closure(degree: usize, gens: &[Perm]) -> Result<PermGroup, PermGroupError> {
        Self::closure_with_limit(degree, gens, MAX_GROUP_ORDER)
    }

    pub fn closure_with_limit(degree: usize, gens: &[Perm], limit: usize) -> Result<PermGroup, PermGroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(PermGroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let generators: Vec<Perm> = {
            let mut seen = HashSet::new();
            gens.iter().filter(|g| !g.is_identity() && seen.insert((*g).clone())).cloned().collect()
        };
        let id = Perm::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0usize);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &generators {
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    if elements.len() >= limit {
                        return Err(PermGroupError::SizeExceeded { limit });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let lock = OnceLock::new();
        let _ = lock.set(index);
        Ok(PermGroup { degree, generators, elements, index: lock })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::closure(degree, &[]).expect("trivial group")
    }

    /// Builds a group from a full element list known to be closed.
    fn from_closed_elements(degree: usize, elements: Vec<Perm>) -> PermGroup {
        let generators = greedy_generators(degree, &elements);
        PermGroup { degree, generators, elements, index: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    fn index(&self) -> &HashMap<Perm, usize> {
        self.index.get_or_init(|| self.elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index().get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index().contains_key(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn orbits(&self) -> Partition {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for i in 0..self.degree {
                uf.union(i, g.apply(i));
            }
        }
        uf.to_partition()
    }

    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        let mut out = vec![a];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().num_blocks() == 1
    }

    pub fn is_semiregular(&self) -> bool {
        self.elements.iter().all(|g| g.is_identity() || g.fixed_points() == 0)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    pub fn stabilizer(&self, a: usize) -> Result<PermGroup, PermGroupError> {
        self.check_point(a)?;
        Ok(self.filter(|g| g.apply(a) == a))
    }

    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup, PermGroupError> {
        let mut member = vec![false; self.degree];
        for &x in set {
            self.check_point(x)?;
            member[x] = true;
        }
        Ok(self.filter(|g| set.iter().all(|&x| member[g.apply(x)])))
    }

    /// Elements that preserve every block of `blocks`.
    pub fn block_kernel(&self, blocks: &Partition) -> PermGroup {
        self.filter(|g| (0..self.degree).all(|x| blocks.related(x, g.apply(x))))
    }

    fn check_point(&self, a: usize) -> Result<(), PermGroupError> {
        if a >= self.degree {
            Err(PermGroupError::PointOutOfRange { point: a, degree: self.degree })
        } else {
            Ok(())
        }
    }

    /// Subgroup of elements satisfying `pred`; the caller guarantees closure.
    pub fn filter(&self, pred: impl Fn(&Perm) -> bool) -> PermGroup {
        let elems = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        PermGroup::from_closed_elements(self.degree, elems)
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter().enumerate().all(|(i, a)| gs[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn center(&self) -> PermGroup {
        let gs = &self.generators;
        self.filter(|x| gs.iter().all(|g| x.compose(g) == g.compose(x)))
    }

    /// Elements of `self` commuting with every element of `other`.
    pub fn centralizer_of(&self, other: &PermGroup) -> PermGroup {
        let gs = other.generators();
        self.filter(|x| gs.iter().all(|g| x.compose(g) == g.compose(x)))
    }

    /// Smallest subgroup containing `gens` and normalized by `self`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<PermGroup, PermGroupError> {
        let mut group = PermGroup::closure(self.degree, gens)?;
        loop {
            let missing = self
                .generators
                .iter()
                .find_map(|g| group.generators().iter().map(|n| g.conjugate(n)).find(|c| !group.contains(c)));
            match missing {
                Some(c) => {
                    let mut next = group.generators().to_vec();
                    next.push(c);
                    group = PermGroup::closure(self.degree, &next)?;
                }
                None => return Ok(group),
            }
        }
    }

    /// Conjugacy class of `x` under `self`.
    pub fn conjugacy_class(&self, x: &Perm) -> Vec<Perm> {
        let mut seen = HashSet::from([x.clone()]);
        let mut out = vec![x.clone()];
        let mut head = 0;
        while head < out.len() {
            let y = out[head].clone();
            head += 1;
            for g in &self.generators {
                let z = g.conjugate(&y);
                if seen.insert(z.clone()) {
                    out.push(z);
                }
            }
        }
        out
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_with(self)
    }

    /// `[self, other]` for a subgroup `other` normal in `self`, or `other = self`.
    pub fn commutator_with(&self, other: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        let mut seen = HashSet::new();
        for a in &self.generators {
            for b in other.generators() {
                let c = commutator(a, b);
                if !c.is_identity() && seen.insert(c.clone()) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms).expect("commutator subgroup fits inside the group")
    }

    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut out = vec![self.clone()];
        loop {
            let next = self.commutator_with(out.last().unwrap());
            if next.order() == out.last().unwrap().order() {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient.generators().iter().all(|g| self.generators.iter().all(|n| self.contains(&g.conjugate(n))))
    }

    /// All subgroups `N ≤ h` that are normal in `self`.
    pub fn normal_subgroups_contained_in(&self, h: &PermGroup) -> Result<Vec<PermGroup>, PermGroupError> {
        if h.order() > 10_000 {
            return Err(PermGroupError::SizeExceeded { limit: 10_000 });
        }
        if !h.is_subgroup_of(self) {
            return Err(PermGroupError::NotSubgroup);
        }
        let key = |g: &PermGroup| -> Vec<usize> {
            let mut v: Vec<usize> = g.elements().iter().map(|x| h.index_of(x).unwrap()).collect();
            v.sort_unstable();
            v
        };
        let mut found: HashMap<Vec<usize>, PermGroup> = HashMap::new();
        let trivial = PermGroup::trivial(self.degree);
        found.insert(key(&trivial), trivial);
        let mut done: HashSet<Perm> = HashSet::new();
        for x in h.elements() {
            if done.contains(x) {
                continue;
            }
            let ord = x.order();
            for k in 1..=ord {
                if gcd(k, ord) == 1 {
                    done.extend(self.conjugacy_class(&x.pow(k)));
                }
            }
            let ncl = self.normal_closure(std::slice::from_ref(x))?;
            found.entry(key(&ncl)).or_insert(ncl);
        }
        let mut frontier: Vec<Vec<usize>> = found.keys().cloned().collect();
        while !frontier.is_empty() {
            let current: Vec<(Vec<usize>, PermGroup)> = found.iter().map(|(k, g)| (k.clone(), g.clone())).collect();
            let mut next = Vec::new();
            for fk in &frontier {
                let a = found[fk].clone();
                for (_, b) in &current {
                    if b.is_subgroup_of(&a) || a.is_subgroup_of(b) {
                        continue;
                    }
                    let gens: Vec<Perm> = a.generators().iter().chain(b.generators()).cloned().collect();
                    let j = PermGroup::closure(self.degree, &gens)?;
                    let k = key(&j);
                    if !found.contains_key(&k) {
                        found.insert(k.clone(), j);
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<(Vec<usize>, PermGroup)> = found.into_iter().collect();
        out.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then(a.0.cmp(&b.0)));
        Ok(out.into_iter().map(|(_, g)| g).collect())
    }

    /// Order of the quotient `self / n` for a normal subgroup `n`.
    pub fn index_of_subgroup(&self, n: &PermGroup) -> usize {
        self.order() / n.order()
    }
}

/// A small generating subset of a closed element list.
fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut current: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    for e in elements {
        if current.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let g = PermGroup::closure(degree, &gens).expect("subgroup of a materialized group");
        current = g.elements().iter().cloned().collect();
        if current.len() == elements.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        PermGroup::closure(3, &[a, b]).unwrap()
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = PermGroup::closure(3, &[Perm::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.derived_subgroup().order(), 3);
        assert_eq!(g.center().order(), 1);
        assert!(g.is_transitive());
        assert!(!g.is_semiregular());
        assert_eq!(g.stabilizer(0).unwrap().order(), 2);
        assert!(g.stabilizer(3).is_err());
        let normals = g.normal_subgroups_contained_in(&g).unwrap();
        let orders: Vec<usize> = normals.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 3, 6]);
    }

    #[test]
    fn orbits_of_double_transposition() {
        let g = PermGroup::closure(4, &[Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap();
        assert_eq!(g.orbits().blocks(), vec![vec![0, 1], vec![2, 3]]);
        assert!(PermGroup::trivial(4).orbits().is_discrete());
    }

    #[test]
    fn regular_cyclic() {
        let c = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let g = PermGroup::closure(6, &[c]).unwrap();
        assert!(g.is_transitive() && g.is_semiregular() && g.is_regular());
        assert!(g.derived_subgroup().is_trivial());
        assert_eq!(g.center().order(), 6);
        // abelian: every subgroup is normal; Z6 has 4 subgroups
        assert_eq!(g.normal_subgroups_contained_in(&g).unwrap().len(), 4);
        let id = PermGroup::trivial(3);
        assert!(!id.is_transitive() && id.is_semiregular());
    }

    #[test]
    fn size_guard() {
        let a = Perm::from_cycles(8, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap();
        let err = PermGroup::closure_with_limit(8, &[a, b], 1000).unwrap_err();
        assert_eq!(err, PermGroupError::SizeExceeded { limit: 1000 });
    }
}
