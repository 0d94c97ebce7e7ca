//! Congruences, the congruence lattice, and congruence-indexed subgroups.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{Partition, UnionFind};
use crate::permgroup::{Perm, PermGroup};
use crate::quandle::{FiniteQuandle, QuandleError};

pub type Congruence = Partition;

/// Size guard for full lattice enumeration.
pub const MAX_LATTICE_SIZE: usize = 128;
/// Guard on the number of congruences produced by join-closure.
pub const MAX_LATTICE_ELEMENTS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("size {size} exceeds the limit {limit}")]
    SizeExceeded { size: usize, limit: usize },
    #[error("partition is not a congruence")]
    NotCongruence,
    #[error("block of {0} is not a subquandle")]
    BlockNotSubquandle(usize),
    #[error("subgroup is not normal in LMlt or not contained in Dis")]
    NotNormalOrNotInDis,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

/// Exhaustive compatibility check against `*` and `\` in both arguments.
pub fn is_congruence(q: &FiniteQuandle, alpha: &Partition) -> bool {
    let n = q.size();
    if alpha.len() != n {
        return false;
    }
    let mut first = vec![usize::MAX; alpha.num_blocks()];
    for x in 0..n {
        let b = alpha.block_of(x);
        if first[b] == usize::MAX {
            first[b] = x;
        }
    }
    (0..n).all(|a| {
        let r = first[alpha.block_of(a)];
        a == r
            || (0..n).all(|c| {
                alpha.related(q.op(c, a), q.op(c, r))
                    && alpha.related(q.op(a, c), q.op(r, c))
                    && alpha.related(q.ldiv(c, a), q.ldiv(c, r))
                    && alpha.related(q.ldiv(a, c), q.ldiv(r, c))
            })
    })
}

/// Least congruence containing `pairs`.
pub fn cg(q: &FiniteQuandle, pairs: &[(usize, usize)]) -> Congruence {
    let n = q.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for c in 0..n {
            work.push((q.op(c, a), q.op(c, b)));
            work.push((q.op(a, c), q.op(b, c)));
            work.push((q.ldiv(c, a), q.ldiv(c, b)));
            work.push((q.ldiv(a, c), q.ldiv(b, c)));
        }
    }
    uf.to_partition()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeShape {
    #[serde(rename = "simple")]
    Simple,
    #[serde(rename = "SI-chain")]
    SiChain,
    #[serde(rename = "reducible-fan")]
    ReducibleFan,
    #[serde(rename = "other")]
    Other,
}

impl LatticeShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            LatticeShape::Simple => "simple",
            LatticeShape::SiChain => "SI-chain",
            LatticeShape::ReducibleFan => "reducible-fan",
            LatticeShape::Other => "other",
        }
    }
}

/// All congruences, finest first, with join and meet tables.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    pub join: Vec<Vec<u32>>,
    pub meet: Vec<Vec<u32>>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn index_of(&self, alpha: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == alpha)
    }

    /// Congruences other than `0_Q` and `1_Q`.
    pub fn proper(&self) -> Vec<&Congruence> {
        self.congruences.iter().filter(|c| !c.is_discrete() && !c.is_full()).collect()
    }

    /// Minimal nontrivial congruences.
    pub fn atoms(&self) -> Vec<&Congruence> {
        let nontrivial: Vec<&Congruence> = self.congruences.iter().filter(|c| !c.is_discrete()).collect();
        nontrivial.iter().filter(|c| !nontrivial.iter().any(|d| d != *c && d.le(c))).copied().collect()
    }

    pub fn shape(&self) -> LatticeShape {
        let proper = self.proper();
        match proper.len() {
            0 => LatticeShape::Simple,
            1 => LatticeShape::SiChain,
            _ => {
                let fan = proper
                    .iter()
                    .enumerate()
                    .all(|(i, a)| proper[i + 1..].iter().all(|b| a.meet(b).is_discrete() && a.join(b).is_full()));
                if fan {
                    LatticeShape::ReducibleFan
                } else {
                    LatticeShape::Other
                }
            }
        }
    }
}

/// Principal congruences `cg(a, b)`; for each LMlt-orbit only pairs starting
/// at the orbit representative are needed.
pub fn principal_congruences(q: &FiniteQuandle) -> Vec<Congruence> {
    let n = q.size();
    let orbits = q.orbit_partition();
    let reps: Vec<usize> = orbits.blocks().iter().map(|b| b[0]).collect();
    let mut seen: HashMap<Congruence, ()> = HashMap::new();
    let mut out = Vec::new();
    for &a in &reps {
        for b in 0..n {
            if b == a || (orbits.related(a, b) && b < a) {
                continue;
            }
            let c = cg(q, &[(a, b)]);
            if seen.insert(c.clone(), ()).is_none() {
                out.push(c);
            }
        }
    }
    out
}

/// Meet of all nontrivial congruences, when it is nontrivial.
pub fn monolith(q: &FiniteQuandle) -> Option<Congruence> {
    let n = q.size();
    if n < 2 {
        return None;
    }
    let mut acc = Partition::full(n);
    for c in principal_congruences(q) {
        acc = acc.meet(&c);
        if acc.is_discrete() {
            return None;
        }
    }
    Some(acc)
}

pub fn is_subdirectly_irreducible(q: &FiniteQuandle) -> bool {
    monolith(q).is_some()
}

/// The congruence strictly between `0_Q` and `1_Q`, when there is exactly one.
/// Works at any size: every congruence is a join of principal ones.
pub fn unique_proper_congruence(q: &FiniteQuandle) -> Option<Congruence> {
    let n = q.size();
    let orbits = q.orbit_partition();
    let mut first: Option<Congruence> = None;
    for block in orbits.blocks() {
        let a = block[0];
        for b in 0..n {
            if b == a {
                continue;
            }
            let c = cg(q, &[(a, b)]);
            if c.is_full() {
                continue;
            }
            match &first {
                None => first = Some(c),
                Some(f) if *f != c => return None,
                Some(_) => {}
            }
        }
    }
    first
}

pub fn all_congruences(q: &FiniteQuandle) -> Result<CongruenceLattice, CongruenceError> {
    let n = q.size();
    if n > MAX_LATTICE_SIZE {
        return Err(CongruenceError::SizeExceeded { size: n, limit: MAX_LATTICE_SIZE });
    }
    let mut all: Vec<Congruence> = vec![Partition::discrete(n)];
    let mut index: HashMap<Congruence, usize> = HashMap::from([(Partition::discrete(n), 0)]);
    for c in principal_congruences(q) {
        if !index.contains_key(&c) {
            index.insert(c.clone(), all.len());
            all.push(c);
        }
    }
    let mut start = 1;
    while start < all.len() {
        let end = all.len();
        for i in start..end {
            for j in 0..i {
                let c = all[i].join(&all[j]);
                if !index.contains_key(&c) {
                    if all.len() >= MAX_LATTICE_ELEMENTS {
                        return Err(CongruenceError::SizeExceeded { size: all.len(), limit: MAX_LATTICE_ELEMENTS });
                    }
                    index.insert(c.clone(), all.len());
                    all.push(c);
                }
            }
        }
        start = end;
    }
    if !index.contains_key(&Partition::full(n)) {
        all.push(Partition::full(n));
    }
    all.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then(a.block_ids().cmp(b.block_ids())));
    let index: HashMap<&Congruence, u32> = all.iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
    let m = all.len();
    let mut join = vec![vec![0u32; m]; m];
    let mut meet = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..=i {
            let jn = index[&all[i].join(&all[j])];
            let mt_p = all[i].meet(&all[j]);
            let mt = *index.get(&mt_p).ok_or(CongruenceError::NotCongruence)?;
            join[i][j] = jn;
            join[j][i] = jn;
            meet[i][j] = mt;
            meet[j][i] = mt;
        }
    }
    Ok(CongruenceLattice { congruences: all, join, meet })
}

pub fn lattice_shape(q: &FiniteQuandle) -> Result<LatticeShape, CongruenceError> {
    Ok(all_congruences(q)?.shape())
}

pub fn factor(q: &FiniteQuandle, alpha: &Congruence) -> Result<FiniteQuandle, CongruenceError> {
    if !is_congruence(q, alpha) {
        return Err(CongruenceError::NotCongruence);
    }
    let m = alpha.num_blocks();
    let reps: Vec<usize> = alpha.blocks().iter().map(|b| b[0]).collect();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(alpha.block_of(q.op(a, b)) as u32);
        }
    }
    Ok(FiniteQuandle::from_table(m, table)?)
}

pub fn block_subquandle(q: &FiniteQuandle, alpha: &Congruence, a: usize) -> Result<FiniteQuandle, CongruenceError> {
    let block = alpha.block(a);
    if !q.is_closed(&block) {
        return Err(CongruenceError::BlockNotSubquandle(a));
    }
    Ok(q.subquandle(&block)?)
}

/// `Dis_α = ⟨L_a L_b⁻¹ : a α b⟩`
pub fn dis_alpha(q: &FiniteQuandle, alpha: &Congruence) -> Result<PermGroup, CongruenceError> {
    let blocks = alpha.blocks();
    let mut gens: Vec<Perm> = Vec::new();
    for b in &blocks {
        let ri = q.left_translation(b[0]).inverse();
        for &a in &b[1..] {
            gens.push(q.left_translation(a).compose(&ri));
        }
    }
    Ok(PermGroup::closure(q.size(), &gens).map_err(QuandleError::from)?)
}

/// `Dis^α`: displacements preserving every block.
pub fn dis_upper_alpha(q: &FiniteQuandle, alpha: &Congruence) -> Result<PermGroup, CongruenceError> {
    Ok(q.dis()?.block_kernel(alpha))
}

/// Checks `Dis(Q)/Dis^α ≅ Dis(Q/α)`: generator images match and orders agree.
pub fn pi_alpha_kernel_check(q: &FiniteQuandle, alpha: &Congruence) -> Result<bool, CongruenceError> {
    let fq = factor(q, alpha)?;
    let dis = q.dis()?;
    let upper = dis_upper_alpha(q, alpha)?;
    let fdis = fq.dis()?;
    let reps: Vec<usize> = alpha.blocks().iter().map(|b| b[0]).collect();
    let l0i = q.left_translation(0).inverse();
    let f0 = alpha.block_of(0);
    let fl0i = fq.left_translation(f0).inverse();
    for a in 0..q.size() {
        let h = q.left_translation(a).compose(&l0i);
        let image = fq.left_translation(alpha.block_of(a)).compose(&fl0i);
        for (blk, &r) in reps.iter().enumerate() {
            if alpha.block_of(h.apply(r)) != image.apply(blk) {
                return Ok(false);
            }
        }
    }
    Ok(dis.order() == upper.order() * fdis.order())
}

fn check_norm_sub(q: &FiniteQuandle, n: &PermGroup) -> Result<(), CongruenceError> {
    let dis = q.dis()?;
    let lmlt = q.lmlt()?;
    if !n.is_subgroup_of(dis) || !n.is_normal_in(lmlt) {
        return Err(CongruenceError::NotNormalOrNotInDis);
    }
    Ok(())
}

/// `O_N`, the orbit congruence of `N`.
pub fn orbit_cong(q: &FiniteQuandle, n: &PermGroup) -> Result<Congruence, CongruenceError> {
    check_norm_sub(q, n)?;
    let c = n.orbits();
    if !is_congruence(q, &c) {
        return Err(CongruenceError::NotCongruence);
    }
    Ok(c)
}

/// `c_N = {(a, b) : L_a L_b⁻¹ ∈ N}`.
pub fn cnorm_cong(q: &FiniteQuandle, n: &PermGroup) -> Result<Congruence, CongruenceError> {
    check_norm_sub(q, n)?;
    let size = q.size();
    let mut uf = UnionFind::new(size);
    for a in 0..size {
        let la = q.left_translation(a);
        for b in a + 1..size {
            if n.contains(&la.compose(&q.left_translation(b).inverse())) {
                uf.union(a, b);
            }
        }
    }
    let c = uf.to_partition();
    if !is_congruence(q, &c) {
        return Err(CongruenceError::NotCongruence);
    }
    Ok(c)
}

/// `γ_Q = O_{γ_1(Dis Q)}`
pub fn gamma(q: &FiniteQuandle) -> Result<Congruence, CongruenceError> {
    let d = q.dis()?.derived_subgroup();
    orbit_cong(q, &d)
}

/// Meet of all congruences whose factor has an abelian displacement group.
pub fn gamma_by_lattice(q: &FiniteQuandle) -> Result<Congruence, CongruenceError> {
    let lat = all_congruences(q)?;
    let mut acc = Partition::full(q.size());
    for c in &lat.congruences {
        if factor(q, c)?.dis()?.is_abelian() {
            acc = acc.meet(c);
        }
    }
    Ok(acc)
}

/// `ζ_Q = c_{Z(Dis Q)}` for faithful quandles.
pub fn zeta(q: &FiniteQuandle) -> Result<Congruence, CongruenceError> {
    if !q.is_faithful() {
        return Err(CongruenceError::Unsupported("zeta needs a faithful quandle".into()));
    }
    let z = q.dis()?.center();
    cnorm_cong(q, &z)
}

/// Stabilizer-equality relation with a flag telling whether it is a congruence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaRelation {
    pub partition: Partition,
    pub is_congruence: bool,
}

pub fn sigma(q: &FiniteQuandle) -> Result<SigmaRelation, CongruenceError> {
    let dis = q.dis()?;
    let stabs: Vec<Vec<usize>> = (0..q.size())
        .map(|a| {
            let mut v: Vec<usize> =
                dis.elements().iter().enumerate().filter(|(_, g)| g.apply(a) == a).map(|(i, _)| i).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let partition = Partition::from_labels(&stabs.iter().collect::<Vec<_>>());
    let is_congruence = is_congruence(q, &partition);
    Ok(SigmaRelation { partition, is_congruence })
}

/// `π_Q`, the orbit partition of Dis.
pub fn pi(q: &FiniteQuandle) -> Congruence {
    q.orbit_partition()
}

fn require_faithful(q: &FiniteQuandle) -> Result<(), CongruenceError> {
    if q.is_faithful() {
        Ok(())
    } else {
        Err(CongruenceError::Unsupported("needs a faithful quandle".into()))
    }
}

/// Abelian: `Dis_α` abelian.
pub fn is_abelian_cong(q: &FiniteQuandle, alpha: &Congruence) -> Result<bool, CongruenceError> {
    require_faithful(q)?;
    Ok(dis_alpha(q, alpha)?.is_abelian())
}

/// Central: `Dis_α ≤ Z(Dis Q)` and `α ≤ σ_Q`.
pub fn is_central_cong(q: &FiniteQuandle, alpha: &Congruence) -> Result<bool, CongruenceError> {
    require_faithful(q)?;
    let da = dis_alpha(q, alpha)?;
    let dis = q.dis()?;
    let central = da.generators().iter().all(|h| dis.generators().iter().all(|g| h.compose(g) == g.compose(h)));
    Ok(central && alpha.le(&sigma(q)?.partition))
}

/// `Dis_α` commutes with every element of LMlt.
pub fn is_lmlt_centralized(q: &FiniteQuandle, alpha: &Congruence) -> Result<bool, CongruenceError> {
    let da = dis_alpha(q, alpha)?;
    Ok(da.generators().iter().all(|h| q.left_translations().iter().all(|l| h.compose(l) == l.compose(h))))
}

/// `Dis_α ≤ Dis^α` and `[Dis, Dis^α] ≤ Dis_α`.
pub fn displacement_sandwich_holds(q: &FiniteQuandle, alpha: &Congruence) -> Result<bool, CongruenceError> {
    let lower = dis_alpha(q, alpha)?;
    let upper = dis_upper_alpha(q, alpha)?;
    if !lower.is_subgroup_of(&upper) {
        return Ok(false);
    }
    let dis = q.dis()?;
    Ok(dis
        .generators()
        .iter()
        .all(|g| upper.elements().iter().all(|h| lower.contains(&crate::permgroup::commutator(g, h)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{affine, affine_cyclic, affine_from_polynomial, projection};

    #[test]
    fn cg_empty_is_discrete() {
        let q = affine_cyclic(5, 2).unwrap();
        assert!(cg(&q, &[]).is_discrete());
        assert!(cg(&q, &[(0, 3)]).is_full());
        assert_eq!(lattice_shape(&q).unwrap(), LatticeShape::Simple);
    }

    #[test]
    fn product_is_fan_with_two_proper() {
        let q = FiniteQuandle::direct_product(&affine_cyclic(3, -1).unwrap(), &affine_cyclic(5, 2).unwrap());
        let lat = all_congruences(&q).unwrap();
        assert_eq!(lat.proper().len(), 2);
        assert_eq!(lat.shape(), LatticeShape::ReducibleFan);
    }

    #[test]
    fn scalar_affine_over_f3_squared() {
        let q = affine(&[3, 3], &[vec![2, 0], vec![0, 2]]).unwrap();
        let lat = all_congruences(&q).unwrap();
        assert_eq!(lat.proper().len(), 4);
        assert_eq!(lat.shape(), LatticeShape::ReducibleFan);
    }

    #[test]
    fn square_of_linear_polynomial_is_si_chain() {
        let q = affine_from_polynomial(3, &[-2, 1], 2).unwrap();
        assert_eq!(q.size(), 9);
        let lat = all_congruences(&q).unwrap();
        assert_eq!(lat.len(), 3);
        assert_eq!(lat.shape(), LatticeShape::SiChain);
    }

    #[test]
    fn factor_by_full_is_trivial() {
        let q = affine_cyclic(7, 3).unwrap();
        assert_eq!(factor(&q, &Partition::full(7)).unwrap().size(), 1);
    }

    #[test]
    fn affine_gamma_is_discrete() {
        let q = affine_cyclic(7, 3).unwrap();
        assert!(gamma(&q).unwrap().is_discrete());
        assert!(zeta(&q).unwrap().is_discrete() || q.dis().unwrap().is_abelian());
    }

    #[test]
    fn zero_is_abelian_and_central() {
        let q = affine_cyclic(5, 2).unwrap();
        let z = Partition::discrete(5);
        assert!(is_abelian_cong(&q, &z).unwrap());
        assert!(is_central_cong(&q, &z).unwrap());
        assert!(is_abelian_cong(&projection(2), &Partition::full(2)).is_err());
    }

    #[test]
    fn trivial_orbit_and_cnorm() {
        let q = affine_cyclic(5, 2).unwrap();
        let triv = PermGroup::trivial(5);
        assert!(orbit_cong(&q, &triv).unwrap().is_discrete());
        assert_eq!(cnorm_cong(&q, &triv).unwrap(), q.lambda_cong());
        assert!(orbit_cong(&q, q.dis().unwrap()).unwrap().is_full());
    }
}
