//! Concrete finite groups: semidirect products `Z_p^m ⋊ C` and Cayley tables.

mod auts;
mod build;
pub mod matrix;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::permgroup::PermGroup;
pub use auts::*;
pub use build::*;
use matrix::{decode_vec, encode_vec, MatError, MatFp};

/// Largest Cayley table accepted.
pub const MAX_TABLE_ORDER: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("group of order {order} exceeds the limit {limit}")]
    SizeExceeded { order: usize, limit: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("subgroup is not invariant under the automorphism")]
    NotInvariant,
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("not a normal subgroup")]
    NotNormal,
    #[error("operation needs a group of family {0}")]
    WrongFamily(&'static str),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

/// Central factors of an extraspecial 2-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Factor8 {
    D8,
    Q8,
}

/// Which paper family a group came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupFamily {
    Gpq { p: u64, q: u64 },
    Gk { p: u64, k: u64 },
    ElemAbelianCyclic { m: usize, p: u64 },
    Extraspecial2 { factors: Vec<Factor8> },
    Heisenberg { p: u64 },
    Other,
}

/// Group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl CayleyTable {
    /// Validates identity and inverses. Associativity is checked by the caller
    /// against a generating set.
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeExceeded { order: n, limit: MAX_TABLE_ORDER });
        }
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::NotAGroup("malformed table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x * n + y] as usize == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("{x} has no inverse")))?;
            if table[y * n + x] as usize != identity {
                return Err(GroupError::NotAGroup(format!("{x} has no two-sided inverse")));
            }
            inv[x] = y as u32;
        }
        Ok(CayleyTable { n, table, inv, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        CayleyTable::new(n, table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// `Z_p^dim ⋊ C`, elements `(v, c)` meaning `v·c`, indexed `c·p^dim + code(v)`.
#[derive(Clone, Debug)]
pub struct SemidirectVec {
    p: u64,
    dim: usize,
    vcount: usize,
    complement: CayleyTable,
    comp_gens: Vec<usize>,
    rho: Vec<MatFp>,
    /// act[c * vcount + v] = code of ρ(c)v
    act: Vec<u32>,
}

impl SemidirectVec {
    /// `rho_gens[i]` is the action of complement generator `comp_gens[i]`.
    fn new(
        p: u64,
        dim: usize,
        complement: CayleyTable,
        comp_gens: &[usize],
        rho_gens: &[MatFp],
    ) -> Result<Self, GroupError> {
        let nc = complement.order();
        let mut rho: Vec<Option<MatFp>> = vec![None; nc];
        rho[complement.identity()] = Some(MatFp::identity(p, dim));
        let mut queue = VecDeque::from([complement.identity()]);
        while let Some(c) = queue.pop_front() {
            let rc = rho[c].clone().unwrap();
            for (g, rg) in comp_gens.iter().zip(rho_gens) {
                let d = complement.mul(c, *g);
                let rd = rc.mul(rg);
                match &rho[d] {
                    Some(existing) if *existing != rd => {
                        return Err(GroupError::NotAGroup("action is not a homomorphism on the complement".into()))
                    }
                    Some(_) => {}
                    None => {
                        rho[d] = Some(rd);
                        queue.push_back(d);
                    }
                }
            }
        }
        let rho: Vec<MatFp> = rho
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| GroupError::NotAGroup("complement generators do not generate".into()))?;
        let vcount = (p as usize).pow(dim as u32);
        let mut act = vec![0u32; nc * vcount];
        for c in 0..nc {
            for v in 0..vcount {
                act[c * vcount + v] = encode_vec(p, &rho[c].mul_vec(&decode_vec(p, dim, v))) as u32;
            }
        }
        Ok(SemidirectVec { p, dim, vcount, complement, comp_gens: comp_gens.to_vec(), rho, act })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector_count(&self) -> usize {
        self.vcount
    }

    pub fn complement(&self) -> &CayleyTable {
        &self.complement
    }

    pub fn complement_generators(&self) -> &[usize] {
        &self.comp_gens
    }

    pub fn rho(&self, c: usize) -> &MatFp {
        &self.rho[c]
    }

    fn act(&self, c: usize, v: usize) -> usize {
        self.act[c * self.vcount + v] as usize
    }
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    SemidirectVec(SemidirectVec),
    CayleyTable(CayleyTable),
}

/// A finite group with a designated generating list.
#[derive(Clone, Debug)]
pub struct ConcreteGroup {
    kind: GroupKind,
    generators: Vec<usize>,
    family: GroupFamily,
    name: String,
}

impl ConcreteGroup {
    /// Builds a Cayley-table group; associativity is verified with Light's test
    /// against `generators`, which must generate.
    pub fn from_table(
        table: CayleyTable,
        generators: Vec<usize>,
        family: GroupFamily,
        name: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let n = table.order();
        for &g in &generators {
            for x in 0..n {
                for y in 0..n {
                    if table.mul(table.mul(x, y), g) != table.mul(x, table.mul(y, g)) {
                        return Err(GroupError::NotAGroup(format!("associativity fails at ({x}, {y}, {g})")));
                    }
                }
            }
        }
        let g = ConcreteGroup { kind: GroupKind::CayleyTable(table), generators, family, name: name.into() };
        if g.subgroup(&g.generators).len() != n {
            return Err(GroupError::NotAGroup("generators do not generate".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_semidirect(
        sd: SemidirectVec,
        comp_gens: &[usize],
        family: GroupFamily,
        name: impl Into<String>,
    ) -> Self {
        let mut generators: Vec<usize> = comp_gens.iter().map(|&c| c * sd.vcount).collect();
        for i in 0..sd.dim {
            let mut e = vec![0u64; sd.dim];
            e[i] = 1;
            generators.push(encode_vec(sd.p, &e));
        }
        ConcreteGroup { kind: GroupKind::SemidirectVec(sd), generators, family, name: name.into() }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn semidirect(&self) -> Option<&SemidirectVec> {
        match &self.kind {
            GroupKind::SemidirectVec(sd) => Some(sd),
            GroupKind::CayleyTable(_) => None,
        }
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        match &self.kind {
            GroupKind::SemidirectVec(sd) => sd.vcount * sd.complement.order(),
            GroupKind::CayleyTable(t) => t.order(),
        }
    }

    pub fn identity(&self) -> usize {
        match &self.kind {
            GroupKind::SemidirectVec(sd) => sd.complement.identity() * sd.vcount,
            GroupKind::CayleyTable(t) => t.identity(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            GroupKind::SemidirectVec(sd) => {
                let (c1, v1) = (a / sd.vcount, a % sd.vcount);
                let (c2, v2) = (b / sd.vcount, b % sd.vcount);
                sd.complement.mul(c1, c2) * sd.vcount + sd.add(v1, sd.act(c1, v2))
            }
            GroupKind::CayleyTable(t) => t.mul(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.kind {
            GroupKind::SemidirectVec(sd) => {
                let (c, v) = (a / sd.vcount, a % sd.vcount);
                let ci = sd.complement.inv(c);
                ci * sd.vcount + sd.neg(sd.act(ci, v))
            }
            GroupKind::CayleyTable(t) => t.inv(a),
        }
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Element `(v, c)` of a semidirect group.
    pub fn element(&self, v: &[u64], c: usize) -> usize {
        let sd = self.semidirect().expect("semidirect group");
        c * sd.vcount + encode_vec(sd.p, v)
    }

    /// `(v, c)` for a semidirect group.
    pub fn split(&self, a: usize) -> Option<(Vec<u64>, usize)> {
        self.semidirect().map(|sd| (decode_vec(sd.p, sd.dim, a % sd.vcount), a / sd.vcount))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x))).collect()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let id = self.identity();
        seen[id] = true;
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut current: Vec<usize> = gens.to_vec();
        loop {
            let sub = self.subgroup(&current);
            let mut member = vec![false; self.order()];
            for &x in &sub {
                member[x] = true;
            }
            let extra = self
                .generators
                .iter()
                .flat_map(|&g| current.iter().map(move |&x| (g, x)))
                .map(|(g, x)| self.conj(g, x))
                .find(|&y| !member[y]);
            match extra {
                Some(y) => current.push(y),
                None => return sub,
            }
        }
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let g = &self.generators;
        let comms: Vec<usize> =
            g.iter().flat_map(|&a| g.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        self.normal_closure(&comms)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in set {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        !set.is_empty() && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in set {
            member[x] = true;
        }
        self.is_subgroup(set) && self.generators.iter().all(|&g| set.iter().all(|&x| member[self.conj(g, x)]))
    }

    /// Left cosets `gH`, numbered by increasing minimal representative.
    pub fn left_cosets(&self, h: &[usize]) -> Cosets {
        let n = self.order();
        let mut label = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if label[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &x in h {
                label[self.mul(g, x)] = id;
            }
        }
        Cosets { label, reps }
    }

    /// Quotient by a normal subgroup as a Cayley table, with the projection map.
    pub fn quotient(&self, normal: &[usize]) -> Result<(ConcreteGroup, Vec<u32>), GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let cosets = self.left_cosets(normal);
        let m = cosets.reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in cosets.reps.iter().enumerate() {
            for (j, &b) in cosets.reps.iter().enumerate() {
                table[i * m + j] = cosets.label[self.mul(a, b)];
            }
        }
        let t = CayleyTable::new(m, table)?;
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| cosets.label[g] as usize).collect();
        gens.sort_unstable();
        gens.dedup();
        let q = ConcreteGroup::from_table(t, gens, GroupFamily::Other, format!("{}/N", self.name))?;
        Ok((q, cosets.label))
    }

    /// Regular Cayley-table copy of a permutation group.
    pub fn from_perm_group(g: &PermGroup, name: impl Into<String>) -> Result<Self, GroupError> {
        let n = g.order();
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeExceeded { order: n, limit: MAX_TABLE_ORDER });
        }
        let elems = g.elements();
        let mut table = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = g.index_of(&a.compose(b)).expect("closed") as u32;
            }
        }
        let gens = g.generators().iter().map(|x| g.index_of(x).unwrap()).collect();
        ConcreteGroup::from_table(CayleyTable::new(n, table)?, gens, GroupFamily::Other, name)
    }

    /// Cayley table copy (drops the semidirect structure).
    pub fn to_table(&self) -> Result<ConcreteGroup, GroupError> {
        let n = self.order();
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeExceeded { order: n, limit: MAX_TABLE_ORDER });
        }
        let table = (0..n * n).map(|i| self.mul(i / n, i % n) as u32).collect();
        ConcreteGroup::from_table(
            CayleyTable::new(n, table)?,
            self.generators.clone(),
            self.family.clone(),
            self.name.clone(),
        )
    }

    pub fn direct_product(a: &ConcreteGroup, b: &ConcreteGroup) -> Result<ConcreteGroup, GroupError> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeExceeded { order: n, limit: MAX_TABLE_ORDER });
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = (a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)) as u32;
            }
        }
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity()).collect();
        gens.extend(b.generators.iter().map(|&g| a.identity() * nb + g));
        ConcreteGroup::from_table(
            CayleyTable::new(n, table)?,
            gens,
            GroupFamily::Other,
            format!("{}x{}", a.name, b.name),
        )
    }

    /// Regular permutation representation (left multiplication).
    pub fn regular_perm_group(&self) -> PermGroup {
        let n = self.order();
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(|&g| crate::permgroup::Perm::from_images_unchecked((0..n).map(|x| self.mul(g, x) as u32).collect()))
            .collect();
        PermGroup::closure(n, &gens).expect("regular representation")
    }

    /// Every element as a word-free list of orders, used for fingerprints.
    pub fn order_statistics(&self) -> HashMap<usize, usize> {
        let mut out = HashMap::new();
        for x in 0..self.order() {
            *out.entry(self.element_order(x)).or_insert(0) += 1;
        }
        out
    }
}

/// Left coset decomposition.
#[derive(Clone, Debug)]
pub struct Cosets {
    /// coset number of each element
    pub label: Vec<u32>,
    /// minimal representative of each coset
    pub reps: Vec<usize>,
}

impl Cosets {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}
