//! Classification drivers: sizes `pq` and `4p`, the `8p` search, principal
//! quandles over extraspecial and special p-groups, and a brute-force oracle.

mod brute;
mod extraspecial;
mod fourp;
mod pq;
mod search8p;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::congruence::CongruenceError;
use crate::groups::{index_autos, ConcreteGroup, GroupAutomorphism, GroupError};
use crate::lss::LssError;
use crate::partition::Partition;
use crate::quandle::{are_isomorphic, FiniteQuandle, QuandleError, QuandleReport};

pub use brute::brute_enumerate_connected;
pub use extraspecial::{classify_extraspecial2_principal, classify_special_p};
pub use fourp::{classify_4p, f_lambda};
pub use pq::{classify_pq, f_d};
pub use search8p::{fix_size_cyclic, search_8p, Search8pReport, SearchCase, MAX_8P_PRIME};

pub const CLASSIFICATION_SCHEMA_VERSION: u32 = 1;
/// Largest quandle size the pq and 4p drivers accept.
pub const MAX_CLASSIFY_SIZE: u64 = 150;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("candidate set is not closed under conjugation")]
    NotClosed,
    #[error("infeasible (k = {k}, p = {p}): {reason}")]
    Infeasible { k: usize, p: u64, reason: String },
    #[error("consistency check failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Lss(#[from] LssError),
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), ClassifyError> {
    if cond {
        Ok(())
    } else {
        Err(ClassifyError::Assertion(what()))
    }
}

/// One conjugacy orbit of candidate automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct AutOrbit {
    /// Index of the first member in the candidate list.
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

/// Orbits of `ψ·f = ψ f ψ⁻¹` (ψ in `autos`) on `candidates`.
pub fn aut_conjugacy_orbits(
    g: &ConcreteGroup,
    candidates: &[GroupAutomorphism],
    autos: &[GroupAutomorphism],
) -> Result<Vec<AutOrbit>, ClassifyError> {
    let index = index_autos(candidates);
    let inverses: Vec<GroupAutomorphism> = autos.par_iter().map(|a| a.inverse(g)).collect();
    let mut orbit_of = vec![usize::MAX; candidates.len()];
    let mut out = Vec::new();
    for i in 0..candidates.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let f = &candidates[i];
        let images: Vec<Option<usize>> = autos
            .par_iter()
            .zip(&inverses)
            .map(|(psi, psi_inv)| index.get(&f.conjugate_by(g, psi, psi_inv)).copied())
            .collect();
        if images.iter().any(Option::is_none) {
            return Err(ClassifyError::NotClosed);
        }
        let centralizer_order = images.iter().filter(|&&x| x == Some(i)).count();
        let mut members: Vec<usize> = images.into_iter().flatten().collect();
        members.sort_unstable();
        members.dedup();
        ensure(members.len() * centralizer_order == autos.len(), || {
            format!(
                "orbit {} times centralizer {} differs from |Aut| = {}",
                members.len(),
                centralizer_order,
                autos.len()
            )
        })?;
        for &m in &members {
            orbit_of[m] = out.len();
        }
        out.push(AutOrbit { representative: i, members, centralizer_order });
    }
    Ok(out)
}

/// Two automorphisms give isomorphic quandles when conjugate in Aut(G).
pub fn iso_by_theorem(
    g: &ConcreteGroup,
    autos: &[GroupAutomorphism],
    f1: &GroupAutomorphism,
    f2: &GroupAutomorphism,
) -> bool {
    autos.par_iter().any(|psi| psi.compose(g, f1) == f2.compose(g, psi))
}

/// Orbit-counting data for one candidate family.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCount {
    pub group: String,
    pub aut_order: usize,
    pub candidates: usize,
    pub orbit_sizes: Vec<usize>,
    pub centralizer_orders: Vec<usize>,
    /// `Σ |Aut| / |C(f_i)|` over the orbit representatives.
    pub orbit_sum: usize,
    pub closed_form: Option<usize>,
}

impl OrbitCount {
    fn new(group: &str, aut_order: usize, candidates: usize, orbits: &[AutOrbit], closed_form: Option<usize>) -> Self {
        let centralizer_orders: Vec<usize> = orbits.iter().map(|o| o.centralizer_order).collect();
        OrbitCount {
            group: group.into(),
            aut_order,
            candidates,
            orbit_sizes: orbits.iter().map(|o| o.members.len()).collect(),
            orbit_sum: centralizer_orders.iter().map(|c| aut_order / c).sum(),
            centralizer_orders,
            closed_form,
        }
    }

    pub fn identity_holds(&self) -> bool {
        self.orbit_sum == self.candidates
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedQuandle {
    pub id: String,
    pub recipe: String,
    pub family: String,
    pub group: Option<String>,
    pub automorphism: Option<Vec<usize>>,
    pub centralizer_order: Option<usize>,
    pub report: QuandleReport,
    #[serde(skip)]
    pub quandle: FiniteQuandle,
}

impl ClassifiedQuandle {
    fn new(id: String, recipe: String, family: &str, quandle: FiniteQuandle) -> Self {
        ClassifiedQuandle {
            id,
            recipe,
            family: family.into(),
            group: None,
            automorphism: None,
            centralizer_order: None,
            report: QuandleReport::new(&quandle),
            quandle,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub schema_version: u32,
    pub kind: String,
    pub parameters: Vec<u64>,
    pub reducible: Vec<ClassifiedQuandle>,
    pub subdirectly_irreducible: Vec<ClassifiedQuandle>,
    pub counts: BTreeMap<String, usize>,
    pub orbit_counts: Vec<OrbitCount>,
    pub cross_checks: BTreeMap<String, bool>,
}

impl ClassificationResult {
    fn new(kind: &str, parameters: Vec<u64>) -> Self {
        ClassificationResult {
            schema_version: CLASSIFICATION_SCHEMA_VERSION,
            kind: kind.into(),
            parameters,
            reducible: Vec::new(),
            subdirectly_irreducible: Vec::new(),
            counts: BTreeMap::new(),
            orbit_counts: Vec::new(),
            cross_checks: BTreeMap::new(),
        }
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.cross_checks.values().all(|&b| b) && self.orbit_counts.iter().all(OrbitCount::identity_holds)
    }

    fn check(&mut self, name: &str, ok: bool) {
        let e = self.cross_checks.entry(name.to_string()).or_insert(true);
        *e &= ok;
    }

    pub fn all_quandles(&self) -> impl Iterator<Item = &ClassifiedQuandle> {
        self.reducible.iter().chain(&self.subdirectly_irreducible)
    }
}

pub fn pairwise_non_isomorphic(qs: &[&FiniteQuandle]) -> bool {
    let pairs: Vec<(usize, usize)> = (0..qs.len()).flat_map(|i| (i + 1..qs.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().all(|&(i, j)| !are_isomorphic(qs[i], qs[j]))
}

/// Partition of `qs` into table-isomorphism classes.
pub fn iso_partition(qs: &[&FiniteQuandle]) -> Partition {
    let mut reps: Vec<usize> = Vec::new();
    let mut labels = vec![0usize; qs.len()];
    for i in 0..qs.len() {
        match reps.iter().position(|&r| are_isomorphic(qs[r], qs[i])) {
            Some(c) => labels[i] = c,
            None => {
                labels[i] = reps.len();
                reps.push(i);
            }
        }
    }
    Partition::from_labels(&labels)
}

/// Removes isomorphic duplicates, keeping first occurrences.
pub fn dedup_isomorphic(qs: Vec<FiniteQuandle>) -> Vec<FiniteQuandle> {
    let mut out: Vec<FiniteQuandle> = Vec::new();
    for q in qs {
        if !out.iter().any(|r| are_isomorphic(r, &q)) {
            out.push(q);
        }
    }
    out
}

/// `f` has no nontrivial fixed element on an elementary abelian group and
/// leaves no proper nontrivial subgroup invariant.
pub fn acts_irreducibly_fpf(g: &ConcreteGroup, f: &GroupAutomorphism) -> bool {
    let e = g.identity();
    (0..g.order()).filter(|&x| x != e).all(|x| {
        let mut orbit = vec![x];
        let mut y = f.apply(g, x);
        if y == x {
            return false;
        }
        while y != x {
            orbit.push(y);
            y = f.apply(g, y);
        }
        g.subgroup(&orbit).len() == g.order()
    })
}

/// Sample of each orbit (up to `per_orbit` members) with orbit labels.
fn orbit_sample(orbits: &[AutOrbit], per_orbit: usize) -> Vec<(usize, usize)> {
    orbits.iter().enumerate().flat_map(|(o, orb)| orb.members.iter().take(per_orbit).map(move |&m| (m, o))).collect()
}

/// Table-iso partition of quandles built from a sample of candidates agrees
/// with the conjugacy-orbit partition.
fn theorem_matches_table(
    orbits: &[AutOrbit],
    per_orbit: usize,
    build: impl Fn(usize) -> Result<FiniteQuandle, ClassifyError> + Sync,
) -> Result<bool, ClassifyError> {
    let sample = orbit_sample(orbits, per_orbit);
    let qs: Vec<FiniteQuandle> =
        sample.par_iter().map(|&(m, _)| build(m)).collect::<Result<Vec<_>, ClassifyError>>()?;
    let refs: Vec<&FiniteQuandle> = qs.iter().collect();
    let by_table = iso_partition(&refs);
    let by_orbit = Partition::from_labels(&sample.iter().map(|&(_, o)| o).collect::<Vec<_>>());
    Ok(by_table == by_orbit)
}

fn matrix_string(m: &crate::groups::matrix::MatFp) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}
