//! Strictly simple and locally strictly simple quandles.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, prime_power};
use crate::congruence::{self, CongruenceError, MAX_LATTICE_SIZE};
use crate::permgroup::{commutator, Perm, PermGroup};
use crate::quandle::{are_isomorphic, FiniteQuandle};

/// Largest size handled by the subquandle oracle.
pub const MAX_ORACLE_SIZE: usize = 64;
/// Cap on the number of subquandles the oracle enumerates.
pub const MAX_SUBQUANDLES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LssError {
    #[error("size {size} exceeds the limit {limit}")]
    SizeExceeded { size: usize, limit: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

impl From<crate::quandle::QuandleError> for LssError {
    fn from(e: crate::quandle::QuandleError) -> Self {
        LssError::Congruence(e.into())
    }
}

type Mask = u64;

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

fn close(q: &FiniteQuandle, mut m: Mask) -> Mask {
    loop {
        let mut next = m;
        for a in bits(m) {
            for b in bits(m) {
                next |= 1 << q.op(a, b);
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// `Sg(a, b)` as bitmasks for every pair.
struct PairClosures {
    n: usize,
    sg: Vec<Mask>,
}

impl PairClosures {
    fn new(q: &FiniteQuandle) -> Self {
        let n = q.size();
        let mut sg = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = close(q, 1 << a | 1 << b);
                sg[a * n + b] = m;
                sg[b * n + a] = m;
            }
        }
        PairClosures { n, sg }
    }

    fn get(&self, a: usize, b: usize) -> Mask {
        self.sg[a * self.n + b]
    }

    fn strictly_simple(&self, m: Mask) -> bool {
        let v: Vec<usize> = bits(m).collect();
        v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| self.get(a, b) == m))
    }
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_subquandles(q: &FiniteQuandle, pc: &PairClosures) -> Result<Vec<Mask>, LssError> {
    let n = q.size();
    let full = full_mask(n);
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut frontier: Vec<Mask> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let m = pc.get(a, b);
            if seen.insert(m) {
                frontier.push(m);
            }
        }
    }
    while let Some(m) = frontier.pop() {
        if m == full {
            continue;
        }
        for x in 0..n {
            if m >> x & 1 == 0 {
                let c = close(q, m | 1 << x);
                if seen.insert(c) {
                    if seen.len() > MAX_SUBQUANDLES {
                        return Err(LssError::SizeExceeded { size: seen.len(), limit: MAX_SUBQUANDLES });
                    }
                    frontier.push(c);
                }
            }
        }
    }
    let mut out: Vec<Mask> = seen.into_iter().collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    Ok(out)
}

/// All subquandles with at least two elements (including `Q`), sorted by size.
pub fn all_subquandles(q: &FiniteQuandle) -> Result<Vec<Vec<usize>>, LssError> {
    if q.size() > MAX_ORACLE_SIZE {
        return Err(LssError::SizeExceeded { size: q.size(), limit: MAX_ORACLE_SIZE });
    }
    let pc = PairClosures::new(q);
    Ok(mask_subquandles(q, &pc)?.into_iter().map(|m| bits(m).collect()).collect())
}

/// `Sg(a, b) = Q` for all `a != b`.
pub fn is_strictly_simple(q: &FiniteQuandle) -> bool {
    let n = q.size();
    let reps: Vec<usize> = if q.is_connected() { vec![0] } else { (0..n).collect() };
    reps.iter().all(|&a| (0..n).filter(|&b| b != a).all(|b| q.sg(&[a, b]).len() == n))
}

/// Oracle: every proper subquandle is strictly simple.
pub fn is_lss_oracle(q: &FiniteQuandle) -> Result<bool, LssError> {
    if q.size() > MAX_ORACLE_SIZE {
        return Err(LssError::SizeExceeded { size: q.size(), limit: MAX_ORACLE_SIZE });
    }
    let pc = PairClosures::new(q);
    let full = full_mask(q.size());
    Ok(mask_subquandles(q, &pc)?.into_iter().filter(|&m| m != full).all(|m| pc.strictly_simple(m)))
}

/// Congruence criterion for connected non-simple quandles: some proper
/// congruence has a strictly simple factor and strictly simple blocks.
/// `None` when the criterion does not apply.
pub fn is_lss_shortcut(q: &FiniteQuandle) -> Result<Option<bool>, LssError> {
    if !q.is_connected() || q.size() > MAX_LATTICE_SIZE {
        return Ok(None);
    }
    let lat = congruence::all_congruences(q)?;
    let proper = lat.proper();
    if proper.is_empty() {
        return Ok(None);
    }
    for alpha in proper {
        if !is_strictly_simple(&congruence::factor(q, alpha)?) {
            continue;
        }
        let mut ok = true;
        for b in alpha.blocks() {
            if !is_strictly_simple(&q.subquandle(&b)?) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// LSS test: the oracle up to the oracle limit, the congruence criterion above it.
pub fn is_lss(q: &FiniteQuandle) -> Result<bool, LssError> {
    if q.size() <= MAX_ORACLE_SIZE {
        let oracle = is_lss_oracle(q)?;
        if q.size() <= MAX_LATTICE_SIZE {
            if let Some(s) = is_lss_shortcut(q)? {
                if s != oracle {
                    return Err(LssError::NotApplicable(format!(
                        "oracle ({oracle}) and congruence criterion ({s}) disagree"
                    )));
                }
            }
        }
        return Ok(oracle);
    }
    log::warn!("size {} above the oracle limit, using the congruence criterion alone", q.size());
    match is_lss_shortcut(q)? {
        Some(b) => Ok(b),
        None => Err(LssError::NotApplicable("congruence criterion needs a connected non-simple quandle".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaKind {
    One,
    Gamma,
    Zero,
    MeetZeroNonzero,
    Abelian,
    NotLss,
}

impl SigmaKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SigmaKind::One => "one",
            SigmaKind::Gamma => "gamma",
            SigmaKind::Zero => "zero",
            SigmaKind::MeetZeroNonzero => "meet_zero_nonzero",
            SigmaKind::Abelian => "abelian",
            SigmaKind::NotLss => "not_lss",
        }
    }
}

/// `LSS(p^m, q^n, σ)`: block size, factor size, and the position of σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LssClassLabel {
    pub block_size: usize,
    pub factor_size: usize,
    pub sigma_kind: SigmaKind,
}

impl LssClassLabel {
    pub fn is_lss_class(&self) -> bool {
        !matches!(self.sigma_kind, SigmaKind::Abelian | SigmaKind::NotLss)
    }
}

impl fmt::Display for LssClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sigma_kind {
            SigmaKind::Abelian | SigmaKind::NotLss => f.write_str(self.sigma_kind.as_str()),
            k => write!(f, "LSS({}, {}, {})", self.block_size, self.factor_size, k.as_str()),
        }
    }
}

pub fn lss_label(q: &FiniteQuandle) -> Result<LssClassLabel, LssError> {
    if !q.is_connected() {
        return Err(LssError::NotApplicable("quandle is not connected".into()));
    }
    let n = q.size();
    let gamma = congruence::gamma(q)?;
    if gamma.is_discrete() {
        return Ok(LssClassLabel { block_size: 1, factor_size: n, sigma_kind: SigmaKind::Abelian });
    }
    let not_lss = LssClassLabel { block_size: 0, factor_size: 0, sigma_kind: SigmaKind::NotLss };
    if gamma.is_full() || !is_lss(q)? {
        return Ok(not_lss);
    }
    if n <= MAX_LATTICE_SIZE && congruence::all_congruences(q)?.len() != 3 {
        return Ok(not_lss);
    }
    let block_size = gamma.block_sizes()[0];
    let factor_size = gamma.num_blocks();
    let sigma = congruence::sigma(q)?.partition;
    let sigma_kind = if sigma.is_full() {
        SigmaKind::One
    } else if sigma == gamma {
        SigmaKind::Gamma
    } else if sigma.is_discrete() {
        SigmaKind::Zero
    } else if sigma.meet(&gamma).is_discrete() {
        SigmaKind::MeetZeroNonzero
    } else {
        return Err(LssError::NotApplicable("σ is neither above γ nor meets it trivially".into()));
    };
    Ok(LssClassLabel { block_size, factor_size, sigma_kind })
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub label: LssClassLabel,
    pub clauses: Vec<Clause>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }
}

fn clause(out: &mut Vec<Clause>, name: &str, passed: bool, detail: impl Into<String>) {
    out.push(Clause { name: name.into(), passed, detail: detail.into() });
}

fn is_elementary_abelian(g: &PermGroup, p: u64) -> bool {
    g.is_abelian() && g.elements().iter().all(|x| x.pow(p as usize).is_identity())
}

/// `{g : [g, D] ⊆ N}`
fn center_mod(d: &PermGroup, n: &PermGroup) -> PermGroup {
    d.filter(|g| d.generators().iter().all(|h| n.contains(&commutator(g, h))))
}

/// Checks the structural conclusions attached to the label of `q`.
pub fn verify_structure(q: &FiniteQuandle) -> Result<StructureReport, LssError> {
    let label = lss_label(q)?;
    if !label.is_lss_class() {
        return Err(LssError::NotApplicable(format!("label is {label}")));
    }
    let (p, m) = prime_power(label.block_size as u64)
        .ok_or_else(|| LssError::NotApplicable("block size is not a prime power".into()))?;
    let (qq, nn) = prime_power(label.factor_size as u64)
        .ok_or_else(|| LssError::NotApplicable("factor size is not a prime power".into()))?;
    let gamma = congruence::gamma(q)?;
    let dis = q.dis()?;
    let g1 = dis.derived_subgroup();
    let g2 = dis.commutator_with(&g1);
    let dg = congruence::dis_alpha(q, &gamma)?;
    let mut cl = Vec::new();

    if q.size() <= MAX_LATTICE_SIZE {
        let lat = congruence::all_congruences(q)?;
        clause(
            &mut cl,
            "unique proper congruence is γ",
            lat.len() == 3 && lat.index_of(&gamma).is_some(),
            format!("{} congruences", lat.len()),
        );
    }
    let factor = congruence::factor(q, &gamma)?;
    clause(&mut cl, "factor strictly simple", is_strictly_simple(&factor), format!("|Q/γ| = {}", factor.size()));
    let block = q.subquandle(&gamma.block(0))?;
    clause(&mut cl, "blocks strictly simple", is_strictly_simple(&block), format!("|block| = {}", block.size()));
    clause(&mut cl, "factor has abelian displacement group", factor.dis()?.is_abelian(), "");

    if !q.is_faithful() {
        // projection blocks over an extraspecial 2-group
        let z = dis.center();
        let frattini_ok = dis.elements().iter().all(|x| z.contains(&x.pow(2)));
        clause(&mut cl, "blocks are projection quandles", block.is_projection() && block.size() == 2, "");
        clause(
            &mut cl,
            "Dis is extraspecial 2-group",
            p == 2
                && z.order() == 2
                && g1.same_as(&z)
                && frattini_ok
                && prime_power(dis.order() as u64).map(|x| x.0) == Some(2),
            format!("|Dis| = {}, |Z| = {}, |γ1| = {}", dis.order(), z.order(), g1.order()),
        );
        clause(&mut cl, "σ = 1", label.sigma_kind == SigmaKind::One, label.sigma_kind.as_str());
        return Ok(StructureReport { label, clauses: cl });
    }

    clause(&mut cl, "γ abelian", dg.is_abelian(), format!("|Dis_γ| = {}", dg.order()));
    clause(&mut cl, "γ2(Dis) ≤ Dis_γ", g2.is_subgroup_of(&dg), format!("|γ2| = {}", g2.order()));
    let dg_order_ok = prime_power(dg.order() as u64).is_some_and(|(pp, e)| pp == p && e >= m && e <= 2 * m);
    clause(
        &mut cl,
        "Dis_γ ≅ Z_p^(m+k), k ≤ m",
        dg_order_ok && is_elementary_abelian(&dg, p),
        format!("|Dis_γ| = {}", dg.order()),
    );

    if p == qq {
        let z = dis.center();
        let zeta = congruence::zeta(q)?;
        let dz = congruence::dis_alpha(q, &zeta)?;
        clause(&mut cl, "latin", q.is_latin(), "");
        clause(&mut cl, "γ ≤ σ", gamma.le(&congruence::sigma(q)?.partition), "");
        clause(&mut cl, "Z(Dis) = Dis_ζ", z.same_as(&dz), format!("|Z| = {}, |Dis_ζ| = {}", z.order(), dz.order()));
        clause(
            &mut cl,
            "Z(Dis) ≅ Z_p^m",
            z.order() == label.block_size && is_elementary_abelian(&z, p),
            format!("|Z| = {}", z.order()),
        );
        let stab = dis.stabilizer(0).map_err(crate::quandle::QuandleError::from)?;
        let meet_trivial = stab.elements().iter().all(|x| x.is_identity() || !z.contains(x));
        clause(
            &mut cl,
            "γ1(Dis) = Z(Dis) × Dis_a elementary abelian",
            g1.order() == z.order() * stab.order()
                && meet_trivial
                && z.is_subgroup_of(&g1)
                && stab.is_subgroup_of(&g1)
                && is_elementary_abelian(&g1, p),
            format!("|γ1| = {}, |Dis_a| = {}", g1.order(), stab.order()),
        );
        let frattini = dis.elements().iter().all(|x| g1.contains(&x.pow(p as usize)));
        clause(&mut cl, "Φ(Dis) = γ1(Dis)", frattini, "");
        clause(&mut cl, "n ≥ 2", nn >= 2, format!("n = {nn}"));
        return Ok(StructureReport { label, clauses: cl });
    }

    let z = dis.center();
    clause(&mut cl, "Z(Dis) = 1", z.is_trivial(), format!("|Z| = {}", z.order()));
    clause(&mut cl, "γ2(Dis) = Dis_γ", g2.same_as(&dg), format!("|γ2| = {}, |Dis_γ| = {}", g2.order(), dg.order()));
    let cent = dis.filter(|g| dg.generators().iter().all(|h| g.compose(h) == h.compose(g)));
    match label.sigma_kind {
        SigmaKind::One | SigmaKind::Gamma => {
            clause(&mut cl, "γ1(Dis) = γ2(Dis)", g1.same_as(&g2), format!("|γ1| = {}", g1.order()));
            clause(
                &mut cl,
                "|Dis| = |Dis_γ| q^n",
                dis.order() == dg.order() * label.factor_size,
                format!("|Dis| = {}", dis.order()),
            );
            let quotient_elem = dis.elements().iter().all(|x| dg.contains(&x.pow(qq as usize)))
                && dis.generators().iter().all(|a| dis.generators().iter().all(|b| dg.contains(&commutator(a, b))));
            clause(&mut cl, "Dis/Dis_γ ≅ Z_q^n", quotient_elem, "");
            clause(&mut cl, "action on Dis_γ faithful", cent.same_as(&dg), format!("|C(Dis_γ)| = {}", cent.order()));
            if m == 1 {
                clause(&mut cl, "Dis_γ ≅ Z_p^2", dg.order() == label.block_size * label.block_size, "");
            }
            if nn == 1 {
                clause(&mut cl, "γ ≤ σ", true, "");
            }
        }
        SigmaKind::Zero | SigmaKind::MeetZeroNonzero => {
            let k_order = dis.order() / dg.order();
            let zk = center_mod(dis, &dg);
            let kq = prime_power(k_order as u64);
            let extraspecial = kq.is_some_and(|(b, e)| b == qq && e == nn + 1)
                && zk.order() == qq as usize * dg.order()
                && g1.order() == zk.order()
                && g1.is_subgroup_of(&zk);
            clause(
                &mut cl,
                "Dis/Dis_γ extraspecial q-group",
                extraspecial,
                format!("|K| = {k_order}, |Z(K)| = {}", zk.order() / dg.order()),
            );
            let pm = label.block_size as u64;
            clause(&mut cl, "q ∣ p^m − 1", (pm - 1).is_multiple_of(qq), format!("p^m = {pm}"));
            clause(&mut cl, "n even", nn % 2 == 0, format!("n = {nn}"));
            if qq != 2 {
                let exp_q = dis.elements().iter().all(|x| dg.contains(&x.pow(qq as usize)));
                clause(&mut cl, "exp(K) = q", exp_q, "");
            }
            if m == 1 {
                clause(&mut cl, "σ = 0 and q = 2", label.sigma_kind == SigmaKind::Zero && qq == 2, "");
            }
            if label.sigma_kind == SigmaKind::Zero {
                clause(
                    &mut cl,
                    "action on Dis_γ faithful",
                    cent.same_as(&dg),
                    format!("|C(Dis_γ)| = {}", cent.order()),
                );
                if m == 1 && qq == 2 {
                    let k = factor.left_translation(0).order();
                    let orders: Vec<usize> = q.left_translations().iter().map(Perm::order).collect();
                    clause(&mut cl, "|L_a| = k for all a", orders.iter().all(|&o| o == k), format!("k = {k}"));
                    clause(&mut cl, "p ≡ 1 mod k", (p - 1) % k as u64 == 0, format!("p = {p}, k = {k}"));
                }
            }
            if dg.order() == label.block_size * label.block_size {
                clause(&mut cl, "latin", q.is_latin(), "");
                let mut sg_ok = true;
                for b in 0..q.size() {
                    if gamma.related(0, b) {
                        continue;
                    }
                    let s = q.sg(&[0, b]);
                    if s.len() != factor.size() || !are_isomorphic(&q.subquandle(&s)?, &factor) {
                        sg_ok = false;
                        break;
                    }
                }
                clause(&mut cl, "Sg(a, b) ≅ Q/γ for [a] ≠ [b]", sg_ok, "");
            }
        }
        _ => {}
    }
    Ok(StructureReport { label, clauses: cl })
}

/// Distinct prime factors of `n`.
pub fn prime_support(n: usize) -> Vec<u64> {
    factorize(n as u64).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{affine_cyclic, projection};

    #[test]
    fn projection_subquandles() {
        let subs = all_subquandles(&projection(3)).unwrap();
        assert_eq!(subs.len(), 4);
        assert!(is_strictly_simple(&projection(2)));
        assert!(!is_strictly_simple(&projection(3)));
    }

    #[test]
    fn simple_affine_strictly_simple() {
        let q = affine_cyclic(5, 2).unwrap();
        assert!(is_strictly_simple(&q));
        assert_eq!(all_subquandles(&q).unwrap(), vec![(0..5).collect::<Vec<_>>()]);
        let sq = FiniteQuandle::direct_product(&q, &q);
        assert!(!is_strictly_simple(&sq));
    }

    #[test]
    fn z8_not_lss() {
        let q = affine_cyclic(8, 3).unwrap();
        assert!(!is_lss_oracle(&q).unwrap());
    }
}
