use serde::Serialize;

use super::FiniteQuandle;
use crate::congruence::{self, MAX_LATTICE_SIZE};
use crate::lss;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct BlockStructure {
    pub num_blocks: usize,
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockStructure {
    fn of(p: &crate::partition::Partition) -> Self {
        BlockStructure { num_blocks: p.num_blocks(), block_sizes: p.block_sizes(), blocks: p.blocks() }
    }
}

/// Summary of the computed invariants of one quandle.
#[derive(Clone, Debug, Serialize)]
pub struct QuandleReport {
    pub schema_version: u32,
    pub size: usize,
    pub axioms: bool,
    pub connected: bool,
    pub latin: bool,
    pub faithful: bool,
    pub projection: bool,
    pub involutory: bool,
    pub simple: Option<bool>,
    pub strictly_simple: bool,
    pub lmlt_order: usize,
    pub dis_order: usize,
    pub congruence_count: Option<usize>,
    pub lattice_shape: Option<String>,
    pub gamma: Option<BlockStructure>,
    pub zeta: Option<BlockStructure>,
    pub sigma: Option<BlockStructure>,
    pub sigma_is_congruence: Option<bool>,
    pub lambda: BlockStructure,
    pub pi: BlockStructure,
    pub lss: Option<bool>,
    pub lss_label: Option<String>,
}

impl QuandleReport {
    pub fn new(q: &FiniteQuandle) -> Self {
        let lattice = if q.size() <= MAX_LATTICE_SIZE { congruence::all_congruences(q).ok() } else { None };
        let gamma = congruence::gamma(q).ok();
        let zeta = congruence::zeta(q).ok();
        let sigma = congruence::sigma(q).ok();
        let lss = if q.size() <= lss::MAX_ORACLE_SIZE || q.is_connected() { lss::is_lss(q).ok() } else { None };
        let lss_label = lss::lss_label(q).ok().map(|l| l.to_string());
        QuandleReport {
            schema_version: REPORT_SCHEMA_VERSION,
            size: q.size(),
            axioms: true,
            connected: q.is_connected(),
            latin: q.is_latin(),
            faithful: q.is_faithful(),
            projection: q.is_projection(),
            involutory: q.is_involutory(),
            simple: lattice.as_ref().map(|l| l.len() <= 2),
            strictly_simple: lss::is_strictly_simple(q),
            lmlt_order: q.lmlt().map(|g| g.order()).unwrap_or(0),
            dis_order: q.dis().map(|g| g.order()).unwrap_or(0),
            congruence_count: lattice.as_ref().map(|l| l.len()),
            lattice_shape: lattice.as_ref().map(|l| l.shape().as_str().to_string()),
            gamma: gamma.as_ref().map(BlockStructure::of),
            zeta: zeta.as_ref().map(BlockStructure::of),
            sigma: sigma.as_ref().map(|s| BlockStructure::of(&s.partition)),
            sigma_is_congruence: sigma.map(|s| s.is_congruence),
            lambda: BlockStructure::of(&q.lambda_cong()),
            pi: BlockStructure::of(&q.orbit_partition()),
            lss,
            lss_label,
        }
    }

    /// latin implies connected, connected with more than two points implies
    /// no projection, and the block structures have the right size.
    pub fn is_consistent(&self) -> bool {
        (!self.latin || self.connected)
            && (!self.connected || self.size <= 1 || !self.projection)
            && self.pi.block_sizes.iter().sum::<usize>() == self.size
            && (self.connected == (self.pi.num_blocks == 1))
            && (!self.latin || self.faithful || self.size <= 1)
    }
}
