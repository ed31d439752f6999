//! Exact strong subgraph arc-connectivity.
//!
//! `λ_S(D)` is the largest number of pairwise arc-disjoint strong subgraphs
//! of `D` that each contain `S`; `λ_k(D)` is its minimum over all `k`-sets.
//! Any such family can be shrunk part by part to inclusion-minimal arc sets
//! without losing disjointness, so the solver enumerates only minimal
//! candidates and runs a branch-and-bound set packing over them.

mod candidates;
pub(crate) mod mask;
mod oracle;

use itertools::Itertools;
use rayon::prelude::*;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::packing::Packing;
use candidates::Enumerator;
use mask::{ArcMask, Indexed};

pub use oracle::oracle_lambda_s;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Upper limit on the number of minimal candidates per terminal set.
    pub candidate_cap: usize,
    /// Largest arc count the assignment oracle accepts.
    pub oracle_threshold: usize,
    /// Search-node limit for the candidate enumeration.
    pub node_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            candidate_cap: 50_000,
            oracle_threshold: 14,
            node_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaResult {
    pub value: usize,
    /// The terminal set attaining the value.
    pub witness: VertexSet,
    /// Exactly `value` parts.
    pub certificate: Packing,
}

/// All inclusion-minimal arc sets `P` such that `(endpoints(P), P)` is strong
/// and contains `S`, sorted by size then lexicographically.
pub fn minimal_candidates(
    d: &Digraph,
    s: &VertexSet,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<(usize, usize)>>> {
    check_terminals(d, s)?;
    let g = Indexed::new(d)?;
    let found = Enumerator::run(&g, s.members(), cfg.candidate_cap, cfg.node_budget)?;
    Ok(found
        .iter()
        .map(|m| m.iter().map(|i| g.arcs[i]).collect())
        .collect())
}

/// `λ_S(D)` with a maximum-size certificate.
pub fn lambda_s_exact(d: &Digraph, s: &VertexSet, cfg: &SolverConfig) -> Result<LambdaResult> {
    let packing = pack(d, s, cfg, usize::MAX)?;
    Ok(LambdaResult {
        value: packing.len(),
        witness: s.clone(),
        certificate: packing,
    })
}

/// Decides `λ_S(D) >= ell`, returning an `ell`-part certificate on success.
/// The search stops as soon as `ell` parts are packed.
pub fn decide_lambda_s(
    d: &Digraph,
    s: &VertexSet,
    ell: usize,
    cfg: &SolverConfig,
) -> Result<Option<Packing>> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let packing = pack(d, s, cfg, ell)?;
    Ok((packing.len() >= ell).then_some(packing))
}

/// `λ_k(D)`: the minimum of `λ_S` over all `k`-subsets, ties broken towards
/// the lexicographically smallest `S`.
///
/// With more than one rayon worker all subsets are solved in parallel and
/// reduced to the same witness the sequential scan would pick.
pub fn lambda_k_exact(d: &Digraph, k: usize, cfg: &SolverConfig) -> Result<LambdaResult> {
    let n = d.n();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let (witness, certificate) = if rayon::current_num_threads() > 1 {
        let combos: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let solved = combos
            .into_par_iter()
            .map(|combo| {
                let s = VertexSet::new(combo, n)?;
                let packing = pack(d, &s, cfg, usize::MAX)?;
                Ok((s, packing))
            })
            .collect::<Result<Vec<_>>>()?;
        // min_by_key keeps the first minimum, i.e. the smallest S.
        solved
            .into_iter()
            .min_by_key(|(_, p)| p.len())
            .expect("at least one k-subset exists")
    } else {
        let mut best: Option<(VertexSet, Packing)> = None;
        for combo in (0..n).combinations(k) {
            let s = VertexSet::new(combo, n)?;
            // Only a strictly smaller value can replace the incumbent, so the
            // search may stop one part above it.
            let stop_at = best.as_ref().map_or(usize::MAX, |(_, p)| p.len() + 1);
            let packing = pack(d, &s, cfg, stop_at)?;
            if best.as_ref().is_none_or(|(_, p)| packing.len() < p.len()) {
                let zero = packing.is_empty();
                best = Some((s, packing));
                if zero {
                    break;
                }
            }
        }
        best.expect("at least one k-subset exists")
    };
    Ok(LambdaResult {
        value: certificate.len(),
        witness,
        certificate,
    })
}

/// Decides `λ_k(D) >= ell` by deciding every `k`-subset.
pub fn lambda_k_at_least(d: &Digraph, k: usize, ell: usize, cfg: &SolverConfig) -> Result<bool> {
    let n = d.n();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if ell == 0 {
        return Ok(true);
    }
    if d.degree_cap() < ell {
        return Ok(false);
    }
    for combo in (0..n).combinations(k) {
        let s = VertexSet::new(combo, n)?;
        if decide_lambda_s(d, &s, ell, cfg)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_terminals(d: &Digraph, s: &VertexSet) -> Result<()> {
    if let Some(&v) = s.members().iter().find(|&&v| v >= d.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: d.n(),
        });
    }
    Ok(())
}

/// Packs up to `target` parts (fewer if impossible), maximal otherwise.
fn pack(d: &Digraph, s: &VertexSet, cfg: &SolverConfig, target: usize) -> Result<Packing> {
    check_terminals(d, s)?;
    let g = Indexed::new(d)?;
    let cap = s
        .members()
        .iter()
        .map(|&v| g.out[v].count().min(g.inn[v].count()))
        .min()
        .unwrap_or(0);
    let target = target.min(cap);
    if target == 0 {
        return Ok(Packing::empty(s.clone()));
    }
    let cands = Enumerator::run(&g, s.members(), cfg.candidate_cap, cfg.node_budget)?;
    let mut by_arc = vec![Vec::new(); g.arcs.len()];
    for (ci, c) in cands.iter().enumerate() {
        for a in c.iter() {
            by_arc[a].push(ci as u32);
        }
    }
    let tails = s
        .members()
        .iter()
        .fold(ArcMask::default(), |m, &v| m.or(g.out[v]));
    let mut bb = Packer {
        cands: &cands,
        by_arc: &by_arc,
        out: s.members().iter().map(|&v| g.out[v]).collect(),
        inn: s.members().iter().map(|&v| g.inn[v]).collect(),
        tails,
        target,
        cur: Vec::new(),
        best: Vec::new(),
    };
    bb.search(ArcMask::default());
    let parts = bb
        .best
        .iter()
        .map(|&ci| cands[ci].iter().map(|i| g.arcs[i]).collect())
        .collect();
    Ok(Packing::new(s.clone(), parts))
}

struct Packer<'a> {
    cands: &'a [ArcMask],
    by_arc: &'a [Vec<u32>],
    out: Vec<ArcMask>,
    inn: Vec<ArcMask>,
    /// Arcs whose tail is a terminal; every part uses at least one per terminal.
    tails: ArcMask,
    target: usize,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl Packer<'_> {
    /// Returns true once `target` parts are packed.
    fn search(&mut self, blocked: ArcMask) -> bool {
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
            if self.best.len() >= self.target {
                return true;
            }
        }
        // Each further part needs a free out- and in-arc at every terminal.
        let room = self
            .out
            .iter()
            .zip(&self.inn)
            .map(|(o, i)| o.minus(blocked).count().min(i.minus(blocked).count()))
            .min()
            .unwrap_or(0);
        if self.cur.len() + room <= self.best.len() {
            return false;
        }
        let Some(pivot) = self.tails.minus(blocked).first() else {
            return false;
        };
        for &ci in &self.by_arc[pivot] {
            let c = self.cands[ci as usize];
            if c.intersects(&blocked) {
                continue;
            }
            self.cur.push(ci as usize);
            let done = self.search(blocked.or(c));
            self.cur.pop();
            if done {
                return true;
            }
        }
        self.search(blocked.or(ArcMask::single(pivot)))
    }
}
