//! Reduction instances showing that deciding `λ_S(D) >= ℓ` is hard, built
//! from a weak 2-linkage instance `(D, s1, t1, s2, t2)` in four stages:
//!
//! 1. `D'`: add `x`, `y` and the arcs `t1x, xs1, t2y, ys2, xs2, s2x, yt1, t1y`.
//! 2. `D''`: split every vertex `u` of `D` into `u- -> u+`.
//! 3. `D'''`: add `ℓ - 2` subdivided copies of the 2-cycle `xyx`.
//! 4. `D''''`: add `k - 2` satellites, each tied to `x` by `ℓ` subdivided
//!    2-cycles.
//!
//! Fresh vertices always take the next free ids in construction order.

use std::fmt;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Dprime,
    Ddouble,
    Dtriple,
    Dquad,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Dprime => "D'",
            Stage::Ddouble => "D''",
            Stage::Dtriple => "D'''",
            Stage::Dquad => "D''''",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub digraph: Digraph,
    pub s: VertexSet,
    /// Source terminals `(s1, t1, s2, t2)` in the original digraph.
    pub source_terminals: [usize; 4],
    /// Their images: unchanged in `D'`, `(s1-, t1+, s2-, t2+)` after splitting.
    pub terminal_images: [usize; 4],
    pub x: usize,
    pub y: usize,
    /// `x_1, ..., x_{k-2}`.
    pub satellites: Vec<usize>,
    /// Order of the source digraph.
    pub source_order: usize,
    pub stage: Stage,
}

impl GadgetInstance {
    /// Sidecar lines `name: vertex-id`.
    pub fn sidecar(&self) -> String {
        let names: [&str; 4] = if self.stage == Stage::Dprime {
            ["s1", "t1", "s2", "t2"]
        } else {
            ["s1-", "t1+", "s2-", "t2+"]
        };
        let mut out = String::new();
        for (name, v) in names.iter().zip(self.terminal_images) {
            out.push_str(&format!("{name}: {v}\n"));
        }
        out.push_str(&format!("x: {}\ny: {}\n", self.x, self.y));
        for (i, v) in self.satellites.iter().enumerate() {
            out.push_str(&format!("x{}: {v}\n", i + 1));
        }
        out
    }

    /// The split copy of the source digraph inside `D''`: vertices `u-`,
    /// `u+` and their arcs, renumbered so that `u- = u` and `u+ = n + u`.
    /// Weak linkages here from `s1-` to `t1+` and `s2-` to `t2+` are what
    /// `λ_S(D'') >= 2` is equivalent to.
    pub fn split_source(&self) -> Result<(Digraph, [(usize, usize); 2])> {
        if self.stage == Stage::Dprime {
            return Err(Error::WrongStage {
                expected: "D'' or later",
                got: self.stage.name(),
            });
        }
        let n = self.source_order;
        let map = |v: usize| -> Option<usize> {
            if v < n {
                Some(v)
            } else if v >= n + 2 && v < 2 * n + 2 {
                Some(v - 2)
            } else {
                None
            }
        };
        let arcs = self
            .digraph
            .arcs()
            .iter()
            .filter_map(|&(u, v)| Some((map(u)?, map(v)?)))
            .collect();
        let t = self
            .terminal_images
            .map(|v| map(v).expect("terminal lies in the split copy"));
        Ok((
            Digraph::from_valid(2 * n, arcs),
            [(t[0], t[1]), (t[2], t[3])],
        ))
    }
}

/// `D'`: fresh `x = n`, `y = n + 1` with the eight linking arcs; `S = {x, y}`.
pub fn build_dprime(
    d: &Digraph,
    s1: usize,
    t1: usize,
    s2: usize,
    t2: usize,
) -> Result<GadgetInstance> {
    let n = d.n();
    let terms = [s1, t1, s2, t2];
    if let Some(&v) = terms.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    for i in 0..4 {
        if terms[i + 1..].contains(&terms[i]) {
            return Err(Error::InvalidTerminals(format!(
                "{terms:?} are not distinct"
            )));
        }
    }
    let (x, y) = (n, n + 1);
    let mut arcs = d.arcs().to_vec();
    arcs.extend([
        (t1, x),
        (x, s1),
        (t2, y),
        (y, s2),
        (x, s2),
        (s2, x),
        (y, t1),
        (t1, y),
    ]);
    Ok(GadgetInstance {
        digraph: Digraph::from_valid(n + 2, arcs),
        s: VertexSet::new(vec![x, y], n + 2)?,
        source_terminals: terms,
        terminal_images: terms,
        x,
        y,
        satellites: Vec::new(),
        source_order: n,
        stage: Stage::Dprime,
    })
}

/// `D''`: each source vertex `u` becomes `u- = u` and `u+ = n + 2 + u`.
pub fn split_vertices(inst: &GadgetInstance) -> Result<GadgetInstance> {
    expect_stage(inst, Stage::Dprime)?;
    let n = inst.source_order;
    let plus = |u: usize| n + 2 + u;
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|u| (u, plus(u))).collect();
    // Heads stay on u- (= u); tails in the source digraph move to u+.
    arcs.extend(
        inst.digraph
            .arcs()
            .iter()
            .map(|&(u, v)| (if u < n { plus(u) } else { u }, v)),
    );
    let [s1, t1, s2, t2] = inst.source_terminals;
    Ok(GadgetInstance {
        digraph: Digraph::from_valid(2 * n + 2, arcs),
        s: inst.s.clone(),
        terminal_images: [s1, plus(t1), s2, plus(t2)],
        stage: Stage::Ddouble,
        ..inst.clone()
    })
}

/// `D'''`: `ℓ - 2` copies of `x -> w -> y -> w' -> x` with fresh `w, w'`.
/// `ℓ = 2` returns the input unchanged.
pub fn add_xy_cycles(inst: &GadgetInstance, ell: usize) -> Result<GadgetInstance> {
    expect_stage(inst, Stage::Ddouble)?;
    if ell < 2 {
        return Err(Error::InvalidParameter(format!(
            "ell = {ell} must be at least 2"
        )));
    }
    if ell == 2 {
        return Ok(inst.clone());
    }
    let mut n = inst.digraph.n();
    let mut arcs = inst.digraph.arcs().to_vec();
    for _ in 0..ell - 2 {
        arcs.extend(subdivided_digon(inst.x, inst.y, &mut n));
    }
    Ok(GadgetInstance {
        digraph: Digraph::from_valid(n, arcs),
        s: VertexSet::new(inst.s.members().to_vec(), n)?,
        stage: Stage::Dtriple,
        ..inst.clone()
    })
}

/// `D''''`: `k - 2` satellites `x_i`, each joined to `x` by `ℓ` subdivided
/// 2-cycles; `S = {x, y, x_1, ..., x_{k-2}}`. `k = 2` returns the input.
pub fn extend_terminals(inst: &GadgetInstance, k: usize, ell: usize) -> Result<GadgetInstance> {
    if !(inst.stage == Stage::Dtriple || (inst.stage == Stage::Ddouble && ell == 2)) {
        return Err(Error::WrongStage {
            expected: "D''' (or D'' when ell = 2)",
            got: inst.stage.name(),
        });
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be at least 2"
        )));
    }
    if ell < 2 {
        return Err(Error::InvalidParameter(format!(
            "ell = {ell} must be at least 2"
        )));
    }
    if k == 2 {
        return Ok(inst.clone());
    }
    let mut n = inst.digraph.n();
    let mut arcs = inst.digraph.arcs().to_vec();
    let mut satellites = Vec::new();
    for _ in 0..k - 2 {
        let sat = n;
        n += 1;
        satellites.push(sat);
        for _ in 0..ell {
            arcs.extend(subdivided_digon(inst.x, sat, &mut n));
        }
    }
    let mut members = inst.s.members().to_vec();
    members.extend(&satellites);
    Ok(GadgetInstance {
        digraph: Digraph::from_valid(n, arcs),
        s: VertexSet::new(members, n)?,
        satellites,
        stage: Stage::Dquad,
        ..inst.clone()
    })
}

/// All four stages for `(k, ℓ)`.
pub fn build_pipeline(
    d: &Digraph,
    terminals: [usize; 4],
    k: usize,
    ell: usize,
) -> Result<GadgetInstance> {
    let [s1, t1, s2, t2] = terminals;
    let inst = split_vertices(&build_dprime(d, s1, t1, s2, t2)?)?;
    let inst = add_xy_cycles(&inst, ell)?;
    extend_terminals(&inst, k, ell)
}

fn subdivided_digon(a: usize, b: usize, next: &mut usize) -> [(usize, usize); 4] {
    let (w1, w2) = (*next, *next + 1);
    *next += 2;
    [(a, w1), (w1, b), (b, w2), (w2, a)]
}

fn expect_stage(inst: &GadgetInstance, stage: Stage) -> Result<()> {
    if inst.stage != stage {
        return Err(Error::WrongStage {
            expected: stage.name(),
            got: inst.stage.name(),
        });
    }
    Ok(())
}

/// Whether `D` has pairwise arc-disjoint paths `P_i` from `s_i` to `t_i`.
///
/// Backtracks over simple paths for all but the last pair and finishes with
/// a reachability test in the remaining arcs. `s_i = t_i` is satisfied by
/// the empty path.
pub fn weak_linkage_bruteforce(
    d: &Digraph,
    pairs: &[(usize, usize)],
    threshold: usize,
) -> Result<bool> {
    if d.arc_count() > threshold {
        return Err(Error::OracleThreshold {
            arcs: d.arc_count(),
            threshold,
        });
    }
    for &(s, t) in pairs {
        for v in [s, t] {
            if v >= d.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: d.n(),
                });
            }
        }
    }
    let mut used = vec![false; d.arc_count()];
    Ok(link(d, pairs, &mut used))
}

fn link(d: &Digraph, pairs: &[(usize, usize)], used: &mut [bool]) -> bool {
    let Some((&(s, t), rest)) = pairs.split_first() else {
        return true;
    };
    if rest.is_empty() {
        return reachable(d, s, t, used);
    }
    let mut on_path = vec![false; d.n()];
    on_path[s] = true;
    paths(d, s, t, rest, used, &mut on_path)
}

fn paths(
    d: &Digraph,
    v: usize,
    t: usize,
    rest: &[(usize, usize)],
    used: &mut [bool],
    on_path: &mut [bool],
) -> bool {
    if v == t {
        return link(d, rest, used);
    }
    let arcs = d.arcs();
    let start = arcs.partition_point(|&(u, _)| u < v);
    for i in start..arcs.len() {
        let (u, w) = arcs[i];
        if u != v {
            break;
        }
        if used[i] || on_path[w] {
            continue;
        }
        used[i] = true;
        on_path[w] = true;
        let found = paths(d, w, t, rest, used, on_path);
        used[i] = false;
        on_path[w] = false;
        if found {
            return true;
        }
    }
    false
}

fn reachable(d: &Digraph, s: usize, t: usize, used: &[bool]) -> bool {
    let arcs = d.arcs();
    let mut seen = vec![false; d.n()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        if v == t {
            return true;
        }
        let start = arcs.partition_point(|&(u, _)| u < v);
        for i in start..arcs.len() {
            let (u, w) = arcs[i];
            if u != v {
                break;
            }
            if !used[i] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{dicycle, standard_family, Family};
    use crate::solver::{decide_lambda_s, SolverConfig};

    #[test]
    fn dprime_shape() {
        let inst = build_dprime(&Digraph::empty(4), 0, 1, 2, 3).unwrap();
        assert_eq!((inst.digraph.n(), inst.digraph.arc_count()), (6, 8));
        assert_eq!(inst.digraph.out_neighbors(4), &[0, 2]);
        assert_eq!(inst.digraph.in_neighbors(4), &[1, 2]);
        assert!(build_dprime(&Digraph::empty(4), 0, 1, 0, 3).is_err());
        assert!(build_dprime(&Digraph::empty(4), 0, 1, 2, 4).is_err());
    }

    #[test]
    fn stage_arithmetic() {
        let d = dicycle(4);
        let p = build_dprime(&d, 0, 1, 2, 3).unwrap();
        let dd = split_vertices(&p).unwrap();
        assert_eq!(dd.digraph.n(), 2 * 4 + 2);
        assert_eq!(dd.digraph.arc_count(), 4 + 4 + 8);
        for u in 0..4 {
            let inside: Vec<_> = dd
                .digraph
                .out_neighbors(u)
                .iter()
                .filter(|&&w| w >= 6)
                .collect();
            assert_eq!(inside, vec![&(6 + u)]);
        }
        assert_eq!(dd.terminal_images, [0, 7, 2, 9]);
        assert_eq!(add_xy_cycles(&dd, 2).unwrap(), dd);
        let t = add_xy_cycles(&dd, 4).unwrap();
        assert_eq!(t.digraph.n(), dd.digraph.n() + 4);
        assert_eq!(t.digraph.arc_count(), dd.digraph.arc_count() + 8);
        let q = extend_terminals(&dd, 3, 2).unwrap();
        assert_eq!(q.digraph.n(), dd.digraph.n() + 5);
        assert_eq!(q.digraph.arc_count(), dd.digraph.arc_count() + 8);
        assert_eq!(q.s.len(), 3);
        assert_eq!(extend_terminals(&t, 2, 4).unwrap(), t);
        assert!(matches!(split_vertices(&dd), Err(Error::WrongStage { .. })));
        assert!(add_xy_cycles(&dd, 1).is_err());
        assert!(extend_terminals(&dd, 3, 3).is_err());
    }

    #[test]
    fn sidecar_lists_every_named_vertex() {
        let q = build_pipeline(&dicycle(4), [0, 1, 2, 3], 4, 2).unwrap();
        let text = q.sidecar();
        assert!(text.starts_with("s1-: 0\nt1+: 7\ns2-: 2\nt2+: 9\nx: 4\ny: 5\nx1: 10\n"));
        assert_eq!(text.lines().count(), 8);
    }

    #[test]
    fn linkage_oracle() {
        let c3 = standard_family(Family::BidirectedCycle, 3, None).unwrap();
        assert!(weak_linkage_bruteforce(&c3, &[(0, 1), (1, 0)], 14).unwrap());
        assert!(!weak_linkage_bruteforce(&dicycle(3), &[(0, 1), (0, 2)], 14).unwrap());
        assert!(
            weak_linkage_bruteforce(&Digraph::complete(3), &[(0, 1), (1, 2), (2, 0)], 14).unwrap()
        );
        assert!(weak_linkage_bruteforce(&dicycle(3), &[(1, 1), (0, 2)], 14).unwrap());
        assert!(weak_linkage_bruteforce(&Digraph::complete(4), &[(0, 1)], 11).is_err());
    }

    #[test]
    fn gadget_matches_linkage_on_a_dicycle() {
        let cfg = SolverConfig::default();
        for terms in [[0, 1, 2, 3], [0, 2, 1, 3], [1, 0, 3, 2]] {
            let inst = split_vertices(
                &build_dprime(&dicycle(4), terms[0], terms[1], terms[2], terms[3]).unwrap(),
            )
            .unwrap();
            let (split, pairs) = inst.split_source().unwrap();
            let linked = weak_linkage_bruteforce(&split, &pairs, 64).unwrap();
            let packs = decide_lambda_s(&inst.digraph, &inst.s, 2, &cfg)
                .unwrap()
                .is_some();
            assert_eq!(linked, packs, "{terms:?}");
        }
    }
}
