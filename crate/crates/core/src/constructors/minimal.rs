//! Complete digraphs minus a cycle cover: the minimally strong subgraph
//! `(2, n-2)`-arc-connected digraphs.
//!
//! `M` is a set of vertex-disjoint cycles (2-cycles allowed) covering at
//! least `n - 1` vertices; `D = K_n - M`. For every pair `{x, y}` the packing
//! below has `n - 2` parts. Most vertices `u` contribute the part
//! `{ux, xu, uy, yu}`; the few vertices adjacent to `x` or `y` in `M` are
//! absorbed by a case-specific handful of parts.

use std::fmt;
use std::str::FromStr;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::packing::Packing;

use super::cycle_arcs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    /// Each cycle as a vertex sequence of length at least 2.
    pub cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    /// Checks lengths, range, disjointness and coverage of at least `n - 1`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for c in &self.cycles {
            if c.len() < 2 {
                return Err(Error::InvalidCover(format!(
                    "cycle {c:?} is shorter than 2"
                )));
            }
            for &v in c {
                if v >= n {
                    return Err(Error::InvalidCover(format!(
                        "vertex {v} out of range for order {n}"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidCover(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        let covered = seen.iter().filter(|&&s| s).count();
        if covered + 1 < n {
            return Err(Error::InvalidCover(format!(
                "covers {covered} < {} vertices",
                n - 1
            )));
        }
        Ok(())
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.cycles.iter().flat_map(|c| cycle_arcs(c)).collect()
    }
}

impl FromStr for CycleCover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = s
            .split(',')
            .map(|c| {
                c.split('-')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidCover(format!("not a vertex id: `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycleCover { cycles })
    }
}

impl fmt::Display for CycleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .cycles
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join("-"))
            .collect();
        f.write_str(&text.join(","))
    }
}

/// The complete digraph on `n` vertices minus the arcs of `cover`.
pub fn minimal_graph(n: usize, cover: &CycleCover) -> Result<Digraph> {
    cover.validate(n)?;
    let m = cover.arcs();
    Ok(Digraph::complete(n).spanning_subgraph(|a| !m.contains(&a)))
}

/// Whether `D` is a complete digraph minus a nonempty cycle cover of at
/// least `n - 1` vertices.
pub fn recognize_minimal_2_nminus2(d: &Digraph) -> bool {
    cover_of(d).is_some()
}

/// The deleted cycle cover of `D`, each cycle starting at its smallest
/// vertex, cycles ordered by that vertex.
fn cover_of(d: &Digraph) -> Option<CycleCover> {
    let n = d.n();
    let missing = d.complement();
    if missing.arc_count() == 0 {
        return None;
    }
    if (0..n).any(|v| missing.out_degree(v) > 1 || missing.in_degree(v) > 1) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] || missing.out_degree(start) == 0 {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            match missing.out_neighbors(v).first() {
                Some(&w) => v = w,
                None => return None,
            }
        }
        if v != start {
            return None;
        }
        cycles.push(cyc);
    }
    let cover = CycleCover { cycles };
    cover.validate(n).ok().map(|_| cover)
}

/// An `(n-2)`-part packing for the pair `S` in a recognised digraph.
pub fn minimal_packing(d: &Digraph, s: &VertexSet) -> Result<Packing> {
    let cover = cover_of(d).ok_or_else(|| {
        Error::Precondition("digraph is not a complete digraph minus a cycle cover".into())
    })?;
    if s.len() != 2 {
        return Err(Error::InvalidVertexSet(format!("{s} is not a pair")));
    }
    let n = d.n();
    let mut succ = vec![None; n];
    let mut pred = vec![None; n];
    let mut len = vec![0; n];
    for c in &cover.cycles {
        for (i, &v) in c.iter().enumerate() {
            succ[v] = Some(c[(i + 1) % c.len()]);
            pred[v] = Some(c[(i + c.len() - 1) % c.len()]);
            len[v] = c.len();
        }
    }
    let ctx = Ctx { succ, pred, len };
    let (x, y) = (s.members()[0], s.members()[1]);
    let (special, used) = ctx.parts(x, y);
    let mut parts = special;
    for u in (0..n).filter(|u| !used.contains(u) && *u != x && *u != y) {
        parts.push(vec![(u, x), (x, u), (u, y), (y, u)]);
    }
    let packing = Packing::new(s.clone(), parts);
    packing.ensure_valid(d)?;
    if packing.len() + 2 != n {
        return Err(Error::Certificate(format!(
            "{} parts, expected {}",
            packing.len(),
            n - 2
        )));
    }
    Ok(packing)
}

struct Ctx {
    succ: Vec<Option<usize>>,
    pred: Vec<Option<usize>>,
    len: Vec<usize>,
}

type Parts = Vec<Vec<(usize, usize)>>;

impl Ctx {
    fn s(&self, v: usize) -> usize {
        self.succ[v].expect("covered vertex")
    }

    fn p(&self, v: usize) -> usize {
        self.pred[v].expect("covered vertex")
    }

    fn same_cycle(&self, x: usize, y: usize) -> bool {
        let mut v = x;
        for _ in 0..self.len[x] {
            if v == y {
                return true;
            }
            v = self.s(v);
        }
        false
    }

    /// Case-specific parts and the non-terminal vertices they consume.
    fn parts(&self, x: usize, y: usize) -> (Parts, Vec<usize>) {
        // Order so that x is the "richer" endpoint: uncovered < digon < longer.
        let (x, y) = if self.len[x] < self.len[y] {
            (y, x)
        } else {
            (x, y)
        };
        let (lx, ly) = (self.len[x], self.len[y]);
        if ly == 0 {
            // y uncovered.
            return if lx == 2 {
                (vec![vec![(x, y), (y, x)]], vec![self.s(x)])
            } else {
                let (u3, u4) = (self.p(x), self.s(x));
                (
                    vec![
                        vec![(x, y), (y, x)],
                        vec![(x, u3), (u3, u4), (u4, x), (y, u3), (u3, y)],
                    ],
                    vec![u3, u4],
                )
            };
        }
        if self.same_cycle(x, y) {
            return self.same_cycle_parts(x, y);
        }
        match (lx, ly) {
            (2, 2) => {
                let (u, v) = (self.s(x), self.s(y));
                (
                    vec![
                        vec![(x, y), (y, x)],
                        vec![(x, v), (v, x), (v, u), (u, v), (u, y), (y, u)],
                    ],
                    vec![u, v],
                )
            }
            (_, 2) => {
                // x on a longer cycle, y on a 2-cycle with u.
                let u = self.s(y);
                let (u3, u4) = (self.p(x), self.s(x));
                (
                    vec![
                        vec![(x, y), (y, x)],
                        vec![(x, u3), (u3, u4), (u4, x), (y, u3), (u3, y)],
                        vec![(y, u4), (u4, y), (x, u), (u, x), (u, u4), (u4, u)],
                    ],
                    vec![u, u3, u4],
                )
            }
            _ => {
                let (u1, u2) = (self.p(x), self.s(x));
                let (u3, u4) = (self.p(y), self.s(y));
                (
                    vec![
                        vec![(x, y), (y, x)],
                        vec![(x, u1), (u1, u2), (u2, x), (y, u2), (u2, y)],
                        vec![(y, u3), (u3, u4), (u4, y), (x, u3), (u3, x)],
                        vec![(x, u4), (u4, x), (y, u1), (u1, y), (u1, u4), (u4, u1)],
                    ],
                    vec![u1, u2, u3, u4],
                )
            }
        }
    }

    fn same_cycle_parts(&self, x: usize, y: usize) -> (Parts, Vec<usize>) {
        let t = self.len[x];
        if t == 2 {
            return (Vec::new(), Vec::new());
        }
        let (x, y) = if self.s(y) == x { (y, x) } else { (x, y) };
        if self.s(x) == y {
            // Adjacent: x -> y in M.
            let u3 = self.s(y);
            let mut parts = vec![vec![(y, x), (x, u3), (u3, y)]];
            let mut used = vec![u3];
            if t >= 4 {
                let ut = self.p(x);
                parts.push(vec![(u3, x), (x, ut), (ut, u3), (ut, y), (y, ut)]);
                used.push(ut);
            }
            return (parts, used);
        }
        let (a, b) = (self.s(x), self.p(x));
        let (c, d) = (self.s(y), self.p(y));
        let mut parts = vec![vec![(x, y), (y, x)], vec![(y, a), (a, x), (x, b), (b, y)]];
        if c != b {
            parts.push(vec![(x, c), (c, x), (c, y), (y, b), (b, c)]);
        }
        if d != a {
            parts.push(vec![(x, d), (d, x), (y, d), (d, a), (a, y)]);
        }
        (parts, vec![a, b, c, d])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{lambda_k_exact, SolverConfig};
    use itertools::Itertools;

    fn cover(s: &str) -> CycleCover {
        s.parse().unwrap()
    }

    #[test]
    fn cover_text_round_trip() {
        let c = cover("0-1,2-3-4");
        assert_eq!(c.cycles, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(c.to_string(), "0-1,2-3-4");
        assert!("0-x".parse::<CycleCover>().is_err());
    }

    #[test]
    fn graph_building_and_validation() {
        assert_eq!(
            minimal_graph(5, &cover("0-1,2-3-4")).unwrap().arc_count(),
            15
        );
        assert!(matches!(
            minimal_graph(4, &cover("0-1")),
            Err(Error::InvalidCover(_))
        ));
        assert!(minimal_graph(4, &cover("0-1,1-2")).is_err());
        assert!(minimal_graph(4, &cover("0")).is_err());
        assert!(minimal_graph(3, &cover("0-3")).is_err());
    }

    #[test]
    fn recognition() {
        assert!(!recognize_minimal_2_nminus2(&Digraph::complete(4)));
        let d = minimal_graph(4, &cover("0-1-2-3")).unwrap();
        assert!(recognize_minimal_2_nminus2(&d));
        let shared_tail = Digraph::complete(4).spanning_subgraph(|a| a != (0, 1) && a != (0, 2));
        assert!(!recognize_minimal_2_nminus2(&shared_tail));
        let path = Digraph::complete(4).spanning_subgraph(|a| a != (0, 1) && a != (1, 2));
        assert!(!recognize_minimal_2_nminus2(&path));
    }

    #[test]
    fn four_cycle_has_lambda_two() {
        let d = minimal_graph(4, &cover("0-1-2-3")).unwrap();
        assert_eq!(d.arc_count(), 8);
        assert_eq!(
            lambda_k_exact(&d, 2, &SolverConfig::default())
                .unwrap()
                .value,
            2
        );
    }

    /// Every cover shape up to order 8 and every pair gets `n - 2` parts.
    #[test]
    fn packings_for_many_cover_shapes() {
        let shapes = [
            (4, "0-1-2-3"),
            (4, "0-1,2-3"),
            (4, "0-1-2"),
            (5, "0-1-2-3-4"),
            (5, "0-1,2-3-4"),
            (5, "0-1,2-3"),
            (5, "0-1-2-3"),
            (6, "0-1-2,3-4-5"),
            (6, "0-1-2-3-4"),
            (6, "0-1-2-3-4-5"),
            (7, "0-1,2-3,4-5"),
            (7, "0-1-2-3,4-5-6"),
            (8, "0-1-2-3-4-5-6-7"),
            (8, "0-1-2-3-4-5-6"),
            (8, "0-2-4-6,1-3,5-7"),
        ];
        for (n, c) in shapes {
            let d = minimal_graph(n, &cover(c)).unwrap();
            for (x, y) in (0..n).tuple_combinations() {
                let s = VertexSet::new(vec![x, y], n).unwrap();
                let p = minimal_packing(&d, &s).unwrap_or_else(|e| panic!("{c} {s}: {e}"));
                assert_eq!(p.len(), n - 2);
            }
        }
    }
}
