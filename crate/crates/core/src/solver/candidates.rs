//! Enumeration of inclusion-minimal arc sets that span a strong subgraph
//! containing a terminal set.
//!
//! Search state is `(included, excluded)`. While `included` is not yet
//! strong on its vertex set plus the terminals, take the set `R` reachable
//! from the first terminal; any completion must use an arc leaving `R` (or,
//! once `R` covers everything, an arc entering the co-reachable set). The
//! branches "take the i-th such arc and exclude the earlier ones" partition
//! the completions, so every minimal set is reached exactly once.

use super::mask::{ArcMask, Indexed};
use crate::error::{Error, Result};

pub(crate) struct Enumerator<'a> {
    g: &'a Indexed,
    terminals: u64,
    root: u64,
    cap: usize,
    node_budget: u64,
    nodes: u64,
    found: Vec<ArcMask>,
}

impl<'a> Enumerator<'a> {
    pub fn run(
        g: &'a Indexed,
        terminals: &[usize],
        cap: usize,
        node_budget: u64,
    ) -> Result<Vec<ArcMask>> {
        let tmask = terminals.iter().fold(0u64, |acc, &t| acc | 1 << t);
        let mut e = Enumerator {
            g,
            terminals: tmask,
            root: 1 << terminals[0],
            cap,
            node_budget,
            nodes: 0,
            found: Vec::new(),
        };
        e.search(ArcMask::default(), ArcMask::default(), tmask)?;
        let mut found = e.found;
        found.sort_by_cached_key(|m| {
            let idx: Vec<usize> = m.iter().collect();
            (idx.len(), idx)
        });
        Ok(found)
    }

    fn search(&mut self, inc: ArcMask, exc: ArcMask, want: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::TooLarge(format!(
                "candidate search exceeded {} nodes",
                self.node_budget
            )));
        }
        let g = self.g;
        let allowed = g.all.minus(exc);
        let fwd = g.reach(self.root, &allowed, true);
        let bwd = g.reach(self.root, &allowed, false);
        let scc = fwd & bwd;
        if want & !scc != 0 {
            return Ok(());
        }
        let free = allowed.minus(inc);

        let reached = g.reach(self.root, &inc, true);
        if want & !reached != 0 {
            let mut leaving = ArcMask::default();
            for v in bits(reached) {
                for i in g.out[v].and(free).iter() {
                    let h = g.arcs[i].1;
                    if reached >> h & 1 == 0 && scc >> h & 1 == 1 {
                        leaving.insert(i);
                    }
                }
            }
            return self.branch(inc, exc, want, leaving, true);
        }
        let coreached = g.reach(self.root, &inc, false);
        if want & !coreached != 0 {
            let mut entering = ArcMask::default();
            for v in bits(coreached) {
                for i in g.inn[v].and(free).iter() {
                    let t = g.arcs[i].0;
                    if coreached >> t & 1 == 0 && scc >> t & 1 == 1 {
                        entering.insert(i);
                    }
                }
            }
            return self.branch(inc, exc, want, entering, false);
        }
        if self.is_minimal(&inc) {
            if self.found.len() >= self.cap {
                return Err(Error::CandidateCap { cap: self.cap });
            }
            self.found.push(inc);
        }
        Ok(())
    }

    fn branch(
        &mut self,
        inc: ArcMask,
        exc: ArcMask,
        want: u64,
        arcs: ArcMask,
        forward: bool,
    ) -> Result<()> {
        let mut exc = exc;
        for i in arcs.iter() {
            let (t, h) = self.g.arcs[i];
            let mut next = inc;
            next.insert(i);
            let grown = want | 1 << if forward { h } else { t };
            self.search(next, exc, grown)?;
            exc.insert(i);
        }
        Ok(())
    }

    /// No single arc can be dropped while the terminals still share a strong
    /// component. That is equivalent to inclusion-minimality, because any
    /// strong proper subset containing the terminals survives in `inc - e`
    /// for some arc `e`.
    fn is_minimal(&self, inc: &ArcMask) -> bool {
        inc.iter().all(|i| {
            let mut rest = *inc;
            rest.remove(i);
            !self.g.co_strong(self.terminals, &rest)
        })
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}
