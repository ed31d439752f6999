//! Brute-force verification oracle for `λ_S`.
//!
//! Assigns each arc to "unused" or one of `p` parts and validates every part
//! at the leaves. It shares nothing with the candidate enumeration or the
//! packing search. Pruning only uses facts every valid assignment satisfies:
//! once all out-arcs of a vertex are assigned, each part containing that
//! vertex (and each part at all, if it is a terminal) must have one of them.

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::packing::spans_strong_subgraph;

/// `λ_S(D)` by exhaustive arc-to-part assignment.
pub fn oracle_lambda_s(d: &Digraph, s: &VertexSet, threshold: usize) -> Result<usize> {
    if d.arc_count() > threshold {
        return Err(Error::OracleThreshold {
            arcs: d.arc_count(),
            threshold,
        });
    }
    if let Some(&v) = s.members().iter().find(|&&v| v >= d.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: d.n(),
        });
    }
    let mut p = 0;
    while p < d.arc_count() && packs(d, s, p + 1) {
        p += 1;
    }
    Ok(p)
}

struct Assign<'a> {
    d: &'a Digraph,
    s: &'a VertexSet,
    p: usize,
    /// 0 = unused, j in 1..=p = part j.
    label: Vec<usize>,
}

fn packs(d: &Digraph, s: &VertexSet, p: usize) -> bool {
    let mut a = Assign {
        d,
        s,
        p,
        label: vec![0; d.arc_count()],
    };
    a.go(0, 0)
}

impl Assign<'_> {
    fn go(&mut self, i: usize, max_used: usize) -> bool {
        let arcs = self.d.arcs();
        if i > 0 {
            let tail = arcs[i - 1].0;
            if i == arcs.len() || arcs[i].0 != tail {
                // Out-arcs of every vertex up to `tail` are now fixed.
                if !self.closed_vertices_ok(tail) {
                    return false;
                }
            }
        }
        if i == arcs.len() {
            return self.leaf_ok();
        }
        // Parts are interchangeable: a new part index is only opened in order.
        for j in 0..=(max_used + 1).min(self.p) {
            self.label[i] = j;
            if self.go(i + 1, max_used.max(j)) {
                return true;
            }
        }
        self.label[i] = 0;
        false
    }

    fn closed_vertices_ok(&self, upto: usize) -> bool {
        let arcs = self.d.arcs();
        let n = self.d.n();
        let decided = arcs.partition_point(|&(u, _)| u <= upto);
        // has_out[j][v], touches[j][v] over decided arcs
        let mut has_out = vec![vec![false; n]; self.p + 1];
        let mut touches = vec![vec![false; n]; self.p + 1];
        for (idx, &(u, v)) in arcs[..decided].iter().enumerate() {
            let j = self.label[idx];
            if j > 0 {
                has_out[j][u] = true;
                touches[j][u] = true;
                touches[j][v] = true;
            }
        }
        for j in 1..=self.p {
            for v in 0..=upto.min(n - 1) {
                let needs = self.s.contains(v) || touches[j][v];
                if needs && !has_out[j][v] {
                    return false;
                }
            }
        }
        true
    }

    fn leaf_ok(&self) -> bool {
        let arcs = self.d.arcs();
        (1..=self.p).all(|j| {
            let part: Vec<_> = arcs
                .iter()
                .zip(&self.label)
                .filter(|(_, &l)| l == j)
                .map(|(&a, _)| a)
                .collect();
            !part.is_empty() && spans_strong_subgraph(self.d.n(), &part, self.s.members())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::dicycle;

    fn vs(m: &[usize], n: usize) -> VertexSet {
        VertexSet::new(m.to_vec(), n).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(
            oracle_lambda_s(&Digraph::complete(3), &vs(&[0, 1], 3), 14).unwrap(),
            2
        );
        assert_eq!(
            oracle_lambda_s(&dicycle(4), &vs(&[0, 2], 4), 14).unwrap(),
            1
        );
        assert_eq!(
            oracle_lambda_s(&Digraph::complete(4), &vs(&[0, 1, 2, 3], 4), 14).unwrap(),
            2
        );
        assert_eq!(
            oracle_lambda_s(&Digraph::complete(4), &vs(&[0, 1], 4), 14).unwrap(),
            3
        );
        assert_eq!(
            oracle_lambda_s(&Digraph::empty(3), &vs(&[0, 1], 3), 14).unwrap(),
            0
        );
    }

    #[test]
    fn threshold_is_enforced() {
        assert!(matches!(
            oracle_lambda_s(&Digraph::complete(4), &vs(&[0, 1], 4), 11),
            Err(Error::OracleThreshold {
                arcs: 12,
                threshold: 11
            })
        ));
    }
}
