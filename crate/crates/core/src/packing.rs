//! Packing certificates: pairwise arc-disjoint arc sets, each spanning a
//! strong subgraph that contains the terminal set.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::digraph::{reach, Digraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Packing {
    pub s: VertexSet,
    /// Each part sorted; parts kept in construction order.
    pub parts: Vec<Vec<(usize, usize)>>,
}

impl Packing {
    pub fn new(s: VertexSet, parts: Vec<Vec<(usize, usize)>>) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        Packing { s, parts }
    }

    pub fn empty(s: VertexSet) -> Self {
        Packing {
            s,
            parts: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn to_certificate(&self, n: usize) -> Certificate {
        Certificate {
            n,
            s: self.s.members().to_vec(),
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&(u, v)| [u, v]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self, n: usize) -> String {
        serde_json::to_string(&self.to_certificate(n)).expect("certificate serializes")
    }

    /// Returns the order recorded in the certificate alongside the packing.
    pub fn from_json(text: &str) -> Result<(usize, Packing)> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        cert.into_packing()
    }

    /// Fails with [`Error::Certificate`] unless the packing verifies against `d`.
    pub fn ensure_valid(&self, d: &Digraph) -> Result<()> {
        match check(d, self) {
            Ok(()) => Ok(()),
            Err(msg) => Err(Error::Certificate(msg)),
        }
    }
}

/// JSON wire form `{"n", "S", "parts": [[[u,v],...],...]}`.
#[derive(Clone, Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub parts: Vec<Vec<[usize; 2]>>,
}

impl Certificate {
    pub fn into_packing(self) -> Result<(usize, Packing)> {
        let s = VertexSet::new(self.s, self.n)?;
        let parts = self
            .parts
            .into_iter()
            .map(|p| p.into_iter().map(|[u, v]| (u, v)).collect())
            .collect();
        Ok((self.n, Packing::new(s, parts)))
    }
}

/// Checks every packing invariant against `d` without trusting the producer:
/// parts are nonempty, use only arcs of `d`, are pairwise arc-disjoint, and
/// each spans a strong subgraph containing all of `S`.
pub fn verify_packing(d: &Digraph, packing: &Packing) -> bool {
    check(d, packing).is_ok()
}

fn check(d: &Digraph, packing: &Packing) -> std::result::Result<(), String> {
    let n = d.n();
    if packing.s.members().iter().any(|&v| v >= n) {
        return Err("terminal out of range".into());
    }
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    for (i, part) in packing.parts.iter().enumerate() {
        if part.is_empty() {
            return Err(format!("part {i} is empty"));
        }
        for &(u, v) in part {
            if !d.has_arc(u, v) {
                return Err(format!("part {i} uses ({u},{v}) which is not an arc"));
            }
            if !used.insert((u, v)) {
                return Err(format!("arc ({u},{v}) appears twice (part {i})"));
            }
        }
        if !spans_strong_subgraph(n, part, packing.s.members()) {
            return Err(format!("part {i} is not a strong subgraph containing S"));
        }
    }
    Ok(())
}

/// `(endpoints(part), part)` is strong and contains `terminals`.
pub(crate) fn spans_strong_subgraph(
    n: usize,
    part: &[(usize, usize)],
    terminals: &[usize],
) -> bool {
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    let mut present = vec![false; n];
    for &(u, v) in part {
        out[u].push(v);
        inn[v].push(u);
        present[u] = true;
        present[v] = true;
    }
    if terminals.iter().any(|&t| !present[t]) {
        return false;
    }
    let Some(root) = present.iter().position(|&p| p) else {
        return false;
    };
    let fwd = reach(n, root, |v| out[v].as_slice());
    let bwd = reach(n, root, |v| inn[v].as_slice());
    (0..n).all(|v| !present[v] || (fwd[v] && bwd[v]))
}
