//! Isomorphism testing for small digraphs via canonical forms.
//!
//! The canonical form is the lexicographically smallest adjacency matrix over
//! all vertex orderings that list vertices by ascending `(out-degree,
//! in-degree)`. Restricting to those orderings is sound because the degree
//! pair is an isomorphism invariant, and it keeps trees and other irregular
//! graphs cheap.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Default order limit of [`are_isomorphic`].
pub const ISO_LIMIT: usize = 8;

/// Hard ceiling: the adjacency matrix must fit in a `u128`.
const MAX_ORDER: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub matrix: u128,
}

impl CanonicalForm {
    /// The digraph this form encodes (the canonical representative).
    pub fn to_digraph(self) -> Digraph {
        let n = self.n;
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && self.matrix & cell_bit(n, u, v) != 0 {
                    arcs.push((u, v));
                }
            }
        }
        Digraph::from_valid(n, arcs)
    }
}

fn cell_bit(n: usize, u: usize, v: usize) -> u128 {
    1u128 << (n * n - 1 - (u * n + v))
}

fn cache() -> &'static Mutex<HashMap<Digraph, CanonicalForm>> {
    static CACHE: OnceLock<Mutex<HashMap<Digraph, CanonicalForm>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Canonical form, refusing digraphs of order above `limit`.
pub fn canonical_form(d: &Digraph, limit: usize) -> Result<CanonicalForm> {
    let n = d.n();
    if n > limit.min(MAX_ORDER) {
        return Err(Error::IsoLimit {
            n,
            limit: limit.min(MAX_ORDER),
        });
    }
    if let Some(cf) = cache().lock().expect("iso cache poisoned").get(d) {
        return Ok(*cf);
    }
    let cf = compute(d);
    cache()
        .lock()
        .expect("iso cache poisoned")
        .insert(d.clone(), cf);
    Ok(cf)
}

fn compute(d: &Digraph) -> CanonicalForm {
    let n = d.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (d.out_degree(v), d.in_degree(v), v));
    // Contiguous position ranges per invariant class.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for &v in &order {
        let key = (d.out_degree(v), d.in_degree(v));
        if last != Some(key) {
            classes.push(Vec::new());
            last = Some(key);
        }
        classes.last_mut().expect("class just pushed").push(v);
    }
    let mut pos = vec![0usize; n];
    let mut best = u128::MAX;
    let mut used = vec![false; n];
    assign(d, &classes, 0, 0, 0, &mut pos, &mut used, &mut best);
    CanonicalForm {
        n,
        matrix: if n == 0 { 0 } else { best },
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    d: &Digraph,
    classes: &[Vec<usize>],
    class: usize,
    filled_in_class: usize,
    next_pos: usize,
    pos: &mut [usize],
    used: &mut [bool],
    best: &mut u128,
) {
    if class == classes.len() {
        let n = d.n();
        let m = d
            .arcs()
            .iter()
            .fold(0u128, |acc, &(u, v)| acc | cell_bit(n, pos[u], pos[v]));
        *best = (*best).min(m);
        return;
    }
    let members = &classes[class];
    if filled_in_class == members.len() {
        assign(d, classes, class + 1, 0, next_pos, pos, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        pos[v] = next_pos;
        assign(
            d,
            classes,
            class,
            filled_in_class + 1,
            next_pos + 1,
            pos,
            used,
            best,
        );
        used[v] = false;
    }
}

/// Isomorphism test for digraphs of order at most [`ISO_LIMIT`].
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool> {
    are_isomorphic_with_limit(a, b, ISO_LIMIT)
}

pub fn are_isomorphic_with_limit(a: &Digraph, b: &Digraph, limit: usize) -> Result<bool> {
    for d in [a, b] {
        if d.n() > limit {
            return Err(Error::IsoLimit { n: d.n(), limit });
        }
    }
    if a.n() != b.n() || a.arc_count() != b.arc_count() || degree_profile(a) != degree_profile(b) {
        return Ok(false);
    }
    Ok(canonical_form(a, limit)? == canonical_form(b, limit)?)
}

fn degree_profile(d: &Digraph) -> Vec<(usize, usize)> {
    let mut p: Vec<_> = (0..d.n())
        .map(|v| (d.out_degree(v), d.in_degree(v)))
        .collect();
    p.sort_unstable();
    p
}
