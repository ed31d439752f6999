//! Explicit, self-verifying packing constructions: complete digraphs,
//! Cartesian products, and the minimally strong `(2, n-2)` family.

mod minimal;
pub(crate) mod product;

use itertools::Itertools;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::packing::Packing;

pub use minimal::{minimal_graph, minimal_packing, recognize_minimal_2_nminus2, CycleCover};
pub use product::product_packing;

/// Largest even order for which [`hamiltonian_decomposition`] searches.
pub const HAMILTONIAN_SEARCH_LIMIT: usize = 8;

const SEARCH_NODES: u64 = 20_000_000;

/// A partition of the arcs of the complete digraph on `n` vertices into
/// `n - 1` directed Hamiltonian cycles, each returned as its arc list in
/// traversal order starting from vertex 0.
///
/// Odd `n` uses Walecki's construction (each undirected Hamiltonian cycle
/// taken in both directions); even `n` is found by exact-cover search up to
/// [`HAMILTONIAN_SEARCH_LIMIT`]. `n = 2` gives the single 2-cycle.
pub fn hamiltonian_decomposition(n: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "order {n} has no Hamiltonian cycle"
        )));
    }
    if n == 4 || n == 6 {
        return Err(Error::NoDecomposition(n));
    }
    let cycles = if n % 2 == 1 {
        walecki(n)
    } else if n == 2 {
        vec![vec![0, 1]]
    } else {
        if n > HAMILTONIAN_SEARCH_LIMIT {
            return Err(Error::SearchLimit(format!(
                "even-order decomposition search limited to n <= {HAMILTONIAN_SEARCH_LIMIT}"
            )));
        }
        search_decomposition(n)?.ok_or(Error::NoDecomposition(n))?
    };
    let parts: Vec<_> = cycles.iter().map(|c| cycle_arcs(c)).collect();
    check_decomposition(n, &parts)?;
    Ok(parts)
}

/// Exhaustively searches for a directed Hamiltonian decomposition of the
/// complete digraph of even order `n <= HAMILTONIAN_SEARCH_LIMIT`. Returns
/// whether one exists; used to certify the impossible orders 4 and 6.
pub fn hamiltonian_decomposition_exists(n: usize) -> Result<bool> {
    if !(2..=HAMILTONIAN_SEARCH_LIMIT).contains(&n) {
        return Err(Error::SearchLimit(format!(
            "exhaustive search supports 2 <= n <= {HAMILTONIAN_SEARCH_LIMIT}"
        )));
    }
    Ok(search_decomposition(n)?.is_some())
}

/// Walecki: with `2r = n - 1` rim vertices and hub `n - 1`, the zigzag
/// `i, i+1, i-1, i+2, i-2, ...` closed through the hub gives `r`
/// edge-disjoint Hamiltonian cycles.
fn walecki(n: usize) -> Vec<Vec<usize>> {
    let rim = n - 1;
    let hub = n - 1;
    let mut out = Vec::new();
    for i in 0..rim / 2 {
        let mut cyc = vec![hub, i];
        for step in 1..rim {
            let off = step.div_ceil(2);
            let v = if step % 2 == 1 {
                i + off
            } else {
                i + rim - off
            };
            cyc.push(v % rim);
        }
        let mut rev = cyc.clone();
        rev[1..].reverse();
        out.push(rotate_to_zero(cyc));
        out.push(rotate_to_zero(rev));
    }
    out
}

fn rotate_to_zero(mut cyc: Vec<usize>) -> Vec<usize> {
    let at = cyc
        .iter()
        .position(|&v| v == 0)
        .expect("cycle is Hamiltonian");
    cyc.rotate_left(at);
    cyc
}

pub(crate) fn cycle_arcs(cyc: &[usize]) -> Vec<(usize, usize)> {
    (0..cyc.len())
        .map(|i| (cyc[i], cyc[(i + 1) % cyc.len()]))
        .collect()
}

fn check_decomposition(n: usize, parts: &[Vec<(usize, usize)>]) -> Result<()> {
    let mut all: Vec<_> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let ok = parts.len() == n - 1
        && all.len() == n * (n - 1)
        && parts
            .iter()
            .all(|p| p.len() == n && Digraph::from_valid(n, p.clone()).is_strong());
    if ok {
        Ok(())
    } else {
        Err(Error::Certificate(
            "Hamiltonian decomposition failed verification".into(),
        ))
    }
}

/// Exact cover of the `n(n-1)` arcs by directed Hamiltonian cycles, arcs
/// indexed `u * n + v` in a `u64`.
fn search_decomposition(n: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let cycles: Vec<Vec<usize>> = (1..n)
        .permutations(n - 1)
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect();
    let masks: Vec<u64> = cycles
        .iter()
        .map(|c| {
            cycle_arcs(c)
                .iter()
                .fold(0, |m, &(u, v)| m | 1 << (u * n + v))
        })
        .collect();
    let mut by_arc = vec![Vec::new(); n * n];
    for (ci, &m) in masks.iter().enumerate() {
        for (a, list) in by_arc.iter_mut().enumerate() {
            if m >> a & 1 == 1 {
                list.push(ci);
            }
        }
    }
    let full = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| u * n + v))
        .fold(0u64, |m, a| m | 1 << a);
    struct Cover<'a> {
        masks: &'a [u64],
        by_arc: &'a [Vec<usize>],
        full: u64,
        chosen: Vec<usize>,
        nodes: u64,
    }
    impl Cover<'_> {
        fn go(&mut self, used: u64) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > SEARCH_NODES {
                return Err(Error::SearchLimit(format!(
                    "decomposition search exceeded {SEARCH_NODES} nodes"
                )));
            }
            let free = self.full & !used;
            if free == 0 {
                return Ok(true);
            }
            let pivot = free.trailing_zeros() as usize;
            for &ci in &self.by_arc[pivot] {
                if self.masks[ci] & used == 0 {
                    self.chosen.push(ci);
                    if self.go(used | self.masks[ci])? {
                        return Ok(true);
                    }
                    self.chosen.pop();
                }
            }
            Ok(false)
        }
    }
    let mut cover = Cover {
        masks: &masks,
        by_arc: &by_arc,
        full,
        chosen: Vec::new(),
        nodes: 0,
    };
    if cover.go(0)? {
        Ok(Some(
            cover.chosen.iter().map(|&ci| cycles[ci].clone()).collect(),
        ))
    } else {
        Ok(None)
    }
}

/// `λ_k` of the complete digraph on `n` vertices: `n - 2` when
/// `k = n ∈ {4, 6}`, otherwise `n - 1`.
pub fn complete_lambda(n: usize, k: usize) -> usize {
    if k == n && (n == 4 || n == 6) {
        n - 2
    } else {
        n - 1
    }
}

/// A packing of [`complete_lambda`]`(n, |S|)` parts in the complete digraph
/// on `n` vertices. Verified before it is returned.
pub fn complete_packing(n: usize, s: &VertexSet) -> Result<Packing> {
    if s.members().iter().any(|&v| v >= n) || s.len() > n {
        return Err(Error::InvalidVertexSet(format!(
            "{s} is not a subset of 0..{n}"
        )));
    }
    let k = s.len();
    let u = s.members();
    let rest: Vec<usize> = (0..n).filter(|v| !s.contains(*v)).collect();
    let parts = if k == n && (n == 4 || n == 6) {
        let mut cycles = vec![(0..n).collect::<Vec<_>>()];
        if n == 6 {
            cycles.push(vec![0, 2, 4, 1, 5, 3]);
        }
        cycles
            .iter()
            .flat_map(|c| {
                let fwd = cycle_arcs(c);
                let back = reversed(&fwd);
                [fwd, back]
            })
            .collect()
    } else if k == 6 && k < n {
        six_terminals(u, &rest)
    } else if k == 4 && k < n {
        four_terminals(u, &rest)
    } else if n == 4 || n == 6 {
        // No decomposition of order n; decompose the order n-1 digraph on
        // V - w and add the digon star at w.
        let w = rest[0];
        let others: Vec<usize> = (0..n).filter(|&v| v != w).collect();
        let mut parts: Vec<Vec<(usize, usize)>> = hamiltonian_decomposition(n - 1)?
            .into_iter()
            .map(|c| c.into_iter().map(|(a, b)| (others[a], others[b])).collect())
            .collect();
        parts.push(star(w, u));
        parts
    } else {
        hamiltonian_decomposition(n)?
    };
    let packing = Packing::new(s.clone(), parts);
    packing.ensure_valid(&Digraph::complete(n))?;
    debug_assert_eq!(packing.len(), complete_lambda(n, k));
    Ok(packing)
}

fn reversed(arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    arcs.iter().map(|&(a, b)| (b, a)).collect()
}

fn star(center: usize, leaves: &[usize]) -> Vec<(usize, usize)> {
    leaves
        .iter()
        .flat_map(|&l| [(center, l), (l, center)])
        .collect()
}

fn four_terminals(u: &[usize], v: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let d1 = cycle_arcs(&[u[0], u[1], u[2], u[3]]);
    let d3 = vec![
        (u[0], v[0]),
        (v[0], u[1]),
        (u[1], u[3]),
        (u[3], v[0]),
        (v[0], u[2]),
        (u[2], u[0]),
    ];
    let mut parts = vec![reversed(&d1), d1, reversed(&d3), d3];
    parts.extend(v[1..].iter().map(|&x| star(x, u)));
    parts
}

fn six_terminals(u: &[usize], v: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let d1 = cycle_arcs(u);
    let d3 = cycle_arcs(&[u[0], u[2], u[5], u[3], u[1], u[4]]);
    let d5 = vec![
        (u[0], v[0]),
        (v[0], u[1]),
        (u[1], u[5]),
        (u[5], v[0]),
        (v[0], u[4]),
        (u[4], u[2]),
        (u[2], v[0]),
        (v[0], u[3]),
        (u[3], u[0]),
    ];
    let mut parts = vec![reversed(&d1), d1, reversed(&d3), d3, reversed(&d5), d5];
    parts.extend(v[1..].iter().map(|&x| star(x, u)));
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{lambda_s_exact, SolverConfig};

    #[test]
    fn walecki_and_search_decompositions() {
        for n in [2, 3, 5, 7, 8, 9] {
            let parts = hamiltonian_decomposition(n).unwrap();
            assert_eq!(parts.len(), n - 1);
            assert_eq!(parts.iter().map(Vec::len).sum::<usize>(), n * (n - 1));
        }
        assert!(matches!(
            hamiltonian_decomposition(4),
            Err(Error::NoDecomposition(4))
        ));
        assert!(matches!(
            hamiltonian_decomposition(10),
            Err(Error::SearchLimit(_))
        ));
    }

    #[test]
    fn impossible_orders_have_no_decomposition() {
        assert!(!hamiltonian_decomposition_exists(4).unwrap());
        assert!(!hamiltonian_decomposition_exists(6).unwrap());
        assert!(hamiltonian_decomposition_exists(8).unwrap());
    }

    #[test]
    fn complete_packing_sizes() {
        for n in 2..=8 {
            for k in 2..=n {
                for s in (0..n).combinations(k).step_by(3) {
                    let s = VertexSet::new(s, n).unwrap();
                    let p = complete_packing(n, &s).unwrap();
                    assert_eq!(p.len(), complete_lambda(n, k), "n={n} S={s}");
                }
            }
        }
    }

    #[test]
    fn four_terminal_construction_is_optimal_on_k5() {
        let s = VertexSet::new(vec![0, 2, 3, 4], 5).unwrap();
        let p = complete_packing(5, &s).unwrap();
        let exact = lambda_s_exact(&Digraph::complete(5), &s, &SolverConfig::default()).unwrap();
        assert_eq!(p.len(), exact.value);
    }
}
