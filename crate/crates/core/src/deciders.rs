//! Polynomial-time computations: global arc-connectivity, bound assembly,
//! the `λ_k >= 2` deciders for semicomplete and symmetric digraphs, strong
//! orientations, minimal strongness and complement-sum reports.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::explorer::{enumerate_digraphs, EnumMode};
use crate::iso::{are_isomorphic, canonical_form, ISO_LIMIT};
use crate::packing::Packing;
use crate::solver::{lambda_k_at_least, lambda_k_exact, SolverConfig};

/// Maximum number of arc-disjoint `s -> t` paths, capped at `limit`.
///
/// Unit-capacity augmenting paths found by BFS over the residual network.
pub fn max_arc_disjoint_paths(d: &Digraph, s: usize, t: usize, limit: usize) -> usize {
    if s == t {
        return limit;
    }
    let arcs = d.arcs();
    // Residual edges: 2i is arc i forward, 2i+1 its reverse.
    let mut cap: Vec<u8> = arcs.iter().flat_map(|_| [1, 0]).collect();
    let mut adj = vec![Vec::new(); d.n()];
    for (i, &(u, v)) in arcs.iter().enumerate() {
        adj[u].push(2 * i);
        adj[v].push(2 * i + 1);
    }
    let head = |e: usize| {
        if e.is_multiple_of(2) {
            arcs[e / 2].1
        } else {
            arcs[e / 2].0
        }
    };
    let mut flow = 0;
    let mut via = vec![usize::MAX; d.n()];
    while flow < limit {
        via.iter_mut().for_each(|x| *x = usize::MAX);
        let mut seen = vec![false; d.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &e in &adj[v] {
                let w = head(e);
                if cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut v = t;
        while v != s {
            let e = via[v];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            v = head(e ^ 1);
        }
        flow += 1;
    }
    flow
}

/// `λ(D)`: the minimum number of arcs whose removal leaves `D` non-strong.
/// Zero iff `D` is not strong. Orders 0 and 1 give 0.
pub fn arc_connectivity(d: &Digraph) -> usize {
    let n = d.n();
    if n < 2 {
        return 0;
    }
    let mut best = d.degree_cap();
    for u in 1..n {
        if best == 0 {
            break;
        }
        best = best.min(max_arc_disjoint_paths(d, 0, u, best));
        best = best.min(max_arc_disjoint_paths(d, u, 0, best));
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub lower: usize,
    pub upper: usize,
    pub lower_rule: String,
    pub upper_rule: String,
}

/// Polynomial lower and upper bounds on `λ_k(D)` with the rule behind each.
pub fn bounds(d: &Digraph, k: usize) -> Result<BoundsReport> {
    let n = d.n();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let lambda = arc_connectivity(d);
    let (lower, lower_rule) = if lambda == 0 {
        (0, "not strong")
    } else if k <= lambda && lambda / k > 1 {
        (lambda / k, "floor(arc connectivity / k)")
    } else {
        (1, "strong")
    };
    let (dout, din) = d.min_degrees();
    let (upper, upper_rule) = [
        (lambda, "arc connectivity"),
        (dout, "min out-degree"),
        (din, "min in-degree"),
        (n - 1, "order - 1"),
    ]
    .into_iter()
    .min_by_key(|&(v, _)| v)
    .expect("nonempty");
    Ok(BoundsReport {
        k,
        lower,
        upper,
        lower_rule: lower_rule.into(),
        upper_rule: upper_rule.into(),
    })
}

/// The unique 2-arc-strong semicomplete digraph of order 4 that has no two
/// arc-disjoint strong spanning subgraphs.
///
/// Found by scanning all 729 semicomplete digraphs of order 4 with the exact
/// solver, then cached. The returned labelling is the canonical form.
pub fn derive_s4() -> Result<Digraph> {
    static S4: OnceLock<Digraph> = OnceLock::new();
    if let Some(d) = S4.get() {
        return Ok(d.clone());
    }
    let found = scan_semicomplete_exceptions(4, 2, &SolverConfig::default())?;
    if found.len() != 1 {
        return Err(Error::Derivation(format!(
            "expected one isomorphism class, found {}",
            found.len()
        )));
    }
    Ok(S4.get_or_init(|| found[0].clone()).clone())
}

/// All `ell`-arc-strong semicomplete digraphs of the given order without
/// `ell` arc-disjoint strong spanning subgraphs, one canonical representative
/// per isomorphism class, sorted.
pub(crate) fn scan_semicomplete_exceptions(
    order: usize,
    ell: usize,
    cfg: &SolverConfig,
) -> Result<Vec<Digraph>> {
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for d in enumerate_digraphs(order, EnumMode::Semicomplete)? {
        let canon = canonical_form(&d, ISO_LIMIT)?;
        if !seen.insert(canon) {
            continue;
        }
        if arc_connectivity(&d) < ell {
            continue;
        }
        if !lambda_k_at_least(&d, order, ell, cfg)? {
            found.push(canon);
        }
    }
    found.sort();
    Ok(found.into_iter().map(|c| c.to_digraph()).collect())
}

/// `λ_k(D) >= 2` for semicomplete `D`: holds iff `D` is 2-arc-strong, except
/// for `k = 4` on [`derive_s4`].
///
/// The exception is confined to spanning terminal sets: `S_4` has two
/// arc-disjoint strong subgraphs through every pair and every triple, so
/// `λ_2(S_4) = λ_3(S_4) = 2`. Since `λ_k` is non-increasing in `k`, every
/// other 2-arc-strong semicomplete digraph satisfies `λ_k >= λ_n >= 2`.
pub fn decide2_semicomplete(d: &Digraph, k: usize) -> Result<bool> {
    if !d.is_semicomplete() {
        return Err(Error::NotSemicomplete);
    }
    check_k(d, k)?;
    if arc_connectivity(d) < 2 {
        return Ok(false);
    }
    Ok(k != 4 || d.n() != 4 || !are_isomorphic(d, &derive_s4()?)?)
}

/// `λ_k(D) >= 2` for symmetric strong `D`: holds iff `D` has no bridge.
///
/// On success returns the two spanning parts `H` and `H^rev` for a strong
/// orientation `H`; being spanning, they certify every terminal set, so the
/// packing is stated for `S = V(D)`.
pub fn decide2_symmetric(d: &Digraph, k: usize) -> Result<Option<Packing>> {
    if !d.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !d.is_strong() {
        return Err(Error::NotStrong);
    }
    check_k(d, k)?;
    if !d.bridges()?.is_empty() {
        return Ok(None);
    }
    let h = strong_orientation(d)?;
    let packing = Packing::new(
        VertexSet::all(d.n())?,
        vec![h.arcs().to_vec(), h.reverse().arcs().to_vec()],
    );
    packing.ensure_valid(d)?;
    Ok(Some(packing))
}

/// A strong spanning orientation of a symmetric, strong, bridgeless digraph:
/// depth-first tree edges point away from the root, all other edges point
/// back towards the ancestor.
pub fn strong_orientation(d: &Digraph) -> Result<Digraph> {
    if !d.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !d.is_strong() {
        return Err(Error::NotStrong);
    }
    if let Some(&(u, v)) = d.bridges()?.first() {
        return Err(Error::BridgePresent(u, v));
    }
    let n = d.n();
    let mut depth = vec![usize::MAX; n];
    let mut arcs = Vec::with_capacity(d.arc_count() / 2);
    if n > 0 {
        depth[0] = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let nbrs = d.out_neighbors(v);
            if *i == nbrs.len() {
                stack.pop();
                continue;
            }
            let w = nbrs[*i];
            *i += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                arcs.push((v, w));
                stack.push((w, 0));
            } else if depth[w] + 1 < depth[v] {
                // Back edge to a proper ancestor other than the parent.
                arcs.push((v, w));
            }
        }
    }
    let h = Digraph::from_valid(n, arcs);
    if !h.is_strong() || 2 * h.arc_count() != d.arc_count() {
        return Err(Error::Precondition("orientation is not strong".into()));
    }
    Ok(h)
}

/// `λ_2` of a symmetric digraph, which equals its arc-connectivity (the edge
/// connectivity of the underlying graph).
pub fn lambda2_symmetric(d: &Digraph) -> Result<usize> {
    if !d.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(arc_connectivity(d))
}

/// Strong, and deleting any single arc destroys strongness.
pub fn is_minimally_strong(d: &Digraph) -> bool {
    d.is_strong()
        && d.arcs()
            .iter()
            .all(|&(u, v)| !d.spanning_subgraph(|a| a != (u, v)).is_strong())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NgReport {
    pub k: usize,
    pub lambda_d: usize,
    pub lambda_dc: usize,
    pub sum: usize,
    pub product: usize,
    /// `0 <= sum <= n-1`.
    pub sum_bound_holds: bool,
    /// `product <= ((n-1)/2)^2`.
    pub product_bound_holds: bool,
    /// `sum == 0` exactly when both `D` and its complement have arc-connectivity 0.
    pub sum_zero_characterized: bool,
    /// `product == 0` exactly when one of them has arc-connectivity 0.
    pub product_zero_characterized: bool,
}

impl NgReport {
    pub fn holds(&self) -> bool {
        self.sum_bound_holds
            && self.product_bound_holds
            && self.sum_zero_characterized
            && self.product_zero_characterized
    }
}

/// Exact `λ_k` of `D` and its complement, checked against the sum and
/// product bounds.
pub fn nordhaus_gaddum(d: &Digraph, k: usize, cfg: &SolverConfig) -> Result<NgReport> {
    check_k(d, k)?;
    let dc = d.complement();
    let lambda_d = lambda_k_exact(d, k, cfg)?.value;
    let lambda_dc = lambda_k_exact(&dc, k, cfg)?.value;
    Ok(ng_report(d, &dc, k, lambda_d, lambda_dc))
}

pub(crate) fn ng_report(
    d: &Digraph,
    dc: &Digraph,
    k: usize,
    lambda_d: usize,
    lambda_dc: usize,
) -> NgReport {
    let n = d.n();
    let sum = lambda_d + lambda_dc;
    let product = lambda_d * lambda_dc;
    let (a, b) = (arc_connectivity(d), arc_connectivity(dc));
    NgReport {
        k,
        lambda_d,
        lambda_dc,
        sum,
        product,
        sum_bound_holds: sum < n.max(1),
        // product <= ((n-1)/2)^2  <=>  4 * product <= (n-1)^2
        product_bound_holds: 4 * product <= (n - 1) * (n - 1),
        sum_zero_characterized: (sum == 0) == (a == 0 && b == 0),
        product_zero_characterized: (product == 0) == (a == 0 || b == 0),
    }
}

fn check_k(d: &Digraph, k: usize) -> Result<()> {
    if k < 2 || k > d.n() {
        return Err(Error::KOutOfRange { k, n: d.n() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::UndirectedGraph;
    use crate::families::{dicycle, path, standard_family, Family};
    use crate::solver::oracle_lambda_s;
    use itertools::Itertools;

    fn bicycle(n: usize) -> Digraph {
        standard_family(Family::BidirectedCycle, n, None).unwrap()
    }

    /// Smallest arc set whose removal leaves the digraph non-strong.
    fn brute_arc_connectivity(d: &Digraph) -> usize {
        let m = d.arc_count();
        for size in 0..=m {
            for del in (0..m).combinations(size) {
                let keep: Vec<_> = (0..m)
                    .filter(|i| !del.contains(i))
                    .map(|i| d.arcs()[i])
                    .collect();
                if !Digraph::from_arc_list(d.n(), keep).unwrap().is_strong() {
                    return size;
                }
            }
        }
        unreachable!("removing every arc disconnects an order >= 2 digraph")
    }

    #[test]
    fn arc_connectivity_of_families() {
        for n in 2..7 {
            assert_eq!(arc_connectivity(&Digraph::complete(n)), n - 1);
        }
        for n in 3..7 {
            assert_eq!(arc_connectivity(&dicycle(n)), 1);
            assert_eq!(arc_connectivity(&bicycle(n)), 2);
        }
        assert_eq!(arc_connectivity(&path(4).biorient()), 1);
        assert_eq!(arc_connectivity(&Digraph::empty(3)), 0);
    }

    #[test]
    fn arc_connectivity_matches_brute_force_on_order_3() {
        for d in enumerate_digraphs(3, EnumMode::AllLabeled).unwrap() {
            assert_eq!(arc_connectivity(&d), brute_arc_connectivity(&d), "{d:?}");
        }
    }

    #[test]
    fn bounds_rules() {
        let b = bounds(&Digraph::complete(5), 3).unwrap();
        assert_eq!((b.lower, b.upper), (1, 4));
        let b = bounds(&Digraph::complete(6), 2).unwrap();
        assert_eq!((b.lower, b.upper), (2, 5));
        assert_eq!(b.lower_rule, "floor(arc connectivity / k)");
        let b = bounds(&Digraph::from_arc_list(3, [(0, 1), (1, 2)]).unwrap(), 2).unwrap();
        assert_eq!(
            (b.lower, b.upper, b.lower_rule.as_str()),
            (0, 0, "not strong")
        );
        assert!(bounds(&Digraph::complete(3), 4).is_err());
    }

    #[test]
    fn s4_is_two_arc_strong_and_fails() {
        let s4 = derive_s4().unwrap();
        assert_eq!(s4.n(), 4);
        assert!(s4.is_semicomplete());
        assert_eq!(arc_connectivity(&s4), 2);
        assert!(!decide2_semicomplete(&s4, 4).unwrap());
        assert!(decide2_semicomplete(&s4, 2).unwrap());
        assert!(decide2_semicomplete(&s4, 3).unwrap());
        // S_4 has 8 arcs, so the assignment oracle settles every terminal set.
        for k in 2..=4 {
            let exact = (0..4)
                .combinations(k)
                .map(|c| oracle_lambda_s(&s4, &VertexSet::new(c, 4).unwrap(), 14).unwrap())
                .min()
                .unwrap();
            assert_eq!(exact, if k == 4 { 1 } else { 2 }, "k = {k}");
        }
        assert!(decide2_semicomplete(&Digraph::complete(4), 3).unwrap());
        let tournament = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!decide2_semicomplete(&tournament, 2).unwrap());
        assert!(matches!(
            decide2_semicomplete(&dicycle(4), 2),
            Err(Error::NotSemicomplete)
        ));
    }

    #[test]
    fn symmetric_decider() {
        let c6 = bicycle(6);
        let p = decide2_symmetric(&c6, 3).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.parts.iter().all(|part| part.len() == 6));
        let tree = path(5).biorient();
        assert_eq!(decide2_symmetric(&tree, 2).unwrap(), None);
        let k4 = UndirectedGraph::from_edge_list(4, (0..4).tuple_combinations())
            .unwrap()
            .biorient();
        assert!(decide2_symmetric(&k4, 4).unwrap().is_some());
        assert!(matches!(
            decide2_symmetric(&dicycle(3), 2),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn orientations() {
        let h = strong_orientation(&bicycle(5)).unwrap();
        assert!(h == dicycle(5) || h == dicycle(5).reverse());
        let h = strong_orientation(&Digraph::complete(4)).unwrap();
        assert!(h.is_strong() && h.is_semicomplete() && h.arc_count() == 6);
        assert!(matches!(
            strong_orientation(&path(3).biorient()),
            Err(Error::BridgePresent(..))
        ));
    }

    #[test]
    fn lambda2_and_minimal_strongness() {
        assert_eq!(lambda2_symmetric(&Digraph::complete(5)).unwrap(), 4);
        assert_eq!(lambda2_symmetric(&path(4).biorient()).unwrap(), 1);
        assert_eq!(lambda2_symmetric(&bicycle(7)).unwrap(), 2);
        assert!(is_minimally_strong(&dicycle(5)));
        assert!(!is_minimally_strong(&Digraph::complete(3)));
        assert!(!is_minimally_strong(&bicycle(3)));
        assert!(is_minimally_strong(&path(4).biorient()));
    }

    #[test]
    fn nordhaus_gaddum_reports() {
        let cfg = SolverConfig::default();
        let r = nordhaus_gaddum(&Digraph::complete(5), 2, &cfg).unwrap();
        assert_eq!((r.lambda_d, r.lambda_dc, r.sum), (4, 0, 4));
        assert!(r.holds());
        let d =
            Digraph::from_arc_list(4, [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (1, 3)]).unwrap();
        let r = nordhaus_gaddum(&d, 2, &cfg).unwrap();
        assert!(r.holds());
    }
}
