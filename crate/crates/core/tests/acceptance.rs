//! End-to-end acceptance run: eight criteria, one PASS/FAIL line each.
//!
//! Every criterion compares library results against an independent source:
//! the closed-form complete-digraph values, brute-force linkage and packing
//! oracles, the exact solver, or counting arguments spelled out below.

use std::collections::BTreeSet;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strongk::constructors::{
    complete_packing, hamiltonian_decomposition, minimal_packing, recognize_minimal_2_nminus2,
};
use strongk::deciders::{decide2_semicomplete, decide2_symmetric, derive_s4, lambda2_symmetric};
use strongk::explorer::{
    enumerate_digraphs, product_table_with, semicomplete_exceptions, EnumMode, Suite, TreeShape,
};
use strongk::gadgets::{build_pipeline, weak_linkage_bruteforce};
use strongk::iso::{are_isomorphic, canonical_form, CanonicalForm};
use strongk::solver::{
    decide_lambda_s, lambda_k_at_least, lambda_k_exact, lambda_s_exact, oracle_lambda_s,
};
use strongk::{verify_packing, Digraph, Error, SolverConfig, UndirectedGraph, VertexSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn canon(d: &Digraph) -> CanonicalForm {
    canonical_form(d, 11).expect("order within the canonical-form limit")
}

fn vset(members: Vec<usize>, n: usize) -> VertexSet {
    VertexSet::new(members, n).expect("valid terminal set")
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::from_arc_list(n, arcs).expect("valid arcs")
}

/// Closed form for the complete digraph: `n - 2` when `k = n` is 4 or 6,
/// otherwise `n - 1`.
fn complete_formula(n: usize, k: usize) -> usize {
    if k == n && (n == 4 || n == 6) {
        n - 2
    } else {
        n - 1
    }
}

fn complete_digraph_values() -> Outcome {
    let mut checked = 0;
    for n in 2..=5 {
        let d = Digraph::complete(n);
        for k in 2..=n {
            let got = lambda_k_exact(&d, k, &cfg()).map_err(fail)?.value;
            if got != complete_formula(n, k) {
                return Err(format!(
                    "n={n} k={k}: exact {got}, formula {}",
                    complete_formula(n, k)
                ));
            }
            checked += 1;
        }
    }
    // n = 6: the construction gives the lower bound on every k-set and the
    // degree cap n - 1 the upper bound. For k = n, n - 1 spanning strong
    // parts would need all n(n-1) arcs at n arcs each, i.e. a decomposition
    // into Hamiltonian cycles; the exhaustive search rules that out.
    let n = 6;
    let d = Digraph::complete(n);
    for k in 2..=n {
        let mut lower = usize::MAX;
        for combo in (0..n).combinations(k) {
            let p = complete_packing(n, &vset(combo, n)).map_err(fail)?;
            if !verify_packing(&d, &p) {
                return Err(format!("n=6 k={k}: constructed packing does not verify"));
            }
            lower = lower.min(p.len());
        }
        let upper = if k == n {
            match hamiltonian_decomposition(n) {
                Err(Error::NoDecomposition(_)) => n - 2,
                Ok(_) => return Err("a Hamiltonian decomposition of K6 was found".into()),
                Err(e) => return Err(fail(e)),
            }
        } else {
            d.degree_cap()
        };
        if lower != upper || lower != complete_formula(n, k) {
            return Err(format!(
                "n=6 k={k}: bounds {lower}..={upper}, formula {}",
                complete_formula(n, k)
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} (n, k) pairs"))
}

/// `λ_S(gadget) >= ell` against brute-force weak 2-linkage in the split source.
fn gadget_agrees(d: &Digraph, terms: [usize; 4], k: usize, ell: usize) -> Result<bool, String> {
    let inst = build_pipeline(d, terms, k, ell).map_err(fail)?;
    let (split, pairs) = inst.split_source().map_err(fail)?;
    let linked = weak_linkage_bruteforce(&split, &pairs, 64).map_err(fail)?;
    let packs = decide_lambda_s(&inst.digraph, &inst.s, ell, &cfg())
        .map_err(fail)?
        .is_some();
    Ok(linked == packs)
}

fn gadget_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut summary = Vec::new();
    for (k, ell, count) in [(2, 2, 200), (2, 3, 50), (3, 2, 50)] {
        let (mut yes, mut disagree) = (0, 0);
        for _ in 0..count {
            let d = random_digraph(&mut rng, 4, 0.5);
            let mut order: Vec<usize> = (0..4).collect();
            order.shuffle(&mut rng);
            let terms = [order[0], order[1], order[2], order[3]];
            if !gadget_agrees(&d, terms, k, ell)? {
                disagree += 1;
            }
            let (split, pairs) = build_pipeline(&d, terms, k, ell)
                .and_then(|i| i.split_source())
                .map_err(fail)?;
            if weak_linkage_bruteforce(&split, &pairs, 64).map_err(fail)? {
                yes += 1;
            }
        }
        if disagree > 0 {
            return Err(format!("(k={k}, ell={ell}): {disagree} disagreements"));
        }
        summary.push(format!(
            "(k={k}, ell={ell}) {count} instances, {yes} linked"
        ));
    }
    Ok(summary.join("; "))
}

fn check_suite() -> Outcome {
    let mut suite = Suite::new(cfg());
    let mut total = 0;
    for (n, ks) in [(3, vec![2, 3]), (4, vec![2, 3, 4])] {
        for d in enumerate_digraphs(n, EnumMode::AllLabeled).map_err(fail)? {
            let report = suite.verify(&d, &ks);
            if report.failures() > 0 {
                let lines: Vec<String> =
                    report.lines().filter(|l| l.contains("\tFAIL\t")).collect();
                return Err(lines.join(" | "));
            }
            total += 1;
        }
    }
    Ok(format!("{total} labelled digraphs, 0 failures"))
}

fn semicomplete_characterization() -> Outcome {
    let s4 = derive_s4().map_err(fail)?;
    let found = semicomplete_exceptions(4, 2, &cfg()).map_err(fail)?;
    if found.len() != 1 || !are_isomorphic(&found[0], &s4).map_err(fail)? {
        return Err(format!("order-4 scan found {} classes", found.len()));
    }
    let mut classes = 0;
    for n in 2..=5 {
        let mut seen = BTreeSet::new();
        for d in enumerate_digraphs(n, EnumMode::Semicomplete).map_err(fail)? {
            if !seen.insert(canon(&d)) {
                continue;
            }
            classes += 1;
            for k in 2..=n {
                let decided = decide2_semicomplete(&d, k).map_err(fail)?;
                let exact = lambda_k_at_least(&d, k, 2, &cfg()).map_err(fail)?;
                if decided != exact {
                    return Err(format!("{d:?} k={k}: decider {decided}, exact {exact}"));
                }
            }
        }
    }
    Ok(format!(
        "S_4 unique at order 4; {classes} semicomplete classes of order <= 5 agree"
    ))
}

/// Connected graphs with at most `max_edges` edges, one per isomorphism
/// class. A connected graph with an edge arises from one with one edge fewer
/// by adding an edge inside or a pendant edge to a new vertex.
fn connected_graphs(max_edges: usize) -> Vec<UndirectedGraph> {
    let mut all = Vec::new();
    let mut level = vec![UndirectedGraph::from_edge_list(1, []).expect("single vertex")];
    for _ in 0..max_edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut children: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
                .tuple_combinations()
                .filter(|&(u, v)| !g.has_edge(u, v))
                .map(|e| (n, g.edges().iter().copied().chain([e]).collect()))
                .collect();
            children.extend(
                (0..n).map(|u| (n + 1, g.edges().iter().copied().chain([(u, n)]).collect())),
            );
            for (order, edges) in children {
                let child = UndirectedGraph::from_edge_list(order, edges).expect("valid edges");
                if seen.insert(canon(&child.biorient())) {
                    next.push(child);
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all.append(&mut level);
    all
}

fn symmetric_characterization() -> Outcome {
    let graphs = connected_graphs(8);
    let mut checked = 0;
    for g in graphs.iter().filter(|g| g.n() >= 2) {
        let d = g.biorient();
        for k in 2..=d.n() {
            let decided = decide2_symmetric(&d, k).map_err(fail)?;
            let exact = lambda_k_at_least(&d, k, 2, &cfg()).map_err(fail)?;
            if decided.is_some() != exact {
                return Err(format!(
                    "{g:?} k={k}: decider {}, exact {exact}",
                    decided.is_some()
                ));
            }
            if let Some(p) = decided {
                if p.len() != 2 || !verify_packing(&d, &p) {
                    return Err(format!("{g:?}: orientation certificate does not verify"));
                }
            }
        }
        let fast = lambda2_symmetric(&d).map_err(fail)?;
        let exact = lambda_k_exact(&d, 2, &cfg()).map_err(fail)?.value;
        if fast != exact {
            return Err(format!("{g:?}: lambda_2 {fast}, exact {exact}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} connected graphs with <= 8 edges"))
}

fn product_table() -> Outcome {
    let mut entries = 0;
    for (n, m) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
        for tree in [TreeShape::Path, TreeShape::Star] {
            for e in product_table_with(n, m, tree, &cfg()).map_err(fail)? {
                if !e.matches() {
                    return Err(format!(
                        "{} x {} (n={n}, m={m}, {tree:?}): bounds {}..={}, formula {} = {}",
                        e.row, e.column, e.lower, e.upper, e.formula, e.expected
                    ));
                }
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries (paths and stars)"))
}

/// Digraphs of order `n` with minimum in- and out-degree at least `n - 2`,
/// one per isomorphism class: complete digraphs minus the arcs of a partial
/// injection without fixed points.
fn near_complete(n: usize) -> Vec<Digraph> {
    fn extend(
        n: usize,
        v: usize,
        image: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if v == n {
            out.push(
                image
                    .iter()
                    .enumerate()
                    .filter_map(|(u, w)| w.map(|w| (u, w)))
                    .collect(),
            );
            return;
        }
        image.push(None);
        extend(n, v + 1, image, out);
        image.pop();
        for w in (0..n).filter(|&w| w != v) {
            if image.contains(&Some(w)) {
                continue;
            }
            image.push(Some(w));
            extend(n, v + 1, image, out);
            image.pop();
        }
    }
    let mut removals = Vec::new();
    extend(n, 0, &mut Vec::new(), &mut removals);
    let mut seen = BTreeSet::new();
    removals
        .into_iter()
        .map(|r| Digraph::complete(n).spanning_subgraph(|a| !r.contains(&a)))
        .filter(|d| seen.insert(canon(d)))
        .collect()
}

fn lambda2(d: &Digraph) -> Result<usize, String> {
    lambda_k_exact(d, 2, &cfg()).map(|r| r.value).map_err(fail)
}

fn minimal_family() -> Outcome {
    let mut summary = Vec::new();
    for n in [4, 5] {
        // λ_2 = n - 2 forces minimum in- and out-degree >= n - 2, so every
        // candidate lies among the near-complete digraphs.
        let (mut operational, mut recognized) = (BTreeSet::new(), BTreeSet::new());
        for d in near_complete(n) {
            if recognize_minimal_2_nminus2(&d) {
                recognized.insert(canon(&d));
                for pair in (0..n).combinations(2) {
                    let s = vset(pair, n);
                    let p = minimal_packing(&d, &s).map_err(fail)?;
                    if p.len() != n - 2 || !verify_packing(&d, &p) {
                        return Err(format!(
                            "{d:?} S={s}: certificate with {} parts fails",
                            p.len()
                        ));
                    }
                }
            }
            if lambda2(&d)? != n - 2 {
                continue;
            }
            let mut minimal = true;
            for &(u, v) in d.arcs() {
                if lambda2(&d.without_arc(u, v).map_err(fail)?)? > n - 3 {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                operational.insert(canon(&d));
            }
        }
        if operational != recognized {
            return Err(format!(
                "n={n}: {} operational classes, {} recognised",
                operational.len(),
                recognized.len()
            ));
        }
        summary.push(format!("n={n}: {} classes", recognized.len()));
    }
    Ok(summary.join("; "))
}

fn oracle_equivalence() -> Outcome {
    const ARCS: usize = 12;
    let compare = |d: &Digraph| -> Result<usize, String> {
        let mut sets = 0;
        for k in 2..=d.n() {
            for combo in (0..d.n()).combinations(k) {
                let s = vset(combo, d.n());
                let exact = lambda_s_exact(d, &s, &cfg()).map_err(fail)?.value;
                let oracle = oracle_lambda_s(d, &s, ARCS).map_err(fail)?;
                if exact != oracle {
                    return Err(format!("{d:?} S={s}: solver {exact}, oracle {oracle}"));
                }
                sets += 1;
            }
        }
        Ok(sets)
    };
    let (mut digraphs, mut sets) = (0, 0);
    for n in 2..=4 {
        for d in enumerate_digraphs(n, EnumMode::AllLabeled).map_err(fail)? {
            if d.arc_count() <= ARCS {
                sets += compare(&d)?;
                digraphs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut random = 0;
    while random < 500 {
        let d = random_digraph(&mut rng, 5, 0.5);
        if d.arc_count() <= ARCS {
            sets += compare(&d)?;
            random += 1;
        }
    }
    Ok(format!(
        "{digraphs} exhaustive + {random} random digraphs, {sets} terminal sets"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("complete digraph values", complete_digraph_values),
        ("gadget equivalence with weak 2-linkage", gadget_equivalence),
        ("bound and characterization suite", check_suite),
        (
            "semicomplete lambda >= 2 characterization",
            semicomplete_characterization,
        ),
        (
            "symmetric lambda >= 2 characterization",
            symmetric_characterization,
        ),
        ("Cartesian product table", product_table),
        ("minimally strong (2, n-2) family", minimal_family),
        ("exact solver against assignment oracle", oracle_equivalence),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}) {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL ({name}) {detail} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
