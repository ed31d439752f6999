//! Packings in Cartesian products `G □ H` built from factor packings.
//!
//! Vertex `(a, b)` of the product is `a * |V(H)| + b`. A factor packing for
//! a pair of `G`-vertices is copied into the `G`-fibre at a fixed second
//! coordinate, and symmetrically for `H`. The parts for `S = {x, y}` are
//! stitched together from such copies so that every fibre arc is used at
//! most once.

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::packing::Packing;
use crate::solver::{lambda_s_exact, SolverConfig};

type Arcs = Vec<(usize, usize)>;
/// Supplies an exact certificate for a vertex pair of a factor.
pub(crate) type CertSource<'a> = dyn FnMut(&Digraph, [usize; 2]) -> Result<Vec<Arcs>> + 'a;

struct Fibres {
    m: usize,
}

impl Fibres {
    /// Copy of a `G`-part into the fibre with second coordinate `b`.
    fn g_copy(&self, part: &[(usize, usize)], b: usize) -> Arcs {
        part.iter()
            .map(|&(u, v)| (u * self.m + b, v * self.m + b))
            .collect()
    }

    /// Copy of an `H`-part into the fibre with first coordinate `a`.
    fn h_copy(&self, part: &[(usize, usize)], a: usize) -> Arcs {
        part.iter()
            .map(|&(u, v)| (a * self.m + u, a * self.m + v))
            .collect()
    }
}

/// A packing for `S = {x, y}` in `G □ H` with at least `λ_2(G) + λ_2(H)`
/// parts, where the factor values are realised by exact certificates for
/// the relevant vertex pairs. Verified before it is returned.
pub fn product_packing(
    g: &Digraph,
    h: &Digraph,
    s: &VertexSet,
    cfg: &SolverConfig,
) -> Result<Packing> {
    product_packing_with(g, h, s, &mut |d, pair| {
        let s = VertexSet::new(pair.to_vec(), d.n())?;
        Ok(lambda_s_exact(d, &s, cfg)?.certificate.parts)
    })
}

/// As [`product_packing`], with factor certificates supplied by `cert`
/// (called with the factor and a vertex pair). Lets callers cache them.
pub(crate) fn product_packing_with(
    g: &Digraph,
    h: &Digraph,
    s: &VertexSet,
    cert: &mut CertSource<'_>,
) -> Result<Packing> {
    if g.n() < 2 || h.n() < 2 {
        return Err(Error::Precondition(
            "both factors need at least two vertices".into(),
        ));
    }
    if !g.is_strong() || !h.is_strong() {
        return Err(Error::NotStrong);
    }
    let m = h.n();
    let prod = Digraph::cartesian_product(g, h);
    if s.len() != 2 || s.members().iter().any(|&v| v >= prod.n()) {
        return Err(Error::InvalidVertexSet(format!(
            "{s} is not a pair of product vertices"
        )));
    }
    let f = Fibres { m };
    let (x, y) = (s.members()[0], s.members()[1]);
    let (a, b) = (x / m, x % m);
    let (c, d) = (y / m, y % m);

    let parts = if a == c {
        // Same H-fibre: H-parts there, plus detours through other H-fibres.
        let e = cert(h, [b, d])?;
        let other = usize::from(a == 0);
        let fp = cert(g, [a, other])?;
        let mut parts: Vec<Arcs> = e.iter().map(|p| f.h_copy(p, a)).collect();
        for fi in &fp {
            let t = first_out_head(fi, a);
            let mut part = f.g_copy(fi, b);
            part.extend(f.h_copy(&e[0], t));
            part.extend(f.g_copy(fi, d));
            parts.push(part);
        }
        parts
    } else if b == d {
        let fp = cert(g, [a, c])?;
        let other = usize::from(b == 0);
        let e = cert(h, [b, other])?;
        let mut parts: Vec<Arcs> = fp.iter().map(|p| f.g_copy(p, b)).collect();
        for ej in &e {
            let t = first_out_head(ej, b);
            let mut part = f.h_copy(ej, a);
            part.extend(f.g_copy(&fp[0], t));
            part.extend(f.h_copy(ej, c));
            parts.push(part);
        }
        parts
    } else {
        distinct_fibres(&f, cert(g, [a, c])?, cert(h, [b, d])?, (a, b), (c, d))
    };
    let packing = Packing::new(s.clone(), parts);
    packing.ensure_valid(&prod)?;
    Ok(packing)
}

/// `x = (a, b)`, `y = (c, d)` with `a != c`, `b != d`.
///
/// `D_i = F_i(b) ∪ E_h(t_i) ∪ F_i(d)` where `t_i` is an out-neighbour of `a`
/// in `F_i`, and symmetrically `D'_j = E_j(a) ∪ F_g(t'_j) ∪ E_j(c)`. If some
/// `t_i = c` or `t'_j = d`, those detours would reuse fibre arcs of the other
/// family, so one part of each family is replaced by the two direct routes
/// `F_i(b) ∪ E_j(c)` and `E_j(a) ∪ F_i(d)`.
fn distinct_fibres(
    f: &Fibres,
    fp: Vec<Arcs>,
    e: Vec<Arcs>,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> Vec<Arcs> {
    let t: Vec<usize> = fp.iter().map(|p| first_out_head(p, a)).collect();
    let tp: Vec<usize> = e.iter().map(|p| first_out_head(p, b)).collect();
    let i_star = t.iter().position(|&v| v == c);
    let j_star = tp.iter().position(|&v| v == d);
    let i0 = i_star.unwrap_or(0);
    let j0 = j_star.unwrap_or(0);
    let repair = i_star.is_some() || j_star.is_some();
    let mut parts = Vec::new();
    for (i, fi) in fp.iter().enumerate() {
        if repair && i == i0 {
            continue;
        }
        let mut part = f.g_copy(fi, b);
        part.extend(f.h_copy(&e[j0], t[i]));
        part.extend(f.g_copy(fi, d));
        parts.push(part);
    }
    for (j, ej) in e.iter().enumerate() {
        if repair && j == j0 {
            continue;
        }
        let mut part = f.h_copy(ej, a);
        part.extend(f.g_copy(&fp[i0], tp[j]));
        part.extend(f.h_copy(ej, c));
        parts.push(part);
    }
    if repair {
        let mut first = f.g_copy(&fp[i0], b);
        first.extend(f.h_copy(&e[j0], c));
        let mut second = f.h_copy(&e[j0], a);
        second.extend(f.g_copy(&fp[i0], d));
        parts.push(first);
        parts.push(second);
    }
    parts
}

/// Head of the lexicographically smallest arc of `part` leaving `v`.
fn first_out_head(part: &[(usize, usize)], v: usize) -> usize {
    part.iter()
        .filter(|&&(u, _)| u == v)
        .map(|&(_, w)| w)
        .min()
        .expect("a strong part containing v has an arc leaving v")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{dicycle, standard_family, Family};
    use itertools::Itertools;

    fn all_pairs_min(g: &Digraph, h: &Digraph) -> usize {
        let n = g.n() * h.n();
        (0..n)
            .tuple_combinations()
            .map(|(x, y)| {
                let s = VertexSet::new(vec![x, y], n).unwrap();
                product_packing(g, h, &s, &SolverConfig::default())
                    .unwrap()
                    .len()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn dicycle_products_reach_the_degree_cap() {
        assert_eq!(all_pairs_min(&dicycle(3), &dicycle(3)), 2);
        assert_eq!(all_pairs_min(&dicycle(3), &dicycle(4)), 2);
    }

    #[test]
    fn mixed_products() {
        let bc3 = standard_family(Family::BidirectedCycle, 3, None).unwrap();
        assert_eq!(all_pairs_min(&bc3, &bc3), 4);
        assert_eq!(all_pairs_min(&dicycle(3), &Digraph::complete(4)), 4);
        assert_eq!(
            all_pairs_min(&Digraph::complete(3), &Digraph::complete(3)),
            4
        );
    }

    #[test]
    fn rejects_non_strong_factor() {
        let arc = Digraph::from_arc_list(2, [(0, 1)]).unwrap();
        let s = VertexSet::new(vec![0, 1], 4).unwrap();
        assert!(matches!(
            product_packing(&arc, &dicycle(2), &s, &SolverConfig::default()),
            Err(Error::NotStrong)
        ));
    }
}
