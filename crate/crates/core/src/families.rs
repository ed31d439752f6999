//! Standard digraph families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, UndirectedGraph};
use crate::error::{Error, Result};

/// Seed used by [`Family::BidirectedTreeRandom`] when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    CompleteBidirected,
    Dicycle,
    BidirectedCycle,
    BidirectedPath,
    BidirectedTreeRandom,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::CompleteBidirected,
        Family::Dicycle,
        Family::BidirectedCycle,
        Family::BidirectedPath,
        Family::BidirectedTreeRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CompleteBidirected => "complete_bidirected",
            Family::Dicycle => "dicycle",
            Family::BidirectedCycle => "bidirected_cycle",
            Family::BidirectedPath => "bidirected_path",
            Family::BidirectedTreeRandom => "bidirected_tree_random",
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            Family::CompleteBidirected | Family::BidirectedPath | Family::BidirectedTreeRandom => 1,
            Family::BidirectedCycle => 2,
            Family::Dicycle => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Builds a member of `family` on `n` vertices. `seed` only matters for the
/// random tree.
///
/// `bidirected_cycle` with `n = 2` is the single 2-cycle.
pub fn standard_family(family: Family, n: usize, seed: Option<u64>) -> Result<Digraph> {
    if n < family.min_order() {
        return Err(Error::FamilyTooSmall {
            family: family.name(),
            min: family.min_order(),
            n,
        });
    }
    let d = match family {
        Family::CompleteBidirected => Digraph::complete(n),
        Family::Dicycle => dicycle(n),
        Family::BidirectedCycle => {
            let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            UndirectedGraph::from_valid(n, edges).biorient()
        }
        Family::BidirectedPath => path(n).biorient(),
        Family::BidirectedTreeRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(DEFAULT_SEED));
            let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
            UndirectedGraph::from_valid(n, edges).biorient()
        }
    };
    Ok(d)
}

pub(crate) fn dicycle(n: usize) -> Digraph {
    Digraph::from_valid(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub(crate) fn path(n: usize) -> UndirectedGraph {
    UndirectedGraph::from_valid(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// The star `K_{1,n-1}` centred at 0.
pub(crate) fn star(n: usize) -> UndirectedGraph {
    UndirectedGraph::from_valid(n, (1..n).map(|i| (0, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(
            standard_family(Family::CompleteBidirected, 4, None)
                .unwrap()
                .arc_count(),
            12
        );
        let c3 = standard_family(Family::Dicycle, 3, None).unwrap();
        assert_eq!(c3.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        let bc5 = standard_family(Family::BidirectedCycle, 5, None).unwrap();
        assert_eq!(bc5.arc_count(), 10);
        assert!((0..5).all(|v| bc5.out_degree(v) == 2 && bc5.in_degree(v) == 2));
        assert_eq!(
            standard_family(Family::BidirectedCycle, 2, None)
                .unwrap()
                .arc_count(),
            2
        );
        for n in 1..8 {
            assert_eq!(
                standard_family(Family::BidirectedPath, n, None)
                    .unwrap()
                    .arc_count(),
                2 * (n - 1)
            );
            let t = standard_family(Family::BidirectedTreeRandom, n, Some(n as u64)).unwrap();
            assert_eq!(t.arc_count(), 2 * (n - 1));
            assert!(t.is_strong());
        }
    }

    #[test]
    fn family_minimums() {
        assert!(standard_family(Family::Dicycle, 2, None).is_err());
        assert!(standard_family(Family::BidirectedCycle, 1, None).is_err());
        assert!(standard_family(Family::CompleteBidirected, 0, None).is_err());
    }

    #[test]
    fn random_tree_is_reproducible() {
        let a = standard_family(Family::BidirectedTreeRandom, 9, Some(7)).unwrap();
        let b = standard_family(Family::BidirectedTreeRandom, 9, Some(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("petersen".parse::<Family>().is_err());
    }
}
