use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub(crate) const MAX_ARCS: usize = 256;
pub(crate) const MAX_VERTICES: usize = 64;

/// Fixed-width bitset over arc indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub(crate) struct ArcMask([u64; 4]);

impl ArcMask {
    pub fn single(i: usize) -> Self {
        let mut m = ArcMask::default();
        m.insert(i);
        m
    }

    pub fn first_n(n: usize) -> Self {
        let mut m = ArcMask::default();
        for i in 0..n {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn and(self, o: Self) -> Self {
        ArcMask([
            self.0[0] & o.0[0],
            self.0[1] & o.0[1],
            self.0[2] & o.0[2],
            self.0[3] & o.0[3],
        ])
    }

    #[inline]
    pub fn or(self, o: Self) -> Self {
        ArcMask([
            self.0[0] | o.0[0],
            self.0[1] | o.0[1],
            self.0[2] | o.0[2],
            self.0[3] | o.0[3],
        ])
    }

    #[inline]
    pub fn minus(self, o: Self) -> Self {
        ArcMask([
            self.0[0] & !o.0[0],
            self.0[1] & !o.0[1],
            self.0[2] & !o.0[2],
            self.0[3] & !o.0[3],
        ])
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    #[inline]
    pub fn intersects(&self, o: &Self) -> bool {
        !self.and(*o).is_empty()
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

/// Digraph with arcs numbered in lexicographic order and per-vertex arc masks.
pub(crate) struct Indexed {
    pub arcs: Vec<(usize, usize)>,
    pub out: Vec<ArcMask>,
    pub inn: Vec<ArcMask>,
    pub all: ArcMask,
}

impl Indexed {
    pub fn new(d: &Digraph) -> Result<Self> {
        if d.n() > MAX_VERTICES || d.arc_count() > MAX_ARCS {
            return Err(Error::TooLarge(format!(
                "order {} / {} arcs; limits are {MAX_VERTICES} / {MAX_ARCS}",
                d.n(),
                d.arc_count()
            )));
        }
        let mut out = vec![ArcMask::default(); d.n()];
        let mut inn = vec![ArcMask::default(); d.n()];
        for (i, &(u, v)) in d.arcs().iter().enumerate() {
            out[u].insert(i);
            inn[v].insert(i);
        }
        Ok(Indexed {
            arcs: d.arcs().to_vec(),
            out,
            inn,
            all: ArcMask::first_n(d.arc_count()),
        })
    }

    /// Vertices reachable from `start` (a vertex mask) using only `within`;
    /// backwards when `forward` is false.
    pub fn reach(&self, start: u64, within: &ArcMask, forward: bool) -> u64 {
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let arcs = if forward { self.out[v] } else { self.inn[v] }.and(*within);
            for i in arcs.iter() {
                let (a, b) = self.arcs[i];
                let w = if forward { b } else { a };
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    frontier |= 1 << w;
                }
            }
        }
        seen
    }

    /// Whether the arcs `within` contain a strong subgraph whose vertex set
    /// includes every vertex of `targets` (i.e. they share a strong component).
    pub fn co_strong(&self, targets: u64, within: &ArcMask) -> bool {
        if targets == 0 {
            return true;
        }
        let root = 1u64 << targets.trailing_zeros();
        let fwd = self.reach(root, within, true);
        if targets & !fwd != 0 {
            return false;
        }
        let bwd = self.reach(root, within, false);
        targets & !bwd == 0
    }
}
