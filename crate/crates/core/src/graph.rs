//! Bipartite graphs stored as bit rows.
//!
//! Every X-vertex owns a `u64` whose set bits are its Y-neighbours. The
//! Y-side view (the transpose) is computed eagerly and kept in sync by the
//! few mutating methods, so both directions are available at the cost of a
//! word load.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest side supported by the bit-row representation.
pub const MAX_SIDE: usize = 64;

/// Iterate the indices of the set bits of `word`, lowest first.
#[inline]
pub fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A vertex named by its side and its 0-based position within that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub fn x(index: usize) -> Self {
        VertexRef { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        VertexRef { side: Side::Y, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

/// A bipartite graph with parts X (`n1` vertices) and Y (`n2` vertices).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

/// Original indices of the vertices kept by [`BipartiteGraph::induced_subgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

impl BipartiteGraph {
    /// The edgeless graph on `n1 + n2` vertices.
    pub fn empty(n1: usize, n2: usize) -> Result<Self> {
        for n in [n1, n2] {
            if n > MAX_SIDE {
                return Err(Error::SideTooLarge(n));
            }
        }
        Ok(BipartiteGraph {
            n1,
            n2,
            rows: vec![0; n1],
            cols: vec![0; n2],
        })
    }

    /// Build from an edge list. Duplicates are merged.
    pub fn from_edge_list(n1: usize, n2: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n1, n2)?;
        for &(x, y) in edges {
            if x >= n1 || y >= n2 {
                return Err(Error::EdgeOutOfRange { x, y, n1, n2 });
            }
            g.add_edge(x, y);
        }
        Ok(g)
    }

    /// Build directly from X-rows; bits at or above `n2` are rejected.
    pub fn from_rows(n1: usize, n2: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != n1 {
            return Err(Error::param(format!("expected {n1} rows, got {}", rows.len())));
        }
        let mut g = Self::empty(n1, n2)?;
        for (x, &row) in rows.iter().enumerate() {
            if row & !low_mask(n2) != 0 {
                let y = (row & !low_mask(n2)).trailing_zeros() as usize;
                return Err(Error::EdgeOutOfRange { x, y, n1, n2 });
            }
            for y in bits(row) {
                g.add_edge(x, y);
            }
        }
        Ok(g)
    }

    pub fn complete_bipartite(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::param("complete bipartite graph needs both sides non-empty"));
        }
        let mut g = Self::empty(n1, n2)?;
        g.rows.iter_mut().for_each(|r| *r = low_mask(n2));
        g.cols.iter_mut().for_each(|c| *c = low_mask(n1));
        Ok(g)
    }

    /// Same bipartition, an edge exactly where `self` has none.
    pub fn complement(&self) -> Self {
        let rows = self.rows.iter().map(|r| !r & low_mask(self.n2)).collect();
        let cols = self.cols.iter().map(|c| !c & low_mask(self.n1)).collect();
        BipartiteGraph {
            n1: self.n1,
            n2: self.n2,
            rows,
            cols,
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::X => self.n1,
            Side::Y => self.n2,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.n1 == self.n2
    }

    /// Y-neighbours of X-vertex `x`.
    #[inline]
    pub fn row(&self, x: usize) -> u64 {
        self.rows[x]
    }

    /// X-neighbours of Y-vertex `y`.
    #[inline]
    pub fn col(&self, y: usize) -> u64 {
        self.cols[y]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn cols(&self) -> &[u64] {
        &self.cols
    }

    /// Neighbourhood of `v` as a bit set over the opposite side.
    pub fn neighbors(&self, v: VertexRef) -> u64 {
        match v.side {
            Side::X => self.rows[v.index],
            Side::Y => self.cols[v.index],
        }
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn degree(&self, v: VertexRef) -> usize {
        self.neighbors(v).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| bits(r).map(move |y| (x, y)))
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
        self.cols[y] |= 1 << x;
    }

    pub fn remove_edge(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1 << y);
        self.cols[y] &= !(1 << x);
    }

    /// Minimum degree over both sides.
    pub fn min_degree(&self) -> Result<usize> {
        let x = self.rows.iter().map(|r| r.count_ones());
        let y = self.cols.iter().map(|c| c.count_ones());
        x.chain(y).min().map(|d| d as usize).ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> usize {
        let x = self.rows.iter().map(|r| r.count_ones());
        let y = self.cols.iter().map(|c| c.count_ones());
        x.chain(y).max().unwrap_or(0) as usize
    }

    /// The subgraph induced by the X-set `xs` and Y-set `ys` (bit masks),
    /// reindexed in increasing order of original index.
    pub fn induced_subgraph(&self, xs: u64, ys: u64) -> (BipartiteGraph, InducedMap) {
        let xs: Vec<usize> = bits(xs & low_mask(self.n1)).collect();
        let ys: Vec<usize> = bits(ys & low_mask(self.n2)).collect();
        let mut sub = BipartiteGraph {
            n1: xs.len(),
            n2: ys.len(),
            rows: vec![0; xs.len()],
            cols: vec![0; ys.len()],
        };
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                if self.has_edge(x, y) {
                    sub.add_edge(i, j);
                }
            }
        }
        (sub, InducedMap { xs, ys })
    }

    /// The graph with the roles of X and Y exchanged.
    pub fn transpose(&self) -> Self {
        BipartiteGraph {
            n1: self.n2,
            n2: self.n1,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Check that the cached Y-side view is the exact transpose of the rows.
    pub fn is_consistent(&self) -> bool {
        let in_range = self.rows.iter().all(|r| r & !low_mask(self.n2) == 0)
            && self.cols.iter().all(|c| c & !low_mask(self.n1) == 0);
        in_range && (0..self.n1).all(|x| (0..self.n2).all(|y| (self.rows[x] >> y & 1) == (self.cols[y] >> x & 1)))
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph({}+{}, [", self.n1, self.n2)?;
        for (i, (x, y)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}-{y}")?;
        }
        write!(f, "])")
    }
}
