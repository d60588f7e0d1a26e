//! Even cycles of a prescribed length and cycle spectra.
//!
//! Exponential in the worst case; intended for graphs with at most a few
//! dozen vertices per side.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, low_mask, BipartiteGraph};

/// A cycle `xs[0] ys[0] xs[1] ys[1] … xs[k-1] ys[k-1] xs[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

impl Cycle {
    /// Number of edges (equivalently, vertices).
    pub fn len(&self) -> usize {
        2 * self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Consecutive edges of the cycle as `(x, y)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.xs.len();
        let mut out = Vec::with_capacity(2 * k);
        for i in 0..k {
            out.push((self.xs[i], self.ys[i]));
            out.push((self.xs[(i + 1) % k], self.ys[i]));
        }
        out
    }

    /// Simple, closed, of even length at least 4, and every edge present in `g`.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        let k = self.xs.len();
        if k < 2 || self.ys.len() != k {
            return false;
        }
        let distinct = |v: &[usize], n: usize| {
            let mut seen = 0u64;
            v.iter().all(|&i| {
                let fresh = i < n && seen >> i & 1 == 0;
                seen |= 1 << i.min(63);
                fresh
            })
        };
        distinct(&self.xs, g.n1()) && distinct(&self.ys, g.n2()) && self.edges().iter().all(|&(x, y)| g.has_edge(x, y))
    }
}

fn check_length(length: usize) -> Result<()> {
    if length < 4 || !length.is_multiple_of(2) {
        return Err(Error::param(format!(
            "cycle length must be even and at least 4, got {length}"
        )));
    }
    Ok(())
}

/// Depth-first search for an alternating simple path that starts at a fixed
/// X-vertex and closes into `target_y`.
pub(crate) struct PathSearch<'a> {
    pub rows: &'a [u64],
    pub cols: &'a [u64],
    pub allowed_x: u64,
    pub allowed_y: u64,
    pub target_y: u64,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

impl<'a> PathSearch<'a> {
    /// Extend the path ending at X-vertex `x` by `y_left` more Y-vertices
    /// (and `y_left - 1` X-vertices), the last Y drawn from `target_y`.
    pub fn extend(&mut self, x: usize, used_x: u64, used_y: u64, y_left: usize) -> bool {
        if y_left == 1 {
            let end = self.rows[x] & self.target_y & !used_y;
            if end != 0 {
                self.ys.push(end.trailing_zeros() as usize);
                return true;
            }
            return false;
        }
        let free_x = self.allowed_x & !used_x;
        if (free_x.count_ones() as usize) < y_left - 1 {
            return false;
        }
        let ys = self.rows[x] & self.allowed_y & !used_y;
        for y in bits(ys) {
            let used_y = used_y | 1 << y;
            let mut nx = self.cols[y] & free_x;
            if y_left == 2 {
                // the next X must still see an unused target
                let mut ok = 0u64;
                for x2 in bits(nx) {
                    if self.rows[x2] & self.target_y & !used_y != 0 {
                        ok |= 1 << x2;
                    }
                }
                nx = ok;
            }
            for x2 in bits(nx) {
                self.ys.push(y);
                self.xs.push(x2);
                if self.extend(x2, used_x | 1 << x2, used_y, y_left - 1) {
                    return true;
                }
                self.ys.pop();
                self.xs.pop();
            }
        }
        false
    }
}

/// Search for a cycle of exactly `length` edges whose lowest X-vertex is `x0`,
/// over the given rows/cols.
pub(crate) fn cycle_from(rows: &[u64], cols: &[u64], x0: usize, length: usize) -> Option<Cycle> {
    let k = length / 2;
    let n1 = rows.len();
    let above = low_mask(n1) & !low_mask(x0 + 1);
    if (above.count_ones() as usize) < k - 1 || (rows[x0].count_ones() as usize) < 2 {
        return None;
    }
    let mut s = PathSearch {
        rows,
        cols,
        allowed_x: above,
        allowed_y: u64::MAX,
        target_y: rows[x0],
        xs: vec![x0],
        ys: Vec::with_capacity(k),
    };
    if s.extend(x0, 1 << x0, 0, k) {
        Some(Cycle { xs: s.xs, ys: s.ys })
    } else {
        None
    }
}

/// A cycle of `length` edges through the edge `(x, y)`, given rows/cols that
/// already contain it.
pub(crate) fn cycle_through(rows: &[u64], cols: &[u64], x: usize, y: usize, length: usize) -> Option<Cycle> {
    let k = length / 2;
    let mut s = PathSearch {
        rows,
        cols,
        allowed_x: low_mask(rows.len()) & !(1 << x),
        allowed_y: !(1u64 << y),
        target_y: 1 << y,
        xs: vec![x],
        ys: Vec::with_capacity(k),
    };
    if s.extend(x, 1 << x, 0, k) {
        Some(Cycle { xs: s.xs, ys: s.ys })
    } else {
        None
    }
}

/// A cycle with exactly `length` edges, verified before it is returned.
pub fn has_cycle(g: &BipartiteGraph, length: usize) -> Result<Option<Cycle>> {
    check_length(length)?;
    let k = length / 2;
    if g.n1() < k || g.n2() < k {
        return Ok(None);
    }
    for x0 in 0..g.n1() {
        if let Some(c) = cycle_from(g.rows(), g.cols(), x0, length) {
            assert!(
                c.verify(g) && c.len() == length,
                "cycle search produced an invalid witness"
            );
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Which even lengths in `4..=max_len` occur as cycle lengths, with a witness each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpectrum {
    pub max_len_checked: usize,
    pub witnesses: BTreeMap<usize, Cycle>,
}

impl CycleSpectrum {
    pub fn present(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, length: usize) -> bool {
        self.witnesses.contains_key(&length)
    }
}

pub fn spectrum(g: &BipartiteGraph, max_len: usize) -> Result<CycleSpectrum> {
    check_length(max_len)?;
    let mut witnesses = BTreeMap::new();
    for length in (4..=max_len).step_by(2) {
        if let Some(c) = has_cycle(g, length)? {
            witnesses.insert(length, c);
        }
    }
    Ok(CycleSpectrum {
        max_len_checked: max_len,
        witnesses,
    })
}
