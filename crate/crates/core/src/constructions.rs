//! Extremal colorings: the split coloring of `K_{m+n-2, m+n-2}` and the
//! four-block graph whose minimum degree sits exactly at `3(m+n-1)/4`.

use serde::{Deserialize, Serialize};

use crate::arrowing::is_bad_coloring;
use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::matching::max_connected_matching;
use crate::target::Target;

/// One stated quantity of a construction next to its computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub quantity: String,
    pub expected: usize,
    pub computed: usize,
    pub pass: bool,
}

impl Claim {
    fn new(quantity: &str, expected: usize, computed: usize) -> Self {
        Claim {
            quantity: quantity.to_string(),
            expected,
            computed,
            pass: expected == computed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub graph: BipartiteGraph,
    pub coloring: EdgeColoring,
    pub claims: Vec<Claim>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

fn cm_sizes(c: &EdgeColoring) -> (usize, usize) {
    (
        max_connected_matching(&c.mono_subgraph(Color::Red)).size,
        max_connected_matching(&c.mono_subgraph(Color::Blue)).size,
    )
}

/// `K_{N,N}` with `N = m + n - 2`: the first `m - 1` X-vertices see only red
/// edges, the remaining `n - 1` only blue ones.
pub fn split_witness(m: usize, n: usize) -> Result<WitnessReport> {
    if !(m > n && n >= 1) {
        return Err(Error::param(format!(
            "split coloring needs m > n >= 1, got m = {m}, n = {n}"
        )));
    }
    let size = m + n - 2;
    let graph = BipartiteGraph::complete_bipartite(size, size)?;
    let mut coloring = EdgeColoring::new(graph.clone());
    for (x, y) in graph.edges() {
        let color = if x < m - 1 { Color::Red } else { Color::Blue };
        coloring.set(x, y, color)?;
    }
    let (red, blue) = cm_sizes(&coloring);
    let claims = vec![
        Claim::new("side size", m + n - 2, graph.n1()),
        Claim::new("red max connected matching", m - 1, red),
        Claim::new("blue max connected matching", n - 1, blue),
    ];
    Ok(WitnessReport {
        graph,
        coloring,
        claims,
    })
}

/// Index range of block `i` (1-based) when a side of `4q` vertices is cut
/// into four consecutive blocks.
pub fn block(i: usize, q: usize) -> std::ops::Range<usize> {
    (i - 1) * q..i * q
}

/// The four-block graph on `2(m+n-1)` vertices, blocks of size `q = (m+n-1)/4`.
///
/// `X_1, X_2` are joined to their own `Y`-block and to `Y_3 ∪ Y_4`; `X_3, X_4`
/// to their own block and to `Y_1 ∪ Y_2`. Diagonal blocks `X_i × Y_i` are
/// blue, the cross blocks red. Requires `4 | m+n-1` and `n < m < 3n`.
pub fn construction_one(m: usize, n: usize) -> Result<WitnessReport> {
    if !(n < m && m < 3 * n) {
        return Err(Error::param(format!(
            "four-block construction needs n < m < 3n, got m = {m}, n = {n}"
        )));
    }
    let order = m + n - 1;
    if !order.is_multiple_of(4) {
        return Err(Error::param(format!(
            "four-block construction needs 4 | m+n-1, got m+n-1 = {order}"
        )));
    }
    let q = order / 4;
    let block_of = |v: usize| v / q + 1;
    let mut graph = BipartiteGraph::empty(order, order)?;
    for x in 0..order {
        for y in 0..order {
            let (i, j) = (block_of(x), block_of(y));
            let adjacent = i == j || (i <= 2 && j >= 3) || (i >= 3 && j <= 2);
            if adjacent {
                graph.add_edge(x, y);
            }
        }
    }
    let mut coloring = EdgeColoring::new(graph.clone());
    for (x, y) in graph.edges() {
        let color = if block_of(x) == block_of(y) {
            Color::Blue
        } else {
            Color::Red
        };
        coloring.set(x, y, color)?;
    }
    let (red, blue) = cm_sizes(&coloring);
    let claims = vec![
        Claim::new("side size", order, graph.n1()),
        Claim::new("minimum degree", 3 * order / 4, graph.min_degree()?),
        Claim::new("red max connected matching", order / 2, red),
        Claim::new("blue max connected matching", order / 4, blue),
    ];
    Ok(WitnessReport {
        graph,
        coloring,
        claims,
    })
}

/// The report's coloring is total and avoids a red `t_red` and a blue `t_blue`.
pub fn verify_witness(r: &WitnessReport, t_red: Target, t_blue: Target) -> Result<bool> {
    if !r.coloring.is_total() {
        return Err(Error::param("witness coloring leaves edges uncolored"));
    }
    Ok(is_bad_coloring(&r.coloring, t_red, t_blue))
}
