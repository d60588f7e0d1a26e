//! Deciding `G → (T_red, T_blue)`: does every red/blue coloring of `G`
//! contain a red `T_red` or a blue `T_blue`?
//!
//! The search looks for a counterexample coloring. Because containing a
//! connected matching or a cycle is monotone under adding edges, a branch
//! can be closed as soon as the partial red graph holds `T_red` (or the
//! partial blue graph `T_blue`): no completion of it can be a counterexample.

mod engine;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::target::Target;

pub use engine::{edge_order, SearchStats};
use engine::{Engine, Flow, Limits, Symmetry};

/// Knobs for [`find_bad_coloring`]. The boolean answer never depends on
/// `jobs`, `split_depth` or `symmetry`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of decision nodes; `None` for unlimited.
    pub budget: Option<u64>,
    /// Worker threads. With more than one, the tree is split `split_depth`
    /// decisions below the root.
    pub jobs: usize,
    pub split_depth: usize,
    /// Lex-order cuts between vertices with identical neighbourhoods.
    pub symmetry: bool,
    /// Also quotient by exchanging X and Y; only honoured when the host is
    /// balanced and equal to its transpose and both targets coincide.
    pub side_swap: bool,
    /// Force undecided edges whose color is determined by the targets.
    pub propagate: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            split_depth: 8,
            symmetry: true,
            side_swap: false,
            propagate: true,
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig {
            jobs: 1,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The search was exhausted without finding a counterexample.
    Arrows,
    /// A total coloring with neither a red `T_red` nor a blue `T_blue`.
    Counterexample(EdgeColoring),
    /// The node budget ran out; `frontier` open branches were left.
    Undecided { frontier: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowVerdict {
    pub outcome: Outcome,
    /// One of the targets is `CM_0`, which every coloring contains.
    pub degenerate: bool,
    pub stats: SearchStats,
}

impl ArrowVerdict {
    /// `Some(true)` if `G` arrows, `Some(false)` with a counterexample,
    /// `None` if undecided.
    pub fn arrows(&self) -> Option<bool> {
        match self.outcome {
            Outcome::Arrows => Some(true),
            Outcome::Counterexample(_) => Some(false),
            Outcome::Undecided { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&EdgeColoring> {
        match &self.outcome {
            Outcome::Counterexample(c) => Some(c),
            _ => None,
        }
    }
}

/// A coloring is bad when it is total and has neither a red `t_red` nor a
/// blue `t_blue`.
pub fn is_bad_coloring(c: &EdgeColoring, t_red: Target, t_blue: Target) -> bool {
    c.is_total() && !c.contains_target(Color::Red, t_red).found && !c.contains_target(Color::Blue, t_blue).found
}

fn symmetry_for(g: &BipartiteGraph, t_red: Target, t_blue: Target, cfg: &SearchConfig) -> Symmetry {
    if !cfg.symmetry {
        return Symmetry::none(g.n1(), g.n2());
    }
    let swap = cfg.side_swap && g.is_balanced() && t_red == t_blue && *g == g.transpose();
    Symmetry::twins(g, swap)
}

fn degenerate(t_red: Target, t_blue: Target) -> Option<ArrowVerdict> {
    (t_red.is_degenerate() || t_blue.is_degenerate()).then(|| ArrowVerdict {
        outcome: Outcome::Arrows,
        degenerate: true,
        stats: SearchStats::default(),
    })
}

fn witness_from(g: &BipartiteGraph, red: &[u64], blue: &[u64], t_red: Target, t_blue: Target) -> EdgeColoring {
    let c = EdgeColoring::from_rows(g.clone(), red.to_vec(), blue.to_vec())
        .expect("search colorings are disjoint subsets of the host");
    assert!(
        is_bad_coloring(&c, t_red, t_blue),
        "search produced a coloring that fails re-verification"
    );
    c
}

/// Search for a coloring of `g` with no red `t_red` and no blue `t_blue`.
pub fn find_bad_coloring(g: &BipartiteGraph, t_red: Target, t_blue: Target, cfg: &SearchConfig) -> ArrowVerdict {
    if let Some(v) = degenerate(t_red, t_blue) {
        return v;
    }
    if cfg.jobs <= 1 || cfg.split_depth == 0 {
        return sequential(g, t_red, t_blue, cfg, &mut None);
    }
    parallel(g, t_red, t_blue, cfg)
}

/// Single-threaded search that reports every decision node's partial
/// coloring (red rows, blue rows) to `observer`.
pub fn find_bad_coloring_observed(
    g: &BipartiteGraph,
    t_red: Target,
    t_blue: Target,
    cfg: &SearchConfig,
    observer: &mut dyn FnMut(&[u64], &[u64]),
) -> ArrowVerdict {
    if let Some(v) = degenerate(t_red, t_blue) {
        return v;
    }
    sequential(g, t_red, t_blue, cfg, &mut Some(observer))
}

fn sequential(
    g: &BipartiteGraph,
    t_red: Target,
    t_blue: Target,
    cfg: &SearchConfig,
    obs: &mut engine::Observer<'_>,
) -> ArrowVerdict {
    let mut eng = Engine::new(g, t_red, t_blue, symmetry_for(g, t_red, t_blue, cfg), cfg.propagate);
    let limits = Limits::new(cfg.budget);
    let outcome = match eng.dfs(0, &limits, 0, obs) {
        Flow::Found => Outcome::Counterexample(witness_from(g, eng.red_rows(), eng.blue_rows(), t_red, t_blue)),
        Flow::Exhausted => Outcome::Arrows,
        Flow::Abort(frontier) => Outcome::Undecided { frontier },
    };
    ArrowVerdict {
        outcome,
        degenerate: false,
        stats: eng.stats,
    }
}

enum TaskResult {
    Found(Vec<u64>, Vec<u64>),
    Exhausted,
    Abort(usize),
}

fn parallel(g: &BipartiteGraph, t_red: Target, t_blue: Target, cfg: &SearchConfig) -> ArrowVerdict {
    let mut root = Engine::new(g, t_red, t_blue, symmetry_for(g, t_red, t_blue, cfg), cfg.propagate);
    let mut tasks = Vec::new();
    root.split(0, cfg.split_depth, &mut tasks);
    let mut stats = root.stats;
    let limits = Limits::new(cfg.budget);

    let run = |(i, (mut eng, pos)): (usize, (Engine<'_>, Option<usize>))| {
        eng.stats = SearchStats::default();
        let res = match pos {
            None => Flow::Found,
            Some(p) => eng.dfs(p, &limits, i, &mut None),
        };
        let res = match res {
            Flow::Found => {
                limits.best.fetch_min(i, std::sync::atomic::Ordering::Relaxed);
                TaskResult::Found(eng.red_rows().to_vec(), eng.blue_rows().to_vec())
            }
            Flow::Exhausted => TaskResult::Exhausted,
            Flow::Abort(f) => TaskResult::Abort(f),
        };
        (res, eng.stats)
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build();
    let results: Vec<(TaskResult, SearchStats)> = match pool {
        Ok(pool) => pool.install(|| tasks.into_par_iter().enumerate().map(run).collect()),
        Err(_) => tasks.into_iter().enumerate().map(run).collect(),
    };

    let mut witness = None;
    let mut frontier = 0;
    for (res, s) in results {
        stats.merge(&s);
        match res {
            TaskResult::Found(r, b) if witness.is_none() => witness = Some((r, b)),
            TaskResult::Abort(f) => frontier += f,
            _ => {}
        }
    }
    let outcome = match witness {
        Some((r, b)) => Outcome::Counterexample(witness_from(g, &r, &b, t_red, t_blue)),
        None if frontier > 0 => Outcome::Undecided { frontier },
        None => Outcome::Arrows,
    };
    ArrowVerdict {
        outcome,
        degenerate: false,
        stats,
    }
}

/// Does every coloring of `g` contain a red `t_red` or a blue `t_blue`?
/// Unlimited budget, default parallelism.
pub fn arrows(g: &BipartiteGraph, t_red: Target, t_blue: Target) -> bool {
    arrows_with(g, t_red, t_blue, &SearchConfig::default())
}

pub fn arrows_with(g: &BipartiteGraph, t_red: Target, t_blue: Target, cfg: &SearchConfig) -> bool {
    let cfg = SearchConfig {
        budget: None,
        ..cfg.clone()
    };
    find_bad_coloring(g, t_red, t_blue, &cfg)
        .arrows()
        .expect("unlimited search always decides")
}

/// The closed form for the pair of targets, where one is known:
/// `br(CM_m, CM_n) = m + n - 1` for `m != n`, and for cycles `C_2m, C_2n`,
/// `m + n - 1` when `m != n` and `m + n` when `m == n`.
pub fn known_value(t_red: Target, t_blue: Target) -> Option<usize> {
    match (t_red, t_blue) {
        (Target::ConnectedMatching(m), Target::ConnectedMatching(n)) if m != n && m >= 1 && n >= 1 => Some(m + n - 1),
        (Target::EvenCycle(a), Target::EvenCycle(b)) => {
            let (m, n) = (a / 2, b / 2);
            Some(if m == n { m + n } else { m + n - 1 })
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyRow {
    pub n: usize,
    /// `None` when the node budget ran out.
    pub arrows: Option<bool>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyResult {
    pub t_red: Target,
    pub t_blue: Target,
    /// Smallest `N` with `K_{N,N} → (t_red, t_blue)`; `None` if no `N <= n_max` was certified.
    pub value: Option<usize>,
    pub rows: Vec<RamseyRow>,
    /// Counterexample on `K_{value-1, value-1}` (absent when `value == 1`).
    pub witness_below: Option<EdgeColoring>,
    /// Search statistics of the certifying run at `value`.
    pub certificate: Option<SearchStats>,
    /// Closed form for these targets, when one is known.
    pub closed_form: Option<usize>,
    pub n_max: usize,
}

impl RamseyResult {
    /// The scan stopped on an undecided row before finding `value`.
    pub fn undecided_at(&self) -> Option<usize> {
        self.rows.iter().find(|r| r.arrows.is_none()).map(|r| r.n)
    }
}

/// Smallest `N <= n_max` with `K_{N,N} → (t_red, t_blue)`, testing every
/// `N` from 1 upward.
pub fn bipartite_ramsey(t_red: Target, t_blue: Target, n_max: usize, cfg: &SearchConfig) -> Result<RamseyResult> {
    if n_max == 0 {
        return Err(Error::param("n_max must be at least 1"));
    }
    let mut res = RamseyResult {
        t_red,
        t_blue,
        value: None,
        rows: Vec::new(),
        witness_below: None,
        certificate: None,
        closed_form: known_value(t_red, t_blue),
        n_max,
    };
    for n in 1..=n_max {
        let g = BipartiteGraph::complete_bipartite(n, n)?;
        let v = find_bad_coloring(&g, t_red, t_blue, cfg);
        res.rows.push(RamseyRow {
            n,
            arrows: v.arrows(),
            stats: v.stats,
        });
        match v.outcome {
            Outcome::Arrows => {
                res.value = Some(n);
                res.certificate = Some(v.stats);
                break;
            }
            Outcome::Counterexample(c) => res.witness_below = Some(c),
            Outcome::Undecided { .. } => break,
        }
    }
    if res.value.is_none() {
        res.witness_below = None;
    }
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub index: usize,
    pub arrows: Option<bool>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub members: Vec<FamilyMember>,
    /// Members with a counterexample, and the counterexample.
    pub failures: Vec<(usize, EdgeColoring)>,
    pub undecided: Vec<usize>,
}

impl FamilyReport {
    pub fn total(&self) -> usize {
        self.members.len()
    }

    pub fn arrowing(&self) -> usize {
        self.members.iter().filter(|m| m.arrows == Some(true)).count()
    }

    pub fn all_arrow(&self) -> bool {
        self.failures.is_empty() && self.undecided.is_empty()
    }
}

/// Run the search on every graph of a family.
pub fn arrows_family<I>(graphs: I, t_red: Target, t_blue: Target, cfg: &SearchConfig) -> FamilyReport
where
    I: IntoIterator<Item = BipartiteGraph>,
{
    let mut report = FamilyReport {
        members: Vec::new(),
        failures: Vec::new(),
        undecided: Vec::new(),
    };
    for (index, g) in graphs.into_iter().enumerate() {
        let v = find_bad_coloring(&g, t_red, t_blue, cfg);
        report.members.push(FamilyMember {
            index,
            arrows: v.arrows(),
            stats: v.stats,
        });
        match v.outcome {
            Outcome::Arrows => {}
            Outcome::Counterexample(c) => report.failures.push((index, c)),
            Outcome::Undecided { .. } => report.undecided.push(index),
        }
    }
    report
}
