//! Backtracking over edge colorings.
//!
//! Edges are decided in a fixed order, red before blue. Each color keeps its
//! rows, columns and a rollback union-find so that "does adding this edge
//! complete the target?" only looks at the component the edge lands in.
//! After every placement the undecided edges next to the changed component
//! are re-examined: an edge that would complete one color's target is forced
//! into the other color, and an edge that would complete both kills the
//! branch.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::coloring::Color;
use crate::cycles::cycle_through;
use crate::graph::{bits, BipartiteGraph};
use crate::matching::matching_size;
use crate::target::Target;
use crate::unionfind::ComponentDsu;

/// Counters collected during a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Branching (decision) nodes expanded.
    pub nodes: u64,
    /// Branches closed because red completed its target.
    pub red_prunes: u64,
    /// Branches closed because blue completed its target.
    pub blue_prunes: u64,
    /// Branches closed because some undecided edge completes either target.
    pub conflict_prunes: u64,
    /// Branches closed by the lex-order symmetry cut.
    pub symmetry_prunes: u64,
    /// Edges colored by propagation rather than branching.
    pub forced: u64,
}

impl SearchStats {
    pub fn merge(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.red_prunes += o.red_prunes;
        self.blue_prunes += o.blue_prunes;
        self.conflict_prunes += o.conflict_prunes;
        self.symmetry_prunes += o.symmetry_prunes;
        self.forced += o.forced;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Prune {
    Red,
    Blue,
    Conflict,
    Symmetry,
}

impl Prune {
    fn target(c: Color) -> Prune {
        match c {
            Color::Red => Prune::Red,
            Color::Blue => Prune::Blue,
        }
    }
}

/// One color's subgraph plus its component structure.
#[derive(Clone)]
struct ColorState {
    target: Target,
    rows: Vec<u64>,
    cols: Vec<u64>,
    dsu: ComponentDsu,
}

impl ColorState {
    fn new(n1: usize, n2: usize, target: Target) -> Self {
        ColorState {
            target,
            rows: vec![0; n1],
            cols: vec![0; n2],
            dsu: ComponentDsu::new(n1, n2),
        }
    }

    fn roots(&self, x: usize, y: usize) -> (usize, usize) {
        (self.dsu.find(self.dsu.x(x)), self.dsu.find(self.dsu.y(y)))
    }

    /// Would adding `(x, y)` complete the target? Assumes it is not complete yet.
    fn completes_with(&self, x: usize, y: usize) -> bool {
        let (ra, rb) = self.roots(x, y);
        let (xa, ya) = self.dsu.members(ra);
        let (xb, yb) = self.dsu.members(rb);
        let (xs, ys) = (xa | xb, ya | yb);
        match self.target {
            Target::ConnectedMatching(k) => {
                let bound = if ra == rb {
                    self.dsu.bound(ra) + 1
                } else {
                    self.dsu.bound(ra) + self.dsu.bound(rb) + 1
                };
                if bound < k || (xs.count_ones() as usize) < k || (ys.count_ones() as usize) < k {
                    return false;
                }
                let mut rows = [0u64; 64];
                let n1 = self.rows.len();
                rows[..n1].copy_from_slice(&self.rows);
                rows[x] |= 1 << y;
                matching_size(&rows[..n1], xs, ys, k) >= k
            }
            Target::EvenCycle(l) => {
                if ra != rb || (xs.count_ones() as usize) < l / 2 || (ys.count_ones() as usize) < l / 2 {
                    return false;
                }
                let mut rows = [0u64; 64];
                let mut cols = [0u64; 64];
                let (n1, n2) = (self.rows.len(), self.cols.len());
                rows[..n1].copy_from_slice(&self.rows);
                cols[..n2].copy_from_slice(&self.cols);
                rows[x] |= 1 << y;
                cols[y] |= 1 << x;
                cycle_through(&rows[..n1], &cols[..n2], x, y, l).is_some()
            }
        }
    }

    /// Add `(x, y)`; true if the target is now complete. Returns the new root.
    fn add(&mut self, x: usize, y: usize) -> (bool, usize) {
        let (ra, rb) = self.roots(x, y);
        let same = ra == rb;
        let prior = if same {
            self.dsu.bound(ra)
        } else {
            self.dsu.bound(ra) + self.dsu.bound(rb)
        };
        self.rows[x] |= 1 << y;
        self.cols[y] |= 1 << x;
        let root = self.dsu.union_roots(ra, rb);
        let (xs, ys) = self.dsu.members(root);
        let side_cap = xs.count_ones().min(ys.count_ones()) as usize;
        let complete = match self.target {
            Target::ConnectedMatching(k) => {
                let mut bound = (prior + 1).min(side_cap);
                if bound >= k {
                    bound = matching_size(&self.rows, xs, ys, k);
                }
                self.dsu.set_bound(root, bound);
                bound >= k
            }
            Target::EvenCycle(l) => {
                same && side_cap >= l / 2 && cycle_through(&self.rows, &self.cols, x, y, l).is_some()
            }
        };
        (complete, root)
    }

    fn remove(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1 << y);
        self.cols[y] &= !(1 << x);
    }
}

/// Twin-class lex constraints: consecutive twins must be ordered with red
/// ranking above blue, rows compared left to right and columns top to
/// bottom.
#[derive(Clone, Debug, Default)]
pub(crate) struct Symmetry {
    next_x: Vec<Option<usize>>,
    prev_x: Vec<Option<usize>>,
    next_y: Vec<Option<usize>>,
    prev_y: Vec<Option<usize>>,
    /// Also require the coloring to dominate its transpose.
    side_swap: bool,
}

impl Symmetry {
    pub(crate) fn none(n1: usize, n2: usize) -> Self {
        Symmetry {
            next_x: vec![None; n1],
            prev_x: vec![None; n1],
            next_y: vec![None; n2],
            prev_y: vec![None; n2],
            side_swap: false,
        }
    }

    /// Link vertices with identical neighbourhoods into chains.
    pub(crate) fn twins(g: &BipartiteGraph, side_swap: bool) -> Self {
        let mut s = Symmetry::none(g.n1(), g.n2());
        let link = |words: &[u64], next: &mut Vec<Option<usize>>, prev: &mut Vec<Option<usize>>| {
            for i in 0..words.len() {
                if prev[i].is_some() {
                    continue;
                }
                let mut last = i;
                for j in i + 1..words.len() {
                    if words[j] == words[i] {
                        next[last] = Some(j);
                        prev[j] = Some(last);
                        last = j;
                    }
                }
            }
        };
        link(g.rows(), &mut s.next_x, &mut s.prev_x);
        link(g.cols(), &mut s.next_y, &mut s.prev_y);
        s.side_swap = side_swap;
        s
    }

    pub(crate) fn is_trivial(&self) -> bool {
        !self.side_swap && self.next_x.iter().chain(&self.next_y).all(Option::is_none)
    }
}

/// `a` must not rank below `b`: at the first position where they are not
/// both decided and equal, either something is undecided or `a` is red.
#[inline]
fn lex_ok(support: u64, red_a: u64, blue_a: u64, red_b: u64, blue_b: u64) -> bool {
    let both = (red_a | blue_a) & (red_b | blue_b);
    let equal = both & !(red_a ^ red_b);
    let diff = support & !equal;
    if diff == 0 {
        return true;
    }
    let p = diff & diff.wrapping_neg();
    both & p == 0 || red_a & p != 0
}

#[derive(Clone)]
pub(crate) struct Engine<'g> {
    pub host: &'g BipartiteGraph,
    order: Vec<(u8, u8)>,
    red: ColorState,
    blue: ColorState,
    trail: Vec<(u8, u8, Color)>,
    sym: Symmetry,
    check_symmetry: bool,
    propagate: bool,
    pub stats: SearchStats,
}

pub(crate) struct Mark {
    trail: usize,
    red: usize,
    blue: usize,
}

pub(crate) enum Flow {
    Found,
    Exhausted,
    /// Budget ran out; carries the number of open branches left behind.
    Abort(usize),
}

/// Shared limits for one (possibly parallel) search.
pub(crate) struct Limits {
    pub budget: Option<u64>,
    pub nodes: AtomicU64,
    /// Lowest task index known to hold a witness; higher tasks may stop.
    pub best: AtomicUsize,
}

impl Limits {
    pub(crate) fn new(budget: Option<u64>) -> Self {
        Limits {
            budget,
            nodes: AtomicU64::new(0),
            best: AtomicUsize::new(usize::MAX),
        }
    }
}

pub(crate) type Observer<'o> = Option<&'o mut dyn FnMut(&[u64], &[u64])>;

/// Static branching order: descending by the smaller endpoint degree, ties
/// by `(x, y)`.
pub fn edge_order(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize, usize)> = g
        .edges()
        .map(|(x, y)| {
            let d = g.row(x).count_ones().min(g.col(y).count_ones()) as usize;
            (d, x, y)
        })
        .collect();
    edges.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    edges.into_iter().map(|(_, x, y)| (x, y)).collect()
}

impl<'g> Engine<'g> {
    pub(crate) fn new(host: &'g BipartiteGraph, red: Target, blue: Target, sym: Symmetry, propagate: bool) -> Self {
        let (n1, n2) = (host.n1(), host.n2());
        Engine {
            host,
            order: edge_order(host).into_iter().map(|(x, y)| (x as u8, y as u8)).collect(),
            red: ColorState::new(n1, n2, red),
            blue: ColorState::new(n1, n2, blue),
            trail: Vec::new(),
            check_symmetry: !sym.is_trivial(),
            sym,
            propagate,
            stats: SearchStats::default(),
        }
    }

    fn state(&self, c: Color) -> &ColorState {
        match c {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    fn state_mut(&mut self, c: Color) -> &mut ColorState {
        match c {
            Color::Red => &mut self.red,
            Color::Blue => &mut self.blue,
        }
    }

    #[inline]
    fn assigned(&self, x: usize, y: usize) -> bool {
        (self.red.rows[x] | self.blue.rows[x]) >> y & 1 == 1
    }

    pub(crate) fn red_rows(&self) -> &[u64] {
        &self.red.rows
    }

    pub(crate) fn blue_rows(&self) -> &[u64] {
        &self.blue.rows
    }

    pub(crate) fn mark(&self) -> Mark {
        Mark {
            trail: self.trail.len(),
            red: self.red.dsu.time(),
            blue: self.blue.dsu.time(),
        }
    }

    pub(crate) fn undo(&mut self, m: &Mark) {
        while self.trail.len() > m.trail {
            let (x, y, c) = self.trail.pop().expect("trail longer than mark");
            self.state_mut(c).remove(x as usize, y as usize);
        }
        self.red.dsu.rollback(m.red);
        self.blue.dsu.rollback(m.blue);
    }

    fn count(&mut self, p: Prune) {
        match p {
            Prune::Red => self.stats.red_prunes += 1,
            Prune::Blue => self.stats.blue_prunes += 1,
            Prune::Conflict => self.stats.conflict_prunes += 1,
            Prune::Symmetry => self.stats.symmetry_prunes += 1,
        }
    }

    fn symmetry_ok(&self, x: usize, y: usize) -> bool {
        let (r, b) = (&self.red, &self.blue);
        let host = self.host;
        let row_pair = |a: usize, c: usize| lex_ok(host.row(a), r.rows[a], b.rows[a], r.rows[c], b.rows[c]);
        let col_pair = |a: usize, c: usize| lex_ok(host.col(a), r.cols[a], b.cols[a], r.cols[c], b.cols[c]);
        if let Some(p) = self.sym.prev_x[x] {
            if !row_pair(p, x) {
                return false;
            }
        }
        if let Some(n) = self.sym.next_x[x] {
            if !row_pair(x, n) {
                return false;
            }
        }
        if let Some(p) = self.sym.prev_y[y] {
            if !col_pair(p, y) {
                return false;
            }
        }
        if let Some(n) = self.sym.next_y[y] {
            if !col_pair(y, n) {
                return false;
            }
        }
        !self.sym.side_swap || self.dominates_transpose()
    }

    /// Row-major comparison of the coloring against its transpose.
    fn dominates_transpose(&self) -> bool {
        let n = self.host.n1();
        for i in 0..n {
            for j in 0..n {
                if !self.host.has_edge(i, j) {
                    continue;
                }
                let a = self.color_at(i, j);
                let t = self.color_at(j, i);
                match (a, t) {
                    (Some(a), Some(t)) if a == t => continue,
                    (Some(Color::Red), Some(Color::Blue)) => return true,
                    (Some(Color::Blue), Some(Color::Red)) => return false,
                    _ => return true,
                }
            }
        }
        true
    }

    fn color_at(&self, x: usize, y: usize) -> Option<Color> {
        if self.red.rows[x] >> y & 1 == 1 {
            Some(Color::Red)
        } else if self.blue.rows[x] >> y & 1 == 1 {
            Some(Color::Blue)
        } else {
            None
        }
    }

    /// Color `(x, y)` and run propagation to a fixpoint.
    pub(crate) fn apply(&mut self, x: usize, y: usize, color: Color) -> Result<(), Prune> {
        let mut queue: Vec<(usize, usize, Color)> = vec![(x, y, color)];
        let mut first = true;
        while let Some((x, y, c)) = queue.pop() {
            if let Some(existing) = self.color_at(x, y) {
                if existing == c {
                    continue;
                }
                return Err(Prune::Conflict);
            }
            if !first {
                self.stats.forced += 1;
            }
            first = false;
            self.trail.push((x as u8, y as u8, c));
            let (complete, root) = self.state_mut(c).add(x, y);
            if complete {
                return Err(Prune::target(c));
            }
            if self.check_symmetry && !self.symmetry_ok(x, y) {
                return Err(Prune::Symmetry);
            }
            if !self.propagate {
                continue;
            }
            // undecided edges touching the component that just grew
            let (xs, ys) = self.state(c).dsu.members(root);
            let mut seen_rows = 0u64;
            for cx in bits(xs) {
                seen_rows |= 1 << cx;
                let open = self.host.row(cx) & !(self.red.rows[cx] | self.blue.rows[cx]);
                for cy in bits(open) {
                    self.recheck(cx, cy, c, &mut queue)?;
                }
            }
            for cy in bits(ys) {
                let open = self.host.col(cy) & !(self.red.cols[cy] | self.blue.cols[cy]) & !seen_rows;
                for cx in bits(open) {
                    self.recheck(cx, cy, c, &mut queue)?;
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn recheck(&self, x: usize, y: usize, changed: Color, queue: &mut Vec<(usize, usize, Color)>) -> Result<(), Prune> {
        if self.state(changed).completes_with(x, y) {
            if self.state(changed.other()).completes_with(x, y) {
                return Err(Prune::Conflict);
            }
            queue.push((x, y, changed.other()));
        }
        Ok(())
    }

    fn next_open(&self, mut pos: usize) -> usize {
        while pos < self.order.len() {
            let (x, y) = self.order[pos];
            if !self.assigned(x as usize, y as usize) {
                break;
            }
            pos += 1;
        }
        pos
    }

    fn tick(&mut self, limits: &Limits) -> bool {
        self.stats.nodes += 1;
        match limits.budget {
            None => true,
            Some(b) => limits.nodes.fetch_add(1, Ordering::Relaxed) < b,
        }
    }

    /// Depth-first search from order position `pos`.
    pub(crate) fn dfs(&mut self, pos: usize, limits: &Limits, task: usize, obs: &mut Observer<'_>) -> Flow {
        let pos = self.next_open(pos);
        if pos == self.order.len() {
            return Flow::Found;
        }
        if task > limits.best.load(Ordering::Relaxed) {
            return Flow::Exhausted;
        }
        if !self.tick(limits) {
            return Flow::Abort(1);
        }
        if let Some(f) = obs.as_mut() {
            f(&self.red.rows, &self.blue.rows);
        }
        let (x, y) = (self.order[pos].0 as usize, self.order[pos].1 as usize);
        for color in [Color::Red, Color::Blue] {
            let mark = self.mark();
            match self.apply(x, y, color) {
                Ok(()) => match self.dfs(pos + 1, limits, task, obs) {
                    Flow::Found => return Flow::Found,
                    Flow::Abort(open) => {
                        self.undo(&mark);
                        let pending = usize::from(color == Color::Red);
                        return Flow::Abort(open + pending);
                    }
                    Flow::Exhausted => {}
                },
                Err(p) => self.count(p),
            }
            self.undo(&mark);
        }
        Flow::Exhausted
    }

    /// Enumerate the subtrees `depth` decisions below the root, in branch
    /// order. A subtree that is already a complete coloring is returned as
    /// a finished state with `None` position.
    pub(crate) fn split(&mut self, pos: usize, depth: usize, out: &mut Vec<(Engine<'g>, Option<usize>)>) {
        let pos = self.next_open(pos);
        if pos == self.order.len() {
            out.push((self.clone(), None));
            return;
        }
        if depth == 0 {
            out.push((self.clone(), Some(pos)));
            return;
        }
        self.stats.nodes += 1;
        let (x, y) = (self.order[pos].0 as usize, self.order[pos].1 as usize);
        for color in [Color::Red, Color::Blue] {
            let mark = self.mark();
            match self.apply(x, y, color) {
                Ok(()) => self.split(pos + 1, depth - 1, out),
                Err(p) => self.count(p),
            }
            self.undo(&mark);
        }
    }
}
