//! Canonical forms and the near-complete graph families used for exhaustive
//! family checks.
//!
//! The canonical form is found by equitable refinement of the ordered
//! partition `[X, Y]`, then individualize-and-refine backtracking. Branches in
//! the same orbit of the automorphisms found so far (twin transpositions and
//! leaf coincidences) are skipped.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Byte string identifying a bipartite graph up to permutations within each side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

struct Canon<'g> {
    g: &'g BipartiteGraph,
    n1: usize,
    gens: Vec<Vec<usize>>,
    first: Option<(Vec<usize>, Vec<u8>)>,
    best: Option<(Vec<usize>, Vec<u8>)>,
}

type Partition = Vec<Vec<usize>>;

impl<'g> Canon<'g> {
    fn new(g: &'g BipartiteGraph) -> Self {
        let n1 = g.n1();
        let n = n1 + g.n2();
        let mut gens = Vec::new();
        // Twins: same side, same neighbourhood.
        for (side_start, len) in [(0, n1), (n1, g.n2())] {
            let nb = |v: usize| if v < n1 { g.row(v) } else { g.col(v - n1) };
            for a in side_start..side_start + len {
                if let Some(b) = (a + 1..side_start + len).find(|&b| nb(b) == nb(a)) {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.swap(a, b);
                    gens.push(p);
                }
            }
        }
        Canon {
            g,
            n1,
            gens,
            first: None,
            best: None,
        }
    }

    fn neighbours(&self, v: usize) -> u64 {
        if v < self.n1 {
            self.g.row(v)
        } else {
            self.g.col(v - self.n1)
        }
    }

    fn cell_mask(&self, cell: &[usize]) -> u64 {
        cell.iter()
            .fold(0, |m, &v| m | 1u64 << if v < self.n1 { v } else { v - self.n1 })
    }

    /// Split cells by neighbour counts into other cells until equitable. New
    /// sub-cells are ordered by count, so the result is labelling-invariant.
    fn refine(&self, p: &mut Partition) {
        'restart: loop {
            for s in 0..p.len() {
                let smask = self.cell_mask(&p[s]);
                let s_is_x = p[s][0] < self.n1;
                for i in 0..p.len() {
                    let cell_is_x = p[i][0] < self.n1;
                    if p[i].len() == 1 || cell_is_x == s_is_x {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = p[i]
                        .iter()
                        .map(|&v| ((self.neighbours(v) & smask).count_ones(), v))
                        .collect();
                    keyed.sort_unstable();
                    if keyed[0].0 == keyed[keyed.len() - 1].0 {
                        continue;
                    }
                    let mut parts: Vec<Vec<usize>> = Vec::new();
                    let mut last = u32::MAX;
                    for (k, v) in keyed {
                        if k != last {
                            parts.push(Vec::new());
                            last = k;
                        }
                        parts.last_mut().expect("pushed above").push(v);
                    }
                    p.splice(i..=i, parts);
                    continue 'restart;
                }
            }
            return;
        }
    }

    fn encode(&self, lab: &[usize]) -> Vec<u8> {
        let n1 = self.n1;
        let n2 = lab.len() - n1;
        let mut pos_y = vec![0usize; n2];
        for (i, &v) in lab[n1..].iter().enumerate() {
            pos_y[v - n1] = i;
        }
        let mut out = Vec::with_capacity(2 + 8 * n1);
        out.push(n1 as u8);
        out.push(n2 as u8);
        for &x in &lab[..n1] {
            let mut row = 0u64;
            for y in crate::graph::bits(self.g.row(x)) {
                row |= 1 << (n2 - 1 - pos_y[y]);
            }
            out.extend_from_slice(&row.to_be_bytes()[8 - n2.div_ceil(8).max(1)..]);
        }
        out
    }

    fn leaf(&mut self, p: &Partition) {
        let lab: Vec<usize> = p.iter().map(|c| c[0]).collect();
        let enc = self.encode(&lab);
        let automorphism = |a: &[usize], b: &[usize]| {
            let mut perm = vec![0; a.len()];
            for (&u, &v) in a.iter().zip(b) {
                perm[u] = v;
            }
            perm
        };
        match &self.first {
            None => {
                self.first = Some((lab.clone(), enc.clone()));
                self.best = Some((lab, enc));
                return;
            }
            Some((flab, fenc)) if *fenc == enc => {
                let perm = automorphism(flab, &lab);
                self.gens.push(perm);
                return;
            }
            _ => {}
        }
        let (blab, benc) = self.best.as_ref().expect("set with first");
        if enc == *benc {
            let perm = automorphism(blab, &lab);
            self.gens.push(perm);
        } else if enc < *benc {
            self.best = Some((lab, enc));
        }
    }

    fn search(&mut self, mut p: Partition, fixed: &mut Vec<usize>) {
        self.refine(&mut p);
        let Some(ci) = p.iter().position(|c| c.len() > 1) else {
            self.leaf(&p);
            return;
        };
        let mut cell = p[ci].clone();
        cell.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.same_orbit(v, &tried, fixed) {
                continue;
            }
            tried.push(v);
            let mut child = p.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            child.splice(ci..=ci, [vec![v], rest]);
            fixed.push(v);
            self.search(child, fixed);
            fixed.pop();
        }
    }

    /// Is `v` in the orbit of an already tried vertex under the found
    /// automorphisms that fix every individualized vertex?
    fn same_orbit(&self, v: usize, tried: &[usize], fixed: &[usize]) -> bool {
        if tried.is_empty() {
            return false;
        }
        let n = self.g.n1() + self.g.n2();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for gen in self.gens.iter().filter(|g| fixed.iter().all(|&f| g[f] == f)) {
            for (a, &b) in gen.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

fn canonical_bytes(g: &BipartiteGraph) -> Vec<u8> {
    let n1 = g.n1();
    let n = n1 + g.n2();
    let mut c = Canon::new(g);
    let p: Partition = [(0..n1).collect::<Vec<_>>(), (n1..n).collect()]
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect();
    c.search(p, &mut Vec::new());
    c.best.map(|(_, e)| e).unwrap_or_else(|| vec![n1 as u8, g.n2() as u8])
}

/// Canonical form under independent permutations of X and Y, and with
/// `allow_side_swap` also under exchanging the two sides.
pub fn canonical_form(g: &BipartiteGraph, allow_side_swap: bool) -> CanonicalForm {
    let direct = canonical_bytes(g);
    if !allow_side_swap {
        return CanonicalForm(direct);
    }
    CanonicalForm(direct.min(canonical_bytes(&g.transpose())))
}

pub fn is_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph, allow_side_swap: bool) -> bool {
    a.edge_count() == b.edge_count() && canonical_form(a, allow_side_swap) == canonical_form(b, allow_side_swap)
}

/// Minimum degree required of an `(m+n-1)`-balanced host: `⌊3(m+n-1)/4⌋ + 1`.
pub fn theorem_one_delta(m: usize, n: usize) -> usize {
    3 * (m + n - 1) / 4 + 1
}

/// All balanced graphs on `N + N` vertices with minimum degree at least
/// `delta_min`, one per isomorphism class (sides may be swapped), ordered by
/// number of missing edges.
///
/// Complements of maximum degree at most `c = N - delta_min` are grown one
/// edge at a time and deduplicated by canonical form; `c > 2` is refused.
pub fn dense_family(n: usize, delta_min: usize) -> Result<Vec<BipartiteGraph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if delta_min > n {
        return Ok(Vec::new());
    }
    let c = n - delta_min;
    if c > 2 {
        return Err(Error::FamilyTooLarge { bound: c });
    }
    let mut out = Vec::new();
    let mut level = vec![BipartiteGraph::empty(n, n)?];
    while !level.is_empty() {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for h in &level {
            for x in 0..n {
                if h.row(x).count_ones() as usize >= c {
                    continue;
                }
                for y in 0..n {
                    if h.has_edge(x, y) || h.col(y).count_ones() as usize >= c {
                        continue;
                    }
                    let mut h2 = h.clone();
                    h2.add_edge(x, y);
                    if seen.insert(canonical_form(&h2, true)) {
                        next.push(h2);
                    }
                }
            }
        }
        out.extend(level.iter().map(BipartiteGraph::complement));
        level = next;
    }
    Ok(out)
}

/// A random balanced graph with minimum degree at least `delta_min`.
///
/// A target number of missing edges is drawn, then complement edges are placed
/// in a random order, skipping any that would push a vertex past
/// `N - delta_min` missing edges.
pub fn random_graph_with_min_degree(n: usize, delta_min: usize, seed: u64) -> Result<BipartiteGraph> {
    if delta_min > n {
        return Err(Error::param(format!(
            "minimum degree {delta_min} exceeds side size {n}"
        )));
    }
    let c = n - delta_min;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    pairs.shuffle(&mut rng);
    let target = rng.gen_range(0..=c * n);
    let mut miss = BipartiteGraph::empty(n, n)?;
    let mut placed = 0;
    for (x, y) in pairs {
        if placed == target {
            break;
        }
        if (miss.row(x).count_ones() as usize) < c && (miss.col(y).count_ones() as usize) < c {
            miss.add_edge(x, y);
            placed += 1;
        }
    }
    Ok(miss.complement())
}
