//! Brute-force oracles. They only look at edge lists and share no code with
//! the library's matching, cycle or search routines.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use biparrow_core::enumerate::canonical_form;
use biparrow_core::{BipartiteGraph, Target};

/// Maximum matching by dynamic programming over (X prefix, used Y set).
pub fn brute_matching(n1: usize, n2: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n2 <= 16);
    let mut adj = vec![Vec::new(); n1];
    for &(x, y) in edges {
        adj[x].push(y);
    }
    let states = 1usize << n2;
    let mut next = vec![0usize; states];
    for i in (0..n1).rev() {
        let mut cur = next.clone();
        for (used, slot) in cur.iter_mut().enumerate() {
            for &y in &adj[i] {
                if used & (1 << y) == 0 {
                    *slot = (*slot).max(1 + next[used | 1 << y]);
                }
            }
        }
        next = cur;
    }
    next[0]
}

/// Connected components of the edge set, as lists of edges.
pub fn edge_components(n1: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let n = n1 + edges.iter().map(|&(_, y)| y + 1).max().unwrap_or(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            a = p[a];
        }
        a
    }
    for &(x, y) in edges {
        let (a, b) = (find(&mut parent, x), find(&mut parent, n1 + y));
        parent[a] = b;
    }
    let mut groups: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for &(x, y) in edges {
        let r = find(&mut parent, x);
        match groups.iter_mut().find(|(g, _)| *g == r) {
            Some((_, v)) => v.push((x, y)),
            None => groups.push((r, vec![(x, y)])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

/// Largest matching that lies inside a single component.
pub fn brute_connected_matching(n1: usize, n2: usize, edges: &[(usize, usize)]) -> usize {
    edge_components(n1, edges)
        .iter()
        .map(|c| brute_matching(n1, n2, c))
        .max()
        .unwrap_or(0)
}

/// Lengths of all simple cycles, by enumerating simple paths from each
/// cycle's smallest vertex.
pub fn brute_cycle_lengths(n1: usize, n2: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let n = n1 + n2;
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in edges {
        adj[x].push(n1 + y);
        adj[n1 + y].push(x);
    }
    fn walk(adj: &[Vec<usize>], start: usize, v: usize, depth: usize, on: &mut [bool], out: &mut BTreeSet<usize>) {
        for &w in &adj[v] {
            if w == start && depth >= 3 {
                out.insert(depth + 1);
            } else if w > start && !on[w] {
                on[w] = true;
                walk(adj, start, w, depth + 1, on, out);
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut on = vec![false; n];
    for s in 0..n {
        on[s] = true;
        walk(&adj, s, s, 0, &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// The quantities any CM / cycle target query needs, for one edge set.
pub struct Profile {
    pub cm: usize,
    pub cycles: BTreeSet<usize>,
}

impl Profile {
    pub fn of(n1: usize, n2: usize, edges: &[(usize, usize)]) -> Self {
        Profile {
            cm: brute_connected_matching(n1, n2, edges),
            cycles: brute_cycle_lengths(n1, n2, edges),
        }
    }

    pub fn has(&self, t: Target) -> bool {
        match t {
            Target::ConnectedMatching(k) => self.cm >= k,
            Target::EvenCycle(l) => self.cycles.contains(&l),
        }
    }
}

/// For each pair: does every one of the `2^|E|` colorings contain the red or
/// the blue target? No pruning, no symmetry.
pub fn naive_arrows_many(g: &BipartiteGraph, pairs: &[(Target, Target)]) -> Vec<bool> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    assert!(edges.len() <= 20);
    let mut arrows = vec![true; pairs.len()];
    for mask in 0u32..1 << edges.len() {
        let (red, blue): (Vec<_>, Vec<_>) = edges.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let red: Vec<_> = red.into_iter().map(|(_, &e)| e).collect();
        let blue: Vec<_> = blue.into_iter().map(|(_, &e)| e).collect();
        let (pr, pb) = (Profile::of(g.n1(), g.n2(), &red), Profile::of(g.n1(), g.n2(), &blue));
        for (a, &(tr, tb)) in arrows.iter_mut().zip(pairs) {
            if !pr.has(tr) && !pb.has(tb) {
                *a = false;
            }
        }
    }
    arrows
}

pub fn naive_arrows(g: &BipartiteGraph, t_red: Target, t_blue: Target) -> bool {
    naive_arrows_many(g, &[(t_red, t_blue)])[0]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every pair of side permutations.
pub fn brute_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph, allow_side_swap: bool) -> bool {
    let same_sides = |a: &BipartiteGraph, b: &BipartiteGraph| {
        if (a.n1(), a.n2()) != (b.n1(), b.n2()) || a.edge_count() != b.edge_count() {
            return false;
        }
        let eb: HashSet<(usize, usize)> = b.edges().collect();
        let (px, py) = (permutations(a.n1()), permutations(a.n2()));
        px.iter()
            .any(|p| py.iter().any(|q| a.edges().all(|(x, y)| eb.contains(&(p[x], q[y])))))
    };
    same_sides(a, b) || (allow_side_swap && same_sides(&a.transpose(), b))
}

/// Every graph with `n1 x n2` sides, as row-bitmask tuples.
pub fn all_graphs(n1: usize, n2: usize) -> impl Iterator<Item = BipartiteGraph> {
    let bits = n1 * n2;
    (0u64..1 << bits).map(move |m| {
        let rows = (0..n1).map(|x| (m >> (x * n2)) & ((1 << n2) - 1)).collect();
        BipartiteGraph::from_rows(n1, n2, rows).unwrap()
    })
}

/// Graphs with `n1 x n2` sides whose rows are non-decreasing: one
/// representative per orbit of X-permutations (with repetitions across Y).
pub fn sorted_row_graphs(n1: usize, n2: usize) -> Vec<BipartiteGraph> {
    fn go(n1: usize, n2: usize, min: u64, rows: &mut Vec<u64>, out: &mut Vec<BipartiteGraph>) {
        if rows.len() == n1 {
            out.push(BipartiteGraph::from_rows(n1, n2, rows.clone()).unwrap());
            return;
        }
        for r in min..1u64 << n2 {
            rows.push(r);
            go(n1, n2, r, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    go(n1, n2, 0, &mut Vec::new(), &mut out);
    out
}

/// All graphs with between 1 and `max_edges` edges and no isolated vertex, one
/// per isomorphism class (side swap allowed). Grown edge by edge: each new
/// edge joins two existing vertices, or hangs a new X or Y vertex, or is a
/// new isolated edge.
pub fn small_graphs(max_edges: usize) -> Vec<BipartiteGraph> {
    let mut all = Vec::new();
    let mut level = vec![BipartiteGraph::complete_bipartite(1, 1).unwrap()];
    for _ in 1..max_edges {
        all.extend(level.iter().cloned());
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let (n1, n2) = (g.n1(), g.n2());
            for x in 0..=n1 {
                for y in 0..=n2 {
                    if x < n1 && y < n2 && g.has_edge(x, y) {
                        continue;
                    }
                    let (m1, m2) = (n1.max(x + 1), n2.max(y + 1));
                    let mut edges: Vec<(usize, usize)> = g.edges().collect();
                    edges.push((x, y));
                    let h = BipartiteGraph::from_edge_list(m1, m2, &edges).unwrap();
                    if seen.insert(canonical_form(&h, true)) {
                        next.push(h);
                    }
                }
            }
        }
        level = next;
    }
    all.extend(level);
    all
}

pub fn cm(k: usize) -> Target {
    Target::ConnectedMatching(k)
}

pub fn cyc(l: usize) -> Target {
    Target::EvenCycle(l)
}

/// Canonical key by brute force: the smallest sorted row tuple over every
/// permutation of Y (sorting the rows absorbs the X permutations).
pub fn brute_canon(g: &BipartiteGraph, allow_side_swap: bool) -> (usize, usize, Vec<u64>) {
    let key = |g: &BipartiteGraph| {
        let (n1, n2) = (g.n1(), g.n2());
        let best = permutations(n2)
            .into_iter()
            .map(|q| {
                let mut rows: Vec<u64> = (0..n1)
                    .map(|x| (0..n2).filter(|&y| g.has_edge(x, y)).fold(0, |r, y| r | 1 << q[y]))
                    .collect();
                rows.sort_unstable();
                rows
            })
            .min()
            .unwrap_or_default();
        (n1, n2, best)
    };
    let k = key(g);
    if allow_side_swap {
        k.min(key(&g.transpose()))
    } else {
        k
    }
}
