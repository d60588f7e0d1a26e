//! Maximum matchings, König covers, components and connected matchings.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, low_mask, BipartiteGraph, Side, VertexRef};

const FREE: u8 = u8::MAX;

/// Layered augmenting-path (Hopcroft–Karp) matcher over bit rows, restricted
/// to the X-vertices in `xmask` and Y-vertices in `ymask`.
///
/// Works entirely on fixed-size arrays so the arrowing search can call it in
/// its inner loop without allocating.
pub(crate) struct Matcher<'a> {
    rows: &'a [u64],
    xmask: u64,
    ymask: u64,
    mate_x: [u8; 64],
    mate_y: [u8; 64],
    dist: [u8; 64],
    size: usize,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(rows: &'a [u64], xmask: u64, ymask: u64) -> Self {
        let xmask = xmask & low_mask(rows.len());
        Matcher {
            rows,
            xmask,
            ymask,
            mate_x: [FREE; 64],
            mate_y: [FREE; 64],
            dist: [0; 64],
            size: 0,
        }
    }

    /// Grow the matching until it is maximum or reaches `limit` edges.
    pub(crate) fn run(&mut self, limit: usize) -> usize {
        // greedy start
        for x in bits(self.xmask) {
            if self.size >= limit {
                return self.size;
            }
            let free_y = self.rows[x] & self.ymask & !self.matched_y();
            if free_y != 0 {
                let y = free_y.trailing_zeros() as usize;
                self.mate_x[x] = y as u8;
                self.mate_y[y] = x as u8;
                self.size += 1;
            }
        }
        while self.size < limit && self.bfs() {
            for x in bits(self.xmask) {
                if self.mate_x[x] == FREE && self.dist[x] == 0 && self.dfs(x) {
                    self.size += 1;
                    if self.size >= limit {
                        break;
                    }
                }
            }
        }
        self.size
    }

    fn matched_y(&self) -> u64 {
        let mut m = 0u64;
        for x in bits(self.xmask) {
            if self.mate_x[x] != FREE {
                m |= 1 << self.mate_x[x];
            }
        }
        m
    }

    /// Build the layer structure; true if some free Y-vertex is reachable.
    fn bfs(&mut self) -> bool {
        let mut frontier = 0u64;
        for x in bits(self.xmask) {
            if self.mate_x[x] == FREE {
                self.dist[x] = 0;
                frontier |= 1 << x;
            } else {
                self.dist[x] = u8::MAX;
            }
        }
        let mut seen_y = 0u64;
        let mut level = 0u8;
        let mut found = false;
        while frontier != 0 && !found {
            let mut next = 0u64;
            for x in bits(frontier) {
                let ys = self.rows[x] & self.ymask & !seen_y;
                seen_y |= ys;
                for y in bits(ys) {
                    let m = self.mate_y[y];
                    if m == FREE {
                        found = true;
                    } else if self.dist[m as usize] == u8::MAX {
                        self.dist[m as usize] = level + 1;
                        next |= 1 << m;
                    }
                }
            }
            frontier = next;
            level += 1;
        }
        found
    }

    /// Augment along layered paths; layers strictly increase, so no vertex
    /// repeats, and dead ends are retired by setting their distance to MAX.
    fn dfs(&mut self, x: usize) -> bool {
        for y in bits(self.rows[x] & self.ymask) {
            let m = self.mate_y[y];
            let ok = if m == FREE {
                true
            } else {
                let m = m as usize;
                self.dist[m] == self.dist[x].wrapping_add(1) && self.dfs(m)
            };
            if ok {
                self.mate_x[x] = y as u8;
                self.mate_y[y] = x as u8;
                return true;
            }
        }
        self.dist[x] = u8::MAX;
        false
    }

    pub(crate) fn pairs(&self) -> Vec<(usize, usize)> {
        bits(self.xmask)
            .filter(|&x| self.mate_x[x] != FREE)
            .map(|x| (x, self.mate_x[x] as usize))
            .collect()
    }

    /// König cover of a maximum matching: with Z the vertices reachable from
    /// free X-vertices by alternating paths, the cover is (X \ Z) ∪ (Y ∩ Z).
    pub(crate) fn konig_cover(&self) -> (u64, u64) {
        let mut zx = 0u64;
        for x in bits(self.xmask) {
            if self.mate_x[x] == FREE {
                zx |= 1 << x;
            }
        }
        let mut zy = 0u64;
        let mut frontier = zx;
        while frontier != 0 {
            let mut ys = 0u64;
            for x in bits(frontier) {
                ys |= self.rows[x] & self.ymask;
            }
            ys &= !zy;
            zy |= ys;
            let mut next = 0u64;
            for y in bits(ys) {
                let m = self.mate_y[y];
                if m != FREE && zx >> m & 1 == 0 {
                    next |= 1 << m;
                }
            }
            zx |= next;
            frontier = next;
        }
        (self.xmask & !zx, zy)
    }
}

/// Size of a maximum matching among the given rows restricted to the masks,
/// stopping early at `limit`.
pub(crate) fn matching_size(rows: &[u64], xmask: u64, ymask: u64, limit: usize) -> usize {
    Matcher::new(rows, xmask, ymask).run(limit)
}

/// A maximum matching together with the König minimum vertex cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    /// Matched pairs `(x, y)`, ordered by `x`.
    pub matching: Vec<(usize, usize)>,
    /// Cover restricted to X, as a bit set.
    pub cover_x: u64,
    /// Cover restricted to Y, as a bit set.
    pub cover_y: u64,
    pub size: usize,
}

impl MatchingResult {
    pub fn cover(&self) -> Vec<VertexRef> {
        bits(self.cover_x)
            .map(VertexRef::x)
            .chain(bits(self.cover_y).map(VertexRef::y))
            .collect()
    }

    pub fn cover_size(&self) -> usize {
        (self.cover_x.count_ones() + self.cover_y.count_ones()) as usize
    }

    /// Every edge of `g` has an endpoint in the cover.
    pub fn cover_touches_all(&self, g: &BipartiteGraph) -> bool {
        g.edges()
            .all(|(x, y)| self.cover_x >> x & 1 == 1 || self.cover_y >> y & 1 == 1)
    }

    /// The matching is a set of vertex-disjoint edges of `g`.
    pub fn is_valid_matching(&self, g: &BipartiteGraph) -> bool {
        let (mut xs, mut ys) = (0u64, 0u64);
        for &(x, y) in &self.matching {
            if !g.has_edge(x, y) || xs >> x & 1 == 1 || ys >> y & 1 == 1 {
                return false;
            }
            xs |= 1 << x;
            ys |= 1 << y;
        }
        self.matching.len() == self.size
    }
}

pub fn maximum_matching(g: &BipartiteGraph) -> MatchingResult {
    maximum_matching_within(g, low_mask(g.n1()), low_mask(g.n2()))
}

/// Maximum matching and König cover of the subgraph induced by the masks.
pub fn maximum_matching_within(g: &BipartiteGraph, xmask: u64, ymask: u64) -> MatchingResult {
    let mut m = Matcher::new(g.rows(), xmask, ymask & low_mask(g.n2()));
    let size = m.run(usize::MAX);
    let (cover_x, cover_y) = m.konig_cover();
    MatchingResult {
        matching: m.pairs(),
        cover_x,
        cover_y,
        size,
    }
}

/// Connected components, numbered in order of their lowest vertex
/// (X-vertices first, then Y-vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub comp_x: Vec<usize>,
    pub comp_y: Vec<usize>,
    /// Per component, the X- and Y-members as bit sets.
    pub members: Vec<(u64, u64)>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `(|C ∩ X|, |C ∩ Y|)` for component `c`.
    pub fn counts(&self, c: usize) -> (usize, usize) {
        let (xs, ys) = self.members[c];
        (xs.count_ones() as usize, ys.count_ones() as usize)
    }

    pub fn component_of(&self, v: VertexRef) -> usize {
        match v.side {
            Side::X => self.comp_x[v.index],
            Side::Y => self.comp_y[v.index],
        }
    }
}

pub fn components(g: &BipartiteGraph) -> ComponentDecomposition {
    let mut comp_x = vec![usize::MAX; g.n1()];
    let mut comp_y = vec![usize::MAX; g.n2()];
    let mut members = Vec::new();
    let starts = (0..g.n1()).map(VertexRef::x).chain((0..g.n2()).map(VertexRef::y));
    for v in starts {
        let seen = match v.side {
            Side::X => comp_x[v.index] != usize::MAX,
            Side::Y => comp_y[v.index] != usize::MAX,
        };
        if seen {
            continue;
        }
        let (xs, ys) = component_masks(g, v);
        let id = members.len();
        bits(xs).for_each(|x| comp_x[x] = id);
        bits(ys).for_each(|y| comp_y[y] = id);
        members.push((xs, ys));
    }
    ComponentDecomposition {
        comp_x,
        comp_y,
        members,
    }
}

/// Vertex sets (X, Y) of the component containing `v`.
pub fn component_masks(g: &BipartiteGraph, v: VertexRef) -> (u64, u64) {
    let (mut xs, mut ys) = match v.side {
        Side::X => (1u64 << v.index, 0u64),
        Side::Y => (0u64, 1u64 << v.index),
    };
    let (mut fx, mut fy) = (xs, ys);
    while fx != 0 || fy != 0 {
        let mut nx = 0u64;
        let mut ny = 0u64;
        for x in bits(fx) {
            ny |= g.row(x);
        }
        for y in bits(fy) {
            nx |= g.col(y);
        }
        fx = nx & !xs;
        fy = ny & !ys;
        xs |= fx;
        ys |= fy;
    }
    (xs, ys)
}

/// Largest matching contained in a single component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectedMatching {
    pub size: usize,
    /// Lowest-numbered component attaining `size`; `None` for a graph without vertices.
    pub component: Option<usize>,
}

pub fn max_connected_matching(g: &BipartiteGraph) -> ConnectedMatching {
    let comps = components(g);
    let mut best = ConnectedMatching {
        size: 0,
        component: None,
    };
    for (id, &(xs, ys)) in comps.members.iter().enumerate() {
        let size = matching_size(g.rows(), xs, ys, usize::MAX);
        if best.component.is_none() || size > best.size {
            best = ConnectedMatching {
                size,
                component: Some(id),
            };
        }
    }
    best
}

/// A matching of exactly `k` edges inside one component, if one exists.
/// Each component's matching stops growing as soon as it reaches `k`.
pub fn find_connected_matching(g: &BipartiteGraph, k: usize) -> Option<Vec<(usize, usize)>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let comps = components(g);
    for &(xs, ys) in &comps.members {
        if (xs.count_ones() as usize) < k || (ys.count_ones() as usize) < k {
            continue;
        }
        let mut m = Matcher::new(g.rows(), xs, ys);
        if m.run(k) >= k {
            let mut pairs = m.pairs();
            pairs.truncate(k);
            return Some(pairs);
        }
    }
    None
}

/// Component sizes that matter for the monochromatic-component arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentProfile {
    /// max over components C of min(|C ∩ X|, |C ∩ Y|)
    pub min_side_max: usize,
    pub max_x: usize,
    pub max_y: usize,
    /// max over components of |C|
    pub total_max: usize,
}

pub fn largest_component_profile(g: &BipartiteGraph) -> ComponentProfile {
    let comps = components(g);
    let mut p = ComponentProfile {
        min_side_max: 0,
        max_x: 0,
        max_y: 0,
        total_max: 0,
    };
    for c in 0..comps.len() {
        let (a, b) = comps.counts(c);
        p.min_side_max = p.min_side_max.max(a.min(b));
        p.max_x = p.max_x.max(a);
        p.max_y = p.max_y.max(b);
        p.total_max = p.total_max.max(a + b);
    }
    p
}
