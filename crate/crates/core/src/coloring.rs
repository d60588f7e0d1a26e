//! Red/blue edge colorings of a bipartite host graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycles::{has_cycle, Cycle};
use crate::error::{Error, Result};
use crate::graph::{bits, BipartiteGraph};
use crate::matching::{
    self, components, find_connected_matching, largest_component_profile, maximum_matching_within, ComponentProfile,
};
use crate::target::Target;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// A partial assignment of the host's edges to red and blue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    base: BipartiteGraph,
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl EdgeColoring {
    /// The coloring with every edge unassigned.
    pub fn new(base: BipartiteGraph) -> Self {
        let n1 = base.n1();
        EdgeColoring {
            base,
            red: vec![0; n1],
            blue: vec![0; n1],
        }
    }

    /// Every edge of `base` in `color`.
    pub fn monochromatic(base: BipartiteGraph, color: Color) -> Self {
        let mut c = Self::new(base);
        let rows = c.base.rows().to_vec();
        match color {
            Color::Red => c.red = rows,
            Color::Blue => c.blue = rows,
        }
        c
    }

    /// Build from red and blue row sets; they must be disjoint edge sets of `base`.
    pub fn from_rows(base: BipartiteGraph, red: Vec<u64>, blue: Vec<u64>) -> Result<Self> {
        if red.len() != base.n1() || blue.len() != base.n1() {
            return Err(Error::param("color rows do not match the host's X side"));
        }
        for x in 0..base.n1() {
            if red[x] & blue[x] != 0 {
                return Err(Error::param(format!("x{x} has an edge colored both red and blue")));
            }
            if (red[x] | blue[x]) & !base.row(x) != 0 {
                return Err(Error::param(format!("x{x} has a colored pair that is not a host edge")));
            }
        }
        Ok(EdgeColoring { base, red, blue })
    }

    pub fn base(&self) -> &BipartiteGraph {
        &self.base
    }

    pub fn rows(&self, color: Color) -> &[u64] {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn set(&mut self, x: usize, y: usize, color: Color) -> Result<()> {
        if x >= self.base.n1() || y >= self.base.n2() || !self.base.has_edge(x, y) {
            return Err(Error::param(format!("({x}, {y}) is not an edge of the host")));
        }
        let bit = 1u64 << y;
        match color {
            Color::Red => {
                self.red[x] |= bit;
                self.blue[x] &= !bit;
            }
            Color::Blue => {
                self.blue[x] |= bit;
                self.red[x] &= !bit;
            }
        }
        Ok(())
    }

    pub fn unset(&mut self, x: usize, y: usize) {
        self.red[x] &= !(1 << y);
        self.blue[x] &= !(1 << y);
    }

    pub fn color_of(&self, x: usize, y: usize) -> Option<Color> {
        if self.red[x] >> y & 1 == 1 {
            Some(Color::Red)
        } else if self.blue[x] >> y & 1 == 1 {
            Some(Color::Blue)
        } else {
            None
        }
    }

    pub fn is_total(&self) -> bool {
        (0..self.base.n1()).all(|x| self.red[x] | self.blue[x] == self.base.row(x))
    }

    pub fn unassigned_count(&self) -> usize {
        (0..self.base.n1())
            .map(|x| (self.base.row(x) & !(self.red[x] | self.blue[x])).count_ones() as usize)
            .sum()
    }

    /// Colored edges in row-major order.
    pub fn colored_edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        self.base
            .edges()
            .filter_map(|(x, y)| self.color_of(x, y).map(|c| (x, y, c)))
    }

    /// Spanning subgraph formed by the edges of one color.
    pub fn mono_subgraph(&self, color: Color) -> BipartiteGraph {
        BipartiteGraph::from_rows(self.base.n1(), self.base.n2(), self.rows(color).to_vec())
            .expect("color rows are a subset of the host")
    }

    /// Whether the `color` subgraph contains `target`, with a witness copy.
    pub fn contains_target(&self, color: Color, target: Target) -> TargetCheck {
        let g = self.mono_subgraph(color);
        let witness = match target {
            Target::ConnectedMatching(0) => {
                return TargetCheck {
                    found: true,
                    degenerate: true,
                    witness: Some(TargetWitness::Matching(Vec::new())),
                }
            }
            Target::ConnectedMatching(k) => find_connected_matching(&g, k).map(TargetWitness::Matching),
            Target::EvenCycle(l) => has_cycle(&g, l)
                .expect("target lengths are validated")
                .map(TargetWitness::Cycle),
        };
        TargetCheck {
            found: witness.is_some(),
            degenerate: false,
            witness,
        }
    }

    /// Component profile of the red and of the blue subgraph.
    pub fn mono_component_profile(&self) -> MonoProfile {
        MonoProfile {
            red: largest_component_profile(&self.mono_subgraph(Color::Red)),
            blue: largest_component_profile(&self.mono_subgraph(Color::Blue)),
        }
    }

    /// Evaluate, on this single coloring, the conclusions of the
    /// monochromatic-component lemmas for targets `(CM_m, CM_n)`.
    pub fn check_lemma_conclusions(&self, m: usize, n: usize) -> Result<LemmaReport> {
        if !self.base.is_balanced() {
            return Err(Error::param("lemma probe needs a balanced host"));
        }
        if !self.is_total() {
            return Err(Error::param("lemma probe needs a total coloring"));
        }
        let red = self.mono_subgraph(Color::Red);
        let blue = self.mono_subgraph(Color::Blue);
        let red_profile = largest_component_profile(&red);
        let blue_profile = largest_component_profile(&blue);
        let red_big = red_profile.min_side_max >= m;
        let blue_big = blue_profile.min_side_max >= n;

        let red_has_cm = find_connected_matching(&red, m).is_some();
        let blue_has_cm = find_connected_matching(&blue, n).is_some();

        let lemma4 = if blue_has_cm {
            None
        } else {
            lemma4_probe(&red, &blue, n)
        };

        let order = self.base.n1();
        let delta = self.base.min_degree().unwrap_or(0);
        Ok(LemmaReport {
            m,
            n,
            hypothesis: m > n && order == m + n - 1 && 4 * delta > 3 * (m + n - 1),
            red_component_big: red_big,
            blue_component_big: blue_big,
            lemma2_holds: red_big || blue_big,
            red_has_cm,
            blue_has_cm,
            lemma3_conclusion: if red_has_cm { None } else { Some(blue_big) },
            lemma4,
        })
    }
}

/// The largest blue component meeting both sides in at least `n` vertices,
/// its König cover `S`, and whether `B \ S` sits inside one red component.
fn lemma4_probe(red: &BipartiteGraph, blue: &BipartiteGraph, n: usize) -> Option<Lemma4Probe> {
    let comps = components(blue);
    // largest by (min-side size, total size), ties to the lowest id
    let mut chosen: Option<(usize, (usize, usize))> = None;
    for c in 0..comps.len() {
        let (a, b) = comps.counts(c);
        if a < n || b < n {
            continue;
        }
        let key = (a.min(b), a + b);
        if chosen.is_none_or(|(_, k)| key > k) {
            chosen = Some((c, key));
        }
    }
    let (component, _) = chosen?;
    let (xs, ys) = comps.members[component];
    let cover = maximum_matching_within(blue, xs, ys);
    let rest_x = xs & !cover.cover_x;
    let rest_y = ys & !cover.cover_y;
    let red_comps = components(red);
    let mut ids = bits(rest_x)
        .map(|x| red_comps.comp_x[x])
        .chain(bits(rest_y).map(|y| red_comps.comp_y[y]));
    let first = ids.next();
    let holds = match first {
        None => true,
        Some(id) => ids.all(|i| i == id),
    };
    Some(Lemma4Probe {
        component,
        cover_size: cover.size,
        uncovered: (rest_x.count_ones() + rest_y.count_ones()) as usize,
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoProfile {
    pub red: ComponentProfile,
    pub blue: ComponentProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetWitness {
    Matching(Vec<(usize, usize)>),
    Cycle(Cycle),
}

impl TargetWitness {
    /// The witness's edges all lie in `rows` and form a copy of `target`.
    pub fn verify(&self, g: &BipartiteGraph, target: Target) -> bool {
        match (self, target) {
            (TargetWitness::Matching(pairs), Target::ConnectedMatching(k)) => {
                if pairs.len() != k {
                    return false;
                }
                let r = matching::MatchingResult {
                    matching: pairs.clone(),
                    cover_x: 0,
                    cover_y: 0,
                    size: k,
                };
                if !r.is_valid_matching(g) {
                    return false;
                }
                let comps = components(g);
                pairs.windows(2).all(|w| comps.comp_x[w[0].0] == comps.comp_x[w[1].0])
            }
            (TargetWitness::Cycle(c), Target::EvenCycle(l)) => c.len() == l && c.verify(g),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCheck {
    pub found: bool,
    /// The target was `CM_0`, present in every graph.
    pub degenerate: bool,
    pub witness: Option<TargetWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Probe {
    /// Blue component id (numbering of [`matching::components`]).
    pub component: usize,
    pub cover_size: usize,
    /// Number of component vertices outside the cover.
    pub uncovered: usize,
    pub holds: bool,
}

/// Truth values of the component lemmas' conclusions on one coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub m: usize,
    pub n: usize,
    /// Host has order 2(m+n-1), m > n and min degree strictly above 3(m+n-1)/4.
    pub hypothesis: bool,
    /// Some red component has at least `m` vertices on each side.
    pub red_component_big: bool,
    /// Some blue component has at least `n` vertices on each side.
    pub blue_component_big: bool,
    pub lemma2_holds: bool,
    pub red_has_cm: bool,
    pub blue_has_cm: bool,
    /// When red has no `CM_m`: does a blue component meet both sides in `n` vertices?
    pub lemma3_conclusion: Option<bool>,
    /// When blue has no `CM_n` and a qualifying blue component exists.
    pub lemma4: Option<Lemma4Probe>,
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring({}+{}, [", self.base.n1(), self.base.n2())?;
        for (i, (x, y)) in self.base.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = self.color_of(x, y).map_or('?', Color::letter);
            write!(f, "{x}-{y}{c}")?;
        }
        write!(f, "])")
    }
}
