//! Exact verification of bipartite Ramsey arrowing for connected matchings
//! and even cycles.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bit-row bipartite graphs and the text file format ([`io`]).
//! * [`matching`]: Hopcroft–Karp matchings, König covers, components and
//!   maximum connected matchings.
//! * [`cycles`]: even cycles of a given length and cycle spectra.
//! * [`coloring`]: red/blue edge colorings and per-coloring predicates.
//! * [`arrowing`]: the counterexample search, `br` scans and family runs.
//! * [`constructions`]: the split and four-block extremal colorings.
//! * [`enumerate`]: canonical forms and dense graph families.

pub mod arrowing;
pub mod coloring;
pub mod constructions;
pub mod cycles;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod target;
pub mod unionfind;

pub use arrowing::{
    arrows, arrows_family, bipartite_ramsey, find_bad_coloring, ArrowVerdict, Outcome, SearchConfig, SearchStats,
};
pub use coloring::{Color, EdgeColoring, LemmaReport};
pub use constructions::{construction_one, split_witness, verify_witness, WitnessReport};
pub use cycles::{has_cycle, spectrum, Cycle, CycleSpectrum};
pub use enumerate::{canonical_form, dense_family, random_graph_with_min_degree, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Side, VertexRef};
pub use matching::{max_connected_matching, maximum_matching, ComponentDecomposition, MatchingResult};
pub use target::Target;
