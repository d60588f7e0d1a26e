//! Versioned JSON documents written to stdout by every subcommand.

use std::collections::BTreeMap;
use std::path::PathBuf;

use biparrow_core::constructions::Claim;
use biparrow_core::{Color, Cycle, EdgeColoring, SearchStats};
use serde::{Deserialize, Serialize};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub result: CommandResult,
    pub witness_files: Vec<PathBuf>,
    pub nodes: u64,
    pub wall_time_ms: u64,
}

impl RunRecord {
    pub fn new(command: &str, result: CommandResult) -> Self {
        RunRecord {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            parameters: BTreeMap::new(),
            result,
            witness_files: Vec::new(),
            nodes: 0,
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("parameters are plain data");
        self.parameters.insert(key.to_string(), v);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Arrows(ArrowsResult),
    VerifyWitness(WitnessCheck),
    Ramsey(RamseyTable),
    Construction(ConstructionResult),
    Family(FamilyResult),
    Spectrum(SpectrumResult),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Arrows,
    Counterexample,
    Undecided,
}

impl Verdict {
    pub fn from_arrows(a: Option<bool>) -> Self {
        match a {
            Some(true) => Verdict::Arrows,
            Some(false) => Verdict::Counterexample,
            None => Verdict::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowsResult {
    pub verdict: Verdict,
    /// A target was `cm:0`, which every graph contains.
    pub degenerate: bool,
    pub cached: bool,
    /// Open branches left when the budget ran out.
    pub frontier: Option<usize>,
    pub stats: SearchStats,
    /// SHA-256 of the host's canonical form.
    pub graph_digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub valid: bool,
    pub total: bool,
    pub red_target_found: bool,
    pub blue_target_found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge(pub usize, pub usize, pub char);

pub fn colored_edges(c: &EdgeColoring) -> Vec<ColoredEdge> {
    c.colored_edges()
        .map(|(x, y, col)| ColoredEdge(x, y, col.letter()))
        .collect()
}

pub fn color_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyRow {
    pub n: usize,
    pub verdict: Verdict,
    pub cached: bool,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyTable {
    pub rows: Vec<RamseyRow>,
    /// Smallest certified `N`, if any within the scanned range.
    pub value: Option<usize>,
    pub closed_form: Option<usize>,
    /// Bad coloring of `K_{value-1,value-1}`.
    pub witness_below: Option<Vec<ColoredEdge>>,
    pub certificate: Option<SearchStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub which: String,
    pub m: usize,
    pub n: usize,
    pub claims: Vec<Claim>,
    pub avoids_targets: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyMemberResult {
    pub index: usize,
    pub digest: String,
    pub edges: usize,
    pub min_degree: usize,
    pub verdict: Verdict,
    pub cached: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyResult {
    pub order: usize,
    pub delta_min: usize,
    /// `exhaustive` or `sample`.
    pub mode: String,
    pub members: Vec<FamilyMemberResult>,
    pub total: usize,
    pub arrowing: usize,
    pub counterexamples: Vec<usize>,
    pub undecided: Vec<usize>,
    pub all_arrow: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// `graph`, `red` or `blue`.
    pub subgraph: String,
    pub max_len: usize,
    pub lengths: Vec<usize>,
    /// One cycle per length in `lengths`, in the same order.
    pub witnesses: Vec<Cycle>,
}
