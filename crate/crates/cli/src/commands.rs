use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use biparrow_core::arrowing::{is_bad_coloring, known_value};
use biparrow_core::constructions::{construction_one, split_witness, verify_witness};
use biparrow_core::enumerate::theorem_one_delta;
use biparrow_core::io::{parse_coloring, parse_coloring_of, parse_graph, write_coloring, write_graph};
use biparrow_core::{
    dense_family, find_bad_coloring, random_graph_with_min_degree, spectrum, BipartiteGraph, Color, EdgeColoring,
    Error as CoreError, Outcome, SearchConfig, SearchStats, Target,
};
use serde::Serialize;

use crate::cache::{graph_digest, Cache, Entry};
use crate::record::*;

pub const EXIT_ARROWS: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_REFUSED: u8 = 65;
pub const EXIT_IO: u8 = 74;

/// An error together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_IO,
            error: error.into(),
        }
    }
}

pub type CmdResult = std::result::Result<Output, Failure>;

pub struct Output {
    pub record: RunRecord,
    pub code: u8,
    /// Replaces the JSON document on stdout when set.
    pub text: Option<String>,
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Arrows => EXIT_ARROWS,
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<EdgeColoring>,
    pub frontier: Option<usize>,
    pub degenerate: bool,
    pub stats: SearchStats,
    pub cached: bool,
    pub digest: String,
}

/// Run the search unless the cache already answers it. A cached negative
/// verdict is recomputed when the caller needs the witness itself.
pub fn decide(
    g: &BipartiteGraph,
    red: Target,
    blue: Target,
    cfg: &SearchConfig,
    cache: &mut Cache,
    need_witness: bool,
) -> Result<Decision> {
    let digest = graph_digest(g);
    let degenerate = red.is_degenerate() || blue.is_degenerate();
    if !degenerate {
        if let Some(e) = cache.get(&digest, red, blue) {
            if e.arrows || !need_witness {
                return Ok(Decision {
                    verdict: Verdict::from_arrows(Some(e.arrows)),
                    witness: None,
                    frontier: None,
                    degenerate,
                    stats: SearchStats {
                        nodes: e.nodes,
                        ..SearchStats::default()
                    },
                    cached: true,
                    digest,
                });
            }
        }
    }
    let v = find_bad_coloring(g, red, blue, cfg);
    if let (Some(arrows), false) = (v.arrows(), v.degenerate) {
        cache.put(
            &digest,
            red,
            blue,
            Entry {
                arrows,
                nodes: v.stats.nodes,
            },
        )?;
    }
    let verdict = Verdict::from_arrows(v.arrows());
    let (witness, frontier) = match v.outcome {
        Outcome::Arrows => (None, None),
        Outcome::Counterexample(c) => (Some(c), None),
        Outcome::Undecided { frontier } => (None, Some(frontier)),
    };
    Ok(Decision {
        verdict,
        witness,
        frontier,
        degenerate: v.degenerate,
        stats: v.stats,
        cached: false,
        digest,
    })
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::usage)
}

fn read_graph(path: &Path) -> std::result::Result<BipartiteGraph, Failure> {
    parse_graph(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::usage)
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .map_err(Failure::io)?;
    }
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::io)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub struct ArrowsArgs<'a> {
    pub graph: &'a Path,
    pub red: Target,
    pub blue: Target,
    pub witness: Option<PathBuf>,
    pub verify_witness: Option<PathBuf>,
}

pub fn arrows(a: ArrowsArgs<'_>, cfg: &SearchConfig, cache: &mut Cache) -> CmdResult {
    let g = read_graph(a.graph)?;
    let base = RunRecord::new("arrows", CommandResult::VerifyWitness(WitnessCheck::default_invalid()))
        .param("graph", a.graph)
        .param("red", a.red)
        .param("blue", a.blue);

    if let Some(path) = a.verify_witness {
        let c = parse_coloring_of(&g, &read(&path)?).map_err(Failure::usage)?;
        let red_found = c.contains_target(Color::Red, a.red).found;
        let blue_found = c.contains_target(Color::Blue, a.blue).found;
        let valid = is_bad_coloring(&c, a.red, a.blue);
        let mut record = base.param("verify_witness", &path);
        record.result = CommandResult::VerifyWitness(WitnessCheck {
            valid,
            total: c.is_total(),
            red_target_found: red_found,
            blue_target_found: blue_found,
        });
        record.witness_files.push(path);
        let code = if valid { 0 } else { 1 };
        return Ok(Output {
            record,
            code,
            text: None,
        });
    }

    let d = decide(&g, a.red, a.blue, cfg, cache, true).map_err(Failure::io)?;
    let mut record = base
        .param("budget", cfg.budget)
        .param("jobs", cfg.jobs)
        .param("symmetry", cfg.symmetry);
    if let Some(w) = &d.witness {
        let path = a
            .witness
            .unwrap_or_else(|| PathBuf::from(format!("{}.witness.bcol", a.graph.display())));
        write(&path, &write_coloring(w))?;
        record.witness_files.push(path);
    }
    record.nodes = d.stats.nodes;
    record.result = CommandResult::Arrows(ArrowsResult {
        verdict: d.verdict,
        degenerate: d.degenerate,
        cached: d.cached,
        frontier: d.frontier,
        stats: d.stats,
        graph_digest: d.digest,
    });
    Ok(Output {
        record,
        code: exit_for(d.verdict),
        text: None,
    })
}

impl WitnessCheck {
    fn default_invalid() -> Self {
        WitnessCheck {
            valid: false,
            total: false,
            red_target_found: false,
            blue_target_found: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

pub fn ramsey(
    red: Target,
    blue: Target,
    max_n: usize,
    format: TableFormat,
    witness_out: Option<PathBuf>,
    cfg: &SearchConfig,
    cache: &mut Cache,
) -> CmdResult {
    if max_n == 0 {
        return Err(Failure::usage(anyhow::anyhow!("--max-n must be at least 1")));
    }
    let mut rows = Vec::new();
    let mut witnesses: Vec<Option<EdgeColoring>> = Vec::new();
    let mut value = None;
    let mut nodes = 0;
    for n in 1..=max_n {
        let g = BipartiteGraph::complete_bipartite(n, n).map_err(Failure::usage)?;
        let d = decide(&g, red, blue, cfg, cache, true).map_err(Failure::io)?;
        nodes += d.stats.nodes;
        rows.push(RamseyRow {
            n,
            verdict: d.verdict,
            cached: d.cached,
            stats: d.stats,
        });
        witnesses.push(d.witness);
        match d.verdict {
            Verdict::Arrows => {
                value = Some(n);
                break;
            }
            Verdict::Undecided => break,
            Verdict::Counterexample => {}
        }
    }
    let below = value.filter(|&v| v > 1).and_then(|v| witnesses[v - 2].clone());
    let mut record = RunRecord::new("ramsey", CommandResult::VerifyWitness(WitnessCheck::default_invalid()))
        .param("red", red)
        .param("blue", blue)
        .param("max_n", max_n)
        .param("budget", cfg.budget)
        .param("jobs", cfg.jobs)
        .param("symmetry", cfg.symmetry);
    if let (Some(w), Some(path)) = (&below, witness_out) {
        write(&path, &write_coloring(w))?;
        record.witness_files.push(path);
    }
    record.nodes = nodes;
    let table = RamseyTable {
        certificate: value.map(|v| rows[v - 1].stats),
        witness_below: below.as_ref().map(colored_edges),
        closed_form: known_value(red, blue),
        value,
        rows,
    };
    let text = (format == TableFormat::Csv).then(|| ramsey_csv(&table));
    record.result = CommandResult::Ramsey(table);
    let code = if value.is_some() { EXIT_ARROWS } else { EXIT_UNDECIDED };
    Ok(Output { record, code, text })
}

fn ramsey_csv(t: &RamseyTable) -> String {
    let mut s =
        String::from("n,verdict,cached,nodes,red_prunes,blue_prunes,conflict_prunes,symmetry_prunes,forced,witness\n");
    for r in &t.rows {
        let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
        let witness = match (&t.witness_below, t.value) {
            (Some(w), Some(v)) if r.n + 1 == v => w
                .iter()
                .map(|ColoredEdge(x, y, c)| format!("{x}-{y}{c}"))
                .collect::<Vec<_>>()
                .join(" "),
            _ => String::new(),
        };
        let st = &r.stats;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            verdict.as_str().unwrap_or_default(),
            r.cached,
            st.nodes,
            st.red_prunes,
            st.blue_prunes,
            st.conflict_prunes,
            st.symmetry_prunes,
            st.forced,
            witness
        );
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Split,
    C1,
}

pub fn verify_constructions(m: usize, n: usize, which: Which, out_dir: &Path) -> CmdResult {
    let (name, report) = match which {
        Which::Split => ("split", split_witness(m, n)),
        Which::C1 => ("c1", construction_one(m, n)),
    };
    let report = report.map_err(Failure::usage)?;
    let (red, blue) = (Target::ConnectedMatching(m), Target::ConnectedMatching(n));
    let avoids = verify_witness(&report, red, blue).map_err(Failure::usage)?;
    let result = ConstructionResult {
        which: name.to_string(),
        m,
        n,
        claims: report.claims.clone(),
        avoids_targets: avoids,
        passed: report.passed() && avoids,
    };
    let stem = out_dir.join(format!("{name}_m{m}_n{n}"));
    let files = [
        stem.with_extension("bg"),
        stem.with_extension("bcol"),
        stem.with_extension("json"),
    ];
    write(&files[0], &write_graph(&report.graph))?;
    write(&files[1], &write_coloring(&report.coloring))?;
    write(&files[2], &json(&result))?;
    let code = if result.passed { 0 } else { 1 };
    let mut record = RunRecord::new("verify-constructions", CommandResult::Construction(result))
        .param("m", m)
        .param("n", n)
        .param("which", name);
    record.witness_files.extend(files);
    Ok(Output {
        record,
        code,
        text: None,
    })
}

pub struct FamilyArgs {
    pub m: usize,
    pub n: usize,
    pub sample: Option<usize>,
    pub seed: u64,
    pub manifest: Option<PathBuf>,
}

#[derive(Serialize)]
struct ManifestIndex<'a> {
    count: usize,
    order: usize,
    delta_min: usize,
    mode: &'a str,
    seed: Option<u64>,
    members: Vec<ManifestMember>,
}

#[derive(Serialize)]
struct ManifestMember {
    file: String,
    digest: String,
}

pub fn theorem1(a: FamilyArgs, cfg: &SearchConfig, cache: &mut Cache) -> CmdResult {
    if a.m == 0 || a.n == 0 {
        return Err(Failure::usage(anyhow::anyhow!("--m and --n must be positive")));
    }
    let order = a.m + a.n - 1;
    let delta = theorem_one_delta(a.m, a.n);
    let (mode, family) = match a.sample {
        Some(k) => {
            let graphs = if delta > order {
                Vec::new()
            } else {
                (0..k as u64)
                    .map(|i| random_graph_with_min_degree(order, delta, a.seed.wrapping_add(i)))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(Failure::usage)?
            };
            ("sample", graphs)
        }
        None => match dense_family(order, delta) {
            Ok(f) => ("exhaustive", f),
            Err(e @ CoreError::FamilyTooLarge { .. }) => {
                return Err(Failure {
                    code: EXIT_REFUSED,
                    error: anyhow::anyhow!("{e} (N = {order}, minimum degree {delta}); rerun with --sample K --seed S"),
                })
            }
            Err(e) => return Err(Failure::usage(e)),
        },
    };

    let (red, blue) = (Target::ConnectedMatching(a.m), Target::ConnectedMatching(a.n));
    let mut record = RunRecord::new(
        "theorem1",
        CommandResult::VerifyWitness(WitnessCheck::default_invalid()),
    )
    .param("m", a.m)
    .param("n", a.n)
    .param("sample", a.sample)
    .param("seed", a.seed)
    .param("budget", cfg.budget)
    .param("jobs", cfg.jobs)
    .param("symmetry", cfg.symmetry);
    let mut members = Vec::new();
    let mut index = Vec::new();
    for (i, g) in family.iter().enumerate() {
        let d = decide(g, red, blue, cfg, cache, a.manifest.is_some()).map_err(Failure::io)?;
        record.nodes += d.stats.nodes;
        if let Some(dir) = &a.manifest {
            let file = format!("member_{i:03}.bg");
            write(&dir.join(&file), &write_graph(g))?;
            if let Some(w) = &d.witness {
                let wpath = dir.join(format!("member_{i:03}.witness.bcol"));
                write(&wpath, &write_coloring(w))?;
                record.witness_files.push(wpath);
            }
            index.push(ManifestMember {
                file,
                digest: d.digest.clone(),
            });
        }
        members.push(FamilyMemberResult {
            index: i,
            digest: d.digest,
            edges: g.edge_count(),
            min_degree: g.min_degree().unwrap_or(0),
            verdict: d.verdict,
            cached: d.cached,
            nodes: d.stats.nodes,
        });
    }
    if let Some(dir) = &a.manifest {
        let idx = ManifestIndex {
            count: family.len(),
            order,
            delta_min: delta,
            mode,
            seed: a.sample.map(|_| a.seed),
            members: index,
        };
        write(&dir.join("index.json"), &json(&idx))?;
    }
    let pick = |v: Verdict| {
        members
            .iter()
            .filter(|m| m.verdict == v)
            .map(|m| m.index)
            .collect::<Vec<_>>()
    };
    let counterexamples = pick(Verdict::Counterexample);
    let undecided = pick(Verdict::Undecided);
    let result = FamilyResult {
        order,
        delta_min: delta,
        mode: mode.to_string(),
        total: members.len(),
        arrowing: members.iter().filter(|m| m.verdict == Verdict::Arrows).count(),
        all_arrow: counterexamples.is_empty() && undecided.is_empty(),
        counterexamples,
        undecided,
        members,
    };
    let code = if !result.counterexamples.is_empty() {
        EXIT_COUNTEREXAMPLE
    } else if !result.undecided.is_empty() {
        EXIT_UNDECIDED
    } else {
        EXIT_ARROWS
    };
    record.result = CommandResult::Family(result);
    Ok(Output {
        record,
        code,
        text: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SubgraphColor {
    R,
    B,
    None,
}

pub fn spectrum_cmd(file: &Path, max_len: usize, color: SubgraphColor) -> CmdResult {
    let text = read(file)?;
    let is_coloring = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("p bcol"));
    let (g, subgraph) = if is_coloring {
        let c = parse_coloring(&text).map_err(Failure::usage)?;
        match color {
            SubgraphColor::R => (c.mono_subgraph(Color::Red), color_name(Color::Red)),
            SubgraphColor::B => (c.mono_subgraph(Color::Blue), color_name(Color::Blue)),
            SubgraphColor::None => (c.base().clone(), "graph"),
        }
    } else {
        if color != SubgraphColor::None {
            return Err(Failure::usage(anyhow::anyhow!(
                "--color needs a coloring file, got a graph file"
            )));
        }
        (parse_graph(&text).map_err(Failure::usage)?, "graph")
    };
    let s = spectrum(&g, max_len).map_err(Failure::usage)?;
    let result = SpectrumResult {
        subgraph: subgraph.to_string(),
        max_len,
        lengths: s.present(),
        witnesses: s.witnesses.into_values().collect(),
    };
    let record = RunRecord::new("spectrum", CommandResult::Spectrum(result))
        .param("file", file)
        .param("max_len", max_len)
        .param("color", subgraph);
    Ok(Output {
        record,
        code: 0,
        text: None,
    })
}
