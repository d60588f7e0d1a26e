//! Append-only results cache.
//!
//! One JSON object per line in `<dir>/results.jsonl`, keyed by the SHA-256 of
//! the host's canonical form (sides may be swapped) and the two targets. Only
//! decided verdicts are stored. Readers take a shared lock, writers an
//! exclusive one; lines that fail to parse are ignored.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use biparrow_core::{canonical_form, BipartiteGraph, Target};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FILE_NAME: &str = "results.jsonl";
const FORMAT: u32 = 1;

pub fn graph_digest(g: &BipartiteGraph) -> String {
    hex::encode(Sha256::digest(canonical_form(g, true).as_bytes()))
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    format: u32,
    digest: String,
    red: Target,
    blue: Target,
    arrows: bool,
    nodes: u64,
    tool_version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub arrows: bool,
    pub nodes: u64,
}

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: HashMap<(String, Target, Target), Entry>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            file.lock_shared()?;
            for line in BufReader::new(&file).lines() {
                let Ok(l) = serde_json::from_str::<Line>(&line?) else {
                    continue;
                };
                if l.format == FORMAT {
                    entries.insert(
                        (l.digest, l.red, l.blue),
                        Entry {
                            arrows: l.arrows,
                            nodes: l.nodes,
                        },
                    );
                }
            }
        }
        Ok(Cache {
            path: Some(path),
            entries,
        })
    }

    pub fn get(&self, digest: &str, red: Target, blue: Target) -> Option<Entry> {
        self.entries.get(&(digest.to_string(), red, blue)).copied()
    }

    pub fn put(&mut self, digest: &str, red: Target, blue: Target, entry: Entry) -> Result<()> {
        let key = (digest.to_string(), red, blue);
        if self.entries.get(&key) == Some(&entry) {
            return Ok(());
        }
        self.entries.insert(key, entry);
        let Some(path) = &self.path else { return Ok(()) };
        let line = Line {
            format: FORMAT,
            digest: digest.to_string(),
            red,
            blue,
            arrows: entry.arrows,
            nodes: entry.nodes,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        let mut text = serde_json::to_string(&line)?;
        text.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        file.lock()?;
        file.write_all(text.as_bytes())?;
        file.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_across_opens() {
        let dir = tempfile::tempdir().unwrap();
        let g = BipartiteGraph::complete_bipartite(3, 3).unwrap();
        let d = graph_digest(&g);
        let (r, b) = (Target::ConnectedMatching(3), Target::ConnectedMatching(2));
        let mut c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.get(&d, r, b), None);
        c.put(
            &d,
            r,
            b,
            Entry {
                arrows: false,
                nodes: 7,
            },
        )
        .unwrap();
        let c2 = Cache::open(dir.path()).unwrap();
        assert_eq!(
            c2.get(&d, r, b),
            Some(Entry {
                arrows: false,
                nodes: 7
            })
        );
        assert_eq!(c2.get(&d, b, r), None);
    }

    #[test]
    fn ignores_garbage_lines() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(FILE_NAME), "not json\n{\"format\":1}\n").unwrap();
        assert!(Cache::open(dir.path()).unwrap().entries.is_empty());
    }

    #[test]
    fn digest_ignores_labelling_and_side_swap() {
        let a = BipartiteGraph::from_edge_list(2, 3, &[(0, 0), (0, 1), (1, 2)]).unwrap();
        let b = BipartiteGraph::from_edge_list(3, 2, &[(2, 1), (1, 1), (0, 0)]).unwrap();
        assert_eq!(graph_digest(&a), graph_digest(&b));
    }
}
