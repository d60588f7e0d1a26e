use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monochromatic goal: a connected matching with `k` edges, or an even cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Target {
    /// `k` pairwise disjoint edges inside one component.
    ConnectedMatching(usize),
    /// A cycle with this many edges (even, at least 4).
    EvenCycle(usize),
}

impl Target {
    pub fn connected_matching(k: usize) -> Self {
        Target::ConnectedMatching(k)
    }

    pub fn even_cycle(length: usize) -> Result<Self> {
        if length < 4 || !length.is_multiple_of(2) {
            return Err(Error::param(format!(
                "cycle target needs an even length of at least 4, got {length}"
            )));
        }
        Ok(Target::EvenCycle(length))
    }

    /// `CM_0` is contained in every graph.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Target::ConnectedMatching(0))
    }

    /// Minimum number of edges any copy of the target has.
    pub fn edge_count(&self) -> usize {
        match *self {
            Target::ConnectedMatching(k) => k,
            Target::EvenCycle(l) => l,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::ConnectedMatching(k) => write!(f, "cm:{k}"),
            Target::EvenCycle(l) => write!(f, "cycle:{l}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, num) = s
            .split_once(':')
            .ok_or_else(|| Error::param(format!("target `{s}` is not of the form cm:<k> or cycle:<2k>")))?;
        let n: usize = num
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("target `{s}` has a non-numeric size")))?;
        match kind.trim() {
            "cm" => Ok(Target::ConnectedMatching(n)),
            "cycle" => Target::even_cycle(n),
            other => Err(Error::param(format!("unknown target kind `{other}`"))),
        }
    }
}

impl TryFrom<String> for Target {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Target> for String {
    fn from(t: Target) -> String {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("cm:3".parse::<Target>().unwrap(), Target::ConnectedMatching(3));
        assert_eq!("cycle:6".parse::<Target>().unwrap(), Target::EvenCycle(6));
        assert_eq!(Target::EvenCycle(8).to_string(), "cycle:8");
        assert!("cycle:5".parse::<Target>().is_err());
        assert!("cycle:2".parse::<Target>().is_err());
        assert!("cycle:0".parse::<Target>().is_err());
        assert!("path:3".parse::<Target>().is_err());
        assert!("cm3".parse::<Target>().is_err());
        assert!("cm:x".parse::<Target>().is_err());
    }

    #[test]
    fn degenerate_flag() {
        assert!(Target::ConnectedMatching(0).is_degenerate());
        assert!(!Target::ConnectedMatching(1).is_degenerate());
    }

    #[test]
    fn serde_as_string() {
        let t = Target::EvenCycle(6);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "\"cycle:6\"");
        assert_eq!(serde_json::from_str::<Target>(&s).unwrap(), t);
    }
}
