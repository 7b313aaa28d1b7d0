//! Integer lists written as inclusive ranges: `1..10`, `5,7`, `0..3,9`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spans(Vec<(i64, i64)>);

impl Spans {
    pub fn single(v: i64) -> Self {
        Spans(vec![(v, v)])
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        Spans(vec![(lo, hi)])
    }

    /// Number of values, counting repeats.
    pub fn len(&self) -> u128 {
        self.0.iter().map(|&(lo, hi)| (hi as i128 - lo as i128 + 1) as u128).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().flat_map(|&(lo, hi)| lo..=hi)
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().map(|s| s.0).min()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.iter().map(|s| s.1).max()
    }

    /// The values as `u64`; `what` names the flag in the error.
    pub fn to_u64s(&self, what: &str) -> Result<Vec<u64>, String> {
        match self.min() {
            Some(m) if m < 0 => Err(format!("{what} must be non-negative, got {m}")),
            _ => Ok(self.iter().map(|v| v as u64).collect()),
        }
    }
}

impl FromStr for Spans {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid list {s:?}; expected e.g. 1..10 or 5,7");
        let mut spans = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (lo, hi) = match item.split_once("..") {
                Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
                None => (item, item),
            };
            let lo: i64 = lo.parse().map_err(|_| bad())?;
            let hi: i64 = hi.parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(format!("empty range {item:?}"));
            }
            spans.push((lo, hi));
        }
        Ok(Spans(spans))
    }
}

impl fmt::Display for Spans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(lo, hi)| if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}
