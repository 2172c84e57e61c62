//! Five-number summaries of coded multiple-choice answers, computed directly
//! from `(code, count)` tallies.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::{DisplayLine, Presentable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseCount {
    pub code: u32,
    pub count: u64,
}

/// Answer tallies. Order and duplicate codes are allowed on input and folded
/// by [`CodedResponses::canonical`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodedResponses {
    pub counts: Vec<ResponseCount>,
}

impl CodedResponses {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        CodedResponses {
            counts: pairs
                .into_iter()
                .map(|(code, count)| ResponseCount { code, count })
                .collect(),
        }
    }

    /// Codes strictly increasing, duplicates merged, zero counts kept.
    pub fn canonical(&self) -> Result<CodedResponses> {
        let mut merged: BTreeMap<u32, u64> = BTreeMap::new();
        for rc in &self.counts {
            if rc.code == 0 {
                return Err(Error::invalid("counts.code", "choice codes must be positive integers"));
            }
            let slot = merged.entry(rc.code).or_default();
            *slot = slot
                .checked_add(rc.count)
                .ok_or_else(|| Error::invalid("counts.count", "response count overflow"))?;
        }
        Ok(CodedResponses::from_pairs(merged))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|rc| rc.count).sum()
    }
}

/// Parses the `code:count` tally format, one pair per line. Blank lines and
/// lines starting with `#` are skipped; commas also separate pairs.
impl FromStr for CodedResponses {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for item in line.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                let bad = || {
                    Error::invalid(
                        "counts",
                        format!("line {}: expected CODE:COUNT, got {item:?}", lineno + 1),
                    )
                };
                let (code, count) = item.split_once(':').ok_or_else(bad)?;
                let code = code.trim().parse().map_err(|_| bad())?;
                let count = count.trim().parse().map_err(|_| bad())?;
                pairs.push((code, count));
            }
        }
        Ok(CodedResponses::from_pairs(pairs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub minimum: f64,
    pub maximum: f64,
    pub median: f64,
    pub mean: f64,
    /// Population standard deviation (divides by n).
    pub std_dev: f64,
}

pub fn summarize(responses: &CodedResponses) -> Result<SurveySummary> {
    let canon = responses.canonical()?;
    let n = canon.total();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let present: Vec<(f64, u64)> = canon
        .counts
        .iter()
        .filter(|rc| rc.count > 0)
        .map(|rc| (f64::from(rc.code), rc.count))
        .collect();

    let minimum = present[0].0;
    let maximum = present[present.len() - 1].0;
    let median = if n % 2 == 1 {
        nth_value(&present, n / 2)
    } else {
        (nth_value(&present, n / 2 - 1) + nth_value(&present, n / 2)) / 2.0
    };
    let nf = n as f64;
    let mean = present.iter().map(|&(x, c)| x * c as f64).sum::<f64>() / nf;
    let variance = present
        .iter()
        .map(|&(x, c)| c as f64 * (x - mean).powi(2))
        .sum::<f64>()
        / nf;

    Ok(SurveySummary {
        minimum,
        maximum,
        median,
        mean,
        std_dev: variance.sqrt(),
    })
}

/// Value at zero-based rank `k` of the expanded, sorted responses.
fn nth_value(present: &[(f64, u64)], k: u64) -> f64 {
    let mut seen = 0;
    for &(x, c) in present {
        seen += c;
        if k < seen {
            return x;
        }
    }
    unreachable!("rank {k} beyond {seen} responses")
}

impl Presentable for SurveySummary {
    fn display_lines(&self) -> Vec<DisplayLine> {
        vec![
            DisplayLine::amount("minimum", "Min", self.minimum),
            DisplayLine::amount("maximum", "Max", self.maximum),
            DisplayLine::amount("median", "Median", self.median),
            DisplayLine::amount("mean", "Mean", self.mean),
            DisplayLine::amount("std_dev", "StdDev", self.std_dev),
        ]
    }
}
