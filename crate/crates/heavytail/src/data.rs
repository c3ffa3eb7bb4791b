//! Count data: deduplicated positive-integer observations with
//! multiplicities, plus file ingestion and the empirical survival export.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// On-disk layout for count data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DataFormat {
    /// One positive integer observation per line.
    Raw,
    /// `value,count` lines, optional header.
    Pairs,
}

impl std::str::FromStr for DataFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(DataFormat::Raw),
            "pairs" => Ok(DataFormat::Pairs),
            other => Err(Error::data(format!("unknown data format '{other}' (raw|pairs)"))),
        }
    }
}

/// Observed counts: strictly increasing values, a positive multiplicity per
/// value, and the total observation count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountData {
    values: Vec<u64>,
    counts: Vec<u64>,
    n: u64,
}

impl CountData {
    /// Build from (value, count) pairs in any order; duplicate values have
    /// their counts summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for (v, c) in pairs {
            if v < 1 {
                return Err(Error::data(format!("observation value {v} below support (x >= 1)")));
            }
            if c < 1 {
                return Err(Error::data(format!("count {c} for value {v} must be >= 1")));
            }
            *map.entry(v).or_insert(0u64) += c;
        }
        if map.is_empty() {
            return Err(Error::data("empty dataset"));
        }
        let values: Vec<u64> = map.keys().copied().collect();
        let counts: Vec<u64> = map.values().copied().collect();
        let mut n = 0u64;
        let mut sum = 0u64;
        for (&v, &c) in values.iter().zip(&counts) {
            n = n
                .checked_add(c)
                .ok_or_else(|| Error::data("total observation count overflows u64"))?;
            sum = sum
                .checked_add(v.checked_mul(c).ok_or_else(|| Error::data("value*count overflow"))?)
                .ok_or_else(|| Error::data("total observation sum overflows u64"))?;
        }
        Ok(CountData { values, counts, n })
    }

    /// Build from raw observations (repetitions allowed).
    pub fn from_observations(obs: &[u64]) -> Result<Self> {
        Self::from_pairs(obs.iter().map(|&v| (v, 1)))
    }

    /// An empty dataset (log-likelihood 0). Mostly useful for diagnostics.
    pub fn empty() -> Self {
        CountData { values: vec![], counts: vec![], n: 0 }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of observations n = Σ counts.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    /// Σ value·count.
    pub fn sum(&self) -> u64 {
        self.values.iter().zip(&self.counts).map(|(&v, &c)| v * c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values.iter().copied().zip(self.counts.iter().copied())
    }

    /// Observations at or above a threshold, as (value, count) pairs.
    pub fn tail(&self, xmin: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.iter().filter(move |&(v, _)| v >= xmin)
    }

    /// Number of observations at or above a threshold.
    pub fn tail_n(&self, xmin: u64) -> u64 {
        self.tail(xmin).map(|(_, c)| c).sum()
    }

    /// SHA-256 of the canonical `value,count` listing.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for (v, c) in self.iter() {
            hasher.update(format!("{v},{c}\n").as_bytes());
        }
        let digest = hasher.finalize();
        let mut out = String::with_capacity(64);
        for byte in digest {
            let _ = write!(out, "{byte:02x}");
        }
        out
    }
}

/// Read count data from a file. `Raw` expects one positive integer per line;
/// `Pairs` expects `value,count` lines with an optional header. Blank lines
/// are ignored; anything else is a parse error with its line number.
pub fn read_counts(path: impl AsRef<Path>, format: DataFormat) -> Result<CountData> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| {
        Error::data(format!("cannot open {}: {e}", path.as_ref().display()))
    })?;
    read_counts_from(BufReader::new(file), format)
}

/// Same as [`read_counts`] but from any reader.
pub fn read_counts_from(reader: impl Read, format: DataFormat) -> Result<CountData> {
    let reader = BufReader::new(reader);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match format {
            DataFormat::Raw => {
                let v = parse_positive(trimmed, "observation", line_no)?;
                pairs.push((v, 1));
            }
            DataFormat::Pairs => {
                let mut fields = trimmed.split(',').map(str::trim);
                let (a, b) = match (fields.next(), fields.next(), fields.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => {
                        return Err(Error::data(format!(
                            "line {line_no}: expected 'value,count', got '{trimmed}'"
                        )))
                    }
                };
                // A single leading non-numeric line is treated as a header.
                if idx == 0 && a.parse::<u64>().is_err() && b.parse::<u64>().is_err() {
                    continue;
                }
                let v = parse_positive(a, "value", line_no)?;
                let c = parse_positive(b, "count", line_no)?;
                pairs.push((v, c));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::data("empty dataset"));
    }
    CountData::from_pairs(pairs)
}

fn parse_positive(token: &str, what: &str, line_no: usize) -> Result<u64> {
    let v: u64 = token
        .parse()
        .map_err(|_| Error::data(format!("line {line_no}: {what} '{token}' is not a positive integer")))?;
    if v < 1 {
        return Err(Error::data(format!(
            "line {line_no}: {what} {v} below support (must be >= 1)"
        )));
    }
    Ok(v)
}

/// Serialise count data in the given format.
pub fn write_counts(w: &mut impl std::io::Write, data: &CountData, format: DataFormat) -> Result<()> {
    match format {
        DataFormat::Raw => {
            for (v, c) in data.iter() {
                for _ in 0..c {
                    writeln!(w, "{v}")?;
                }
            }
        }
        DataFormat::Pairs => {
            writeln!(w, "value,count")?;
            for (v, c) in data.iter() {
                writeln!(w, "{v},{c}")?;
            }
        }
    }
    Ok(())
}

/// One row of the empirical survival table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcdfRow {
    pub x: u64,
    /// S(x) = (# observations ≥ x) / n.
    pub survival: f64,
}

/// Empirical survival S(x) at every distinct observed value, ascending in x
/// and therefore strictly decreasing in S.
pub fn ecdf_export(data: &CountData) -> Vec<EcdfRow> {
    let n = data.n() as f64;
    let mut rows = Vec::with_capacity(data.distinct());
    let mut at_or_above = data.n();
    for (v, c) in data.iter() {
        rows.push(EcdfRow { x: v, survival: at_or_above as f64 / n });
        at_or_above -= c;
    }
    rows
}
