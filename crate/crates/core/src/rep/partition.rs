use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest `n` accepted by [`partitions`].
pub const MAX_PARTITION_N: usize = 30;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidElement(format!(
                "{parts:?} is not a weakly decreasing sequence of positive parts"
            )));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Number of standard Young tableaux, by the hook-length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.n();
        let conj = self.conjugate();
        let mut hooks: Vec<u128> = Vec::with_capacity(n);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j + conj.parts[j] - i - 1) as u128);
            }
        }
        // 30! < 2^128, and the hook product divides n!
        let fact: u128 = (1..=n as u128).product();
        let hook_product: u128 = hooks.into_iter().product();
        (fact / hook_product) as u64
    }

    /// Cells `(row, col)` in row-reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| (i, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] in {s:?}")))?;
        let parts = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first,
/// `[1,…,1]` last).
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    if n > MAX_PARTITION_N {
        return Err(Error::OutOfRange(format!(
            "partitions of {n}: supported range is 0..={MAX_PARTITION_N}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Standard Young tableaux of a shape, each given as the row of every entry
/// (`rows[v]` is the row holding `v`). Sorted lexicographically by that row
/// sequence, which is the basis order of the orthogonal form.
pub fn standard_tableaux(shape: &Partition) -> Vec<Vec<usize>> {
    let n = shape.n();
    let mut out = Vec::new();
    let mut fill_count = vec![0usize; shape.len()];
    let mut rows = Vec::with_capacity(n);
    place(shape, n, &mut fill_count, &mut rows, &mut out);
    out
}

fn place(
    shape: &Partition,
    n: usize,
    fill_count: &mut [usize],
    rows: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if rows.len() == n {
        out.push(rows.clone());
        return;
    }
    for r in 0..shape.len() {
        let fits = fill_count[r] < shape.parts[r] && (r == 0 || fill_count[r - 1] > fill_count[r]);
        if fits {
            fill_count[r] += 1;
            rows.push(r);
            place(shape, n, fill_count, rows, out);
            rows.pop();
            fill_count[r] -= 1;
        }
    }
}
