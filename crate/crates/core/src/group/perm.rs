use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rep::Partition;
use crate::{Error, Result};

/// A permutation of `{0, …, n-1}` in one-line notation: `images[i]` is the
/// image of `i`.
///
/// Products compose right to left: `(g * h)(i) = g(h(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::OutOfRange(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidElement(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// The transposition `(a b)` of degree `n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n || a == b {
            return Err(Error::InvalidElement(format!("({a} {b}) in degree {n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(01)(23)`, `(0 1)` or `(0,1)`; an empty
    /// string or `()` is the identity. Without separators, each digit is a
    /// point.
    pub fn from_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut rest = text.trim();
        let mut seen = vec![false; n];
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points: Vec<usize> = if body.contains(',') || body.contains(char::is_whitespace) {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad point {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            for &p in &points {
                if p >= n || seen[p] {
                    return Err(Error::InvalidElement(format!(
                        "cycle {body:?} invalid in degree {n}"
                    )));
                }
                seen[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self * other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::GroupMismatch(format!(
                "degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv }
    }

    /// Cycle lengths sorted descending, fixed points included.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_unsorted(lengths)
    }

    /// Position of this permutation in the lexicographic order of one-line
    /// image sequences (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Self {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Self { images }
    }

    /// Adjacent transpositions `i₁, …, i_r` with
    /// `self = s_{i₁} * … * s_{i_r}`, where `s_i = (i i+1)`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Bubble-sort the image list; each swap at position i is a right
        // multiplication by s_i, so the recorded swaps read in reverse.
        let mut work = self.images.clone();
        let mut swaps = Vec::new();
        let n = work.len();
        for pass in 0..n {
            for i in 0..n.saturating_sub(1 + pass) {
                if work[i] > work[i + 1] {
                    work.swap(i, i + 1);
                    swaps.push(i);
                }
            }
        }
        swaps.reverse();
        swaps
    }

    /// Writes the permutation in cycle notation, omitting fixed points.
    pub fn to_cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        let sep = if n > 10 { "," } else { "" };
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.image(x);
            }
            out.push('(');
            out.push_str(&cycle.join(sep));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] in {s:?}")))?;
        let images = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // (a*b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).unwrap().image(1), 2);
    }

    #[test]
    fn cycle_parsing() {
        let p = Permutation::from_cycles("(01)", 3).unwrap();
        assert_eq!(p.to_string(), "[1,0,2]");
        let q = Permutation::from_cycles("(0 2 1)", 3).unwrap();
        assert_eq!(q.to_string(), "[2,0,1]");
        assert!(Permutation::from_cycles("", 4).unwrap().is_identity());
        assert!(Permutation::from_cycles("(00)", 3).is_err());
        assert!(Permutation::from_cycles("(05)", 3).is_err());
        assert_eq!(q.to_cycle_string(), "(021)");
    }

    #[test]
    fn display_round_trip() {
        let p: Permutation = "[2,0,1]".parse().unwrap();
        assert_eq!(p.to_string(), "[2,0,1]");
        assert!("[0,0]".parse::<Permutation>().is_err());
        assert_eq!("[]".parse::<Permutation>().unwrap().degree(), 0);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(2);
        let b = Permutation::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::GroupMismatch(_))));
    }

    proptest! {
        #[test]
        fn lex_rank_round_trips(n in 0usize..7, seed in any::<usize>()) {
            let total: usize = (1..=n).product();
            let r = seed % total.max(1);
            let p = Permutation::from_lex_rank(n, r);
            prop_assert_eq!(p.lex_rank(), r);
        }

        #[test]
        fn adjacent_word_reconstructs(n in 1usize..7, seed in any::<usize>()) {
            let total: usize = (1..=n).product();
            let p = Permutation::from_lex_rank(n, seed % total);
            let mut acc = Permutation::identity(n);
            for i in p.adjacent_word() {
                acc = acc.compose_unchecked(&Permutation::transposition(n, i, i + 1).unwrap());
            }
            prop_assert_eq!(acc, p);
        }
    }
}
