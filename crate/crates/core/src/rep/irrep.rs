use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MatrixRep, Partition};
use crate::{Error, Result};

/// Sign of the block swap in a diagonal wreath irrep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SwapSign {
    Plus,
    Minus,
}

impl SwapSign {
    pub fn value(self) -> i64 {
        match self {
            SwapSign::Plus => 1,
            SwapSign::Minus => -1,
        }
    }
}

/// Irreducible representations of `S_n ≀ Z₂`: induced from `ρ ⊠ σ` with
/// `ρ ≠ σ`, or one of the two halves of the induced `ρ ⊠ ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WreathIrrepLabel {
    /// Unordered pair, stored with the first partition earlier in
    /// reverse-lexicographic order (larger).
    Pair(Partition, Partition),
    Diagonal(Partition, SwapSign),
}

impl WreathIrrepLabel {
    pub fn pair(a: Partition, b: Partition) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidElement(format!(
                "pair label needs distinct partitions, got {a} twice"
            )));
        }
        if a.n() != b.n() {
            return Err(Error::GroupMismatch(format!("{a} and {b}")));
        }
        Ok(if a > b {
            WreathIrrepLabel::Pair(a, b)
        } else {
            WreathIrrepLabel::Pair(b, a)
        })
    }

    pub fn degree(&self) -> usize {
        match self {
            WreathIrrepLabel::Pair(a, _) | WreathIrrepLabel::Diagonal(a, _) => a.n(),
        }
    }

    pub fn dimension(&self) -> u64 {
        match self {
            WreathIrrepLabel::Pair(a, b) => 2 * a.dimension() * b.dimension(),
            WreathIrrepLabel::Diagonal(a, _) => a.dimension().pow(2),
        }
    }
}

impl fmt::Display for WreathIrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WreathIrrepLabel::Pair(a, b) => write!(f, "{{{a},{b}}}"),
            WreathIrrepLabel::Diagonal(a, SwapSign::Plus) => write!(f, "({a},+)"),
            WreathIrrepLabel::Diagonal(a, SwapSign::Minus) => write!(f, "({a},-)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrrepLabel {
    Sym(Partition),
    Wreath(WreathIrrepLabel),
}

impl IrrepLabel {
    pub fn dimension(&self) -> u64 {
        match self {
            IrrepLabel::Sym(p) => p.dimension(),
            IrrepLabel::Wreath(w) => w.dimension(),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Sym(p) => p.fmt(f),
            IrrepLabel::Wreath(w) => w.fmt(f),
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;

    /// `[2,1]`, `{[2],[1,1]}`, `([2,1],+)` or `([2,1],-)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let split = body
                .find(']')
                .ok_or_else(|| Error::Parse(format!("bad pair label {s:?}")))?;
            let a: Partition = body[..=split].parse()?;
            let b: Partition = body[split + 1..].trim_start_matches([',', ' ']).parse()?;
            return WreathIrrepLabel::pair(a, b).map(IrrepLabel::Wreath);
        }
        if let Some(body) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (part, sign) = body
                .rsplit_once(',')
                .ok_or_else(|| Error::Parse(format!("bad diagonal label {s:?}")))?;
            let sign = match sign.trim() {
                "+" => SwapSign::Plus,
                "-" => SwapSign::Minus,
                other => return Err(Error::Parse(format!("bad sign {other:?}"))),
            };
            return Ok(IrrepLabel::Wreath(WreathIrrepLabel::Diagonal(
                part.parse()?,
                sign,
            )));
        }
        Ok(IrrepLabel::Sym(s.parse()?))
    }
}

/// A labeled irreducible unitary representation with its exact character
/// row (indexed by conjugacy class).
#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub rep: MatrixRep,
    pub character: Vec<i64>,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn matrix(&self, g: usize) -> &crate::linalg::CMatrix {
        self.rep.matrix(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_labels_are_unordered() {
        let a: Partition = "[2]".parse().unwrap();
        let b: Partition = "[1,1]".parse().unwrap();
        assert_eq!(
            WreathIrrepLabel::pair(a.clone(), b.clone()).unwrap(),
            WreathIrrepLabel::pair(b, a.clone()).unwrap()
        );
        assert!(WreathIrrepLabel::pair(a.clone(), a).is_err());
    }

    #[test]
    fn label_text_round_trip() {
        for text in ["[2,1]", "{[3],[2,1]}", "([2,1],+)", "([1,1,1],-)"] {
            let label: IrrepLabel = text.parse().unwrap();
            assert_eq!(label.to_string(), text);
        }
        let swapped: IrrepLabel = "{[2,1],[3]}".parse().unwrap();
        assert_eq!(swapped.to_string(), "{[3],[2,1]}");
    }

    #[test]
    fn wreath_dimensions() {
        let l: IrrepLabel = "{[3],[2,1]}".parse().unwrap();
        assert_eq!(l.dimension(), 4);
        let d: IrrepLabel = "([2,1],-)".parse().unwrap();
        assert_eq!(d.dimension(), 4);
    }
}
