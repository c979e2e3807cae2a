use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::{Error, Result};

/// An element `((α, β), t)` of `K = S_n ≀ Z₂ = (S_n × S_n) ⋊ Z₂`.
///
/// The product is
/// `((α₁,β₁),t₁)·((α₂,β₂),t₂) = ((α₁x, β₁y), t₁⊕t₂)` with `(x, y) = (α₂, β₂)`
/// when `t₁ = 0` and `(x, y) = (β₂, α₂)` when `t₁ = 1`; that is, the element
/// reads as `(α, β) · sᵗ` with `s = ((e,e),1)` swapping the two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub flip: bool,
}

impl WreathElement {
    pub fn new(alpha: Permutation, beta: Permutation, flip: bool) -> Result<Self> {
        if alpha.degree() != beta.degree() {
            return Err(Error::InvalidElement(format!(
                "wreath components of degrees {} and {}",
                alpha.degree(),
                beta.degree()
            )));
        }
        Ok(Self { alpha, beta, flip })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            alpha: Permutation::identity(n),
            beta: Permutation::identity(n),
            flip: false,
        }
    }

    /// The canonical block swap `s = ((e,e),1)`.
    pub fn swap(n: usize) -> Self {
        Self {
            flip: true,
            ..Self::identity(n)
        }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn is_identity(&self) -> bool {
        !self.flip && self.alpha.is_identity() && self.beta.is_identity()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::GroupMismatch(format!(
                "wreath degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let (x, y) = if self.flip {
            (&other.beta, &other.alpha)
        } else {
            (&other.alpha, &other.beta)
        };
        Self {
            alpha: self.alpha.compose_unchecked(x),
            beta: self.beta.compose_unchecked(y),
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.flip {
            // ((α,β),1)⁻¹ = ((β⁻¹, α⁻¹), 1)
            Self {
                alpha: self.beta.inverse(),
                beta: self.alpha.inverse(),
                flip: true,
            }
        } else {
            Self {
                alpha: self.alpha.inverse(),
                beta: self.beta.inverse(),
                flip: false,
            }
        }
    }

    /// The element as a permutation of the `2n` points `V₁ = 0..n`,
    /// `V₂ = n..2n`, consistent with the group law.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.degree();
        let mut images = vec![0usize; 2 * n];
        for i in 0..n {
            // sᵗ first, then (α, β) blockwise
            let (a, b) = if self.flip { (n + i, i) } else { (i, n + i) };
            images[i] = self.block_image(a);
            images[n + i] = self.block_image(b);
        }
        Permutation::from_images(images).expect("block action is a bijection")
    }

    fn block_image(&self, p: usize) -> usize {
        let n = self.degree();
        if p < n {
            self.alpha.image(p)
        } else {
            n + self.beta.image(p - n)
        }
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, u8::from(self.flip))
    }
}

impl FromStr for WreathElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected ([..],[..],t) in {s:?}")))?;
        let first_close = body
            .find(']')
            .ok_or_else(|| Error::Parse(format!("missing ']' in {s:?}")))?;
        let alpha: Permutation = body[..=first_close].parse()?;
        let rest = body[first_close + 1..].trim_start_matches([',', ' ']);
        let second_close = rest
            .find(']')
            .ok_or_else(|| Error::Parse(format!("missing second ']' in {s:?}")))?;
        let beta: Permutation = rest[..=second_close].parse()?;
        let flip = match rest[second_close + 1..].trim_matches([',', ' ']) {
            "0" => false,
            "1" => true,
            other => return Err(Error::Parse(format!("flip must be 0 or 1, got {other:?}"))),
        };
        WreathElement::new(alpha, beta, flip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> Permutation {
        Permutation::from_images(vec![1, 0]).unwrap()
    }

    #[test]
    fn swap_squares_to_identity() {
        for n in 0..5 {
            let s = WreathElement::swap(n);
            assert!(s.compose(&s).unwrap().is_identity());
        }
    }

    #[test]
    fn swap_times_inner_element_exchanges_blocks() {
        let e = Permutation::identity(2);
        let g = WreathElement::new(tau(), e.clone(), false).unwrap();
        let prod = WreathElement::swap(2).compose(&g).unwrap();
        assert_eq!(prod, WreathElement::new(e, tau(), true).unwrap());
    }

    #[test]
    fn inverse_is_two_sided() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        for flip in [false, true] {
            let g = WreathElement::new(a.clone(), b.clone(), flip).unwrap();
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().compose(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn embedding_in_s2n_is_a_homomorphism() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        let g = WreathElement::new(a.clone(), b.clone(), true).unwrap();
        let h = WreathElement::new(b, a, true).unwrap();
        let lhs = g.compose(&h).unwrap().to_permutation();
        let rhs = g.to_permutation().compose(&h.to_permutation()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip() {
        let g: WreathElement = "([1,0],[0,1],1)".parse().unwrap();
        assert_eq!(g.to_string(), "([1,0],[0,1],1)");
        assert!("([1,0],[0,1,2],0)".parse::<WreathElement>().is_err());
        assert!("([1,0],[0,1],2)".parse::<WreathElement>().is_err());
    }
}
