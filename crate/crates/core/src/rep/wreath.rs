//! Irreducible representations of `K = S_n ≀ Z₂`.
//!
//! An element `((α,β),t)` acts as `(α,β)·sᵗ`, where `s` swaps the two
//! blocks. Diagonal irreps `(ρ,±)` live on `V_ρ ⊗ V_ρ`:
//!
//! ```text
//! ((α,β),t) ↦ (ρ(α) ⊗ ρ(β)) · (±SWAP)ᵗ
//! ```
//!
//! Pair irreps `{ρ,σ}` are induced from `ρ ⊠ σ` on `S_n × S_n` with coset
//! representatives `{e, s}`. On `W ⊕ W`, `W = V_ρ ⊗ V_σ`, with
//! `A = ρ(α)⊗σ(β)` and `B = ρ(β)⊗σ(α)`:
//!
//! ```text
//! ((α,β),0) ↦ [A 0; 0 B]      ((α,β),1) ↦ [0 A; B 0]
//! ```

use super::{
    character_sn, partitions, young_orthogonal_rep, MatrixRep, Partition, SwapSign,
    WreathIrrepLabel,
};
use crate::group::{ClassLabel, FiniteGroup, GroupKind, WreathElement};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Largest `n` for which wreath irreps are realized as matrices.
pub const MAX_WREATH_DEGREE: usize = 4;

/// All irrep labels of `S_n ≀ Z₂`: diagonal labels in partition order (`+`
/// before `−`), then pairs `{λ_i, λ_j}` for `i < j`.
pub fn wreath_irrep_labels(n: usize) -> Result<Vec<WreathIrrepLabel>> {
    let parts = partitions(n)?;
    let mut out = Vec::with_capacity(parts.len() * (parts.len() + 3) / 2);
    for p in &parts {
        out.push(WreathIrrepLabel::Diagonal(p.clone(), SwapSign::Plus));
        out.push(WreathIrrepLabel::Diagonal(p.clone(), SwapSign::Minus));
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            out.push(WreathIrrepLabel::Pair(a.clone(), b.clone()));
        }
    }
    Ok(out)
}

/// Character value on a conjugacy class, from its cycle-type label.
pub fn wreath_character_at(label: &WreathIrrepLabel, class: &ClassLabel) -> Result<i64> {
    let n = label.degree();
    let chi = |p: &Partition, c: &Partition| character_sn(p, c);
    match (label, class) {
        (WreathIrrepLabel::Pair(r, s), ClassLabel::Inner(a, b)) => {
            Ok(chi(r, a)? * chi(s, b)? + chi(s, a)? * chi(r, b)?)
        }
        (WreathIrrepLabel::Pair(_, _), ClassLabel::Swap(c)) => {
            if c.n() != n {
                return Err(Error::GroupMismatch(format!("{label} at class {class}")));
            }
            Ok(0)
        }
        (WreathIrrepLabel::Diagonal(r, _), ClassLabel::Inner(a, b)) => Ok(chi(r, a)? * chi(r, b)?),
        (WreathIrrepLabel::Diagonal(r, sign), ClassLabel::Swap(c)) => Ok(sign.value() * chi(r, c)?),
        (_, ClassLabel::CycleType(_)) => Err(Error::GroupMismatch(format!(
            "wreath label {label} at symmetric-group class {class}"
        ))),
    }
}

/// Exact character of a wreath irrep at an element.
///
/// The diagonal value at `t = 0` is the product `χ_ρ(α)·χ_ρ(β)`, the trace
/// of `ρ(α) ⊗ ρ(β)`.
pub fn wreath_character(label: &WreathIrrepLabel, g: &WreathElement) -> Result<i64> {
    if g.alpha.degree() != label.degree() {
        return Err(Error::GroupMismatch(format!(
            "label {label} of degree {} at element {g} of degree {}",
            label.degree(),
            g.alpha.degree()
        )));
    }
    wreath_character_at(
        label,
        &ClassLabel::of(&crate::group::Element::Wreath(g.clone())),
    )
}

/// The additive diagonal value `χ_ρ(α) + χ_ρ(β)` at `t = 0`. Kept only so
/// reports can show where it departs from the trace.
pub fn additive_diagonal_value(
    rho: &Partition,
    alpha: &Partition,
    beta: &Partition,
) -> Result<i64> {
    Ok(character_sn(rho, alpha)? + character_sn(rho, beta)?)
}

/// Explicit matrices of a wreath irrep.
pub fn wreath_irrep(group: &FiniteGroup, label: &WreathIrrepLabel) -> Result<MatrixRep> {
    let n = label.degree();
    if group.kind() != GroupKind::Wreath(n) {
        return Err(Error::GroupMismatch(format!(
            "{label} does not label an irrep of {}",
            group.kind()
        )));
    }
    if n > MAX_WREATH_DEGREE {
        return Err(Error::OutOfRange(format!(
            "wreath irreps are realized for n ≤ {MAX_WREATH_DEGREE}, got {n}"
        )));
    }
    let sym = FiniteGroup::symmetric(n)?;
    let matrices: Vec<CMatrix> = match label {
        WreathIrrepLabel::Diagonal(rho, sign) => {
            let r = young_orthogonal_rep(&sym, rho)?;
            let d = r.dim();
            let swap = linalg::swap_operator(d) * linalg::c(sign.value() as f64);
            (0..group.order())
                .map(|g| {
                    let (a, b, flip) = group.wreath_parts(g).expect("wreath group");
                    let m = r.matrix(a).kronecker(r.matrix(b));
                    if flip {
                        m * &swap
                    } else {
                        m
                    }
                })
                .collect()
        }
        WreathIrrepLabel::Pair(rho, sigma) => {
            let r = young_orthogonal_rep(&sym, rho)?;
            let s = young_orthogonal_rep(&sym, sigma)?;
            let w = r.dim() * s.dim();
            (0..group.order())
                .map(|g| {
                    let (a, b, flip) = group.wreath_parts(g).expect("wreath group");
                    let upper = r.matrix(a).kronecker(s.matrix(b));
                    let lower = r.matrix(b).kronecker(s.matrix(a));
                    let mut m = CMatrix::zeros(2 * w, 2 * w);
                    let (upper_at, lower_at) = if flip {
                        ((0, w), (w, 0))
                    } else {
                        ((0, 0), (w, w))
                    };
                    m.view_mut(upper_at, (w, w)).copy_from(&upper);
                    m.view_mut(lower_at, (w, w)).copy_from(&lower);
                    m
                })
                .collect()
        }
    };
    Ok(MatrixRep::from_matrices(
        group.kind(),
        label.dimension() as usize,
        matrices,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(n: usize) -> Vec<u64> {
        wreath_irrep_labels(n)
            .unwrap()
            .iter()
            .map(|l| l.dimension())
            .collect()
    }

    #[test]
    fn dimension_lists() {
        let mut two = dims(2);
        two.sort_unstable();
        assert_eq!(two, vec![1, 1, 1, 1, 2]);
        let mut three = dims(3);
        three.sort_unstable();
        let mut expected = vec![1, 1, 4, 4, 1, 1, 2, 4, 4];
        expected.sort_unstable();
        assert_eq!(three, expected);
        for n in 1..=5 {
            let fact: u64 = (1..=n as u64).product();
            let total: u64 = dims(n).iter().map(|d| d * d).sum();
            assert_eq!(total, 2 * fact * fact);
        }
    }

    #[test]
    fn matrices_are_representations_with_exact_characters() {
        for n in 1..=3 {
            let group = FiniteGroup::wreath(n).unwrap();
            for label in wreath_irrep_labels(n).unwrap() {
                let rep = wreath_irrep(&group, &label).unwrap();
                rep.check_homomorphism(&group, 1e-9).unwrap();
                if n <= 2 {
                    assert!(rep.homomorphism_defect_exhaustive(&group) < 1e-9);
                }
                for (g, tr) in rep.traces().iter().enumerate() {
                    let w = group.element(g).as_wreath().unwrap();
                    let chi = wreath_character(&label, w).unwrap() as f64;
                    assert!(
                        (tr.re - chi).abs() < 1e-9 && tr.im.abs() < 1e-9,
                        "{label} at {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn values_at_the_swap_class() {
        let n = 3;
        let group = FiniteGroup::wreath(n).unwrap();
        let m = group.involution_class().unwrap();
        let w = group.element(m.representative).as_wreath().unwrap();
        for label in wreath_irrep_labels(n).unwrap() {
            let value = wreath_character(&label, w).unwrap();
            match &label {
                WreathIrrepLabel::Pair(_, _) => assert_eq!(value, 0),
                WreathIrrepLabel::Diagonal(r, SwapSign::Plus) => {
                    assert_eq!(value, r.dimension() as i64)
                }
                WreathIrrepLabel::Diagonal(r, SwapSign::Minus) => {
                    assert_eq!(value, -(r.dimension() as i64))
                }
            }
        }
    }

    #[test]
    fn additive_form_differs_from_trace() {
        let rho: Partition = "[2,1]".parse().unwrap();
        let id: Partition = "[1,1,1]".parse().unwrap();
        // trace of ρ(e)⊗ρ(e) is 4; the additive form gives 2 + 2
        assert_eq!(additive_diagonal_value(&rho, &id, &id).unwrap(), 4);
        let three: Partition = "[3]".parse().unwrap();
        let label = WreathIrrepLabel::Diagonal(rho.clone(), SwapSign::Plus);
        let class = ClassLabel::Inner(id.clone(), three.clone());
        assert_eq!(wreath_character_at(&label, &class).unwrap(), -2);
        assert_eq!(additive_diagonal_value(&rho, &id, &three).unwrap(), 1);
    }

    #[test]
    fn degree_mismatch() {
        let label = WreathIrrepLabel::Diagonal("[2]".parse().unwrap(), SwapSign::Plus);
        assert!(wreath_character(&label, &WreathElement::identity(3)).is_err());
        let group = FiniteGroup::wreath(3).unwrap();
        assert!(wreath_irrep(&group, &label).is_err());
    }
}
