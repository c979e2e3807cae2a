//! Young's orthogonal form for irreducible representations of `S_n`.
//!
//! The basis is indexed by standard tableaux. For an adjacent transposition
//! `s_i = (i, i+1)` let `r` be the axial distance `c(i+1) − c(i)`, where
//! `c(v) = col(v) − row(v)` is the content of the cell holding `v`. Then
//! `s_i` maps `e_T` to `(1/r) e_T + √(1 − 1/r²) e_{s_i T}`. When `i` and
//! `i+1` share a row or column the second term vanishes.

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;

use super::{partition::standard_tableaux, MatrixRep, Partition};
use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Largest degree for which full matrix tables are built.
pub const MAX_YOUNG_DEGREE: usize = 7;

/// Real orthogonal matrices of the adjacent transpositions `s_0 … s_{n−2}`.
pub fn generator_matrices(lambda: &Partition) -> Vec<DMatrix<f64>> {
    let n = lambda.n();
    let tableaux = standard_tableaux(lambda);
    let position: HashMap<&[usize], usize> = tableaux
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let contents: Vec<Vec<i64>> = tableaux.iter().map(|t| contents(t)).collect();
    let d = tableaux.len();
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = DMatrix::<f64>::zeros(d, d);
            for (col, t) in tableaux.iter().enumerate() {
                let r = (contents[col][i + 1] - contents[col][i]) as f64;
                m[(col, col)] = 1.0 / r;
                if t[i] != t[i + 1] && r.abs() > 1.0 {
                    let mut swapped = t.clone();
                    swapped.swap(i, i + 1);
                    if let Some(&row) = position.get(swapped.as_slice()) {
                        m[(row, col)] = (1.0 - 1.0 / (r * r)).sqrt();
                    }
                }
            }
            m
        })
        .collect()
}

/// Content `col − row` of the cell holding each entry.
fn contents(rows: &[usize]) -> Vec<i64> {
    let mut filled = vec![0i64; rows.len()];
    rows.iter()
        .map(|&r| {
            let col = filled[r];
            filled[r] += 1;
            col - r as i64
        })
        .collect()
}

/// Young's orthogonal representation of `S_n` for the shape `lambda`,
/// extended from generators to every element.
pub fn young_orthogonal_rep(group: &FiniteGroup, lambda: &Partition) -> Result<MatrixRep> {
    let n = lambda.n();
    if group.kind() != GroupKind::Symmetric(n) {
        return Err(Error::GroupMismatch(format!(
            "shape {lambda} does not label an irrep of {}",
            group.kind()
        )));
    }
    if n > MAX_YOUNG_DEGREE {
        return Err(Error::OutOfRange(format!(
            "orthogonal form tables are built for n ≤ {MAX_YOUNG_DEGREE}, got {n}"
        )));
    }
    let gens: Vec<CMatrix> = generator_matrices(lambda)
        .iter()
        .map(linalg::real_matrix)
        .collect();
    let d = lambda.dimension() as usize;
    Ok(MatrixRep::from_matrices(
        group.kind(),
        d,
        extend_from_generators(group, &gens, d),
    ))
}

/// Extends generator images to the whole group by breadth-first search from
/// the identity using `ρ(s·g) = ρ(s)ρ(g)`.
pub(crate) fn extend_from_generators(
    group: &FiniteGroup,
    gens: &[CMatrix],
    d: usize,
) -> Vec<CMatrix> {
    debug_assert_eq!(gens.len(), group.generators().len());
    let mut out: Vec<Option<CMatrix>> = vec![None; group.order()];
    out[group.identity()] = Some(linalg::identity(d));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(g) = queue.pop_front() {
        for (k, &s) in group.generators().iter().enumerate() {
            let h = group.mul(s, g);
            if out[h].is_none() {
                let m = &gens[k] * out[g].as_ref().expect("visited");
                out[h] = Some(m);
                queue.push_back(h);
            }
        }
    }
    out.into_iter()
        .map(|m| m.expect("generators reach every element"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ClassLabel;
    use crate::rep::{character_sn, partitions};

    #[test]
    fn two_one_transposition_is_diagonal() {
        let lambda: Partition = "[2,1]".parse().unwrap();
        let gens = generator_matrices(&lambda);
        assert_eq!(
            gens[0],
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
        );
        // (12): axial distance ±2 gives entries ±1/2 and √3/2
        let s = 3f64.sqrt() / 2.0;
        let expected = DMatrix::from_row_slice(2, 2, &[-0.5, s, s, 0.5]);
        assert!((&gens[1] - expected).amax() < 1e-15);
    }

    #[test]
    fn two_one_generates_order_six() {
        let lambda: Partition = "[2,1]".parse().unwrap();
        let gens = generator_matrices(&lambda);
        let mut found: Vec<DMatrix<f64>> = vec![DMatrix::identity(2, 2)];
        let mut frontier = found.clone();
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let next = g * &m;
                if !found.iter().any(|f| (f - &next).amax() < 1e-12) {
                    found.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        assert_eq!(found.len(), 6);
    }

    #[test]
    fn traces_match_characters_and_homomorphism_holds() {
        for n in 1..=5 {
            let group = FiniteGroup::symmetric(n).unwrap();
            for lambda in partitions(n).unwrap() {
                let rep = young_orthogonal_rep(&group, &lambda).unwrap();
                assert_eq!(rep.dim() as u64, lambda.dimension());
                rep.check_homomorphism(&group, 1e-9).unwrap();
                if n <= 4 {
                    assert!(rep.homomorphism_defect_exhaustive(&group) < 1e-9);
                }
                for (g, tr) in rep.traces().iter().enumerate() {
                    let ClassLabel::CycleType(ct) = ClassLabel::of(group.element(g)) else {
                        unreachable!()
                    };
                    let chi = character_sn(&lambda, &ct).unwrap() as f64;
                    assert!((tr.re - chi).abs() < 1e-9 && tr.im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn generators_are_orthogonal_involutions() {
        for lambda in partitions(6).unwrap() {
            for g in generator_matrices(&lambda) {
                let d = g.nrows();
                assert!((&g * &g - DMatrix::<f64>::identity(d, d)).amax() < 1e-12);
                assert!((&g - g.transpose()).amax() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_wrong_group_and_large_degree() {
        let group = FiniteGroup::symmetric(3).unwrap();
        assert!(young_orthogonal_rep(&group, &"[2,2]".parse().unwrap()).is_err());
        let big = FiniteGroup::with_cap(GroupKind::Symmetric(8), 50_000).unwrap();
        assert!(matches!(
            young_orthogonal_rep(&big, &"[8]".parse().unwrap()),
            Err(Error::OutOfRange(_))
        ));
    }
}
