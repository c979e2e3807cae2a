use num_rational::Ratio;

use super::{Catalog, IrrepLabel, MatrixRep};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Default ceiling on the ambient dimension of a dense projector.
pub const DEFAULT_PROJECTOR_CAP: usize = 1024;

/// Projection onto the `σ`-isotypic subspace of a representation.
#[derive(Clone, Debug)]
pub struct IsotypicProjector {
    pub target: IrrepLabel,
    pub matrix: CMatrix,
}

impl IsotypicProjector {
    pub fn rank(&self) -> Result<usize> {
        linalg::projector_rank(&self.matrix)
    }
}

/// `(d_σ/|G|) Σ_g χ_σ(g)* ρ(g)`. Characters here are real integers.
pub fn isotypic_projector(
    catalog: &Catalog,
    rep: &MatrixRep,
    sigma: &IrrepLabel,
    cap: usize,
) -> Result<IsotypicProjector> {
    if rep.dim() > cap {
        return Err(Error::TensorCapExceeded {
            dim: rep.dim(),
            cap,
        });
    }
    rep.check_homomorphism(catalog.group(), linalg::EPS)?;
    let i = catalog.position(sigma)?;
    Ok(IsotypicProjector {
        target: sigma.clone(),
        matrix: projector_unchecked(catalog, rep, i),
    })
}

/// Projector without validating `rep`.
pub(crate) fn projector_unchecked(catalog: &Catalog, rep: &MatrixRep, i: usize) -> CMatrix {
    let table = catalog.table();
    let mut acc = CMatrix::zeros(rep.dim(), rep.dim());
    for g in 0..catalog.group().order() {
        let chi = table.value(i, g);
        if chi != 0 {
            acc += rep.matrix(g) * linalg::c(chi as f64);
        }
    }
    acc * linalg::c(catalog.dimension(i) as f64 / catalog.group().order() as f64)
}

/// Exact multiplicity `⟨χ_rep, χ_σ⟩` of `σ` in a class function.
pub fn multiplicity(catalog: &Catalog, rep_character: &[i64], sigma: &IrrepLabel) -> Result<i64> {
    let table = catalog.table();
    if rep_character.len() != table.classes.len() {
        return Err(Error::GroupMismatch(format!(
            "class function has {} entries, {} has {} classes",
            rep_character.len(),
            catalog.kind(),
            table.classes.len()
        )));
    }
    table.inner_product(rep_character, table.row(sigma)?)
}

/// Character of a matrix representation as an integer class function.
pub fn class_function(catalog: &Catalog, rep: &MatrixRep) -> Result<Vec<i64>> {
    catalog
        .table()
        .classes
        .iter()
        .map(|c| {
            let tr = linalg::trace(rep.matrix(c.representative));
            let rounded = tr.re.round();
            if (tr.re - rounded).abs() > linalg::RANK_GUARD || tr.im.abs() > linalg::RANK_GUARD {
                return Err(Error::NonIntegerMultiplicity(format!(
                    "trace {tr} at class {} is not an integer",
                    c.label
                )));
            }
            Ok(rounded as i64)
        })
        .collect()
}

/// Plancherel measure `d_σ² / |G|` in exact arithmetic.
pub fn plancherel(catalog: &Catalog) -> Vec<(IrrepLabel, Ratio<u64>)> {
    let order = catalog.group().order() as u64;
    catalog
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let d = catalog.dimension(i) as u64;
            (l.clone(), Ratio::new(d * d, order))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupKind;

    #[test]
    fn plancherel_sums_to_one() {
        for kind in [
            GroupKind::Symmetric(3),
            GroupKind::Wreath(2),
            GroupKind::Wreath(3),
        ] {
            let cat = Catalog::new(kind).unwrap();
            let total: Ratio<u64> = plancherel(&cat).into_iter().map(|(_, p)| p).sum();
            assert_eq!(total, Ratio::from_integer(1));
        }
        let cat = Catalog::new(GroupKind::Symmetric(3)).unwrap();
        let masses: Vec<String> = plancherel(&cat)
            .iter()
            .map(|(l, p)| format!("{l}:{p}"))
            .collect();
        assert_eq!(masses, vec!["[3]:1/6", "[2,1]:2/3", "[1,1,1]:1/6"]);
    }

    #[test]
    fn projectors_of_an_irrep() {
        let cat = Catalog::new(GroupKind::Symmetric(3)).unwrap();
        let rho = cat.irrep_by_label(&"[2,1]".parse().unwrap()).unwrap();
        let full = isotypic_projector(&cat, &rho.rep, &rho.label, 64).unwrap();
        assert!(linalg::max_abs_diff(&full.matrix, &linalg::identity(2)) < 1e-12);
        let none = isotypic_projector(&cat, &rho.rep, &"[3]".parse().unwrap(), 64).unwrap();
        assert!(none.matrix.camax() < 1e-12);
        assert!(matches!(
            isotypic_projector(&cat, &rho.rep, &rho.label, 1),
            Err(Error::TensorCapExceeded { .. })
        ));
    }

    #[test]
    fn trivial_in_tensor_with_dual_has_rank_one() {
        let cat = Catalog::new(GroupKind::Symmetric(3)).unwrap();
        let rho = cat.irrep_by_label(&"[2,1]".parse().unwrap()).unwrap();
        let prod = rho.rep.tensor(&rho.rep.dual()).unwrap();
        let p = isotypic_projector(&cat, &prod, &"[3]".parse().unwrap(), 64).unwrap();
        assert!(linalg::is_projector(&p.matrix, 1e-9));
        assert_eq!(p.rank().unwrap(), 1);
        let chi = class_function(&cat, &prod).unwrap();
        assert_eq!(
            multiplicity(&cat, &chi, &"[3]".parse().unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn projectors_are_orthogonal_and_complete() {
        let cat = Catalog::new(GroupKind::Wreath(2)).unwrap();
        let a = cat.irrep(4).unwrap();
        let rep = a.rep.tensor(&a.rep).unwrap();
        let ps: Vec<CMatrix> = (0..cat.len())
            .map(|i| projector_unchecked(&cat, &rep, i))
            .collect();
        let sum = ps.iter().fold(CMatrix::zeros(4, 4), |acc, p| acc + p);
        assert!(linalg::max_abs_diff(&sum, &linalg::identity(4)) < 1e-12);
        for (i, p) in ps.iter().enumerate() {
            for (j, q) in ps.iter().enumerate() {
                if i != j {
                    assert!((p * q).camax() < 1e-12);
                }
            }
            let chi = class_function(&cat, &rep).unwrap();
            let m = multiplicity(&cat, &chi, &cat.labels()[i]).unwrap();
            let tr = linalg::trace(p).re;
            assert!((tr - (m as usize * cat.dimension(i)) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_characters_have_norm_one() {
        let cat = Catalog::new(GroupKind::Wreath(3)).unwrap();
        for (i, l) in cat.labels().iter().enumerate() {
            let row = &cat.table().values[i];
            assert_eq!(multiplicity(&cat, row, l).unwrap(), 1);
        }
    }
}
