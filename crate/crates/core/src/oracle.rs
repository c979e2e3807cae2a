//! Brute-force reference computations.
//!
//! Nothing here touches character tables or isotypic projectors. Element
//! matrices are rebuilt by multiplying generator matrices along a word for
//! the element, and averages run directly over the members of a class.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::format::sig12;
use crate::group::{ConjugacyClass, Element, FiniteGroup, GroupKind, WreathElement};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::rep::{generator_matrices, MatrixRep, Partition};
use crate::sampling::{RegisterTuple, SamplingDistribution};
use crate::{Error, Result};

/// Positions in [`FiniteGroup::generators`] whose product is `g`.
pub fn generator_word(group: &FiniteGroup, g: usize) -> Vec<usize> {
    match group.element(g) {
        Element::Perm(p) => p.adjacent_word(),
        Element::Wreath(w) => {
            let s = group.degree().saturating_sub(1);
            let mut word = w.alpha.adjacent_word();
            word.push(s);
            word.extend(w.beta.adjacent_word());
            word.push(s);
            if w.flip {
                word.push(s);
            }
            word
        }
    }
}

/// Evaluates a generator word with group multiplication.
pub fn evaluate_word(group: &FiniteGroup, word: &[usize]) -> usize {
    word.iter().fold(group.identity(), |acc, &w| {
        group.mul(acc, group.generators()[w])
    })
}

/// `ρ(g)` as the product of generator matrices along [`generator_word`].
pub fn matrix_by_word(group: &FiniteGroup, generators: &[CMatrix], g: usize) -> CMatrix {
    let d = generators.first().map_or(1, |m| m.nrows());
    generator_word(group, g)
        .iter()
        .fold(linalg::identity(d), |acc, &w| acc * &generators[w])
}

/// Generator images of a matrix representation.
pub fn generator_images(group: &FiniteGroup, rep: &MatrixRep) -> Vec<CMatrix> {
    group
        .generators()
        .iter()
        .map(|&s| rep.matrix(s).clone())
        .collect()
}

/// `(1/|M|) Σ_{m∈M} ⟨b, ρ(m) b⟩`.
pub fn brute_expectation_overlap(
    group: &FiniteGroup,
    rep: &MatrixRep,
    b: &CVector,
    class: &ConjugacyClass,
) -> C64 {
    let gens = generator_images(group, rep);
    let terms: Vec<C64> = class
        .members
        .par_iter()
        .map(|&m| linalg::inner(b, &(matrix_by_word(group, &gens, m) * b)))
        .collect();
    linalg::ksum_c(terms) / class.size() as f64
}

/// `(1/|M|) Σ_{m∈M} |⟨b, ρ(m) b⟩|²`.
pub fn brute_second_moment(
    group: &FiniteGroup,
    rep: &MatrixRep,
    b: &CVector,
    class: &ConjugacyClass,
) -> f64 {
    let gens = generator_images(group, rep);
    let terms: Vec<f64> = class
        .members
        .par_iter()
        .map(|&m| linalg::inner(b, &(matrix_by_word(group, &gens, m) * b)).norm_sqr())
        .collect();
    linalg::ksum(terms) / class.size() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance of `‖Π_m^{⊗k} b‖²` over `m ∈ M`, with the dense
/// projector `⊗_i (1 + ρ_i(m))/2`.
pub fn brute_multiregister_moments(
    group: &FiniteGroup,
    tuple: &RegisterTuple,
    b: &CVector,
    class: &ConjugacyClass,
) -> Moments {
    let gens: Vec<Vec<CMatrix>> = tuple
        .irreps()
        .iter()
        .map(|r| generator_images(group, &r.rep))
        .collect();
    let values: Vec<f64> = class
        .members
        .par_iter()
        .map(|&m| {
            let factors: Vec<CMatrix> = gens
                .iter()
                .map(|g| {
                    let rm = matrix_by_word(group, g, m);
                    (linalg::identity(rm.nrows()) + rm) * linalg::c(0.5)
                })
                .collect();
            let projector = linalg::kron_all(&factors);
            linalg::norm_sqr(&(projector * b))
        })
        .collect();
    let count = values.len() as f64;
    let mean = linalg::ksum(values.iter().copied()) / count;
    let variance = linalg::ksum(values.iter().map(|v| (v - mean) * (v - mean))) / count;
    Moments { mean, variance }
}

/// `Ind_{S_n × S_n}^{K} (ρ ⊠ σ)` with coset representatives `c₀ = e`,
/// `c₁ = s`: block `(i, j)` of the image of `g` is `(ρ ⊠ σ)(c_i⁻¹ g c_j)`
/// when that element lies in `S_n × S_n`, and zero otherwise.
pub fn brute_induced_rep(n: usize, rho: &Partition, sigma: &Partition) -> Result<MatrixRep> {
    if rho.n() != n || sigma.n() != n {
        return Err(Error::GroupMismatch(format!(
            "{rho} and {sigma} for n = {n}"
        )));
    }
    if n > 3 {
        return Err(Error::OutOfRange(format!(
            "induction oracle runs for n ≤ 3, got {n}"
        )));
    }
    let k = FiniteGroup::wreath(n)?;
    let sym = FiniteGroup::symmetric(n)?;
    let r_gens: Vec<CMatrix> = generator_matrices(rho)
        .iter()
        .map(linalg::real_matrix)
        .collect();
    let s_gens: Vec<CMatrix> = generator_matrices(sigma)
        .iter()
        .map(linalg::real_matrix)
        .collect();
    let (dr, ds) = (rho.dimension() as usize, sigma.dimension() as usize);
    let sym_matrix = |gens: &[CMatrix], d: usize, p: &crate::group::Permutation| {
        let idx = sym
            .index_of(&Element::Perm(p.clone()))
            .expect("degree matches");
        if gens.is_empty() {
            linalg::identity(d)
        } else {
            matrix_by_word(&sym, gens, idx)
        }
    };
    let cosets = [
        Element::Wreath(WreathElement::identity(n)),
        Element::Wreath(WreathElement::swap(n)),
    ];
    let w = dr * ds;
    let matrices = k
        .elements()
        .iter()
        .map(|g| {
            let mut m = CMatrix::zeros(2 * w, 2 * w);
            for (i, ci) in cosets.iter().enumerate() {
                for (j, cj) in cosets.iter().enumerate() {
                    let h = crate::group::multiply(&ci.inverse(), &crate::group::multiply(g, cj)?)?;
                    let h = h.as_wreath().expect("wreath element");
                    if !h.flip {
                        let block = sym_matrix(&r_gens, dr, &h.alpha)
                            .kronecker(&sym_matrix(&s_gens, ds, &h.beta));
                        m.view_mut((i * w, j * w), (w, w)).copy_from(&block);
                    }
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixRep::from_matrices(
        GroupKind::Wreath(n),
        2 * w,
        matrices,
    ))
}

/// `Σ_x |p(x) − q(x)|` over matching outcome labels.
pub fn exact_tv(p: &SamplingDistribution, q: &SamplingDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::OutcomeMismatch(format!(
            "{} outcomes against {}",
            p.len(),
            q.len()
        )));
    }
    let q_map: HashMap<&str, f64> = q
        .outcomes
        .iter()
        .map(|o| (o.label.as_str(), o.probability))
        .collect();
    let mut diffs = Vec::with_capacity(p.len());
    for o in &p.outcomes {
        let other = q_map
            .get(o.label.as_str())
            .ok_or_else(|| Error::OutcomeMismatch(format!("outcome {} missing", o.label)))?;
        diffs.push((o.probability - other).abs());
    }
    Ok(linalg::ksum(diffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// `|formula − oracle| ≤ tol`.
    Equal,
    /// `oracle ≤ formula + tol`: the formula value is an upper bound.
    Bound,
    /// Decided in exact arithmetic.
    Exact,
}

/// One formula-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub quantity: String,
    pub configuration: String,
    pub comparison: Comparison,
    pub formula: f64,
    pub oracle: f64,
    pub diff: f64,
    pub pass: bool,
}

impl OracleResult {
    pub fn equal(
        quantity: impl Into<String>,
        configuration: impl Into<String>,
        formula: f64,
        oracle: f64,
        tol: f64,
    ) -> Self {
        let diff = (formula - oracle).abs();
        Self {
            quantity: quantity.into(),
            configuration: configuration.into(),
            comparison: Comparison::Equal,
            formula,
            oracle,
            diff,
            pass: diff <= tol,
        }
    }

    pub fn bound(
        quantity: impl Into<String>,
        configuration: impl Into<String>,
        bound: f64,
        value: f64,
        tol: f64,
    ) -> Self {
        let diff = bound - value;
        Self {
            quantity: quantity.into(),
            configuration: configuration.into(),
            comparison: Comparison::Bound,
            formula: bound,
            oracle: value,
            diff,
            pass: value <= bound + tol,
        }
    }

    /// An identity decided exactly (integers or rationals); the values are
    /// reported for reference only.
    pub fn exact(
        quantity: impl Into<String>,
        configuration: impl Into<String>,
        formula: f64,
        oracle: f64,
        pass: bool,
    ) -> Self {
        Self {
            quantity: quantity.into(),
            configuration: configuration.into(),
            comparison: Comparison::Exact,
            formula,
            oracle,
            diff: (formula - oracle).abs(),
            pass,
        }
    }
}

impl Serialize for OracleResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OracleResult", 7)?;
        st.serialize_field("quantity", &self.quantity)?;
        st.serialize_field("configuration", &self.configuration)?;
        st.serialize_field("comparison", &self.comparison)?;
        st.serialize_field("formula", &sig12(self.formula))?;
        st.serialize_field("oracle", &sig12(self.oracle))?;
        st.serialize_field("diff", &sig12(self.diff))?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{partitions, wreath_character, Catalog};
    use crate::sampling::{uniform, Context, Outcome};

    #[test]
    fn words_evaluate_to_their_elements() {
        for kind in [
            GroupKind::Symmetric(4),
            GroupKind::Wreath(1),
            GroupKind::Wreath(3),
        ] {
            let g = FiniteGroup::new(kind).unwrap();
            for x in 0..g.order() {
                assert_eq!(evaluate_word(&g, &generator_word(&g, x)), x, "{kind}");
            }
        }
    }

    #[test]
    fn word_matrices_agree_with_tables() {
        let cat = Catalog::new(GroupKind::Wreath(2)).unwrap();
        for i in 0..cat.len() {
            let irrep = cat.irrep(i).unwrap();
            let gens = generator_images(cat.group(), &irrep.rep);
            for g in 0..cat.group().order() {
                let m = matrix_by_word(cat.group(), &gens, g);
                assert!(linalg::max_abs_diff(&m, irrep.matrix(g)) < 1e-12);
            }
        }
    }

    #[test]
    fn induced_traces_match_characters() {
        for n in 2..=3 {
            let k = FiniteGroup::wreath(n).unwrap();
            let parts = partitions(n).unwrap();
            for a in &parts {
                for b in &parts {
                    let rep = brute_induced_rep(n, a, b).unwrap();
                    assert_eq!(rep.dim() as u64, 2 * a.dimension() * b.dimension());
                    rep.check_homomorphism(&k, 1e-9).unwrap();
                    if a != b {
                        let label =
                            crate::rep::WreathIrrepLabel::pair(a.clone(), b.clone()).unwrap();
                        for (g, tr) in rep.traces().iter().enumerate() {
                            let w = k.element(g).as_wreath().unwrap();
                            let chi = wreath_character(&label, w).unwrap() as f64;
                            assert!((tr.re - chi).abs() < 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_rep_moments() {
        let cat = Catalog::new(GroupKind::Wreath(2)).unwrap();
        let m = cat.group().involution_class().unwrap();
        let triv = cat.irrep(0).unwrap();
        let b = CVector::from_element(1, linalg::ONE);
        let e = brute_expectation_overlap(cat.group(), &triv.rep, &b, &m);
        assert!((e - linalg::ONE).norm() < 1e-15);
        assert!((brute_second_moment(cat.group(), &triv.rep, &b, &m) - 1.0).abs() < 1e-15);
        let t = RegisterTuple::new(&cat, &[0, 0], 16).unwrap();
        let mo = brute_multiregister_moments(cat.group(), &t, &b, &m);
        assert_eq!(
            mo,
            Moments {
                mean: 1.0,
                variance: 0.0
            }
        );
    }

    #[test]
    fn second_moment_two_one_transpositions() {
        let cat = Catalog::new(GroupKind::Symmetric(3)).unwrap();
        let class = cat.group().class_of(cat.group().generators()[0]);
        let rho = cat.irrep_by_label(&"[2,1]".parse().unwrap()).unwrap();
        let b = CVector::from_vec(vec![linalg::ONE, linalg::ZERO]);
        // (01) fixes e₀; the other two transpositions give overlaps −1/2
        let v = brute_second_moment(cat.group(), &rho.rep, &b, &class);
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn tv_examples() {
        let mut p = uniform(2);
        p.outcomes[0].probability = 1.0;
        p.outcomes[1].probability = 0.0;
        assert!((exact_tv(&p, &uniform(2)).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(exact_tv(&uniform(3), &uniform(3)).unwrap(), 0.0);
        assert!(matches!(
            exact_tv(&uniform(3), &uniform(2)),
            Err(Error::OutcomeMismatch(_))
        ));
        let mut renamed = uniform(2);
        renamed.outcomes[1] = Outcome {
            label: "other".into(),
            probability: 0.5,
            exact: None,
        };
        renamed.context = Context::Strong;
        assert!(exact_tv(&uniform(2), &renamed).is_err());
    }
}
