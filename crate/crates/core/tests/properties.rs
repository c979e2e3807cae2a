use std::sync::OnceLock;

use proptest::prelude::*;

use hsplab::group::{FiniteGroup, GroupKind};
use hsplab::linalg::{self, CMatrix};
use hsplab::oracle::{brute_multiregister_moments, exact_tv};
use hsplab::rep::{isotypic_projector, Catalog, DEFAULT_PROJECTOR_CAP};
use hsplab::sampling::{
    claim_projector_average, haar_vector, strong_dist, subgroup_projector, uniform, HiddenSubgroup,
    Interference, MeasurementBasis, RegisterTuple,
};

fn catalog(kind: GroupKind) -> &'static Catalog {
    static S3: OnceLock<Catalog> = OnceLock::new();
    static S4: OnceLock<Catalog> = OnceLock::new();
    static W2: OnceLock<Catalog> = OnceLock::new();
    static W3: OnceLock<Catalog> = OnceLock::new();
    let cell = match kind {
        GroupKind::Symmetric(3) => &S3,
        GroupKind::Symmetric(4) => &S4,
        GroupKind::Wreath(2) => &W2,
        GroupKind::Wreath(3) => &W3,
        _ => panic!("no cached catalog for {kind}"),
    };
    cell.get_or_init(|| Catalog::new(kind).unwrap())
}

fn kinds() -> impl Strategy<Value = GroupKind> {
    prop_oneof![
        Just(GroupKind::Symmetric(3)),
        Just(GroupKind::Symmetric(4)),
        Just(GroupKind::Wreath(2)),
        Just(GroupKind::Wreath(3)),
    ]
}

fn involutions(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).filter(|&x| g.is_involution(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms_on_sampled_triples(kind in kinds(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let g = catalog(kind).group();
        let (a, b, c) = (a % g.order(), b % g.order(), c % g.order());
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(g.inv(a), a), g.identity());
    }

    #[test]
    fn strong_distributions_normalize(kind in kinds(), pick in any::<usize>(), irrep in any::<usize>(), seed in any::<u64>()) {
        let cat = catalog(kind);
        let invs = involutions(cat.group());
        let h = HiddenSubgroup::involution(cat.group(), invs[pick % invs.len()]).unwrap();
        let i = irrep % cat.len();
        if h.exact_rank(cat, i).unwrap() > 0 {
            let rho = cat.irrep(i).unwrap();
            let basis = MeasurementBasis::haar(rho.dim(), seed, &[]);
            let d = strong_dist(cat, &rho, &h, &basis).unwrap();
            prop_assert!(d.check().is_ok());
        }
    }

    /// Ranks and strong distributions do not depend on the unitary model.
    #[test]
    fn unitary_model_invariance(kind in kinds(), pick in any::<usize>(), irrep in any::<usize>(), seed in any::<u64>()) {
        let cat = catalog(kind);
        let invs = involutions(cat.group());
        let m = invs[pick % invs.len()];
        let h = HiddenSubgroup::involution(cat.group(), m).unwrap();
        let i = irrep % cat.len();
        let rho = cat.irrep(i).unwrap();
        let d = rho.dim();
        let u = MeasurementBasis::haar(d, seed, &[1]).matrix().clone();
        let moved = rho.rep.change_basis(&u);
        let p = (linalg::identity(d) + moved.matrix(m)) * linalg::c(0.5);
        prop_assert_eq!(linalg::projector_rank(&p).unwrap(), h.exact_rank(cat, i).unwrap());
        if h.exact_rank(cat, i).unwrap() > 0 {
            let basis = MeasurementBasis::haar(d, seed, &[2]);
            let base = strong_dist(cat, &rho, &h, &basis).unwrap();
            let p_moved = &p * (&u * basis.matrix());
            let rank = linalg::projector_rank(&p).unwrap() as f64;
            for (j, o) in base.outcomes.iter().enumerate() {
                let q = linalg::ksum(p_moved.column(j).iter().map(|z| z.norm_sqr())) / rank;
                prop_assert!((o.probability - q).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn multiregister_moments_match_oracle(kind in kinds(), k in 1usize..=3, seed in any::<u64>(), pick in any::<u64>()) {
        let cat = catalog(kind);
        let k = if matches!(kind, GroupKind::Wreath(3) | GroupKind::Symmetric(4)) { k.min(2) } else { k };
        let class = hsplab::verify::default_class(cat.group()).unwrap();
        let mut rng = hsplab::rng::CounterRng::stream(pick, &[]);
        let idx: Vec<usize> = (0..k).map(|_| rng.below(cat.len() as u64) as usize).collect();
        let t = RegisterTuple::new(cat, &idx, 4096).unwrap();
        let b = haar_vector(t.total_dim(), seed, &[]);
        let inter = Interference::new(cat, &t, &b, &class).unwrap();
        let brute = brute_multiregister_moments(cat.group(), &t, &b, &class);
        prop_assert!((inter.expectation().unwrap() - brute.mean).abs() < 1e-9);
        prop_assert!((inter.exact_variance().unwrap() - brute.variance).abs() < 1e-9);
        prop_assert!(brute.variance <= inter.variance_bound().unwrap() + 1e-9);
        for s in 0..cat.len() {
            prop_assert!(inter.projector_sum(s).unwrap().holds(1e-9));
        }
    }

    #[test]
    fn claim_average_on_direct_sums(kind in kinds(), a in any::<usize>(), b in any::<usize>(), seed in any::<u64>()) {
        let cat = catalog(kind);
        let ra = cat.irrep(a % cat.len()).unwrap();
        let rb = cat.irrep(b % cat.len()).unwrap();
        let rep = ra.rep.direct_sum(&rb.rep).unwrap();
        let v = haar_vector(rep.dim(), seed, &[]);
        let c = claim_projector_average(cat, &rep, &v).unwrap();
        prop_assert!(c.lhs <= c.rhs + 1e-9);
    }

    #[test]
    fn isotypic_projectors_resolve_identity(kind in kinds(), a in any::<usize>(), b in any::<usize>()) {
        let cat = catalog(kind);
        let ra = cat.irrep(a % cat.len()).unwrap();
        let rb = cat.irrep(b % cat.len()).unwrap();
        let rep = ra.rep.tensor(&rb.rep).unwrap();
        let ps: Vec<CMatrix> = cat
            .labels()
            .iter()
            .map(|l| isotypic_projector(cat, &rep, l, DEFAULT_PROJECTOR_CAP).unwrap().matrix)
            .collect();
        let total = ps.iter().fold(CMatrix::zeros(rep.dim(), rep.dim()), |acc, p| acc + p);
        prop_assert!(linalg::max_abs_diff(&total, &linalg::identity(rep.dim())) < 1e-9);
        for (i, p) in ps.iter().enumerate() {
            prop_assert!(linalg::is_projector(p, 1e-9));
            for q in &ps[i + 1..] {
                prop_assert!((p * q).iter().all(|z| z.norm() < 1e-9));
            }
        }
    }

    #[test]
    fn trivial_subgroup_is_uniform(kind in kinds(), irrep in any::<usize>(), seed in any::<u64>()) {
        let cat = catalog(kind);
        let rho = cat.irrep(irrep % cat.len()).unwrap();
        let h = HiddenSubgroup::trivial(kind);
        prop_assert_eq!(subgroup_projector(&rho, &h).unwrap(), linalg::identity(rho.dim()));
        let basis = MeasurementBasis::haar(rho.dim(), seed, &[]);
        let tv = exact_tv(&strong_dist(cat, &rho, &h, &basis).unwrap(), &uniform(rho.dim())).unwrap();
        prop_assert!(tv <= 1e-12);
    }

    #[test]
    fn tv_is_a_metric(seed in any::<u64>(), d in 1usize..8) {
        let make = |path: u64| {
            let mut u = uniform(d);
            let v = haar_vector(d, seed, &[path]);
            for (o, z) in u.outcomes.iter_mut().zip(v.iter()) {
                o.probability = z.norm_sqr();
            }
            u
        };
        let (p, q, r) = (make(0), make(1), make(2));
        let pq = exact_tv(&p, &q).unwrap();
        prop_assert!((0.0..=2.0 + 1e-12).contains(&pq));
        prop_assert!((pq - exact_tv(&q, &p).unwrap()).abs() < 1e-15);
        prop_assert!(pq <= exact_tv(&p, &r).unwrap() + exact_tv(&r, &q).unwrap() + 1e-12);
        prop_assert_eq!(exact_tv(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn sig12_round_trips(x in -1e9f64..1e9) {
        let s = hsplab::format::sig12(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
    }
}

#[test]
fn group_axioms_exhaustive_small() {
    for kind in [
        GroupKind::Symmetric(3),
        GroupKind::Symmetric(4),
        GroupKind::Wreath(2),
    ] {
        let g = FiniteGroup::new(kind).unwrap();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(g.inv(a), a), g.identity());
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn class_equation_and_involution_class() {
    for kind in [
        GroupKind::Symmetric(1),
        GroupKind::Symmetric(5),
        GroupKind::Wreath(1),
        GroupKind::Wreath(3),
        GroupKind::Wreath(4),
    ] {
        let g = FiniteGroup::new(kind).unwrap();
        let total: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, g.order(), "{kind}");
        if let GroupKind::Wreath(n) = kind {
            let m = g.involution_class().unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(m.size(), fact);
            for &x in &m.members {
                assert!(g.is_involution(x));
                assert!(g.element(x).as_wreath().unwrap().flip);
            }
        }
    }
}

#[test]
fn hook_dimensions_match_matrices() {
    for kind in [GroupKind::Symmetric(5), GroupKind::Wreath(3)] {
        let cat = Catalog::new(kind).unwrap();
        for i in 0..cat.len() {
            let irrep = cat.irrep(i).unwrap();
            assert_eq!(irrep.dim() as u64, irrep.label.dimension());
            assert_eq!(irrep.dim(), cat.dimension(i));
        }
    }
}
