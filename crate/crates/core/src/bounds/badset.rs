use num_rational::Ratio;
use serde::Serialize;

use crate::format::ser_sig12;
use crate::group::ConjugacyClass;
use crate::rep::{Catalog, IrrepLabel, WreathIrrepLabel};
use crate::{Error, Result};

/// How the bad set `Λ` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadSetRule {
    /// Diagonal labels `(ρ, ±)` whose `S_n` irrep satisfies `d_ρ⁵ < nⁿ`.
    Cutoff,
    Explicit(Vec<IrrepLabel>),
    /// `Λ = ∅`: `λ` is the maximum over every irrep.
    Empty,
    /// Every irrep; `λ` is the empty maximum, taken as 0.
    All,
}

impl BadSetRule {
    pub fn name(&self) -> &'static str {
        match self {
            BadSetRule::Cutoff => "cutoff",
            BadSetRule::Explicit(_) => "explicit",
            BadSetRule::Empty => "empty",
            BadSetRule::All => "all",
        }
    }
}

/// `Λ` together with `λ = max_{σ∉Λ} |χ_σ(M)|/d_σ` and `P(Λ) = Σ_{σ∈Λ} d_σ²/|G|`.
#[derive(Clone, Debug, PartialEq)]
pub struct BadSet {
    pub rule: BadSetRule,
    pub members: Vec<bool>,
    pub labels: Vec<IrrepLabel>,
    pub lambda: Ratio<i64>,
    pub plancherel_mass: Ratio<u64>,
    /// `Λ` covers every irrep and `λ` is the empty maximum.
    pub empty_max: bool,
}

/// `d⁵ < nⁿ`, in integers.
pub fn below_cutoff(d: u64, n: usize) -> bool {
    let lhs = (d as u128).checked_pow(5);
    let rhs = (n as u128).checked_pow(n as u32);
    match (lhs, rhs) {
        (Some(l), Some(r)) => l < r,
        (None, _) => false,
        (Some(_), None) => true,
    }
}

pub fn build_bad_set(
    catalog: &Catalog,
    class: &ConjugacyClass,
    rule: BadSetRule,
) -> Result<BadSet> {
    if class.kind != catalog.kind() {
        return Err(Error::GroupMismatch(format!(
            "class of {} with {}",
            class.kind,
            catalog.kind()
        )));
    }
    let n = catalog.kind().degree();
    let labels = catalog.labels();
    let members: Vec<bool> = match &rule {
        BadSetRule::Cutoff => labels
            .iter()
            .map(|l| match l {
                IrrepLabel::Wreath(WreathIrrepLabel::Diagonal(p, _)) => {
                    below_cutoff(p.dimension(), n)
                }
                IrrepLabel::Wreath(_) => false,
                IrrepLabel::Sym(p) => below_cutoff(p.dimension(), n),
            })
            .collect(),
        BadSetRule::Explicit(chosen) => {
            let mut m = vec![false; labels.len()];
            for l in chosen {
                m[catalog.position(l)?] = true;
            }
            m
        }
        BadSetRule::Empty => vec![false; labels.len()],
        BadSetRule::All => vec![true; labels.len()],
    };
    let order = catalog.group().order() as u64;
    let mut lambda = Ratio::from_integer(0i64);
    let mut mass = Ratio::from_integer(0u64);
    for (i, &bad) in members.iter().enumerate() {
        let d = catalog.dimension(i) as i64;
        if bad {
            mass += Ratio::new((d * d) as u64, order);
        } else {
            let v = Ratio::new(catalog.table().value(i, class.representative).abs(), d);
            if v > lambda {
                lambda = v;
            }
        }
    }
    Ok(BadSet {
        labels: labels
            .iter()
            .zip(&members)
            .filter(|(_, &b)| b)
            .map(|(l, _)| l.clone())
            .collect(),
        empty_max: members.iter().all(|&b| b),
        rule,
        members,
        lambda,
        plancherel_mass: mass,
    })
}

impl BadSet {
    pub fn lambda_f64(&self) -> f64 {
        *self.lambda.numer() as f64 / *self.lambda.denom() as f64
    }

    pub fn mass_f64(&self) -> f64 {
        *self.plancherel_mass.numer() as f64 / *self.plancherel_mass.denom() as f64
    }

    /// `λ ≤ n^{−n/5}`, checked as `λ⁵ · nⁿ ≤ 1` in integers.
    pub fn cutoff_holds(&self, n: usize) -> bool {
        let num = (*self.lambda.numer() as u128).pow(5);
        let den = (*self.lambda.denom() as u128).pow(5);
        match (n as u128)
            .checked_pow(n as u32)
            .and_then(|p| num.checked_mul(p))
        {
            Some(lhs) => lhs <= den,
            None => num == 0,
        }
    }

    pub fn summary(&self, n: usize) -> BadSetSummary {
        BadSetSummary {
            rule: self.rule.name().into(),
            labels: self.labels.iter().map(|l| l.to_string()).collect(),
            lambda: self.lambda_f64(),
            lambda_exact: self.lambda.to_string(),
            plancherel_mass: self.mass_f64(),
            plancherel_mass_exact: self.plancherel_mass.to_string(),
            empty_max: self.empty_max,
            cutoff_value: (n as f64).powf(-(n as f64) / 5.0),
            cutoff_holds: self.cutoff_holds(n),
        }
    }
}

/// Serializable view of a [`BadSet`].
#[derive(Clone, Debug, Serialize)]
pub struct BadSetSummary {
    pub rule: String,
    pub labels: Vec<String>,
    #[serde(serialize_with = "ser_sig12")]
    pub lambda: f64,
    pub lambda_exact: String,
    #[serde(serialize_with = "ser_sig12")]
    pub plancherel_mass: f64,
    pub plancherel_mass_exact: String,
    pub empty_max: bool,
    /// `n^{−n/5}`.
    #[serde(serialize_with = "ser_sig12")]
    pub cutoff_value: f64,
    pub cutoff_holds: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupKind;

    fn setup(n: usize) -> (Catalog, ConjugacyClass) {
        let cat = Catalog::new(GroupKind::Wreath(n)).unwrap();
        let m = cat.group().involution_class().unwrap();
        (cat, m)
    }

    #[test]
    fn wreath2_rules() {
        let (cat, m) = setup(2);
        let cut = build_bad_set(&cat, &m, BadSetRule::Cutoff).unwrap();
        assert_eq!(cut.labels.len(), 4);
        assert_eq!(cut.lambda, Ratio::from_integer(0));
        assert_eq!(cut.plancherel_mass, Ratio::new(1, 2));
        assert!(cut.cutoff_holds(2));

        let empty = build_bad_set(&cat, &m, BadSetRule::Empty).unwrap();
        assert_eq!(empty.lambda, Ratio::from_integer(1));
        assert_eq!(empty.plancherel_mass, Ratio::from_integer(0));

        let all = build_bad_set(&cat, &m, BadSetRule::All).unwrap();
        assert!(all.empty_max);
        assert_eq!(all.lambda, Ratio::from_integer(0));
        assert_eq!(all.plancherel_mass, Ratio::from_integer(1));
    }

    #[test]
    fn cutoff_values() {
        // n = 3: only the one-dimensional diagonals enter Λ; [2,1] diagonals
        // have |χ(M)|/d = 2/4
        let (cat, m) = setup(3);
        let b = build_bad_set(&cat, &m, BadSetRule::Cutoff).unwrap();
        assert_eq!(b.labels.len(), 4);
        assert_eq!(b.lambda, Ratio::new(1, 2));
        assert_eq!(b.plancherel_mass, Ratio::new(4, 72));
        assert!(b.cutoff_holds(3));
        // n = 4: every S_4 dimension d ≤ 3 has d⁵ ≤ 243 < 256
        let (cat, m) = setup(4);
        let b = build_bad_set(&cat, &m, BadSetRule::Cutoff).unwrap();
        assert_eq!(b.labels.len(), 10);
        assert_eq!(b.lambda, Ratio::from_integer(0));
        assert!(b.cutoff_holds(4));
    }

    #[test]
    fn explicit_rule() {
        let (cat, m) = setup(2);
        let l: IrrepLabel = "([2],+)".parse().unwrap();
        let b = build_bad_set(&cat, &m, BadSetRule::Explicit(vec![l])).unwrap();
        assert_eq!(b.lambda, Ratio::from_integer(1));
        assert_eq!(b.plancherel_mass, Ratio::new(1, 8));
        let bogus: IrrepLabel = "[2]".parse().unwrap();
        assert!(build_bad_set(&cat, &m, BadSetRule::Explicit(vec![bogus])).is_err());
    }

    #[test]
    fn cutoff_threshold() {
        assert!(below_cutoff(1, 2));
        assert!(!below_cutoff(2, 3));
        assert!(below_cutoff(3, 4));
        assert!(!below_cutoff(4, 4));
    }
}
