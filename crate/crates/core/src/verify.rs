//! Formula-versus-oracle comparison.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Nat;
use crate::groups::{group_order, Family, GroupSpec, NormalizedSpec};
use crate::matgrp::{
    derived_subgroup, element_orders, enumerate_group, exponent_bound, is_projective, projective_canonical,
    sample_orders, standard_generators, Realization, SampleOptions,
};
use crate::spectrum::{mu, mu_of, omega_generators};

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Auto,
            cap: DEFAULT_CAP,
            samples: 10_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Contained,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderCount {
    pub order: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Observed orders dividing no formula generator.
    pub unexplained_orders: Vec<String>,
    /// Formula maxima never observed (exhaustive mode only).
    pub unrealized_orders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub group: String,
    /// The group the oracle built.
    pub oracle_group: String,
    pub mode: &'static str,
    pub group_size: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_max_orders: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_order_histogram: Option<Vec<OrderCount>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<usize>,
    pub formula_mu: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

fn strings(v: &[Nat]) -> Vec<String> {
    v.iter().map(Nat::to_string).collect()
}

/// The queried group if the oracle can build it, else the engine's group.
pub fn oracle_spec(ns: &NormalizedSpec) -> Result<GroupSpec> {
    match standard_generators(&ns.original) {
        Ok(_) => Ok(ns.original),
        Err(Error::UnsupportedGroup(_)) => {
            standard_generators(&ns.spec)?;
            Ok(ns.spec)
        }
        Err(e) => Err(e),
    }
}

fn so_of(spec: &GroupSpec) -> Option<GroupSpec> {
    let family = match spec.family {
        Family::OmegaOddDim => Family::SoOddDim,
        Family::OmegaEvenDim | Family::POmegaEvenDim => Family::SoEvenDim,
        _ => return None,
    };
    (spec.p != 2).then_some(GroupSpec { family, ..*spec })
}

/// Size of the group (classes modulo ±I for projective families) and one order per element.
pub fn exhaustive_orders(spec: &GroupSpec, cap: usize) -> Result<(usize, Vec<Nat>)> {
    let ambient_cap = cap.saturating_mul(4);
    let (real, elements) = match so_of(spec) {
        Some(so) => {
            // Ω as the derived subgroup of the enumerated SO
            let real = standard_generators(&so)?;
            let all = enumerate_group(&real.field, real.form.dim(), &real.gens, ambient_cap)?;
            let om = derived_subgroup(&real.field, &all, ambient_cap)?;
            (real, om.elements)
        }
        None => {
            let real: Realization = standard_generators(spec)?;
            let c = if is_projective(spec) { ambient_cap } else { cap };
            let all = enumerate_group(&real.field, real.form.dim(), &real.gens, c)?;
            (real, all.elements)
        }
    };
    let k = &real.field;
    let proj = is_projective(spec);
    let size = if proj {
        elements
            .iter()
            .map(|m| projective_canonical(k, m))
            .collect::<HashSet<_>>()
            .len()
    } else {
        elements.len()
    };
    if size > cap {
        return Err(Error::CapExceeded { cap });
    }
    let orders = element_orders(k, &elements, &exponent_bound(spec)?, proj)?;
    Ok((size, orders))
}

pub fn verify(ns: &NormalizedSpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    let spec = oracle_spec(ns)?;
    let formula = mu(&omega_generators(ns)?).values;
    let divides_formula = |o: &Nat| formula.iter().any(|f| (f % o).is_zero());
    let exhaustive = match opts.mode {
        Mode::Exhaustive => true,
        Mode::Sample => false,
        Mode::Auto => group_order(&spec)? <= Nat::from(opts.cap),
    };
    let base = VerifyReport {
        group: ns.original.to_string(),
        oracle_group: spec.to_string(),
        mode: if exhaustive { "exhaustive" } else { "sample" },
        group_size: group_order(&spec)?.to_string(),
        observed_max_orders: None,
        sampled_order_histogram: None,
        rejected: None,
        formula_mu: strings(&formula),
        verdict: Verdict::Equal,
        violation: None,
    };
    if exhaustive {
        let (size, orders) = exhaustive_orders(&spec, opts.cap)?;
        let observed = mu_of(&orders).values;
        let unexplained: Vec<Nat> = observed.iter().filter(|o| !divides_formula(o)).cloned().collect();
        let unrealized: Vec<Nat> = formula.iter().filter(|f| !observed.contains(f)).cloned().collect();
        let ok = unexplained.is_empty() && unrealized.is_empty();
        return Ok(VerifyReport {
            group_size: size.to_string(),
            observed_max_orders: Some(strings(&observed)),
            verdict: if ok { Verdict::Equal } else { Verdict::Violation },
            violation: (!ok).then(|| Violation {
                unexplained_orders: strings(&unexplained),
                unrealized_orders: strings(&unrealized),
            }),
            ..base
        });
    }
    let res = sample_orders(&spec, &SampleOptions::new(opts.samples, opts.seed))?;
    let mut hist: BTreeMap<Nat, usize> = BTreeMap::new();
    for o in &res.orders {
        *hist.entry(o.clone()).or_default() += 1;
    }
    let unexplained: Vec<Nat> = hist.keys().filter(|o| !divides_formula(o)).cloned().collect();
    let ok = unexplained.is_empty();
    Ok(VerifyReport {
        sampled_order_histogram: Some(
            hist.into_iter()
                .map(|(o, count)| OrderCount {
                    order: o.to_string(),
                    count,
                })
                .collect(),
        ),
        rejected: Some(res.rejected),
        verdict: if ok { Verdict::Contained } else { Verdict::Violation },
        violation: (!ok).then(|| Violation {
            unexplained_orders: strings(&unexplained),
            unrealized_orders: Vec::new(),
        }),
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{normalize, Epsilon};

    fn ns(f: Family, n: u32, q: u64, e: Epsilon) -> NormalizedSpec {
        normalize(&GroupSpec::new(f, n, q, e).unwrap()).unwrap()
    }

    #[test]
    fn sp4_2_exhaustive() {
        let r = verify(&ns(Family::Sp, 2, 2, Epsilon::None), &VerifyOptions::default()).unwrap();
        assert_eq!(r.mode, "exhaustive");
        assert_eq!(r.group_size, "720");
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.observed_max_orders.unwrap(), vec!["4", "5", "6"]);
    }

    #[test]
    fn sampling_is_contained() {
        let opts = VerifyOptions {
            mode: Mode::Sample,
            samples: 300,
            ..Default::default()
        };
        let r = verify(&ns(Family::OmegaOddDim, 3, 3, Epsilon::None), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Contained);
        let total: usize = r.sampled_order_histogram.unwrap().iter().map(|c| c.count).sum();
        assert_eq!(total, 300);
    }

    #[test]
    fn forced_exhaustive_respects_cap() {
        let opts = VerifyOptions {
            mode: Mode::Exhaustive,
            cap: 1000,
            ..Default::default()
        };
        let r = verify(&ns(Family::Sp, 3, 3, Epsilon::None), &opts);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn omega_via_derived_subgroup() {
        let (size, _) = exhaustive_orders(
            &GroupSpec::new(Family::OmegaEvenDim, 2, 3, Epsilon::Minus).unwrap(),
            1000,
        )
        .unwrap();
        assert_eq!(size, 360);
    }
}
