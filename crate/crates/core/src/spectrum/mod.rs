//! Spectra as generator lists, maximal-order antichains and membership.

mod engines;
mod nu;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{divisors, factor_nat, merge_max, nat, Factorization, Nat, SignedPartitionPair};
use crate::groups::{Engine, Epsilon, NormalizedSpec};

pub use nu::nu_composite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LieType {
    B,
    C,
    D,
}

/// Smallest power of `p` exceeding the largest root height of the given type.
pub fn max_unipotent_order(lie: LieType, rank: u32, p: u64) -> Result<Nat> {
    if rank == 0 || (lie == LieType::D && rank < 2) {
        return Err(Error::InvalidArgument(format!("rank {rank} for type {lie:?}")));
    }
    let h = match lie {
        LieType::B | LieType::C => 2 * rank as u64 - 1,
        LieType::D => 2 * rank as u64 - 3,
    };
    let mut pk = nat(p);
    while pk <= nat(h) {
        pk *= p;
    }
    Ok(pk)
}

/// Regular unipotent element of a classical subgroup of rank `rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct UnipotentBlock {
    pub lie: LieType,
    pub rank: u32,
    /// Its order is p^k.
    pub k: u32,
    /// Form type of a D block; `None` for B and C.
    pub epsilon: Epsilon,
}

/// A scalar times a regular unipotent in GL_m(q^e) or GU_m(q^e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinearBlock {
    Gl { m: u32, e: u32 },
    Gu { m: u32, e: u32 },
}

/// How to realize a generator value as a block-diagonal matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Recipe {
    pub unipotent: Option<UnipotentBlock>,
    pub parts: SignedPartitionPair,
    pub linear: Option<LinearBlock>,
    /// The element order (projective for PSp and PΩ) the witness must have.
    pub order: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub value: Nat,
    /// Formula item tag, e.g. `Sp/2 p^k[..]`.
    pub item: &'static str,
    /// Parameters that produced the value, e.g. `k=1 (1|·)`.
    pub detail: String,
    pub recipe: Recipe,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {} {}", self.value, self.item, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorList {
    pub engine: Engine,
    /// Sorted by value, then item tag; duplicates kept.
    pub values: Vec<Generator>,
}

impl GeneratorList {
    pub fn numbers(&self) -> Vec<Nat> {
        self.values.iter().map(|g| g.value.clone()).collect()
    }
}

pub fn omega_generators(ns: &NormalizedSpec) -> Result<GeneratorList> {
    let mut values = engines::generators(ns)?;
    values.sort_by(|a, b| {
        a.value
            .cmp(&b.value)
            .then(a.item.cmp(b.item))
            .then(a.detail.cmp(&b.detail))
    });
    Ok(GeneratorList {
        engine: ns.engine,
        values,
    })
}

/// Divisibility-maximal values, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderAntichain {
    pub values: Vec<Nat>,
}

pub fn mu_of(values: &[Nat]) -> OrderAntichain {
    let mut v: Vec<Nat> = values.to_vec();
    v.sort();
    v.dedup();
    let keep: Vec<Nat> = v
        .iter()
        .filter(|a| !v.iter().any(|b| b != *a && (b % *a).is_zero()))
        .cloned()
        .collect();
    OrderAntichain { values: keep }
}

pub fn mu(gens: &GeneratorList) -> OrderAntichain {
    mu_of(&gens.numbers())
}

pub fn contains(ns: &NormalizedSpec, m: &Nat) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("order 0".into()));
    }
    let gens = omega_generators(ns)?;
    Ok(gens.values.iter().any(|g| (&g.value % m).is_zero()))
}

/// Every element order, ascending; fails once more than `cap` would be listed.
pub fn omega_enumerate(ns: &NormalizedSpec, cap: usize) -> Result<Vec<Nat>> {
    let anti = mu(&omega_generators(ns)?);
    omega_from_antichain(&anti, cap)
}

pub fn omega_from_antichain(anti: &OrderAntichain, cap: usize) -> Result<Vec<Nat>> {
    let mut all = std::collections::BTreeSet::new();
    for v in &anti.values {
        let f = factor_nat(v)?;
        let count: u64 = f.values().map(|&e| e as u64 + 1).product();
        if count as usize > cap {
            return Err(Error::CapExceeded { cap });
        }
        all.extend(divisors(&f));
        if all.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    Ok(all.into_iter().collect())
}

/// lcm of all generator values, as a factorization.
pub fn exponent_factorization(gens: &GeneratorList) -> Result<Factorization> {
    let mut out = Factorization::new();
    for v in &mu(gens).values {
        merge_max(&mut out, &factor_nat(v)?);
    }
    Ok(out)
}

impl Recipe {
    /// Recipe in the `(k, parts, halving)` form: a regular unipotent block of order p^k
    /// in the group's own type (none for k = 0) next to one torus block per part.
    pub fn from_parts(ns: &NormalizedSpec, k: u32, parts: SignedPartitionPair, halving: u64) -> Result<Recipe> {
        let s = &ns.spec;
        let p = s.p;
        let lcm = parts.lcm_value(s.q());
        let pk = nat(p).pow(k);
        let order = pk * lcm;
        if halving == 0 || !(&order % halving).is_zero() {
            return Err(Error::InfeasibleRecipe(format!(
                "halving {halving} does not divide {order}"
            )));
        }
        let order = order / halving;
        let unipotent = if k == 0 {
            None
        } else {
            let (lie, rank) = match ns.engine {
                Engine::Sp | Engine::PSp => (LieType::C, engines::bc_rank(p, k)),
                Engine::SoOdd | Engine::OmegaOdd | Engine::OmegaOddQEven => (LieType::B, engines::bc_rank(p, k)),
                _ => (LieType::D, engines::d_rank(p, k)),
            };
            let epsilon = if lie == LieType::D {
                engines::flip(s.epsilon, parts.plus.len())
            } else {
                Epsilon::None
            };
            Some(UnipotentBlock { lie, rank, k, epsilon })
        };
        Ok(Recipe {
            unipotent,
            parts,
            linear: None,
            order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{normalize, Family, GroupSpec};
    use num_traits::One;

    fn ns(f: Family, n: u32, q: u64, e: Epsilon) -> NormalizedSpec {
        normalize(&GroupSpec::new(f, n, q, e).unwrap()).unwrap()
    }

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().map(|&x| nat(x)).collect()
    }

    #[test]
    fn unipotent_orders() {
        assert_eq!(max_unipotent_order(LieType::C, 2, 3).unwrap(), nat(9));
        assert_eq!(max_unipotent_order(LieType::D, 4, 2).unwrap(), nat(8));
        assert_eq!(max_unipotent_order(LieType::B, 1, 5).unwrap(), nat(5));
        assert!(max_unipotent_order(LieType::D, 1, 3).is_err());
    }

    #[test]
    fn sp43_generators() {
        let g = omega_generators(&ns(Family::Sp, 2, 3, Epsilon::None)).unwrap();
        let mut vals = g.numbers();
        vals.sort();
        // unordered signed pairs give one 4 from (1|1) and one from (·|1,1)
        assert_eq!(vals, nats(&[2, 4, 4, 6, 8, 10, 12, 18]));
        assert_eq!(mu(&g).values, nats(&[8, 10, 12, 18]));
    }

    #[test]
    fn antichains_of_small_groups() {
        let a = |f, n, q, e| mu(&omega_generators(&ns(f, n, q, e)).unwrap()).values;
        assert_eq!(a(Family::PSp, 2, 3, Epsilon::None), nats(&[5, 9, 12]));
        assert_eq!(
            a(Family::OmegaOddDim, 3, 3, Epsilon::None),
            nats(&[8, 12, 13, 14, 15, 18, 20])
        );
        assert_eq!(a(Family::OmegaOddDim, 2, 2, Epsilon::None), nats(&[4, 5, 6]));
        assert_eq!(a(Family::Sp, 2, 2, Epsilon::None), nats(&[4, 5, 6]));
        assert_eq!(a(Family::OmegaOddDim, 2, 3, Epsilon::None), nats(&[5, 9, 12]));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(
            mu_of(&nats(&[8, 10, 2, 4, 4, 6, 12, 18])).values,
            nats(&[8, 10, 12, 18])
        );
        assert_eq!(mu_of(&nats(&[1])).values, nats(&[1]));
        assert_eq!(mu_of(&nats(&[6, 2, 3])).values, nats(&[6]));
    }

    #[test]
    fn contains_examples() {
        let s = ns(Family::Sp, 2, 3, Epsilon::None);
        assert!(contains(&s, &nat(18)).unwrap());
        assert!(contains(&s, &nat(1)).unwrap());
        assert!(!contains(&s, &nat(7)).unwrap());
    }

    #[test]
    fn enumerate_examples() {
        let e = omega_enumerate(&ns(Family::PSp, 2, 3, Epsilon::None), 100).unwrap();
        assert_eq!(e, nats(&[1, 2, 3, 4, 5, 6, 9, 12]));
        let e = omega_enumerate(&ns(Family::Sp, 2, 3, Epsilon::None), 100).unwrap();
        assert_eq!(e, nats(&[1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 18]));
        let e = omega_enumerate(&ns(Family::OmegaOddDim, 3, 3, Epsilon::None), 100).unwrap();
        let want: Vec<u64> = (1..=20)
            .filter(|d| [8, 12, 13, 14, 15, 18, 20].iter().any(|m| m % d == 0))
            .collect();
        assert_eq!(e, nats(&want));
        assert_eq!(
            nats(&want),
            nats(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 15, 18, 20])
        );
        assert!(matches!(
            omega_enumerate(&ns(Family::Sp, 2, 3, Epsilon::None), 5),
            Err(Error::CapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn nu_examples() {
        let v = |f, n, q| {
            let mut x = nu_composite(&ns(f, n, q, Epsilon::None)).unwrap().values;
            x.sort();
            x.dedup();
            x
        };
        assert_eq!(v(Family::Sp, 2, 3), nats(&[6, 12, 18]));
        assert_eq!(v(Family::PSp, 2, 3), nats(&[6, 9, 12]));
        assert!(v(Family::OmegaOddDim, 3, 3).contains(&nat(18)));
    }

    #[test]
    fn provenance_is_nonempty() {
        let g = omega_generators(&ns(Family::OmegaEvenDim, 4, 3, Epsilon::Plus)).unwrap();
        assert!(g.values.iter().all(|x| !x.item.is_empty() && !x.value.is_zero()));
        assert!(g.values.iter().all(|x| x.value == x.recipe.order));
        assert!(g.values.iter().any(|x| x.value == nat(36)));
    }

    #[test]
    fn one_is_always_present() {
        let s = ns(Family::OmegaEvenDim, 4, 2, Epsilon::Minus);
        assert!(contains(&s, &Nat::one()).unwrap());
    }
}
