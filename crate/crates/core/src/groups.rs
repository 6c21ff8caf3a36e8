//! Group queries: validation, normalization to a formula engine, orders.

use std::fmt;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{nat, prime_power, Nat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Sp,
    PSp,
    SoOddDim,
    OmegaOddDim,
    SoEvenDim,
    OmegaEvenDim,
    POmegaEvenDim,
}

impl Family {
    pub fn even_dimensional(self) -> bool {
        matches!(self, Family::SoEvenDim | Family::OmegaEvenDim | Family::POmegaEvenDim)
    }

    /// Command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::PSp => "psp",
            Family::SoOddDim => "so-odd",
            Family::OmegaOddDim => "omega-odd",
            Family::SoEvenDim => "so-even",
            Family::OmegaEvenDim => "omega-even",
            Family::POmegaEvenDim => "pomega",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Family> {
        Some(match s {
            "sp" => Family::Sp,
            "psp" => Family::PSp,
            "so-odd" => Family::SoOddDim,
            "omega-odd" => Family::OmegaOddDim,
            "so-even" => Family::SoEvenDim,
            "omega-even" => Family::OmegaEvenDim,
            "pomega" => Family::POmegaEvenDim,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Epsilon {
    Plus,
    Minus,
    None,
}

impl Epsilon {
    /// +1 or -1; `None` counts as +1.
    pub fn sign(self) -> i32 {
        if self == Epsilon::Minus {
            -1
        } else {
            1
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Epsilon::Plus => "+",
            Epsilon::Minus => "-",
            Epsilon::None => "",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u32,
    pub p: u64,
    pub f: u32,
    pub epsilon: Epsilon,
}

impl GroupSpec {
    /// Builds a spec from a prime power `q`, checking the epsilon convention.
    pub fn new(family: Family, n: u32, q: u64, epsilon: Epsilon) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        let spec = GroupSpec {
            family,
            n,
            p,
            f,
            epsilon,
        };
        spec.check_epsilon()?;
        Ok(spec)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn dim(&self) -> usize {
        let n = self.n as usize;
        match self.family {
            Family::Sp | Family::PSp => 2 * n,
            Family::SoOddDim | Family::OmegaOddDim => 2 * n + 1,
            _ => 2 * n,
        }
    }

    fn check_epsilon(&self) -> Result<()> {
        let even = self.family.even_dimensional();
        match (even, self.epsilon) {
            (true, Epsilon::None) => Err(Error::InvalidEpsilon(format!(
                "{} needs epsilon + or -",
                self.family.cli_name()
            ))),
            (false, Epsilon::Plus | Epsilon::Minus) => Err(Error::InvalidEpsilon(format!(
                "{} takes no epsilon",
                self.family.cli_name()
            ))),
            _ => Ok(()),
        }
    }

    /// `q^n - ε`.
    pub fn q_n_minus_eps(&self) -> Nat {
        let qn = nat(self.q()).pow(self.n);
        if self.epsilon == Epsilon::Minus {
            qn + 1u32
        } else {
            qn - 1u32
        }
    }

    /// `(4, q^n - ε)` for even-dimensional families.
    pub fn gcd4(&self) -> u32 {
        let g = self.q_n_minus_eps().gcd(&nat(4));
        u32::try_from(&g).expect("divides 4")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, d) = match self.family {
            Family::Sp => ("Sp", self.dim()),
            Family::PSp => ("PSp", self.dim()),
            Family::SoOddDim | Family::SoEvenDim => ("SO", self.dim()),
            Family::OmegaOddDim | Family::OmegaEvenDim => ("Omega", self.dim()),
            Family::POmegaEvenDim => ("POmega", self.dim()),
        };
        let eps = match self.epsilon {
            Epsilon::None => String::new(),
            e => format!("^{}", e.symbol()),
        };
        write!(fm, "{name}{eps}_{d}({})", self.q())
    }
}

/// The formula engine answering a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Engine {
    /// Sp_2n(q), q odd.
    Sp,
    /// PSp_2n(q), q odd.
    PSp,
    /// Ω_2n+1(q) ≅ Sp_2n(q), q even.
    OmegaOddQEven,
    /// SO_2n+1(q), q odd.
    SoOdd,
    /// Ω_2n+1(q), q odd.
    OmegaOdd,
    /// SO^ε_2n(q), q odd.
    SoEven,
    /// Ω^ε_2n(q), q even.
    OmegaEvenQEven,
    /// Ω^ε_2n(q), q odd.
    OmegaEven,
    /// PΩ^ε_2n(q), q odd with (4, q^n - ε) = 4.
    POmegaEven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedSpec {
    pub engine: Engine,
    /// The group the engine evaluates.
    pub spec: GroupSpec,
    /// The group as queried.
    pub original: GroupSpec,
    pub notes: Vec<String>,
}

fn below_range(spec: &GroupSpec, min: u32, what: &str) -> Error {
    Error::UnsupportedGroup(format!("{spec}: {what} are covered for n >= {min}, got n = {}", spec.n))
}

pub fn normalize(spec: &GroupSpec) -> Result<NormalizedSpec> {
    spec.check_epsilon()?;
    if spec.n == 0 {
        return Err(Error::UnsupportedGroup(format!("{spec}: n must be positive")));
    }
    let original = *spec;
    let mut notes = Vec::new();
    let q_even = spec.p == 2;
    let mut s = *spec;
    let engine = match (spec.family, q_even) {
        (Family::Sp | Family::PSp | Family::SoOddDim | Family::OmegaOddDim, true) => {
            if spec.family != Family::OmegaOddDim {
                notes.push(format!(
                    "char-2 isomorphism: {spec} is evaluated as Omega_{}({})",
                    2 * spec.n + 1,
                    spec.q()
                ));
            }
            s.family = Family::OmegaOddDim;
            if s.n < 2 {
                return Err(below_range(spec, 2, "odd-dimensional groups in characteristic 2"));
            }
            Engine::OmegaOddQEven
        }
        (Family::OmegaOddDim, false) if spec.n == 2 => {
            notes.push(format!("Omega_5({q}) is isomorphic to PSp_4({q})", q = spec.q()));
            s.family = Family::PSp;
            Engine::PSp
        }
        (Family::Sp, false) => Engine::Sp,
        (Family::PSp, false) => Engine::PSp,
        (Family::SoOddDim, false) => Engine::SoOdd,
        (Family::OmegaOddDim, false) => Engine::OmegaOdd,
        (Family::SoEvenDim, false) => Engine::SoEven,
        (Family::SoEvenDim, true) => {
            return Err(Error::UnsupportedGroup(format!(
                "{spec}: SO^eps_2n(q) for even q is not covered; query omega-even"
            )))
        }
        (Family::OmegaEvenDim, true) => Engine::OmegaEvenQEven,
        (Family::OmegaEvenDim, false) => Engine::OmegaEven,
        (Family::POmegaEvenDim, true) => {
            notes.push(format!("{spec}: the center is trivial for even q, evaluated as Omega"));
            s.family = Family::OmegaEvenDim;
            Engine::OmegaEvenQEven
        }
        (Family::POmegaEvenDim, false) => {
            if spec.gcd4() == 2 {
                notes.push(format!(
                    "{spec}: (4, q^n - eps) = 2, the center is trivial, evaluated as Omega"
                ));
                s.family = Family::OmegaEvenDim;
                Engine::OmegaEven
            } else {
                Engine::POmegaEven
            }
        }
    };
    let min = match engine {
        Engine::Sp | Engine::PSp | Engine::SoOdd | Engine::OmegaOddQEven => 2,
        Engine::OmegaOdd => 3,
        Engine::SoEven | Engine::OmegaEvenQEven | Engine::OmegaEven | Engine::POmegaEven => 4,
    };
    if s.n < min {
        let what = match engine {
            Engine::Sp | Engine::PSp => "symplectic groups",
            Engine::SoOdd | Engine::OmegaOdd | Engine::OmegaOddQEven => "odd-dimensional orthogonal groups",
            _ => "even-dimensional orthogonal groups",
        };
        return Err(below_range(spec, min, what));
    }
    if q_even && s.n == 2 && s.q() == 2 {
        notes.push("(n, q) = (2, 2): Sp_4(2) is not simple; formulas evaluated as stated".into());
    }
    Ok(NormalizedSpec {
        engine,
        spec: s,
        original,
        notes,
    })
}

fn sp_order(q: &Nat, n: u32) -> Nat {
    let mut o = q.pow(n * n);
    for i in 1..=n {
        o *= q.pow(2 * i) - 1u32;
    }
    o
}

fn d_order(q: &Nat, n: u32, eps: Epsilon) -> Nat {
    let mut o = q.pow(n * (n - 1));
    o *= if eps == Epsilon::Minus {
        q.pow(n) + 1u32
    } else {
        q.pow(n) - 1u32
    };
    for i in 1..n {
        o *= q.pow(2 * i) - 1u32;
    }
    o
}

/// Order of the finite group named by `spec`.
pub fn group_order(spec: &GroupSpec) -> Result<Nat> {
    spec.check_epsilon()?;
    if spec.n == 0 {
        return Err(Error::UnsupportedGroup(format!("{spec}: n must be positive")));
    }
    let q = nat(spec.q());
    let n = spec.n;
    let odd = spec.p != 2;
    let two = if odd { nat(2) } else { Nat::one() };
    Ok(match spec.family {
        Family::Sp | Family::SoOddDim => sp_order(&q, n),
        Family::PSp | Family::OmegaOddDim => sp_order(&q, n) / &two,
        Family::SoEvenDim => {
            if !odd {
                return Err(Error::UnsupportedGroup(format!(
                    "{spec}: SO for even q is not modelled"
                )));
            }
            d_order(&q, n, spec.epsilon)
        }
        Family::OmegaEvenDim => d_order(&q, n, spec.epsilon) / &two,
        Family::POmegaEvenDim => {
            let z = if odd { nat(spec.gcd4() as u64 / 2) } else { Nat::one() };
            d_order(&q, n, spec.epsilon) / &two / z
        }
    })
}

/// Order of the center of the matrix group.
pub fn center_order(spec: &GroupSpec) -> Result<Nat> {
    spec.check_epsilon()?;
    let odd = spec.p != 2;
    Ok(nat(match spec.family {
        Family::Sp => {
            if odd {
                2
            } else {
                1
            }
        }
        Family::PSp | Family::SoOddDim | Family::OmegaOddDim | Family::POmegaEvenDim => 1,
        Family::SoEvenDim => {
            if !odd {
                return Err(Error::UnsupportedGroup(format!(
                    "{spec}: SO for even q is not modelled"
                )));
            }
            2
        }
        Family::OmegaEvenDim => {
            if odd {
                spec.gcd4() as u64 / 2
            } else {
                1
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn g(family: Family, n: u32, q: u64, e: Epsilon) -> GroupSpec {
        GroupSpec::new(family, n, q, e).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let ns = normalize(&g(Family::Sp, 3, 2, Epsilon::None)).unwrap();
        assert_eq!(ns.engine, Engine::OmegaOddQEven);
        assert!(ns.notes[0].contains("char-2"));
        let ns = normalize(&g(Family::OmegaOddDim, 2, 3, Epsilon::None)).unwrap();
        assert_eq!((ns.engine, ns.spec.family, ns.spec.n), (Engine::PSp, Family::PSp, 2));
        // (4, 3^5 - 1) = (4, 242)
        assert_eq!(242 % 4, 2);
        let ns = normalize(&g(Family::POmegaEvenDim, 5, 3, Epsilon::Plus)).unwrap();
        assert_eq!(ns.engine, Engine::OmegaEven);
        let ns = normalize(&g(Family::POmegaEvenDim, 4, 3, Epsilon::Plus)).unwrap();
        assert_eq!(ns.engine, Engine::POmegaEven);
    }

    #[test]
    fn normalize_rejections() {
        assert!(matches!(
            normalize(&g(Family::Sp, 1, 3, Epsilon::None)),
            Err(Error::UnsupportedGroup(_))
        ));
        assert!(matches!(
            normalize(&g(Family::OmegaOddDim, 1, 3, Epsilon::None)),
            Err(Error::UnsupportedGroup(_))
        ));
        assert!(matches!(
            normalize(&g(Family::OmegaEvenDim, 3, 3, Epsilon::Plus)),
            Err(Error::UnsupportedGroup(_))
        ));
        assert!(matches!(
            normalize(&g(Family::SoEvenDim, 4, 2, Epsilon::Plus)),
            Err(Error::UnsupportedGroup(_))
        ));
        assert!(matches!(
            GroupSpec::new(Family::Sp, 2, 3, Epsilon::Plus),
            Err(Error::InvalidEpsilon(_))
        ));
        assert!(matches!(
            GroupSpec::new(Family::SoEvenDim, 4, 3, Epsilon::None),
            Err(Error::InvalidEpsilon(_))
        ));
        assert!(GroupSpec::new(Family::Sp, 2, 6, Epsilon::None).is_err());
    }

    #[test]
    fn normalize_is_idempotent_and_total() {
        let fams = [
            Family::Sp,
            Family::PSp,
            Family::SoOddDim,
            Family::OmegaOddDim,
            Family::SoEvenDim,
            Family::OmegaEvenDim,
            Family::POmegaEvenDim,
        ];
        for fam in fams {
            for n in 1..8 {
                for q in [2u64, 3, 4, 5, 7, 8, 9] {
                    let eps: &[Epsilon] = if fam.even_dimensional() {
                        &[Epsilon::Plus, Epsilon::Minus]
                    } else {
                        &[Epsilon::None]
                    };
                    for &e in eps {
                        let Ok(ns) = normalize(&g(fam, n, q, e)) else { continue };
                        let again = normalize(&ns.spec).unwrap();
                        assert_eq!(again.engine, ns.engine);
                        assert_eq!(again.spec, ns.spec);
                    }
                }
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&g(Family::Sp, 2, 3, Epsilon::None)).unwrap(), nat(51840));
        assert_eq!(group_order(&g(Family::Sp, 2, 2, Epsilon::None)).unwrap(), nat(720));
        assert_eq!(
            group_order(&g(Family::OmegaOddDim, 2, 3, Epsilon::None)).unwrap(),
            nat(25920)
        );
        assert_eq!(
            group_order(&g(Family::OmegaEvenDim, 2, 3, Epsilon::Plus)).unwrap(),
            nat(288)
        );
        assert_eq!(
            group_order(&g(Family::OmegaEvenDim, 2, 3, Epsilon::Minus)).unwrap(),
            nat(360)
        );
        assert_eq!(
            group_order(&g(Family::OmegaEvenDim, 2, 2, Epsilon::Minus)).unwrap(),
            nat(60)
        );
        assert_eq!(
            group_order(&g(Family::OmegaEvenDim, 3, 2, Epsilon::Minus)).unwrap(),
            nat(25920)
        );
        // PΩ^+_8(2) = PΩ^+_8(q) at q = 2 has order 174182400
        assert_eq!(
            group_order(&g(Family::OmegaEvenDim, 4, 2, Epsilon::Plus)).unwrap(),
            nat(174182400)
        );
        // PΩ^+_8(3) has order 4952179814400
        assert_eq!(
            group_order(&g(Family::POmegaEvenDim, 4, 3, Epsilon::Plus)).unwrap(),
            nat(4952179814400)
        );
    }

    #[test]
    fn centers() {
        assert_eq!(
            center_order(&g(Family::OmegaEvenDim, 4, 3, Epsilon::Plus)).unwrap(),
            nat(2)
        );
        assert_eq!(center_order(&g(Family::Sp, 2, 3, Epsilon::None)).unwrap(), nat(2));
        assert_eq!(center_order(&g(Family::SoOddDim, 2, 3, Epsilon::None)).unwrap(), nat(1));
        assert_eq!(
            center_order(&g(Family::OmegaEvenDim, 5, 3, Epsilon::Plus)).unwrap(),
            nat(1)
        );
        for n in 2..7 {
            for q in [3u64, 5, 7, 9] {
                for e in [Epsilon::Plus, Epsilon::Minus] {
                    let s = g(Family::OmegaEvenDim, n, q, e);
                    let r = group_order(&s).unwrap() % center_order(&s).unwrap();
                    assert!(r.is_zero());
                }
            }
        }
    }
}
