//! The composite sets ν(G): values carrying a nontrivial unipotent factor.

use num_integer::Integer;

use super::engines::{bc_rank, d_of, d_rank, flip, ks, parity, single, Builder};
use crate::error::Result;
use crate::exactmath::{lcm_all, nat, Nat, Parity};
use crate::groups::{Engine, Epsilon, NormalizedSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuSet {
    pub values: Vec<Nat>,
}

pub fn nu_composite(ns: &NormalizedSpec) -> Result<NuSet> {
    let mut b = Builder::new(ns);
    match ns.engine {
        Engine::Sp | Engine::PSp => {
            for (k, n0) in ks(b.p, b.n, bc_rank) {
                if n0 < b.n {
                    b.torus_items("nu", b.n - n0, Parity::None, 1, &b.pk(k), None, k);
                } else if k > 1 {
                    let v = if ns.engine == Engine::Sp {
                        b.pk(k) * 2u32
                    } else {
                        b.pk(k)
                    };
                    b.push("nu", v, String::new(), None, Default::default(), None);
                }
            }
        }
        Engine::OmegaOddQEven => {
            for (k, n0) in ks(b.p, b.n, bc_rank) {
                if n0 < b.n {
                    b.torus_items("nu", b.n - n0, Parity::None, 1, &b.pk(k), None, k);
                }
            }
        }
        Engine::SoOdd => {
            for (k, n0) in ks(b.p, b.n, bc_rank) {
                if n0 < b.n {
                    b.torus_items("nu", b.n - n0, Parity::None, 1, &b.pk(k), None, k);
                }
            }
        }
        Engine::OmegaOdd => {
            for (k, n0) in ks(b.p, b.n, bc_rank) {
                if n0 < b.n {
                    let m = b.n - n0;
                    b.torus_items("nu", m, Parity::None, 2, &b.pk(k), None, k);
                    for plus in [false, true] {
                        let v = b.pk(k) * (b.qpm(m, plus) / 2u32);
                        b.push("nu", v, String::new(), None, single(plus, m), None);
                    }
                }
            }
        }
        Engine::SoEven => {
            for (k, n0) in ks(b.p, b.n, d_rank) {
                if n0 < b.n {
                    b.torus_items("nu", b.n - n0, Parity::None, 1, &b.pk(k), None, k);
                } else {
                    b.push("nu", b.pk(k) * 2u32, String::new(), None, Default::default(), None);
                }
            }
            bracket_q(&mut b, 1, &nat(ns.spec.p));
        }
        Engine::OmegaEvenQEven => {
            for (k, n0) in ks(b.p, b.n, d_rank) {
                if n0 < b.n {
                    b.torus_items("nu", b.n - n0, Parity::None, 1, &b.pk(k), None, k);
                }
            }
            bracket_q(&mut b, 1, &nat(2));
            for plus in [false, true] {
                let rest = if plus { flip(b.eps, 1) } else { b.eps };
                let head = b.qpm(1, plus);
                for pair in b.pairs(b.n - 3, parity(rest), 1) {
                    let v = lcm_all(&[head.clone(), pair.lcm_value(b.q)]).unwrap() * 4u32;
                    b.push("nu", v, String::new(), None, pair, None);
                }
            }
        }
        Engine::OmegaEven | Engine::POmegaEven => {
            let full = ns.engine == Engine::OmegaEven;
            for (k, n0) in ks(b.p, b.n, d_rank) {
                if n0 < b.n {
                    let m = b.n - n0;
                    for plus in [false, true] {
                        let v = if full {
                            let d = d_of(&b, n0, plus);
                            b.pk(k) * d.lcm(&(b.qpm(m, plus) / &d))
                        } else {
                            b.pk(k) * (b.qpm(m, plus) / 2u32)
                        };
                        b.push("nu", v, String::new(), None, single(plus, m), None);
                    }
                    b.torus_items("nu", m, Parity::None, 2, &b.pk(k), None, k);
                } else if full && ns.spec.gcd4() == 4 {
                    b.push("nu", b.pk(k) * 2u32, String::new(), None, Default::default(), None);
                }
            }
            bracket_q(&mut b, 2, &nat(ns.spec.p));
            let half = b.qpm(b.n - 2, b.eps == Epsilon::Minus) / 2u32;
            for plus in [false, true] {
                let v = lcm_all(&[b.qpm(1, plus), half.clone()]).unwrap() * b.p;
                b.push("nu", v, String::new(), None, Default::default(), None);
            }
            if full && b.n == 4 && b.eps == Epsilon::Plus {
                for plus in [false, true] {
                    let v = b.qpm(2, plus) * b.p;
                    b.push("nu", v, String::new(), None, Default::default(), None);
                    if b.p == 3 {
                        let v = b.qpm(1, plus) * 9u32;
                        b.push("nu", v, String::new(), None, Default::default(), None);
                    }
                }
            }
        }
    }
    Ok(NuSet {
        values: b.out.into_iter().map(|g| g.value).collect(),
    })
}

/// mult·[q±1, pairs of n-2 with the form's parity].
fn bracket_q(b: &mut Builder, min_parts: usize, mult: &Nat) {
    for plus in [false, true] {
        let head = b.qpm(1, plus);
        for pair in b.pairs(b.n - 2, parity(b.eps), min_parts) {
            let v = mult * lcm_all(&[head.clone(), pair.lcm_value(b.q)]).unwrap();
            b.push("nu", v, String::new(), None, pair, None);
        }
    }
}
