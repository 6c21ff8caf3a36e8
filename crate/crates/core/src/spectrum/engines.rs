//! One generator list per engine.

use num_integer::Integer;

use super::{Generator, LieType, LinearBlock, Recipe, UnipotentBlock};
use crate::error::Result;
use crate::exactmath::{enumerate_signed_pairs, lcm_all, nat, Nat, Parity, SignedPartitionPair};
use crate::groups::{Engine, Epsilon, NormalizedSpec};

/// Rank of the B or C subsystem whose regular unipotent has order p^k.
pub(crate) fn bc_rank(p: u64, k: u32) -> u32 {
    if p == 2 {
        if k == 1 {
            1
        } else {
            (1u64 << (k - 2)).saturating_add(1).min(u32::MAX as u64) as u32
        }
    } else {
        let v = p.checked_pow(k - 1).map_or(u64::MAX, |x| x.div_ceil(2));
        v.min(u32::MAX as u64) as u32
    }
}

/// Rank of the D subsystem whose regular unipotent has order p^k.
pub(crate) fn d_rank(p: u64, k: u32) -> u32 {
    if p == 2 {
        if k == 1 {
            2
        } else {
            (1u64 << (k - 2)).saturating_add(2).min(u32::MAX as u64) as u32
        }
    } else {
        let v = p.checked_pow(k - 1).map_or(u64::MAX, |x| (x + 3) / 2);
        v.min(u32::MAX as u64) as u32
    }
}

pub(crate) fn parity(eps: Epsilon) -> Parity {
    if eps == Epsilon::Minus {
        Parity::PlusOdd
    } else {
        Parity::PlusEven
    }
}

/// Type of the complement after removing `plus_parts` anisotropic torus blocks.
pub(crate) fn flip(eps: Epsilon, plus_parts: usize) -> Epsilon {
    match (eps, plus_parts % 2) {
        (Epsilon::None, _) => Epsilon::None,
        (e, 0) => e,
        (Epsilon::Plus, _) => Epsilon::Minus,
        (Epsilon::Minus, _) => Epsilon::Plus,
    }
}

/// The pairs (k, rank) with rank(k) <= n, k >= 1.
pub(crate) fn ks(p: u64, n: u32, rank: fn(u64, u32) -> u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut k = 1;
    loop {
        let r = rank(p, k);
        if r > n {
            break;
        }
        out.push((k, r));
        k += 1;
    }
    out
}

pub(crate) struct Builder {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub eps: Epsilon,
    pub out: Vec<Generator>,
}

pub(crate) fn single(sign_plus: bool, m: u32) -> SignedPartitionPair {
    if sign_plus {
        SignedPartitionPair::new(vec![], vec![m]).unwrap()
    } else {
        SignedPartitionPair::new(vec![m], vec![]).unwrap()
    }
}

impl Builder {
    pub fn new(ns: &NormalizedSpec) -> Self {
        Builder {
            p: ns.spec.p,
            q: ns.spec.q(),
            n: ns.spec.n,
            eps: ns.spec.epsilon,
            out: Vec::new(),
        }
    }

    pub fn pk(&self, k: u32) -> Nat {
        nat(self.p).pow(k)
    }

    /// q^m - 1 or q^m + 1.
    pub fn qpm(&self, m: u32, plus: bool) -> Nat {
        let v = nat(self.q).pow(m);
        if plus {
            v + 1u32
        } else {
            v - 1u32
        }
    }

    pub fn pairs(&self, w: u32, parity: Parity, min_parts: usize) -> Vec<SignedPartitionPair> {
        enumerate_signed_pairs(w, parity, min_parts)
    }

    pub fn unip(&self, lie: LieType, k: u32, rank: u32, eps: Epsilon) -> Option<UnipotentBlock> {
        Some(UnipotentBlock {
            lie,
            rank,
            k,
            epsilon: if lie == LieType::D { eps } else { Epsilon::None },
        })
    }

    pub fn push(
        &mut self,
        item: &'static str,
        value: Nat,
        detail: String,
        unipotent: Option<UnipotentBlock>,
        parts: SignedPartitionPair,
        linear: Option<LinearBlock>,
    ) {
        self.out.push(Generator {
            value: value.clone(),
            item,
            detail,
            recipe: Recipe {
                unipotent,
                parts,
                linear,
                order: value,
            },
        });
    }

    /// lcm of the pair's factors times `mult`.
    #[allow(clippy::too_many_arguments)]
    pub fn torus_items(
        &mut self,
        item: &'static str,
        w: u32,
        parity: Parity,
        min_parts: usize,
        mult: &Nat,
        unip: Option<UnipotentBlock>,
        k: u32,
    ) {
        for pair in self.pairs(w, parity, min_parts) {
            let value = mult * pair.lcm_value(self.q);
            let detail = if k > 0 {
                format!("k={k} {pair}")
            } else {
                format!("{pair}")
            };
            let u = unip.map(|mut u| {
                if u.lie == LieType::D {
                    u.epsilon = flip(self.eps, pair.plus.len());
                }
                u
            });
            self.push(item, value, detail, u, pair, None);
        }
    }
}

pub(crate) fn generators(ns: &NormalizedSpec) -> Result<Vec<Generator>> {
    let mut b = Builder::new(ns);
    match ns.engine {
        Engine::Sp => sp(&mut b),
        Engine::PSp => psp(&mut b),
        Engine::OmegaOddQEven => omega_odd_q_even(&mut b),
        Engine::SoOdd => so_odd(&mut b),
        Engine::OmegaOdd => omega_odd(&mut b),
        Engine::SoEven => so_even(&mut b),
        Engine::OmegaEvenQEven => omega_even_q_even(&mut b),
        Engine::OmegaEven => omega_even(&mut b),
        Engine::POmegaEven => pomega_even(&mut b),
    }
    Ok(b.out)
}

fn sp(b: &mut Builder) {
    let one = nat(1);
    b.torus_items("Sp/1 [torus]", b.n, Parity::None, 1, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, bc_rank) {
        if n0 < b.n {
            let u = b.unip(LieType::C, k, n0, Epsilon::None);
            b.torus_items("Sp/2 p^k[torus]", b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else if k > 1 {
            let u = b.unip(LieType::C, k, n0, Epsilon::None);
            b.push(
                "Sp/3 2p^k",
                b.pk(k) * 2u32,
                format!("k={k}"),
                u,
                Default::default(),
                None,
            );
        }
    }
}

fn psp(b: &mut Builder) {
    for plus in [false, true] {
        let v = b.qpm(b.n, plus) / 2u32;
        b.push("PSp/1 (q^n±1)/2", v, String::new(), None, single(plus, b.n), None);
    }
    let one = nat(1);
    b.torus_items("PSp/2 [torus] s>=2", b.n, Parity::None, 2, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, bc_rank) {
        let u = b.unip(LieType::C, k, n0, Epsilon::None);
        if n0 < b.n {
            b.torus_items("PSp/3 p^k[torus]", b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else if k > 1 {
            b.push("PSp/4 p^k", b.pk(k), format!("k={k}"), u, Default::default(), None);
        }
    }
}

fn omega_odd_q_even(b: &mut Builder) {
    let one = nat(1);
    b.torus_items("O2n+1,even/1 [torus]", b.n, Parity::None, 1, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, bc_rank) {
        let u = b.unip(LieType::B, k, n0, Epsilon::None);
        if n0 < b.n {
            let item = if k == 1 {
                "O2n+1,even/2 2[torus]"
            } else {
                "O2n+1,even/3 2^k[torus]"
            };
            b.torus_items(item, b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else if k >= 2 {
            b.push(
                "O2n+1,even/4 2^k",
                b.pk(k),
                format!("k={k}"),
                u,
                Default::default(),
                None,
            );
        }
    }
}

fn so_odd(b: &mut Builder) {
    let one = nat(1);
    b.torus_items("SO2n+1/1 [torus]", b.n, Parity::None, 1, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, bc_rank) {
        let u = b.unip(LieType::B, k, n0, Epsilon::None);
        if n0 < b.n {
            b.torus_items("SO2n+1/2 p^k[torus]", b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else {
            b.push("SO2n+1/3 p^k", b.pk(k), format!("k={k}"), u, Default::default(), None);
        }
    }
}

fn omega_odd(b: &mut Builder) {
    for plus in [false, true] {
        let v = b.qpm(b.n, plus) / 2u32;
        b.push("O2n+1/1 (q^n±1)/2", v, String::new(), None, single(plus, b.n), None);
    }
    let one = nat(1);
    b.torus_items("O2n+1/2 [torus] s>=2", b.n, Parity::None, 2, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, bc_rank) {
        let u = b.unip(LieType::B, k, n0, Epsilon::None);
        if n0 < b.n {
            let m = b.n - n0;
            for plus in [false, true] {
                let v = b.pk(k) * (b.qpm(m, plus) / 2u32);
                b.push(
                    "O2n+1/3 p^k(q^m±1)/2",
                    v,
                    format!("k={k} m={m}"),
                    u,
                    single(plus, m),
                    None,
                );
            }
            b.torus_items("O2n+1/4 p^k[torus] s>=2", m, Parity::None, 2, &b.pk(k), u, k);
        } else {
            b.push("O2n+1/5 p^k", b.pk(k), format!("k={k}"), u, Default::default(), None);
        }
    }
}

/// p·[q∓1, rest] items carried by a GL_2(q) or GU_2(q) block; `rest_min` parts on n-2.
fn linear_two(b: &mut Builder, item: &'static str, mult: &Nat, rest_min: usize) {
    if b.n < 2 {
        return;
    }
    for plus in [false, true] {
        let lin = if plus {
            LinearBlock::Gu { m: 2, e: 1 }
        } else {
            LinearBlock::Gl { m: 2, e: 1 }
        };
        let head = b.qpm(1, plus);
        for pair in b.pairs(b.n - 2, parity(b.eps), rest_min) {
            let value = mult * lcm_all(&[head.clone(), pair.lcm_value(b.q)]).unwrap();
            let sign = if plus { "q+1" } else { "q-1" };
            b.push(item, value, format!("[{sign}] {pair}"), None, pair, Some(lin));
        }
    }
}

fn so_even(b: &mut Builder) {
    let one = nat(1);
    b.torus_items("SO2n/1 [torus]", b.n, parity(b.eps), 1, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, d_rank) {
        let u = b.unip(LieType::D, k, n0, b.eps);
        if n0 < b.n {
            b.torus_items("SO2n/2 p^k[torus]", b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else {
            b.push(
                "SO2n/4 2p^k",
                b.pk(k) * 2u32,
                format!("k={k}"),
                u,
                Default::default(),
                None,
            );
        }
    }
    let p = nat(b.p);
    linear_two(b, "SO2n/3 p[q±1, torus]", &p, 1);
}

fn omega_even_q_even(b: &mut Builder) {
    let one = nat(1);
    b.torus_items("O2n,even/1 [torus]", b.n, parity(b.eps), 1, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, d_rank) {
        let u = b.unip(LieType::D, k, n0, b.eps);
        if n0 < b.n {
            let item = if k == 1 {
                "O2n,even/3 2[torus]"
            } else {
                "O2n,even/2 2^k[torus]"
            };
            b.torus_items(item, b.n - n0, Parity::None, 1, &b.pk(k), u, k);
        } else if k > 2 {
            b.push("O2n,even/7 2^k", b.pk(k), format!("k={k}"), u, Default::default(), None);
        }
    }
    linear_two(b, "O2n,even/4 2[q±1, torus]", &nat(2), 1);
    // 4[q-1, ...] with the complement of the same type, 4[q+1, ...] with the opposite
    for plus in [false, true] {
        if b.n < 4 {
            break;
        }
        let lin = if plus {
            LinearBlock::Gu { m: 3, e: 1 }
        } else {
            LinearBlock::Gl { m: 3, e: 1 }
        };
        let rest_eps = if plus { flip(b.eps, 1) } else { b.eps };
        let head = b.qpm(1, plus);
        let item = if plus {
            "O2n,even/6 4[q+1, torus]"
        } else {
            "O2n,even/5 4[q-1, torus]"
        };
        for pair in b.pairs(b.n - 3, parity(rest_eps), 1) {
            let value = lcm_all(&[head.clone(), pair.lcm_value(b.q)]).unwrap() * 4u32;
            b.push(item, value, format!("{pair}"), None, pair, Some(lin));
        }
    }
}

/// d_k = (4, q^{n0} - δ)/2 where δ is the type of the unipotent block: ε beside a q^m - 1
/// torus, -ε beside a q^m + 1 torus.
pub(crate) fn d_of(b: &Builder, n0: u32, plus: bool) -> Nat {
    let delta = flip(b.eps, plus as usize);
    b.qpm(n0, delta == Epsilon::Minus).gcd(&nat(4)) / 2u32
}

fn omega_even(b: &mut Builder) {
    let plus_n = b.eps == Epsilon::Minus;
    let v = b.qpm(b.n, plus_n) / 2u32;
    b.push("O2n/1 (q^n-ε)/2", v, String::new(), None, single(plus_n, b.n), None);
    let one = nat(1);
    b.torus_items("O2n/2 [torus] s>=2", b.n, parity(b.eps), 2, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, d_rank) {
        if n0 < b.n {
            let m = b.n - n0;
            for plus in [false, true] {
                let d = d_of(b, n0, plus);
                let x = b.qpm(m, plus) / &d;
                let value = b.pk(k) * d.lcm(&x);
                let u = b.unip(LieType::D, k, n0, flip(b.eps, plus as usize));
                b.push(
                    "O2n/3 p^k[d_k, (q^m±1)/d_k]",
                    value,
                    format!("k={k} m={m}"),
                    u,
                    single(plus, m),
                    None,
                );
            }
            let u = b.unip(LieType::D, k, n0, b.eps);
            b.torus_items("O2n/4 p^k[torus] s>=2", m, Parity::None, 2, &b.pk(k), u, k);
        } else {
            let d = (b.qpm(b.n, b.eps == Epsilon::Minus).gcd(&nat(4)) / 2u32) * b.pk(k);
            let u = b.unip(LieType::D, k, n0, b.eps);
            b.push("O2n/7 d p^k", d, format!("k={k}"), u, Default::default(), None);
        }
    }
    let p = nat(b.p);
    linear_two(b, "O2n/5 p[q±1, torus] s>=2", &p, 2);
    if b.n >= 3 {
        let rest_plus = b.eps == Epsilon::Minus;
        let half = b.qpm(b.n - 2, rest_plus) / 2u32;
        for plus in [false, true] {
            let lin = if plus {
                LinearBlock::Gu { m: 2, e: 1 }
            } else {
                LinearBlock::Gl { m: 2, e: 1 }
            };
            let value = lcm_all(&[b.qpm(1, plus), half.clone()]).unwrap() * b.p;
            let sign = if plus { "q+1" } else { "q-1" };
            b.push(
                "O2n/6 p[q±1, (q^(n-2)-ε)/2]",
                value,
                format!("[{sign}]"),
                None,
                single(rest_plus, b.n - 2),
                Some(lin),
            );
        }
    }
    if b.n == 4 && b.eps == Epsilon::Plus {
        for plus in [false, true] {
            let lin = if plus {
                LinearBlock::Gu { m: 2, e: 2 }
            } else {
                LinearBlock::Gl { m: 2, e: 2 }
            };
            let value = b.qpm(2, plus) * b.p;
            b.push(
                "O2n/8 p(q^2±1)",
                value,
                String::new(),
                None,
                Default::default(),
                Some(lin),
            );
        }
        if b.p == 3 {
            for plus in [false, true] {
                let value = b.qpm(1, plus) * 9u32;
                if plus {
                    let lin = LinearBlock::Gu { m: 4, e: 1 };
                    b.push(
                        "O2n/9 9(q±1)",
                        value,
                        "[q+1]".into(),
                        None,
                        Default::default(),
                        Some(lin),
                    );
                } else {
                    let lin = LinearBlock::Gl { m: 4, e: 1 };
                    b.push(
                        "O2n/9 9(q±1)",
                        value,
                        "[q-1]".into(),
                        None,
                        Default::default(),
                        Some(lin),
                    );
                }
            }
        }
    }
}

fn pomega_even(b: &mut Builder) {
    let plus_n = b.eps == Epsilon::Minus;
    let v = b.qpm(b.n, plus_n) / 4u32;
    b.push("PO2n/1 (q^n-ε)/4", v, String::new(), None, single(plus_n, b.n), None);
    for pair in b.pairs(b.n, parity(b.eps), 2) {
        if pair.total_parts() != 2 {
            continue;
        }
        let f = pair.factors(b.q);
        let two = |x: &Nat| x.trailing_zeros().unwrap_or(0);
        let d = if two(&f[0]) == two(&f[1]) { 2u32 } else { 1 };
        let value = lcm_all(&f).unwrap() / d;
        b.push(
            "PO2n/2 [q^a-ε1, q^b-εε1]/d",
            value,
            format!("{pair} d={d}"),
            None,
            pair,
            None,
        );
    }
    let one = nat(1);
    b.torus_items("PO2n/3 [torus] s>2", b.n, parity(b.eps), 3, &one, None, 0);
    for (k, n0) in ks(b.p, b.n, d_rank) {
        if n0 < b.n {
            let m = b.n - n0;
            for plus in [false, true] {
                let value = b.pk(k) * (b.qpm(m, plus) / 2u32);
                let u = b.unip(LieType::D, k, n0, flip(b.eps, plus as usize));
                b.push(
                    "PO2n/4 p^k(q^m±1)/2",
                    value,
                    format!("k={k} m={m}"),
                    u,
                    single(plus, m),
                    None,
                );
            }
            let u = b.unip(LieType::D, k, n0, b.eps);
            b.torus_items("PO2n/5 p^k[torus] s>1", m, Parity::None, 2, &b.pk(k), u, k);
        } else {
            let u = b.unip(LieType::D, k, n0, b.eps);
            b.push("PO2n/8 p^k", b.pk(k), format!("k={k}"), u, Default::default(), None);
        }
    }
    let p = nat(b.p);
    linear_two(b, "PO2n/6 p[q±1, torus] s>1", &p, 2);
    let rest_plus = b.eps == Epsilon::Minus;
    let half = b.qpm(b.n - 2, rest_plus) / 2u32;
    for plus in [false, true] {
        let lin = if plus {
            LinearBlock::Gu { m: 2, e: 1 }
        } else {
            LinearBlock::Gl { m: 2, e: 1 }
        };
        let value = lcm_all(&[b.qpm(1, plus), half.clone()]).unwrap() * b.p;
        let sign = if plus { "q+1" } else { "q-1" };
        b.push(
            "PO2n/7 p[q±1, (q^(n-2)-ε)/2]",
            value,
            format!("[{sign}]"),
            None,
            single(rest_plus, b.n - 2),
            Some(lin),
        );
    }
}
