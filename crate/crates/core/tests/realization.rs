//! Witness matrices, rechecked by plain repeated multiplication.

use num_traits::ToPrimitive;

use classpec::exactmath::nat;
use classpec::gf::FieldCtx;
use classpec::groups::{normalize, Epsilon, Family, GroupSpec, NormalizedSpec};
use classpec::matgrp::{
    enumerate_group, regular_unipotent, standard_generators, witness_for_order, FormData, FormKind, Mat, Witness,
};
use classpec::spectrum::{max_unipotent_order, mu, omega_generators, LieType};

fn ns(f: Family, n: u32, q: u64, e: Epsilon) -> NormalizedSpec {
    normalize(&GroupSpec::new(f, n, q, e).unwrap()).unwrap()
}

/// Smallest k with m^k = 1 (or a scalar ±1 when projective), by stepping.
fn naive_order(k: &FieldCtx, m: &Mat, projective: bool, limit: u64) -> u64 {
    let mut h = m.clone();
    for i in 1..=limit {
        let s = h.scalar_value();
        if s == Some(1) || (projective && s == Some(k.neg(1))) {
            return i;
        }
        h = h.mul(k, m);
    }
    panic!("order above {limit}");
}

fn preserves(k: &FieldCtx, m: &Mat, form: &FormData) -> bool {
    let d = form.dim();
    let cols: Vec<Vec<u16>> = (0..d).map(|j| m.column(j)).collect();
    let unit = |i: usize| {
        let mut v = vec![0u16; d];
        v[i] = 1;
        v
    };
    for i in 0..d {
        for j in 0..d {
            if form.bilinear(k, &cols[i], &cols[j]) != form.bilinear(k, &unit(i), &unit(j)) {
                return false;
            }
        }
        if form.kind == FormKind::Quadratic && form.quadratic(k, &cols[i]) != form.quadratic(k, &unit(i)) {
            return false;
        }
    }
    true
}

fn check(ns: &NormalizedSpec, w: &Witness, m: u64) {
    let projective = matches!(ns.spec.family, Family::PSp | Family::POmegaEvenDim);
    assert!(preserves(&w.field, &w.matrix, &w.form), "{} order {m}", ns.original);
    assert_eq!(w.matrix.det(&w.field), 1);
    assert_eq!(
        naive_order(&w.field, &w.matrix, projective, 10 * m),
        m,
        "{}",
        ns.original
    );
    assert_eq!(w.order, nat(m));
}

#[test]
fn every_maximal_order_is_realized() {
    let groups = [
        ns(Family::Sp, 2, 3, Epsilon::None),
        ns(Family::Sp, 3, 3, Epsilon::None),
        ns(Family::OmegaOddDim, 3, 3, Epsilon::None),
        ns(Family::PSp, 2, 5, Epsilon::None),
        ns(Family::OmegaEvenDim, 4, 2, Epsilon::Minus),
        ns(Family::POmegaEvenDim, 4, 3, Epsilon::Plus),
    ];
    for g in &groups {
        for v in mu(&omega_generators(g).unwrap()).values {
            let m = v.to_u64().unwrap();
            let w = witness_for_order(g, &v).unwrap();
            check(g, &w, m);
        }
    }
}

#[test]
fn divisors_are_realized_by_powers() {
    let g = ns(Family::Sp, 2, 3, Epsilon::None);
    for m in [1u64, 2, 3, 4, 5, 6, 9] {
        let w = witness_for_order(&g, &nat(m)).unwrap();
        check(&g, &w, m);
    }
}

#[test]
fn omega_minus_8_3_has_order_36() {
    let g = ns(Family::OmegaEvenDim, 4, 3, Epsilon::Minus);
    let w = witness_for_order(&g, &nat(36)).unwrap();
    check(&g, &w, 36);
}

#[test]
fn extension_field_witnesses() {
    for g in [
        ns(Family::Sp, 2, 9, Epsilon::None),
        ns(Family::OmegaEvenDim, 4, 4, Epsilon::Plus),
    ] {
        for v in mu(&omega_generators(&g).unwrap()).values {
            let w = witness_for_order(&g, &v).unwrap();
            check(&g, &w, v.to_u64().unwrap());
        }
    }
}

#[test]
fn simple_root_products_in_enumerated_groups() {
    // (group, Lie type, rank, ε of the D form)
    let cases = [
        (
            GroupSpec::new(Family::Sp, 2, 3, Epsilon::None).unwrap(),
            LieType::C,
            Epsilon::None,
        ),
        (
            GroupSpec::new(Family::Sp, 2, 2, Epsilon::None).unwrap(),
            LieType::C,
            Epsilon::None,
        ),
        (
            GroupSpec::new(Family::SoOddDim, 2, 3, Epsilon::None).unwrap(),
            LieType::B,
            Epsilon::None,
        ),
        (
            GroupSpec::new(Family::OmegaEvenDim, 3, 2, Epsilon::Plus).unwrap(),
            LieType::D,
            Epsilon::Plus,
        ),
    ];
    for (spec, lie, eps) in cases {
        let real = standard_generators(&spec).unwrap();
        let all = enumerate_group(&real.field, real.form.dim(), &real.gens, 100_000).unwrap();
        let (u, form) = regular_unipotent(&real.field, lie, spec.n, eps).unwrap();
        assert_eq!(form, real.form);
        assert!(all.elements.contains(&u), "{spec}");
        let want = max_unipotent_order(lie, spec.n, spec.p).unwrap().to_u64().unwrap();
        assert_eq!(naive_order(&real.field, &u, false, 100), want, "{spec}");
    }
}
