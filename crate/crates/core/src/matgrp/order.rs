use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{
    factor_nat, factor_u64, factorization_value, merge_max, nat, p_adic_valuation, Factorization, Nat,
};
use crate::gf::FieldCtx;
use crate::groups::{group_order, Family, GroupSpec};

use super::mat::Mat;

/// Least `t >= 1` with `m^t = I`, given a multiple of it in factored form.
pub fn element_order(k: &FieldCtx, m: &Mat, bound: &Factorization) -> Result<Nat> {
    let total = factorization_value(bound);
    let mut o = Nat::one();
    for (&r, &e) in bound {
        let rn = nat(r);
        let mut y = m.pow(k, &(&total / rn.pow(e)));
        let mut j = 0;
        while !y.is_identity() {
            if j == e {
                return Err(Error::NotPeriodic);
            }
            y = y.pow(k, &rn);
            j += 1;
        }
        o *= rn.pow(j);
    }
    if o.is_one() && !m.is_identity() {
        return Err(Error::NotPeriodic);
    }
    Ok(o)
}

/// [`element_order`] with an unfactored bound.
pub fn element_order_nat(k: &FieldCtx, m: &Mat, bound: &Nat) -> Result<Nat> {
    element_order(k, m, &factor_nat(bound)?)
}

/// Order modulo `{±I}` when `central_minus` is set (PSp, PΩ), else the matrix order.
pub fn projective_order(k: &FieldCtx, m: &Mat, bound: &Factorization, central_minus: bool) -> Result<Nat> {
    let o = element_order(k, m, bound)?;
    if central_minus && k.p() != 2 && o.is_even() {
        let half = &o / 2u32;
        if m.pow(k, &half).scalar_value() == Some(k.neg(1)) {
            return Ok(half);
        }
    }
    Ok(o)
}

/// Whether orders of `spec`'s elements are taken modulo the center.
pub fn is_projective(spec: &GroupSpec) -> bool {
    matches!(spec.family, Family::PSp | Family::POmegaEvenDim)
}

/// Factored multiple of every element order of `spec`'s matrix group: the group order,
/// factored through `q^i ± 1` pieces, with the p-part cut to the largest unipotent order.
pub fn exponent_bound(spec: &GroupSpec) -> Result<Factorization> {
    let mut matrix_group = *spec;
    matrix_group.family = match spec.family {
        Family::PSp => Family::Sp,
        Family::POmegaEvenDim => Family::OmegaEvenDim,
        f => f,
    };
    let order = group_order(&matrix_group)?;
    let q = nat(spec.q());
    let mut primes = Factorization::new();
    let dim = spec.dim() as u32;
    let n = spec.n;
    let mut pieces: Vec<Nat> = (1..=n).map(|i| q.pow(2 * i) - 1u32).collect();
    pieces.extend([q.pow(n) - 1u32, q.pow(n) + 1u32]);
    for piece in pieces {
        let f = match u64::try_from(&piece) {
            Ok(v) => factor_u64(v),
            Err(_) => factor_nat(&piece)?,
        };
        merge_max(&mut primes, &f);
    }
    let mut out = Factorization::new();
    for &r in primes.keys() {
        if r == spec.p {
            continue;
        }
        let (v, _) = p_adic_valuation(&order, r)?;
        if v > 0 {
            out.insert(r, v);
        }
    }
    // a unipotent d x d matrix has order at most the least p^a >= d
    let mut a = 0;
    let mut pa = 1u64;
    while pa < dim as u64 {
        pa *= spec.p;
        a += 1;
    }
    if a > 0 {
        out.insert(spec.p, a);
    }
    Ok(out)
}
