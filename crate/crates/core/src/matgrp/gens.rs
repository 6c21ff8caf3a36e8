use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::groups::{Epsilon, Family, GroupSpec};
use crate::spectrum::LieType;

use super::forms::{position, FormData};
use super::mat::Mat;
use super::roots::{eichler, root_element, RootLabel, RootSpec};

/// A matrix group given by generators, together with the form it preserves.
#[derive(Debug, Clone)]
pub struct Realization {
    pub field: FieldCtx,
    pub form: FormData,
    pub gens: Vec<Mat>,
}

fn unit(d: usize, i: usize) -> Vec<u16> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Diagonal torus element with `z` at `e_1` and `z^{-1}` at `e_{-1}`.
fn torus_gen(k: &FieldCtx, n: usize, odd: bool) -> Mat {
    let z = k.generator();
    let mut m = Mat::identity(2 * n + odd as usize);
    m.set(position(n, odd, 1), position(n, odd, 1), z);
    m.set(position(n, odd, -1), position(n, odd, -1), k.inv(z).expect("nonzero"));
    m
}

fn chevalley(k: &FieldCtx, lie: LieType, n: u32, labels: &[RootLabel]) -> Result<Vec<Mat>> {
    let mut out = Vec::new();
    for &l in labels {
        let r = RootSpec::new(lie, n, l)?;
        for t in k.prime_basis() {
            out.push(root_element(k, &r, t)?);
        }
    }
    Ok(out)
}

fn simple_labels(lie: LieType, n: u32) -> Vec<RootLabel> {
    let mut v = Vec::new();
    for i in 1..n {
        v.push(RootLabel::Diff(i, i + 1));
        v.push(RootLabel::Diff(i + 1, i));
    }
    match lie {
        LieType::C => v.extend([RootLabel::Long(n, true), RootLabel::Long(n, false)]),
        LieType::B => v.extend([RootLabel::Short(n, true), RootLabel::Short(n, false)]),
        LieType::D => v.extend([RootLabel::Sum(n - 1, n), RootLabel::NegSum(n - 1, n)]),
    }
    v
}

/// Generators of Ω^-_{2n}(q): root elements of the split part and Eichler
/// transformations moving `e_{±(n-1)}` along the anisotropic plane.
fn minus_gens(k: &FieldCtx, form: &FormData, n: u32) -> Vec<Mat> {
    let nu = n as usize;
    let d = 2 * nu;
    let mut out = Vec::new();
    for i in 1..n - 1 {
        for l in [RootLabel::Diff(i, i + 1), RootLabel::Diff(i + 1, i)] {
            let r = RootSpec::new(LieType::D, n, l).expect("valid root");
            for t in k.prime_basis() {
                out.push(root_element(k, &r, t).expect("valid root"));
            }
        }
    }
    let m = (n - 1) as i32;
    for u in [m, -m] {
        let uv = unit(d, position(nu, false, u));
        for w in [n as i32, -(n as i32)] {
            for t in k.prime_basis() {
                let mut wv = vec![0; d];
                wv[position(nu, false, w)] = t;
                out.push(eichler(k, form, &uv, &wv));
            }
        }
    }
    out
}

/// Generators and form of the group named by `spec`, over GF(q).
pub fn standard_generators(spec: &GroupSpec) -> Result<Realization> {
    let k = FieldCtx::new(spec.p, spec.f)?;
    let n = spec.n;
    let q_odd = spec.p != 2;
    let form = FormData::standard(&k, spec)?;
    let gens = match spec.family {
        Family::Sp | Family::PSp => {
            if n == 0 {
                return Err(Error::UnsupportedGroup(format!("{spec}: n must be positive")));
            }
            chevalley(&k, LieType::C, n, &simple_labels(LieType::C, n))?
        }
        Family::SoOddDim | Family::OmegaOddDim => {
            if n == 0 {
                return Err(Error::UnsupportedGroup(format!("{spec}: n must be positive")));
            }
            let mut g = chevalley(&k, LieType::B, n, &simple_labels(LieType::B, n))?;
            if spec.family == Family::SoOddDim && q_odd {
                g.push(torus_gen(&k, n as usize, true));
            }
            g
        }
        Family::SoEvenDim | Family::OmegaEvenDim | Family::POmegaEvenDim => {
            if n < 2 {
                return Err(Error::UnsupportedGroup(format!(
                    "{spec}: the matrix model needs n >= 2"
                )));
            }
            if spec.family == Family::SoEvenDim && !q_odd {
                return Err(Error::UnsupportedGroup(format!(
                    "{spec}: SO for even q is not modelled"
                )));
            }
            let mut g = if spec.epsilon == Epsilon::Plus {
                chevalley(&k, LieType::D, n, &simple_labels(LieType::D, n))?
            } else {
                minus_gens(&k, &form, n)
            };
            if spec.family == Family::SoEvenDim {
                g.push(torus_gen(&k, n as usize, false));
            }
            g
        }
    };
    Ok(Realization { field: k, form, gens })
}

/// The product of `u_α(1)` over the simple roots of the given type, with its form.
/// For type D with ε = − the last factor is an Eichler transformation along the
/// anisotropic plane.
pub fn regular_unipotent(k: &FieldCtx, lie: LieType, rank: u32, epsilon: Epsilon) -> Result<(Mat, FormData)> {
    let r = rank as usize;
    let (form, d) = match lie {
        LieType::C => (FormData::symplectic(k, r), 2 * r),
        LieType::B => (FormData::odd_quadratic(k, r), 2 * r + 1),
        LieType::D => {
            if rank < 2 {
                return Err(Error::InvalidRoot(format!("D_{rank}")));
            }
            (FormData::even_quadratic(k, r, epsilon)?, 2 * r)
        }
    };
    let mut m = Mat::identity(d);
    let split_top = if lie == LieType::D && epsilon == Epsilon::Minus {
        rank - 1
    } else {
        rank
    };
    for i in 1..split_top {
        let x = root_element(k, &RootSpec::new(lie, rank, RootLabel::Diff(i, i + 1))?, 1)?;
        m = m.mul(k, &x);
    }
    let last = match (lie, epsilon) {
        (LieType::C, _) => root_element(k, &RootSpec::new(lie, rank, RootLabel::Long(rank, true))?, 1)?,
        (LieType::B, _) => root_element(k, &RootSpec::new(lie, rank, RootLabel::Short(rank, true))?, 1)?,
        (LieType::D, Epsilon::Minus) => {
            let u = unit(d, position(r, false, rank as i32 - 1));
            let w = unit(d, position(r, false, rank as i32));
            eichler(k, &form, &u, &w)
        }
        (LieType::D, _) => root_element(k, &RootSpec::new(lie, rank, RootLabel::Sum(rank - 1, rank))?, 1)?,
    };
    Ok((m.mul(k, &last), form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::forms::preserves_form;

    #[test]
    fn generators_preserve_forms() {
        let specs = [
            (Family::Sp, 3, 4, Epsilon::None),
            (Family::SoOddDim, 3, 5, Epsilon::None),
            (Family::OmegaOddDim, 2, 2, Epsilon::None),
            (Family::SoEvenDim, 3, 3, Epsilon::Minus),
            (Family::OmegaEvenDim, 4, 2, Epsilon::Minus),
            (Family::OmegaEvenDim, 4, 9, Epsilon::Plus),
        ];
        for (f, n, q, e) in specs {
            let r = standard_generators(&GroupSpec::new(f, n, q, e).unwrap()).unwrap();
            assert!(!r.gens.is_empty());
            for g in &r.gens {
                assert!(preserves_form(&r.field, g, &r.form).unwrap());
                assert_eq!(g.det(&r.field), 1);
            }
        }
    }

    #[test]
    fn so_even_q_even_is_rejected() {
        let s = GroupSpec::new(Family::SoEvenDim, 3, 4, Epsilon::Plus).unwrap();
        assert!(matches!(standard_generators(&s), Err(Error::UnsupportedGroup(_))));
    }
}
