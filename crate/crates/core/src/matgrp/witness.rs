use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{factor_u64, merge_max, nat, Factorization, Nat};
use crate::gf::{element_of_order, min_poly, ExtElem, ExtField, FieldCtx, FieldElem};
use crate::groups::{Epsilon, Family, GroupSpec, NormalizedSpec};
use crate::spectrum::{max_unipotent_order, omega_generators, LieType, LinearBlock, Recipe};

use super::forms::{position, preserves_form, FormData, FormKind};
use super::gens::regular_unipotent;
use super::invariant::{membership_invariant, Invariant};
use super::mat::{null_space, span_basis, Mat};
use super::order::{element_order, exponent_bound, is_projective, projective_order};

/// A matrix realizing a claimed order in the standard model of a group.
#[derive(Debug, Clone)]
pub struct Witness {
    /// The group the matrix lies in (the engine's group).
    pub group: GroupSpec,
    pub field: FieldCtx,
    pub form: FormData,
    pub matrix: Mat,
    /// Verified order; projective for PSp and PΩ.
    pub order: Nat,
    /// Recipe of the generator value the matrix was powered down from.
    pub recipe: Recipe,
    /// `matrix` is the recipe's element raised to this power.
    pub power: Nat,
    /// Item tag and parameters of the generator used, if any.
    pub source: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Unipotent,
    Semisimple,
    Pad,
}

struct Block {
    mat: Mat,
    form: FormData,
    kind: BlockKind,
}

struct Variant {
    mat: Mat,
    order: Nat,
    half_is_minus: bool,
    det: FieldElem,
    inv: Option<Invariant>,
}

/// Multiple of the order of every matrix in GL_d(q).
fn gl_bound(k: &FieldCtx, d: usize) -> Factorization {
    let q = k.q() as u64;
    let mut out = Factorization::new();
    let mut qi = 1u64;
    for _ in 0..d {
        qi = qi.saturating_mul(q);
        if qi == u64::MAX {
            break;
        }
        merge_max(&mut out, &factor_u64(qi - 1));
    }
    let p = k.p() as u64;
    let (mut a, mut pa) = (0, 1u64);
    while pa < d as u64 {
        pa *= p;
        a += 1;
    }
    if a > 0 {
        out.insert(p, a);
    }
    out
}

fn ext_to_base(l: &ExtField, x: &[Vec<ExtElem>]) -> Mat {
    let m = x.len();
    let e = l.degree() as usize;
    let mut out = Mat::zero(m * e);
    for i in 0..m {
        for j in 0..e {
            let yj = l.basis(j);
            for r in 0..m {
                let v = l.mul(&x[r][i], &yj);
                for t in 0..e {
                    out.set(r * e + t, i * e + j, v[t]);
                }
            }
        }
    }
    out
}

fn hyperbolic(k: &FieldCtx, kind: FormKind, m: usize) -> Result<FormData> {
    match kind {
        FormKind::Symplectic => Ok(FormData::symplectic(k, m)),
        FormKind::Quadratic => FormData::even_quadratic(k, m, Epsilon::Plus),
    }
}

/// `diag(Y, Y^{-T})` on a hyperbolic space.
fn gl_embed(k: &FieldCtx, kind: FormKind, y: &Mat) -> Result<Block> {
    let yi = y
        .inverse(k)
        .ok_or_else(|| Error::InfeasibleRecipe("singular torus block".into()))?;
    Ok(Block {
        mat: Mat::block_diag(&[y.clone(), yi.transpose()]),
        form: hyperbolic(k, kind, y.size())?,
        kind: BlockKind::Semisimple,
    })
}

fn companion_of_order(k: &FieldCtx, d: &Nat, want_degree: u32) -> Result<Mat> {
    let (ext, l) = element_of_order(k, d)?;
    if ext.degree() != want_degree {
        return Err(Error::InfeasibleRecipe(format!(
            "an element of order {d} lives in degree {}, not {want_degree}",
            ext.degree()
        )));
    }
    Ok(Mat::companion(k, &min_poly(&ext, &l)?))
}

/// A nondegenerate form of the given kind invariant under `c`.
fn invariant_form(k: &FieldCtx, kind: FormKind, c: &Mat) -> Result<FormData> {
    let d = c.size();
    let ct = c.transpose();
    let vars: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .filter(|&(i, j)| kind == FormKind::Quadratic || i < j)
        .collect();
    let build = |coeffs: &[FieldElem]| -> Mat {
        let mut g = Mat::zero(d);
        for (&(i, j), &v) in vars.iter().zip(coeffs) {
            g.set(i, j, v);
            if kind == FormKind::Symplectic {
                g.set(j, i, k.neg(v));
            }
        }
        g
    };
    // columns: image of each basis form under G -> reduce(C^T G C) - G
    let mut cols = Vec::new();
    for vi in 0..vars.len() {
        let mut e = vec![0; vars.len()];
        e[vi] = 1;
        let g = build(&e);
        let t = ct.mul(k, &g).mul(k, c);
        let col: Vec<FieldElem> = vars
            .iter()
            .map(|&(i, j)| {
                let red = if kind == FormKind::Quadratic && i != j {
                    k.add(t.get(i, j), t.get(j, i))
                } else {
                    t.get(i, j)
                };
                k.sub(red, g.get(i, j))
            })
            .collect();
        cols.push(col);
    }
    let rows: Vec<Vec<FieldElem>> = (0..vars.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let kernel = null_space(k, &rows, vars.len());
    let make = |coeffs: &[FieldElem]| -> Option<FormData> {
        let g = build(coeffs);
        let f = match kind {
            FormKind::Symplectic => FormData {
                kind,
                gram: g,
                quad: Mat::zero(d),
                epsilon: Epsilon::None,
            },
            FormKind::Quadratic => FormData::from_quad(k, g, Epsilon::None),
        };
        (f.gram.det(k) != 0).then_some(f)
    };
    for v in &kernel {
        if let Some(f) = make(v) {
            return Ok(f);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..2000 {
        let mut acc = vec![0; vars.len()];
        for v in &kernel {
            let c = rng.random_range(0..k.q()) as FieldElem;
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = k.add(*a, k.mul(c, x));
            }
        }
        if let Some(f) = make(&acc) {
            return Ok(f);
        }
    }
    Err(Error::InfeasibleRecipe(
        "no nondegenerate invariant form for a torus block".into(),
    ))
}

fn minus_torus(k: &FieldCtx, kind: FormKind, m: u32) -> Result<Block> {
    let d = nat(k.q() as u64).pow(m) - 1u32;
    let y = companion_of_order(k, &d, m)?;
    gl_embed(k, kind, &y)
}

fn plus_torus(k: &FieldCtx, kind: FormKind, m: u32) -> Result<Block> {
    let d = nat(k.q() as u64).pow(m) + 1u32;
    let c = companion_of_order(k, &d, 2 * m)?;
    let form = invariant_form(k, kind, &c)?;
    Ok(Block {
        mat: c,
        form,
        kind: BlockKind::Semisimple,
    })
}

/// λ times a regular unipotent of GL_m(q^e), λ of order q^e - 1.
fn gl_linear(k: &FieldCtx, kind: FormKind, m: u32, e: u32) -> Result<Block> {
    let l = ExtField::new(k, e)?;
    let lam = l.generator();
    let m = m as usize;
    let x: Vec<Vec<ExtElem>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| if c == r || c == r + 1 { lam.clone() } else { l.zero() })
                .collect()
        })
        .collect();
    gl_embed(k, kind, &ext_to_base(&l, &x))
}

/// μ times a regular unipotent of GU_m(q^e), as an isometry of `Tr(h(v, v))`.
fn gu_linear(k: &FieldCtx, kind: FormKind, m: u32, e: u32) -> Result<Block> {
    if kind != FormKind::Quadratic {
        return Err(Error::InfeasibleRecipe(
            "unitary blocks are only built for orthogonal groups".into(),
        ));
    }
    if m > 4 {
        return Err(Error::InfeasibleRecipe(format!("GU_{m} blocks are not searched")));
    }
    let l = ExtField::new(k, 2 * e)?;
    let qe = nat(k.q() as u64).pow(e);
    let sigma = |a: &[FieldElem]| l.pow(a, &qe);
    let m = m as usize;
    let h = |x: &[ExtElem], y: &[ExtElem]| -> ExtElem {
        (0..m).fold(l.zero(), |acc, i| l.add(&acc, &l.mul(&x[i], &sigma(&y[m - 1 - i]))))
    };
    let free: Vec<(usize, usize)> = (0..m).flat_map(|r| (r + 1..m).map(move |c| (r, c))).collect();
    let size = l.size();
    let total = size.pow(free.len() as u32);
    let mut found = None;
    'search: for idx in 0..total {
        let mut u: Vec<Vec<ExtElem>> = (0..m)
            .map(|r| (0..m).map(|c| if r == c { l.one() } else { l.zero() }).collect())
            .collect();
        let mut rest = idx;
        for &(r, c) in &free {
            u[r][c] = l.element(rest % size);
            rest /= size;
            if c == r + 1 && l.is_zero(&u[r][c]) {
                continue 'search;
            }
        }
        let col = |j: usize| -> Vec<ExtElem> { (0..m).map(|r| u[r][j].clone()).collect() };
        for a in 0..m {
            for b in 0..m {
                let want = if a + b == m - 1 { l.one() } else { l.zero() };
                if h(&col(a), &col(b)) != want {
                    continue 'search;
                }
            }
        }
        found = Some(u);
        break;
    }
    let u = found.ok_or_else(|| Error::InfeasibleRecipe(format!("no regular unipotent in GU_{m}")))?;
    let mu = l.element_of_order(u64::try_from(&(&qe + 1u32)).expect("small field"))?;
    let x: Vec<Vec<ExtElem>> = u
        .iter()
        .map(|row| row.iter().map(|a| l.mul(&mu, a)).collect())
        .collect();
    let mat = ext_to_base(&l, &x);
    let de = 2 * e as usize;
    let dim = m * de;
    let to_ext = |v: &[FieldElem]| -> Vec<ExtElem> { (0..m).map(|r| v[r * de..(r + 1) * de].to_vec()).collect() };
    let qform = |v: &[FieldElem]| -> Result<FieldElem> {
        let w = to_ext(v);
        let z = h(&w, &w);
        let mut tr = l.zero();
        let mut c = z;
        for _ in 0..e {
            tr = l.add(&tr, &c);
            c = l.frobenius(&c);
        }
        l.to_base(&tr)
            .ok_or_else(|| Error::InfeasibleRecipe("hermitian trace left the base field".into()))
    };
    let unit = |i: usize| {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    };
    let mut quad = Mat::zero(dim);
    for a in 0..dim {
        quad.set(a, a, qform(&unit(a))?);
    }
    for a in 0..dim {
        for b in a + 1..dim {
            let mut v = unit(a);
            v[b] = 1;
            let x = k.sub(k.sub(qform(&v)?, quad.get(a, a)), quad.get(b, b));
            quad.set(a, b, x);
        }
    }
    let form = FormData::from_quad(k, quad, Epsilon::None);
    Ok(Block {
        mat,
        form,
        kind: BlockKind::Semisimple,
    })
}

fn build_blocks(k: &FieldCtx, spec: &GroupSpec, recipe: &Recipe) -> Result<Vec<Block>> {
    let kind = match spec.family {
        Family::Sp | Family::PSp => FormKind::Symplectic,
        _ => FormKind::Quadratic,
    };
    let odd_dim = matches!(spec.family, Family::SoOddDim | Family::OmegaOddDim);
    let mut blocks = Vec::new();
    let mut has_odd = false;
    if let Some(u) = recipe.unipotent {
        let ok = match u.lie {
            LieType::C => kind == FormKind::Symplectic,
            LieType::B => odd_dim,
            LieType::D => kind == FormKind::Quadratic,
        };
        if !ok {
            return Err(Error::InfeasibleRecipe(format!("{:?} block in {spec}", u.lie)));
        }
        let (mat, form) = regular_unipotent(k, u.lie, u.rank, u.epsilon)?;
        let want = max_unipotent_order(u.lie, u.rank, k.p() as u64)?;
        let got = element_order(k, &mat, &gl_bound(k, mat.size()))?;
        if got != want || got != nat(k.p() as u64).pow(u.k) {
            return Err(Error::OrderMismatch {
                claimed: nat(k.p() as u64).pow(u.k).to_string(),
                actual: got.to_string(),
            });
        }
        has_odd = u.lie == LieType::B;
        blocks.push(Block {
            mat,
            form,
            kind: BlockKind::Unipotent,
        });
    }
    if let Some(lin) = recipe.linear {
        blocks.push(match lin {
            LinearBlock::Gl { m, e } => gl_linear(k, kind, m, e)?,
            LinearBlock::Gu { m, e } => gu_linear(k, kind, m, e)?,
        });
    }
    for &m in recipe.parts.minus.parts() {
        blocks.push(minus_torus(k, kind, m)?);
    }
    for &m in recipe.parts.plus.parts() {
        blocks.push(plus_torus(k, kind, m)?);
    }
    if odd_dim && !has_odd {
        let mut q = Mat::zero(1);
        q.set(0, 0, 1);
        blocks.push(Block {
            mat: Mat::identity(1),
            form: FormData::from_quad(k, q, Epsilon::None),
            kind: BlockKind::Pad,
        });
    }
    let total: usize = blocks.iter().map(|b| b.mat.size()).sum();
    if total != spec.dim() {
        return Err(Error::InfeasibleRecipe(format!(
            "blocks fill dimension {total}, {spec} has dimension {}",
            spec.dim()
        )));
    }
    Ok(blocks)
}

fn variants(k: &FieldCtx, b: &Block, orthogonal: bool) -> Result<Vec<Variant>> {
    let bound = gl_bound(k, b.mat.size());
    let minus = k.neg(1);
    let mut mats = vec![b.mat.clone()];
    if b.kind == BlockKind::Semisimple {
        mats.push(b.mat.mul(k, &b.mat));
    }
    if k.p() != 2 {
        let neg: Vec<Mat> = mats.iter().map(|m| m.neg(k)).collect();
        mats.extend(neg);
    }
    let mut out = Vec::new();
    for mat in mats {
        let order = element_order(k, &mat, &bound)?;
        let half_is_minus =
            order.is_even() && mat.pow(k, &(&order / 2u32)).scalar_value() == Some(minus) && mat.size() > 0;
        let inv = if orthogonal && !(k.p() == 2 && mat.size() % 2 == 1) {
            Some(membership_invariant(k, &mat, &b.form)?)
        } else {
            None
        };
        out.push(Variant {
            det: mat.det(k),
            mat,
            order,
            half_is_minus,
            inv,
        });
    }
    Ok(out)
}

/// Change of basis `P` with `Q0(P x) = s·Q(x)` for the standard form `Q` and some scalar `s`
/// (`P^T G0 P = G` for symplectic forms).
fn standardize(k: &FieldCtx, form0: &FormData, target: &FormData, spec: &GroupSpec) -> Result<Mat> {
    let mut f0 = form0.clone();
    for _attempt in 0..2 {
        match standardize_once(k, &f0, target, spec)? {
            Ok(p) => return Ok(p),
            Err(c) => f0 = f0.scaled(k, k.inv(c)?),
        }
    }
    Err(Error::InfeasibleRecipe(
        "could not match the odd-dimensional form".into(),
    ))
}

fn axpy(k: &FieldCtx, y: &mut [FieldElem], a: FieldElem, x: &[FieldElem]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = k.add(*yi, k.mul(a, xi));
    }
}

/// Vectors `Σ c_i basis_i` over all nonzero coefficient tuples on the first `t` basis vectors.
fn combos<'a>(k: &'a FieldCtx, basis: &'a [Vec<FieldElem>], t: usize) -> impl Iterator<Item = Vec<FieldElem>> + 'a {
    let q = k.q() as u64;
    let d = basis[0].len();
    (1..q.pow(t as u32)).map(move |mut idx| {
        let mut v = vec![0; d];
        for b in basis.iter().take(t) {
            axpy(k, &mut v, (idx % q) as FieldElem, b);
            idx /= q;
        }
        v
    })
}

fn standardize_once(
    k: &FieldCtx,
    f0: &FormData,
    target: &FormData,
    spec: &GroupSpec,
) -> Result<std::result::Result<Mat, FieldElem>> {
    let d = f0.dim();
    let n = spec.n as usize;
    let odd = d % 2 == 1;
    let symp = f0.kind == FormKind::Symplectic;
    let pairs = if !symp && !odd && spec.epsilon == Epsilon::Minus {
        n - 1
    } else {
        n
    };
    let mismatch = || Error::InfeasibleRecipe(format!("block forms do not add up to the form of {spec}"));
    let mut u: Vec<Vec<FieldElem>> = (0..d)
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .collect();
    let mut cols = vec![vec![0; d]; d];
    for i in 1..=pairs {
        let mut pair = None;
        'find: for t in 1..=u.len() {
            for v in combos(k, &u, t.min(u.len())) {
                if !symp && f0.quadratic(k, &v) != 0 {
                    continue;
                }
                if let Some(x) = u.iter().find(|x| f0.bilinear(k, &v, x) != 0) {
                    pair = Some((v, x.clone()));
                    break 'find;
                }
            }
            if t >= 4 {
                break;
            }
        }
        let (v, x) = pair.ok_or_else(mismatch)?;
        let c = k.inv(f0.bilinear(k, &v, &x))?;
        let mut w: Vec<FieldElem> = x.iter().map(|&a| k.mul(a, c)).collect();
        if !symp {
            let qw = f0.quadratic(k, &w);
            axpy(k, &mut w, k.neg(qw), &v);
        }
        let proj: Vec<Vec<FieldElem>> = u
            .iter()
            .map(|x| {
                let mut y = x.clone();
                let bxw = f0.bilinear(k, x, &w);
                let bxv = f0.bilinear(k, x, &v);
                axpy(k, &mut y, k.neg(bxw), &v);
                if symp {
                    axpy(k, &mut y, bxv, &w);
                } else {
                    axpy(k, &mut y, k.neg(bxv), &w);
                }
                y
            })
            .collect();
        u = span_basis(k, &proj, d);
        cols[position(n, odd, i as i32)] = v;
        cols[position(n, odd, -(i as i32))] = w;
    }
    if odd {
        if u.len() != 1 {
            return Err(mismatch());
        }
        let c = f0.quadratic(k, &u[0]);
        if c == 0 {
            return Err(mismatch());
        }
        match k.sqrt(c) {
            Some(s) => cols[0] = u[0].iter().map(|&a| k.mul(a, k.inv(s).expect("nonzero"))).collect(),
            None => return Ok(Err(c)),
        }
    } else if pairs < n {
        if u.len() != 2 {
            return Err(mismatch());
        }
        let (ia, ib) = (position(n, false, n as i32), position(n, false, -(n as i32)));
        let (a, b) = (target.quad.get(ia, ib), target.quad.get(ib, ib));
        let plane: Vec<Vec<FieldElem>> = combos(k, &u, 2).collect();
        let g1 = plane.iter().find(|v| f0.quadratic(k, v) == 1).ok_or_else(mismatch)?;
        let g2 = plane
            .iter()
            .find(|v| f0.bilinear(k, g1, v) == a && f0.quadratic(k, v) == b)
            .ok_or_else(mismatch)?;
        cols[ia] = g1.clone();
        cols[ib] = g2.clone();
    } else if !u.is_empty() {
        return Err(mismatch());
    }
    Ok(Ok(Mat::from_columns(&cols)))
}

fn requires_det_one(spec: &GroupSpec) -> bool {
    !matches!(spec.family, Family::Sp | Family::PSp)
}

fn requires_omega(spec: &GroupSpec) -> bool {
    match spec.family {
        Family::OmegaOddDim => spec.p != 2,
        Family::OmegaEvenDim | Family::POmegaEvenDim => true,
        _ => false,
    }
}

/// Builds a matrix in the standard model of `ns.spec` whose (projective) order is `recipe.order`.
pub fn construct_witness(ns: &NormalizedSpec, recipe: &Recipe) -> Result<Witness> {
    let spec = ns.spec;
    let k = FieldCtx::new(spec.p, spec.f)?;
    let target = FormData::standard(&k, &spec)?;
    let blocks = build_blocks(&k, &spec, recipe)?;
    let orthogonal = target.kind == FormKind::Quadratic;
    let proj = is_projective(&spec);
    let vars: Vec<Vec<Variant>> = blocks
        .iter()
        .map(|b| variants(&k, b, orthogonal))
        .collect::<Result<_>>()?;
    let det_one = requires_det_one(&spec);
    let omega = requires_omega(&spec);
    let radices: Vec<usize> = vars.iter().map(Vec::len).collect();
    let total: usize = radices.iter().product();
    let mut chosen = None;
    let mut first_order = None;
    for idx in 0..total {
        let mut rest = idx;
        let pick: Vec<&Variant> = vars
            .iter()
            .map(|vs| {
                let v = &vs[rest % vs.len()];
                rest /= vs.len();
                v
            })
            .collect();
        if det_one && pick.iter().fold(1, |a, v| k.mul(a, v.det)) != 1 {
            continue;
        }
        if omega {
            let inv = pick.iter().filter_map(|v| v.inv).reduce(Invariant::combine);
            if inv.is_some_and(|i| !i.is_trivial()) {
                continue;
            }
        }
        let l = pick.iter().fold(Nat::one(), |a, v| a.lcm(&v.order));
        let order = if proj && l.is_even() && pick.iter().all(|v| v.half_is_minus && (&l / &v.order).is_odd()) {
            &l / 2u32
        } else {
            l
        };
        first_order.get_or_insert_with(|| order.clone());
        if order == recipe.order {
            chosen = Some(pick);
            break;
        }
    }
    let pick = chosen.ok_or_else(|| Error::OrderMismatch {
        claimed: recipe.order.to_string(),
        actual: first_order.map_or_else(|| "none in the group".to_string(), |o| o.to_string()),
    })?;
    let w0 = Mat::block_diag(&pick.iter().map(|v| v.mat.clone()).collect::<Vec<_>>());
    let form0 = FormData::direct_sum(&blocks.iter().map(|b| b.form.clone()).collect::<Vec<_>>());
    let p = standardize(&k, &form0, &target, &spec)?;
    let pi = p
        .inverse(&k)
        .ok_or_else(|| Error::InfeasibleRecipe("singular change of basis".into()))?;
    let w = pi.mul(&k, &w0).mul(&k, &p);
    let order = check(&k, &spec, &target, &w)?;
    if order != recipe.order {
        return Err(Error::OrderMismatch {
            claimed: recipe.order.to_string(),
            actual: order.to_string(),
        });
    }
    Ok(Witness {
        group: spec,
        field: k,
        form: target,
        matrix: w,
        order,
        recipe: recipe.clone(),
        power: Nat::one(),
        source: None,
    })
}

/// Membership and order of a candidate in the standard model.
fn check(k: &FieldCtx, spec: &GroupSpec, form: &FormData, w: &Mat) -> Result<Nat> {
    if !preserves_form(k, w, form)? {
        return Err(Error::InfeasibleRecipe(
            "constructed matrix does not preserve the form".into(),
        ));
    }
    if requires_det_one(spec) && w.det(k) != 1 {
        return Err(Error::InfeasibleRecipe("constructed matrix has determinant -1".into()));
    }
    if requires_omega(spec) && !membership_invariant(k, w, form)?.is_trivial() {
        return Err(Error::InfeasibleRecipe("constructed matrix lies outside Omega".into()));
    }
    projective_order(k, w, &exponent_bound(spec)?, is_projective(spec))
}

/// A witness of order `m`: the identity for 1, else a power of the witness for the smallest
/// generator value divisible by `m`.
pub fn witness_for_order(ns: &NormalizedSpec, m: &Nat) -> Result<Witness> {
    let gens = omega_generators(ns)?;
    let spec = ns.spec;
    if m.is_one() {
        let k = FieldCtx::new(spec.p, spec.f)?;
        return Ok(Witness {
            group: spec,
            form: FormData::standard(&k, &spec)?,
            matrix: Mat::identity(spec.dim()),
            field: k,
            order: Nat::one(),
            recipe: Recipe {
                unipotent: None,
                parts: Default::default(),
                linear: None,
                order: Nat::one(),
            },
            power: Nat::one(),
            source: None,
        });
    }
    let mut last_err = None;
    for g in gens.values.iter().filter(|g| (&g.value % m).is_zero()) {
        match construct_witness(ns, &g.recipe) {
            Ok(w) => {
                let power = &g.value / m;
                let mat = w.matrix.pow(&w.field, &power);
                let order = check(&w.field, &spec, &w.form, &mat)?;
                if &order != m {
                    return Err(Error::OrderMismatch {
                        claimed: m.to_string(),
                        actual: order.to_string(),
                    });
                }
                return Ok(Witness {
                    matrix: mat,
                    order,
                    power,
                    source: Some(format!("{} {}", g.item, g.detail).trim_end().to_string()),
                    ..w
                });
            }
            Err(e) => {
                if !matches!(last_err, Some(Error::OrderMismatch { .. })) {
                    last_err = Some(e);
                }
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::InfeasibleRecipe(format!("{m} is not an element order of {}", ns.original))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::SignedPartitionPair;
    use crate::groups::normalize;

    fn ns(f: Family, n: u32, q: u64, e: Epsilon) -> NormalizedSpec {
        normalize(&GroupSpec::new(f, n, q, e).unwrap()).unwrap()
    }

    fn recipe(ns: &NormalizedSpec, k: u32, minus: Vec<u32>, plus: Vec<u32>) -> Recipe {
        Recipe::from_parts(ns, k, SignedPartitionPair::new(minus, plus).unwrap(), 1).unwrap()
    }

    #[test]
    fn sp43_examples() {
        let s = ns(Family::Sp, 2, 3, Epsilon::None);
        let w = construct_witness(&s, &recipe(&s, 2, vec![], vec![])).unwrap();
        assert_eq!(w.order, nat(9));
        let minus = w.matrix.neg(&w.field);
        let b = exponent_bound(&s.spec).unwrap();
        assert_eq!(element_order(&w.field, &minus, &b).unwrap(), nat(18));
        // projectively the same element has order 9 in PSp_4(3)
        assert_eq!(projective_order(&w.field, &minus, &b, true).unwrap(), nat(9));
        let w = construct_witness(&s, &recipe(&s, 1, vec![1], vec![])).unwrap();
        assert_eq!(w.order, nat(6));
    }

    #[test]
    fn sp63_plus_part() {
        let s = ns(Family::Sp, 3, 3, Epsilon::None);
        let w = construct_witness(&s, &recipe(&s, 1, vec![], vec![2])).unwrap();
        assert_eq!(w.order, nat(30));
        assert_eq!(w.matrix.size(), 6);
        assert!(preserves_form(&w.field, &w.matrix, &FormData::symplectic(&w.field, 3)).unwrap());
    }

    #[test]
    fn budget_violation() {
        let s = ns(Family::Sp, 2, 3, Epsilon::None);
        let r = recipe(&s, 2, vec![1], vec![]);
        assert!(matches!(construct_witness(&s, &r), Err(Error::InfeasibleRecipe(_))));
    }

    #[test]
    fn divisors_and_identity() {
        let s = ns(Family::Sp, 2, 3, Epsilon::None);
        assert!(witness_for_order(&s, &nat(1)).unwrap().matrix.is_identity());
        assert_eq!(witness_for_order(&s, &nat(18)).unwrap().order, nat(18));
        assert_eq!(witness_for_order(&s, &nat(4)).unwrap().order, nat(4));
        assert!(matches!(
            witness_for_order(&s, &nat(7)),
            Err(Error::InfeasibleRecipe(_))
        ));
    }

    #[test]
    fn every_generator_of_small_groups() {
        let cases = [
            (Family::Sp, 2, 3, Epsilon::None),
            (Family::PSp, 2, 3, Epsilon::None),
            (Family::Sp, 2, 2, Epsilon::None),
            (Family::SoOddDim, 2, 3, Epsilon::None),
            (Family::OmegaOddDim, 3, 3, Epsilon::None),
            (Family::OmegaEvenDim, 4, 2, Epsilon::Plus),
            (Family::OmegaEvenDim, 4, 2, Epsilon::Minus),
            (Family::OmegaEvenDim, 4, 3, Epsilon::Plus),
            (Family::OmegaEvenDim, 4, 3, Epsilon::Minus),
            (Family::SoEvenDim, 4, 3, Epsilon::Plus),
            (Family::SoEvenDim, 4, 3, Epsilon::Minus),
            (Family::POmegaEvenDim, 4, 3, Epsilon::Plus),
        ];
        for (f, n, q, e) in cases {
            let s = ns(f, n, q, e);
            let gens = omega_generators(&s).unwrap().values;
            for g in &gens {
                // some recipe listed for the value has to be realizable
                let errs: Vec<String> = gens
                    .iter()
                    .filter(|h| h.value == g.value)
                    .map(|h| match construct_witness(&s, &h.recipe) {
                        Ok(w) => {
                            assert_eq!(w.order, g.value);
                            String::new()
                        }
                        Err(e) => format!("{} {}: {e}", h.item, h.detail),
                    })
                    .collect();
                assert!(errs.iter().any(String::is_empty), "{}: {errs:?}", s.spec);
            }
        }
    }
}
