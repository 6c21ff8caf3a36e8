use crate::error::{Error, Result};
use crate::gf::{smallest_irreducible, FieldCtx, FieldElem};
use crate::groups::{Epsilon, Family, GroupSpec};

use super::mat::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Symplectic,
    Quadratic,
}

/// A nondegenerate alternating form, or a quadratic form given by the upper-triangular
/// coefficient matrix `quad` with `Q(x) = Σ_{i<=j} quad[i][j] x_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormData {
    pub kind: FormKind,
    /// Bilinear form: the alternating form itself, or the polar form of `Q`.
    pub gram: Mat,
    /// Zero for symplectic forms.
    pub quad: Mat,
    pub epsilon: Epsilon,
}

/// Row/column position of the basis label `i` in `0, 1, …, n, -1, …, -n`
/// (with 0 present only for odd dimension).
pub fn position(n: usize, odd: bool, label: i32) -> usize {
    let a = label.unsigned_abs() as usize;
    match (odd, label.signum()) {
        (true, 0) => 0,
        (true, 1) => a,
        (true, _) => n + a,
        (false, 0) => panic!("label 0 in even dimension"),
        (false, 1) => a - 1,
        (false, _) => n + a - 1,
    }
}

/// Coefficients `(a, b)` of the smallest irreducible `x^2 + a x + b` over the field.
pub fn anisotropic_coefficients(k: &FieldCtx) -> (FieldElem, FieldElem) {
    let g = smallest_irreducible(k, 2);
    (g[1], g[0])
}

impl FormData {
    pub fn symplectic(k: &FieldCtx, n: usize) -> FormData {
        let mut g = Mat::zero(2 * n);
        for i in 1..=n as i32 {
            g.set(position(n, false, i), position(n, false, -i), 1);
            g.set(position(n, false, -i), position(n, false, i), k.neg(1));
        }
        FormData {
            kind: FormKind::Symplectic,
            quad: Mat::zero(2 * n),
            gram: g,
            epsilon: Epsilon::None,
        }
    }

    pub fn from_quad(k: &FieldCtx, quad: Mat, epsilon: Epsilon) -> FormData {
        let gram = quad.add(k, &quad.transpose());
        FormData {
            kind: FormKind::Quadratic,
            gram,
            quad,
            epsilon,
        }
    }

    fn hyperbolic_quad(n: usize, odd: bool) -> Mat {
        let d = 2 * n + odd as usize;
        let mut m = Mat::zero(d);
        if odd {
            m.set(0, 0, 1);
        }
        for i in 1..=n as i32 {
            m.set(position(n, odd, i), position(n, odd, -i), 1);
        }
        m
    }

    /// `x_0^2 + Σ x_i x_{-i}`.
    pub fn odd_quadratic(k: &FieldCtx, n: usize) -> FormData {
        FormData::from_quad(k, FormData::hyperbolic_quad(n, true), Epsilon::None)
    }

    /// Split form `Σ x_i x_{-i}`, or for ε = − the last pair replaced by
    /// `x_n^2 + a x_n x_{-n} + b x_{-n}^2` with `x^2 + a x + b` irreducible.
    pub fn even_quadratic(k: &FieldCtx, n: usize, epsilon: Epsilon) -> Result<FormData> {
        let mut m = FormData::hyperbolic_quad(n, false);
        match epsilon {
            Epsilon::Plus => {}
            Epsilon::Minus => {
                if n == 0 {
                    return Err(Error::InvalidArgument("minus form needs n >= 1".into()));
                }
                let (a, b) = anisotropic_coefficients(k);
                let (i, j) = (position(n, false, n as i32), position(n, false, -(n as i32)));
                m.set(i, i, 1);
                m.set(i, j, a);
                m.set(j, j, b);
            }
            Epsilon::None => return Err(Error::InvalidEpsilon("even-dimensional form needs + or -".into())),
        }
        Ok(FormData::from_quad(k, m, epsilon))
    }

    /// The form preserved by the standard realization of `spec`.
    pub fn standard(k: &FieldCtx, spec: &GroupSpec) -> Result<FormData> {
        let n = spec.n as usize;
        match spec.family {
            Family::Sp | Family::PSp => Ok(FormData::symplectic(k, n)),
            Family::SoOddDim | Family::OmegaOddDim => Ok(FormData::odd_quadratic(k, n)),
            _ => FormData::even_quadratic(k, n, spec.epsilon),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.size()
    }

    pub fn quad_diag(&self) -> Vec<FieldElem> {
        (0..self.dim()).map(|i| self.quad.get(i, i)).collect()
    }

    pub fn bilinear(&self, k: &FieldCtx, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        let gv = self.gram.mul_vec(k, v);
        u.iter().zip(&gv).fold(0, |a, (&x, &y)| k.add(a, k.mul(x, y)))
    }

    /// `Q(v)`; zero for symplectic forms.
    pub fn quadratic(&self, k: &FieldCtx, v: &[FieldElem]) -> FieldElem {
        quad_value(k, &self.quad, v)
    }

    /// Orthogonal direct sum, blocks in order.
    pub fn direct_sum(forms: &[FormData]) -> FormData {
        let kind = forms[0].kind;
        let gram = Mat::block_diag(&forms.iter().map(|f| f.gram.clone()).collect::<Vec<_>>());
        let quad = Mat::block_diag(&forms.iter().map(|f| f.quad.clone()).collect::<Vec<_>>());
        FormData {
            kind,
            gram,
            quad,
            epsilon: Epsilon::None,
        }
    }

    pub fn scaled(&self, k: &FieldCtx, c: FieldElem) -> FormData {
        FormData {
            kind: self.kind,
            gram: self.gram.scale(k, c),
            quad: self.quad.scale(k, c),
            epsilon: self.epsilon,
        }
    }
}

pub(crate) fn quad_value(k: &FieldCtx, quad: &Mat, v: &[FieldElem]) -> FieldElem {
    let n = quad.size();
    let mut acc = 0;
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        let mut row = 0;
        for j in i..n {
            let c = quad.get(i, j);
            if c != 0 && v[j] != 0 {
                row = k.add(row, k.mul(c, v[j]));
            }
        }
        acc = k.add(acc, k.mul(v[i], row));
    }
    acc
}

/// Whether `m` is an isometry of `form`.
pub fn preserves_form(k: &FieldCtx, m: &Mat, form: &FormData) -> Result<bool> {
    if m.size() != form.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix {} vs form {}",
            m.size(),
            form.dim()
        )));
    }
    if m.transpose().mul(k, &form.gram).mul(k, m) != form.gram {
        return Ok(false);
    }
    if form.kind == FormKind::Quadratic {
        // with the polar form preserved, Q on a basis pins Q everywhere
        for j in 0..m.size() {
            if quad_value(k, &form.quad, &m.column(j)) != form.quad.get(j, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
