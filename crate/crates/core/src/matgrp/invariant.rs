use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};

use super::forms::{preserves_form, FormData, FormKind};
use super::mat::{span_basis, Mat};

/// Spinor norm class (odd q) or Dickson invariant (even q) of an isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Invariant {
    /// `square` is true for the trivial class.
    SpinorNorm {
        square: bool,
    },
    Dickson(u8),
}

impl Invariant {
    pub fn is_trivial(self) -> bool {
        matches!(self, Invariant::SpinorNorm { square: true } | Invariant::Dickson(0))
    }

    /// Invariant of a product.
    pub fn combine(self, other: Invariant) -> Invariant {
        match (self, other) {
            (Invariant::SpinorNorm { square: a }, Invariant::SpinorNorm { square: b }) => {
                Invariant::SpinorNorm { square: a == b }
            }
            (Invariant::Dickson(a), Invariant::Dickson(b)) => Invariant::Dickson(a ^ b),
            _ => panic!("mixed invariants"),
        }
    }
}

/// The reflection `x -> x - B(x,v)/Q(v) v`.
pub fn reflection(k: &FieldCtx, form: &FormData, v: &[FieldElem]) -> Result<Mat> {
    let qv = form.quadratic(k, v);
    let c = k
        .inv(qv)
        .map_err(|_| Error::InvalidArgument("reflection in a singular vector".into()))?;
    let gv = form.gram.mul_vec(k, v);
    let d = v.len();
    let mut m = Mat::identity(d);
    for i in 0..d {
        for j in 0..d {
            let t = k.mul(c, k.mul(v[i], gv[j]));
            m.set(i, j, k.sub(m.get(i, j), t));
        }
    }
    Ok(m)
}

/// Spinor norm class from the Wall form discriminant (odd q), or `rank(M + I) mod 2` (even q).
pub fn membership_invariant(k: &FieldCtx, m: &Mat, form: &FormData) -> Result<Invariant> {
    if form.kind != FormKind::Quadratic || !preserves_form(k, m, form)? {
        return Err(Error::NotOrthogonal);
    }
    let d = m.size();
    if k.p() == 2 {
        if d % 2 == 1 {
            // the odd-dimensional orthogonal group is its own Ω in characteristic 2
            return Ok(Invariant::Dickson(0));
        }
        let r = m.add(k, &Mat::identity(d)).rank(k);
        return Ok(Invariant::Dickson((r % 2) as u8));
    }
    // discriminant of the Wall form chi((1-g)x, (1-g)y) = B((1-g)x, y) on im(1-g)
    let a = Mat::identity(d).sub(k, m);
    let mut basis: Vec<Vec<FieldElem>> = Vec::new();
    let mut picked = Vec::new();
    for j in 0..d {
        let mut trial = basis.clone();
        trial.push(a.column(j));
        if span_basis(k, &trial, d).len() > basis.len() {
            basis = trial;
            picked.push(j);
        }
    }
    let r = picked.len();
    let mut chi = Mat::zero(r);
    for (i, u) in basis.iter().enumerate() {
        let gu = form.gram.transpose().mul_vec(k, u);
        for (j, &c) in picked.iter().enumerate() {
            chi.set(i, j, gu[c]);
        }
    }
    let disc = if r == 0 { 1 } else { chi.det(k) };
    Ok(Invariant::SpinorNorm {
        square: k.is_square(disc),
    })
}
