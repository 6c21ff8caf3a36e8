use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::spectrum::LieType;

use super::forms::{position, FormData};
use super::mat::Mat;

/// A root written in the coordinates `e_1, …, e_rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootLabel {
    /// `e_i - e_j`
    Diff(u32, u32),
    /// `e_i + e_j`
    Sum(u32, u32),
    /// `-e_i - e_j`
    NegSum(u32, u32),
    /// `±e_i`, type B
    Short(u32, bool),
    /// `±2e_i`, type C
    Long(u32, bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSpec {
    pub lie: LieType,
    pub rank: u32,
    pub label: RootLabel,
}

impl RootSpec {
    pub fn new(lie: LieType, rank: u32, label: RootLabel) -> Result<RootSpec> {
        let r = RootSpec { lie, rank, label };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let ok_idx = |i: u32| (1..=self.rank).contains(&i);
        let ok = match self.label {
            RootLabel::Diff(i, j) | RootLabel::Sum(i, j) | RootLabel::NegSum(i, j) => ok_idx(i) && ok_idx(j) && i != j,
            RootLabel::Short(i, _) => self.lie == LieType::B && ok_idx(i),
            RootLabel::Long(i, _) => self.lie == LieType::C && ok_idx(i),
        };
        if !ok || self.rank == 0 || (self.lie == LieType::D && self.rank < 2) {
            return Err(Error::InvalidRoot(format!(
                "{:?} in {:?}_{}",
                self.label, self.lie, self.rank
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        2 * self.rank as usize + (self.lie == LieType::B) as usize
    }
}

/// The root element `u_r(t)`.
pub fn root_element(k: &FieldCtx, r: &RootSpec, t: FieldElem) -> Result<Mat> {
    r.validate()?;
    let n = r.rank as usize;
    let odd = r.lie == LieType::B;
    let at = |l: i32| position(n, odd, l);
    let mut m = Mat::identity(r.dim());
    let put = |m: &mut Mat, a: i32, b: i32, v: FieldElem| {
        let (i, j) = (at(a), at(b));
        m.set(i, j, k.add(m.get(i, j), v));
    };
    let nt = k.neg(t);
    let (i, j) = match r.label {
        RootLabel::Diff(i, j) | RootLabel::Sum(i, j) | RootLabel::NegSum(i, j) => (i as i32, j as i32),
        RootLabel::Short(i, _) | RootLabel::Long(i, _) => (i as i32, 0),
    };
    match (r.lie, r.label) {
        (_, RootLabel::Diff(..)) => {
            put(&mut m, i, j, t);
            put(&mut m, -j, -i, nt);
        }
        (LieType::C, RootLabel::Sum(..)) => {
            put(&mut m, i, -j, t);
            put(&mut m, j, -i, t);
        }
        (LieType::C, RootLabel::NegSum(..)) => {
            put(&mut m, -i, j, t);
            put(&mut m, -j, i, t);
        }
        (_, RootLabel::Sum(..)) => {
            put(&mut m, i, -j, t);
            put(&mut m, j, -i, nt);
        }
        (_, RootLabel::NegSum(..)) => {
            put(&mut m, -j, i, t);
            put(&mut m, -i, j, nt);
        }
        (_, RootLabel::Long(_, plus)) => {
            if plus {
                put(&mut m, i, -i, t);
            } else {
                put(&mut m, -i, i, t);
            }
        }
        (_, RootLabel::Short(_, plus)) => {
            // the same expression covers p = 2, where the 2E term vanishes
            let two_t = k.mul(k.from_int(2), t);
            let t2 = k.neg(k.mul(t, t));
            let s = if plus { 1 } else { -1 };
            put(&mut m, s * i, 0, if plus { two_t } else { k.neg(two_t) });
            put(&mut m, 0, -s * i, if plus { nt } else { t });
            put(&mut m, s * i, -s * i, t2);
        }
    }
    Ok(m)
}

/// The Eichler transformation `x -> x + B(x,u)w - B(x,w)u - Q(w)B(x,u)u`
/// for singular `u` and `w ⟂ u`.
pub fn eichler(k: &FieldCtx, form: &FormData, u: &[FieldElem], w: &[FieldElem]) -> Mat {
    let d = form.dim();
    let qw = form.quadratic(k, w);
    let cols: Vec<Vec<FieldElem>> = (0..d)
        .map(|c| {
            let mut x = vec![0; d];
            x[c] = 1;
            let bxu = form.bilinear(k, &x, u);
            let bxw = form.bilinear(k, &x, w);
            let cu = k.sub(k.neg(bxw), k.mul(qw, bxu));
            (0..d)
                .map(|r| k.add(k.add(x[r], k.mul(bxu, w[r])), k.mul(cu, u[r])))
                .collect()
        })
        .collect();
    Mat::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Epsilon;
    use crate::matgrp::forms::preserves_form;

    fn all_roots(lie: LieType, rank: u32) -> Vec<RootSpec> {
        let mut out = Vec::new();
        for i in 1..=rank {
            for j in 1..=rank {
                if i != j {
                    out.push(RootLabel::Diff(i, j));
                    if i < j {
                        out.push(RootLabel::Sum(i, j));
                        out.push(RootLabel::NegSum(i, j));
                    }
                }
            }
            for s in [true, false] {
                match lie {
                    LieType::B => out.push(RootLabel::Short(i, s)),
                    LieType::C => out.push(RootLabel::Long(i, s)),
                    LieType::D => {}
                }
            }
        }
        out.into_iter().map(|l| RootSpec::new(lie, rank, l).unwrap()).collect()
    }

    fn form(k: &FieldCtx, lie: LieType, rank: usize) -> FormData {
        match lie {
            LieType::C => FormData::symplectic(k, rank),
            LieType::B => FormData::odd_quadratic(k, rank),
            LieType::D => FormData::even_quadratic(k, rank, Epsilon::Plus).unwrap(),
        }
    }

    #[test]
    fn every_root_element_is_an_isometry() {
        for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let k = FieldCtx::new(p, f).unwrap();
            for lie in [LieType::B, LieType::C, LieType::D] {
                for rank in 2..=3 {
                    let fm = form(&k, lie, rank as usize);
                    for r in all_roots(lie, rank) {
                        for t in k.elements() {
                            let m = root_element(&k, &r, t).unwrap();
                            assert!(preserves_form(&k, &m, &fm).unwrap(), "{r:?} t={t} q={}", k.q());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn root_examples() {
        let k = FieldCtx::new(3, 1).unwrap();
        let r = RootSpec::new(LieType::C, 2, RootLabel::Long(1, true)).unwrap();
        let m = root_element(&k, &r, 1).unwrap();
        let mut want = Mat::identity(4);
        want.set(0, 2, 1);
        assert_eq!(m, want);
        assert!(root_element(&k, &r, 0).unwrap().is_identity());

        // B_2, e_1, t = 1: I + (2E_{1,0} - E_{0,-1}) - E_{1,-1}, rows 0,1,2,-1,-2
        let r = RootSpec::new(LieType::B, 2, RootLabel::Short(1, true)).unwrap();
        let m = root_element(&k, &r, 1).unwrap();
        let mut want = Mat::identity(5);
        want.set(1, 0, 2);
        want.set(0, 3, 2);
        want.set(1, 3, 2);
        assert_eq!(m, want);

        assert!(RootSpec::new(LieType::D, 2, RootLabel::Short(1, true)).is_err());
        assert!(RootSpec::new(LieType::C, 2, RootLabel::Diff(1, 3)).is_err());
    }

    #[test]
    fn root_elements_are_additive() {
        let k = FieldCtx::new(2, 2).unwrap();
        for lie in [LieType::B, LieType::C, LieType::D] {
            for r in all_roots(lie, 2) {
                for a in k.elements() {
                    for b in k.elements() {
                        let x = root_element(&k, &r, a)
                            .unwrap()
                            .mul(&k, &root_element(&k, &r, b).unwrap());
                        assert_eq!(x, root_element(&k, &r, k.add(a, b)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn eichler_on_minus_form() {
        for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let k = FieldCtx::new(p, f).unwrap();
            let fm = FormData::even_quadratic(&k, 3, Epsilon::Minus).unwrap();
            let e = |l: i32| {
                let mut v = vec![0; 6];
                v[position(3, false, l)] = 1;
                v
            };
            for u in [1, -1, 2, -2] {
                for w in [3, -3] {
                    let m = eichler(&k, &fm, &e(u), &e(w));
                    assert!(preserves_form(&k, &m, &fm).unwrap());
                    assert!(!m.is_identity());
                }
            }
        }
    }
}
