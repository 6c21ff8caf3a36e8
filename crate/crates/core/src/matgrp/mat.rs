use std::fmt;

use crate::exactmath::Nat;
use crate::gf::{FieldCtx, FieldElem};

/// Square matrix over GF(q), row-major. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    e: Vec<FieldElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, e: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.e[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: FieldElem) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.e[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, e: rows.concat() }
    }

    pub fn from_columns(cols: &[Vec<FieldElem>]) -> Self {
        Mat::from_rows(cols).transpose()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.e[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.e[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.e[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.e
    }

    pub fn rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.e[j * self.n + i] = self.e[i * self.n + j];
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<FieldElem> {
        let c = self.e.first().copied().unwrap_or(1);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { c } else { 0 };
                if self.e[i * self.n + j] != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn mul(&self, k: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Mat::zero(n);
        if k.f() == 1 {
            let p = k.p() as u64;
            let mut acc = vec![0u64; n];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for l in 0..n {
                    let a = self.e[i * n + l] as u64;
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.e[l * n..(l + 1) * n];
                    for (x, &b) in acc.iter_mut().zip(brow) {
                        *x += a * b as u64;
                    }
                }
                for j in 0..n {
                    out.e[i * n + j] = (acc[j] % p) as FieldElem;
                }
            }
        } else {
            for i in 0..n {
                for l in 0..n {
                    let a = self.e[i * n + l];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let b = other.e[l * n + j];
                        if b != 0 {
                            out.e[i * n + j] = k.add(out.e[i * n + j], k.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: &FieldCtx, v: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, k: &FieldCtx, other: &Mat) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, k: &FieldCtx, other: &Mat) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, k: &FieldCtx, c: FieldElem) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(|&a| k.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, k: &FieldCtx) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(|&a| k.neg(a)).collect(),
        }
    }

    pub fn pow(&self, k: &FieldCtx, e: &Nat) -> Mat {
        let mut r = Mat::identity(self.n);
        for i in (0..e.bits()).rev() {
            r = r.mul(k, &r);
            if e.bit(i) {
                r = r.mul(k, self);
            }
        }
        r
    }

    pub fn pow_u64(&self, k: &FieldCtx, e: u64) -> Mat {
        self.pow(k, &Nat::from(e))
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self, k: &FieldCtx, cols: usize, rows: usize, width: usize) -> Vec<usize> {
        // operates on a rows x width row-major buffer stored in self.e
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| self.e[i * width + c] != 0) else {
                continue;
            };
            for j in 0..width {
                self.e.swap(r * width + j, pr * width + j);
            }
            let inv = k.inv(self.e[r * width + c]).expect("nonzero pivot");
            for j in 0..width {
                self.e[r * width + j] = k.mul(self.e[r * width + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.e[i * width + c];
                if f == 0 {
                    continue;
                }
                for j in 0..width {
                    let v = k.mul(f, self.e[r * width + j]);
                    self.e[i * width + j] = k.sub(self.e[i * width + j], v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self, k: &FieldCtx) -> usize {
        let mut m = self.clone();
        m.rref(k, self.n, self.n, self.n).len()
    }

    pub fn inverse(&self, k: &FieldCtx) -> Option<Mat> {
        let n = self.n;
        let w = 2 * n;
        let mut aug = Mat { n, e: vec![0; n * w] };
        for i in 0..n {
            for j in 0..n {
                aug.e[i * w + j] = self.get(i, j);
            }
            aug.e[i * w + n + i] = 1;
        }
        let piv = aug.rref(k, n, n, w);
        if piv.len() < n {
            return None;
        }
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.e[i * n + j] = aug.e[i * w + n + j];
            }
        }
        Some(out)
    }

    pub fn det(&self, k: &FieldCtx) -> FieldElem {
        let n = self.n;
        let mut a = self.e.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    a.swap(c * n + j, pr * n + j);
                }
                det = k.neg(det);
            }
            let piv = a[c * n + c];
            det = k.mul(det, piv);
            let inv = k.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                let f = k.mul(a[i * n + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = k.mul(f, a[c * n + j]);
                    a[i * n + j] = k.sub(a[i * n + j], v);
                }
            }
        }
        det
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n = blocks.iter().map(Mat::size).sum();
        let mut m = Mat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    /// Companion matrix of a monic polynomial (lowest degree first): ones below the diagonal,
    /// last column `-a_0, …, -a_{d-1}`.
    pub fn companion(k: &FieldCtx, poly: &[FieldElem]) -> Mat {
        let d = poly.len() - 1;
        let mut m = Mat::zero(d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, k.neg(poly[i]));
        }
        m
    }

    /// `g^{-1} self g`.
    pub fn conj(&self, k: &FieldCtx, g: &Mat, g_inv: &Mat) -> Mat {
        g_inv.mul(k, self).mul(k, g)
    }
}

/// Basis of the null space {x : A x = 0} of a rows x cols matrix.
pub fn null_space(k: &FieldCtx, a: &[Vec<FieldElem>], cols: usize) -> Vec<Vec<FieldElem>> {
    let rows = a.len();
    let mut m = Mat { n: 0, e: a.concat() };
    let piv = if rows == 0 {
        Vec::new()
    } else {
        m.rref(k, cols, rows, cols)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = k.neg(m.e[r * cols + fc]);
            }
            v
        })
        .collect()
}

/// Basis of the span of `vectors` (reduced echelon rows).
pub fn span_basis(k: &FieldCtx, vectors: &[Vec<FieldElem>], dim: usize) -> Vec<Vec<FieldElem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows = vectors.len();
    let mut m = Mat {
        n: 0,
        e: vectors.concat(),
    };
    let piv = m.rref(k, dim, rows, dim);
    (0..piv.len()).map(|r| m.e[r * dim..(r + 1) * dim].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use proptest::prelude::*;

    fn rand_mat(k: &FieldCtx, n: usize, seed: &[u16]) -> Mat {
        let q = k.q() as u16;
        let rows: Vec<Vec<u16>> = (0..n)
            .map(|i| (0..n).map(|j| seed[(i * n + j) % seed.len()] % q).collect())
            .collect();
        Mat::from_rows(&rows)
    }

    proptest! {
        #[test]
        fn inverse_and_det(seed in prop::collection::vec(any::<u16>(), 16), fi in 0usize..3) {
            let k = [FieldCtx::new(3, 1).unwrap(), FieldCtx::new(2, 2).unwrap(), FieldCtx::new(5, 1).unwrap()][fi].clone();
            let a = rand_mat(&k, 4, &seed);
            let d = a.det(&k);
            match a.inverse(&k) {
                Some(inv) => {
                    prop_assert!(a.mul(&k, &inv).is_identity());
                    prop_assert!(d != 0);
                    prop_assert_eq!(a.rank(&k), 4);
                }
                None => {
                    prop_assert_eq!(d, 0);
                    prop_assert!(a.rank(&k) < 4);
                }
            }
            let b = rand_mat(&k, 4, &seed[3..]);
            prop_assert_eq!(a.mul(&k, &b).det(&k), k.mul(d, b.det(&k)));
        }

        #[test]
        fn null_space_is_kernel(seed in prop::collection::vec(any::<u16>(), 12)) {
            let k = FieldCtx::new(3, 1).unwrap();
            let rows: Vec<Vec<u16>> = (0..3).map(|i| (0..4).map(|j| seed[i * 4 + j] % 3).collect()).collect();
            let ns = null_space(&k, &rows, 4);
            let m = Mat::from_rows(&[rows[0].clone(), rows[1].clone(), rows[2].clone(), vec![0; 4]]);
            prop_assert_eq!(ns.len(), 4 - m.rank(&k));
            for v in ns {
                prop_assert!(m.mul_vec(&k, &v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn companion_order_matches_field_element() {
        use crate::exactmath::nat;
        use crate::gf::{element_of_order, min_poly};
        let k = FieldCtx::new(3, 1).unwrap();
        let (ext, l) = element_of_order(&k, &nat(8)).unwrap();
        let c = Mat::companion(&k, &min_poly(&ext, &l).unwrap());
        let mut x = c.clone();
        let mut t = 1;
        while !x.is_identity() {
            x = x.mul(&k, &c);
            t += 1;
        }
        assert_eq!(t, 8);
    }
}
