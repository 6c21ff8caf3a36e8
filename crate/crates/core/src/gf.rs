//! Arithmetic in GF(p^f) and in extensions GF(q^e) built over GF(q).
//!
//! An element of GF(p^f) is stored as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! where `c_0 + c_1 x + ...` is its residue modulo the defining polynomial.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factor_u64, is_prime, nat, Nat};

pub type FieldElem = u16;

/// Coefficients over some field, lowest degree first.
pub type Poly = Vec<FieldElem>;

const MAX_FIELD: u64 = 1 << 16;

struct Inner {
    p: u32,
    f: u32,
    q: u32,
    modulus: Poly,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.f())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.f() == other.f()
    }
}

impl Eq for FieldCtx {}

fn digits(mut v: u32, p: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldCtx {
    /// GF(p^f) defined by the lexicographically smallest monic irreducible of degree f.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidArgument("field degree 0".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD)
            .ok_or_else(|| Error::InvalidArgument(format!("field {p}^{f} exceeds 2^16 elements")))?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            let prime = FieldCtx::new(p as u64, 1)?;
            smallest_irreducible(&prime, f)
        };
        // raw multiplication by schoolbook product and reduction mod the modulus
        let raw_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, f), digits(b, p, f));
            let mut prod = vec![0u32; 2 * f as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (f as usize..prod.len()).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                for (k, &m) in modulus.iter().enumerate().take(f as usize) {
                    let idx = deg - f as usize + k;
                    prod[idx] = (prod[idx] + (p - c) * m as u32) % p;
                }
                prod[deg] = 0;
            }
            undigits(&prod[..f as usize], p)
        };
        let raw_pow = |a: u32, mut e: u64| -> u32 {
            let (mut r, mut b) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    r = raw_mul(r, b);
                }
                b = raw_mul(b, b);
                e >>= 1;
            }
            r
        };
        let order = (q - 1) as u64;
        let primes: Vec<u64> = factor_u64(order).into_keys().collect();
        let gen = (1..q)
            .find(|&g| primes.iter().all(|r| raw_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u16; 2 * (q as usize - 1)];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = x as u16;
            exp[i + q as usize - 1] = x as u16;
            log[x as usize] = i as u16;
            x = raw_mul(x, gen);
        }
        let raw_add = |a: u32, b: u32| -> u32 {
            if p == 2 {
                a ^ b
            } else if f == 1 {
                (a + b) % p
            } else {
                let (da, db) = (digits(a, p, f), digits(b, p, f));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                undigits(&s, p)
            }
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, f).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p) as u16
            })
            .collect();
        let add = (q <= 256 && p != 2).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = raw_add(a, b) as u16;
                }
            }
            t
        });
        Ok(FieldCtx {
            inner: Arc::new(Inner {
                p,
                f,
                q,
                modulus,
                exp,
                log,
                add,
                neg,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn f(&self) -> u32 {
        self.inner.f
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial over GF(p), lowest degree first.
    pub fn modulus(&self) -> &[FieldElem] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElem {
        0
    }

    pub fn one(&self) -> FieldElem {
        1
    }

    /// The prime-field element `v mod p`.
    pub fn from_int(&self, v: i64) -> FieldElem {
        v.rem_euclid(self.inner.p as i64) as FieldElem
    }

    /// The multiplicative generator used for the log tables.
    pub fn generator(&self) -> FieldElem {
        self.inner.exp[1]
    }

    /// `x^i` for i < f: a basis of GF(q) over GF(p).
    pub fn prime_basis(&self) -> Vec<FieldElem> {
        (0..self.f()).map(|i| self.p().pow(i) as FieldElem).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q()).map(|x| x as FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let i = &self.inner;
        if i.p == 2 {
            return a ^ b;
        }
        if i.f == 1 {
            let s = a as u32 + b as u32;
            return if s >= i.p { (s - i.p) as u16 } else { s as u16 };
        }
        if let Some(t) = &i.add {
            return t[a as usize * i.q as usize + b as usize];
        }
        let (mut x, mut y, mut out, mut scale) = (a as u32, b as u32, 0u32, 1u32);
        for _ in 0..i.f {
            out += ((x % i.p + y % i.p) % i.p) * scale;
            x /= i.p;
            y /= i.p;
            scale *= i.p;
        }
        out as u16
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = &self.inner;
        if i.f == 1 {
            return ((a as u32 * b as u32) % i.p) as u16;
        }
        i.exp[i.log[a as usize] as usize + i.log[b as usize] as usize]
    }

    /// Discrete log to the table generator; `None` for 0.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize] as u32)
    }

    pub fn exp(&self, k: u64) -> FieldElem {
        self.inner.exp[(k % (self.q() as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let l = self.inner.log[a as usize] as u64;
        Ok(self.exp(self.q() as u64 - 1 - l))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.inner.log[a as usize] as u128;
        self.exp(((l * e as u128) % (self.q() as u128 - 1)) as u64)
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.p() as u64)
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        a == 0 || self.p() == 2 || self.inner.log[a as usize].is_multiple_of(2)
    }

    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if a == 0 {
            return Some(0);
        }
        let l = self.inner.log[a as usize] as u64;
        let m = self.q() as u64 - 1;
        if self.p() == 2 {
            // q - 1 is odd, halve modulo it
            return Some(self.exp(l * m.div_ceil(2) % m));
        }
        l.is_multiple_of(2).then(|| self.exp(l / 2))
    }

    pub fn elem_order(&self, a: FieldElem) -> Result<u64> {
        if a == 0 {
            return Err(Error::InvalidArgument("order of zero".into()));
        }
        let m = self.q() as u64 - 1;
        let l = self.inner.log[a as usize] as u64;
        Ok(m / l.gcd(&m))
    }
}

pub fn field_make(p: u64, f: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, f)
}

// Polynomials over a FieldCtx.

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_mul(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(out)
}

pub fn poly_rem(k: &FieldCtx, a: &[FieldElem], m: &[FieldElem]) -> Poly {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = k.inv(m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let d = r.len() - 1;
        let c = k.mul(r[d], lead_inv);
        for (i, &mi) in m.iter().enumerate() {
            let idx = d - dm + i;
            r[idx] = k.sub(r[idx], k.mul(c, mi));
        }
        r = trim(r);
    }
    r
}

fn poly_sub(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn poly_gcd(k: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(k, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = k.inv(lead).expect("nonzero");
        a.iter_mut().for_each(|c| *c = k.mul(*c, inv));
    }
    a
}

fn poly_powmod(k: &FieldCtx, base: &[FieldElem], mut e: u64, m: &[FieldElem]) -> Poly {
    let mut r: Poly = vec![1];
    let mut b = poly_rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_rem(k, &poly_mul(k, &r, &b), m);
        }
        b = poly_rem(k, &poly_mul(k, &b, &b), m);
        e >>= 1;
    }
    r
}

/// Irreducibility of a monic polynomial over `k` via gcd(x^{Q^i} - x, g) = 1 for i ≤ deg/2.
pub fn is_irreducible(k: &FieldCtx, g: &[FieldElem]) -> bool {
    let g = trim(g.to_vec());
    let d = g.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = poly_powmod(k, &h, k.q() as u64, &g);
        let diff = poly_sub(k, &h, &x);
        if poly_gcd(k, &diff, &g).len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `d`, comparing coefficient tuples `(c_0, c_1, …)` in order.
pub fn smallest_irreducible(k: &FieldCtx, d: u32) -> Poly {
    let q = k.q() as u64;
    let total = q.pow(d);
    for n in 0..total {
        let mut coeffs = vec![0 as FieldElem; d as usize + 1];
        let mut v = n;
        for i in (0..d as usize).rev() {
            coeffs[i] = (v % q) as FieldElem;
            v /= q;
        }
        coeffs[d as usize] = 1;
        if is_irreducible(k, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Element of GF(q^e): coefficient vector of length e over GF(q).
pub type ExtElem = Vec<FieldElem>;

/// GF(q^e) = GF(q)[y]/(m(y)).
#[derive(Clone, Debug)]
pub struct ExtField {
    base: FieldCtx,
    e: u32,
    modulus: Poly,
    size: u64,
}

impl ExtField {
    pub fn new(base: &FieldCtx, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree 0".into()));
        }
        let size = (base.q() as u64)
            .checked_pow(e)
            .filter(|&s| s <= 1 << 40)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("extension of degree {e} over GF({}) too large", base.q()))
            })?;
        Ok(ExtField {
            base: base.clone(),
            e,
            modulus: smallest_irreducible(base, e),
            size,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[FieldElem] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.e as usize]
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: FieldElem) -> ExtElem {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// Element with base-q digits of `index` as coefficients.
    pub fn element(&self, mut index: u64) -> ExtElem {
        let q = self.base.q() as u64;
        (0..self.e)
            .map(|_| {
                let c = (index % q) as FieldElem;
                index /= q;
                c
            })
            .collect()
    }

    /// The basis element y^i.
    pub fn basis(&self, i: usize) -> ExtElem {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// The base-field value of an element lying in GF(q).
    pub fn to_base(&self, a: &[FieldElem]) -> Option<FieldElem> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    pub fn add(&self, a: &[FieldElem], b: &[FieldElem]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[FieldElem], b: &[FieldElem]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[FieldElem]) -> ExtElem {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    pub fn scale(&self, c: FieldElem, a: &[FieldElem]) -> ExtElem {
        a.iter().map(|&x| self.base.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[FieldElem], b: &[FieldElem]) -> ExtElem {
        let mut r = poly_rem(&self.base, &poly_mul(&self.base, a, b), &self.modulus);
        r.resize(self.e as usize, 0);
        r
    }

    pub fn is_zero(&self, a: &[FieldElem]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, a: &[FieldElem], e: &Nat) -> ExtElem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn inv(&self, a: &[FieldElem]) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        Ok(self.pow(a, &nat(self.size - 2)))
    }

    /// Exact multiplicative order.
    pub fn order(&self, a: &[FieldElem]) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::InvalidArgument("order of zero".into()));
        }
        let mut o = self.size - 1;
        for r in factor_u64(o).into_keys() {
            while o.is_multiple_of(r) && self.pow(a, &nat(o / r)) == self.one() {
                o /= r;
            }
        }
        Ok(o)
    }

    /// First element (in index order) generating the multiplicative group.
    pub fn generator(&self) -> ExtElem {
        let m = self.size - 1;
        let primes: Vec<u64> = factor_u64(m).into_keys().collect();
        (1..self.size)
            .map(|i| self.element(i))
            .find(|g| primes.iter().all(|r| self.pow(g, &nat(m / r)) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    /// An element of exact order `d`, which must divide `q^e - 1`.
    pub fn element_of_order(&self, d: u64) -> Result<ExtElem> {
        let m = self.size - 1;
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::InvalidArgument(format!("{d} does not divide {m}")));
        }
        Ok(self.pow(&self.generator(), &nat(m / d)))
    }

    /// a ↦ a^q.
    pub fn frobenius(&self, a: &[FieldElem]) -> ExtElem {
        self.pow(a, &nat(self.base.q() as u64))
    }
}

/// Smallest e with d | q^e - 1, together with an element of exact order d in GF(q^e).
pub fn element_of_order(ctx: &FieldCtx, d: &Nat) -> Result<(ExtField, ExtElem)> {
    if d.is_zero() {
        return Err(Error::InvalidArgument("order 0".into()));
    }
    if (d % ctx.p()).is_zero() {
        return Err(Error::InfeasibleOrder(d.to_string()));
    }
    let dv = d
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("order {d} too large")))?;
    let q = ctx.q() as u64;
    let mut e = 1u32;
    let mut qe = BigUint::from(q);
    while !((&qe - 1u32) % dv).is_zero() {
        e += 1;
        qe *= q;
        if qe.bits() > 40 {
            return Err(Error::InvalidArgument(format!(
                "order {d} needs a field beyond 2^40 elements"
            )));
        }
    }
    let ext = ExtField::new(ctx, e)?;
    let lambda = ext.element_of_order(dv)?;
    Ok((ext, lambda))
}

/// Minimal polynomial over GF(q) of `lambda`, monic, lowest degree first.
pub fn min_poly(ext: &ExtField, lambda: &[FieldElem]) -> Result<Poly> {
    if ext.is_zero(lambda) {
        return Err(Error::InvalidArgument("minimal polynomial of zero".into()));
    }
    let mut conj = vec![lambda.to_vec()];
    loop {
        let next = ext.frobenius(conj.last().unwrap());
        if next == conj[0] {
            break;
        }
        conj.push(next);
    }
    // product of (X - c) with coefficients in the extension
    let mut prod: Vec<ExtElem> = vec![ext.one()];
    for c in &conj {
        let mut next = vec![ext.zero(); prod.len() + 1];
        for (i, a) in prod.iter().enumerate() {
            next[i + 1] = ext.add(&next[i + 1], a);
            next[i] = ext.sub(&next[i], &ext.mul(a, c));
        }
        prod = next;
    }
    prod.iter()
        .map(|c| {
            ext.to_base(c)
                .ok_or_else(|| Error::InvalidArgument("conjugate product left the base field".into()))
        })
        .collect()
}
