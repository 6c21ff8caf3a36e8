//! Exact integers, factoring at desk scale, and (signed) partition enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Nat = BigUint;

/// Prime factorization as prime -> exponent, smallest prime first.
pub type Factorization = BTreeMap<u64, u32>;

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

pub fn lcm_all(values: &[Nat]) -> Result<Nat> {
    let mut acc = Nat::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::InvalidArgument("lcm of a list containing 0".into()));
        }
        acc = acc.lcm(v);
    }
    Ok(acc)
}

/// Returns `(e, p^e)` where `p^e` is the largest power of `p` dividing `k`.
pub fn p_adic_valuation(k: &Nat, p: u64) -> Result<(u32, Nat)> {
    if k.is_zero() {
        return Err(Error::InvalidArgument("valuation of 0".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pn = nat(p);
    let mut rest = k.clone();
    let mut e = 0;
    let mut part = Nat::one();
    loop {
        let (quo, rem) = rest.div_rem(&pn);
        if !rem.is_zero() {
            break;
        }
        rest = quo;
        e += 1;
        part *= &pn;
    }
    Ok((e, part))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for the whole u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Factorization) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

pub fn factor_u64(mut n: u64) -> Factorization {
    let mut out = Factorization::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    factor_into(n, &mut out);
    out
}

/// Factors `n`, which must be a product of a u64 cofactor and primes below 10^6.
pub fn factor_nat(n: &Nat) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("factorization of 0".into()));
    }
    if let Some(v) = n.to_u64() {
        return Ok(factor_u64(v));
    }
    let mut out = Factorization::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < 1_000_000 && rest.to_u64().is_none() {
        let pn = nat(p);
        while (&rest % &pn).is_zero() {
            rest /= &pn;
            *out.entry(p).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let Some(v) = rest.to_u64() else {
        return Err(Error::InvalidArgument(format!("{n} is too large to factor")));
    };
    for (q, e) in factor_u64(v) {
        *out.entry(q).or_insert(0) += e;
    }
    Ok(out)
}

pub fn merge_max(a: &mut Factorization, b: &Factorization) {
    for (&p, &e) in b {
        let slot = a.entry(p).or_insert(0);
        *slot = (*slot).max(e);
    }
}

pub fn merge_add(a: &mut Factorization, b: &Factorization) {
    for (&p, &e) in b {
        *a.entry(p).or_insert(0) += e;
    }
}

pub fn factorization_value(f: &Factorization) -> Nat {
    f.iter().fold(Nat::one(), |acc, (&p, &e)| acc * nat(p).pow(e))
}

/// All divisors of the number with the given factorization, ascending.
pub fn divisors(f: &Factorization) -> Vec<Nat> {
    let mut out = vec![Nat::one()];
    for (&p, &e) in f {
        let pn = nat(p);
        let base = out.clone();
        let mut pk = Nat::one();
        for _ in 0..e {
            pk *= &pn;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}

/// Splits `q` into `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_u64(q);
    if f.len() != 1 {
        return None;
    }
    f.into_iter().next()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition part 0".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "·");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Reverse-lexicographic list of partitions of `m`.
pub fn enumerate_partitions(m: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    None,
    PlusEven,
    PlusOdd,
}

impl Parity {
    fn admits(self, plus_parts: usize) -> bool {
        match self {
            Parity::None => true,
            Parity::PlusEven => plus_parts.is_multiple_of(2),
            Parity::PlusOdd => plus_parts % 2 == 1,
        }
    }
}

/// Parts of `minus` stand for factors `q^a - 1`, parts of `plus` for `q^a + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedPartitionPair {
    pub minus: Partition,
    pub plus: Partition,
}

impl SignedPartitionPair {
    pub fn new(minus: Vec<u32>, plus: Vec<u32>) -> Result<Self> {
        Ok(SignedPartitionPair {
            minus: Partition::new(minus)?,
            plus: Partition::new(plus)?,
        })
    }

    pub fn weight(&self) -> u32 {
        self.minus.weight() + self.plus.weight()
    }

    pub fn total_parts(&self) -> usize {
        self.minus.len() + self.plus.len()
    }

    /// The factors `q^a - 1` and `q^a + 1`, minus parts first.
    pub fn factors(&self, q: u64) -> Vec<Nat> {
        let qn = nat(q);
        let mut out: Vec<Nat> = self.minus.parts().iter().map(|&a| qn.pow(a) - 1u32).collect();
        out.extend(self.plus.parts().iter().map(|&a| qn.pow(a) + 1u32));
        out
    }

    /// lcm of all factors; 1 for the empty pair.
    pub fn lcm_value(&self, q: u64) -> Nat {
        lcm_all(&self.factors(q)).expect("q^a - 1 > 0 for q >= 2")
    }
}

impl fmt::Display for SignedPartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.minus, self.plus)
    }
}

pub fn enumerate_signed_pairs(m: u32, parity: Parity, min_total_parts: usize) -> Vec<SignedPartitionPair> {
    let mut out = Vec::new();
    for w in (0..=m).rev() {
        let minus_all = enumerate_partitions(w);
        let plus_all = enumerate_partitions(m - w);
        for minus in &minus_all {
            for plus in &plus_all {
                if !parity.admits(plus.len()) || minus.len() + plus.len() < min_total_parts {
                    continue;
                }
                out.push(SignedPartitionPair {
                    minus: minus.clone(),
                    plus: plus.clone(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn n(v: u64) -> Nat {
        nat(v)
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_all(&[n(4), n(4)]).unwrap(), n(4));
        assert_eq!(lcm_all(&[n(8), n(10)]).unwrap(), n(40));
        // smallest common multiple by scanning
        let scan = (1u64..).find(|m| m % 10 == 0 && m % 4 == 0 && m % 2 == 0).unwrap();
        assert_eq!(lcm_all(&[n(10), n(4), n(2)]).unwrap(), n(scan));
        assert_eq!(lcm_all(&[]).unwrap(), n(1));
        assert!(matches!(lcm_all(&[n(3), n(0)]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(&n(12), 2).unwrap(), (2, n(4)));
        assert_eq!(p_adic_valuation(&n(7), 3).unwrap(), (0, n(1)));
        let mut k = 648u64;
        let mut e = 0;
        while k.is_multiple_of(3) {
            k /= 3;
            e += 1;
        }
        assert_eq!(p_adic_valuation(&n(648), 3).unwrap(), (e, n(3u64.pow(e))));
        assert!(p_adic_valuation(&n(0), 3).is_err());
        assert!(p_adic_valuation(&n(12), 4).is_err());
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        // p(m) through the pentagonal-free recurrence on largest part
        fn count(m: u32, max: u32) -> usize {
            if m == 0 {
                return 1;
            }
            (1..=m.min(max)).map(|k| count(m - k, k)).sum()
        }
        for m in 0..12 {
            assert_eq!(enumerate_partitions(m).len(), count(m, m));
        }
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(7).len(), 15);
        let p4: Vec<Vec<u32>> = enumerate_partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            p4,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    /// Compositions with a sign per part, collapsed to sorted signed multisets.
    fn composition_oracle(m: u32, parity: Parity, min_parts: usize) -> BTreeSet<(Vec<u32>, Vec<u32>)> {
        fn rec(rest: u32, cur: &mut Vec<(u32, bool)>, out: &mut Vec<Vec<(u32, bool)>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for a in 1..=rest {
                for sign in [false, true] {
                    cur.push((a, sign));
                    rec(rest - a, cur, out);
                    cur.pop();
                }
            }
        }
        let mut all = Vec::new();
        rec(m, &mut Vec::new(), &mut all);
        all.into_iter()
            .filter(|c| {
                let plus = c.iter().filter(|x| x.1).count();
                let ok = match parity {
                    Parity::None => true,
                    Parity::PlusEven => plus % 2 == 0,
                    Parity::PlusOdd => plus % 2 == 1,
                };
                ok && c.len() >= min_parts
            })
            .map(|c| {
                let mut mi: Vec<u32> = c.iter().filter(|x| !x.1).map(|x| x.0).collect();
                let mut pl: Vec<u32> = c.iter().filter(|x| x.1).map(|x| x.0).collect();
                mi.sort_unstable_by(|a, b| b.cmp(a));
                pl.sort_unstable_by(|a, b| b.cmp(a));
                (mi, pl)
            })
            .collect()
    }

    #[test]
    fn signed_pair_examples() {
        let got = enumerate_signed_pairs(2, Parity::None, 1);
        assert_eq!(got.len(), 5);
        let want: BTreeSet<_> = composition_oracle(2, Parity::None, 1);
        let have: BTreeSet<_> = got
            .iter()
            .map(|s| (s.minus.parts().to_vec(), s.plus.parts().to_vec()))
            .collect();
        assert_eq!(have, want);
        let even = enumerate_signed_pairs(2, Parity::PlusEven, 1);
        let have: BTreeSet<_> = even
            .iter()
            .map(|s| (s.minus.parts().to_vec(), s.plus.parts().to_vec()))
            .collect();
        let want: BTreeSet<_> = [(vec![2], vec![]), (vec![1, 1], vec![]), (vec![], vec![1, 1])]
            .into_iter()
            .collect();
        assert_eq!(have, want);
        assert_eq!(enumerate_signed_pairs(0, Parity::None, 0).len(), 1);
        assert!(enumerate_signed_pairs(0, Parity::None, 1).is_empty());
    }

    #[test]
    fn signed_pairs_match_composition_oracle() {
        for m in 0..=8 {
            for parity in [Parity::None, Parity::PlusEven, Parity::PlusOdd] {
                for min_parts in 0..3 {
                    let got = enumerate_signed_pairs(m, parity, min_parts);
                    let set: BTreeSet<_> = got
                        .iter()
                        .map(|s| (s.minus.parts().to_vec(), s.plus.parts().to_vec()))
                        .collect();
                    assert_eq!(set.len(), got.len(), "duplicates at m={m}");
                    assert_eq!(
                        set,
                        composition_oracle(m, parity, min_parts),
                        "m={m} {parity:?} {min_parts}"
                    );
                }
            }
        }
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(360), [(2, 3), (3, 2), (5, 1)].into_iter().collect());
        assert_eq!(factor_u64(1), Factorization::new());
        let big = 3u64.pow(40) - 1;
        assert_eq!(factorization_value(&factor_u64(big)), n(big));
        let huge = nat(7).pow(30) - 1u32;
        assert_eq!(factorization_value(&factor_nat(&huge).unwrap()), huge);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(divisors(&factor_u64(12)), [1u64, 2, 3, 4, 6, 12].map(n).to_vec());
        for v in 1..2000u64 {
            let slow = (2..v).all(|d| v % d != 0) && v > 1;
            assert_eq!(is_prime(v), slow, "{v}");
        }
    }

    proptest! {
        #[test]
        fn lcm_invariant_under_shuffle_and_duplication(xs in prop::collection::vec(1u64..500, 0..8), seed in any::<u64>()) {
            let vals: Vec<Nat> = xs.iter().map(|&x| n(x)).collect();
            let mut doubled = vals.clone();
            doubled.extend(vals.iter().cloned());
            let len = doubled.len();
            if len > 1 {
                let k = (seed as usize) % len;
                doubled.rotate_left(k);
                doubled.swap(0, len - 1);
            }
            prop_assert_eq!(lcm_all(&vals).unwrap(), lcm_all(&doubled).unwrap());
        }

        #[test]
        fn valuation_reconstructs(k in 1u64..1_000_000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 11][pi];
            let (e, part) = p_adic_valuation(&n(k), p).unwrap();
            prop_assert_eq!(&part, &n(p).pow(e));
            let rest = n(k) / &part;
            prop_assert!(!(&rest % n(p)).is_zero());
            prop_assert_eq!(part * rest, n(k));
        }

        #[test]
        fn pair_lcm_is_listing_invariant(m in 1u32..6, q in 2u64..10, rot in 0usize..6) {
            for pair in enumerate_signed_pairs(m, Parity::None, 0) {
                let mut f = pair.factors(q);
                let len = f.len().max(1);
                f.rotate_left(rot % len);
                prop_assert_eq!(lcm_all(&f).unwrap(), pair.lcm_value(q));
            }
        }

        #[test]
        fn factor_roundtrip(v in 1u64..u64::MAX) {
            let f = factor_u64(v);
            prop_assert!(f.keys().all(|&p| is_prime(p)));
            prop_assert_eq!(factorization_value(&f), n(v));
        }
    }
}
