use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::Nat;
use crate::groups::{Family, GroupSpec};

use super::enumerate::par_map;
use super::gens::{standard_generators, Realization};
use super::invariant::membership_invariant;
use super::mat::Mat;
use super::order::{exponent_bound, is_projective, projective_order};

/// Independent random streams; fixed so output does not depend on the thread count.
const STREAMS: u64 = 16;

#[derive(Debug, Clone, Copy)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    pub slots: usize,
    pub burn_in: usize,
}

impl SampleOptions {
    pub fn new(count: usize, seed: u64) -> Self {
        SampleOptions {
            count,
            seed,
            slots: 10,
            burn_in: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleResult {
    /// Orders in sampling order (projective for PSp and PΩ).
    pub orders: Vec<Nat>,
    /// Samples dropped by the membership filter.
    pub rejected: usize,
}

/// Product replacement with an accumulator.
pub struct ProductReplacement<'a> {
    real: &'a Realization,
    slots: Vec<Mat>,
    acc: Mat,
    rng: ChaCha8Rng,
}

impl<'a> ProductReplacement<'a> {
    pub fn new(real: &'a Realization, slots: usize, burn_in: usize, seed: u64) -> Self {
        let d = real.form.dim();
        let slots = (0..slots.max(2))
            .map(|i| {
                if real.gens.is_empty() {
                    Mat::identity(d)
                } else {
                    real.gens[i % real.gens.len()].clone()
                }
            })
            .collect();
        let mut pr = ProductReplacement {
            real,
            slots,
            acc: Mat::identity(d),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..burn_in {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Mat {
        let k = &self.real.field;
        let n = self.slots.len();
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s = if self.rng.random_bool(0.5) {
            self.slots[i].mul(k, &self.slots[j])
        } else {
            self.slots[j].mul(k, &self.slots[i])
        };
        self.acc = self.acc.mul(k, &s);
        self.slots[i] = s;
        self.acc.clone()
    }
}

fn needs_filter(spec: &GroupSpec) -> bool {
    matches!(
        spec.family,
        Family::OmegaOddDim | Family::OmegaEvenDim | Family::POmegaEvenDim | Family::SoOddDim | Family::SoEvenDim
    )
}

/// Orders of pseudo-random elements of `spec`'s matrix group.
pub fn sample_orders(spec: &GroupSpec, opts: &SampleOptions) -> Result<SampleResult> {
    if opts.count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let real = standard_generators(spec)?;
    let bound = exponent_bound(spec)?;
    let proj = is_projective(spec);
    let omega = !matches!(spec.family, Family::SoOddDim | Family::SoEvenDim);
    let filter = needs_filter(spec);
    let streams: Vec<u64> = (0..STREAMS).collect();
    let per = |s: u64| opts.count / STREAMS as usize + ((s as usize) < opts.count % STREAMS as usize) as usize;
    let results = par_map(&streams, |&s| -> Result<(Vec<Nat>, usize)> {
        let n = per(s);
        if n == 0 {
            return Ok((Vec::new(), 0));
        }
        let seed = opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(s);
        let mut pr = ProductReplacement::new(&real, opts.slots, opts.burn_in, seed);
        let k = &real.field;
        let mut out = Vec::with_capacity(n);
        let mut rejected = 0;
        for _ in 0..n {
            let g = pr.next_element();
            if filter {
                let ok = g.det(k) == 1 && (!omega || membership_invariant(k, &g, &real.form)?.is_trivial());
                if !ok {
                    rejected += 1;
                    continue;
                }
            }
            out.push(projective_order(k, &g, &bound, proj)?);
        }
        Ok((out, rejected))
    });
    let mut orders = Vec::with_capacity(opts.count);
    let mut rejected = 0;
    for r in results {
        let (o, rej) = r?;
        orders.extend(o);
        rejected += rej;
    }
    Ok(SampleResult { orders, rejected })
}
