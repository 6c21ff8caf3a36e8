use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::exactmath::{Factorization, Nat};
use crate::gf::FieldCtx;

use super::mat::Mat;
use super::order::projective_order;

/// An enumerated group: its generators and all elements in BFS order.
#[derive(Debug, Clone)]
pub struct Enumerated {
    pub gens: Vec<Mat>,
    pub elements: IndexSet<Mat>,
}

impl Enumerated {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Closure of `gens` under right multiplication, starting from the identity.
pub fn enumerate_group(k: &FieldCtx, dim: usize, gens: &[Mat], cap: usize) -> Result<Enumerated> {
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    let mut set = IndexSet::new();
    set.insert(Mat::identity(dim));
    let mut i = 0;
    while i < set.len() {
        let g = set[i].clone();
        for s in gens {
            let h = g.mul(k, s);
            if !set.contains(&h) {
                if set.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                set.insert(h);
            }
        }
        i += 1;
    }
    Ok(Enumerated {
        gens: gens.to_vec(),
        elements: set,
    })
}

/// Normal closure of the commutators of the generators.
pub fn derived_subgroup(k: &FieldCtx, group: &Enumerated, cap: usize) -> Result<Enumerated> {
    let dim = group.elements[0].size();
    let inv: Vec<Mat> = group
        .gens
        .iter()
        .map(|g| {
            g.inverse(k)
                .ok_or_else(|| Error::InvalidArgument("singular generator".into()))
        })
        .collect::<Result<_>>()?;
    let mut ngens: Vec<Mat> = Vec::new();
    for (a, ai) in group.gens.iter().zip(&inv) {
        for (b, bi) in group.gens.iter().zip(&inv) {
            let c = ai.mul(k, bi).mul(k, a).mul(k, b);
            if !c.is_identity() && !ngens.contains(&c) {
                ngens.push(c);
            }
        }
    }
    loop {
        let closure = enumerate_group(k, dim, &ngens, cap)?;
        let mut grew = false;
        for (s, si) in group.gens.iter().zip(&inv) {
            for x in ngens.clone() {
                let y = si.mul(k, &x).mul(k, s);
                if !closure.elements.contains(&y) && !ngens.contains(&y) {
                    ngens.push(y);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(closure);
        }
    }
}

/// Worker count: `CLASSPEC_THREADS` if set, else the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("CLASSPEC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Applies `f` to every item on scoped threads; results keep the input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = thread_count().min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// (Projective) orders of all elements, in enumeration order.
pub fn element_orders(
    k: &FieldCtx,
    elements: &IndexSet<Mat>,
    bound: &Factorization,
    central_minus: bool,
) -> Result<Vec<Nat>> {
    let items: Vec<&Mat> = elements.iter().collect();
    par_map(&items, |m| projective_order(k, m, bound, central_minus))
        .into_iter()
        .collect()
}

/// Representative of `{M, -M}`: the smaller entry tuple.
pub fn projective_canonical(k: &FieldCtx, m: &Mat) -> Mat {
    let n = m.neg(k);
    if n < *m {
        n
    } else {
        m.clone()
    }
}
