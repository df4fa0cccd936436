//! The t-analog of Kostant's partition function,
//! `prod_{alpha > 0} (1 - t e^{-alpha})^{-m_alpha} = sum_gamma K_t(gamma) e^{-gamma}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::roots::RootSlice;
use crate::series::Poly;
use crate::weight::{cone_below, cone_up_to, RootVector};

/// `K_t(gamma)` for every `gamma` in a finite down-closed subset of `Q+`.
#[derive(Clone, Debug)]
pub struct KostantTable {
    depth: usize,
    values: HashMap<RootVector, Poly>,
}

impl KostantTable {
    /// All `gamma` in `Q+` with `ht(gamma) <= depth`.
    pub fn build(slice: &RootSlice, rank: usize, depth: usize) -> Result<Self> {
        if depth > slice.height_bound {
            return Err(Error::HeightBoundExceeded { needed: depth as i64, bound: slice.height_bound });
        }
        let points = cone_up_to(rank, depth);
        Ok(KostantTable { depth, values: run_dp(slice, &points, depth) })
    }

    /// Height bound of the table.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `K_t(gamma)`; zero outside `Q+`. Panics if `gamma` is in `Q+` but past the depth.
    pub fn get(&self, gamma: &RootVector) -> Poly {
        if !gamma.is_nonnegative() {
            return Poly::zero();
        }
        assert!(gamma.height() as usize <= self.depth, "offset {gamma} past table depth {}", self.depth);
        self.values.get(gamma).cloned().unwrap_or_default()
    }

    /// `K_t(gamma)` with a typed error past the depth.
    pub fn try_get(&self, gamma: &RootVector) -> Result<Poly> {
        if gamma.is_nonnegative() && gamma.height() as usize > self.depth {
            return Err(Error::HeightBoundExceeded { needed: gamma.height(), bound: self.depth });
        }
        Ok(self.get(gamma))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootVector, &Poly)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A single value `K_t(gamma)`, computed over the box below `gamma`.
pub fn t_partition(gamma: &RootVector, slice: &RootSlice) -> Result<Poly> {
    if !gamma.is_nonnegative() {
        return Ok(Poly::zero());
    }
    let h = gamma.height();
    if h as usize > slice.height_bound {
        return Err(Error::HeightBoundExceeded { needed: h, bound: slice.height_bound });
    }
    let points = cone_below(gamma);
    let values = run_dp(slice, &points, h as usize);
    Ok(values.get(gamma).cloned().unwrap_or_default())
}

/// `binom(k + m - 1, m - 1)`, the coefficient of `x^k` in `(1 - x)^{-m}`.
pub fn negative_binomial(k: usize, m: usize) -> i64 {
    if m == 0 {
        return i64::from(k == 0);
    }
    let mut c: i64 = 1;
    for j in 1..=k {
        c = c * (m - 1 + j) as i64 / j as i64;
    }
    c
}

/// Divides `1` by every factor `(1 - t e^{-alpha})^{m}` on the given points,
/// which must be down-closed and sorted by height.
fn run_dp(slice: &RootSlice, points: &[RootVector], depth: usize) -> HashMap<RootVector, Poly> {
    let mut f: HashMap<RootVector, Poly> = HashMap::with_capacity(points.len());
    if let Some(z) = points.first() {
        f.insert(z.clone(), Poly::one());
    }
    for (alpha, m) in slice.with_multiplicities() {
        let ha = alpha.height() as usize;
        if ha > depth || m == 0 {
            continue;
        }
        if m == 1 {
            // g(gamma) = f(gamma) + t g(gamma - alpha), ascending
            for gamma in points {
                let prev = gamma - &alpha;
                if !prev.is_nonnegative() {
                    continue;
                }
                if let Some(p) = f.get(&prev) {
                    let add = p.shift(1);
                    *f.entry(gamma.clone()).or_default() += &add;
                }
            }
        } else {
            // g(gamma) = sum_k binom(k+m-1, m-1) t^k f(gamma - k alpha), descending
            for gamma in points.iter().rev() {
                let mut acc = Poly::zero();
                let mut k = 1;
                let mut prev = gamma - &alpha;
                while prev.is_nonnegative() {
                    if let Some(p) = f.get(&prev) {
                        acc.add_scaled(&p.shift(k), negative_binomial(k, m));
                    }
                    k += 1;
                    prev = &prev - &alpha;
                }
                if !acc.is_zero() {
                    *f.entry(gamma.clone()).or_default() += &acc;
                }
            }
        }
    }
    f.retain(|_, p| !p.is_zero());
    f
}
