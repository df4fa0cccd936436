//! Truncated formal exponential series `sum_beta c_beta(t) e^{anchor - beta}`.

use std::collections::BTreeMap;
use std::fmt;

use super::{Poly, QSeries};
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::weight::{RootVector, Weight};

/// A series supported on `anchor - Q+`, exact for offsets of height at most `depth`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSeries {
    anchor: Weight,
    depth: usize,
    rank: usize,
    terms: BTreeMap<RootVector, Poly>,
}

impl FormalSeries {
    pub fn zero(anchor: Weight, depth: usize) -> Self {
        let rank = anchor.rank();
        FormalSeries { anchor, depth, rank, terms: BTreeMap::new() }
    }

    /// `e^{anchor}`.
    pub fn exp(anchor: Weight, depth: usize) -> Self {
        let rank = anchor.rank();
        let mut s = FormalSeries::zero(anchor, depth);
        s.terms.insert(RootVector::zero(rank), Poly::one());
        s
    }

    /// The unit `e^0`.
    pub fn one(rank: usize, depth: usize) -> Self {
        FormalSeries::exp(Weight::zero(rank), depth)
    }

    /// `1 - c e^{-beta}`, the basic factor of every product in this crate.
    pub fn one_minus(rank: usize, depth: usize, c: Poly, beta: &RootVector) -> Self {
        let mut s = FormalSeries::one(rank, depth);
        s.add_term(beta, &-&c);
        s
    }

    pub fn anchor(&self) -> &Weight {
        &self.anchor
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms keyed by offset, in lexicographic order of the offset.
    pub fn terms(&self) -> impl Iterator<Item = (&RootVector, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of `e^{anchor - beta}`.
    pub fn coeff(&self, beta: &RootVector) -> Poly {
        self.terms.get(beta).cloned().unwrap_or_default()
    }

    /// Coefficient of `e^{mu}`; zero outside the anchor cone.
    pub fn coeff_at(&self, datum: &CartanDatum, mu: &Weight) -> Poly {
        match datum.weight_to_root(&(&self.anchor - mu)) {
            Some(beta) => self.coeff(&beta),
            None => Poly::zero(),
        }
    }

    /// Adds `c e^{anchor - beta}`. Offsets outside `Q+` or past the depth are dropped.
    pub fn add_term(&mut self, beta: &RootVector, c: &Poly) {
        if c.is_zero() || !self.in_window(beta) {
            return;
        }
        let entry = self.terms.entry(beta.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(beta);
        }
    }

    fn in_window(&self, beta: &RootVector) -> bool {
        beta.is_nonnegative() && beta.height() as usize <= self.depth
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_anchor(other)?;
        let mut out = self.truncate_depth(self.depth.min(other.depth));
        for (b, c) in &other.terms {
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.add(&other.scale(&Poly::constant(-1)))
    }

    fn check_anchor(&self, other: &FormalSeries) -> Result<()> {
        if self.anchor != other.anchor {
            return Err(Error::InvalidArgument(format!(
                "anchors differ: {} vs {}",
                self.anchor, other.anchor
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Poly) -> FormalSeries {
        let mut out = FormalSeries::zero(self.anchor.clone(), self.depth);
        for (b, x) in &self.terms {
            out.add_term(b, &(x * c));
        }
        out
    }

    /// Product; anchors add and the depth is the smaller of the two.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        self.mul_capped(other, None)
    }

    /// Product with every coefficient truncated at `t^{t_cap}`.
    pub fn mul_capped(&self, other: &FormalSeries, t_cap: Option<usize>) -> FormalSeries {
        let depth = self.depth.min(other.depth);
        let mut out = FormalSeries::zero(&self.anchor + &other.anchor, depth);
        for (a, x) in &self.terms {
            let ha = a.height() as usize;
            if ha > depth {
                continue;
            }
            for (b, y) in &other.terms {
                if ha + b.height() as usize > depth {
                    continue;
                }
                let p = match t_cap {
                    Some(cap) => x.mul_truncated(y, cap),
                    None => x * y,
                };
                out.add_term(&(a + b), &p);
            }
        }
        out
    }

    /// Multiplicative inverse; the leading coefficient must be `1` or `-1`.
    pub fn inverse(&self) -> Result<FormalSeries> {
        let zero = RootVector::zero(self.rank);
        let lead = self.coeff(&zero);
        let sign = match lead.as_constant() {
            Some(c @ (1 | -1)) => c,
            _ => return Err(Error::NotInvertible(lead.to_string())),
        };
        let mut offsets = cone_offsets(self.rank, self.depth, &self.terms);
        offsets.sort_by_key(|b| b.height());
        let mut inv: BTreeMap<RootVector, Poly> = BTreeMap::new();
        for gamma in offsets {
            let mut acc = if gamma.is_zero() { Poly::one() } else { Poly::zero() };
            for (b, c) in &self.terms {
                if b.is_zero() {
                    continue;
                }
                let rest = &gamma - b;
                if let Some(v) = inv.get(&rest) {
                    acc.add_product(c, &-v);
                }
            }
            let v = acc.scale(sign);
            if !v.is_zero() {
                inv.insert(gamma, v);
            }
        }
        Ok(FormalSeries { anchor: -&self.anchor, depth: self.depth, rank: self.rank, terms: inv })
    }

    /// `(1 - c e^{-beta})^{-1} = sum_k c^k e^{-k beta}` truncated to `depth`.
    pub fn geometric(rank: usize, depth: usize, c: &Poly, beta: &RootVector) -> FormalSeries {
        let mut s = FormalSeries::one(rank, depth);
        let h = beta.height().max(1) as usize;
        let mut power = Poly::one();
        for k in 1..=depth / h {
            power = &power * c;
            s.add_term(&beta.scale(k as i64), &power);
        }
        s
    }

    /// Multiplies by `e^{k delta}`.
    pub fn shift_delta(&self, k: i64) -> FormalSeries {
        let mut out = self.clone();
        out.anchor = self.anchor.shift_delta(k);
        out
    }

    /// Re-expresses the series around a higher anchor `new_anchor`, which
    /// must differ from the current one by an element of `Q+`.
    pub fn reanchor(&self, datum: &CartanDatum, new_anchor: &Weight) -> Result<FormalSeries> {
        let shift = datum
            .weight_to_root(&(new_anchor - &self.anchor))
            .filter(|s| s.is_nonnegative())
            .ok_or_else(|| Error::InvalidArgument(format!("{new_anchor} is not above {}", self.anchor)))?;
        let depth = self.depth + shift.height() as usize;
        let mut out = FormalSeries::zero(new_anchor.clone(), depth);
        for (b, c) in &self.terms {
            out.add_term(&(b + &shift), c);
        }
        Ok(out)
    }

    pub fn truncate_depth(&self, depth: usize) -> FormalSeries {
        let depth = depth.min(self.depth);
        let terms = self
            .terms
            .iter()
            .filter(|(b, _)| b.height() as usize <= depth)
            .map(|(b, c)| (b.clone(), c.clone()))
            .collect();
        FormalSeries { anchor: self.anchor.clone(), depth, rank: self.rank, terms }
    }

    pub fn truncate_t(&self, t_cap: usize) -> FormalSeries {
        self.map(|c| c.truncate(t_cap))
    }

    pub fn evaluate_t(&self, x: i64) -> FormalSeries {
        self.map(|c| Poly::constant(c.evaluate(x)))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> FormalSeries {
        let mut out = FormalSeries::zero(self.anchor.clone(), self.depth);
        for (b, c) in &self.terms {
            out.add_term(b, &f(c));
        }
        out
    }

    /// The constant-term map: keeps the pure-`delta` part as a series in `q = e^{-delta}`.
    ///
    /// The returned order is the largest `N` for which every `q^k`, `k <= N`,
    /// is fully determined by the truncation.
    pub fn constant_term(&self, datum: &CartanDatum) -> Result<QSeries> {
        let p = datum.affine_node().ok_or(Error::WrongKind("affine"))?;
        let r = datum
            .weight_to_root(&self.anchor)
            .ok_or(Error::AnchorNotLatticeCompatible)?;
        let hd = datum.delta_height().expect("affine") as usize;
        let delta = datum.delta().expect("affine");
        let hr = r.height();
        if hr > self.depth as i64 {
            return Err(Error::HeightBoundExceeded { needed: hr, bound: self.depth });
        }
        let order = (self.depth - hr as usize) / hd;
        let mut out = QSeries::zero(order);
        for (beta, c) in &self.terms {
            // anchor - beta = -k delta  <=>  beta = r + k delta
            let k = beta.0[p] - r.0[p];
            if &r + &delta.scale(k) != *beta {
                continue;
            }
            if k < 0 {
                return Err(Error::InvalidArgument(format!(
                    "term e^{{{}delta}} has a positive power of delta",
                    -k
                )));
            }
            if (k as usize) <= order {
                out.set_coeff(k as usize, c.clone());
            }
        }
        Ok(out)
    }
}

/// Every `Q+` offset of height at most `depth` reachable as a sum of nonzero
/// term offsets (the support of an inverse).
fn cone_offsets(rank: usize, depth: usize, terms: &BTreeMap<RootVector, Poly>) -> Vec<RootVector> {
    let steps: Vec<&RootVector> = terms.keys().filter(|b| !b.is_zero()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let zero = RootVector::zero(rank);
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(g) = frontier.pop() {
        for s in &steps {
            let n = &g + s;
            if n.height() as usize <= depth && seen.insert(n.clone()) {
                frontier.push(n);
            }
        }
    }
    seen.into_iter().collect()
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{} * [", self.anchor)?;
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{b}: {c}")?;
        }
        write!(f, "] (depth {})", self.depth)
    }
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn geometric_inverse() {
        let a = RootVector::simple(2, 0);
        let f = FormalSeries::one_minus(2, 5, Poly::one(), &a);
        let g = FormalSeries::geometric(2, 5, &Poly::one(), &a);
        assert_eq!(f.mul(&g), FormalSeries::one(2, 5));
        assert_eq!(f.inverse().unwrap(), g);
    }

    #[test]
    fn factor_pattern_at_depth_two() {
        let a = RootVector::simple(1, 0);
        let f = FormalSeries::one_minus(1, 2, Poly::one(), &a);
        let g = FormalSeries::geometric(1, 2, &Poly::t(), &a);
        let h = f.mul(&g);
        assert_eq!(h.coeff(&RootVector(vec![0])), Poly::one());
        assert_eq!(h.coeff(&RootVector(vec![1])), poly(&[-1, 1]));
        assert_eq!(h.coeff(&RootVector(vec![2])), poly(&[0, -1, 1]));
    }

    #[test]
    fn inverse_of_t_factor() {
        let a = RootVector::simple(1, 0);
        let inv = FormalSeries::one_minus(1, 3, Poly::t(), &a).inverse().unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeff(&RootVector(vec![k])), Poly::monomial(1, k as usize));
        }
        let bad = FormalSeries::exp(Weight::zero(1), 3).scale(&Poly::constant(2));
        assert!(matches!(bad.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn constant_term_filters_delta_powers() {
        let d = CartanDatum::named("A1~").unwrap();
        let mut f = FormalSeries::one(2, 4);
        f.add_term(&RootVector(vec![0, 1]), &Poly::one());
        f.add_term(&RootVector(vec![1, 1]), &Poly::t());
        let ct = f.constant_term(&d).unwrap();
        assert_eq!(ct.order(), 2);
        assert_eq!(ct.coeff(0), &Poly::one());
        assert_eq!(ct.coeff(1), &Poly::t());
        assert_eq!(ct.coeff(2), &Poly::zero());

        let bad = FormalSeries::exp(d.fundamental_weight(0), 4);
        assert_eq!(bad.constant_term(&d).unwrap_err(), Error::AnchorNotLatticeCompatible);
    }

    #[test]
    fn reanchor_preserves_coefficients() {
        let d = CartanDatum::named("A2").unwrap();
        let f = FormalSeries::one_minus(2, 3, Poly::one(), &RootVector::simple(2, 0));
        let up = d.simple_root_weight(1);
        let g = f.reanchor(&d, &up).unwrap();
        let mu = Weight::zero(2);
        assert_eq!(g.coeff_at(&d, &mu), Poly::one());
        let a1 = -&d.simple_root_weight(0);
        assert_eq!(g.coeff_at(&d, &a1), Poly::constant(-1));
    }
}
