//! Truncated power series in `q = e^{-delta}` with coefficients in `Z[t]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};

/// `sum_{k=0}^{order} c_k(t) q^k`, exact modulo `q^{order+1}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { order, coeffs: vec![Poly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// Builds a series from coefficients; entries past `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: Vec<Poly>) -> Self {
        let mut s = QSeries::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// `c(t) q^k` (zero when `k > order`).
    pub fn monomial(order: usize, k: usize, c: Poly) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: Poly) {
        if k <= self.order {
            self.coeffs[k] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        QSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        QSeries { order, coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        QSeries { order, coeffs }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = QSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                out.coeffs[i + j].add_product(&self.coeffs[i], &other.coeffs[j]);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> QSeries {
        (0..e).fold(QSeries::one(self.order), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; requires the `q^0` coefficient to be `1` or `-1`.
    pub fn inverse(&self) -> Result<QSeries> {
        let lead = match self.coeffs[0].as_constant() {
            Some(c @ (1 | -1)) => c,
            _ => return Err(Error::NotInvertible(self.coeffs[0].to_string())),
        };
        let mut out = QSeries::zero(self.order);
        out.coeffs[0] = Poly::constant(lead);
        for k in 1..=self.order {
            let mut acc = Poly::zero();
            for j in 1..=k {
                acc.add_product(&self.coeffs[j], &out.coeffs[k - j]);
            }
            out.coeffs[k] = acc.scale(-lead);
        }
        Ok(out)
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Specializes `t` to an integer.
    pub fn evaluate_t(&self, x: i64) -> QSeries {
        let coeffs = self.coeffs.iter().map(|c| Poly::constant(c.evaluate(x))).collect();
        QSeries { order: self.order, coeffs }
    }

    /// First `q`-order where two series differ, comparing up to the smaller order.
    pub fn first_difference(&self, other: &QSeries) -> Option<usize> {
        let order = self.order.min(other.order);
        (0..=order).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

/// `prod_{n>=1} (1 - t^{t_power} q^n)` truncated at `q^order`.
///
/// This is `(x; q)_infinity` with `x = t^{t_power} q`, the form every constant
/// term product uses.
pub fn pochhammer(t_power: usize, order: usize) -> QSeries {
    let mut out = QSeries::one(order);
    let x = Poly::monomial(1, t_power);
    for n in 1..=order {
        // multiply by (1 - x q^n) in place, descending so old values are read
        for k in (n..=order).rev() {
            let prev = out.coeffs[k - n].clone();
            out.coeffs[k].add_product(&prev, &(-&x));
        }
    }
    out
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Poly {
        Poly::constant(v)
    }

    #[test]
    fn euler_product_leading_terms() {
        // (q;q)_inf = 1 - q - q^2 + q^5 + q^7 - ...
        let e = pochhammer(0, 7);
        let want = [1, -1, -1, 0, 0, 1, 0, 1];
        for (k, &w) in want.iter().enumerate() {
            assert_eq!(e.coeff(k), &c(w), "q^{k}");
        }
    }

    #[test]
    fn pochhammer_with_t_power() {
        let e = pochhammer(2, 2);
        assert_eq!(e.coeff(0), &Poly::one());
        assert_eq!(e.coeff(1), &Poly::monomial(-1, 2));
        assert_eq!(e.coeff(2), &Poly::monomial(-1, 2));
        assert_eq!(pochhammer(3, 0), QSeries::one(0));
    }

    #[test]
    fn inverse_of_euler_counts_partitions() {
        let p = pochhammer(0, 8).inverse().unwrap();
        let partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (k, &n) in partitions.iter().enumerate() {
            assert_eq!(p.coeff(k), &c(n));
        }
    }

    #[test]
    fn non_unit_leading_term_rejected() {
        let s = QSeries::from_coeffs(2, vec![Poly::from_coeffs(vec![1, 1])]);
        assert!(matches!(s.inverse(), Err(Error::NotInvertible(_))));
    }
}
