//! Pass/fail reports for identity checks.

use serde::{Deserialize, Serialize};

use crate::series::{Poly, QSeries};
use crate::weight::RootVector;

/// One compared coefficient: two polynomials that should agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<RootVector>,
    pub lhs: Poly,
    pub rhs: Poly,
}

/// Location of the first disagreement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<RootVector>,
    pub t_degree: usize,
    pub lhs_coeff: i64,
    pub rhs_coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub compared: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    pub comparisons: Vec<Comparison>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            compared: 0,
            first_mismatch: None,
            comparisons: Vec::new(),
        }
    }

    pub fn compare(&mut self, c: Comparison) {
        self.compared += 1;
        if c.lhs != c.rhs && self.first_mismatch.is_none() {
            let len = c.lhs.coeffs().len().max(c.rhs.coeffs().len());
            let k = (0..len).find(|&k| c.lhs.coeff(k) != c.rhs.coeff(k)).unwrap_or(0);
            self.first_mismatch = Some(Mismatch {
                label: c.label.clone(),
                q_order: c.q_order,
                offset: c.offset.clone(),
                t_degree: k,
                lhs_coeff: c.lhs.coeff(k),
                rhs_coeff: c.rhs.coeff(k),
            });
        }
        self.passed &= c.lhs == c.rhs;
        self.comparisons.push(c);
    }

    pub fn compare_poly(&mut self, label: impl Into<String>, lhs: Poly, rhs: Poly) {
        self.compare(Comparison { label: label.into(), q_order: None, offset: None, lhs, rhs });
    }

    pub fn compare_at(&mut self, label: impl Into<String>, offset: RootVector, lhs: Poly, rhs: Poly) {
        self.compare(Comparison { label: label.into(), q_order: None, offset: Some(offset), lhs, rhs });
    }

    /// Compares two `q`-series coefficientwise up to the smaller order.
    pub fn compare_series(&mut self, label: &str, lhs: &QSeries, rhs: &QSeries) {
        let order = lhs.order().min(rhs.order());
        for k in 0..=order {
            self.compare(Comparison {
                label: label.to_string(),
                q_order: Some(k),
                offset: None,
                lhs: lhs.coeff(k).clone(),
                rhs: rhs.coeff(k).clone(),
            });
        }
    }

    /// Marks the report failed for a reason that is not a coefficient comparison.
    pub fn fail(&mut self, label: impl Into<String>) {
        let label = label.into();
        self.passed = false;
        if self.first_mismatch.is_none() {
            self.first_mismatch = Some(Mismatch {
                label,
                q_order: None,
                offset: None,
                t_degree: 0,
                lhs_coeff: 0,
                rhs_coeff: 0,
            });
        }
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        if self.first_mismatch.is_none() {
            self.first_mismatch = other.first_mismatch;
        }
        self.passed &= other.passed;
        self.compared += other.compared;
        self.comparisons.extend(other.comparisons);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_first_mismatch() {
        let mut r = CheckReport::new("demo");
        r.compare_poly("a", Poly::t(), Poly::t());
        assert!(r.passed);
        r.compare_poly("b", Poly::from_coeffs(vec![1, 2, 3]), Poly::from_coeffs(vec![1, 2, 4]));
        r.compare_poly("c", Poly::zero(), Poly::one());
        assert!(!r.passed);
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.label.as_str(), m.t_degree, m.lhs_coeff, m.rhs_coeff), ("b", 2, 3, 4));
        assert_eq!(r.compared, 3);
    }
}
