//! Root-lattice vectors and weights.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of the root lattice `Q`, in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    /// The simple root `alpha_i`.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Membership in `Q+`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|&c| c * k).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Add<&RootVector> for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RootVector> for &RootVector {
    type Output = RootVector;
    fn sub(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        self.scale(-1)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootVector{self}")
    }
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

/// An integral weight `sum_i labels[i] Lambda_i + delta * delta`.
///
/// `labels[i]` is the pairing with the simple coroot `alpha_i^vee`. For
/// finite-type algebras `delta` is always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub labels: Vec<i64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub delta: i64,
}

impl Weight {
    pub fn new(labels: Vec<i64>, delta: i64) -> Self {
        Weight { labels, delta }
    }

    pub fn from_labels(labels: Vec<i64>) -> Self {
        Weight { labels, delta: 0 }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::from_labels(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `<self, alpha_i^vee>`.
    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&m| m >= 0)
    }

    /// All labels at least one.
    pub fn is_regular_dominant(&self) -> bool {
        self.labels.iter().all(|&m| m >= 1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight {
            labels: self.labels.iter().map(|&m| m * k).collect(),
            delta: self.delta * k,
        }
    }

    /// `self + k * delta`.
    pub fn shift_delta(&self, k: i64) -> Self {
        Weight { labels: self.labels.clone(), delta: self.delta + k }
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            labels: self.labels.iter().zip(&rhs.labels).map(|(a, b)| a + b).collect(),
            delta: self.delta + rhs.delta,
        }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            labels: self.labels.iter().zip(&rhs.labels).map(|(a, b)| a - b).collect(),
            delta: self.delta - rhs.delta,
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))?;
        match self.delta {
            0 => Ok(()),
            1 => write!(f, "+d"),
            -1 => write!(f, "-d"),
            k if k > 0 => write!(f, "+{k}d"),
            k => write!(f, "{k}d"),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight{self}")
    }
}

/// Every element of `Q+` with height at most `depth`, sorted by height.
pub fn cone_up_to(rank: usize, depth: usize) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fill_cone(&mut cur, 0, depth as i64, None, &mut out);
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

/// Every element of `Q+` componentwise below `upper`, sorted by height.
pub fn cone_below(upper: &RootVector) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; upper.rank()];
    fill_cone(&mut cur, 0, upper.height(), Some(upper), &mut out);
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

fn fill_cone(
    cur: &mut Vec<i64>,
    i: usize,
    budget: i64,
    upper: Option<&RootVector>,
    out: &mut Vec<RootVector>,
) {
    if i == cur.len() {
        out.push(RootVector(cur.clone()));
        return;
    }
    let cap = upper.map_or(budget, |u| u.0[i].min(budget));
    for c in 0..=cap.max(-1) {
        cur[i] = c;
        fill_cone(cur, i + 1, budget - c, upper, out);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_and_cone() {
        let b = RootVector(vec![1, 2, 0]);
        assert_eq!(b.height(), 3);
        assert!(b.is_nonnegative());
        assert!(!(-&b).is_nonnegative());
    }

    #[test]
    fn weight_json_omits_zero_delta() {
        let w = Weight::from_labels(vec![1, 0]);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"labels":[1,0]}"#);
        let v: Weight = serde_json::from_str(r#"{"labels":[0,0],"delta":-1}"#).unwrap();
        assert_eq!(v, Weight::new(vec![0, 0], -1));
        assert_eq!(v.to_string(), "(0,0)-d");
    }

    #[test]
    fn cone_enumeration() {
        assert_eq!(cone_up_to(2, 2).len(), 6);
        assert_eq!(cone_up_to(3, 0), vec![RootVector::zero(3)]);
        let b = cone_below(&RootVector(vec![1, 2]));
        assert_eq!(b.len(), 6);
        assert!(cone_below(&RootVector(vec![-1, 2])).is_empty());
    }
}
