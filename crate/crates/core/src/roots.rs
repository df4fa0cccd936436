//! Positive roots up to a height bound, and coroot-height statistics.

use std::collections::BTreeMap;

use crate::cartan::CartanDatum;
use crate::linalg::Rational;
use crate::weight::RootVector;

/// All positive roots of height at most `height_bound`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSlice {
    pub height_bound: usize,
    /// Real roots (multiplicity one), sorted by height.
    pub real_roots: Vec<RootVector>,
    /// Imaginary roots `k delta`, sorted by height.
    pub imaginary_roots: Vec<RootVector>,
    /// Multiplicity `l` of each imaginary root; zero for finite type.
    pub imaginary_multiplicity: usize,
}

impl RootSlice {
    /// Every root with its multiplicity, in increasing height order.
    pub fn with_multiplicities(&self) -> Vec<(RootVector, usize)> {
        let mut all: Vec<(RootVector, usize)> = self
            .real_roots
            .iter()
            .map(|r| (r.clone(), 1))
            .chain(self.imaginary_roots.iter().map(|r| (r.clone(), self.imaginary_multiplicity)))
            .collect();
        all.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(&b.0)));
        all
    }

    pub fn multiplicity(&self, root: &RootVector) -> usize {
        if self.real_roots.contains(root) {
            1
        } else if self.imaginary_roots.contains(root) {
            self.imaginary_multiplicity
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.real_roots.len() + self.imaginary_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl CartanDatum {
    /// Positive roots of height at most `h`.
    pub fn roots_up_to(&self, h: usize) -> RootSlice {
        let h = h as i64;
        let finite: Vec<RootVector> =
            self.finite_positive_roots().iter().filter(|r| r.height() <= h).cloned().collect();
        let Some(delta) = self.delta() else {
            return RootSlice {
                height_bound: h as usize,
                real_roots: finite,
                imaginary_roots: Vec::new(),
                imaginary_multiplicity: 0,
            };
        };
        let hd = delta.height();
        let mut real = Vec::new();
        let mut imaginary = Vec::new();
        let reach = h + self.highest_root().height();
        for k in 0..=reach / hd {
            let kd = delta.scale(k);
            if k >= 1 && k * hd <= h {
                imaginary.push(kd.clone());
            }
            for beta in self.finite_positive_roots() {
                let up = &kd + beta;
                if up.height() <= h {
                    real.push(up);
                }
                if k >= 1 {
                    let down = &kd - beta;
                    if down.height() <= h {
                        real.push(down);
                    }
                }
            }
        }
        real.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        RootSlice {
            height_bound: h as usize,
            real_roots: real,
            imaginary_roots: imaginary,
            imaginary_multiplicity: self.finite_rank(),
        }
    }

    /// `(alpha, alpha)` for a real root.
    pub fn root_norm(&self, alpha: &RootVector) -> Rational {
        self.bilinear_roots(alpha, alpha)
    }

    /// `(rho, alpha^vee)` for a positive real root of the finite part.
    pub fn coroot_height(&self, alpha: &RootVector) -> i64 {
        let rho_alpha: Rational = (0..self.rank())
            .map(|i| Rational::from_integer(alpha.0[i]) * self.half_norm(i))
            .sum();
        let v = Rational::from_integer(2) * rho_alpha / self.root_norm(alpha);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// `j -> p_j`, the number of positive roots of the finite part with coroot height `j`.
    pub fn coroot_height_counts(&self) -> BTreeMap<i64, usize> {
        let mut counts = BTreeMap::new();
        for alpha in self.finite_positive_roots() {
            *counts.entry(self.coroot_height(alpha)).or_insert(0) += 1;
        }
        counts
    }

    /// Exponents of the finite part (ascending, with repetition): `j` occurs `p_j - p_{j+1}` times.
    pub fn exponents(&self) -> Vec<i64> {
        let counts = self.coroot_height_counts();
        let p = |j: i64| counts.get(&j).copied().unwrap_or(0);
        let mut out = Vec::new();
        for &j in counts.keys() {
            for _ in 0..p(j).saturating_sub(p(j + 1)) {
                out.push(j);
            }
        }
        out
    }

    /// Degrees of the basic invariants of the finite part: exponents plus one.
    pub fn degrees(&self) -> Vec<i64> {
        self.exponents().into_iter().map(|e| e + 1).collect()
    }

    /// `true` if `beta` is a positive real or imaginary root.
    pub fn is_positive_root(&self, beta: &RootVector) -> bool {
        if beta.is_zero() || !beta.is_nonnegative() {
            return false;
        }
        let slice = self.roots_up_to(beta.height() as usize);
        slice.multiplicity(beta) > 0
    }
}
