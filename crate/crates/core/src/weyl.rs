//! Simple reflections, dominant normalization, stabilizers and orbit intervals.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::series::Poly;
use crate::weight::{RootVector, Weight};

/// A point `w(top)` of a Weyl orbit together with `l(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub weight: Weight,
    pub parity: i64,
    pub length: usize,
}

/// Result of moving a weight into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominant {
    pub weight: Weight,
    /// `(-1)^steps`, or 0 when the dominant representative has a nontrivial stabilizer.
    pub sign: i64,
    pub steps: usize,
    pub finite_stabilizer: bool,
}

impl CartanDatum {
    /// `r_i(x) = x - <x, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, x: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(x)?;
        Ok(self.reflect_unchecked(i, x))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, x: &Weight) -> Weight {
        let k = x.labels[i];
        if k == 0 {
            return x.clone();
        }
        let mut out = x.clone();
        for (j, row) in self.matrix().iter().enumerate() {
            out.labels[j] -= k * row[i];
        }
        if self.affine_node() == Some(i) {
            out.delta -= k;
        }
        out
    }

    /// Simple reflection on a root-lattice vector.
    pub fn reflect_root(&self, i: usize, beta: &RootVector) -> Result<RootVector> {
        self.check_index(i)?;
        if beta.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: beta.rank() });
        }
        let mut out = beta.clone();
        out.0[i] -= self.pairing_root(beta, i);
        Ok(out)
    }

    /// A step bound generous enough for every weight in the Tits cone of this size.
    pub fn default_step_bound(&self, gamma: &Weight) -> usize {
        let size: i64 = 1 + gamma.labels.iter().map(|m| m.abs()).sum::<i64>();
        10 * self.rank() * self.rank() * (size * size) as usize
    }

    pub fn to_dominant(&self, gamma: &Weight) -> Result<Dominant> {
        self.to_dominant_bounded(gamma, self.default_step_bound(gamma))
    }

    /// Reflects at negative labels until the weight is dominant.
    pub fn to_dominant_bounded(&self, gamma: &Weight, max_steps: usize) -> Result<Dominant> {
        self.check_weight(gamma)?;
        if self.is_affine() {
            let level = self.level(gamma);
            if level < 0 || (level == 0 && gamma.labels.iter().any(|&m| m != 0)) {
                return Err(Error::NotInTitsCone(0));
            }
        }
        let mut x = gamma.clone();
        let mut steps = 0;
        while let Some(i) = x.labels.iter().position(|&m| m < 0) {
            if steps == max_steps {
                return Err(Error::NotInTitsCone(max_steps));
            }
            x = self.reflect_unchecked(i, &x);
            steps += 1;
        }
        let finite_stabilizer = !(self.is_affine() && x.labels.iter().all(|&m| m == 0));
        let sign = if x.labels.contains(&0) {
            0
        } else if steps % 2 == 0 {
            1
        } else {
            -1
        };
        Ok(Dominant { weight: x, sign, steps, finite_stabilizer })
    }

    /// Poincare polynomial `sum_{w in W_lambda} t^{l(w)}` of the stabilizer of a dominant weight.
    pub fn stabilizer_poincare(&self, lambda: &Weight) -> Result<Poly> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let zeros: Vec<usize> = (0..self.rank()).filter(|&i| lambda.labels[i] == 0).collect();
        self.parabolic_poincare(&zeros)
            .ok_or_else(|| Error::InfiniteStabilizer(lambda.to_string()))
    }

    /// Poincare polynomial of the parabolic subgroup on `nodes`, `None` if it is infinite.
    pub fn parabolic_poincare(&self, nodes: &[usize]) -> Option<Poly> {
        if nodes.is_empty() {
            return Some(Poly::one());
        }
        if self.is_affine() && nodes.len() == self.rank() {
            return None;
        }
        let sub = crate::linalg::principal_minor(self.matrix(), nodes);
        let datum = CartanDatum::validate(sub, None).ok()?;
        if datum.is_affine() {
            return None;
        }
        let mut out = Poly::one();
        for d in datum.component_degrees() {
            out = &out * &Poly::from_coeffs(vec![1; d as usize]);
        }
        Some(out)
    }

    /// Degrees of every simple component of a finite-type datum.
    fn component_degrees(&self) -> Vec<i64> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for j in 0..n {
                    if !seen[j] && self.matrix()[comp[k]][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let sub = crate::linalg::principal_minor(self.matrix(), &comp);
            let d = CartanDatum::validate(sub, None).expect("components of finite type are finite");
            out.extend(d.degrees());
        }
        out
    }

    /// Orbit points `nu = w(top)` with `nu - floor` in `Q+`.
    ///
    /// `top` must be regular dominant. The walk only applies descending
    /// reflections, and a descending step lowers a single simple-root
    /// coordinate, so a point that leaves `floor + Q+` never returns.
    pub fn orbit_interval(&self, top: &Weight, floor: &Weight) -> Result<Vec<OrbitPoint>> {
        Ok(self.orbit_interval_offsets(top, floor)?.into_iter().map(|(p, _)| p).collect())
    }

    /// As [`CartanDatum::orbit_interval`], pairing each point with `nu - floor`.
    pub fn orbit_interval_offsets(
        &self,
        top: &Weight,
        floor: &Weight,
    ) -> Result<Vec<(OrbitPoint, RootVector)>> {
        self.check_weight(top)?;
        self.check_weight(floor)?;
        if !top.is_regular_dominant() {
            return Err(Error::NotRegularDominant(top.to_string()));
        }
        let Some(offset) = self.weight_to_root(&(top - floor)) else {
            return Ok(Vec::new());
        };
        if !offset.is_nonnegative() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut level: Vec<(Weight, RootVector)> = vec![(top.clone(), offset)];
        let mut length = 0;
        while !level.is_empty() {
            let parity = if length % 2 == 0 { 1 } else { -1 };
            let mut next = Vec::new();
            let mut seen: HashSet<Weight> = HashSet::new();
            for (nu, off) in &level {
                for i in 0..self.rank() {
                    let k = nu.labels[i];
                    if k <= 0 || off.0[i] < k {
                        continue;
                    }
                    let w = self.reflect_unchecked(i, nu);
                    if seen.insert(w.clone()) {
                        let mut o = off.clone();
                        o.0[i] -= k;
                        next.push((w, o));
                    }
                }
            }
            out.extend(
                level.into_iter().map(|(weight, off)| (OrbitPoint { weight, parity, length }, off)),
            );
            level = next;
            length += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(labels: &[i64]) -> Weight {
        Weight::from_labels(labels.to_vec())
    }

    #[test]
    fn reflections() {
        let d = CartanDatum::named("A2").unwrap();
        let a1 = d.simple_root_weight(0);
        assert_eq!(d.reflect(0, &a1).unwrap(), -&a1);
        let rho = d.weyl_vector();
        assert_eq!(d.reflect(1, &rho).unwrap(), &rho - &d.simple_root_weight(1));
        let l1 = d.fundamental_weight(0);
        assert_eq!(d.reflect(0, &l1).unwrap(), &l1 - &a1);
        assert!(matches!(d.reflect(5, &rho), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(
            d.reflect_root(0, &RootVector(vec![1, 0])).unwrap(),
            RootVector(vec![-1, 0])
        );
    }

    #[test]
    fn dominant_representatives() {
        let d = CartanDatum::named("A2").unwrap();
        let r = d.to_dominant(&w(&[-2, 1])).unwrap();
        assert_eq!(r.weight, w(&[1, 1]));
        assert_eq!(r.sign, 1);
        assert_eq!(r.steps, 2);
        let r = d.to_dominant(&w(&[1, 0])).unwrap();
        assert_eq!(r.sign, 0);
        assert!(r.finite_stabilizer);
        let r = d.to_dominant(&w(&[2, 3])).unwrap();
        assert_eq!((r.sign, r.steps), (1, 0));
    }

    #[test]
    fn affine_dominance_and_tits_cone() {
        let d = CartanDatum::named("A1~").unwrap();
        let r = d.to_dominant(&Weight::new(vec![3, -1], 0)).unwrap();
        assert!(r.weight.is_dominant());
        assert_eq!(d.level(&r.weight), 2);
        assert!(matches!(d.to_dominant(&w(&[1, -1])), Err(Error::NotInTitsCone(_))));
        assert!(matches!(
            d.to_dominant_bounded(&w(&[5, -3]), 1),
            Err(Error::NotInTitsCone(1))
        ));
        let z = d.to_dominant(&Weight::new(vec![0, 0], -2)).unwrap();
        assert!(!z.finite_stabilizer);
    }

    #[test]
    fn poincare_polynomials() {
        let a2 = CartanDatum::named("A2").unwrap();
        assert_eq!(a2.stabilizer_poincare(&w(&[1, 1])).unwrap(), Poly::one());
        assert_eq!(
            a2.stabilizer_poincare(&w(&[0, 0])).unwrap(),
            Poly::from_coeffs(vec![1, 2, 2, 1])
        );
        let aff = CartanDatum::named("A1~").unwrap();
        assert_eq!(
            aff.stabilizer_poincare(&w(&[1, 0])).unwrap(),
            Poly::from_coeffs(vec![1, 1])
        );
        assert!(matches!(
            aff.stabilizer_poincare(&w(&[0, 0])),
            Err(Error::InfiniteStabilizer(_))
        ));
    }

    #[test]
    fn orbit_intervals() {
        let a1 = CartanDatum::named("A1").unwrap();
        let pts = a1.orbit_interval(&w(&[3]), &w(&[1])).unwrap();
        assert_eq!(pts.len(), 1);

        let aff = CartanDatum::named("A1~").unwrap();
        let rho = aff.weyl_vector();
        let pts = aff.orbit_interval(&rho, &rho.shift_delta(-1)).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts.iter().map(|p| p.parity).sum::<i64>(), -1);

        let a2 = CartanDatum::named("A2").unwrap();
        let all = a2.orbit_interval(&w(&[1, 1]), &w(&[-10, -10])).unwrap();
        assert_eq!(all.len(), 6);
        let mut poincare = Poly::zero();
        for p in &all {
            poincare += &Poly::monomial(1, p.length);
        }
        assert_eq!(poincare, a2.stabilizer_poincare(&w(&[0, 0])).unwrap());
    }
}
