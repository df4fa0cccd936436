//! Characters, the kernel `Delta~`, Hall-Littlewood functions and their
//! expansion coefficients `c_{lambda mu}(t)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::kostka::{dominant_cone, pair, tensor_decompose, KostkaEngine, WeightMultiplicities};
use crate::linalg::Rational;
use crate::report::CheckReport;
use crate::series::{FormalSeries, Poly};
use crate::weight::{cone_up_to, RootVector, Weight};

/// Truncated expansion `P_lambda = sum_mu c_{lambda mu}(t) chi_mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HLExpansion {
    pub lambda: Weight,
    pub depth: usize,
    pub entries: Vec<HLEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HLEntry {
    pub mu: Weight,
    pub offset: RootVector,
    pub c: Poly,
}

impl HLExpansion {
    pub fn get(&self, mu: &Weight) -> Option<&Poly> {
        self.entries.iter().find(|e| &e.mu == mu).map(|e| &e.c)
    }
}

/// `ch L(lambda)` truncated at `depth`.
pub fn character(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<FormalSeries> {
    let mults = WeightMultiplicities::compute(datum, lambda, depth)?;
    let mut out = FormalSeries::zero(lambda.clone(), depth);
    for beta in cone_up_to(datum.rank(), depth) {
        let mu = lambda - &datum.root_to_weight(&beta);
        let m = mults.multiplicity(&mu)?;
        out.add_term(&beta, &Poly::constant(m));
    }
    Ok(out)
}

/// `((1 - x) / (1 - t x))^m` in `x = e^{-alpha}`, truncated at `depth`.
fn kernel_factor(rank: usize, depth: usize, alpha: &RootVector, m: usize) -> FormalSeries {
    let mut f = FormalSeries::one(rank, depth);
    let h = alpha.height() as usize;
    for k in 1..=depth / h {
        let mut c = vec![0i64; k + 1];
        c[k] = 1;
        c[k - 1] = -1;
        f.add_term(&alpha.scale(k as i64), &Poly::from_coeffs(c));
    }
    let mut out = FormalSeries::one(rank, depth);
    for _ in 0..m {
        out = out.mul(&f);
    }
    out
}

/// `Delta~ = prod_{alpha > 0} ((1 - e^{-alpha}) / (1 - t e^{-alpha}))^{m_alpha}`.
pub fn delta_tilde(datum: &CartanDatum, depth: usize) -> FormalSeries {
    let rank = datum.rank();
    let mut out = FormalSeries::one(rank, depth);
    for (alpha, m) in datum.roots_up_to(depth).with_multiplicities() {
        out = out.mul(&kernel_factor(rank, depth, &alpha, m));
    }
    out
}

/// `c_{lambda mu}(t)` for every dominant `mu` within `depth`, by inverting the
/// unitriangular matrix of Lusztig values.
pub fn c_expansion(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<HLExpansion> {
    let engine = KostkaEngine::new(datum, depth)?;
    c_expansion_with(&engine, lambda)
}

pub(crate) fn c_expansion_with(engine: &KostkaEngine<'_>, lambda: &Weight) -> Result<HLExpansion> {
    let datum = engine.datum();
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let depth = engine.depth();
    let cone = dominant_cone(datum, lambda, depth);
    let mut entries: Vec<HLEntry> = Vec::with_capacity(cone.len());
    for (nu, offset) in cone {
        if offset.is_zero() {
            entries.push(HLEntry { mu: nu, offset, c: Poly::one() });
            continue;
        }
        // sum_{nu < mu <= lambda} c_{lambda mu} K_{mu nu} + c_{lambda nu} = 0
        let mut acc = Poly::zero();
        for e in &entries {
            if e.c.is_zero() || !offset.dominates(&e.offset) {
                continue;
            }
            let k = engine.lusztig(&e.mu, &nu)?;
            acc.add_product(&e.c, &k);
        }
        entries.push(HLEntry { mu: nu, offset, c: -acc });
    }
    Ok(HLExpansion { lambda: lambda.clone(), depth, entries })
}

/// `P_lambda = sum_mu c_{lambda mu}(t) chi_mu` truncated at `depth`.
pub fn hl_function(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<FormalSeries> {
    datum.stabilizer_poincare(lambda)?;
    let expansion = c_expansion(datum, lambda, depth)?;
    hl_from_expansion(datum, &expansion)
}

pub(crate) fn hl_from_expansion(datum: &CartanDatum, expansion: &HLExpansion) -> Result<FormalSeries> {
    let depth = expansion.depth;
    let lambda = &expansion.lambda;
    let mut out = FormalSeries::zero(lambda.clone(), depth);
    for e in &expansion.entries {
        if e.c.is_zero() {
            continue;
        }
        let rest = depth - e.offset.height() as usize;
        let chi = character(datum, &e.mu, rest)?.reanchor(datum, lambda)?;
        for (beta, m) in chi.terms() {
            out.add_term(beta, &(m * &e.c));
        }
    }
    Ok(out)
}

/// `P_lambda` with `t` specialized to the integer `a`.
pub fn specialize_hl(datum: &CartanDatum, lambda: &Weight, a: i64, depth: usize) -> Result<FormalSeries> {
    Ok(hl_function(datum, lambda, depth)?.evaluate_t(a))
}

/// Checks `c_{lambda mu}(-1)` against the multiplicity of `L(mu)` in
/// `L(lambda - rho) (x) L(rho)` for regular dominant `lambda` of finite type.
pub fn verify_tensor_minus_one(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<CheckReport> {
    if datum.is_affine() {
        return Err(Error::WrongKind("finite"));
    }
    datum.check_weight(lambda)?;
    if !lambda.is_regular_dominant() {
        return Err(Error::NotRegularDominant(lambda.to_string()));
    }
    let rho = datum.weyl_vector();
    let decomp = tensor_decompose(datum, &(lambda - &rho), &rho)?;
    let expansion = c_expansion(datum, lambda, depth)?;
    let mut report = CheckReport::new("tensor-minus-one");
    for e in &expansion.entries {
        let value = e.c.evaluate(-1);
        let mult = decomp.iter().find(|(pi, _)| pi == &e.mu).map_or(0, |(_, m)| *m);
        if value < 0 {
            report.fail(format!("c({})(-1) = {value} is negative", e.mu));
        }
        report.compare_at(
            format!("mu = {}", e.mu),
            e.offset.clone(),
            Poly::constant(value),
            Poly::constant(mult),
        );
    }
    // components of the tensor product that the cone must contain
    for (pi, m) in &decomp {
        if let Some(beta) = datum.weight_to_root(&(lambda - pi)) {
            if beta.height() as usize <= depth && expansion.get(pi).is_none() {
                report.compare_at(format!("mu = {pi}"), beta, Poly::zero(), Poly::constant(*m));
            }
        }
    }
    Ok(report)
}

/// Positive roots `alpha` with `(lambda, alpha) > 0` and height at most `depth`.
fn admissible_roots(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Vec<(RootVector, usize)> {
    datum
        .roots_up_to(depth)
        .with_multiplicities()
        .into_iter()
        .filter(|(a, _)| pair(datum, lambda, a) > Rational::from_integer(0))
        .collect()
}

/// `prod_{(lambda, alpha) > 0} (1 - t e^{-alpha})^{m_alpha}`.
fn stembridge_kernel(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: usize,
    t_cap: Option<usize>,
) -> FormalSeries {
    let rank = datum.rank();
    let mut out = FormalSeries::one(rank, depth);
    for (alpha, m) in admissible_roots(datum, lambda, depth) {
        let f = FormalSeries::one_minus(rank, depth, Poly::t(), &alpha);
        for _ in 0..m {
            out = out.mul_capped(&f, t_cap);
        }
    }
    out
}

/// `c_{lambda mu}(t)` by Stembridge's alternating sum over admissible multisets.
///
/// For finite type the sum is exact. For affine type the result is exact
/// modulo `t^{t_cap + 1}`: multisets of at most `t_cap` roots contribute
/// only when `lambda + rho - |A|` has the norm of `mu + rho`, which bounds
/// the height of `|A|`.
pub fn c_stembridge(
    datum: &CartanDatum,
    lambda: &Weight,
    mu: &Weight,
    t_cap: Option<usize>,
) -> Result<Poly> {
    datum.check_weight(lambda)?;
    datum.check_weight(mu)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    datum.stabilizer_poincare(lambda)?;
    let rho = datum.weyl_vector();
    let top = lambda + &rho;
    let target = mu + &rho;
    let depth = if datum.is_affine() {
        let cap = t_cap.ok_or_else(|| {
            Error::InvalidArgument("affine Stembridge sums need a t-degree cap".into())
        })?;
        stembridge_height_bound(datum, &top, &target, cap)
    } else {
        datum.finite_positive_roots().iter().map(|a| a.height() as usize).sum()
    };
    let kernel = stembridge_kernel(datum, lambda, depth, t_cap);
    let mut acc = Poly::zero();
    for (gamma, c) in kernel.terms() {
        let nu = &top - &datum.root_to_weight(gamma);
        let d = match datum.to_dominant(&nu) {
            Ok(d) => d,
            Err(Error::NotInTitsCone(_)) => continue,
            Err(e) => return Err(e),
        };
        if d.sign != 0 && d.weight == target {
            acc.add_scaled(c, d.sign);
        }
    }
    Ok(match t_cap {
        Some(cap) => acc.truncate(cap),
        None => acc,
    })
}

/// Height bound for `|A|` with `#A <= cap` and `|top - |A||^2 = |target|^2`.
///
/// Writing each root as `beta + k delta`, the norm condition reads
/// `2 (top, |A|) - |sum beta|^2 = |top|^2 - |target|^2`, and `(top, delta)` is the
/// (positive) level of `top`; this caps the total `delta`-content.
fn stembridge_height_bound(datum: &CartanDatum, top: &Weight, target: &Weight, cap: usize) -> usize {
    let n = Rational::from_integer(cap as i64);
    let norm_gap = datum.bilinear(top, top) - datum.bilinear(target, target);
    let finite = datum.finite_positive_roots();
    let max_pair = finite
        .iter()
        .map(|b| {
            let v = pair(datum, top, b);
            if v < Rational::from_integer(0) {
                -v
            } else {
                v
            }
        })
        .max()
        .unwrap_or_default();
    let level = Rational::from_integer(datum.level(top));
    let two = Rational::from_integer(2);
    let k_total = (norm_gap + two * n * max_pair + two * n * n) / (two * level);
    let k_total = k_total.ceil().to_integer().max(0) as usize;
    let ht_theta = datum.highest_root().height() as usize;
    let ht_delta = datum.delta_height().unwrap_or(0) as usize;
    cap * ht_theta + (k_total + cap) * ht_delta
}

/// Offsets `|B|` for admissible multisets `B` (real roots at most once,
/// imaginary roots at most `l` times) of height at most `depth`.
pub fn admissible_sums(datum: &CartanDatum, lambda: &Weight, depth: usize) -> HashSet<RootVector> {
    let mut sums: HashSet<RootVector> = HashSet::from([RootVector::zero(datum.rank())]);
    for (alpha, m) in admissible_roots(datum, lambda, depth) {
        let mut next = sums.clone();
        let mut frontier: Vec<RootVector> = sums.iter().cloned().collect();
        for _ in 0..m {
            let mut grown = Vec::new();
            for s in &frontier {
                let n = s + &alpha;
                if n.height() as usize <= depth {
                    next.insert(n.clone());
                    grown.push(n);
                }
            }
            frontier = grown;
        }
        sums = next;
    }
    sums
}

/// Prop 7.3-style support checks on a computed expansion: every nonzero
/// coefficient sits at an admissible offset, and (finite type) above `lambda - 2 rho`.
pub fn verify_c_support(datum: &CartanDatum, expansion: &HLExpansion) -> Result<CheckReport> {
    let lambda = &expansion.lambda;
    let sums = admissible_sums(datum, lambda, expansion.depth);
    let two_rho = datum.weyl_vector().scale(2);
    let floor = lambda - &two_rho;
    let mut report = CheckReport::new("c-support");
    for e in &expansion.entries {
        if e.c.is_zero() {
            continue;
        }
        report.compared += 1;
        if !sums.contains(&e.offset) {
            report.fail(format!("offset {} of {} is not a sum of admissible roots", e.offset, e.mu));
        }
        if !datum.is_affine() {
            let above = datum
                .weight_to_root(&(&e.mu - &floor))
                .is_some_and(|b| b.is_nonnegative());
            if !above {
                report.fail(format!("{} is not above lambda - 2 rho", e.mu));
            }
        }
    }
    Ok(report)
}

/// Compares Stembridge's sum with the inversion route on every entry of the cone.
///
/// Affine algebras need `t_cap`; both sides are then compared modulo `t^{t_cap + 1}`.
pub fn verify_stembridge(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: usize,
    t_cap: Option<usize>,
) -> Result<CheckReport> {
    let expansion = c_expansion(datum, lambda, depth)?;
    let mut report = CheckReport::new("stembridge");
    for e in &expansion.entries {
        let s = c_stembridge(datum, lambda, &e.mu, t_cap)?;
        let c = match t_cap {
            Some(cap) => e.c.truncate(cap),
            None => e.c.clone(),
        };
        report.compare_at(format!("mu = {}", e.mu), e.offset.clone(), s, c);
    }
    Ok(report)
}

/// Checks `[e^mu] Delta~ P_lambda = delta_{lambda mu}` for dominant `mu` within `depth`.
pub fn verify_dellm(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<CheckReport> {
    let p = hl_function(datum, lambda, depth)?;
    let product = delta_tilde(datum, depth).mul(&p);
    let mut report = CheckReport::new("dellm");
    for (mu, beta) in dominant_cone(datum, lambda, depth) {
        let expected = if beta.is_zero() { Poly::one() } else { Poly::zero() };
        report.compare_at(format!("mu = {mu}"), beta.clone(), product.coeff(&beta), expected);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(labels: &[i64]) -> Weight {
        Weight::from_labels(labels.to_vec())
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn characters() {
        let a1 = CartanDatum::named("A1").unwrap();
        let chi = character(&a1, &w(&[2]), 2).unwrap();
        assert_eq!(chi.len(), 3);
        assert_eq!(chi.coeff(&rv(&[2])), Poly::one());
        let a2 = CartanDatum::named("A2").unwrap();
        let adj = character(&a2, &w(&[1, 1]), 2).unwrap();
        assert_eq!(adj.coeff(&rv(&[1, 1])), Poly::constant(2));
        assert_eq!(adj.len(), 4);
    }

    #[test]
    fn rho_character_is_a_product() {
        for name in ["A2", "B2", "A1~"] {
            let d = CartanDatum::named(name).unwrap();
            let depth = 4;
            let mut prod = FormalSeries::exp(d.weyl_vector(), depth);
            for (alpha, m) in d.roots_up_to(depth).with_multiplicities() {
                let f = FormalSeries::one_minus(d.rank(), depth, Poly::constant(-1), &alpha);
                for _ in 0..m {
                    prod = prod.mul(&f);
                }
            }
            assert_eq!(character(&d, &d.weyl_vector(), depth).unwrap(), prod, "{name}");
        }
    }

    #[test]
    fn delta_tilde_examples() {
        let a2 = CartanDatum::named("A2").unwrap();
        let dt = delta_tilde(&a2, 1);
        assert_eq!(dt.coeff(&rv(&[1, 0])), p(&[-1, 1]));
        assert_eq!(dt.coeff(&rv(&[0, 1])), p(&[-1, 1]));
        assert_eq!(dt.evaluate_t(1), FormalSeries::one(2, 1));
        let at0 = delta_tilde(&a2, 4).evaluate_t(0);
        let mut prod = FormalSeries::one(2, 4);
        for (alpha, _) in a2.roots_up_to(4).with_multiplicities() {
            prod = prod.mul(&FormalSeries::one_minus(2, 4, Poly::one(), &alpha));
        }
        assert_eq!(at0, prod);
    }

    #[test]
    fn expansions() {
        let a1 = CartanDatum::named("A1").unwrap();
        let e = c_expansion(&a1, &w(&[2]), 2).unwrap();
        assert_eq!(e.get(&w(&[2])), Some(&Poly::one()));
        assert_eq!(e.get(&w(&[0])), Some(&p(&[0, -1])));
        let aff = CartanDatum::named("A1~").unwrap();
        let e = c_expansion(&aff, &w(&[0, 0]), 2).unwrap();
        assert_eq!(e.get(&Weight::new(vec![0, 0], -1)), Some(&p(&[0, 1, -1])));
    }

    #[test]
    fn hl_functions() {
        let a1 = CartanDatum::named("A1").unwrap();
        let hl = hl_function(&a1, &w(&[2]), 2).unwrap();
        assert_eq!(hl.coeff(&rv(&[0])), Poly::one());
        assert_eq!(hl.coeff(&rv(&[1])), p(&[1, -1]));
        assert_eq!(hl.coeff(&rv(&[2])), Poly::one());
        assert_eq!(hl.evaluate_t(0), character(&a1, &w(&[2]), 2).unwrap());
        let aff = CartanDatum::named("A1~").unwrap();
        assert!(matches!(
            hl_function(&aff, &w(&[0, 0]), 2),
            Err(Error::InfiniteStabilizer(_))
        ));
    }

    #[test]
    fn stembridge_examples() {
        let a1 = CartanDatum::named("A1").unwrap();
        assert_eq!(c_stembridge(&a1, &w(&[2]), &w(&[2]), None).unwrap(), Poly::one());
        assert_eq!(c_stembridge(&a1, &w(&[2]), &w(&[0]), None).unwrap(), p(&[0, -1]));
        let a2 = CartanDatum::named("A2").unwrap();
        // the subset {alpha_1, alpha_1 + alpha_2} has height 3 and still contributes
        assert_eq!(c_stembridge(&a2, &w(&[1, 1]), &w(&[0, 0]), None).unwrap(), p(&[0, -1, -1]));
        let aff = CartanDatum::named("A1~").unwrap();
        assert!(c_stembridge(&aff, &w(&[1, 0]), &Weight::new(vec![1, 0], -1), None).is_err());
    }

    #[test]
    fn dellm_small() {
        let a2 = CartanDatum::named("A2").unwrap();
        assert!(verify_dellm(&a2, &w(&[1, 1]), 3).unwrap().passed);
        let a1 = CartanDatum::named("A1").unwrap();
        assert!(verify_dellm(&a1, &w(&[2]), 4).unwrap().passed);
    }

    #[test]
    fn dellm_at_t_zero_is_the_alternating_sum() {
        // at t = 0 the product is the Weyl numerator e^{-rho} J(e^{lambda + rho})
        let a2 = CartanDatum::named("A2").unwrap();
        let lambda = w(&[2, 1]);
        let depth = 5;
        let chi = character(&a2, &lambda, depth).unwrap();
        let prod = delta_tilde(&a2, depth).evaluate_t(0).mul(&chi);
        for (mu, beta) in dominant_cone(&a2, &lambda, depth) {
            let want = if mu == lambda { 1 } else { 0 };
            assert_eq!(prod.coeff(&beta), Poly::constant(want), "{mu}");
        }
    }

    #[test]
    fn tensor_minus_one() {
        let a1 = CartanDatum::named("A1").unwrap();
        let r = verify_tensor_minus_one(&a1, &w(&[2]), 2).unwrap();
        assert!(r.passed, "{r:?}");
        let a2 = CartanDatum::named("A2").unwrap();
        let r = verify_tensor_minus_one(&a2, &w(&[1, 1]), 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(matches!(
            verify_tensor_minus_one(&a2, &w(&[1, 0]), 2),
            Err(Error::NotRegularDominant(_))
        ));
    }

    #[test]
    fn specialization_at_minus_one() {
        let a1 = CartanDatum::named("A1").unwrap();
        let s = specialize_hl(&a1, &w(&[2]), -1, 2).unwrap();
        assert_eq!(s.coeff(&rv(&[1])), Poly::constant(2));
    }
}
