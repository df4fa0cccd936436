//! t-string functions of untwisted affine algebras and the constant-term
//! product identities they satisfy.

use std::collections::{HashMap, HashSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::hall_littlewood::{character, delta_tilde};
use crate::kostka::lusztig;
use crate::linalg::Rational;
use crate::report::CheckReport;
use crate::series::{pochhammer, FormalSeries, Poly, QSeries};
use crate::weight::{RootVector, Weight};

/// `a^lambda_mu(t) = sum_k K_{lambda, mu - k delta}(t) q^k`, truncated at `q^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringFunction {
    pub lambda: Weight,
    pub mu: Weight,
    pub order: usize,
    pub series: QSeries,
}

fn affine_only(datum: &CartanDatum) -> Result<(usize, RootVector, usize)> {
    let p = datum.affine_node().ok_or(Error::WrongKind("affine"))?;
    let delta = datum.delta().expect("affine");
    let hd = delta.height() as usize;
    Ok((p, delta, hd))
}

fn is_simply_laced(datum: &CartanDatum) -> bool {
    (0..datum.rank()).all(|i| datum.half_norm(i).is_one())
}

/// `Max(lambda)`: dominant `mu <= lambda` with `mu + delta` not below `lambda`.
///
/// Each dominant label vector of the right level contributes at most one
/// element, with the largest `delta` coefficient that keeps `lambda - mu` in `Q+`.
pub fn max_set(datum: &CartanDatum, lambda: &Weight) -> Result<Vec<Weight>> {
    let (p, delta, _) = affine_only(datum)?;
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let level = datum.level(lambda);
    let comarks = datum.comarks().expect("affine").to_vec();
    let mut labels = Vec::new();
    level_labels(&comarks, level, 0, &mut vec![0; datum.rank()], &mut labels);
    let mut out = Vec::new();
    for l in labels {
        // root coordinates of lambda - mu with its delta part set to zero
        let mut diff = lambda - &Weight::new(l.clone(), lambda.delta);
        diff.delta = 0;
        let Some(r0) = datum.weight_to_root(&diff) else { continue };
        debug_assert_eq!(r0.0[p], 0);
        let c = (0..datum.rank())
            .map(|i| ceil_div(-r0.0[i], delta.0[i]))
            .max()
            .unwrap_or(0)
            .max(0);
        out.push(Weight::new(l, lambda.delta - c));
    }
    out.sort();
    Ok(out)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn level_labels(comarks: &[i64], remaining: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == comarks.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut m = 0;
    while m * comarks[i] <= remaining {
        cur[i] = m;
        level_labels(comarks, remaining - m * comarks[i], i + 1, cur, out);
        m += 1;
    }
    cur[i] = 0;
}

/// `a^lambda_mu(t) = ct(e^{-mu} Delta~ chi_lambda)`.
pub fn t_string(datum: &CartanDatum, lambda: &Weight, mu: &Weight, order: usize) -> Result<StringFunction> {
    let (_, _, hd) = affine_only(datum)?;
    datum.check_weight(mu)?;
    let offset = datum
        .weight_to_root(&(lambda - mu))
        .filter(|b| b.is_nonnegative())
        .ok_or_else(|| Error::InvalidArgument(format!("{mu} is not below {lambda}")))?;
    let depth = offset.height() as usize + order * hd;
    let chi = character(datum, lambda, depth)?;
    let prod = delta_tilde(datum, depth).mul(&chi);
    let shifted = FormalSeries::exp(-mu, depth).mul(&prod);
    let series = shifted.constant_term(datum)?.truncate(order);
    Ok(StringFunction { lambda: lambda.clone(), mu: mu.clone(), order, series })
}

/// `a^0_0(t) = ct(Delta~)`.
pub fn level0_string(datum: &CartanDatum, order: usize) -> Result<QSeries> {
    let (_, _, hd) = affine_only(datum)?;
    Ok(delta_tilde(datum, order * hd).constant_term(datum)?.truncate(order))
}

/// `Delta~^im = ((q; q) / (tq; q))^l`.
pub fn delta_im(datum: &CartanDatum, order: usize) -> Result<QSeries> {
    affine_only(datum)?;
    let l = datum.finite_rank();
    let ratio = pochhammer(0, order).div(&pochhammer(1, order))?;
    Ok(ratio.pow(l))
}

fn coroot_heights(datum: &CartanDatum) -> Vec<usize> {
    datum
        .finite_positive_roots()
        .iter()
        .map(|a| datum.coroot_height(a) as usize)
        .collect()
}

/// `prod_alpha (t^h q; q)^2 / ((t^{h+1} q; q)(t^{h-1} q; q))`, `h = (rho, alpha^vee)`.
pub fn cherednik_ct_mu(datum: &CartanDatum, order: usize) -> Result<QSeries> {
    affine_only(datum)?;
    let mut num = QSeries::one(order);
    let mut den = QSeries::one(order);
    for h in coroot_heights(datum) {
        num = num.mul(&pochhammer(h, order).pow(2));
        den = den.mul(&pochhammer(h + 1, order)).mul(&pochhammer(h - 1, order));
    }
    num.div(&den)
}

/// `prod_alpha (t^h q; q) / (t^{h+1} q; q)`.
pub fn cherednik_ct_mu_theta(datum: &CartanDatum, order: usize) -> Result<QSeries> {
    affine_only(datum)?;
    let mut num = QSeries::one(order);
    let mut den = QSeries::one(order);
    for h in coroot_heights(datum) {
        num = num.mul(&pochhammer(h, order));
        den = den.mul(&pochhammer(h + 1, order));
    }
    num.div(&den)
}

/// A `q`-series as a formal series anchored at 0 (`q = e^{-delta}`).
pub fn q_to_formal(datum: &CartanDatum, s: &QSeries, depth: usize) -> Result<FormalSeries> {
    let (_, delta, _) = affine_only(datum)?;
    let mut out = FormalSeries::zero(Weight::zero(datum.rank()), depth);
    for k in 0..=s.order() {
        out.add_term(&delta.scale(k as i64), s.coeff(k));
    }
    Ok(out)
}

/// `mu^ = prod_{alpha real > 0} (1 - e^{-alpha}) / (1 - t e^{-alpha})`.
pub fn mu_hat(datum: &CartanDatum, depth: usize, t_cap: Option<usize>) -> Result<FormalSeries> {
    affine_only(datum)?;
    let rank = datum.rank();
    let mut out = FormalSeries::one(rank, depth);
    for alpha in datum.roots_up_to(depth).real_roots {
        let num = FormalSeries::one_minus(rank, depth, Poly::one(), &alpha);
        let den = FormalSeries::geometric(rank, depth, &Poly::t(), &alpha);
        out = out.mul_capped(&num, t_cap).mul_capped(&den, t_cap);
    }
    Ok(out)
}

/// `Theta = sum_{alpha in Q} e^alpha q^{(alpha, alpha)/2}` over the root lattice of
/// the finite part, as a series anchored at 0 with offsets `(alpha,alpha)/2 delta - alpha`.
///
/// Only simply-laced algebras are supported; otherwise `(alpha, alpha)/2`
/// is not integral on the whole root lattice.
pub fn theta_series(datum: &CartanDatum, order: usize) -> Result<FormalSeries> {
    let (p, delta, hd) = affine_only(datum)?;
    if !is_simply_laced(datum) {
        return Err(Error::PreconditionViolated(
            "the root-lattice theta series needs a simply-laced algebra".into(),
        ));
    }
    let depth = order * hd;
    let bound = depth as i64 * delta.0.iter().max().copied().unwrap_or(1);
    let nodes = datum.finite_nodes().to_vec();
    let mut out = FormalSeries::zero(Weight::zero(datum.rank()), depth);
    let mut alpha = vec![0i64; datum.rank()];
    theta_fill(datum, &nodes, 0, bound, &mut alpha, &delta, &mut out);
    debug_assert_eq!(alpha[p], 0);
    Ok(out)
}

fn theta_fill(
    datum: &CartanDatum,
    nodes: &[usize],
    k: usize,
    bound: i64,
    alpha: &mut Vec<i64>,
    delta: &RootVector,
    out: &mut FormalSeries,
) {
    if k == nodes.len() {
        let a = RootVector(alpha.clone());
        let half = datum.bilinear_roots(&a, &a) / Rational::from_integer(2);
        let n = half.to_integer();
        let beta = &delta.scale(n) - &a;
        out.add_term(&beta, &Poly::one());
        return;
    }
    for v in -bound..=bound {
        alpha[nodes[k]] = v;
        theta_fill(datum, nodes, k + 1, bound, alpha, delta, out);
    }
    alpha[nodes[k]] = 0;
}

/// Checks the level-0 string `ct(Delta~)` against `Delta~^im ct(mu^)` and the
/// closed product for `ct(mu^)`, and the Lusztig values `K_{0, -k delta}`.
pub fn verify_level0(datum: &CartanDatum, order: usize) -> Result<CheckReport> {
    let (_, _, hd) = affine_only(datum)?;
    let direct = level0_string(datum, order)?;
    let product = delta_im(datum, order)?.mul(&cherednik_ct_mu(datum, order)?);
    let mut report = CheckReport::new("level0");
    report.compare_series("ct(Delta~) vs product", &direct, &product);
    let ct_mu = mu_hat(datum, order * hd, None)?.constant_term(datum)?;
    report.compare_series("ct(mu^) vs product", &ct_mu, &cherednik_ct_mu(datum, order)?);
    report.compare_series("t = 1", &direct.evaluate_t(1), &QSeries::one(order));
    let zero = Weight::zero(datum.rank());
    for k in 0..=order {
        let lus = lusztig(datum, &zero, &zero.shift_delta(-(k as i64)))?;
        report.compare(crate::report::Comparison {
            label: "Lusztig route".into(),
            q_order: Some(k),
            offset: None,
            lhs: direct.coeff(k).clone(),
            rhs: lus,
        });
    }
    Ok(report)
}

/// Checks the level-one string function of `Lambda_0` against its product formulas.
pub fn level1_check(datum: &CartanDatum, order: usize) -> Result<CheckReport> {
    let (p, _, hd) = affine_only(datum)?;
    let lam0 = datum.fundamental_weight(p);
    let a = t_string(datum, &lam0, &lam0, order)?.series;
    let a1 = a.evaluate_t(1);
    let ratio = a.div(&a1)?;
    let degrees = datum.degrees();
    let l = datum.finite_rank();

    let mut product = QSeries::one(order);
    for &d in &degrees {
        product = product.mul(&pochhammer(0, order)).div(&pochhammer(d as usize, order))?;
    }
    let mut report = CheckReport::new("level1");
    report.compare_series("a(t)/a(1) vs degree product", &ratio, &product);
    let mm = delta_im(datum, order)?.mul(&cherednik_ct_mu_theta(datum, order)?);
    report.compare_series("a(t)/a(1) vs Macdonald-Mehta product", &ratio, &mm);
    let mut closed = pochhammer(1, order).pow(l);
    for &d in &degrees {
        closed = closed.div(&pochhammer(d as usize, order))?;
    }
    report.compare_series("ct(mu^ Theta) closed form", &cherednik_ct_mu_theta(datum, order)?, &closed);
    if order >= 1 {
        let sum = degrees.iter().fold(Poly::zero(), |acc, &d| &acc + &Poly::monomial(1, d as usize));
        report.compare(crate::report::Comparison {
            label: "K(Lambda_0, Lambda_0 - delta) = sum t^d".into(),
            q_order: Some(1),
            offset: None,
            lhs: a.coeff(1).clone(),
            rhs: sum,
        });
    }
    if is_simply_laced(datum) {
        let mut simple = QSeries::one(order);
        for &d in &degrees {
            simple = simple.div(&pochhammer(d as usize, order))?;
        }
        report.compare_series("a(t) simply-laced closed form", &a, &simple);
        let a1_closed = pochhammer(0, order).pow(l).inverse()?;
        report.compare_series("a(1) = 1/(q;q)^l", &a1, &a1_closed);
        let depth = order * hd;
        let chi = FormalSeries::exp(-&lam0, depth).mul(&character(datum, &lam0, depth)?);
        let theta = q_to_formal(datum, &a1, depth)?.mul(&theta_series(datum, order)?);
        let mut theta_report = CheckReport::new("theta");
        for (beta, c) in theta.terms().chain(chi.terms()) {
            theta_report.compare_at("e^-L0 chi_L0 vs a(1) Theta", beta.clone(), chi.coeff(beta), theta.coeff(beta));
            let _ = c;
        }
        report.absorb(theta_report);
    }
    Ok(report)
}

/// A Weyl group element reached by the ball search.
struct BallElement {
    word: Vec<usize>,
    inversions: Vec<RootVector>,
}

/// Elements of length at most `radius`, with their inversion sets
/// `S(w) = {alpha > 0 : w^{-1} alpha < 0}`, built via `S(w r_i) = S(w) + {w alpha_i}`.
fn weyl_ball(datum: &CartanDatum, radius: usize, cap: usize) -> Result<Vec<BallElement>> {
    let rank = datum.rank();
    let rho = datum.weyl_vector();
    let mut out = vec![BallElement { word: Vec::new(), inversions: Vec::new() }];
    let mut frontier = vec![0usize];
    let mut seen: HashSet<Weight> = HashSet::from([rho.clone()]);
    for _ in 0..radius {
        let mut next = Vec::new();
        for &idx in &frontier {
            for i in 0..rank {
                let word = out[idx].word.clone();
                let image = apply_word(datum, &word, &RootVector::simple(rank, i));
                if !image.is_nonnegative() {
                    continue;
                }
                let mut w2 = word;
                w2.push(i);
                let key = apply_word_weight(datum, &w2, &rho);
                if !seen.insert(key) {
                    continue;
                }
                let mut inversions = out[idx].inversions.clone();
                inversions.push(image);
                out.push(BallElement { word: w2, inversions });
                next.push(out.len() - 1);
                if out.len() > cap {
                    return Err(Error::BallTooLarge(cap));
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

fn apply_word(datum: &CartanDatum, word: &[usize], beta: &RootVector) -> RootVector {
    let mut b = beta.clone();
    for &i in word.iter().rev() {
        b.0[i] -= datum.pairing_root(&b, i);
    }
    b
}

fn apply_word_weight(datum: &CartanDatum, word: &[usize], w: &Weight) -> Weight {
    let mut x = w.clone();
    for &i in word.iter().rev() {
        x = datum.reflect_unchecked(i, &x);
    }
    x
}

/// `(t - x) / (1 - t x) = t + sum_{k >= 1} (t^{k+1} - t^{k-1}) x^k`, `x = e^{-alpha}`.
fn inversion_factor(rank: usize, depth: usize, alpha: &RootVector) -> FormalSeries {
    let mut f = FormalSeries::zero(Weight::zero(rank), depth);
    f.add_term(&RootVector::zero(rank), &Poly::t());
    let h = alpha.height() as usize;
    for k in 1..=depth / h {
        let mut c = vec![0i64; k + 2];
        c[k + 1] = 1;
        c[k - 1] = -1;
        f.add_term(&alpha.scale(k as i64), &Poly::from_coeffs(c));
    }
    f
}

/// Left side of the Macdonald identity summed over a ball of the given radius.
fn macdonald_lhs(datum: &CartanDatum, t_cap: usize, depth: usize, radius: usize, cap: usize) -> Result<FormalSeries> {
    let rank = datum.rank();
    let ball = weyl_ball(datum, radius, cap)?;
    let mut sum = FormalSeries::zero(Weight::zero(rank), depth);
    let mut poincare = Poly::zero();
    let mut factors: HashMap<RootVector, FormalSeries> = HashMap::new();
    for w in &ball {
        poincare += &Poly::monomial(1, w.word.len());
        let mut prod = FormalSeries::one(rank, depth);
        for alpha in &w.inversions {
            let f = factors
                .entry(alpha.clone())
                .or_insert_with(|| inversion_factor(rank, depth, alpha));
            prod = prod.mul_capped(f, Some(t_cap));
            if prod.is_zero() {
                break;
            }
        }
        sum = sum.add(&prod)?;
    }
    // W(t)^{-1} modulo t^{t_cap + 1}
    let mut inv = vec![0i64; t_cap + 1];
    inv[0] = 1;
    for k in 1..=t_cap {
        inv[k] = -(1..=k).map(|j| poincare.coeff(j) * inv[k - j]).sum::<i64>();
    }
    Ok(sum.scale(&Poly::from_coeffs(inv)).truncate_t(t_cap))
}

/// Checks `W(t)^{-1} sum_w prod_{alpha in S(w)} (t - e^{-alpha})/(1 - t e^{-alpha}) = mu^ / ct(mu^)`
/// modulo `t^{t_cap+1}` and for offsets of height at most `depth`.
///
/// A term of the product with `t`-degree at most `t_cap` and weight depth at
/// most `depth` uses every factor either for its `t`-part or for a positive
/// weight step, so only `l(w) <= t_cap + depth` contributes. The check is run
/// again with a radius two larger and must not change.
pub fn macdonald_identity_check(
    datum: &CartanDatum,
    t_cap: usize,
    depth: usize,
    ball_cap: usize,
) -> Result<CheckReport> {
    let (_, _, hd) = affine_only(datum)?;
    let radius = t_cap + depth;
    let lhs = macdonald_lhs(datum, t_cap, depth, radius, ball_cap)?;
    let wider = macdonald_lhs(datum, t_cap, depth, radius + 2, ball_cap)?;
    let order = depth / hd;
    let ct_inv = cherednik_ct_mu(datum, order)?.inverse()?;
    let rhs = mu_hat(datum, depth, Some(t_cap))?
        .mul_capped(&q_to_formal(datum, &ct_inv, depth)?, Some(t_cap))
        .truncate_t(t_cap);
    let mut report = CheckReport::new("macdonald");
    let mut offsets: Vec<RootVector> =
        lhs.terms().chain(rhs.terms()).chain(wider.terms()).map(|(b, _)| b.clone()).collect();
    offsets.sort();
    offsets.dedup();
    for beta in &offsets {
        report.compare_at("lhs vs rhs", beta.clone(), lhs.coeff(beta), rhs.coeff(beta));
        report.compare_at("radius + 2", beta.clone(), wider.coeff(beta), lhs.coeff(beta));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    fn w(labels: &[i64]) -> Weight {
        Weight::from_labels(labels.to_vec())
    }

    #[test]
    fn max_sets() {
        let d = CartanDatum::named("A1~").unwrap();
        assert_eq!(max_set(&d, &w(&[0, 0])).unwrap(), vec![w(&[0, 0])]);
        assert_eq!(max_set(&d, &w(&[1, 0])).unwrap(), vec![w(&[1, 0])]);
        assert_eq!(
            max_set(&d, &w(&[2, 0])).unwrap(),
            vec![Weight::new(vec![0, 2], -1), w(&[2, 0])]
        );
        assert!(max_set(&CartanDatum::named("A2").unwrap(), &w(&[0, 0])).is_err());
    }

    #[test]
    fn string_functions() {
        let d = CartanDatum::named("A1~").unwrap();
        let zero = w(&[0, 0]);
        let s = t_string(&d, &zero, &zero, 2).unwrap();
        assert_eq!(s.series.coeff(1), &p(&[0, -1, 1]));
        let l0 = w(&[1, 0]);
        let s = t_string(&d, &l0, &l0, 2).unwrap();
        assert_eq!(s.series.coeff(0), &Poly::one());
        assert_eq!(s.series.coeff(1), &p(&[0, 0, 1]));
        assert_eq!(s.series.coeff(2), &p(&[0, 0, 1, 0, 1]));
    }

    #[test]
    fn level0_and_products() {
        let d = CartanDatum::named("A1~").unwrap();
        let a = level0_string(&d, 3).unwrap();
        assert_eq!(a.coeff(0), &Poly::one());
        assert_eq!(a.coeff(1), &p(&[0, -1, 1]));
        assert_eq!(cherednik_ct_mu(&d, 0).unwrap(), QSeries::one(0));
        assert_eq!(cherednik_ct_mu(&d, 4).unwrap().evaluate_t(1), QSeries::one(4).evaluate_t(1));
        assert!(verify_level0(&d, 4).unwrap().passed);
    }

    #[test]
    fn theta_examples() {
        let d = CartanDatum::named("A1~").unwrap();
        assert_eq!(theta_series(&d, 0).unwrap(), FormalSeries::one(2, 0));
        let th = theta_series(&d, 1).unwrap();
        // alpha = -alpha_1 gives offset delta + alpha_1
        assert_eq!(th.coeff(&RootVector(vec![1, 0])), Poly::one());
        assert_eq!(th.len(), 2);
        let th2 = theta_series(&d, 2).unwrap();
        assert_eq!(th2.len(), 3);
        assert!(theta_series(&CartanDatum::named("C2~").unwrap(), 1).is_err());
    }

    #[test]
    fn level_one() {
        let d = CartanDatum::named("A1~").unwrap();
        let r = level1_check(&d, 4).unwrap();
        assert!(r.passed, "{:?}", r.first_mismatch);
    }

    #[test]
    fn macdonald_small() {
        let d = CartanDatum::named("A1~").unwrap();
        let r = macdonald_identity_check(&d, 0, 2, 10_000).unwrap();
        assert!(r.passed, "{:?}", r.first_mismatch);
        let r = macdonald_identity_check(&d, 2, 2, 10_000).unwrap();
        assert!(r.passed, "{:?}", r.first_mismatch);
        assert!(matches!(
            macdonald_identity_check(&d, 2, 2, 3),
            Err(Error::BallTooLarge(3))
        ));
    }
}
