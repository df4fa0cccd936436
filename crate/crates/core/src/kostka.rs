//! Kostka-Foulkes polynomials via Lusztig's t-analog of Kostant's formula,
//! Freudenthal multiplicities, finite tensor products, and the `lambda - delta` check.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::kostant::KostantTable;
use crate::linalg::Rational;
use crate::report::CheckReport;
use crate::roots::RootSlice;
use crate::series::Poly;
use crate::weight::{cone_up_to, RootVector, Weight};

/// `K_{lambda mu}(t)` for every dominant `mu` in the depth cone below `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostkaTable {
    pub lambda: Weight,
    pub depth: usize,
    pub entries: Vec<KostkaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostkaEntry {
    pub mu: Weight,
    pub offset: RootVector,
    pub value: Poly,
}

impl KostkaTable {
    pub fn get(&self, mu: &Weight) -> Option<&Poly> {
        self.entries.iter().find(|e| &e.mu == mu).map(|e| &e.value)
    }
}

/// Dominant weights `mu = lambda - beta`, `beta` in `Q+` with `ht(beta) <= depth`,
/// sorted by the height of `beta`.
pub fn dominant_cone(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Vec<(Weight, RootVector)> {
    cone_up_to(datum.rank(), depth)
        .into_iter()
        .filter_map(|beta| {
            let mu = lambda - &datum.root_to_weight(&beta);
            mu.is_dominant().then_some((mu, beta))
        })
        .collect()
}

fn check_dominant(datum: &CartanDatum, w: &Weight) -> Result<()> {
    datum.check_weight(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(())
}

/// Lusztig's formula evaluated against a shared partition-function table.
#[derive(Clone, Debug)]
pub struct KostkaEngine<'a> {
    datum: &'a CartanDatum,
    kostant: KostantTable,
}

impl<'a> KostkaEngine<'a> {
    /// Prepares `K_t` for every offset of height at most `depth`.
    pub fn new(datum: &'a CartanDatum, depth: usize) -> Result<Self> {
        let slice = datum.roots_up_to(depth);
        let kostant = KostantTable::build(&slice, datum.rank(), depth)?;
        Ok(KostkaEngine { datum, kostant })
    }

    pub fn depth(&self) -> usize {
        self.kostant.depth()
    }

    pub fn datum(&self) -> &CartanDatum {
        self.datum
    }

    /// `sum_w (-1)^{l(w)} K_t(w(lambda + rho) - (mu + rho))`.
    pub fn lusztig(&self, lambda: &Weight, mu: &Weight) -> Result<Poly> {
        check_dominant(self.datum, lambda)?;
        check_dominant(self.datum, mu)?;
        let Some(beta) = self.datum.weight_to_root(&(lambda - mu)) else {
            return Ok(Poly::zero());
        };
        if !beta.is_nonnegative() {
            return Ok(Poly::zero());
        }
        if beta.height() as usize > self.depth() {
            return Err(Error::HeightBoundExceeded { needed: beta.height(), bound: self.depth() });
        }
        let rho = self.datum.weyl_vector();
        let points = self.datum.orbit_interval_offsets(&(lambda + &rho), &(mu + &rho))?;
        let mut acc = Poly::zero();
        for (p, off) in points {
            acc.add_scaled(&self.kostant.get(&off), p.parity);
        }
        Ok(acc)
    }

    /// Every dominant `mu` below `lambda` within the engine depth.
    pub fn kostka_table(&self, lambda: &Weight) -> Result<KostkaTable> {
        check_dominant(self.datum, lambda)?;
        let mut entries = Vec::new();
        for (mu, offset) in dominant_cone(self.datum, lambda, self.depth()) {
            let value = self.lusztig(lambda, &mu)?;
            entries.push(KostkaEntry { mu, offset, value });
        }
        Ok(KostkaTable { lambda: lambda.clone(), depth: self.depth(), entries })
    }
}

/// `K_{lambda mu}(t)` with a table sized to `ht(lambda - mu)`.
pub fn lusztig(datum: &CartanDatum, lambda: &Weight, mu: &Weight) -> Result<Poly> {
    let depth = datum
        .weight_to_root(&(lambda - mu))
        .map_or(0, |b| b.height().max(0) as usize);
    KostkaEngine::new(datum, depth)?.lusztig(lambda, mu)
}

/// Lusztig's formula against an explicit root slice, as a free function.
pub fn lusztig_with_slice(
    datum: &CartanDatum,
    lambda: &Weight,
    mu: &Weight,
    slice: &RootSlice,
) -> Result<Poly> {
    let kostant = KostantTable::build(slice, datum.rank(), slice.height_bound)?;
    KostkaEngine { datum, kostant }.lusztig(lambda, mu)
}

pub fn kostka_table(datum: &CartanDatum, lambda: &Weight, depth: usize) -> Result<KostkaTable> {
    KostkaEngine::new(datum, depth)?.kostka_table(lambda)
}

/// Weight multiplicities of `L(lambda)` by Freudenthal's recursion, for every
/// weight within `depth` of the highest weight.
#[derive(Clone, Debug)]
pub struct WeightMultiplicities<'a> {
    datum: &'a CartanDatum,
    lambda: Weight,
    depth: usize,
    dominant: HashMap<Weight, i64>,
}

impl<'a> WeightMultiplicities<'a> {
    pub fn compute(datum: &'a CartanDatum, lambda: &Weight, depth: usize) -> Result<Self> {
        check_dominant(datum, lambda)?;
        let mut me = WeightMultiplicities {
            datum,
            lambda: lambda.clone(),
            depth,
            dominant: HashMap::new(),
        };
        if datum.is_affine() && datum.level(lambda) == 0 {
            // L(c delta) is one-dimensional
            me.dominant.insert(lambda.clone(), 1);
            return Ok(me);
        }
        let slice = datum.roots_up_to(depth);
        let roots = slice.with_multiplicities();
        let rho = datum.weyl_vector();
        let lam_rho = lambda + &rho;
        for (mu, beta) in dominant_cone(datum, lambda, depth) {
            if beta.is_zero() {
                me.dominant.insert(mu, 1);
                continue;
            }
            let lam_alpha = |alpha: &RootVector| pair(datum, lambda, alpha);
            let mut rhs = Rational::zero();
            let hb = beta.height();
            for (alpha, m) in &roots {
                if alpha.height() > hb {
                    break;
                }
                let la = lam_alpha(alpha);
                let mut off = &beta - alpha;
                while off.is_nonnegative() {
                    let nu = lambda - &datum.root_to_weight(&off);
                    let mult = me.multiplicity_in_cone(&nu)?;
                    if mult != 0 {
                        let nu_alpha = la - datum.bilinear_roots(&off, alpha);
                        rhs += Rational::from_integer(mult * *m as i64) * nu_alpha;
                    }
                    off = &off - alpha;
                }
            }
            let denom = Rational::from_integer(2) * pair(datum, &lam_rho, &beta)
                - datum.bilinear_roots(&beta, &beta);
            let num = Rational::from_integer(2) * rhs;
            let value = if denom.is_zero() {
                if !num.is_zero() {
                    return Err(Error::ZeroDenominator(beta.to_string()));
                }
                Rational::zero()
            } else {
                num / denom
            };
            if !value.is_integer() {
                return Err(Error::NonIntegral(format!("multiplicity {value} at offset {beta}")));
            }
            me.dominant.insert(mu, value.to_integer());
        }
        Ok(me)
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `dim L(lambda)_mu` for any weight within the computed depth.
    pub fn multiplicity(&self, mu: &Weight) -> Result<i64> {
        let Some(beta) = self.datum.weight_to_root(&(&self.lambda - mu)) else {
            return Ok(0);
        };
        if !beta.is_nonnegative() {
            return Ok(0);
        }
        if beta.height() as usize > self.depth {
            return Err(Error::HeightBoundExceeded { needed: beta.height(), bound: self.depth });
        }
        self.multiplicity_in_cone(mu)
    }

    fn multiplicity_in_cone(&self, mu: &Weight) -> Result<i64> {
        if mu.is_dominant() {
            return Ok(self.dominant.get(mu).copied().unwrap_or(0));
        }
        match self.datum.to_dominant(mu) {
            Ok(d) => Ok(self.dominant.get(&d.weight).copied().unwrap_or(0)),
            Err(Error::NotInTitsCone(_)) => Ok(0),
            Err(e) => Err(e),
        }
    }

    /// Dominant weights with their multiplicities, in no particular order.
    pub fn dominant(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.dominant.iter().map(|(w, &m)| (w, m))
    }
}

/// `(lambda, alpha) = sum_i alpha_i (alpha_i, alpha_i)/2 <lambda, alpha_i^vee>`.
pub(crate) fn pair(datum: &CartanDatum, lambda: &Weight, alpha: &RootVector) -> Rational {
    (0..datum.rank())
        .filter(|&i| alpha.0[i] != 0)
        .map(|i| Rational::from_integer(alpha.0[i] * lambda.labels[i]) * datum.half_norm(i))
        .sum()
}

/// `dim L(lambda)_mu` by Freudenthal's formula.
pub fn freudenthal_multiplicity(
    datum: &CartanDatum,
    lambda: &Weight,
    mu: &Weight,
    depth: usize,
) -> Result<i64> {
    WeightMultiplicities::compute(datum, lambda, depth)?.multiplicity(mu)
}

/// Full character of a finite-dimensional module as a weight-multiplicity map.
pub fn finite_character(datum: &CartanDatum, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    if datum.is_affine() {
        return Err(Error::WrongKind("finite"));
    }
    check_dominant(datum, lambda)?;
    let lowest = antidominant(datum, lambda);
    let depth = datum
        .weight_to_root(&(lambda - &lowest))
        .expect("lowest weight is in the root lattice coset")
        .height() as usize;
    let mults = WeightMultiplicities::compute(datum, lambda, depth)?;
    let mut out = BTreeMap::new();
    for (w, m) in mults.dominant() {
        if m == 0 {
            continue;
        }
        for v in finite_orbit(datum, w) {
            out.insert(v, m);
        }
    }
    Ok(out)
}

fn antidominant(datum: &CartanDatum, w: &Weight) -> Weight {
    let mut x = w.clone();
    while let Some(i) = x.labels.iter().position(|&m| m > 0) {
        x = datum.reflect_unchecked(i, &x);
    }
    x
}

/// Orbit of a weight under a finite Weyl group.
pub fn finite_orbit(datum: &CartanDatum, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..datum.rank() {
            let y = datum.reflect_unchecked(i, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

/// Decomposes `L(lambda) (x) L(mu)` for finite type by peeling highest weights.
pub fn tensor_decompose(datum: &CartanDatum, lambda: &Weight, mu: &Weight) -> Result<Vec<(Weight, i64)>> {
    let a = finite_character(datum, lambda)?;
    let b = finite_character(datum, mu)?;
    let mut prod: BTreeMap<Weight, i64> = BTreeMap::new();
    for (x, m) in &a {
        for (y, n) in &b {
            *prod.entry(x + y).or_insert(0) += m * n;
        }
    }
    prod.retain(|_, m| *m != 0);
    let mut out = Vec::new();
    let height = |w: &Weight| -> Rational {
        datum.root_coords(w).expect("finite type").into_iter().sum()
    };
    while !prod.is_empty() {
        let top = prod
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .max_by(|x, y| height(x.0).cmp(&height(y.0)).then_with(|| y.0.cmp(x.0)))
            .map(|(w, &m)| (w.clone(), m))
            .ok_or_else(|| Error::NonIntegral("tensor product residue has no dominant weight".into()))?;
        let (w, m) = top;
        if m < 0 {
            return Err(Error::NonIntegral(format!("negative multiplicity {m} of {w}")));
        }
        for (v, k) in finite_character(datum, &w)? {
            let e = prod.entry(v).or_insert(0);
            *e -= m * k;
        }
        prod.retain(|_, c| *c != 0);
        out.push((w, m));
    }
    out.sort();
    Ok(out)
}

/// `sum_pi m_pi K_{pi gamma}(t)` for a module given by its decomposition.
pub fn classical_kostka_for_module(
    datum: &CartanDatum,
    decomposition: &[(Weight, i64)],
    gamma: &Weight,
) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (pi, m) in decomposition {
        acc.add_scaled(&lusztig(datum, pi, gamma)?, *m);
    }
    Ok(acc)
}

/// `t K_{V, lambda_bar}(t)` with `V = adjoint (x) L(lambda_bar)` over the finite
/// diagram obtained by deleting node `p`.
fn prop61_rhs(datum: &CartanDatum, lambda: &Weight, p: usize) -> Result<Poly> {
    let keep: Vec<usize> = (0..datum.rank()).filter(|&i| i != p).collect();
    let fin = CartanDatum::validate(crate::linalg::principal_minor(datum.matrix(), &keep), None)?;
    let bar = Weight::from_labels(keep.iter().map(|&i| lambda.labels[i]).collect());
    let theta = fin.root_to_weight(fin.highest_root());
    let decomp = tensor_decompose(&fin, &theta, &bar)?;
    Ok(classical_kostka_for_module(&fin, &decomp, &bar)?.shift(1))
}

/// Checks `K_{lambda, lambda - delta}(t) = t K_{adjoint (x) L(lambda_bar), lambda_bar}(t)`.
///
/// The identity is checked at the affine node and at every other node with
/// mark 1 whose label is positive; such nodes are images of the affine node
/// under diagram automorphisms.
pub fn verify_prop61(datum: &CartanDatum, lambda: &Weight) -> Result<CheckReport> {
    let p0 = datum.affine_node().ok_or(Error::WrongKind("affine"))?;
    check_dominant(datum, lambda)?;
    if lambda.labels[p0] < 1 {
        return Err(Error::PreconditionViolated(format!(
            "label of {lambda} at the affine node is zero"
        )));
    }
    let lhs = lusztig(datum, lambda, &lambda.shift_delta(-1))?;
    let marks = datum.marks().expect("affine");
    let mut report = CheckReport::new("prop61");
    for p in 0..datum.rank() {
        if marks[p] != 1 || lambda.labels[p] < 1 {
            continue;
        }
        let rhs = prop61_rhs(datum, lambda, p)?;
        report.compare_poly(format!("node {p}"), lhs.clone(), rhs);
    }
    Ok(report)
}
