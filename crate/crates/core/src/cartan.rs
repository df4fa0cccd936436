//! Generalized Cartan matrices, their classification, and the invariant form.
//!
//! Conventions: `matrix[i][j] = <alpha_j, alpha_i^vee>`, so row `i` is the
//! simple coroot. Weights are written in the basis `{Lambda_0, ..., Lambda_l, delta}`
//! with `alpha_j = sum_i matrix[i][j] Lambda_i + [j == affine node] delta`.
//! The invariant form is normalized so that long roots have square length 2.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational};
use crate::weight::{RootVector, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Finite,
    UntwistedAffine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct AffineData {
    node: usize,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

/// A validated symmetrizable Cartan matrix of finite or untwisted affine type.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    half_norms: Vec<Rational>,
    kind: Kind,
    affine: Option<AffineData>,
    finite_nodes: Vec<usize>,
    block_inverse: Vec<Vec<Rational>>,
    finite_roots: Vec<RootVector>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl CartanDatum {
    /// Validates a generalized Cartan matrix and classifies it.
    ///
    /// Only finite and untwisted affine types are accepted. A `kind_hint`
    /// that disagrees with the computed type is an error.
    pub fn validate(matrix: Vec<Vec<i64>>, kind_hint: Option<Kind>) -> Result<Self> {
        check_gcm(&matrix)?;
        let symmetrizer = symmetrize(&matrix)?;
        let n = matrix.len();
        let half_norms = normalized_half_norms(&matrix, &symmetrizer);

        let datum = if is_finite_type(&matrix) {
            let all: Vec<usize> = (0..n).collect();
            let block_inverse = linalg::inverse(&matrix).expect("finite type is nonsingular");
            let mut d = CartanDatum {
                name: None,
                matrix,
                symmetrizer,
                half_norms,
                kind: Kind::Finite,
                affine: None,
                finite_nodes: all,
                block_inverse,
                finite_roots: Vec::new(),
            };
            d.finite_roots = d.enumerate_finite_roots();
            d
        } else {
            let det = linalg::determinant(&matrix);
            let corank_one = det.is_zero()
                && (0..n).all(|p| {
                    let keep: Vec<usize> = (0..n).filter(|&i| i != p).collect();
                    is_finite_type(&linalg::principal_minor(&matrix, &keep))
                });
            if !corank_one {
                return Err(Error::UnsupportedType("indefinite type".into()));
            }
            affine_datum(matrix, symmetrizer, half_norms)?
        };
        if let Some(hint) = kind_hint {
            if hint != datum.kind {
                return Err(Error::UnsupportedType(format!(
                    "matrix is {:?}, not {:?}",
                    datum.kind, hint
                )));
            }
        }
        Ok(datum)
    }

    /// Builds a named algebra: `A1`..`An`, `B2`.., `C2`.., `D4`.., `E6`-`E8`,
    /// `F4`, `G2`, optionally suffixed with `~` for the untwisted affinization.
    pub fn named(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        let (base, affine) = match trimmed.strip_suffix('~') {
            Some(b) => (b, true),
            None => (trimmed, false),
        };
        let gram = finite_gram(base)?;
        let finite = cartan_from_gram(&gram);
        let mut datum = if affine {
            let fin = CartanDatum::validate(finite, Some(Kind::Finite))?;
            CartanDatum::validate(affinize(&fin), Some(Kind::UntwistedAffine))?
        } else {
            CartanDatum::validate(finite, Some(Kind::Finite))?
        };
        datum.name = Some(format!("{}{}", base.to_ascii_uppercase(), if affine { "~" } else { "" }));
        Ok(datum)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_affine(&self) -> bool {
        self.kind == Kind::UntwistedAffine
    }

    pub fn affine_node(&self) -> Option<usize> {
        self.affine.as_ref().map(|a| a.node)
    }

    /// Coefficients of `delta` in the simple roots (affine only).
    pub fn marks(&self) -> Option<&[i64]> {
        self.affine.as_ref().map(|a| a.marks.as_slice())
    }

    /// Coefficients of the canonical central element in the simple coroots.
    pub fn comarks(&self) -> Option<&[i64]> {
        self.affine.as_ref().map(|a| a.comarks.as_slice())
    }

    /// Rank `l` of the underlying finite root system.
    pub fn finite_rank(&self) -> usize {
        self.finite_nodes.len()
    }

    /// Nodes of the underlying finite diagram.
    pub fn finite_nodes(&self) -> &[usize] {
        &self.finite_nodes
    }

    /// `(alpha_i, alpha_i) / 2`, with long roots normalized to 1.
    pub fn half_norm(&self, i: usize) -> Rational {
        self.half_norms[i]
    }

    pub fn delta(&self) -> Option<RootVector> {
        self.marks().map(|m| RootVector(m.to_vec()))
    }

    pub fn delta_height(&self) -> Option<i64> {
        self.marks().map(|m| m.iter().sum())
    }

    /// Positive roots of the finite part, in full-rank coordinates, sorted by height.
    pub fn finite_positive_roots(&self) -> &[RootVector] {
        &self.finite_roots
    }

    /// Highest root of the finite part (full-rank coordinates).
    pub fn highest_root(&self) -> &RootVector {
        self.finite_roots.last().expect("root systems are nonempty")
    }

    /// The finite datum obtained by deleting the affine node; a clone for finite input.
    pub fn finite_part(&self) -> CartanDatum {
        match &self.affine {
            None => self.clone(),
            Some(_) => {
                let m = linalg::principal_minor(&self.matrix, &self.finite_nodes);
                let mut d = CartanDatum::validate(m, Some(Kind::Finite))
                    .expect("affine diagrams have finite parts");
                d.name = self.name.as_ref().map(|n| n.trim_end_matches('~').to_string());
                d
            }
        }
    }

    /// Restriction of an affine weight to the finite part (drops the affine label).
    pub fn restrict_to_finite(&self, w: &Weight) -> Weight {
        Weight::from_labels(self.finite_nodes.iter().map(|&i| w.labels[i]).collect())
    }

    /// Embeds a root of the finite part into full-rank coordinates.
    pub fn embed_finite_root(&self, b: &RootVector) -> RootVector {
        let mut v = vec![0; self.rank()];
        for (k, &i) in self.finite_nodes.iter().enumerate() {
            v[i] = b.0[k];
        }
        RootVector(v)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: w.rank() });
        }
        if !self.is_affine() && w.delta != 0 {
            return Err(Error::InvalidArgument("finite-type weights carry no delta part".into()));
        }
        Ok(())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    /// `<beta, alpha_i^vee>` for a root-lattice vector.
    pub fn pairing_root(&self, b: &RootVector, i: usize) -> i64 {
        self.matrix[i].iter().zip(&b.0).map(|(a, c)| a * c).sum()
    }

    pub fn root_to_weight(&self, b: &RootVector) -> Weight {
        let labels = (0..self.rank()).map(|i| self.pairing_root(b, i)).collect();
        let delta = self.affine_node().map_or(0, |p| b.0[p]);
        Weight::new(labels, delta)
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        self.root_to_weight(&RootVector::simple(self.rank(), i))
    }

    /// Level `<w, K>` of an affine weight; zero for finite type.
    pub fn level(&self, w: &Weight) -> i64 {
        match &self.affine {
            Some(a) => a.comarks.iter().zip(&w.labels).map(|(c, m)| c * m).sum(),
            None => 0,
        }
    }

    /// Rational simple-root coordinates of a weight in the span of the
    /// simple roots; `None` for affine weights of nonzero level.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<Rational>> {
        match &self.affine {
            None => {
                let labels: Vec<Rational> =
                    w.labels.iter().map(|&m| Rational::from_integer(m)).collect();
                Some(linalg::mat_vec(&self.block_inverse, &labels))
            }
            Some(a) => {
                if self.level(w) != 0 {
                    return None;
                }
                let p = a.node;
                let rhs: Vec<Rational> = self
                    .finite_nodes
                    .iter()
                    .map(|&i| Rational::from_integer(w.labels[i] - self.matrix[i][p] * w.delta))
                    .collect();
                let rest = linalg::mat_vec(&self.block_inverse, &rhs);
                let mut out = vec![Rational::zero(); self.rank()];
                out[p] = Rational::from_integer(w.delta);
                for (k, &i) in self.finite_nodes.iter().enumerate() {
                    out[i] = rest[k];
                }
                Some(out)
            }
        }
    }

    /// Converts a weight in the root lattice back to simple-root coordinates.
    pub fn weight_to_root(&self, w: &Weight) -> Option<RootVector> {
        let coords = self.root_coords(w)?;
        coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<i64>>>()
            .map(RootVector)
    }

    /// `(alpha, beta)` for root-lattice vectors.
    pub fn bilinear_roots(&self, a: &RootVector, b: &RootVector) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            if a.0[i] == 0 {
                continue;
            }
            acc += Rational::from_integer(a.0[i]) * self.half_norms[i]
                * Rational::from_integer(self.pairing_root(b, i));
        }
        acc
    }

    /// The invariant symmetric form on weights.
    pub fn bilinear(&self, x: &Weight, y: &Weight) -> Rational {
        match &self.affine {
            None => {
                let c = self.root_coords(x).expect("finite type");
                self.pair_coords_with_labels(&c, &y.labels)
            }
            Some(a) => {
                // x = k Lambda_p + x0 with x0 in the span of the simple roots
                let p = a.node;
                let k = self.level(x);
                let mut x0 = x.clone();
                x0.labels[p] -= k;
                let c = self.root_coords(&x0).expect("level zero by construction");
                Rational::from_integer(k * y.delta) * self.half_norms[p]
                    + self.pair_coords_with_labels(&c, &y.labels)
            }
        }
    }

    fn pair_coords_with_labels(&self, c: &[Rational], labels: &[i64]) -> Rational {
        c.iter()
            .enumerate()
            .map(|(k, ck)| ck * self.half_norms[k] * Rational::from_integer(labels[k]))
            .sum()
    }

    /// The Weyl vector: every label is 1 and the delta part is 0.
    pub fn weyl_vector(&self) -> Weight {
        Weight::from_labels(vec![1; self.rank()])
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut labels = vec![0; self.rank()];
        labels[i] = 1;
        Weight::from_labels(labels)
    }

    /// `delta` as a weight (affine only).
    pub fn delta_weight(&self) -> Option<Weight> {
        self.affine.as_ref().map(|_| Weight::new(vec![0; self.rank()], 1))
    }

    /// Reflection closure of the simple roots of the finite part.
    fn enumerate_finite_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let nodes = &self.finite_nodes;
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue: VecDeque<RootVector> = VecDeque::new();
        for &i in nodes {
            let s = RootVector::simple(n, i);
            seen.insert(s.clone());
            queue.push_back(s);
        }
        while let Some(b) = queue.pop_front() {
            for &i in nodes {
                let k = self.pairing_root(&b, i);
                if k == 0 || b == RootVector::simple(n, i) {
                    continue;
                }
                let mut r = b.clone();
                r.0[i] -= k;
                if r.is_nonnegative() && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        roots
    }
}

fn check_gcm(m: &[Vec<i64>]) -> Result<()> {
    let n = m.len();
    if n == 0 {
        return Err(Error::NotGcm("empty matrix".into()));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotGcm("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::NotGcm(format!("diagonal entry ({i},{i}) is {}", row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if row[j] > 0 {
                return Err(Error::NotGcm(format!("positive off-diagonal entry ({i},{j})")));
            }
            if (row[j] == 0) != (m[j][i] == 0) {
                return Err(Error::NotGcm(format!("asymmetric zero pattern at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Minimal positive integers `d` with `d[i] A[i][j] = d[j] A[j][i]`, per
/// connected component.
fn symmetrize(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || m[i][j] == 0 {
                    continue;
                }
                let di = d[i].unwrap();
                let want = di * Rational::new(m[i][j], m[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(want);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(dj) if dj != want => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
        let vals: Vec<Rational> = component.iter().map(|&i| d[i].unwrap()).collect();
        let ints = linalg::primitive_integer(&vals);
        for (k, &i) in component.iter().enumerate() {
            out[i] = ints[k];
        }
    }
    Ok(out)
}

fn components(m: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && m[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comps.push(comp);
    }
    comps
}

fn normalized_half_norms(m: &[Vec<i64>], d: &[i64]) -> Vec<Rational> {
    let mut out = vec![Rational::one(); m.len()];
    for comp in components(m) {
        let max = comp.iter().map(|&i| d[i]).max().unwrap_or(1);
        for &i in &comp {
            out[i] = Rational::new(d[i], max);
        }
    }
    out
}

fn is_finite_type(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let keep: Vec<usize> = (0..k).collect();
        linalg::determinant(&linalg::principal_minor(m, &keep)).is_positive()
    })
}

fn affine_datum(
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    half_norms: Vec<Rational>,
) -> Result<CartanDatum> {
    let n = matrix.len();
    let marks = kernel_vector(&matrix);
    let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| matrix[j][i]).collect()).collect();
    let comarks = kernel_vector(&transpose);

    for p in (0..n).filter(|&p| marks[p] == 1) {
        let keep: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let sub = linalg::principal_minor(&matrix, &keep);
        if components(&sub).len() != 1 {
            continue;
        }
        let fin = CartanDatum::validate(sub, Some(Kind::Finite))?;
        let theta = fin.highest_root();
        let matches = keep.iter().enumerate().all(|(k, &i)| theta.0[k] == marks[i]);
        if !matches {
            continue;
        }
        let block_inverse = linalg::inverse(&linalg::principal_minor(&matrix, &keep))
            .expect("finite part is nonsingular");
        let mut d = CartanDatum {
            name: None,
            matrix,
            symmetrizer,
            half_norms,
            kind: Kind::UntwistedAffine,
            affine: Some(AffineData { node: p, marks, comarks }),
            finite_nodes: keep,
            block_inverse,
            finite_roots: Vec::new(),
        };
        d.finite_roots = d.enumerate_finite_roots();
        return Ok(d);
    }
    Err(Error::UnsupportedType("affine but not untwisted".into()))
}

/// Primitive positive kernel vector of a corank-one matrix whose proper
/// principal minors are positive.
fn kernel_vector(m: &[Vec<i64>]) -> Vec<i64> {
    let n = m.len();
    let keep: Vec<usize> = (1..n).collect();
    let inv = linalg::inverse(&linalg::principal_minor(m, &keep)).expect("proper minors positive");
    let rhs: Vec<Rational> = keep.iter().map(|&i| Rational::from_integer(-m[i][0])).collect();
    let rest = linalg::mat_vec(&inv, &rhs);
    let mut v = vec![Rational::one()];
    v.extend(rest);
    linalg::primitive_integer(&v)
}

/// Cartan matrix `A[i][j] = 2 G[i][j] / G[i][i]` from an integer Gram matrix.
fn cartan_from_gram(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect()).collect()
}

/// Integer Gram matrices of the simple roots in Bourbaki numbering.
fn finite_gram(name: &str) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnsupportedType(format!("unknown algebra name {name:?}"));
    let mut chars = name.chars();
    let series = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    let chain = |n: usize, norm: &dyn Fn(usize) -> i64, bond: &dyn Fn(usize) -> i64| {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = norm(i);
            if i + 1 < n {
                g[i][i + 1] = bond(i);
                g[i + 1][i] = bond(i);
            }
        }
        g
    };
    let g = match (series, rank) {
        ('A', n) if n >= 1 => chain(n, &|_| 2, &|_| -1),
        ('B', n) if n >= 2 => chain(n, &|i| if i + 1 == n { 2 } else { 4 }, &|_| -2),
        ('C', n) if n >= 2 => {
            chain(n, &|i| if i + 1 == n { 4 } else { 2 }, &|i| if i + 2 == n { -2 } else { -1 })
        }
        ('D', n) if n >= 4 => {
            let mut g = chain(n - 1, &|_| 2, &|_| -1);
            for row in g.iter_mut() {
                row.push(0);
            }
            g.push(vec![0; n]);
            g[n - 1][n - 1] = 2;
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
            g
        }
        ('E', n @ 6..=8) => {
            let mut g = vec![vec![0i64; n]; n];
            let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
            for i in 0..n {
                g[i][i] = 2;
            }
            for &(i, j) in edges.iter().filter(|&&(i, j)| i < n && j < n) {
                g[i][j] = -1;
                g[j][i] = -1;
            }
            g
        }
        ('F', 4) => chain(4, &|i| if i < 2 { 4 } else { 2 }, &|i| if i == 2 { -1 } else { -2 }),
        ('G', 2) => vec![vec![2, -3], vec![-3, 6]],
        _ => return Err(bad()),
    };
    Ok(g)
}

/// Untwisted affinization: prepend node 0 with `alpha_0 = delta - theta`.
fn affinize(fin: &CartanDatum) -> Vec<Vec<i64>> {
    let l = fin.rank();
    let theta = fin.highest_root();
    let theta_norm = fin.bilinear_roots(theta, theta);
    let mut a = vec![vec![0i64; l + 1]; l + 1];
    a[0][0] = 2;
    for i in 0..l {
        a[i + 1][0] = -fin.pairing_root(theta, i);
        let s = fin.bilinear_roots(theta, &RootVector::simple(l, i));
        let v = -(Rational::from_integer(2) * s / theta_norm);
        a[0][i + 1] = v.to_integer();
        for j in 0..l {
            a[i + 1][j + 1] = fin.matrix[i][j];
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rank_one_finite() {
        let d = CartanDatum::validate(vec![vec![2]], None).unwrap();
        assert_eq!(d.kind(), Kind::Finite);
        assert_eq!(d.symmetrizer(), &[1]);
    }

    #[test]
    fn affine_a1_marks() {
        let d = CartanDatum::validate(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
        assert_eq!(d.kind(), Kind::UntwistedAffine);
        assert_eq!(d.marks(), Some(&[1, 1][..]));
        assert_eq!(d.affine_node(), Some(0));
    }

    #[test]
    fn a2_is_finite() {
        let d = CartanDatum::validate(vec![vec![2, -1], vec![-1, 2]], Some(Kind::Finite)).unwrap();
        assert_eq!(d.finite_positive_roots().len(), 3);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            CartanDatum::validate(vec![vec![2, 1], vec![1, 2]], None),
            Err(Error::NotGcm(_))
        ));
        assert!(matches!(
            CartanDatum::validate(vec![vec![2, -1], vec![0, 2]], None),
            Err(Error::NotGcm(_))
        ));
        // hyperbolic rank 2
        assert!(matches!(
            CartanDatum::validate(vec![vec![2, -3], vec![-3, 2]], None),
            Err(Error::UnsupportedType(_))
        ));
        // twisted A2^(2)
        assert!(matches!(
            CartanDatum::validate(vec![vec![2, -4], vec![-1, 2]], None),
            Err(Error::UnsupportedType(_))
        ));
        // not symmetrizable: a 3-cycle with inconsistent ratios
        assert_eq!(
            CartanDatum::validate(
                vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]],
                None
            )
            .unwrap_err(),
            Error::NotSymmetrizable
        );
        assert!(CartanDatum::validate(vec![vec![2]], Some(Kind::UntwistedAffine)).is_err());
    }

    #[test]
    fn named_types_have_expected_root_counts() {
        for (name, count) in [
            ("A1", 1),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            let d = CartanDatum::named(name).unwrap();
            assert_eq!(d.finite_positive_roots().len(), count, "{name}");
        }
    }

    #[test]
    fn affine_names_round_trip_through_validation() {
        for name in ["A1~", "A2~", "B3~", "C2~", "D4~", "G2~", "F4~", "E6~"] {
            let d = CartanDatum::named(name).unwrap();
            assert_eq!(d.kind(), Kind::UntwistedAffine, "{name}");
            assert_eq!(d.affine_node(), Some(0), "{name}");
            let again = CartanDatum::validate(d.matrix().to_vec(), None).unwrap();
            assert_eq!(again.marks(), d.marks());
        }
        let g2 = CartanDatum::named("G2~").unwrap();
        assert_eq!(g2.marks(), Some(&[1, 3, 2][..]));
        assert_eq!(g2.comarks(), Some(&[1, 1, 2][..]));
        assert!(CartanDatum::named("Q7").is_err());
    }

    #[test]
    fn symmetrizer_and_norms() {
        let g2 = CartanDatum::named("G2").unwrap();
        assert_eq!(g2.symmetrizer(), &[1, 3]);
        assert_eq!(g2.half_norm(0), q(1, 3));
        assert_eq!(g2.half_norm(1), q(1, 1));
        let a = g2.matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g2.symmetrizer()[i] * a[i][j], g2.symmetrizer()[j] * a[j][i]);
            }
        }
    }

    #[test]
    fn form_examples() {
        let a2 = CartanDatum::named("A2").unwrap();
        let a1 = RootVector::simple(2, 0);
        assert_eq!(a2.bilinear_roots(&a1, &a1), q(2, 1));
        // (rho, theta^vee) = 2
        let theta = a2.root_to_weight(a2.highest_root());
        let rho = a2.weyl_vector();
        let theta_norm = a2.bilinear(&theta, &theta);
        assert_eq!(q(2, 1) * a2.bilinear(&rho, &theta) / theta_norm, q(2, 1));

        let aff = CartanDatum::named("A1~").unwrap();
        let delta = aff.delta_weight().unwrap();
        let a0 = aff.simple_root_weight(0);
        assert_eq!(aff.bilinear(&delta, &a0), q(0, 1));
        let lam0 = aff.fundamental_weight(0);
        assert_eq!(aff.bilinear(&lam0, &delta), q(1, 1));
        assert_eq!(aff.bilinear(&lam0, &lam0), q(0, 1));
        assert_eq!(aff.bilinear(&a0, &a0), q(2, 1));
    }

    #[test]
    fn root_weight_round_trip() {
        for name in ["A2", "G2", "A1~", "C2~"] {
            let d = CartanDatum::named(name).unwrap();
            let b = RootVector((0..d.rank() as i64).map(|i| i * 2 - 1).collect());
            let w = d.root_to_weight(&b);
            assert_eq!(d.weight_to_root(&w), Some(b), "{name}");
        }
        let a2 = CartanDatum::named("A2").unwrap();
        assert_eq!(a2.weight_to_root(&Weight::from_labels(vec![1, 0])), None);
    }
}
