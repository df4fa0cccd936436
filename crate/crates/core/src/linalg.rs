//! Small exact linear algebra over `Q` for Cartan-matrix sized problems.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect()).collect()
}

pub fn determinant(m: &[Vec<i64>]) -> Rational {
    let mut a = to_rational(m);
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    det
}

/// Inverse of a nonsingular matrix, `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a = to_rational(m);
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col];
        for c in 0..n {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for c in 0..n {
                let (x, y) = (a[col][c], inv[col][c]);
                a[r][c] -= f * x;
                inv[r][c] -= f * y;
            }
        }
    }
    Some(inv)
}

/// The principal submatrix obtained by deleting the indices in `drop`.
pub fn principal_minor(m: &[Vec<i64>], keep: &[usize]) -> Vec<Vec<i64>> {
    keep.iter().map(|&i| keep.iter().map(|&j| m[i][j]).collect()).collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Scales a positive rational vector to the primitive positive integer vector
/// on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<i64> {
    let lcm = v.iter().fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * Rational::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    ints.iter().map(|&x| x / g.max(1)).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_of_cartan_matrices() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), Rational::from_integer(3));
        assert_eq!(determinant(&[vec![2, -2], vec![-2, 2]]), Rational::zero());
        assert_eq!(determinant(&[vec![2, -3], vec![-1, 2]]), Rational::from_integer(1));
    }

    #[test]
    fn inverse_of_a2() {
        let inv = inverse(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(inv[0][0], Rational::new(2, 3));
        assert_eq!(inv[0][1], Rational::new(1, 3));
        assert!(inverse(&[vec![2, -2], vec![-2, 2]]).is_none());
    }

    #[test]
    fn primitive_vector() {
        let v = [Rational::new(1, 2), Rational::from_integer(1)];
        assert_eq!(primitive_integer(&v), vec![1, 2]);
    }
}
