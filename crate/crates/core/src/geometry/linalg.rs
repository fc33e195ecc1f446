//! Small exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Integer vector.
pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> IVec {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn gcd_all(a: &[i64]) -> i64 {
    a.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn det_i64(rows: &[IVec]) -> i128 {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    det(&m)
}

/// Vector orthogonal to the `n - 1` rows of `rows` in `R^n`, with entries the
/// signed maximal minors. Zero exactly when the rows are dependent.
pub fn orthogonal_complement(rows: &[IVec], n: usize) -> IVec {
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| (0..n).filter(|&c| c != j).map(|c| r[c] as i128).collect())
                .collect();
            let d = det(&minor);
            let d = if j % 2 == 0 { d } else { -d };
            i64::try_from(d).expect("normal vector entry overflows i64")
        })
        .collect()
}

/// Rank over the rationals.
pub fn rank(rows: &[IVec]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| to_rational(r)).collect();
    row_reduce(&mut a)
}

pub fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect()
}

/// Gaussian elimination in place; returns the rank.
fn row_reduce(a: &mut [Vec<BigRational>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for x in a[r][c..cols].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `sum_j x_j columns[j] = rhs` exactly, for linearly independent
/// columns. `None` if there is no solution.
pub fn solve_independent(columns: &[IVec], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    let k = columns.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from_integer(c[i].into()))
                .collect();
            row.push(BigRational::from_integer(rhs[i].into()));
            row
        })
        .collect();
    let r = row_reduce(&mut a);
    // Inconsistent iff some row reduces to [0 ... 0 | nonzero].
    for row in a.iter().skip(r) {
        if !row[k].is_zero() {
            return None;
        }
    }
    if r < k {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for row in a.iter().take(r) {
        let c = row.iter().position(|v| !v.is_zero()).expect("pivot row");
        if c == k {
            return None;
        }
        x[c] = row[k].clone();
    }
    Some(x)
}

/// Formats a rational as `p/q` with `q > 0` and lowest terms.
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    (!q.is_zero()).then(|| BigRational::new(p, q))
}

pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det_i64(&[vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(det_i64(&[]), 1);
    }

    #[test]
    fn complement_is_orthogonal() {
        let rows = vec![vec![1, 2, 3], vec![0, 1, 4]];
        let n = orthogonal_complement(&rows, 3);
        assert!(!is_zero(&n));
        for r in &rows {
            assert_eq!(dot(r, &n), 0);
        }
        assert_eq!(orthogonal_complement(&[], 1), vec![1]);
    }

    #[test]
    fn solve_and_rank() {
        let x = solve_independent(&[vec![2, 0], vec![0, 3]], &[3, 3]).unwrap();
        assert_eq!(fraction_string(&x[0]), "3/2");
        assert_eq!(fraction_string(&x[1]), "1/1");
        assert!(solve_independent(&[vec![1, 1, 0]], &[1, 2, 0]).is_none());
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 5]]), 2);
        assert_eq!(
            parse_fraction("-6/4"),
            Some(BigRational::new((-3).into(), 2.into()))
        );
    }
}
