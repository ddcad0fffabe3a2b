//! Exact elimination over the integers and over prime fields.
//!
//! Integer matrices are ranked with fraction-free (Bareiss) elimination.
//! Row reduction and null spaces over the integers are only offered for
//! totally unimodular input, where every pivot can be chosen as a unit and
//! all intermediate entries stay integral.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Scalars a representation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalars {
    /// Integer entries, rank taken over the rationals.
    Integer,
    /// Residues modulo a prime.
    Prime(u32),
}

impl Scalars {
    pub fn normalize(self, v: i64) -> i64 {
        match self {
            Scalars::Integer => v,
            Scalars::Prime(p) => v.rem_euclid(p as i64),
        }
    }

    fn sub_mul(self, a: i64, c: i64, b: i64) -> i64 {
        self.normalize(a - c * b)
    }
}

pub fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix with a fixed column count (rows may be empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub cols: usize,
    pub rows: Vec<Vec<i64>>,
}

impl Matrix {
    pub fn new(cols: usize, rows: Vec<Vec<i64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { cols, rows }
    }

    pub fn zero_rows(cols: usize) -> Self {
        Matrix { cols, rows: vec![] }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Submatrix keeping the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix {
            cols: cols.len(),
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j]).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols).map(|j| self.column(j)).collect();
        Matrix {
            cols: self.rows.len(),
            rows,
        }
    }
}

/// Rank of the column submatrix `cols` over `scalars`.
pub fn rank_of_columns(m: &Matrix, cols: &[usize], scalars: Scalars) -> usize {
    match scalars {
        Scalars::Integer => bareiss_rank(m, cols),
        Scalars::Prime(p) => rank_mod_p(m, cols, p as i64),
    }
}

pub fn rank(m: &Matrix, scalars: Scalars) -> usize {
    let all: Vec<usize> = (0..m.cols).collect();
    rank_of_columns(m, &all, scalars)
}

/// Fraction-free Gaussian elimination. Every intermediate entry is a minor of
/// the input, so i128 suffices for any realistic size; on overflow the
/// computation is redone with big integers.
pub fn bareiss_rank(m: &Matrix, cols: &[usize]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .rows
        .iter()
        .map(|r| cols.iter().map(|&j| r[j] as i128).collect())
        .collect();
    match bareiss_rank_i128(&mut a, cols.len()) {
        Some(r) => r,
        None => {
            let mut b: Vec<Vec<BigInt>> = m
                .rows
                .iter()
                .map(|r| cols.iter().map(|&j| BigInt::from(r[j])).collect())
                .collect();
            bareiss_rank_big(&mut b, cols.len())
        }
    }
}

fn bareiss_rank_i128(a: &mut [Vec<i128>], ncols: usize) -> Option<usize> {
    let nrows = a.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col];
        for i in rank + 1..nrows {
            let f = a[i][col];
            for j in col..ncols {
                let v = p
                    .checked_mul(a[i][j])?
                    .checked_sub(f.checked_mul(a[rank][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(a: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for i in rank + 1..nrows {
            let f = a[i][col].clone();
            for j in col..ncols {
                let v = &p * &a[i][j] - &f * &a[rank][j];
                a[i][j] = v / &prev;
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination (exact).
pub fn bareiss_det(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

fn rank_mod_p(m: &Matrix, cols: &[usize], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .rows
        .iter()
        .map(|r| cols.iter().map(|&j| r[j].rem_euclid(p)).collect())
        .collect();
    let nrows = a.len();
    let mut rank = 0;
    for col in 0..cols.len() {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][col], p).expect("nonzero residue mod prime");
        for i in rank + 1..nrows {
            let f = a[i][col] * inv % p;
            if f == 0 {
                continue;
            }
            for j in col..cols.len() {
                a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form with zero rows dropped. Pivots are normalized to
/// one. Over the integers every pivot must be a unit (±1), which always holds
/// for totally unimodular input; otherwise an error is returned.
pub fn rref(m: &Matrix, scalars: Scalars) -> Result<(Matrix, Vec<usize>)> {
    let mut a: Vec<Vec<i64>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|&v| scalars.normalize(v)).collect())
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == nrows {
            break;
        }
        let piv = match scalars {
            Scalars::Prime(_) => (rank..nrows).find(|&i| a[i][col] != 0),
            Scalars::Integer => {
                let unit = (rank..nrows).find(|&i| a[i][col].abs() == 1);
                if unit.is_none() && (rank..nrows).any(|i| a[i][col] != 0) {
                    return Err(Error::InvalidInstance {
                        location: format!("column {col}"),
                        message: "matrix is not totally unimodular (non-unit pivot)".into(),
                    });
                }
                unit
            }
        };
        let Some(piv) = piv else { continue };
        a.swap(rank, piv);
        let inv = match scalars {
            Scalars::Integer => a[rank][col],
            Scalars::Prime(p) => mod_inverse(a[rank][col], p as i64).expect("prime modulus"),
        };
        for j in 0..m.cols {
            a[rank][j] = scalars.normalize(a[rank][j] * inv);
        }
        for i in 0..nrows {
            if i == rank || a[i][col] == 0 {
                continue;
            }
            let f = a[i][col];
            for j in 0..m.cols {
                a[i][j] = scalars.sub_mul(a[i][j], f, a[rank][j]);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    a.truncate(rank);
    Ok((Matrix::new(m.cols, a), pivots))
}

/// Basis of the right null space `{v : m v = 0}`, one basis vector per row.
/// Over the integers this requires total unimodularity (see [`rref`]); the
/// result is then itself integral with an identity block on the free columns.
pub fn null_space(m: &Matrix, scalars: Scalars) -> Result<Matrix> {
    let (r, pivots) = rref(m, scalars)?;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let rows = free
        .iter()
        .map(|&f| {
            let mut v = vec![0i64; m.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = scalars.normalize(-r.rows[i][f]);
            }
            v
        })
        .collect();
    Ok(Matrix::new(m.cols, rows))
}

/// Exhaustive total-unimodularity test: every square subdeterminant must be
/// -1, 0 or 1. Exponential; callers cap the size.
pub fn is_totally_unimodular(m: &Matrix) -> bool {
    if m.rows.iter().flatten().any(|v| v.abs() > 1) {
        return false;
    }
    let nr = m.row_count();
    let nc = m.cols;
    let k_max = nr.min(nc);
    for k in 2..=k_max {
        for rsel in subsets_of_size(nr, k) {
            for csel in subsets_of_size(nc, k) {
                let sub: Vec<Vec<i64>> = rsel
                    .iter()
                    .map(|&i| csel.iter().map(|&j| m.rows[i][j]).collect())
                    .collect();
                if bareiss_det(&sub).abs() > BigInt::one() {
                    return false;
                }
            }
        }
    }
    true
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Matrix product `a * b^T` reduced over `scalars`; used to certify
/// orthogonality of dual pairs.
pub fn product_with_transpose(a: &Matrix, b: &Matrix, scalars: Scalars) -> Vec<Vec<i64>> {
    a.rows
        .iter()
        .map(|ra| {
            b.rows
                .iter()
                .map(|rb| scalars.normalize(ra.iter().zip(rb).map(|(x, y)| x * y).sum()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::new(cols, rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn bareiss_rank_of_triangle_incidence() {
        let h = mat(&[&[-1, 0, 1], &[1, -1, 0], &[0, 1, -1]]);
        assert_eq!(rank(&h, Scalars::Integer), 2);
        assert_eq!(bareiss_rank(&h, &[0]), 1);
        assert_eq!(bareiss_rank(&h, &[]), 0);
    }

    #[test]
    fn rank_mod_two_differs_from_rational_rank() {
        // 2 is invertible over Q but zero mod 2.
        let m = mat(&[&[2, 0], &[0, 1]]);
        assert_eq!(rank(&m, Scalars::Integer), 2);
        assert_eq!(rank(&m, Scalars::Prime(2)), 1);
    }

    #[test]
    fn fano_rank_three() {
        let f = mat(&[
            &[1, 0, 0, 1, 1, 0, 1],
            &[0, 1, 0, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 1],
        ]);
        assert_eq!(rank(&f, Scalars::Prime(2)), 3);
        let ns = null_space(&f, Scalars::Prime(2)).unwrap();
        assert_eq!(ns.row_count(), 4);
        assert!(product_with_transpose(&f, &ns, Scalars::Prime(2))
            .iter()
            .flatten()
            .all(|&v| v == 0));
    }

    #[test]
    fn integer_null_space_of_tu_matrix() {
        let h = mat(&[&[-1, 0, 1], &[1, -1, 0], &[0, 1, -1]]);
        let ns = null_space(&h, Scalars::Integer).unwrap();
        assert_eq!(ns.row_count(), 1);
        assert!(product_with_transpose(&h, &ns, Scalars::Integer)
            .iter()
            .flatten()
            .all(|&v| v == 0));
    }

    #[test]
    fn non_unit_pivot_is_rejected() {
        let m = mat(&[&[2, 1]]);
        assert!(rref(&m, Scalars::Integer).is_err());
    }

    #[test]
    fn tu_check() {
        assert!(is_totally_unimodular(&mat(&[&[1, 1, 0], &[0, 1, 1]])));
        // odd cycle vertex-edge matrix with unsigned entries has det 2
        assert!(!is_totally_unimodular(&mat(&[
            &[1, 0, 1],
            &[1, 1, 0],
            &[0, 1, 1]
        ])));
    }

    #[test]
    fn determinants() {
        assert_eq!(bareiss_det(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(bareiss_det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(bareiss_det(&[]), BigInt::from(1));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(4, 7), Some(2));
        assert_eq!(mod_inverse(3, 6), None);
        assert!(is_prime(101) && !is_prime(91) && !is_prime(1));
    }
}
