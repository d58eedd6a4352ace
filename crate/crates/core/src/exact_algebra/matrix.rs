use super::{AlgebraError, Scalar};

/// 4x4 matrix over an exact commutative ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix4<T> {
    rows: [[T; 4]; 4],
}

impl<T: Scalar> Matrix4<T> {
    pub fn from_rows(rows: [[T; 4]; 4]) -> Self {
        Matrix4 { rows }
    }

    pub fn identity() -> Self {
        Matrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
            }),
        }
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Matrix4 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(T::zero(), |acc, k| {
                        acc.plus(&self.rows[i][k].times(&other.rows[k][j]))
                    })
                })
            }),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    /// Every division is exact in an integral domain.
    pub fn det(&self) -> Result<T, AlgebraError> {
        let mut a: Vec<Vec<T>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let n = 4;
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { d.negated() } else { d })
    }
}

/// Determinant by Laplace expansion along the first row. Kept alongside the
/// Bareiss routine as an independent cross-check.
pub fn det_cofactor<T: Scalar>(m: &Matrix4<T>) -> T {
    fn minor_det<T: Scalar>(rows: &[Vec<T>]) -> T {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = T::zero();
        for col in 0..n {
            if rows[0][col].is_zero() {
                continue;
            }
            let sub: Vec<Vec<T>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = rows[0][col].times(&minor_det(&sub));
            acc = if col % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }
    let rows: Vec<Vec<T>> = m.rows().iter().map(|r| r.to_vec()).collect();
    minor_det(&rows)
}
