//! Block-tridiagonal systems with 2×2 blocks.
//!
//! Both the forward `(n, f)` solver and the backward `(T₊, T₋)` solver
//! discretize two coupled second-order equations on one grid, giving
//! `L_i u_{i-1} + D_i u_i + U_i u_{i+1} = r_i` with `u_i ∈ ℝ²`.

use crate::error::{Error, Result};

pub type Mat2 = [[f64; 2]; 2];
pub type Vec2 = [f64; 2];

#[inline]
pub fn mat_vec(a: &Mat2, x: &Vec2) -> Vec2 {
    [
        a[0][0] * x[0] + a[0][1] * x[1],
        a[1][0] * x[0] + a[1][1] * x[1],
    ]
}

#[inline]
fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

#[inline]
fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

fn inverse(a: &Mat2, row: usize) -> Result<Mat2> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-14 * scale * scale {
        return Err(Error::Numerical(format!(
            "singular pivot block at row {row}: det = {det:e}, block = {a:?}"
        )));
    }
    let inv = 1.0 / det;
    Ok([
        [a[1][1] * inv, -a[0][1] * inv],
        [-a[1][0] * inv, a[0][0] * inv],
    ])
}

/// A block-tridiagonal matrix. `lower[0]` and `upper[n-1]` are ignored.
#[derive(Debug, Clone)]
pub struct BlockTridiag {
    pub lower: Vec<Mat2>,
    pub diag: Vec<Mat2>,
    pub upper: Vec<Mat2>,
}

impl BlockTridiag {
    /// Same three blocks on every row.
    pub fn constant(n: usize, lower: Mat2, diag: Mat2, upper: Mat2) -> Self {
        Self {
            lower: vec![lower; n],
            diag: vec![diag; n],
            upper: vec![upper; n],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `y = A x`
    pub fn apply(&self, x: &[Vec2], y: &mut [Vec2]) {
        let n = self.len();
        for i in 0..n {
            let mut v = mat_vec(&self.diag[i], &x[i]);
            if i > 0 {
                let l = mat_vec(&self.lower[i], &x[i - 1]);
                v[0] += l[0];
                v[1] += l[1];
            }
            if i + 1 < n {
                let u = mat_vec(&self.upper[i], &x[i + 1]);
                v[0] += u[0];
                v[1] += u[1];
            }
            y[i] = v;
        }
    }

    /// Block LU factorization without pivoting between blocks.
    pub fn factor(&self) -> Result<BlockLu> {
        let n = self.len();
        if n == 0 {
            return Err(Error::Numerical("empty system".into()));
        }
        let mut inv_d = Vec::with_capacity(n);
        let mut mult = Vec::with_capacity(n);
        inv_d.push(inverse(&self.diag[0], 0)?);
        mult.push([[0.0; 2]; 2]);
        for i in 1..n {
            let m = mat_mul(&self.lower[i], &inv_d[i - 1]);
            let d = mat_sub(&self.diag[i], &mat_mul(&m, &self.upper[i - 1]));
            inv_d.push(inverse(&d, i)?);
            mult.push(m);
        }
        Ok(BlockLu {
            inv_d,
            mult,
            upper: self.upper.clone(),
        })
    }
}

/// Reusable factorization of a [`BlockTridiag`].
#[derive(Debug, Clone)]
pub struct BlockLu {
    inv_d: Vec<Mat2>,
    mult: Vec<Mat2>,
    upper: Vec<Mat2>,
}

impl BlockLu {
    /// Solves in place.
    pub fn solve(&self, rhs: &mut [Vec2]) {
        let n = self.inv_d.len();
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        for i in 1..n {
            let c = mat_vec(&self.mult[i], &rhs[i - 1]);
            rhs[i][0] -= c[0];
            rhs[i][1] -= c[1];
        }
        rhs[n - 1] = mat_vec(&self.inv_d[n - 1], &rhs[n - 1]);
        for i in (0..n - 1).rev() {
            let c = mat_vec(&self.upper[i], &rhs[i + 1]);
            let r = [rhs[i][0] - c[0], rhs[i][1] - c[1]];
            rhs[i] = mat_vec(&self.inv_d[i], &r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense Gaussian elimination with partial pivoting.
    fn dense_solve(a: &BlockTridiag, rhs: &[Vec2]) -> Vec<f64> {
        let n = a.len() * 2;
        let mut m = vec![vec![0.0; n + 1]; n];
        for i in 0..a.len() {
            for r in 0..2 {
                for c in 0..2 {
                    m[2 * i + r][2 * i + c] = a.diag[i][r][c];
                    if i > 0 {
                        m[2 * i + r][2 * (i - 1) + c] = a.lower[i][r][c];
                    }
                    if i + 1 < a.len() {
                        m[2 * i + r][2 * (i + 1) + c] = a.upper[i][r][c];
                    }
                }
                m[2 * i + r][n] = rhs[i][r];
            }
        }
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
                .unwrap();
            m.swap(col, piv);
            let pivot = m[col].clone();
            for r in m.iter_mut().skip(col + 1) {
                let f = r[col] / pivot[col];
                for (dst, src) in r[col..].iter_mut().zip(&pivot[col..]) {
                    *dst -= f * src;
                }
            }
        }
        let mut x = vec![0.0; n];
        for row in (0..n).rev() {
            let s: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
            x[row] = (m[row][n] - s) / m[row][row];
        }
        x
    }

    fn block() -> impl Strategy<Value = Mat2> {
        prop::array::uniform2(prop::array::uniform2(-1.0f64..1.0))
    }

    proptest! {
        #[test]
        fn matches_dense_elimination(
            blocks in prop::collection::vec((block(), block(), block(), prop::array::uniform2(-1.0f64..1.0)), 1..12)
        ) {
            // make the diagonal blocks dominant
            let n = blocks.len();
            let mut a = BlockTridiag::constant(n, [[0.0; 2]; 2], [[0.0; 2]; 2], [[0.0; 2]; 2]);
            let mut rhs = vec![[0.0; 2]; n];
            for (i, (l, d, u, r)) in blocks.into_iter().enumerate() {
                a.lower[i] = l;
                a.upper[i] = u;
                a.diag[i] = [[d[0][0] + 6.0, d[0][1]], [d[1][0], d[1][1] - 6.0]];
                rhs[i] = r;
            }
            let expect = dense_solve(&a, &rhs);
            let mut x = rhs.clone();
            a.factor().unwrap().solve(&mut x);
            for i in 0..n {
                prop_assert!((x[i][0] - expect[2 * i]).abs() < 1e-12);
                prop_assert!((x[i][1] - expect[2 * i + 1]).abs() < 1e-12);
            }
            let mut back = vec![[0.0; 2]; n];
            a.apply(&x, &mut back);
            for i in 0..n {
                prop_assert!((back[i][0] - rhs[i][0]).abs() < 1e-12);
                prop_assert!((back[i][1] - rhs[i][1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_block_reported() {
        let a = BlockTridiag::constant(3, [[0.0; 2]; 2], [[1.0, 2.0], [2.0, 4.0]], [[0.0; 2]; 2]);
        assert!(matches!(a.factor(), Err(Error::Numerical(_))));
    }
}
