//! Dense linear-algebra helpers built on nalgebra.
//!
//! Symmetric eigen-decompositions and singular values go through faer, which
//! reconstructs small dense matrices to machine precision.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Average `m` with its transpose.
pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
pub fn sym_eigen(m: &Matrix) -> (Vector, Matrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vector::zeros(0), Matrix::zeros(0, 0));
    }
    let sym = symmetrize(m);
    let eig = to_faer(&sym).self_adjoint_eigen(faer::Side::Lower).expect("symmetric eigensolver converges");
    let (s, u) = (eig.S(), eig.U());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let values = Vector::from_iterator(n, order.iter().map(|&i| s[i]));
    let vectors = Matrix::from_fn(n, n, |r, k| u[(r, order[k])]);
    (values, vectors)
}

fn to_faer(m: &Matrix) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Smallest and largest eigenvalue of a symmetric matrix.
pub fn extreme_eigenvalues(m: &Matrix) -> (f64, f64) {
    if m.nrows() == 0 {
        return (0.0, 0.0);
    }
    let (values, _) = sym_eigen(m);
    (values[0], values[values.len() - 1])
}

/// Singular values sorted in descending order.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s = to_faer(a).singular_values().expect("SVD converges");
    s.sort_by(|p, q| q.total_cmp(p));
    s
}

pub fn spectral_norm(a: &Matrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// `P^{1/2}` and `P^{-1/2}` for a symmetric positive-definite `P`.
pub fn sqrt_and_inv_sqrt(p: &Matrix) -> (Matrix, Matrix) {
    let (values, vectors) = sym_eigen(p);
    let root = Vector::from_iterator(values.len(), values.iter().map(|v| v.max(0.0).sqrt()));
    let inv_root = Vector::from_iterator(values.len(), root.iter().map(|r| 1.0 / r));
    let half = &vectors * Matrix::from_diagonal(&root) * vectors.transpose();
    let inv_half = &vectors * Matrix::from_diagonal(&inv_root) * vectors.transpose();
    (half, inv_half)
}

/// Operator norm of `m` measured in the norm induced by SPD `p`.
pub fn weighted_operator_norm(m: &Matrix, p: &Matrix) -> f64 {
    let (half, inv_half) = sqrt_and_inv_sqrt(p);
    spectral_norm(&(&half * m * &inv_half))
}

/// Smallest generalized eigenvalue of the pencil `(s, t)` with `t` SPD.
pub fn generalized_min_eigenvalue(s: &Matrix, t: &Matrix) -> f64 {
    let (_, inv_half) = sqrt_and_inv_sqrt(t);
    extreme_eigenvalues(&(&inv_half * s * &inv_half)).0
}

pub fn stack(x: &Vector, y: &Vector) -> Vector {
    let mut w = Vector::zeros(x.len() + y.len());
    w.rows_mut(0, x.len()).copy_from(x);
    w.rows_mut(x.len(), y.len()).copy_from(y);
    w
}

pub fn split(w: &Vector, n: usize) -> (Vector, Vector) {
    let m = w.len() - n;
    (w.rows(0, n).into_owned(), w.rows(n, m).into_owned())
}

/// Build a matrix from row-major nested vectors.
pub fn from_rows(rows: &[Vec<f64>], cols_hint: usize) -> Option<Matrix> {
    let cols = rows.first().map(|r| r.len()).unwrap_or(cols_hint);
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_orthonormal() {
        let m = Matrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]);
        let (vals, vecs) = sym_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        let gram = vecs.transpose() * &vecs;
        assert!((gram - Matrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn weighted_norm_of_identity_is_one() {
        let p = Matrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]);
        let norm = weighted_operator_norm(&Matrix::identity(2, 2), &p);
        assert!((norm - 1.0).abs() < 1e-13);
    }

    #[test]
    fn pencil_of_diagonals() {
        let s = Matrix::from_diagonal(&Vector::from_vec(vec![1.0, 1.0]));
        let t = Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 1.0]));
        assert!((generalized_min_eigenvalue(&s, &t) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn stack_split_roundtrip() {
        let x = Vector::from_vec(vec![1.0, 2.0]);
        let y = Vector::from_vec(vec![3.0]);
        let (a, b) = split(&stack(&x, &y), 2);
        assert_eq!(a, x);
        assert_eq!(b, y);
    }
}
