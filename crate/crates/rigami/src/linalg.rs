//! Dense rank/kernel/cokernel computations on top of nalgebra's SVD.
//!
//! Everything here is desk-scale: constraint systems in this crate have a few
//! dozen rows at most, so a full SVD is the robust choice throughout.

use nalgebra::{DMatrix, DVector};

/// Relative singular-value cutoff used when callers do not override it.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Singular values of `m`, largest first. Empty matrices yield an empty list.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect()
}

/// Numerical rank: singular values above `rel_tol * sigma_max`.
pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let max = sv.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Orthonormal basis of the kernel of `m`, returned as columns.
pub fn kernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let cols = m.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let r = if max == 0.0 {
        0
    } else {
        svd.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * max)
            .count()
    };
    // v_t has min(rows, cols) rows: rows r.. are kernel vectors, and for a
    // wide matrix the remaining kernel directions are the orthogonal
    // complement of all computed right singular vectors.
    let mut basis: Vec<DVector<f64>> = (r..v_t.nrows()).map(|i| v_t.row(i).transpose()).collect();
    let computed: Vec<DVector<f64>> = (0..r).map(|i| v_t.row(i).transpose()).collect();
    complete_orthonormal(&mut basis, &computed, cols, cols - r);
    from_columns(cols, &basis)
}

/// Orthonormal basis of the cokernel (kernel of the transpose), as columns.
pub fn cokernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    kernel_basis(&m.transpose(), rel_tol)
}

/// Orthonormal basis of the row space (the orthogonal complement of the
/// kernel), as columns.
pub fn row_space_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let cols = m.ncols();
    if cols == 0 || m.nrows() == 0 {
        return DMatrix::zeros(cols, 0);
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let r = if max == 0.0 {
        0
    } else {
        svd.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * max)
            .count()
    };
    let mut out = DMatrix::zeros(cols, r);
    for i in 0..r {
        out.set_column(i, &v_t.row(i).transpose());
    }
    out
}

fn from_columns(dim: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Extend `basis` with unit vectors (Gram-Schmidt) until it has `target`
/// members, staying orthogonal to both `basis` and `avoid`.
fn complete_orthonormal(
    basis: &mut Vec<DVector<f64>>,
    avoid: &[DVector<f64>],
    dim: usize,
    target: usize,
) {
    let mut k = 0;
    while basis.len() < target && k < dim {
        let mut v = DVector::zeros(dim);
        v[k] = 1.0;
        for _ in 0..2 {
            for b in basis.iter().chain(avoid) {
                let d = b.dot(&v);
                v -= b * d;
            }
        }
        let n = v.norm();
        if n > 1e-8 {
            basis.push(v / n);
        }
        k += 1;
    }
}

/// Minimum-norm least-squares solution of `m x = rhs` via the pseudoinverse.
pub fn min_norm_solve(m: &DMatrix<f64>, rhs: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
    if m.ncols() == 0 {
        return DVector::zeros(0);
    }
    if m.nrows() == 0 {
        return DVector::zeros(m.ncols());
    }
    let svd = m.clone().svd(true, true);
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = if max == 0.0 { 1.0 } else { rel_tol * max };
    svd.solve(rhs, eps).expect("svd solve with u and v_t")
}

/// Largest singular value (spectral norm). Zero for empty matrices.
pub fn op_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues (ascending) and matching eigenvector columns of a symmetric matrix.
pub fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (j, &i) in order.iter().enumerate() {
        vectors.set_column(j, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Smallest eigenvalue of a symmetric matrix and its eigenvector.
/// An empty matrix is vacuously positive definite: returns +infinity.
pub fn smallest_eigenvalue(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let (values, vectors) = sym_eigen(m);
    match values.first() {
        Some(&v) => (v, vectors.column(0).into_owned()),
        None => (f64::INFINITY, DVector::zeros(0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_rank(m: &DMatrix<f64>) -> usize {
        // Oracle: row-reduce with partial pivoting and count nonzero rows.
        let mut a = m.clone();
        let (rows, cols) = a.shape();
        let mut rank = 0;
        for col in 0..cols {
            let (pivot, max) = (rank..rows)
                .map(|r| (r, a[(r, col)].abs()))
                .fold((rank, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if max < 1e-9 {
                continue;
            }
            a.swap_rows(rank, pivot);
            for r in 0..rows {
                if r != rank && a[(r, col)].abs() > 0.0 {
                    let f = a[(r, col)] / a[(rank, col)];
                    for c in 0..cols {
                        a[(r, c)] -= f * a[(rank, c)];
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    #[test]
    fn rank_matches_row_reduction_oracle() {
        let cases = vec![
            DMatrix::from_row_slice(3, 3, &[1.0, -0.5, -0.5, 0.0, 0.8, -0.8, 0.0, 0.0, 0.0]),
            DMatrix::from_row_slice(2, 4, &[1.0, 2.0, 3.0, 4.0, 2.0, 4.0, 6.0, 8.0]),
            DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, -1.0]),
        ];
        for m in cases {
            assert_eq!(rank(&m, DEFAULT_RANK_TOL), brute_rank(&m));
        }
    }

    #[test]
    fn kernel_and_cokernel_satisfy_fredholm_counts() {
        let m = DMatrix::from_row_slice(
            3,
            4,
            &[1.0, 2.0, 0.0, 1.0, 0.0, 0.0, 1.0, -1.0, 1.0, 2.0, 1.0, 0.0],
        );
        let r = rank(&m, DEFAULT_RANK_TOL);
        let ker = kernel_basis(&m, DEFAULT_RANK_TOL);
        let coker = cokernel_basis(&m, DEFAULT_RANK_TOL);
        assert_eq!(ker.ncols() + r, m.ncols());
        assert_eq!(coker.ncols() + r, m.nrows());
        assert!((&m * &ker).norm() < 1e-10);
        assert!((m.transpose() * &coker).norm() < 1e-10);
        let gram = ker.transpose() * &ker;
        assert!((gram - DMatrix::identity(ker.ncols(), ker.ncols())).norm() < 1e-10);
    }

    #[test]
    fn kernel_of_wide_zero_row_matrix_is_full() {
        let m = DMatrix::<f64>::zeros(0, 5);
        let ker = kernel_basis(&m, DEFAULT_RANK_TOL);
        assert_eq!(ker.ncols(), 5);
    }

    #[test]
    fn min_norm_solution_is_orthogonal_to_kernel() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0]);
        let rhs = DVector::from_row_slice(&[1.0, 2.0]);
        let x = min_norm_solve(&m, &rhs, DEFAULT_RANK_TOL);
        assert!((&m * &x - rhs).norm() < 1e-10);
        let ker = kernel_basis(&m, DEFAULT_RANK_TOL);
        assert!((ker.transpose() * x).norm() < 1e-10);
    }

    #[test]
    fn sym_eigen_sorts_ascending() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, vecs) = sym_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        let recon =
            &vecs * DMatrix::from_diagonal(&DVector::from_vec(vals.clone())) * vecs.transpose();
        assert!((recon - m).norm() < 1e-12);
    }
}
