#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mwtree {

/// Dense real matrix, row-major, double precision.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);
    static Matrix ones(int rows, int cols);
    static Matrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const;
    Matrix submatrix(int row0, int col0, int nrows, int ncols) const;
    void set_submatrix(int row0, int col0, const Matrix& b);
    void add_submatrix(int row0, int col0, const Matrix& b);

    double max_abs() const;
    double asymmetry() const; // max |a_ij - a_ji|, 0 for non-square 0x0
    bool all_finite() const;

    Matrix& operator+=(const Matrix& b);
    Matrix& operator-=(const Matrix& b);
    Matrix& operator*=(double s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

double max_abs_diff(const Matrix& a, const Matrix& b);

/// Eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> eigenvalues;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues; // ascending
    Matrix eigenvectors;             // column k pairs with eigenvalues[k]
};

struct LuResult {
    Matrix inverse;
    double det = 0.0;
};

/// Kronecker product [a_ij * B].
Matrix kron(const Matrix& a, const Matrix& b);

/// Inverse and determinant via partially pivoted LU.
/// Throws SingularMatrix when a pivot falls below 1e-12 * max|A|.
LuResult lu_inverse(const Matrix& a);

/// Determinant only (same factorization and pivot gate as lu_inverse).
double lu_det(const Matrix& a);

/// Full ascending spectrum of a symmetric matrix (Householder tridiagonalization
/// followed by implicit-shift QL). Throws NotSymmetric if max |a_ij - a_ji| > 1e-8.
Spectrum sym_eig(const Matrix& a);

/// Same reduction, with accumulated eigenvectors.
EigenDecomposition sym_eig_full(const Matrix& a);

/// Symmetric positive definite square root. Throws NotPositiveDefinite if any
/// eigenvalue is <= 0.
Matrix sqrt_pd(const Matrix& a);

/// Inverse of a triangular matrix by substitution; keeps the zero triangle and
/// the reciprocal diagonal exact.
Matrix triangular_inverse(const Matrix& a, bool lower);

/// Permutation P of order mn with P (B kron A) P^T = A kron B for every
/// A of order m and B of order n.
Matrix vec_permutation(int m, int n);

} // namespace mwtree
