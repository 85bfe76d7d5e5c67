#include "mwtree/matrix.hpp"

#include "mwtree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mwtree {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw Error("ragged matrix initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::ones(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::submatrix(int row0, int col0, int nrows, int ncols) const {
    Matrix s(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) s(i, j) = (*this)(row0 + i, col0 + j);
    return s;
}

void Matrix::set_submatrix(int row0, int col0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

void Matrix::add_submatrix(int row0, int col0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) += b(i, j);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
}

double Matrix::asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

Matrix& Matrix::operator+=(const Matrix& b) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("max_abs_diff shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return c;
}

namespace {

struct LuFactor {
    Matrix lu;             // packed L (unit diagonal) and U
    std::vector<int> perm; // row permutation
    double det = 0.0;
};

LuFactor lu_factor(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error("lu_inverse requires a square matrix");
    const int n = a.rows();
    LuFactor f;
    f.lu = a;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);
    const double amax = a.max_abs();
    if (amax == 0.0) throw SingularMatrix("zero matrix");
    const double gate = 1e-12 * amax;

    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(f.lu(i, k)) > std::fabs(f.lu(p, k))) p = i;
        if (std::fabs(f.lu(p, k)) < gate)
            throw SingularMatrix("pivot below 1e-12 * max|A| at column " + std::to_string(k));
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(p, j), f.lu(k, j));
            std::swap(f.perm[p], f.perm[k]);
            det = -det;
        }
        const double piv = f.lu(k, k);
        det *= piv;
        for (int i = k + 1; i < n; ++i) {
            f.lu(i, k) /= piv;
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    f.det = det;
    return f;
}

} // namespace

LuResult lu_inverse(const Matrix& a) {
    const LuFactor f = lu_factor(a);
    const int n = a.rows();
    LuResult r;
    r.det = f.det;
    r.inverse = Matrix(n, n);
    std::vector<double> x(n);
    for (int col = 0; col < n; ++col) {
        // forward substitution on the permuted unit vector
        for (int i = 0; i < n; ++i) {
            double s = (f.perm[i] == col) ? 1.0 : 0.0;
            for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
            x[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = x[i];
            for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
            x[i] = s / f.lu(i, i);
        }
        for (int i = 0; i < n; ++i) r.inverse(i, col) = x[i];
    }
    return r;
}

double lu_det(const Matrix& a) { return lu_factor(a).det; }

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, with the
// orthogonal transform accumulated in z.
void tridiagonalize(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
    const int n = z.rows();
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (int j = 0; j < i; ++j) {
                double g = 0.0;
                for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of z along.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-14 * dd + 1e-300) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw Error("symmetric QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

EigenDecomposition sym_eig_impl(const Matrix& a) {
    if (a.rows() != a.cols()) throw NotSymmetric("matrix is not square");
    if (a.asymmetry() > 1e-8)
        throw NotSymmetric("asymmetry exceeds 1e-8");
    const int n = a.rows();
    EigenDecomposition dec;
    dec.eigenvalues.assign(n, 0.0);
    if (n == 0) return dec;

    // work on the symmetrized copy
    Matrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = 0.5 * (a(i, j) + a(j, i));

    std::vector<double> d(n, 0.0), e(n, 0.0);
    if (n == 1) {
        d[0] = z(0, 0);
        z(0, 0) = 1.0;
    } else {
        tridiagonalize(z, d, e);
        ql_implicit(d, e, z);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    dec.eigenvectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        dec.eigenvalues[k] = d[order[k]];
        for (int i = 0; i < n; ++i) dec.eigenvectors(i, k) = z(i, order[k]);
    }
    return dec;
}

} // namespace

Spectrum sym_eig(const Matrix& a) {
    return Spectrum{sym_eig_impl(a).eigenvalues};
}

EigenDecomposition sym_eig_full(const Matrix& a) { return sym_eig_impl(a); }

Matrix sqrt_pd(const Matrix& a) {
    const EigenDecomposition dec = sym_eig_impl(a);
    for (double lam : dec.eigenvalues)
        if (lam <= 0.0)
            throw NotPositiveDefinite("eigenvalue " + std::to_string(lam) + " is not positive");
    const int n = a.rows();
    Matrix s(n, n);
    for (int k = 0; k < n; ++k) {
        const double r = std::sqrt(dec.eigenvalues[k]);
        for (int i = 0; i < n; ++i) {
            const double vik = dec.eigenvectors(i, k);
            if (vik == 0.0) continue;
            for (int j = 0; j < n; ++j) s(i, j) += r * vik * dec.eigenvectors(j, k);
        }
    }
    // kill rounding asymmetry from the accumulation
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = s(j, i) = m;
        }
    return s;
}

Matrix triangular_inverse(const Matrix& a, bool lower) {
    const int n = a.rows();
    Matrix x(n, n);
    for (int j = 0; j < n; ++j) {
        if (a(j, j) == 0.0) throw SingularMatrix("zero diagonal in triangular matrix");
        x(j, j) = 1.0 / a(j, j);
    }
    if (lower) {
        for (int j = 0; j < n; ++j)
            for (int i = j + 1; i < n; ++i) {
                double s = 0.0;
                for (int k = j; k < i; ++k) s += a(i, k) * x(k, j);
                x(i, j) = -s / a(i, i);
            }
    } else {
        for (int j = n - 1; j >= 0; --j)
            for (int i = j - 1; i >= 0; --i) {
                double s = 0.0;
                for (int k = i + 1; k <= j; ++k) s += a(i, k) * x(k, j);
                x(i, j) = -s / a(i, i);
            }
    }
    return x;
}

Matrix vec_permutation(int m, int n) {
    Matrix p(m * n, m * n);
    for (int i = 0; i < m; ++i)
        for (int q = 0; q < n; ++q) p(i * n + q, q * m + i) = 1.0;
    return p;
}

} // namespace mwtree
