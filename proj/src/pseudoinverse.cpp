#include "mwtree/pseudoinverse.hpp"

#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mwtree {

PinvResult pinv(const Tree& tree, int ground_vertex) {
    const int n = tree.vertex_count();
    const int s = tree.block_size();
    const int v = ground_vertex < 0 ? n - 1 : ground_vertex;
    tree.require_vertex(v);

    // grounded inverse, brought back to ascending vertex order
    std::vector<int> ascending;
    for (int x = 0; x < n; ++x)
        if (x != v) ascending.push_back(x);
    const BlockMatrix lv_inv =
        grounded_inverse_analytic(tree, v).reordered(ascending, ascending);

    const Matrix m = Matrix::identity((n - 1) * s) -
                     kron(Matrix::ones(n - 1, n - 1), Matrix::identity(s)) * (1.0 / n);
    const Matrix core = m * lv_inv.data() * m;

    std::vector<int> all(n);
    for (int x = 0; x < n; ++x) all[x] = x;
    BlockMatrix lp(all, all, s);

    // principal part, then the grounded column and row by zero block sums
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            lp.set_block(ascending[i], ascending[j], core.submatrix(i * s, j * s, s, s));
    for (int i = 0; i < n - 1; ++i) {
        Matrix row_sum(s, s);
        for (int j = 0; j < n - 1; ++j) row_sum += lp.block(ascending[i], ascending[j]);
        lp.set_block(ascending[i], v, row_sum * -1.0);
    }
    for (int j = 0; j < n; ++j) {
        Matrix col_sum(s, s);
        for (int i = 0; i < n - 1; ++i) col_sum += lp.block(ascending[i], j);
        lp.set_block(v, j, col_sum * -1.0);
    }

    PinvResult res;
    res.pinv = lp;

    const Matrix l = laplacian(tree).data();
    const Matrix& x = lp.data();
    const Matrix lx = l * x;
    const Matrix xl = x * l;
    res.penrose_residuals[0] = max_abs_diff(lx * l, l);
    res.penrose_residuals[1] = max_abs_diff(xl * x, x);
    res.penrose_residuals[2] = lx.asymmetry();
    res.penrose_residuals[3] = xl.asymmetry();

    const Matrix projector =
        Matrix::identity(n * s) - lx -
        kron(Matrix::ones(n, n), Matrix::identity(s)) * (1.0 / n);
    res.projector_residual = projector.max_abs();

    const double tol = 1e-8 * std::max(1.0, l.max_abs());
    for (int i = 0; i < 4; ++i)
        if (!(res.penrose_residuals[i] < tol))
            throw PenroseFailure("Penrose condition " + std::to_string(i + 1) + " residual " +
                                 std::to_string(res.penrose_residuals[i]) + " exceeds " +
                                 std::to_string(tol));
    if (!(res.projector_residual < tol))
        throw PenroseFailure("projector residual " + std::to_string(res.projector_residual) +
                             " exceeds " + std::to_string(tol));
    return res;
}

double projector_check(const Tree& tree, const PinvResult& r) {
    const int n = tree.vertex_count();
    const int s = tree.block_size();
    const Matrix l = laplacian(tree).data();
    const Matrix lhs = Matrix::identity(n * s) - l * r.pinv.data();
    const Matrix rhs = kron(Matrix::ones(n, n), Matrix::identity(s)) * (1.0 / n);
    return max_abs_diff(lhs, rhs);
}

double m_inverse_check(int n, int s) {
    if (n < 2 || s < 1) throw Error("m_inverse_check needs n >= 2 and s >= 1");
    const int k = (n - 1) * s;
    const Matrix m = Matrix::identity(k) -
                     kron(Matrix::ones(n - 1, n - 1), Matrix::identity(s)) * (1.0 / n);
    const Matrix d = kron(Matrix::ones(n - 1, 1), Matrix::identity(s));
    const Matrix rhs = Matrix::identity(k) + d * d.transposed();
    return max_abs_diff(m * rhs, Matrix::identity(k));
}

} // namespace mwtree
