#pragma once

#include "mwtree/block_matrix.hpp"
#include "mwtree/tree.hpp"

#include <array>

namespace mwtree {

struct PinvResult {
    BlockMatrix pinv;                          // ns x ns, natural vertex order
    std::array<double, 4> penrose_residuals{}; // LXL=L, XLX=X, (LX)^T=LX, (XL)^T=XL
    double projector_residual = 0.0;           // |(I - L X) - J (x) I/n|_max
};

/// Moore-Penrose inverse of the block Laplacian, assembled from the grounded
/// inverse: the principal part is M L_v^-1 M with M = I - J (x) I/n, the
/// grounded row and column are completed by zero block-sum. Every call
/// certifies the four Penrose conditions and throws PenroseFailure if any
/// residual exceeds 1e-8 (scaled by |L|_max for large weights).
PinvResult pinv(const Tree& tree, int ground_vertex = -1);

/// |(I - L L^+) - J_n (x) (1/n) I_s|_max.
double projector_check(const Tree& tree, const PinvResult& r);

/// Residual of M (I + D D^T) = I for M = I - J_{n-1} (x) (1/n) I_s and
/// D = 1_{n-1} (x) I_s; evaluates the closed-form inverse of M.
double m_inverse_check(int n, int s);

} // namespace mwtree
