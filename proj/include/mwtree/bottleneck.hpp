#pragma once

#include "mwtree/block_matrix.hpp"
#include "mwtree/tree.hpp"

#include <vector>

namespace mwtree {

constexpr double kDefaultTieTol = 1e-9; // relative gap treated as a Perron tie

/// Bottleneck matrix of a branch: block (x,y) sums W(e)^-1 over the edges
/// shared by the x->base and y->base paths. It inverts the branch's principal
/// Laplacian block.
struct BottleneckMatrix {
    Branch branch;
    BlockMatrix data; // rows/cols are branch.members
};

BottleneckMatrix bottleneck(const Tree& tree, int v, const Branch& b);

/// Scalar bottleneck of the branch for the j-th induced positive-weight tree
/// (triangular classes): entries sum 1/w_jj(e) over the shared path edges.
Matrix scalar_bottleneck(const Tree& tree, int v, const Branch& b, int j);

/// Spectral radius of the branch's bottleneck matrix. Positive definite trees
/// use the symmetric eigensolver directly; triangular trees take the maximum
/// over the induced scalar bottlenecks, which carry the whole spectrum.
double perron_value(const Tree& tree, int v, const Branch& b);

struct PerronReport {
    int vertex = -1;
    std::vector<Branch> branches;     // ascending root id
    std::vector<double> values;       // Perron value per branch
    double rho_max = 0.0;
    std::vector<int> perron_indices;  // branches within tie_tol of rho_max
    double runner_up_gap = 0.0;       // relative gap to the best non-tied value
};

PerronReport perron_report(const Tree& tree, int v, double tie_tol = kDefaultTieTol);

} // namespace mwtree
