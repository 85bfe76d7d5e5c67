#pragma once

#include "mwtree/tree.hpp"

#include <vector>

namespace mwtree {

/// Positive-scalar-weight tree, kept as an s=1 positive definite Tree.
/// origin_index records which weight diagonal it was induced from (-1 for a
/// standalone scalar tree).
struct ScalarTree {
    Tree tree;
    int origin_index = -1;
};

/// The s induced positive-weight trees of a triangular-class tree: the j-th
/// carries the j-th diagonal entries of every edge weight.
std::vector<ScalarTree> induce(const Tree& tree);

struct ScalarCharResult {
    enum class Kind { Vertex, Edge };
    Kind kind = Kind::Vertex;
    int vertex = -1;              // Vertex case
    int u = -1, v = -1;           // Edge case endpoints, u < v
    double gamma = 0.0;           // Edge case balance parameter in (0,1)
    double alg_connectivity = 0.0; // via the Perron-value route
    double lambda2 = 0.0;          // via the eigensolver, cross-check
};

/// Classical characteristic vertex/edge of a positive-weight tree via Perron
/// branches, with the algebraic connectivity computed both from Perron values
/// and as lambda_2 of the scalar Laplacian. The two routes must agree to 1e-6
/// or the call fails hard.
ScalarCharResult scalar_characteristic(const ScalarTree& st, double tie_tol = 1e-9);

/// lambda_2 of the scalar Laplacian.
double algebraic_connectivity(const ScalarTree& st);

struct TriangularEquivalence {
    double permutation_residual = 0.0;   // |L - P Ltilde P^T|_max, 0 by construction
    double induced_block_residual = 0.0; // diagonal blocks of Ltilde vs induced Laplacians
};

/// Entry-reindexing check for triangular-class Laplacians: the blocked matrix
/// over (diagonal index, vertex) ordering is an exact permutation of L, and its
/// diagonal blocks are exactly the induced scalar Laplacians.
TriangularEquivalence triangular_equivalence_check(const Tree& tree);

} // namespace mwtree
