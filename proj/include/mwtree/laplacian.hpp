#pragma once

#include "mwtree/block_matrix.hpp"
#include "mwtree/tree.hpp"

#include <vector>

namespace mwtree {

/// Block Laplacian: diagonal block (v,v) is the sum of weights incident to v,
/// off-diagonal block (u,v) is -W(e) when u and v are joined by e, else zero.
BlockMatrix laplacian(const Tree& tree);

/// Per-edge inverse weights. Triangular classes are inverted by substitution so
/// the zero triangle and the reciprocal diagonal stay exact; positive definite
/// inverses are symmetrized.
std::vector<Matrix> edge_inverses(const Tree& tree);

/// Vertex order used for grounded matrices: branch after branch (ascending root
/// id), members ascending inside each branch. Makes the block-diagonal branch
/// structure contiguous.
std::vector<int> grounded_vertex_order(const Tree& tree, int v);

/// Principal submatrix of the Laplacian with v's block row/column deleted,
/// under grounded_vertex_order.
BlockMatrix grounded(const Tree& tree, int v);

/// LU determinant of grounded(tree, v); equals the product of the edge weight
/// determinants independently of v.
double grounded_det(const Tree& tree, int v);

/// Closed-form inverse of the grounded Laplacian: block (u,w) is the sum of
/// W(e)^-1 over the edges shared by the u->v and w->v paths. Same ordering as
/// grounded(tree, v).
BlockMatrix grounded_inverse_analytic(const Tree& tree, int v);

/// Vertex-edge incidence with edges oriented low id -> high id and blocks
/// +-sqrt(W(e)); satisfies Q Q^T = L. Positive definite trees only.
BlockMatrix incidence(const Tree& tree);

/// Path matrix: rows indexed by edges, columns by vertices other than v; the
/// column for u is the incidence vector of the u->v path with blocks
/// +-sqrt(W(e))^-1. Inverts the incidence matrix with v's row block deleted.
BlockMatrix path_matrix(const Tree& tree, int v);

} // namespace mwtree
