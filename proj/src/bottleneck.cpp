#include "mwtree/bottleneck.hpp"

#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"

#include <algorithm>
#include <unordered_set>

namespace mwtree {

namespace {

void check_branch(const Tree& tree, int v, const Branch& b) {
    tree.require_vertex(v);
    if (b.base != v)
        throw BranchMismatch("branch is based at " + std::to_string(b.base) +
                             ", not at " + std::to_string(v));
    if (tree.edge_between(v, b.root) < 0)
        throw BranchMismatch("branch root " + std::to_string(b.root) +
                             " is not adjacent to " + std::to_string(v));
}

// Edge lists of the shared parts of the x->v and y->v paths, for all member
// pairs of the branch.
std::vector<std::vector<std::vector<int>>> common_path_edges(const Tree& tree, int v,
                                                             const Branch& b) {
    const int k = static_cast<int>(b.members.size());
    std::vector<std::vector<int>> paths(k);
    std::vector<std::unordered_set<int>> sets(k);
    for (int i = 0; i < k; ++i) {
        paths[i] = path_between(tree, b.members[i], v);
        sets[i].insert(paths[i].begin(), paths[i].end());
    }
    std::vector<std::vector<std::vector<int>>> common(k, std::vector<std::vector<int>>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            std::vector<int> shared;
            for (int e : paths[i])
                if (sets[j].count(e)) shared.push_back(e);
            common[i][j] = shared;
            if (i != j) common[j][i] = std::move(shared);
        }
    return common;
}

} // namespace

BottleneckMatrix bottleneck(const Tree& tree, int v, const Branch& b) {
    check_branch(tree, v, b);
    const std::vector<Matrix> winv = edge_inverses(tree);
    const auto common = common_path_edges(tree, v, b);
    const int k = static_cast<int>(b.members.size());

    BottleneckMatrix out{b, BlockMatrix(b.members, b.members, tree.block_size())};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Matrix sum(tree.block_size(), tree.block_size());
            for (int e : common[i][j]) sum += winv[e];
            out.data.set_block(i, j, sum);
        }
    return out;
}

Matrix scalar_bottleneck(const Tree& tree, int v, const Branch& b, int j) {
    check_branch(tree, v, b);
    if (j < 0 || j >= tree.block_size())
        throw Error("diagonal index " + std::to_string(j) + " out of range");
    const auto common = common_path_edges(tree, v, b);
    const int k = static_cast<int>(b.members.size());
    Matrix m(k, k);
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int e : common[x][y]) m(x, y) += 1.0 / tree.edge(e).w(j, j);
    return m;
}

double perron_value(const Tree& tree, int v, const Branch& b) {
    switch (tree.weight_class()) {
        case WeightClass::PositiveDefinite: {
            const BottleneckMatrix m = bottleneck(tree, v, b);
            return sym_eig(m.data.data()).eigenvalues.back();
        }
        case WeightClass::LowerTriangular:
        case WeightClass::UpperTriangular: {
            check_branch(tree, v, b);
            double rho = 0.0;
            for (int j = 0; j < tree.block_size(); ++j) {
                const Matrix m = scalar_bottleneck(tree, v, b, j);
                rho = std::max(rho, sym_eig(m).eigenvalues.back());
            }
            return rho;
        }
        case WeightClass::GeneralNonsingular:
            break;
    }
    throw ClassError("Perron values are defined for positive definite or triangular weights only");
}

PerronReport perron_report(const Tree& tree, int v, double tie_tol) {
    PerronReport rep;
    rep.vertex = v;
    rep.branches = branches_at(tree, v);
    for (const Branch& b : rep.branches)
        rep.values.push_back(perron_value(tree, v, b));
    rep.rho_max = *std::max_element(rep.values.begin(), rep.values.end());

    double best_outside = 0.0;
    for (int i = 0; i < static_cast<int>(rep.values.size()); ++i) {
        if (rep.rho_max - rep.values[i] <= tie_tol * rep.rho_max)
            rep.perron_indices.push_back(i);
        else
            best_outside = std::max(best_outside, rep.values[i]);
    }
    rep.runner_up_gap = rep.rho_max > 0.0 ? (rep.rho_max - best_outside) / rep.rho_max : 0.0;
    return rep;
}

} // namespace mwtree
