#include "mwtree/laplacian.hpp"

#include "mwtree/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace mwtree {

BlockMatrix laplacian(const Tree& tree) {
    const int n = tree.vertex_count();
    std::vector<int> ids(n);
    for (int v = 0; v < n; ++v) ids[v] = v;
    BlockMatrix l(ids, ids, tree.block_size());
    for (const Edge& e : tree.edges()) {
        l.add_block(e.u, e.u, e.w);
        l.add_block(e.v, e.v, e.w);
        l.add_block(e.u, e.v, e.w * -1.0);
        l.add_block(e.v, e.u, e.w * -1.0);
    }
    return l;
}

std::vector<Matrix> edge_inverses(const Tree& tree) {
    std::vector<Matrix> inv;
    inv.reserve(tree.edges().size());
    for (const Edge& e : tree.edges()) {
        switch (tree.weight_class()) {
            case WeightClass::LowerTriangular:
                inv.push_back(triangular_inverse(e.w, true));
                break;
            case WeightClass::UpperTriangular:
                inv.push_back(triangular_inverse(e.w, false));
                break;
            case WeightClass::PositiveDefinite: {
                Matrix m = lu_inverse(e.w).inverse;
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = i + 1; j < m.cols(); ++j) {
                        const double a = 0.5 * (m(i, j) + m(j, i));
                        m(i, j) = m(j, i) = a;
                    }
                inv.push_back(std::move(m));
                break;
            }
            case WeightClass::GeneralNonsingular:
                inv.push_back(lu_inverse(e.w).inverse);
                break;
        }
    }
    return inv;
}

std::vector<int> grounded_vertex_order(const Tree& tree, int v) {
    std::vector<int> order;
    for (const Branch& b : branches_at(tree, v))
        order.insert(order.end(), b.members.begin(), b.members.end());
    return order;
}

BlockMatrix grounded(const Tree& tree, int v) {
    const BlockMatrix l = laplacian(tree);
    const std::vector<int> order = grounded_vertex_order(tree, v);
    BlockMatrix g(order, order, tree.block_size());
    for (int i = 0; i < g.block_rows(); ++i)
        for (int j = 0; j < g.block_cols(); ++j)
            g.set_block(i, j, l.block(order[i], order[j]));
    return g;
}

double grounded_det(const Tree& tree, int v) {
    return lu_det(grounded(tree, v).data());
}

BlockMatrix grounded_inverse_analytic(const Tree& tree, int v) {
    tree.require_vertex(v);
    const std::vector<Matrix> winv = edge_inverses(tree);
    const std::vector<int> order = grounded_vertex_order(tree, v);
    const int k = static_cast<int>(order.size());

    std::vector<std::vector<int>> paths(k);
    std::vector<std::unordered_set<int>> path_sets(k);
    for (int i = 0; i < k; ++i) {
        paths[i] = path_between(tree, order[i], v);
        path_sets[i].insert(paths[i].begin(), paths[i].end());
    }

    BlockMatrix m(order, order, tree.block_size());
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            Matrix sum(tree.block_size(), tree.block_size());
            bool any = false;
            for (int e : paths[i])
                if (path_sets[j].count(e)) {
                    sum += winv[e];
                    any = true;
                }
            if (!any) continue;
            m.set_block(i, j, sum);
            if (i != j) m.set_block(j, i, sum);
        }
    }
    return m;
}

BlockMatrix incidence(const Tree& tree) {
    if (tree.weight_class() != WeightClass::PositiveDefinite)
        throw ClassError("incidence matrix needs positive definite weights");
    const int n = tree.vertex_count();
    const int m = static_cast<int>(tree.edges().size());
    std::vector<int> vids(n), eids(m);
    for (int i = 0; i < n; ++i) vids[i] = i;
    for (int e = 0; e < m; ++e) eids[e] = e;
    BlockMatrix q(vids, eids, tree.block_size());
    for (int e = 0; e < m; ++e) {
        const Edge& ed = tree.edge(e);
        const Matrix root = sqrt_pd(ed.w);
        const int initial = std::min(ed.u, ed.v);
        const int terminal = std::max(ed.u, ed.v);
        q.set_block(initial, e, root);
        q.set_block(terminal, e, root * -1.0);
    }
    return q;
}

BlockMatrix path_matrix(const Tree& tree, int v) {
    if (tree.weight_class() != WeightClass::PositiveDefinite)
        throw ClassError("path matrix needs positive definite weights");
    tree.require_vertex(v);
    const int m = static_cast<int>(tree.edges().size());

    std::vector<Matrix> root_inv(m);
    for (int e = 0; e < m; ++e)
        root_inv[e] = lu_inverse(sqrt_pd(tree.edge(e).w)).inverse;

    std::vector<int> eids(m), uids;
    for (int e = 0; e < m; ++e) eids[e] = e;
    for (int u = 0; u < tree.vertex_count(); ++u)
        if (u != v) uids.push_back(u);

    BlockMatrix p(eids, uids, tree.block_size());
    for (int col = 0; col < static_cast<int>(uids.size()); ++col) {
        int x = uids[col];
        for (int e : path_between(tree, uids[col], v)) {
            const Edge& ed = tree.edge(e);
            // the traversal agrees with the low -> high orientation iff it
            // leaves the lower endpoint
            const bool agrees = (x == std::min(ed.u, ed.v));
            p.set_block(e, col, agrees ? root_inv[e] : root_inv[e] * -1.0);
            x = tree.opposite(e, x);
        }
    }
    return p;
}

} // namespace mwtree
