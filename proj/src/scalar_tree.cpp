#include "mwtree/scalar_tree.hpp"

#include "mwtree/bottleneck.hpp"
#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"

#include <algorithm>
#include <cmath>

namespace mwtree {

namespace {

bool is_triangular(const Tree& t) {
    return t.weight_class() == WeightClass::LowerTriangular ||
           t.weight_class() == WeightClass::UpperTriangular;
}

// lambda_max of M - c J for a scalar bottleneck M.
double shifted_rho(const Matrix& m, double c) {
    Matrix shifted = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) shifted(i, j) -= c;
    return sym_eig(shifted).eigenvalues.back();
}

} // namespace

std::vector<ScalarTree> induce(const Tree& tree) {
    if (!is_triangular(tree))
        throw ClassError("induced scalar trees need triangular weights");
    std::vector<ScalarTree> out;
    for (int j = 0; j < tree.block_size(); ++j) {
        std::vector<Edge> edges;
        for (const Edge& e : tree.edges()) {
            Matrix w(1, 1);
            w(0, 0) = e.w(j, j);
            edges.push_back({e.u, e.v, w});
        }
        out.push_back({Tree(1, std::move(edges), WeightClass::PositiveDefinite,
                            tree.labels()),
                       j});
    }
    return out;
}

double algebraic_connectivity(const ScalarTree& st) {
    const Spectrum sp = sym_eig(laplacian(st.tree).data());
    return sp.eigenvalues[1];
}

ScalarCharResult scalar_characteristic(const ScalarTree& st, double tie_tol) {
    const Tree& t = st.tree;
    ScalarCharResult res;

    // Perron-branch walk: either some vertex ties, or two neighbours point at
    // each other.
    int prev = -1;
    int cur = 0;
    int vertex = -1, eu = -1, ev = -1;
    for (int step = 0; step <= t.vertex_count(); ++step) {
        const PerronReport rep = perron_report(t, cur, tie_tol);
        if (rep.perron_indices.size() >= 2) {
            vertex = cur;
            break;
        }
        const int next = rep.branches[rep.perron_indices.front()].root;
        if (next == prev) {
            eu = std::min(prev, cur);
            ev = std::max(prev, cur);
            break;
        }
        prev = cur;
        cur = next;
    }
    if (vertex < 0 && eu < 0)
        throw NonTermination("scalar Perron walk did not settle");

    if (vertex >= 0) {
        res.kind = ScalarCharResult::Kind::Vertex;
        res.vertex = vertex;
        const PerronReport rep = perron_report(t, vertex, tie_tol);
        res.alg_connectivity = 1.0 / rep.rho_max;
    } else {
        res.kind = ScalarCharResult::Kind::Edge;
        res.u = eu;
        res.v = ev;
        const int e = t.edge_between(eu, ev);
        const double theta = t.edge(e).w(0, 0);

        auto branch_containing = [&](int at, int other) {
            for (const Branch& b : branches_at(t, at))
                if (std::binary_search(b.members.begin(), b.members.end(), other)) return b;
            throw Error("branch lookup failed");
        };
        const Matrix mu_v = scalar_bottleneck(t, eu, branch_containing(eu, ev), 0);
        const Matrix mv_u = scalar_bottleneck(t, ev, branch_containing(ev, eu), 0);

        auto f = [&](double g) { return shifted_rho(mu_v, g / theta); };
        auto g = [&](double gg) { return shifted_rho(mv_u, (1.0 - gg) / theta); };
        if (f(0.0) <= g(0.0) || f(1.0) >= g(1.0))
            throw BracketError("edge does not bracket the balance parameter");

        double lo = 0.0, hi = 1.0, mid = 0.5;
        while (hi - lo >= 1e-12) {
            mid = 0.5 * (lo + hi);
            const double fm = f(mid), gm = g(mid);
            if (std::fabs(fm - gm) < 1e-10 * std::max(fm, gm)) break;
            if (fm > gm)
                lo = mid;
            else
                hi = mid;
        }
        res.gamma = mid;
        res.alg_connectivity = 1.0 / f(mid);
    }

    res.lambda2 = algebraic_connectivity(st);
    if (std::fabs(res.alg_connectivity - res.lambda2) > 1e-6)
        throw Error("Perron-value connectivity " + std::to_string(res.alg_connectivity) +
                    " disagrees with lambda_2 " + std::to_string(res.lambda2));
    return res;
}

TriangularEquivalence triangular_equivalence_check(const Tree& tree) {
    if (!is_triangular(tree))
        throw ClassError("equivalence check needs triangular weights");
    const int n = tree.vertex_count();
    const int s = tree.block_size();
    const Matrix l = laplacian(tree).data();

    // Ltilde has s x s blocks of n x n: entry (l,k)(i,j) = L(i,j)(l,k).
    Matrix lt(n * s, n * s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b)
                    lt(a * n + i, b * n + j) = l(i * s + a, j * s + b);

    const Matrix p = vec_permutation(n, s);
    TriangularEquivalence out;
    out.permutation_residual = max_abs_diff(l, p * lt * p.transposed());

    const std::vector<ScalarTree> induced = induce(tree);
    for (int j = 0; j < s; ++j) {
        const Matrix lj = laplacian(induced[j].tree).data();
        const Matrix diag = lt.submatrix(j * n, j * n, n, n);
        out.induced_block_residual = std::max(out.induced_block_residual, max_abs_diff(lj, diag));
    }
    return out;
}

} // namespace mwtree
