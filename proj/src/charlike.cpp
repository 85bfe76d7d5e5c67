#include "mwtree/charlike.hpp"

#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"
#include "mwtree/scalar_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mwtree {

namespace {

constexpr double kRankTol = 1e-8; // eigenvalues below this count as zero

void require_charlike_class(const Tree& tree) {
    if (tree.weight_class() == WeightClass::GeneralNonsingular)
        throw ClassError("characteristic-like analysis needs positive definite or triangular weights");
}

Branch branch_containing(const Tree& tree, int at, int other) {
    for (const Branch& b : branches_at(tree, at))
        if (std::binary_search(b.members.begin(), b.members.end(), other)) return b;
    throw Error("no branch at " + std::to_string(at) + " contains " + std::to_string(other));
}

// Principal Laplacian block over the given vertices; this is the exact inverse
// of the corresponding bottleneck matrix.
Matrix principal_laplacian_block(const Tree& tree, const std::vector<int>& members) {
    const BlockMatrix l = laplacian(tree);
    const int s = tree.block_size();
    Matrix out(static_cast<int>(members.size()) * s, static_cast<int>(members.size()) * s);
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
        for (int j = 0; j < static_cast<int>(members.size()); ++j)
            out.set_submatrix(i * s, j * s, l.block(members[i], members[j]));
    return out;
}

int member_position(const Branch& b, int vertex) {
    const auto it = std::lower_bound(b.members.begin(), b.members.end(), vertex);
    return static_cast<int>(it - b.members.begin());
}

// rho(M_u(v) - t J (x) W(e)^-1) as a function of t, reduced to symmetric
// eigenproblems per weight class.
std::function<double(double)> perturbed_rho(const Tree& tree, int at, const Branch& b,
                                            const Matrix& w_edge) {
    const int k = static_cast<int>(b.members.size());
    if (tree.weight_class() == WeightClass::PositiveDefinite) {
        const Matrix m = bottleneck(tree, at, b).data.data();
        Matrix winv = lu_inverse(w_edge).inverse;
        for (int i = 0; i < winv.rows(); ++i)
            for (int j = i + 1; j < winv.cols(); ++j) {
                const double a = 0.5 * (winv(i, j) + winv(j, i));
                winv(i, j) = winv(j, i) = a;
            }
        const Matrix jw = kron(Matrix::ones(k, k), winv);
        return [m, jw](double t) { return sym_eig(m - jw * t).eigenvalues.back(); };
    }
    std::vector<Matrix> scalars;
    std::vector<double> inv_diag;
    for (int j = 0; j < tree.block_size(); ++j) {
        scalars.push_back(scalar_bottleneck(tree, at, b, j));
        inv_diag.push_back(1.0 / w_edge(j, j));
    }
    const Matrix ones = Matrix::ones(k, k);
    return [scalars, inv_diag, ones](double t) {
        double rho = -1e300;
        for (size_t j = 0; j < scalars.size(); ++j)
            rho = std::max(rho, sym_eig(scalars[j] - ones * (t * inv_diag[j])).eigenvalues.back());
        return rho;
    };
}

} // namespace

CharLikeResult locate(const Tree& tree, double tie_tol, int start_vertex) {
    require_charlike_class(tree);
    tree.require_vertex(start_vertex);

    CharLikeResult res;
    if (tree.vertex_count() == 2) {
        // both singleton branches point at each other
        res.kind = CharLikeResult::Kind::Edge;
        res.u = 0;
        res.v = 1;
        res.walk_trace = {start_vertex};
        const NuSolution nu = solve_nu(tree, 0, 1);
        res.nu = nu.nu;
        res.nu_residual = nu.residual;
        return res;
    }

    int prev = -1;
    int cur = start_vertex;
    for (int step = 0; step <= tree.vertex_count(); ++step) {
        res.walk_trace.push_back(cur);
        const PerronReport rep = perron_report(tree, cur, tie_tol);
        if (rep.perron_indices.size() >= 2) {
            res.kind = CharLikeResult::Kind::Vertex;
            res.vertex = cur;
            res.tie_count = static_cast<int>(rep.perron_indices.size());
            return res;
        }
        const int next = rep.branches[rep.perron_indices.front()].root;
        if (next == prev) {
            res.kind = CharLikeResult::Kind::Edge;
            res.u = std::min(prev, cur);
            res.v = std::max(prev, cur);
            const NuSolution nu = solve_nu(tree, res.u, res.v);
            res.nu = nu.nu;
            res.nu_residual = nu.residual;
            return res;
        }
        prev = cur;
        cur = next;
    }

    std::ostringstream trace;
    for (int v : res.walk_trace) trace << " " << v;
    throw NonTermination("Perron walk exceeded " + std::to_string(tree.vertex_count() + 1) +
                         " steps; trace:" + trace.str());
}

Result2Report verify_result2(const Tree& tree, const CharLikeResult& r, double tie_tol) {
    const std::vector<int> home = r.char_vertices();
    Result2Report rep;
    for (int x = 0; x < tree.vertex_count(); ++x) {
        if (std::find(home.begin(), home.end(), x) != home.end()) continue;
        const PerronReport pr = perron_report(tree, x, tie_tol);
        Result2Entry entry;
        entry.vertex = x;
        entry.single_perron = pr.perron_indices.size() == 1;
        entry.points_to_char = true;
        const Branch& pb = pr.branches[pr.perron_indices.front()];
        for (int h : home)
            if (!std::binary_search(pb.members.begin(), pb.members.end(), h))
                entry.points_to_char = false;
        rep.all_pass = rep.all_pass && entry.pass();
        rep.entries.push_back(entry);
    }
    return rep;
}

NuSolution solve_nu(const Tree& tree, int u, int v) {
    require_charlike_class(tree);
    const int e = tree.edge_between(u, v);
    if (e < 0)
        throw Error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                    " are not adjacent");
    const Matrix& w = tree.edge(e).w;
    const auto f = perturbed_rho(tree, u, branch_containing(tree, u, v), w);
    const auto g_base = perturbed_rho(tree, v, branch_containing(tree, v, u), w);
    const auto g = [&](double t) { return g_base(1.0 - t); };

    if (f(0.0) <= g(0.0) || f(1.0) >= g(1.0))
        throw BracketError("(" + std::to_string(u) + "," + std::to_string(v) +
                           ") does not behave like a characteristic-like edge");

    double lo = 0.0, hi = 1.0, mid = 0.5;
    double fm = f(mid), gm = g(mid);
    while (hi - lo >= 1e-12 && std::fabs(fm - gm) >= 1e-10 * std::max(fm, gm)) {
        if (fm > gm)
            lo = mid;
        else
            hi = mid;
        mid = 0.5 * (lo + hi);
        fm = f(mid);
        gm = g(mid);
    }
    return {mid, fm, std::fabs(fm - gm)};
}

double kappa(const Tree& tree, double tie_tol) {
    const CharLikeResult r = locate(tree, tie_tol);
    if (r.kind == CharLikeResult::Kind::Vertex)
        return 1.0 / perron_report(tree, r.vertex, tie_tol).rho_max;
    return 1.0 / solve_nu(tree, r.u, r.v).value;
}

double mu(const Tree& tree) {
    require_charlike_class(tree);
    const int s = tree.block_size();
    if (tree.weight_class() == WeightClass::PositiveDefinite) {
        const Spectrum sp = sym_eig(laplacian(tree).data());
        if (std::fabs(sp.eigenvalues[s - 1]) >= kRankTol)
            throw RankAnomaly("expected " + std::to_string(s) + " zero eigenvalues, got lambda_" +
                              std::to_string(s) + " = " + std::to_string(sp.eigenvalues[s - 1]));
        if (sp.eigenvalues[s] < kRankTol)
            throw RankAnomaly("first nonzero eigenvalue " + std::to_string(sp.eigenvalues[s]) +
                              " is below the rank gate");
        return sp.eigenvalues[s];
    }
    double best = 1e300;
    for (const ScalarTree& st : induce(tree))
        best = std::min(best, algebraic_connectivity(st));
    if (best < kRankTol)
        throw RankAnomaly("induced algebraic connectivity " + std::to_string(best) +
                          " is below the rank gate");
    return best;
}

SpectralReport bound_report(const Tree& tree, double tie_tol, int start_vertex) {
    SpectralReport rep;
    rep.charlike = locate(tree, tie_tol, start_vertex);
    if (rep.charlike.kind == CharLikeResult::Kind::Vertex)
        rep.kappa = 1.0 / perron_report(tree, rep.charlike.vertex, tie_tol).rho_max;
    else
        rep.kappa = 1.0 / solve_nu(tree, rep.charlike.u, rep.charlike.v).value;
    rep.mu = mu(tree);
    rep.bound_holds = rep.kappa <= rep.mu + 1e-9;
    for (int v = 0; v < tree.vertex_count(); ++v)
        rep.per_vertex.push_back(perron_report(tree, v, tie_tol));
    return rep;
}

double rank_one_grounding_identity(const Tree& tree, int u, int v, double alpha) {
    const int e = tree.edge_between(u, v);
    if (e < 0)
        throw Error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                    " are not adjacent");
    const Branch b = branch_containing(tree, u, v);
    const int k = static_cast<int>(b.members.size());
    const int s = tree.block_size();

    const Matrix m = bottleneck(tree, u, b).data.data();
    const Matrix winv = edge_inverses(tree)[e];
    const Matrix lhs = m - kron(Matrix::ones(k, k), winv) * alpha;

    Matrix rhs = principal_laplacian_block(tree, b.members);
    const int pv = member_position(b, v);
    rhs.add_submatrix(pv * s, pv * s, tree.edge(e).w * (alpha / (1.0 - alpha)));

    return max_abs_diff(lhs * rhs, Matrix::identity(k * s));
}

Matrix split_perturbed_laplacian(const Tree& tree, int u, int v, double alpha) {
    const int e = tree.edge_between(u, v);
    if (e < 0)
        throw Error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                    " are not adjacent");
    Matrix scaffold(tree.vertex_count(), tree.vertex_count());
    scaffold(u, u) = (1.0 - alpha) / alpha;
    scaffold(v, v) = alpha / (1.0 - alpha);
    scaffold(u, v) = scaffold(v, u) = 1.0;
    return laplacian(tree).data() + kron(scaffold, tree.edge(e).w);
}

double split_identity_check(const Tree& tree, int u, int v, double alpha) {
    const int e = tree.edge_between(u, v);
    if (e < 0)
        throw Error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                    " are not adjacent");
    const int s = tree.block_size();
    const Branch bu = branch_containing(tree, u, v);
    const Branch bv = branch_containing(tree, v, u);

    Matrix inv1 = principal_laplacian_block(tree, bu.members);
    inv1.add_submatrix(member_position(bu, v) * s, member_position(bu, v) * s,
                       tree.edge(e).w * (alpha / (1.0 - alpha)));
    Matrix inv2 = principal_laplacian_block(tree, bv.members);
    inv2.add_submatrix(member_position(bv, u) * s, member_position(bv, u) * s,
                       tree.edge(e).w * ((1.0 - alpha) / alpha));

    const int k1 = static_cast<int>(bu.members.size());
    Matrix rhs(tree.vertex_count() * s, tree.vertex_count() * s);
    rhs.set_submatrix(0, 0, inv1);
    rhs.set_submatrix(k1 * s, k1 * s, inv2);

    // permute L + E (x) W into the [B_u(v) members, B_v(u) members] order
    std::vector<int> order = bu.members;
    order.insert(order.end(), bv.members.begin(), bv.members.end());
    const Matrix full = split_perturbed_laplacian(tree, u, v, alpha);
    Matrix lhs(tree.vertex_count() * s, tree.vertex_count() * s);
    for (int i = 0; i < tree.vertex_count(); ++i)
        for (int j = 0; j < tree.vertex_count(); ++j)
            lhs.set_submatrix(i * s, j * s, full.submatrix(order[i] * s, order[j] * s, s, s));

    return max_abs_diff(lhs, rhs);
}

} // namespace mwtree
