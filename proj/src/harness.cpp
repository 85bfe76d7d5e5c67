#include "mwtree/harness.hpp"

#include "mwtree/charlike.hpp"
#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"
#include "mwtree/pseudoinverse.hpp"
#include "mwtree/random_trees.hpp"
#include "mwtree/scalar_tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mwtree {

void InvariantResult::record(bool ok, double measure, std::uint64_t seed, std::uint64_t trial) {
    ++trials;
    worst = std::max(worst, measure);
    if (!ok) {
        ++failures;
        if (note.empty())
            note = "first failure at seed=" + std::to_string(seed) +
                   " trial=" + std::to_string(trial) + " (measure " + std::to_string(measure) + ")";
    }
}

namespace {

struct TrialShape {
    int n;
    int s;
};

TrialShape draw_shape(std::mt19937_64& rng, int n_max, int s_max) {
    std::uniform_int_distribution<int> nd(2, n_max);
    std::uniform_int_distribution<int> sd(1, s_max);
    return {nd(rng), sd(rng)};
}

std::set<int> char_set(const CharLikeResult& r) {
    const auto v = r.char_vertices();
    return std::set<int>(v.begin(), v.end());
}

} // namespace

std::vector<InvariantResult> oracle_suite(std::uint64_t seed, int trials, int n_max, int s_max) {
    InvariantResult inv_vs_lu{"analytic_grounded_inverse_matches_lu"};
    InvariantResult det_prod{"grounded_det_matches_weight_product"};
    InvariantResult qqt{"incidence_factorizes_laplacian"};
    InvariantResult pvqv{"path_matrix_inverts_grounded_incidence"};

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        const TrialShape shape = draw_shape(rng, n_max, s_max);
        const Tree tree = random_tree(rng, shape.n, shape.s, WeightClass::PositiveDefinite);
        std::uniform_int_distribution<int> vd(0, shape.n - 1);
        const int v = vd(rng);

        const BlockMatrix g = grounded(tree, v);
        const BlockMatrix m = grounded_inverse_analytic(tree, v);
        const double gap = max_abs_diff(m.data(), lu_inverse(g.data()).inverse);
        inv_vs_lu.record(gap < 1e-8, gap, seed, t);

        double prod = 1.0;
        for (const Edge& e : tree.edges()) prod *= lu_det(e.w);
        const double rel = std::fabs(grounded_det(tree, v) - prod) / std::fabs(prod);
        det_prod.record(rel < 1e-8, rel, seed, t);

        const BlockMatrix q = incidence(tree);
        const double qres = max_abs_diff(q.data() * q.data().transposed(), laplacian(tree).data());
        qqt.record(qres < 1e-8, qres, seed, t);

        // incidence with v's row block removed, natural vertex order
        const int s = tree.block_size();
        const int mcols = static_cast<int>(tree.edges().size());
        Matrix qv((shape.n - 1) * s, mcols * s);
        int row = 0;
        for (int x = 0; x < shape.n; ++x) {
            if (x == v) continue;
            qv.set_submatrix(row * s, 0, q.data().submatrix(x * s, 0, s, mcols * s));
            ++row;
        }
        const Matrix prod_pq = path_matrix(tree, v).data() * qv;
        const double pres = max_abs_diff(prod_pq, Matrix::identity(mcols * s));
        pvqv.record(pres < 1e-8, pres, seed, t);
    }
    return {inv_vs_lu, det_prod, qqt, pvqv};
}

std::vector<InvariantResult> charlike_suite(WeightClass cls, std::uint64_t seed, int trials,
                                            int n_max, int s_max, double tie_tol) {
    const std::string tag = to_string(cls) + ".";
    InvariantResult terminates{tag + "locate_terminates"};
    InvariantResult start_inv{tag + "locate_start_invariant"};
    InvariantResult result2{tag + "unique_perron_branch_contains_char_set"};
    InvariantResult bound{tag + "kappa_within_mu_bound"};
    InvariantResult monotone{tag + "nested_branch_perron_monotone"};
    InvariantResult subtree{tag + "char_set_in_minimal_induced_subtree"};
    InvariantResult reindex{tag + "laplacian_reindex_residual_zero"};
    InvariantResult blocks{tag + "bottleneck_reindex_blocks_exact"};

    const bool triangular = cls != WeightClass::PositiveDefinite;
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        const TrialShape shape = draw_shape(rng, n_max, s_max);
        const Tree tree = random_tree(rng, shape.n, shape.s, cls);

        CharLikeResult r;
        try {
            r = locate(tree, tie_tol);
            terminates.record(true, 0.0, seed, t);
        } catch (const NonTermination&) {
            terminates.record(false, 1.0, seed, t);
            continue;
        }

        bool same = true;
        for (int start = 0; start < shape.n; ++start)
            same = same && char_set(locate(tree, tie_tol, start)) == char_set(r);
        start_inv.record(same, same ? 0.0 : 1.0, seed, t);

        const Result2Report r2 = verify_result2(tree, r, tie_tol);
        result2.record(r2.all_pass, r2.all_pass ? 0.0 : 1.0, seed, t);

        const double k = kappa(tree, tie_tol);
        const double m = mu(tree);
        bound.record(k <= m + 1e-9, k - m, seed, t);

        // Perron values must not grow while walking toward w
        std::uniform_int_distribution<int> vd(0, shape.n - 1);
        const int a = vd(rng);
        int w = vd(rng);
        if (w == a) w = (w + 1) % shape.n;
        double prev_rho = -1.0;
        bool mono = true;
        double worst_step = 0.0;
        int x = a;
        while (x != w) {
            const double rho = perron_value(tree, x, [&] {
                for (const Branch& b : branches_at(tree, x))
                    if (std::binary_search(b.members.begin(), b.members.end(), w)) return b;
                throw Error("unreachable");
            }());
            if (prev_rho >= 0.0) {
                worst_step = std::max(worst_step, rho - prev_rho);
                mono = mono && rho <= prev_rho + 1e-9;
            }
            prev_rho = rho;
            const std::vector<int> path = path_between(tree, x, w);
            x = tree.opposite(path.front(), x);
        }
        monotone.record(mono, worst_step, seed, t);

        if (triangular) {
            std::vector<int> anchors;
            for (const ScalarTree& st : induce(tree)) {
                const ScalarCharResult sc = scalar_characteristic(st, tie_tol);
                if (sc.kind == ScalarCharResult::Kind::Vertex) {
                    anchors.push_back(sc.vertex);
                } else {
                    anchors.push_back(sc.u);
                    anchors.push_back(sc.v);
                }
            }
            const std::vector<int> hull = spanning_subtree_vertices(tree, anchors);
            bool inside = true;
            for (int h : r.char_vertices())
                inside = inside && std::binary_search(hull.begin(), hull.end(), h);
            subtree.record(inside, inside ? 0.0 : 1.0, seed, t);

            const TriangularEquivalence eq = triangular_equivalence_check(tree);
            const double res = std::max(eq.permutation_residual, eq.induced_block_residual);
            reindex.record(res == 0.0, res, seed, t);

            // the reindexed bottleneck must carry the scalar bottlenecks as its
            // diagonal blocks, entry for entry
            const int v = vd(rng);
            const Branch b = branches_at(tree, v).front();
            const Matrix full = bottleneck(tree, v, b).data.data();
            const int kk = static_cast<int>(b.members.size());
            double bres = 0.0;
            for (int j = 0; j < shape.s; ++j) {
                const Matrix scal = scalar_bottleneck(tree, v, b, j);
                for (int p = 0; p < kk; ++p)
                    for (int q = 0; q < kk; ++q)
                        bres = std::max(bres,
                                        std::fabs(full(p * shape.s + j, q * shape.s + j) - scal(p, q)));
            }
            blocks.record(bres == 0.0, bres, seed, t);
        }
    }

    std::vector<InvariantResult> out{terminates, start_inv, result2, bound, monotone};
    if (triangular) {
        out.push_back(subtree);
        out.push_back(reindex);
        out.push_back(blocks);
    }
    return out;
}

std::vector<InvariantResult> pinv_suite(const std::vector<WeightClass>& classes,
                                        std::uint64_t seed, int trials, int n_max, int s_max) {
    InvariantResult penrose{"penrose_conditions"};
    InvariantResult projector{"projector_identity"};
    InvariantResult sums{"pinv_zero_block_sums"};
    InvariantResult invariance{"pinv_grounding_invariance"};

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        const TrialShape shape = draw_shape(rng, n_max, s_max);
        const Tree tree = random_tree(rng, shape.n, shape.s, classes[t % classes.size()]);

        PinvResult r;
        try {
            r = pinv(tree);
            const double worst = *std::max_element(r.penrose_residuals.begin(),
                                                   r.penrose_residuals.end());
            penrose.record(true, worst, seed, t);
        } catch (const PenroseFailure&) {
            penrose.record(false, 1.0, seed, t);
            continue;
        }

        const double proj = projector_check(tree, r);
        projector.record(proj < 1e-8, proj, seed, t);

        const int s = tree.block_size();
        double worst_sum = 0.0;
        for (int i = 0; i < shape.n; ++i) {
            Matrix row_sum(s, s), col_sum(s, s);
            for (int j = 0; j < shape.n; ++j) {
                row_sum += r.pinv.block(i, j);
                col_sum += r.pinv.block(j, i);
            }
            worst_sum = std::max({worst_sum, row_sum.max_abs(), col_sum.max_abs()});
        }
        sums.record(worst_sum < 1e-9, worst_sum, seed, t);

        const double gap = max_abs_diff(r.pinv.data(), pinv(tree, 0).pinv.data());
        invariance.record(gap < 1e-8, gap, seed, t);
    }
    return {penrose, projector, sums, invariance};
}

std::vector<InvariantResult> identity_suite(const std::vector<WeightClass>& classes,
                                            std::uint64_t seed, int trials, int n_max, int s_max) {
    InvariantResult rank_one{"rank_one_grounding_inverse"};
    InvariantResult split{"split_block_identity"};
    InvariantResult lam_min{"split_lambda_min_equals_kappa"};

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        const TrialShape shape = draw_shape(rng, n_max, s_max);
        const WeightClass cls = classes[t % classes.size()];
        const Tree tree = random_tree(rng, shape.n, shape.s, cls);

        std::uniform_int_distribution<int> ed(0, static_cast<int>(tree.edges().size()) - 1);
        const Edge& e = tree.edge(ed(rng));

        double worst = 0.0;
        for (double alpha : {0.25, 0.5, 0.75})
            worst = std::max(worst, rank_one_grounding_identity(tree, e.u, e.v, alpha));
        rank_one.record(worst < 1e-8, worst, seed, t);

        std::uniform_real_distribution<double> ad(0.1, 0.9);
        const double alpha = ad(rng);
        const double sres = split_identity_check(tree, e.u, e.v, alpha);
        split.record(sres < 1e-8, sres, seed, t);

        if (cls == WeightClass::PositiveDefinite) {
            const CharLikeResult r = locate(tree);
            if (r.kind == CharLikeResult::Kind::Edge) {
                const Matrix assembled = split_perturbed_laplacian(tree, r.u, r.v, r.nu);
                const double lmin = sym_eig(assembled).eigenvalues.front();
                const double k = 1.0 / solve_nu(tree, r.u, r.v).value;
                const double gap = std::fabs(lmin - k);
                lam_min.record(gap < 1e-6, gap, seed, t);
            }
        }
    }
    return {rank_one, split, lam_min};
}

std::vector<InvariantResult> scalar_degeneration_suite(std::uint64_t seed, int trials, int n_max) {
    InvariantResult agree{"scalar_locate_agreement"};
    InvariantResult equal{"scalar_kappa_equals_mu"};

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        std::uniform_int_distribution<int> nd(2, n_max);
        const Tree tree = random_tree(rng, nd(rng), 1, WeightClass::PositiveDefinite);

        const CharLikeResult r = locate(tree);
        const ScalarCharResult sc = scalar_characteristic({tree, -1});
        bool same = false;
        if (r.kind == CharLikeResult::Kind::Vertex)
            same = sc.kind == ScalarCharResult::Kind::Vertex && sc.vertex == r.vertex;
        else
            same = sc.kind == ScalarCharResult::Kind::Edge && sc.u == r.u && sc.v == r.v;
        agree.record(same, same ? 0.0 : 1.0, seed, t);

        const double gap = std::fabs(kappa(tree) - mu(tree));
        equal.record(gap < 1e-7, gap, seed, t);
    }
    return {agree, equal};
}

std::vector<InvariantResult> run_property_harness(const HarnessConfig& cfg) {
    std::vector<InvariantResult> out;
    auto append = [&out](std::vector<InvariantResult> rows) {
        out.insert(out.end(), rows.begin(), rows.end());
    };
    const bool all = cfg.class_filter == "all";

    if (all || cfg.class_filter == "pd") {
        append(oracle_suite(cfg.seed, cfg.trials, cfg.n_max, cfg.s_max));
        append(charlike_suite(WeightClass::PositiveDefinite, cfg.seed, cfg.trials, cfg.n_max,
                              cfg.s_max, cfg.tie_tol));
        append(scalar_degeneration_suite(cfg.seed, cfg.trials, cfg.n_max));
    }
    if (all || cfg.class_filter == "lower")
        append(charlike_suite(WeightClass::LowerTriangular, cfg.seed, cfg.trials, cfg.n_max,
                              cfg.s_max, cfg.tie_tol));
    if (all || cfg.class_filter == "upper")
        append(charlike_suite(WeightClass::UpperTriangular, cfg.seed, cfg.trials, cfg.n_max,
                              cfg.s_max, cfg.tie_tol));

    std::vector<WeightClass> pinv_classes;
    if (all)
        pinv_classes = {WeightClass::PositiveDefinite, WeightClass::LowerTriangular,
                        WeightClass::GeneralNonsingular, WeightClass::UpperTriangular};
    else
        pinv_classes = {weight_class_from_string(cfg.class_filter)};
    append(pinv_suite(pinv_classes, cfg.seed, cfg.trials, cfg.n_max, cfg.s_max));

    std::vector<WeightClass> id_classes;
    if (all)
        id_classes = {WeightClass::PositiveDefinite, WeightClass::GeneralNonsingular};
    else
        id_classes = {weight_class_from_string(cfg.class_filter)};
    append(identity_suite(id_classes, cfg.seed, cfg.trials, cfg.n_max, cfg.s_max));

    return out;
}

} // namespace mwtree
