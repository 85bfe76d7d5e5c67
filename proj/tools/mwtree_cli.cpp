#include "mwtree/charlike.hpp"
#include "mwtree/errors.hpp"
#include "mwtree/harness.hpp"
#include "mwtree/laplacian.hpp"
#include "mwtree/pseudoinverse.hpp"
#include "mwtree/scalar_tree.hpp"
#include "mwtree/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace mwtree;
using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json charlike_to_json(const Tree& tree, const CharLikeResult& r) {
    json j;
    if (r.kind == CharLikeResult::Kind::Vertex) {
        j["kind"] = "vertex";
        j["vertex"] = tree.label(r.vertex);
        j["tie_count"] = r.tie_count;
    } else {
        j["kind"] = "edge";
        j["u"] = tree.label(r.u);
        j["v"] = tree.label(r.v);
        j["nu"] = r.nu;
        j["nu_residual"] = r.nu_residual;
    }
    json trace = json::array();
    for (int v : r.walk_trace) trace.push_back(tree.label(v));
    j["walk_trace"] = trace;
    return j;
}

json report_to_json(const Tree& tree, const SpectralReport& rep) {
    json j;
    j["charlike"] = charlike_to_json(tree, rep.charlike);
    j["kappa"] = rep.kappa;
    j["mu"] = rep.mu;
    j["bound_holds"] = rep.bound_holds;
    json pv = json::array();
    for (const PerronReport& pr : rep.per_vertex) {
        json entry;
        entry["vertex"] = tree.label(pr.vertex);
        json branches = json::array();
        for (size_t i = 0; i < pr.branches.size(); ++i)
            branches.push_back({{"root", tree.label(pr.branches[i].root)},
                                {"size", pr.branches[i].members.size()},
                                {"perron_value", pr.values[i]}});
        entry["branches"] = branches;
        entry["rho_max"] = pr.rho_max;
        json perron = json::array();
        for (int idx : pr.perron_indices) perron.push_back(tree.label(pr.branches[idx].root));
        entry["perron_branch_roots"] = perron;
        pv.push_back(entry);
    }
    j["per_vertex"] = pv;
    return j;
}

void print_charlike(const Tree& tree, const CharLikeResult& r) {
    if (r.kind == CharLikeResult::Kind::Vertex)
        std::cout << "characteristic-like vertex " << tree.label(r.vertex)
                  << " (" << r.tie_count << " tied Perron branches)\n";
    else
        std::cout << "characteristic-like edge (" << tree.label(r.u) << ", " << tree.label(r.v)
                  << ") with nu = " << std::setprecision(10) << r.nu << "\n";
    std::cout << "walk:";
    for (int v : r.walk_trace) std::cout << " " << tree.label(v);
    std::cout << "\n";
}

void print_report(const Tree& tree, const SpectralReport& rep) {
    print_charlike(tree, rep.charlike);
    std::cout << std::setprecision(10);
    std::cout << "kappa = " << rep.kappa << "\n";
    std::cout << "mu    = " << rep.mu << "\n";
    std::cout << "bound kappa <= mu: " << (rep.bound_holds ? "holds" : "VIOLATED") << "\n\n";

    std::cout << std::left << std::setw(8) << "vertex" << std::setw(12) << "rho_max"
              << "perron values per branch (root:value)\n";
    for (const PerronReport& pr : rep.per_vertex) {
        std::cout << std::setw(8) << tree.label(pr.vertex) << std::setw(12)
                  << std::setprecision(7) << pr.rho_max;
        for (size_t i = 0; i < pr.branches.size(); ++i)
            std::cout << " " << tree.label(pr.branches[i].root) << ":" << pr.values[i];
        std::cout << "\n";
    }
}

void emit(const json& j, const std::string& out_path, bool to_stdout) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write \"" + out_path + "\"");
        out << j.dump(2) << "\n";
    }
    if (to_stdout) std::cout << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of trees with matrix edge weights"};
    app.require_subcommand(1);

    std::string input, out_path;
    bool as_json = false;
    double tie_tol = 1e-9;
    int start_vertex = 0;

    auto add_common = [&](CLI::App* cmd, bool with_walk) {
        cmd->add_option("input", input, "tree file (JSON)")->required();
        cmd->add_option("--out", out_path, "write machine-readable output to this file");
        cmd->add_flag("--json", as_json, "print machine-readable output instead of text");
        if (with_walk) {
            cmd->add_option("--tie-tol", tie_tol, "relative Perron tie tolerance");
            cmd->add_option("--start-vertex", start_vertex, "walk start vertex id");
        }
    };

    auto* analyze = app.add_subcommand("analyze", "full spectral report");
    add_common(analyze, true);
    auto* charlike_cmd = app.add_subcommand("charlike", "characteristic-like vertex or edge");
    add_common(charlike_cmd, true);
    auto* kappa_cmd = app.add_subcommand("kappa", "Perron-value lower bound kappa");
    add_common(kappa_cmd, true);
    auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse of the Laplacian");
    add_common(pinv_cmd, false);
    auto* induced_cmd = app.add_subcommand("induced", "induced positive-weight trees");
    add_common(induced_cmd, false);

    auto* check_cmd = app.add_subcommand("check", "randomized property harness");
    HarnessConfig cfg;
    check_cmd->add_option("--class", cfg.class_filter, "pd | lower | upper | nonsingular | all")
        ->check(CLI::IsMember({"pd", "lower", "upper", "nonsingular", "all"}));
    check_cmd->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    check_cmd->add_option("--n-max", cfg.n_max)->check(CLI::Range(2, 1000));
    check_cmd->add_option("--s-max", cfg.s_max)->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", cfg.seed);
    check_cmd->add_option("--tie-tol", cfg.tie_tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed()) {
            const std::vector<InvariantResult> rows = run_property_harness(cfg);
            bool ok = true;
            for (const InvariantResult& r : rows) {
                std::cout << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(48)
                          << r.invariant << " trials=" << r.trials << " failures=" << r.failures
                          << " worst=" << std::setprecision(3) << r.worst << "\n";
                if (!r.passed()) {
                    std::cout << "      " << r.note << "\n";
                    ok = false;
                }
            }
            return ok ? 0 : 2;
        }

        const Tree tree = load_tree_file(input);

        if (analyze->parsed()) {
            const SpectralReport rep = bound_report(tree, tie_tol, start_vertex);
            if (!as_json) print_report(tree, rep);
            emit(report_to_json(tree, rep), out_path, as_json);
        } else if (charlike_cmd->parsed()) {
            const CharLikeResult r = locate(tree, tie_tol, start_vertex);
            if (!as_json) print_charlike(tree, r);
            emit(charlike_to_json(tree, r), out_path, as_json);
        } else if (kappa_cmd->parsed()) {
            const double k = kappa(tree, tie_tol);
            if (!as_json) std::cout << std::setprecision(10) << "kappa = " << k << "\n";
            emit(json{{"kappa", k}}, out_path, as_json);
        } else if (pinv_cmd->parsed()) {
            const PinvResult r = pinv(tree);
            json j = matrix_to_json(r.pinv.data());
            j["penrose_residuals"] = r.penrose_residuals;
            j["projector_residual"] = r.projector_residual;
            if (!as_json)
                std::cout << "Moore-Penrose inverse of order " << r.pinv.data().rows()
                          << ", worst Penrose residual "
                          << *std::max_element(r.penrose_residuals.begin(),
                                               r.penrose_residuals.end())
                          << "\n";
            emit(j, out_path, as_json);
        } else if (induced_cmd->parsed()) {
            json j = json::array();
            for (const ScalarTree& st : induce(tree)) {
                if (!as_json) {
                    std::cout << "diagonal " << st.origin_index + 1 << ":";
                    for (const Edge& e : st.tree.edges()) std::cout << " " << e.w(0, 0);
                    std::cout << "\n";
                }
                j.push_back(json::parse(serialize_tree(st.tree)));
            }
            emit(j, out_path, as_json);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
