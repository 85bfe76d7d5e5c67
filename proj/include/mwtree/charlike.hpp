#pragma once

#include "mwtree/bottleneck.hpp"
#include "mwtree/tree.hpp"

#include <vector>

namespace mwtree {

/// Characteristic-like object of a tree with positive definite or triangular
/// weights: the unique vertex with two or more Perron branches, or the unique
/// adjacent pair whose Perron branches point at each other.
struct CharLikeResult {
    enum class Kind { Vertex, Edge };
    Kind kind = Kind::Vertex;
    int vertex = -1;             // Vertex case
    int u = -1, v = -1;          // Edge case endpoints, u < v
    double nu = 0.0;             // Edge case balance parameter in (0,1)
    double nu_residual = 0.0;    // |f(nu) - g(nu)| left by the bisection
    int tie_count = 0;           // Vertex case: number of tied Perron branches
    std::vector<int> walk_trace; // vertices visited by the locator

    std::vector<int> char_vertices() const {
        return kind == Kind::Vertex ? std::vector<int>{vertex} : std::vector<int>{u, v};
    }
};

/// Walk locator: from the start vertex, step into the unique Perron branch
/// until either some vertex ties (Vertex result) or the walk bounces back
/// (Edge result). Terminates within n steps on valid input.
CharLikeResult locate(const Tree& tree, double tie_tol = kDefaultTieTol, int start_vertex = 0);

struct Result2Entry {
    int vertex = -1;
    bool single_perron = false;
    bool points_to_char = false; // the Perron branch contains the characteristic-like set
    bool pass() const { return single_perron && points_to_char; }
};

struct Result2Report {
    std::vector<Result2Entry> entries; // one per non-characteristic vertex
    bool all_pass = true;
};

/// At every vertex outside the characteristic-like set, checks that there is
/// exactly one Perron branch and that it contains the set.
Result2Report verify_result2(const Tree& tree, const CharLikeResult& r,
                             double tie_tol = kDefaultTieTol);

struct NuSolution {
    double nu = 0.0;
    double value = 0.0;    // f(nu) = g(nu) = 1/kappa
    double residual = 0.0; // |f(nu) - g(nu)|
};

/// Balance parameter of a characteristic-like edge, by bisection of
/// f(t) = rho(M_u(v) - t J (x) W(e)^-1) against
/// g(t) = rho(M_v(u) - (1-t) J (x) W(e)^-1).
NuSolution solve_nu(const Tree& tree, int u, int v);

/// 1/rho(M_v) at a characteristic-like vertex, or 1/f(nu) at a
/// characteristic-like edge.
double kappa(const Tree& tree, double tie_tol = kDefaultTieTol);

/// First nonzero Laplacian eigenvalue: the (s+1)-th smallest for positive
/// definite weights, or the minimum algebraic connectivity over the induced
/// scalar trees for triangular weights.
double mu(const Tree& tree);

struct SpectralReport {
    CharLikeResult charlike;
    double kappa = 0.0;
    double mu = 0.0;
    bool bound_holds = false; // kappa <= mu + 1e-9
    std::vector<PerronReport> per_vertex;
};

SpectralReport bound_report(const Tree& tree, double tie_tol = kDefaultTieTol,
                            int start_vertex = 0);

/// Residual of the closed-form inverse of the grounded perturbation:
/// [M_u(v) - alpha J (x) W(e)^-1] [Lhat(B_u(v)) + e_v e_v^T (x) (alpha/(1-alpha)) W(e)] = I.
double rank_one_grounding_identity(const Tree& tree, int u, int v, double alpha);

/// L + E (x) W(e) in the natural vertex order, where E carries
/// (1-alpha)/alpha at (u,u), alpha/(1-alpha) at (v,v) and 1 at (u,v), (v,u).
Matrix split_perturbed_laplacian(const Tree& tree, int u, int v, double alpha);

/// Residual between L + E (x) W(e) and the block diagonal of the two perturbed
/// bottleneck inverses in closed form.
double split_identity_check(const Tree& tree, int u, int v, double alpha);

} // namespace mwtree
