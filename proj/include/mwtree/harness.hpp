#pragma once

#include "mwtree/tree.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mwtree {

struct InvariantResult {
    InvariantResult() = default;
    explicit InvariantResult(std::string name) : invariant(std::move(name)) {}

    std::string invariant;
    int trials = 0;
    int failures = 0;
    double worst = 0.0; // largest residual / violation observed
    std::string note;   // first failing trial, for reproduction
    bool passed() const { return failures == 0; }

    void record(bool ok, double measure, std::uint64_t seed, std::uint64_t trial);
};

/// Positive definite oracle suite: analytic grounded inverse vs LU, grounded
/// determinant vs weight determinant product, Q Q^T = L, P_v Q_v = I.
std::vector<InvariantResult> oracle_suite(std::uint64_t seed, int trials, int n_max, int s_max);

/// Characteristic-like suite for one weight class: walk termination,
/// start-vertex invariance, the unique-Perron-branch property at outside
/// vertices, kappa <= mu, nested-branch monotonicity; triangular classes add
/// the exact reindexing checks and the minimal-subtree localization.
std::vector<InvariantResult> charlike_suite(WeightClass cls, std::uint64_t seed, int trials,
                                            int n_max, int s_max, double tie_tol = 1e-9);

/// Moore-Penrose suite over the given class rotation: Penrose residuals,
/// projector identity, zero block sums, grounding invariance.
std::vector<InvariantResult> pinv_suite(const std::vector<WeightClass>& classes,
                                        std::uint64_t seed, int trials, int n_max, int s_max);

/// Perturbed-grounding identity suite over the given class rotation; PD trees
/// with a characteristic-like edge also check lambda_min = kappa.
std::vector<InvariantResult> identity_suite(const std::vector<WeightClass>& classes,
                                            std::uint64_t seed, int trials, int n_max, int s_max);

/// s = 1 positive weights: the matrix-weight locator and kappa must collapse
/// to the classical characteristic vertex/edge and the algebraic connectivity.
std::vector<InvariantResult> scalar_degeneration_suite(std::uint64_t seed, int trials, int n_max);

struct HarnessConfig {
    std::string class_filter = "all"; // pd | lower | upper | nonsingular | all
    std::uint64_t seed = 42;
    int trials = 100;
    int n_max = 10;
    int s_max = 3;
    double tie_tol = 1e-9;
};

std::vector<InvariantResult> run_property_harness(const HarnessConfig& cfg);

} // namespace mwtree
