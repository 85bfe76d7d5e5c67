#pragma once

#include "mwtree/tree.hpp"

#include <cstdint>
#include <random>

namespace mwtree {

/// Uniform labeled tree on n vertices decoded from a random sequence
/// (every labeled tree is equally likely), with weights drawn per class:
///   pd          A^T A + 0.1 I, A entries uniform(-1, 1)
///   lower/upper diagonal uniform(0.5, 2), inner triangle uniform(-1, 1)
///   nonsingular entries uniform(-1, 1) plus 2.5 on the diagonal
Tree random_tree(std::mt19937_64& rng, int n, int s, WeightClass cls);

Matrix random_weight(std::mt19937_64& rng, int s, WeightClass cls);

/// Deterministic per-trial generator derived from (seed, trial index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

} // namespace mwtree
