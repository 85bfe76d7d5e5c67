#include "mwtree/random_trees.hpp"

#include "mwtree/errors.hpp"

#include <algorithm>
#include <vector>

namespace mwtree {

Matrix random_weight(std::mt19937_64& rng, int s, WeightClass cls) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> diag(0.5, 2.0);
    Matrix w(s, s);
    switch (cls) {
        case WeightClass::PositiveDefinite: {
            Matrix a(s, s);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) a(i, j) = unit(rng);
            w = a.transposed() * a;
            for (int i = 0; i < s; ++i) w(i, i) += 0.1;
            break;
        }
        case WeightClass::LowerTriangular:
        case WeightClass::UpperTriangular: {
            const bool lower = cls == WeightClass::LowerTriangular;
            for (int i = 0; i < s; ++i) w(i, i) = diag(rng);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < i; ++j) {
                    if (lower)
                        w(i, j) = unit(rng);
                    else
                        w(j, i) = unit(rng);
                }
            break;
        }
        case WeightClass::GeneralNonsingular: {
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) w(i, j) = unit(rng);
            for (int i = 0; i < s; ++i) w(i, i) += 2.5;
            break;
        }
    }
    return w;
}

Tree random_tree(std::mt19937_64& rng, int n, int s, WeightClass cls) {
    if (n < 2) throw Error("random_tree needs n >= 2");
    std::vector<std::pair<int, int>> pairs;
    if (n == 2) {
        pairs.emplace_back(0, 1);
    } else {
        // decode a uniform length n-2 sequence over the labels
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::vector<int> seq(n - 2);
        for (int& x : seq) x = pick(rng);

        std::vector<int> degree(n, 1);
        for (int x : seq) ++degree[x];
        for (int x : seq) {
            int leaf = -1;
            for (int v = 0; v < n; ++v)
                if (degree[v] == 1) {
                    leaf = v;
                    break;
                }
            pairs.emplace_back(leaf, x);
            --degree[leaf];
            --degree[x];
        }
        int a = -1, b = -1;
        for (int v = 0; v < n; ++v)
            if (degree[v] == 1) (a < 0 ? a : b) = v;
        pairs.emplace_back(a, b);
    }

    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v, random_weight(rng, s, cls)});
    return Tree(s, std::move(edges), cls);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(sq);
}

} // namespace mwtree
