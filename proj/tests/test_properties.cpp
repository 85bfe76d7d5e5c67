#include <doctest.h>

#include "mwtree/charlike.hpp"
#include "mwtree/errors.hpp"
#include "mwtree/harness.hpp"
#include "mwtree/random_trees.hpp"

using namespace mwtree;

namespace {

void expect_all_pass(const std::vector<InvariantResult>& rows) {
    for (const InvariantResult& r : rows) {
        INFO(r.invariant, ": ", r.note);
        CHECK(r.failures == 0);
        CHECK(r.trials > 0);
    }
}

} // namespace

TEST_CASE("oracle suite holds on random positive definite trees") {
    expect_all_pass(oracle_suite(1337, 40, 9, 3));
}

TEST_CASE("characteristic-like suite holds per class") {
    expect_all_pass(charlike_suite(WeightClass::PositiveDefinite, 1337, 40, 9, 3));
    expect_all_pass(charlike_suite(WeightClass::LowerTriangular, 1337, 40, 9, 3));
    expect_all_pass(charlike_suite(WeightClass::UpperTriangular, 1337, 40, 9, 3));
}

TEST_CASE("moore-penrose suite holds across classes") {
    expect_all_pass(pinv_suite({WeightClass::PositiveDefinite, WeightClass::LowerTriangular,
                                WeightClass::GeneralNonsingular, WeightClass::UpperTriangular},
                               1337, 40, 9, 3));
}

TEST_CASE("perturbed grounding identities hold") {
    expect_all_pass(identity_suite({WeightClass::PositiveDefinite, WeightClass::GeneralNonsingular},
                                   1337, 40, 9, 3));
}

TEST_CASE("scalar weights degenerate to the classical theory") {
    expect_all_pass(scalar_degeneration_suite(1337, 40, 9));
}

TEST_CASE("locate settles on 500 random trees per class") {
    for (WeightClass cls : {WeightClass::PositiveDefinite, WeightClass::LowerTriangular,
                            WeightClass::UpperTriangular}) {
        int settled = 0;
        for (std::uint64_t t = 0; t < 500; ++t) {
            auto rng = trial_rng(2024, t);
            std::uniform_int_distribution<int> nd(2, 10), sd(1, 3);
            const Tree tree = random_tree(rng, nd(rng), sd(rng), cls);
            try {
                locate(tree);
                ++settled;
            } catch (const NonTermination&) {
            }
        }
        CHECK(settled == 500);
    }
}

TEST_CASE("harness is reproducible for a fixed seed") {
    HarnessConfig cfg;
    cfg.class_filter = "lower";
    cfg.trials = 10;
    cfg.seed = 99;
    const auto a = run_property_harness(cfg);
    const auto b = run_property_harness(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].invariant == b[i].invariant);
        CHECK(a[i].failures == b[i].failures);
        CHECK(a[i].worst == b[i].worst); // bit-identical
    }
}
