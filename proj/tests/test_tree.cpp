#include <doctest.h>

#include "mwtree/errors.hpp"
#include "mwtree/random_trees.hpp"
#include "mwtree/tree.hpp"

#include <algorithm>
#include <string>

using namespace mwtree;

namespace {

const std::string kFixtures = FIXTURE_DIR;

Tree k2() { return load_tree_file(kFixtures + "/k2_identity.json"); }
Tree double_star() { return load_tree_file(kFixtures + "/double_star6.json"); }
Tree path5() { return load_tree_file(kFixtures + "/path5.json"); }
Tree caterpillar() { return load_tree_file(kFixtures + "/caterpillar7.json"); }

} // namespace

TEST_CASE("parse fixtures") {
    const Tree a = k2();
    CHECK(a.vertex_count() == 2);
    CHECK(a.block_size() == 2);
    CHECK(a.weight_class() == WeightClass::PositiveDefinite);

    const Tree b = caterpillar();
    CHECK(b.vertex_count() == 7);
    CHECK(b.block_size() == 3);
    CHECK(b.weight_class() == WeightClass::LowerTriangular);
    CHECK(b.label(0) == "v1");
    CHECK(b.vertex_by_label("v7") == 6);
}

TEST_CASE("parse rejects a singular weight") {
    const std::string text = R"({
      "s": 2, "weight_class": "pd",
      "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "b", "w": [[1, 1], [1, 1]]}]
    })";
    CHECK_THROWS_AS(parse_tree(text), ValidationError);
}

TEST_CASE("parse rejects malformed documents") {
    CHECK_THROWS_AS(parse_tree("not json"), SchemaError);
    CHECK_THROWS_AS(parse_tree(R"({"s": 1, "weight_class": "pd", "vertices": ["a", "b"]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 1, "weight_class": "pd", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "zz", "w": [[1]]}]
    })"),
                    SchemaError);
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 2, "weight_class": "pd", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "b", "w": [[1, 0]]}]
    })"),
                    SchemaError);
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 1, "weight_class": "wat", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "b", "w": [[1]]}]
    })"),
                    SchemaError);
}

TEST_CASE("parse rejects broken topology") {
    // two components
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 1, "weight_class": "pd", "vertices": ["a", "b", "c", "d"],
      "edges": [{"u": "a", "v": "b", "w": [[1]]},
                 {"u": "a", "v": "b", "w": [[1]]},
                 {"u": "c", "v": "d", "w": [[1]]}]
    })"),
                    ValidationError);
    // self loop
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 1, "weight_class": "pd", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "a", "w": [[1]]}]
    })"),
                    ValidationError);
}

TEST_CASE("triangular class requires exact zeros and positive diagonal") {
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 2, "weight_class": "lower", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "b", "w": [[1, 1e-14], [0, 1]]}]
    })"),
                    ValidationError);
    CHECK_THROWS_AS(parse_tree(R"({
      "s": 2, "weight_class": "lower", "vertices": ["a", "b"],
      "edges": [{"u": "a", "v": "b", "w": [[1, 0], [3, -1]]}]
    })"),
                    ValidationError);
}

TEST_CASE("branches_at splits the fixtures as expected") {
    const Tree p = path5();
    const auto pb = branches_at(p, 2); // v3
    REQUIRE(pb.size() == 2);
    CHECK(pb[0].members == std::vector<int>{0, 1});
    CHECK(pb[1].members == std::vector<int>{3, 4});
    CHECK(pb[0].root == 1);
    CHECK(pb[1].root == 3);

    const auto db = branches_at(double_star(), 2); // v3
    REQUIRE(db.size() == 3);
    CHECK(db[0].members == std::vector<int>{0});
    CHECK(db[1].members == std::vector<int>{1});
    CHECK(db[2].members == std::vector<int>{3, 4, 5});

    const auto kb = branches_at(k2(), 0);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0].members == std::vector<int>{1});

    CHECK_THROWS_AS(branches_at(p, 9), UnknownVertex);
}

TEST_CASE("path_between on fixtures") {
    const Tree p = path5();
    CHECK(path_between(p, 0, 4) == std::vector<int>{0, 1, 2, 3});
    const Tree d = double_star();
    CHECK(path_between(d, 0, 1) == std::vector<int>{0, 1});
    CHECK(path_between(d, 3, 3).empty());
    CHECK_THROWS_AS(path_between(d, 0, 6), UnknownVertex);
}

TEST_CASE("branch partition and path reversal on random trees") {
    for (std::uint64_t t = 0; t < 20; ++t) {
        auto rng = trial_rng(101, t);
        const Tree tree = random_tree(rng, 2 + static_cast<int>(t % 8), 1 + t % 3,
                                      WeightClass::PositiveDefinite);
        for (int v = 0; v < tree.vertex_count(); ++v) {
            std::vector<int> all;
            size_t total = 0;
            for (const Branch& b : branches_at(tree, v)) {
                total += b.members.size();
                all.insert(all.end(), b.members.begin(), b.members.end());
                CHECK(std::binary_search(b.members.begin(), b.members.end(), b.root));
                CHECK(tree.edge_between(v, b.root) >= 0);
            }
            CHECK(total == static_cast<size_t>(tree.vertex_count() - 1));
            std::sort(all.begin(), all.end());
            CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
            CHECK(std::find(all.begin(), all.end(), v) == all.end());
        }
        for (int u = 0; u < tree.vertex_count(); ++u)
            for (int w = u + 1; w < tree.vertex_count(); ++w) {
                std::vector<int> fwd = path_between(tree, u, w);
                std::vector<int> bwd = path_between(tree, w, u);
                std::reverse(bwd.begin(), bwd.end());
                CHECK(fwd == bwd);
            }
    }
}

TEST_CASE("serialize round-trips") {
    for (const Tree& t : {k2(), double_star(), path5(), caterpillar()}) {
        const std::string once = serialize_tree(t);
        const Tree back = parse_tree(once);
        CHECK(back.vertex_count() == t.vertex_count());
        CHECK(back.block_size() == t.block_size());
        CHECK(back.weight_class() == t.weight_class());
        CHECK(back.labels() == t.labels());
        REQUIRE(back.edges().size() == t.edges().size());
        for (size_t e = 0; e < t.edges().size(); ++e) {
            CHECK(back.edges()[e].u == t.edges()[e].u);
            CHECK(back.edges()[e].v == t.edges()[e].v);
            CHECK(max_abs_diff(back.edges()[e].w, t.edges()[e].w) == 0.0);
        }
        CHECK(serialize_tree(back) == once);
    }
}

TEST_CASE("arbitrary labels map to dense ids") {
    const Tree t = parse_tree(R"({
      "s": 1, "weight_class": "pd",
      "vertices": ["left", "hub", "right"],
      "edges": [{"u": "hub", "v": "left", "w": [[2]]},
                 {"u": "hub", "v": "right", "w": [[3]]}]
    })");
    CHECK(t.label(1) == "hub");
    CHECK(t.edge(0).u == 1);
    CHECK(t.edge(0).v == 0);
    CHECK(t.degree(1) == 2);
}

TEST_CASE("spanning subtree of anchor sets") {
    const Tree d = double_star();
    CHECK(spanning_subtree_vertices(d, {0, 1}) == std::vector<int>{0, 1, 2});
    CHECK(spanning_subtree_vertices(d, {0, 4}) == std::vector<int>{0, 2, 3, 4});
    CHECK(spanning_subtree_vertices(d, {2}) == std::vector<int>{2});
}
