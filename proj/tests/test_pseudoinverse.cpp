#include <doctest.h>

#include "mwtree/errors.hpp"
#include "mwtree/laplacian.hpp"
#include "mwtree/pseudoinverse.hpp"
#include "mwtree/random_trees.hpp"

#include <algorithm>
#include <cmath>
#include <string>

using namespace mwtree;

namespace {

const std::string kFixtures = FIXTURE_DIR;

Tree double_star() { return load_tree_file(kFixtures + "/double_star6.json"); }
Tree caterpillar() { return load_tree_file(kFixtures + "/caterpillar7.json"); }

Tree unit_pair() {
    Matrix one(1, 1);
    one(0, 0) = 1.0;
    return Tree(1, {{0, 1, one}}, WeightClass::PositiveDefinite);
}

} // namespace

TEST_CASE("pseudoinverse of the unit pair by hand") {
    const PinvResult r = pinv(unit_pair());
    const Matrix expect{{0.25, -0.25}, {-0.25, 0.25}};
    CHECK(max_abs_diff(r.pinv.data(), expect) < 1e-12);
    for (double res : r.penrose_residuals) CHECK(res < 1e-12);

    // I - L L^+ collapses to the half-ones matrix
    CHECK(projector_check(unit_pair(), r) < 1e-12);
}

TEST_CASE("pseudoinverse certifies the fixtures") {
    const Tree d = double_star();
    const PinvResult rd = pinv(d);
    for (double res : rd.penrose_residuals) CHECK(res < 1e-8);
    CHECK(rd.pinv.data().asymmetry() < 1e-9); // symmetric input, symmetric inverse
    CHECK(projector_check(d, rd) < 1e-8);

    const Tree c = caterpillar();
    const PinvResult rc = pinv(c);
    for (double res : rc.penrose_residuals) CHECK(res < 1e-8);
    CHECK(projector_check(c, rc) < 1e-8);
    CHECK(rc.pinv.data().asymmetry() > 1e-3); // triangular weights: nonsymmetric inverse
}

TEST_CASE("pseudoinverse block sums vanish") {
    for (const Tree& t : {double_star(), caterpillar()}) {
        const PinvResult r = pinv(t);
        const int s = t.block_size();
        for (int i = 0; i < t.vertex_count(); ++i) {
            Matrix row(s, s), col(s, s);
            for (int j = 0; j < t.vertex_count(); ++j) {
                row += r.pinv.block(i, j);
                col += r.pinv.block(j, i);
            }
            CHECK(row.max_abs() < 1e-9);
            CHECK(col.max_abs() < 1e-9);
        }
    }
}

TEST_CASE("grounding vertex does not change the pseudoinverse") {
    const Tree d = double_star();
    const Matrix base = pinv(d).pinv.data();
    for (int v = 0; v < d.vertex_count(); ++v)
        CHECK(max_abs_diff(base, pinv(d, v).pinv.data()) < 1e-8);
}

TEST_CASE("positive definite class: reciprocal spectra") {
    const Tree d = double_star();
    const int s = d.block_size();
    const PinvResult r = pinv(d);
    const Spectrum sl = sym_eig(laplacian(d).data());
    const Spectrum sp = sym_eig(r.pinv.data());

    for (double lam : sp.eigenvalues) CHECK(lam >= -1e-9);

    // nonzero eigenvalues of L^+ ascending = reciprocals of L's nonzero ones descending
    std::vector<double> recip;
    for (size_t i = s; i < sl.eigenvalues.size(); ++i) recip.push_back(1.0 / sl.eigenvalues[i]);
    std::sort(recip.begin(), recip.end());
    for (size_t i = 0; i < recip.size(); ++i) {
        const double got = sp.eigenvalues[s + i];
        CHECK(std::fabs(got - recip[i]) < 1e-6 * recip[i]);
    }
}

TEST_CASE("pseudoinverse across random classes") {
    const WeightClass classes[] = {WeightClass::PositiveDefinite, WeightClass::LowerTriangular,
                                   WeightClass::GeneralNonsingular, WeightClass::UpperTriangular};
    for (std::uint64_t t = 0; t < 12; ++t) {
        auto rng = trial_rng(44, t);
        std::uniform_int_distribution<int> nd(2, 8), sd(1, 3);
        const Tree tree = random_tree(rng, nd(rng), sd(rng), classes[t % 4]);
        const PinvResult r = pinv(tree);
        for (double res : r.penrose_residuals) CHECK(res < 1e-8);
        CHECK(projector_check(tree, r) < 1e-8);
    }
}

TEST_CASE("closed-form inverse of the centering block") {
    CHECK(m_inverse_check(2, 1) < 1e-15);
    CHECK(m_inverse_check(5, 2) < 1e-12);
    CHECK(m_inverse_check(3, 3) < 1e-12);
    CHECK_THROWS_AS(m_inverse_check(1, 1), Error);
}
