#include <doctest.h>

#include "mwtree/errors.hpp"
#include "mwtree/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace mwtree;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

Matrix random_symmetric(std::mt19937_64& rng, int n) {
    Matrix m = random_matrix(rng, n);
    return (m + m.transposed()) * 0.5;
}

Matrix random_pd(std::mt19937_64& rng, int n) {
    const Matrix a = random_matrix(rng, n);
    Matrix m = a.transposed() * a;
    for (int i = 0; i < n; ++i) m(i, i) += 0.1;
    return m;
}

} // namespace

TEST_CASE("kron basics") {
    const Matrix b{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(max_abs_diff(kron(Matrix::identity(1), b), b) == 0.0);

    const Matrix two{{2.0}};
    const Matrix expect{{2.0, 0.0}, {0.0, 2.0}};
    CHECK(max_abs_diff(kron(two, Matrix::identity(2)), expect) == 0.0);
}

TEST_CASE("kron eigenvalues are pairwise products") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix a = random_symmetric(rng, 2);
        const Matrix b = random_symmetric(rng, 3);
        std::vector<double> products;
        for (double la : sym_eig(a).eigenvalues)
            for (double lb : sym_eig(b).eigenvalues) products.push_back(la * lb);
        std::sort(products.begin(), products.end());
        const Spectrum sp = sym_eig(kron(a, b));
        REQUIRE(sp.eigenvalues.size() == products.size());
        for (size_t i = 0; i < products.size(); ++i)
            CHECK(sp.eigenvalues[i] == doctest::Approx(products[i]).epsilon(1e-9));
    }
}

TEST_CASE("kron is associative on integer entries") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    Matrix a(2, 2), b(2, 3), c(3, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = d(rng);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = d(rng);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) c(i, j) = d(rng);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("lu_inverse basics") {
    const LuResult id = lu_inverse(Matrix::identity(3));
    CHECK(max_abs_diff(id.inverse, Matrix::identity(3)) == 0.0);
    CHECK(id.det == doctest::Approx(1.0));

    const LuResult d = lu_inverse(Matrix{{2.0, 0.0}, {0.0, 4.0}});
    CHECK(max_abs_diff(d.inverse, Matrix{{0.5, 0.0}, {0.0, 0.25}}) == 0.0);
    CHECK(d.det == doctest::Approx(8.0));
}

TEST_CASE("lu_inverse residual on random well-conditioned input") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix a = random_matrix(rng, 6);
        for (int i = 0; i < 6; ++i) a(i, i) += 4.0;
        const LuResult r = lu_inverse(a);
        CHECK(max_abs_diff(a * r.inverse, Matrix::identity(6)) < 1e-8);
    }
}

TEST_CASE("lu_inverse rejects singular input") {
    CHECK_THROWS_AS(lu_inverse(Matrix{{1.0, 2.0}, {2.0, 4.0}}), SingularMatrix);
    CHECK_THROWS_AS(lu_inverse(Matrix(3, 3)), SingularMatrix);
}

TEST_CASE("lu determinant matches eigenvalue product on symmetric input") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix a = random_pd(rng, 5);
        double prod = 1.0;
        for (double lam : sym_eig(a).eigenvalues) prod *= lam;
        const double det = lu_det(a);
        CHECK(det == doctest::Approx(prod).epsilon(1e-6));
    }
}

TEST_CASE("sym_eig on fixed spectra") {
    const Spectrum d = sym_eig(Matrix::diagonal({3.0, 1.0, 2.0}));
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(d.eigenvalues[2] == doctest::Approx(3.0));

    const Spectrum swap = sym_eig(Matrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(swap.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(swap.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("sym_eig path Laplacian spectrum by characteristic polynomial") {
    // unit-weight path on 3 vertices; det(L - x I) = -x (x - 1) (x - 3)
    const Matrix l{{1.0, -1.0, 0.0}, {-1.0, 2.0, -1.0}, {0.0, -1.0, 1.0}};
    const Spectrum sp = sym_eig(l);
    CHECK(std::fabs(sp.eigenvalues[0]) < 1e-12);
    CHECK(sp.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(sp.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("sym_eig rejects asymmetric input") {
    CHECK_THROWS_AS(sym_eig(Matrix{{0.0, 1.0}, {0.0, 0.0}}), NotSymmetric);
}

TEST_CASE("sym_eig_full reconstructs the input") {
    std::mt19937_64 rng(13);
    for (int n : {2, 5, 9}) {
        const Matrix a = random_symmetric(rng, n);
        const EigenDecomposition dec = sym_eig_full(a);
        Matrix rebuilt(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rebuilt(i, j) += dec.eigenvalues[k] * dec.eigenvectors(i, k) * dec.eigenvectors(j, k);
        CHECK(max_abs_diff(rebuilt, a) < 1e-7);
    }
}

TEST_CASE("sym_eig is stable under symmetric permutation") {
    std::mt19937_64 rng(17);
    const Matrix a = random_symmetric(rng, 6);
    std::vector<int> perm{3, 0, 5, 1, 4, 2};
    Matrix b(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) b(i, j) = a(perm[i], perm[j]);
    const Spectrum sa = sym_eig(a), sb = sym_eig(b);
    for (int i = 0; i < 6; ++i)
        CHECK(std::fabs(sa.eigenvalues[i] - sb.eigenvalues[i]) < 1e-8);
}

TEST_CASE("sqrt_pd") {
    CHECK(max_abs_diff(sqrt_pd(Matrix::identity(3)), Matrix::identity(3)) < 1e-14);
    CHECK(max_abs_diff(sqrt_pd(Matrix::diagonal({4.0, 9.0})), Matrix::diagonal({2.0, 3.0})) < 1e-12);

    std::mt19937_64 rng(19);
    const Matrix a = random_pd(rng, 3);
    const Matrix s = sqrt_pd(a);
    CHECK(s.asymmetry() == 0.0);
    CHECK(max_abs_diff(s * s, a) < 1e-8);

    CHECK_THROWS_AS(sqrt_pd(Matrix{{1.0, 0.0}, {0.0, -2.0}}), NotPositiveDefinite);
}

TEST_CASE("triangular_inverse keeps structure exact") {
    const Matrix w{{2.0, 0.0, 0.0}, {-3.0, 4.0, 0.0}, {5.0, -1.0, 8.0}};
    const Matrix inv = triangular_inverse(w, true);
    CHECK(inv(0, 0) == 1.0 / 2.0);
    CHECK(inv(1, 1) == 1.0 / 4.0);
    CHECK(inv(2, 2) == 1.0 / 8.0);
    CHECK(inv(0, 1) == 0.0);
    CHECK(inv(0, 2) == 0.0);
    CHECK(inv(1, 2) == 0.0);
    CHECK(max_abs_diff(w * inv, Matrix::identity(3)) < 1e-14);

    const Matrix upper = w.transposed();
    CHECK(max_abs_diff(triangular_inverse(upper, false), inv.transposed()) < 1e-14);
}

TEST_CASE("vec_permutation commutes Kronecker factors") {
    CHECK(max_abs_diff(vec_permutation(1, 1), Matrix::identity(1)) == 0.0);
    CHECK(max_abs_diff(vec_permutation(4, 1), Matrix::identity(4)) == 0.0);

    std::mt19937_64 rng(23);
    const Matrix a = random_matrix(rng, 2);
    const Matrix b = random_matrix(rng, 3);
    const Matrix p = vec_permutation(2, 3);
    CHECK(max_abs_diff(kron(a, b), p * kron(b, a) * p.transposed()) == 0.0);

    const Matrix q = vec_permutation(3, 2);
    CHECK(max_abs_diff(p * q, Matrix::identity(6)) == 0.0);
}
