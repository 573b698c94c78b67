#include <doctest.h>

#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "polerep/corpus.hpp"
#include "polerep/linalg.hpp"

using namespace polerep;
using Sub = SubspaceBasis<double>;

namespace {

Vector e(Eigen::Index n, Eigen::Index i) {
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    return v;
}

Sub span(std::initializer_list<Vector> vs) {
    Matrix m(vs.begin()->size(), static_cast<Eigen::Index>(vs.size()));
    Eigen::Index j = 0;
    for (const auto& v : vs) m.col(j++) = v;
    return span_of<double>(m);
}

Matrix example3_phi1(int N) {
    const Matrix k = example_operator({3, N, std::nullopt});
    return Matrix::Identity(N, N) - k;
}

}  // namespace

TEST_CASE("fundamental subspaces of 0 and I") {
    const auto z = fundamental_subspaces<double>(Matrix::Zero(3, 3));
    CHECK(z.ker.dim() == 3);
    CHECK(z.coker.dim() == 3);
    CHECK(z.ran.empty());
    CHECK(z.coran.empty());
    const auto i = fundamental_subspaces<double>(Matrix::Identity(3, 3));
    CHECK(i.ker.empty());
    CHECK(i.coker.empty());
    CHECK(i.ran.dim() == 3);
    CHECK(i.coran.dim() == 3);
}

TEST_CASE("fundamental subspaces of Phi(1) for example 3") {
    const Matrix a = example3_phi1(6);
    const auto fs = fundamental_subspaces<double>(a, 1e-8);
    CHECK(same_subspace(fs.ker, span({e(6, 1), e(6, 2)})));
    CHECK(same_subspace(fs.ran, span({Vector(e(6, 1) + e(6, 2)), e(6, 3), e(6, 4), e(6, 5)})));
    CHECK(fs.ker.dim() + fs.coran.dim() == 6);
    CHECK(fs.coker.dim() + fs.ran.dim() == 6);
    CHECK((fs.ker.basis().adjoint() * fs.coran.basis()).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((fs.coker.basis().adjoint() * fs.ran.basis()).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("fundamental subspaces reject bad input") {
    CHECK_THROWS_AS(fundamental_subspaces<double>(Matrix::Zero(2, 3)), InvalidArgument);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fundamental_subspaces<double>(bad), InvalidArgument);
}

TEST_CASE("subspace basis must be orthonormal") {
    Matrix m(2, 1);
    m << 1.0, 1.0;
    CHECK_THROWS_AS(Sub{m}, InvalidArgument);
    CHECK(Sub(2).empty());
    CHECK(Sub::full(3).dim() == 3);
}

TEST_CASE("moore-penrose small cases") {
    CHECK((moore_penrose<double>(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() <= 1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = 0.5;
    CHECK((moore_penrose<double>(d) - want).norm() <= 1e-14);
}

TEST_CASE("moore-penrose satisfies the four equations on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(1, 10);
    for (int t = 0; t < 60; ++t) {
        const int r = size(rng), c = size(rng);
        const int rank = std::uniform_int_distribution<int>(0, std::min(r, c))(rng);
        const Matrix a = fixtures::random_rank(rng, r, c, rank);
        const Matrix x = moore_penrose<double>(a, 1e-10 * std::max(1.0, operator_norm<double>(a)));
        CHECK(oracle::penrose_residual(a, x) <= 1e-10);
    }
}

TEST_CASE("example 3: Phi(1)^dagger (e2 + e3) = -e1") {
    const Matrix a = example3_phi1(6);
    const Vector got = moore_penrose<double>(a, 1e-10) * (e(6, 1) + e(6, 2));
    CHECK((got + e(6, 0)).norm() <= 1e-10);
}

TEST_CASE("orthogonal projector") {
    CHECK(orthogonal_projector<double>(Sub(3)).norm() == 0.0);
    CHECK((orthogonal_projector<double>(Sub::full(3)) - Matrix::Identity(3, 3)).norm() <= 1e-15);
    const Matrix p = orthogonal_projector<double>(span({Vector(e(2, 0) + e(2, 1))}));
    CHECK((p - Matrix::Constant(2, 2, 0.5)).norm() <= 1e-14);
}

TEST_CASE("oblique projector") {
    const Sub onto = span({e(2, 0)});
    const Matrix orth = oblique_projector<double>(onto, span({e(2, 1)}));
    CHECK((orth - orthogonal_projector<double>(onto)).norm() <= 1e-14);

    const Matrix p = oblique_projector<double>(onto, span({Vector(e(2, 0) + e(2, 1))}));
    CHECK((p * e(2, 1) + e(2, 0)).norm() <= 1e-14);

    CHECK_THROWS_AS(oblique_projector<double>(onto, onto), InvalidArgument);

    // example 2: ker A(1) ⊕ ran A(1) = H
    const Matrix a = Matrix::Identity(6, 6) - example_operator({2, 6, std::nullopt});
    const auto fs = fundamental_subspaces<double>(a, 1e-8);
    const Matrix q = oblique_projector<double>(fs.ker, fs.ran);
    CHECK((q * q - q).norm() <= 1e-12);
}

TEST_CASE("direct sum check") {
    const auto ok = direct_sum_check<double>({span({e(2, 0)}), span({e(2, 1)})});
    CHECK(ok.direct_and_spanning());
    CHECK(ok.min_gap == doctest::Approx(1.0));
    const auto bad = direct_sum_check<double>({span({e(2, 0)}), span({e(2, 0)})});
    CHECK_FALSE(bad.direct_and_spanning());
    CHECK(bad.min_gap == 0.0);
    CHECK_THROWS_AS(direct_sum_check<double>({Sub(2), Sub(3)}), InvalidArgument);

    const auto fs = fundamental_subspaces<double>(example3_phi1(6), 1e-8);
    CHECK_FALSE(direct_sum_check<double>({fs.ran, fs.ker}).trivial_intersections);
    CHECK(same_subspace(intersection<double>(fs.ran, fs.ker), span({Vector(e(6, 1) + e(6, 2))})));
}

TEST_CASE("principal angles") {
    const Sub u = span({e(3, 0), e(3, 1)});
    for (double a : principal_angles(u, u)) CHECK(a <= 1e-12);
    CHECK(principal_angles(span({e(2, 0)}), span({e(2, 1)}))[0] == doctest::Approx(std::numbers::pi / 2));
    CHECK(principal_angles(span({Vector(e(2, 0) + e(2, 1))}), span({e(2, 0)}))[0] ==
          doctest::Approx(std::numbers::pi / 4));
    CHECK_THROWS_AS(principal_angles(Sub(2), Sub(3)), InvalidArgument);
}

TEST_CASE("sum, complement, containment") {
    const Sub a = span({e(3, 0)}), b = span({e(3, 1)});
    const Sub s = subspace_sum<double>(a, b);
    CHECK(s.dim() == 2);
    CHECK(same_subspace(orthogonal_complement(s), span({e(3, 2)})));
    CHECK(contained_in(a, s));
    CHECK_FALSE(contained_in(span({e(3, 2)}), s));
    CHECK(intersection<double>(a, b).empty());
}
