#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "polerep/corpus.hpp"
#include "polerep/pole_analysis.hpp"

using namespace polerep;

namespace {

const Complex one(1.0, 0.0);

Matrix I(Eigen::Index n) { return Matrix::Identity(n, n); }

Pencil example_pencil(int id, int N = 6) { return Pencil::from_ar({example_operator({id, N, std::nullopt})}); }

double rel(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

Matrix jordan_n2() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix jordan_n1() {
    Matrix m(2, 2);
    m << -1.0, 1.0, 0.0, -1.0;
    return m;
}

bool flags_all(const PoleVerdict& v, bool want) {
    for (const auto& f : v.flags)
        if (f.value != want) return false;
    return !v.flags.empty();
}

}  // namespace

TEST_CASE("independent oracle reproduces the Jordan closed form") {
    const auto n = oracle::square_laurent(oracle::jordan_inverse, one, 0.3, -3, 1);
    CHECK(n[0].norm() <= 1e-12);
    CHECK((n[1] - jordan_n2()).norm() <= 1e-12);
    CHECK((n[2] - jordan_n1()).norm() <= 1e-12);
}

TEST_CASE("structured operators") {
    const auto a = structured_operators(Pencil::from_ar({I(2)}), one);
    CHECK(a.fs.ker.dim() == 2);
    CHECK(a.fs.coker.dim() == 2);
    // B1 in orthonormal coordinates: unitarily similar to -I
    Eigen::JacobiSVD<Matrix> svd(a.B1);
    CHECK(svd.singularValues().minCoeff() == doctest::Approx(1.0));
    CHECK((a.fs.ker.basis() * a.B1 * a.fs.ker.basis().adjoint() + I(2)).norm() <= 1e-12);

    const auto j = structured_operators(jordan_pencil(), one);
    CHECK(j.fs.ker.dim() == 1);
    CHECK(j.B1.norm() <= 1e-12);
    CHECK_FALSE(j.b1_bijective());

    CHECK_THROWS_AS(structured_operators(Pencil::from_ar({I(2)}), 0.5), InvalidArgument);
}

TEST_CASE("B1 for a linear pencil is -P_coker restricted to ker") {
    const Pencil p = example_pencil(2);
    const auto so = structured_operators(p, one);
    const Matrix lifted = so.fs.coker.basis() * so.B1 * so.fs.ker.basis().adjoint();
    const Matrix expected = -orthogonal_projector<double>(so.fs.coker) * orthogonal_projector<double>(so.fs.ker);
    CHECK((lifted - expected).norm() <= 1e-12);
}

TEST_CASE("simple poles of the first two examples") {
    for (int id : {1, 2}) {
        const auto v = classify_simple_pole(example_pencil(id), one);
        CHECK(v.holds);
        CHECK(v.order == 1);
        CHECK(flags_all(v, true));
        CHECK(v.flags.size() == 7);
        CHECK_THROWS_AS(classify_second_order(example_pencil(id), one), ClassificationError);
    }
    const auto v3 = classify_simple_pole(example_pencil(3), one);
    CHECK_FALSE(v3.holds);
    CHECK(flags_all(v3, false));
}

TEST_CASE("residue") {
    CHECK((residue_simple(Pencil::from_ar({I(2)}), one) + I(2)).norm() <= 1e-12);

    Matrix want = Matrix::Zero(6, 6);
    want(0, 0) = -1.0;
    CHECK((residue_simple(example_pencil(1), one) - want).norm() <= 1e-12);

    const auto lx = laurent_oracle(example_pencil(2), one, -3, 0);
    CHECK(rel(residue_simple(example_pencil(2), one), lx.N(-1)) <= 1e-8);

    CHECK_THROWS_AS(residue_simple(example_pencil(3), one), ClassificationError);
}

TEST_CASE("simple pole of a linear pencil: residue = -z0 * oblique projection") {
    const Pencil p = example_pencil(2);
    const auto so = structured_operators(p, one);
    const Matrix proj = oblique_projector<double>(so.fs.ker, so.fs.ran);
    CHECK((residue_simple(so) + proj).norm() <= 1e-10);
    const Matrix riesz = riesz_projection(example_operator({2, 6, std::nullopt}), one);
    CHECK((riesz * riesz - riesz).norm() <= 1e-8);
    CHECK(same_subspace(span_of<double>(riesz, 1e-6), so.fs.ker, 1e-8));
}

TEST_CASE("second-order poles") {
    const auto v3 = classify_second_order(example_pencil(3), one);
    CHECK(v3.holds);
    CHECK(flags_all(v3, true));
    CHECK(v3.flags.size() == 6);

    const auto v4 = classify_second_order(example_pencil(4), one);
    CHECK_FALSE(v4.holds);
    CHECK(flags_all(v4, false));

    const auto vj = classify_second_order(jordan_pencil(), one);
    CHECK(vj.holds);
    CHECK(flags_all(vj, true));
}

TEST_CASE("Jordan principal part") {
    const auto [n2, n1] = laurent_principal_second(jordan_pencil(), one);
    CHECK((n2 - jordan_n2()).norm() <= 1e-10);
    CHECK((n1 - jordan_n1()).norm() <= 1e-10);
}

TEST_CASE("example 3 principal part") {
    const Pencil p = example_pencil(3);
    const auto [n2, n1] = laurent_principal_second(p, one);
    Vector v = Vector::Zero(6);
    v(1) = v(2) = 1.0;
    const auto fs = fundamental_subspaces<double>(n2, 1e-8);
    CHECK(fs.rank() == 1);
    CHECK(same_subspace(fs.ran, span_of<double>(Matrix(v))));
    const Matrix a0 = p.eval(one);
    CHECK((n2 * a0).norm() <= 1e-8);
    CHECK((a0 * n2).norm() <= 1e-8);
    CHECK((n1 * a0 + n2 * p.derivative(1, one)).norm() <= 1e-8);

    const auto n = oracle::square_laurent(oracle::inverse_of(p.coeffs()), one, 0.2, -2, -1);
    CHECK(rel(n2, n[0]) <= 1e-9);
    CHECK(rel(n1, n[1]) <= 1e-9);
    CHECK_THROWS_AS(laurent_principal_second(example_pencil(4), one), ClassificationError);
    CHECK_THROWS_AS(laurent_principal_second(example_pencil(2), one), ClassificationError);
}

TEST_CASE("laurent oracle") {
    const auto a = laurent_oracle(Pencil::from_ar({I(2)}), one, -3, 0);
    CHECK((a.N(-1) + I(2)).norm() <= 1e-12);
    CHECK(a.N(-2).norm() <= 1e-12);
    CHECK(a.N(-3).norm() <= 1e-12);
    CHECK(a.min_order == 1);
    CHECK(a.doubling_change <= 1e-8);
    CHECK(a.nodes_used == 1024);

    const auto j = laurent_oracle(jordan_pencil(), one, -3, 0);
    CHECK((j.N(-2) - jordan_n2()).norm() <= 1e-10);

    const auto e4 = laurent_oracle(example_pencil(4), one, -4, 0);
    CHECK(operator_norm<double>(e4.N(-3)) > 1e-6);
    CHECK(e4.min_order == 3);

    CHECK_THROWS_AS(laurent_oracle(jordan_pencil(), one, 0, -1), InvalidArgument);
    CHECK_THROWS_AS(laurent_oracle(jordan_pencil(), one, -2, 0, 0.0, 4), InvalidArgument);
    // a circle of radius 3 around 1 encloses the point 4 of example 2
    CHECK_THROWS_AS(laurent_oracle(example_pencil(2), one, -2, 0, 3.0), InvalidArgument);
    CHECK_THROWS_AS(a.N(-4), InvalidArgument);
}

TEST_CASE("laurent oracle agrees with the square-contour oracle") {
    for (const auto& f : fixtures::unit_root_pencils(12, 5)) {
        const auto lx = laurent_oracle(f.pencil, one, -4, 2);
        const auto ref = oracle::square_laurent(oracle::inverse_of(f.pencil.coeffs()), one,
                                                lx.radius * 0.8, -4, 2);
        double scale = 0;
        for (const auto& m : ref) scale = std::max(scale, m.norm());
        for (int k = -4; k <= 2; ++k) CHECK((lx.N(k) - ref[static_cast<std::size_t>(k + 4)]).norm() <= 1e-7 * scale);
    }
}

TEST_CASE("oracle coefficients reconstruct the inverse") {
    const Pencil p = example_pencil(3);
    const auto lx = laurent_oracle(p, one, -2, 8);
    for (int j = 0; j < 8; ++j) {
        const Complex z = one + std::polar(0.02, 0.7 * j);
        Matrix sum = Matrix::Zero(6, 6);
        for (int k = -2; k <= 8; ++k) sum += lx.N(k) * std::pow(z - one, k);
        const Matrix inv = p.inverse_at(z);
        CHECK((sum - inv).norm() <= 1e-6 * inv.norm());
    }
}

TEST_CASE("pole order") {
    CHECK(pole_order(example_pencil(2), one) == 1);
    CHECK(pole_order(example_pencil(3), one) == 2);
    PoleOptions capped;
    capped.cap = 2;
    const auto o4 = pole_order(example_pencil(4), one, capped);
    CHECK(o4.exceeds_cap);
    CHECK(o4.str() == "exceeds_cap(2)");
    CHECK(pole_order(example_pencil(4), one) == 3);
    CHECK_THROWS_AS(pole_order(example_pencil(2), 0.5), InvalidArgument);
}

TEST_CASE("condition flags agree on random unit-root pencils") {
    for (const auto& f : fixtures::unit_root_pencils(24, 17)) {
        INFO(f.label);
        const auto s = classify_simple_pole(f.pencil, one);
        CHECK(s.holds == (f.order == 1));
        if (f.order > 1) {
            const auto v = classify_second_order(f.pencil, one);
            CHECK(v.holds == (f.order == 2));
        }
    }
}

TEST_CASE("riesz projection") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 0.5;
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = 1.0;
    CHECK((riesz_projection(d, one) - want).norm() <= 1e-12);

    Matrix j(2, 2);
    j << 1.0, 1.0, 0.0, 1.0;
    CHECK((riesz_projection(j, one) - I(2)).norm() <= 1e-10);

    CHECK_THROWS_AS(riesz_projection(d, one, 0.6), InvalidArgument);
}
