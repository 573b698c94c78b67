#include <doctest.h>

#include <sstream>

#include "polerep/corpus.hpp"
#include "polerep/io.hpp"
#include "polerep/run.hpp"

using namespace polerep;

namespace {

Vector e(Eigen::Index n, Eigen::Index i) {
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("example operators at N = 4") {
    const Matrix k2 = example_operator({2, 4, std::nullopt});
    CHECK((k2.col(0) - (e(4, 0) + e(4, 1))).norm() == 0.0);
    for (int j = 2; j <= 4; ++j) CHECK((k2.col(j - 1) - std::ldexp(1.0, -j) * e(4, j - 1)).norm() == 0.0);

    const Matrix k3 = example_operator({3, 4, std::nullopt});
    CHECK((k3.col(0) - (e(4, 0) + e(4, 1) + e(4, 2))).norm() == 0.0);
    CHECK((k3.col(1) - e(4, 1)).norm() == 0.0);
    CHECK((k3.col(2) - e(4, 2)).norm() == 0.0);
    CHECK((k3.col(3) - 0.0625 * e(4, 3)).norm() == 0.0);

    const Matrix k4 = example_operator({4, 4, std::nullopt});
    CHECK((k4.col(0) - (e(4, 0) + e(4, 1) + e(4, 2))).norm() == 0.0);
    CHECK((k4.col(1) - (e(4, 1) + e(4, 2))).norm() == 0.0);
    CHECK((k4.col(2) - e(4, 2)).norm() == 0.0);
    CHECK((k4.col(3) - 0.0625 * e(4, 3)).norm() == 0.0);

    const Matrix k1 = example_operator({1, 4, std::nullopt});
    CHECK(k1.diagonal().real().transpose() == Eigen::RowVector4d(1.0, 0.5, 0.25, 0.125));
}

TEST_CASE("example specs are validated") {
    CHECK_THROWS_AS(example_operator({5, 6, std::nullopt}), InvalidArgument);
    CHECK_THROWS_AS(example_operator({2, 3, std::nullopt}), InvalidArgument);
    CHECK_THROWS_AS(example_operator({2, 4, std::vector<double>{0.5, 0.6, 0.1}}), InvalidArgument);
    CHECK_THROWS_AS(example_operator({2, 4, std::vector<double>{0.5, 0.2}}), InvalidArgument);
    CHECK_THROWS_AS(example_operator({2, 4, std::vector<double>{1.0, 0.5, 0.2}}), InvalidArgument);
    const Matrix k = example_operator({3, 5, std::vector<double>{0.9, 0.1}});
    CHECK(k(3, 3) == Complex(0.9));
    CHECK(k(4, 4) == Complex(0.1));
}

TEST_CASE("corpus run") {
    const auto rep = run_corpus(16);
    REQUIRE(rep.cases.size() == 4);
    CHECK(rep.all_pass());
    CHECK(rep.cases[0].simple.order == 1);
    CHECK(rep.cases[1].simple.order == 1);
    CHECK(rep.cases[2].simple.order == 2);
    CHECK(rep.cases[3].simple.order.str() == "exceeds_cap(2)");
    CHECK(io::dump(io::to_json(rep)) == io::dump(io::to_json(run_corpus(16))));
}

TEST_CASE("pencil and model round trips are byte-identical") {
    const Pencil p = Pencil::from_ar({example_operator({3, 6, std::nullopt})});
    const std::string a = io::dump(io::pencil_to_json(p));
    const std::string b = io::dump(io::pencil_to_json(io::pencil_from_json(io::json::parse(a))));
    CHECK(a == b);

    Matrix l = Matrix::Identity(2, 2);
    l(1, 0) = Complex(0.1, -0.3);
    const ARModel m({Matrix::Constant(2, 2, Complex(1.0 / 3.0, 0.7)), Matrix::Identity(2, 2) * 0.1}, l);
    const std::string c = io::dump(io::model_to_json(m));
    const std::string d = io::dump(io::model_to_json(io::model_from_json(io::json::parse(c))));
    CHECK(c == d);
}

TEST_CASE("json parsing errors") {
    CHECK_THROWS_AS(io::pencil_from_json(io::json::parse(R"({"x": 1})")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse(R"([[1, 2], [3]])")), InvalidArgument);
    CHECK_THROWS_AS(io::complex_from_json(io::json::parse(R"([1, 2, 3])")), InvalidArgument);
    CHECK(io::complex_from_json(io::json::parse("2.5")) == Complex(2.5, 0.0));
}

TEST_CASE("trajectory csv") {
    Trajectory tr;
    tr.dim = 2;
    tr.values = {Vector::Zero(2), Vector::Constant(2, Complex(1.5, -2.0))};
    std::ostringstream os;
    io::write_trajectory_csv(os, tr);
    CHECK(os.str() == "t,re1,im1,re2,im2\n0,0,0,0,0\n1,1.5,-2,1.5,-2\n");
}

TEST_CASE("sources and exit codes") {
    CHECK(load_pencil("jordan").dim() == 2);
    CHECK(load_pencil("example:3:8").dim() == 8);
    CHECK(load_model("example:2").dim() == 16);
    CHECK(load_model("jordan3").dim() == 3);
    CHECK_THROWS_AS(load_pencil("example:x"), InvalidArgument);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), InvalidArgument);

    CHECK(exit_code_for(ConsistencyError("x")) == 3);
    CHECK(exit_code_for(ClassificationError("x")) == 2);
    CHECK(exit_code_for(AssumptionViolated("x", {})) == 2);
    CHECK(exit_code_for(InvalidArgument("x")) == 1);
}
