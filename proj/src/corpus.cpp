#include "polerep/corpus.hpp"

#include <chrono>
#include <cmath>

namespace polerep {

namespace {

// first diagonal position left free by the rank-one/Jordan-type head
int first_free(int id) { return id == 1 || id == 2 ? 2 : 4; }

}  // namespace

std::vector<double> example_lambdas(const ExampleSpec& spec) {
    if (spec.id < 1 || spec.id > 4) throw InvalidArgument("example id must be 1, 2, 3 or 4");
    if (spec.N < 4) throw InvalidArgument("example truncation N must be >= 4");
    const int count = spec.N - first_free(spec.id) + 1;
    if (spec.lambdas) {
        const auto& l = *spec.lambdas;
        if (static_cast<int>(l.size()) != count)
            throw InvalidArgument("example " + std::to_string(spec.id) + " at N = " + std::to_string(spec.N) +
                                  " needs " + std::to_string(count) + " lambdas");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!(l[i] > 0.0 && l[i] < 1.0)) throw InvalidArgument("lambdas must lie in (0, 1)");
            if (i > 0 && !(l[i] < l[i - 1])) throw InvalidArgument("lambdas must be strictly decreasing");
        }
        return l;
    }
    std::vector<double> out;
    for (int j = first_free(spec.id); j <= spec.N; ++j)
        out.push_back(std::ldexp(1.0, spec.id == 1 ? -(j - 1) : -j));
    return out;
}

Matrix example_operator(const ExampleSpec& spec) {
    const auto lambdas = example_lambdas(spec);
    const Eigen::Index n = spec.N;
    Matrix k = Matrix::Zero(n, n);
    const int free = first_free(spec.id);
    for (int j = free; j <= spec.N; ++j) k(j - 1, j - 1) = lambdas[static_cast<std::size_t>(j - free)];
    switch (spec.id) {
        case 1:
            k(0, 0) = 1;
            break;
        case 2:
            k(0, 0) = k(1, 0) = 1;
            break;
        case 3:
            k(0, 0) = k(1, 0) = k(2, 0) = 1;
            k(1, 1) = 1;
            k(2, 2) = 1;
            break;
        case 4:
            k(0, 0) = k(1, 0) = k(2, 0) = 1;
            k(1, 1) = k(2, 1) = 1;
            k(2, 2) = 1;
            break;
    }
    return k;
}

PoleOrder example_expected_order(int id) {
    PoleOrder o;
    o.cap = 2;
    switch (id) {
        case 1:
        case 2: o.value = 1; break;
        case 3: o.value = 2; break;
        case 4: o.exceeds_cap = true; break;
        default: throw InvalidArgument("example id must be 1, 2, 3 or 4");
    }
    return o;
}

ARModel example_model(const ExampleSpec& spec) {
    return ARModel({example_operator(spec)}, Matrix::Identity(spec.N, spec.N));
}

Matrix jordan_operator(bool augmented) {
    Matrix j = Matrix::Zero(augmented ? 3 : 2, augmented ? 3 : 2);
    j(0, 0) = j(0, 1) = j(1, 1) = 1;
    if (augmented) j(2, 2) = 0.5;
    return j;
}

Pencil jordan_pencil(bool augmented) { return Pencil::from_ar({jordan_operator(augmented)}); }

ARModel jordan_model(bool augmented) {
    const Eigen::Index n = augmented ? 3 : 2;
    return ARModel({jordan_operator(augmented)}, Matrix::Identity(n, n));
}

bool CorpusReport::all_pass() const {
    for (const auto& c : cases)
        if (!c.pass) return false;
    return !cases.empty();
}

CorpusReport run_corpus(int N) {
    const auto start = std::chrono::steady_clock::now();
    CorpusReport rep;
    rep.N = N;
    PoleOptions opts;
    opts.cap = 2;
    const Complex one(1.0, 0.0);
    for (int id = 1; id <= 4; ++id) {
        CorpusCase c;
        c.name = "example" + std::to_string(id);
        c.spec = ExampleSpec{id, N, std::nullopt};
        c.expected = example_expected_order(id);
        try {
            c.lambdas = example_lambdas(c.spec);
            const Pencil p = Pencil::from_ar({example_operator(c.spec)});
            c.simple = classify_simple_pole(p, one, opts);
            if (!c.simple.holds) c.second = classify_second_order(p, one, opts);
            const PoleOrder got = c.simple.order;
            c.pass = got.exceeds_cap == c.expected.exceeds_cap && got.value == c.expected.value;

            const auto lx = laurent_oracle(p, one, -(opts.cap + 2), 0, opts.radius, opts.nodes, opts.order_threshold);
            c.doubling_change = lx.doubling_change;
            if (got == 1) {
                const Matrix n1 = residue_simple(p, one, opts);
                c.formula_rel_error = (n1 - lx.N(-1)).norm() / lx.N(-1).norm();
            } else if (got == 2) {
                const auto [n2, n1] = laurent_principal_second(p, one, opts);
                const double scale = std::max(lx.N(-2).norm(), lx.N(-1).norm());
                c.formula_rel_error = std::max((n2 - lx.N(-2)).norm(), (n1 - lx.N(-1)).norm()) / scale;
            }
            if (c.formula_rel_error > 1e-7) c.pass = false;
        } catch (const Error& e) {
            c.error = e.what();
            c.pass = false;
        }
        rep.cases.push_back(std::move(c));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace polerep
