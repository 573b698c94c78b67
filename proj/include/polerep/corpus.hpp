#pragma once

// Truncated versions of the four example operators, the 2x2 Jordan fixture,
// and the batch run that classifies all of them.

#include <optional>
#include <string>
#include <vector>

#include "polerep/representation.hpp"

namespace polerep {

struct ExampleSpec {
    int id = 2;   // 1..4
    int N = 16;   // truncation dimension, >= 4
    std::optional<std::vector<double>> lambdas;  // free diagonal entries, in order
};

/// Matrix of K in the standard basis, columns K(e_j):
///   1: diag(1, 1/2, 1/4, ...)
///   2: K e_1 = e_1 + e_2, K e_j = λ_j e_j (j >= 2)
///   3: K e_1 = e_1 + e_2 + e_3, K e_2 = e_2, K e_3 = e_3, K e_j = λ_j e_j (j >= 4)
///   4: K e_1 = e_1 + e_2 + e_3, K e_2 = e_2 + e_3, K e_3 = e_3, K e_j = λ_j e_j (j >= 4)
/// Default λ_j = 2^{-j} (example 1: entry j is 2^{-(j-1)}).
Matrix example_operator(const ExampleSpec& spec);

/// The diagonal values actually used for the free positions.
std::vector<double> example_lambdas(const ExampleSpec& spec);

/// Orders the examples are known to have at z = 1 (cap 2 for example 4).
PoleOrder example_expected_order(int id);

/// AR(1) model with Phi_1 = K and Σ = I.
ARModel example_model(const ExampleSpec& spec);

/// [[1, 1], [0, 1]]; with `augmented`, blockdiag(J, 1/2).
Matrix jordan_operator(bool augmented = false);
Pencil jordan_pencil(bool augmented = false);
ARModel jordan_model(bool augmented = false);

struct CorpusCase {
    std::string name;
    ExampleSpec spec;
    std::vector<double> lambdas;
    PoleOrder expected;
    PoleVerdict simple;        // classify_simple_pole
    PoleVerdict second;        // classify_second_order
    double formula_rel_error = 0.0;  // closed form vs oracle when applicable, else 0
    double doubling_change = 0.0;
    bool pass = false;
    std::string error;         // set when a domain error was raised
};

struct CorpusReport {
    int N = 16;
    std::vector<CorpusCase> cases;
    double seconds = 0.0;
    bool all_pass() const;
};

/// Examples 1-4 at truncation N, z0 = 1, cap 2.
CorpusReport run_corpus(int N = 16);

}  // namespace polerep
