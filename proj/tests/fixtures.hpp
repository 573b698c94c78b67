#pragma once

// Random pencils with a singular point at 1 of known order.

#include <random>
#include <string>
#include <vector>

#include "polerep/pole_analysis.hpp"

namespace fixtures {

using polerep::Complex;
using polerep::Matrix;
using polerep::Pencil;

inline Matrix random_complex(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = scale * Complex(u(rng), u(rng));
    return m;
}

/// Rank-r complex matrix of size rows x cols.
inline Matrix random_rank(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
    if (r == 0) return Matrix::Zero(rows, cols);
    return random_complex(rng, rows, r) * random_complex(rng, r, cols);
}

struct UnitRootPencil {
    std::string label;
    Pencil pencil;
    int order;  // pole order of the inverse at 1
};

// S J S^{-1} with J = blockdiag(head, mu_1, ..., mu_m), |mu| <= 1/2
inline Matrix similar(std::mt19937_64& rng, const Matrix& head, Eigen::Index n) {
    std::uniform_real_distribution<double> mu(-0.5, 0.5);
    Matrix j = Matrix::Zero(n, n);
    j.topLeftCorner(head.rows(), head.cols()) = head;
    for (Eigen::Index i = head.rows(); i < n; ++i) j(i, i) = Complex(mu(rng), 0.0);
    const Matrix s = Matrix::Identity(n, n) + random_complex(rng, n, n, 0.3);
    return s * j * s.partialPivLu().inverse();
}

inline Matrix jordan_block(Eigen::Index k) {
    Matrix j = Matrix::Identity(k, k);
    for (Eigen::Index i = 0; i + 1 < k; ++i) j(i, i + 1) = 1.0;
    return j;
}

/// `count` pencils cycling through six families: simple poles (one- and
/// two-dimensional kernel), second- and third-order poles of I - zK, and
/// quadratic pencils (I - zK)(I - zG) with ||G|| <= 0.3.
inline std::vector<UnitRootPencil> unit_root_pencils(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(3, 6);
    std::vector<UnitRootPencil> out;
    for (int i = 0; i < count; ++i) {
        const Eigen::Index n = dim(rng);
        const int family = i % 6;
        Matrix k;
        int order = 1;
        switch (family) {
            case 0: k = similar(rng, Matrix::Identity(1, 1), n); break;
            case 1: k = similar(rng, Matrix::Identity(2, 2), n); break;
            case 2: k = similar(rng, jordan_block(2), n); order = 2; break;
            case 3: k = similar(rng, jordan_block(3), n); order = 3; break;
            case 4: k = similar(rng, Matrix::Identity(1, 1), n); break;
            case 5: k = similar(rng, jordan_block(2), n); order = 2; break;
        }
        const Matrix id = Matrix::Identity(n, n);
        if (family < 4) {
            out.push_back({"linear/" + std::to_string(family) + "/" + std::to_string(i), Pencil({id, -k}), order});
        } else {
            Matrix g = random_complex(rng, n, n);
            g *= 0.3 / polerep::operator_norm<double>(g);
            // (I - zK)(I - zG) = I - z(K + G) + z^2 KG
            out.push_back({"quadratic/" + std::to_string(family) + "/" + std::to_string(i),
                           Pencil({id, Matrix(-(k + g)), Matrix(k * g)}), order});
        }
    }
    return out;
}

}  // namespace fixtures
