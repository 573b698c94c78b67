#pragma once

// Pole order of A(z)^{-1} at a spectral point: the operator conditions for
// simple and second-order poles, closed-form Laurent principal parts, and a
// contour-integral oracle that checks both.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "polerep/linalg.hpp"
#include "polerep/pencil.hpp"
#include "polerep/types.hpp"

namespace polerep {

using Pencil = MatrixPencil<double>;
using Subspace = SubspaceBasis<double>;

struct PoleOptions {
    double rank_tol = 0.0;          // A(z0) rank cutoff; 0 = 1e-8 * max(1, ||A(z0)||)
    double bijectivity_tol = 0.0;   // sigma_min(B1), sigma_min(B2) cutoff; 0 = 1e-8 * max(1, ||A'(z0)||)
    double gap_tol = 1e-8;          // direct-sum and subspace-rank cutoff
    double radius = 0.0;            // oracle contour radius; 0 = auto
    int nodes = 512;                // oracle nodes before doubling
    int cap = 4;                    // largest pole order resolved
    double order_threshold = 1e-7;  // relative size of a nonzero Laurent coefficient
};

struct PoleOrder {
    int value = 0;             // order when !exceeds_cap
    bool exceeds_cap = false;
    int cap = 0;
    std::string str() const {
        return exceeds_cap ? "exceeds_cap(" + std::to_string(cap) + ")" : std::to_string(value);
    }
    bool operator==(int m) const { return !exceeds_cap && value == m; }
};

struct Flag {
    std::string name;
    bool value{};
};

struct PoleDiagnostics {
    double sigma_min_B1 = std::numeric_limits<double>::quiet_NaN();
    double sigma_min_B2 = std::numeric_limits<double>::quiet_NaN();
    double direct_sum_gap = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> principal_norms;  // ||N_{-1}||, ||N_{-2}||, ... from the oracle
};

struct PoleVerdict {
    Complex z0;
    PoleOrder order;
    bool holds{};               // the classified property (simple / second order)
    std::vector<Flag> flags;    // equivalent conditions; all equal to `holds`
    PoleDiagnostics diagnostics;
};

/// Operators built from the Taylor coefficients of A at z0. B1 and B2 are
/// stored in the orthonormal coordinates of their domains and codomains;
/// every subspace is lifted to the ambient space.
struct StructuredOperators {
    Complex z0;
    Matrix A0, A1, A2, A3;   // A(z0) and its first three derivatives
    Matrix A0_pinv;
    FundamentalSubspaces<double> fs;
    Matrix B1;               // dim ker A(z0) x dim ker A(z0)
    Subspace ker_B1, coker_B1, ran_B1, coran_B1;
    Matrix B2;               // dim ker B1 x dim coker B1
    Matrix V, Vtilde;
    double sigma_min_B1 = 0.0;
    double sigma_min_B2 = std::numeric_limits<double>::infinity();
    double rank_tol = 0.0;
    double bijectivity_tol = 0.0;

    bool b1_bijective() const { return sigma_min_B1 > bijectivity_tol; }
    bool b2_bijective() const { return sigma_min_B2 > bijectivity_tol; }
    /// B1^† P_coker A(z0) as an ambient operator.
    Matrix b1_pinv_ambient() const;
};

StructuredOperators structured_operators(const Pencil& p, Complex z0, const PoleOptions& opts = {});

struct LaurentExpansion {
    Complex z0;
    int min_order = 0;
    int k_min = 0, k_max = 0;
    std::vector<Matrix> coeffs;  // N_k for k in [k_min, k_max]
    double radius = 0.0;
    int nodes_used = 0;
    double doubling_change = 0.0;

    const Matrix& N(int k) const;
};

/// N_k = (1/2πi)∮ (z - z0)^{-k-1} A(z)^{-1} dz by the trapezoidal rule on a
/// circle, evaluated with `nodes` and 2 * `nodes` points; the finer result is
/// returned and the relative change between the two is the convergence
/// certificate (must be <= 1e-8).
LaurentExpansion laurent_oracle(const Pencil& p, Complex z0, int k_min, int k_max, double radius = 0.0,
                                int nodes = 512, double order_threshold = 1e-7);

/// Default contour radius: half the distance from z0 to the nearest other
/// singular point, capped at 0.1.
double default_radius(const Pencil& p, Complex z0);

PoleOrder pole_order(const Pencil& p, Complex z0, const PoleOptions& opts = {});

PoleVerdict classify_simple_pole(const Pencil& p, Complex z0, const PoleOptions& opts = {});
PoleVerdict classify_second_order(const Pencil& p, Complex z0, const PoleOptions& opts = {});

/// N_{-1} = B1^{-1} P_coker A(z0), lifted to the ambient space.
Matrix residue_simple(const Pencil& p, Complex z0, const PoleOptions& opts = {});
Matrix residue_simple(const StructuredOperators& so);

/// (N_{-2}, N_{-1}) from B2, V, Ṽ and B1^†.
std::pair<Matrix, Matrix> laurent_principal_second(const Pencil& p, Complex z0, const PoleOptions& opts = {});
std::pair<Matrix, Matrix> laurent_principal_second(const StructuredOperators& so);

/// (1/2πi)∮ (zI - K)^{-1} dz around sigma.
Matrix riesz_projection(const Matrix& k, Complex sigma, double radius = 0.0, int nodes = 512);

}  // namespace polerep
