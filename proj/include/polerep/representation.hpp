#pragma once

// I(1)/I(2) representations of autoregressive laws of motion
// X_t = sum_j Phi_j X_{t-j} + eps_t, built from the Laurent expansion of
// Phi(z)^{-1} at z = 1, and the cointegrating/attractor subspaces.

#include <string>
#include <vector>

#include "polerep/pole_analysis.hpp"

namespace polerep {

class ARModel {
public:
    /// sigma_factor is L with Σ = L L^H; it must have full rank.
    ARModel(std::vector<Matrix> phis, Matrix sigma_factor);

    Eigen::Index dim() const { return sigma_factor_.rows(); }
    int order() const { return static_cast<int>(phis_.size()); }
    const std::vector<Matrix>& phis() const { return phis_; }
    const Matrix& sigma_factor() const { return sigma_factor_; }
    Matrix sigma() const { return sigma_factor_ * sigma_factor_.adjoint(); }
    Pencil pencil() const { return Pencil::from_ar(phis_); }
    /// Phi(1) = I - sum_j Phi_j.
    Matrix phi_at_one() const;

private:
    std::vector<Matrix> phis_;
    Matrix sigma_factor_;
};

struct Assumption1Report {
    double sigma_min_factor = 0.0;      // sigma_min(L) > 0 <=> Σ positive definite
    std::vector<Complex> disk_points;   // singular points with |z| <= 1 + margin
    bool unit_root = false;             // 1 is a singular point
    bool clean = false;                 // 1 is the only singular point in the closed disk
    std::string note;
};

/// Raises AssumptionViolated when Σ is not positive definite, when Phi(1) is
/// invertible, or when another singular point lies in the closed unit disk.
Assumption1Report check_assumption1(const ARModel& model, double margin = 1e-6);

enum class Kind { I1, I2 };

inline const char* to_string(Kind k) { return k == Kind::I1 ? "I1" : "I2"; }

struct Decomposition {
    Kind kind = Kind::I1;
    Matrix psi1;                   // I1: Ψ(1) = -N_{-1}
    Matrix upsilon2, upsilon1;     // I2: Υ_{-2} = N_{-2}, Υ_{-1} = N_{-1}
    std::vector<Matrix> psitilde;  // Taylor coefficients about 0 of the holomorphic part, k = 0..K
    int truncation_K = 0;
    double tail_norm = 0.0;
    double taylor_radius = 0.0;
    double oracle_rel_error = 0.0; // closed form vs contour oracle, principal part

    Eigen::Index dim() const { return psitilde.empty() ? 0 : psitilde.front().rows(); }
    /// Truncated Ψ̃(z) = sum_k Ψ̃_k z^k.
    Matrix psitilde_at(Complex z) const;
    /// Ψ(z): Ψ(1) + (1-z)Ψ̃(z), or Υ_{-2} - (1-z)Υ_{-1} + (1-z)^2 Ψ̃(z).
    Matrix psi_at(Complex z) const;
};

Decomposition i1_decomposition(const ARModel& model, const PoleOptions& opts = {});
Decomposition i2_decomposition(const ARModel& model, const PoleOptions& opts = {});
/// Picks I1 or I2 from the pole order at 1.
Decomposition decompose(const ARModel& model, const PoleOptions& opts = {});

struct NamedSpace {
    std::string name;
    Subspace space;
};

struct CointegrationReport {
    Kind kind = Kind::I1;
    std::vector<NamedSpace> spaces;
    const Subspace& get(const std::string& name) const;
};

/// I1: cointegrating = coran Phi(1), attractor = ker Phi(1) (plus coker Ψ(1)
/// for cross-checking). I2: the two tiers coker Υ_{-2} and
/// coker Υ_{-2} ∩ coker Υ_{-1}, the trend ranges, and coker Υ_{-1}.
CointegrationReport cointegration_spaces(const ARModel& model, const Decomposition& decomp);

/// For p = 1, the ranges and cokernels of Υ_{-2}, Υ_{-1} from Phi(1) and
/// Phi(1)^† alone.
CointegrationReport p1_subspace_formulas(const Matrix& phi1, double tol = 1e-8);

struct Multiplicity {
    int algebraic = 0;
    int geometric = 0;
    PoleOrder order;
};

/// Algebraic (rank of the Riesz projection) and geometric (dim ker(I - Phi_1))
/// multiplicity of the unit eigenvalue of Phi_1.
Multiplicity algebraic_geometric_multiplicity(const Matrix& phi1);

}  // namespace polerep
