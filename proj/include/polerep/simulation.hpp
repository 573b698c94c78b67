#pragma once

// Trajectories of AR(p) processes, the trend/stationary split of the
// representation, and a Monte Carlo probe of which inner products stay
// stationary.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "polerep/representation.hpp"

namespace polerep {

/// Per-replication seed: splitmix64 applied to master + (r + 1) * golden gamma.
/// Replication r never depends on which other replications ran.
std::uint64_t replication_seed(std::uint64_t master, std::uint64_t r);

/// eps_1..eps_T (index t-1 holds eps_t), eps = L w with w standard
/// circularly-symmetric complex Gaussian (real and imaginary parts N(0, 1/2)),
/// or real N(0, 1) when real_valued is set.
std::vector<Vector> sample_innovations(const ARModel& model, int T, std::uint64_t seed, bool real_valued = false);

struct TrajectoryComponents {
    std::vector<Vector> trend2, trend1, stationary, z0_term, z1_term;
};

struct Trajectory {
    Eigen::Index dim = 0;
    std::vector<Vector> values;  // X_0..X_T
    std::uint64_t seed = 0;
    std::optional<TrajectoryComponents> components;
    std::vector<Flag> support_flags;  // initial conditions inside the required subspaces

    int T() const { return static_cast<int>(values.size()) - 1; }
};

/// X_t = sum_j Phi_j X_{t-j} + eps_t for t = 1..T. `initial` holds
/// X_0, X_{-1}, ..., X_{-p+1} (most recent first).
Trajectory simulate_ar(const ARModel& model, const std::vector<Vector>& innovations, const std::vector<Vector>& initial);
Trajectory simulate_ar(const ARModel& model, int T, std::uint64_t seed, const std::vector<Vector>& initial,
                       bool real_valued = false);

/// Paths from the representation with eps_t = 0 for t <= 0:
///   I1: X_t = Z0 + Ψ(1) sum_{s<=t} eps_s + nu_t
///   I2: X_t = Z0 + t Z1 + Υ_{-2} sum_{r<=t} sum_{s<=r} eps_s - Υ_{-1} sum_{s<=t} eps_s + nu_t
/// with nu_t = sum_{k=0}^{K} Ψ̃_k eps_{t-k}. Z1 is required for I2 and
/// rejected for I1.
Trajectory build_representation_path(const Decomposition& decomp, const std::vector<Vector>& innovations,
                                     const Vector& z0, const std::optional<Vector>& z1 = std::nullopt);

struct StationarityVerdict {
    Vector direction;
    double growth_slope = 0.0;
    bool stationary = false;
    int replications = 0;
    double threshold = 0.3;
    std::array<int, 3> times{};
    std::array<double, 3> variances{};
};

/// Ensemble variance of <X_t, x> = x^H X_t at t = T/4, T/2, T over independent
/// replications with Z0 (and Z1) drawn inside the admissible subspaces; the
/// verdict is stationary iff the log-log slope is below `threshold`.
StationarityVerdict stationarity_probe(const ARModel& model, const Decomposition& decomp, const Vector& direction,
                                       int T, int replications, std::uint64_t seed, double threshold = 0.3,
                                       bool real_valued = false);

}  // namespace polerep
