#include "polerep/simulation.hpp"

#include <cmath>
#include <random>

namespace polerep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index n, bool real_valued) {
    Vector w(n);
    if (real_valued) {
        std::normal_distribution<double> nd(0.0, 1.0);
        for (Eigen::Index i = 0; i < n; ++i) w(i) = Complex(nd(rng), 0.0);
    } else {
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = nd(rng);
            w(i) = Complex(re, nd(rng));
        }
    }
    return w;
}

bool member(const Subspace& s, const Vector& v) {
    const Vector resid = v - orthogonal_projector<double>(s) * v;
    return resid.norm() <= 1e-8 * std::max(1.0, v.norm());
}

Subspace range_of(const Matrix& a) {
    return fundamental_subspaces<double>(a, 1e-8 * std::max(1.0, operator_norm<double>(a))).ran;
}

// Representation terms at a single time t (1 <= t <= T); s1/s2 are the
// partial sums up to t.
struct Terms {
    Vector trend2, trend1, stationary;
};

Terms terms_at(const Decomposition& d, const std::vector<Vector>& eps, int t, const Vector& s1, const Vector& s2) {
    const Eigen::Index n = d.dim();
    Terms out{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
    for (int k = 0; k <= d.truncation_K && k < t; ++k)
        out.stationary += d.psitilde[static_cast<std::size_t>(k)] * eps[static_cast<std::size_t>(t - k - 1)];
    if (d.kind == Kind::I1) {
        out.trend1 = d.psi1 * s1;
    } else {
        out.trend2 = d.upsilon2 * s2;
        out.trend1 = -(d.upsilon1 * s1);
    }
    return out;
}

void check_innovations(const std::vector<Vector>& eps, Eigen::Index n) {
    if (eps.empty()) throw InvalidArgument("need at least one innovation (T >= 1)");
    for (const auto& e : eps)
        if (e.size() != n) throw InvalidArgument("innovation dimension does not match the model");
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t r) {
    return splitmix64(master + (r + 1) * 0x9e3779b97f4a7c15ULL);
}

std::vector<Vector> sample_innovations(const ARModel& model, int T, std::uint64_t seed, bool real_valued) {
    if (T < 1) throw InvalidArgument("sample_innovations: T must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(T));
    const Matrix& l = model.sigma_factor();
    for (int t = 0; t < T; ++t) out.push_back(l * gaussian_vector(rng, model.dim(), real_valued));
    return out;
}

Trajectory simulate_ar(const ARModel& model, const std::vector<Vector>& innovations,
                       const std::vector<Vector>& initial) {
    const Eigen::Index n = model.dim();
    const int p = model.order();
    if (static_cast<int>(initial.size()) != p)
        throw InvalidArgument("simulate_ar: need exactly p = " + std::to_string(p) + " initial vectors");
    for (const auto& v : initial)
        if (v.size() != n) throw InvalidArgument("simulate_ar: initial vector dimension does not match the model");
    check_innovations(innovations, n);

    // hist[0] = X_{-p+1}, ..., hist[p-1] = X_0, then X_1, X_2, ...
    std::vector<Vector> hist(initial.rbegin(), initial.rend());
    const int T = static_cast<int>(innovations.size());
    hist.reserve(static_cast<std::size_t>(p + T));
    for (int t = 1; t <= T; ++t) {
        Vector x = innovations[static_cast<std::size_t>(t - 1)];
        const std::size_t now = hist.size();
        for (int j = 1; j <= p; ++j) x += model.phis()[static_cast<std::size_t>(j - 1)] * hist[now - static_cast<std::size_t>(j)];
        hist.push_back(std::move(x));
    }
    Trajectory tr;
    tr.dim = n;
    tr.values.assign(hist.begin() + (p - 1), hist.end());
    return tr;
}

Trajectory simulate_ar(const ARModel& model, int T, std::uint64_t seed, const std::vector<Vector>& initial,
                       bool real_valued) {
    Trajectory tr = simulate_ar(model, sample_innovations(model, T, seed, real_valued), initial);
    tr.seed = seed;
    return tr;
}

Trajectory build_representation_path(const Decomposition& decomp, const std::vector<Vector>& innovations,
                                     const Vector& z0, const std::optional<Vector>& z1) {
    const Eigen::Index n = decomp.dim();
    check_innovations(innovations, n);
    if (z0.size() != n) throw InvalidArgument("build_representation_path: Z0 dimension does not match");
    if (decomp.kind == Kind::I1 && z1) throw InvalidArgument("build_representation_path: Z1 given for an I1 decomposition");
    if (decomp.kind == Kind::I2 && !z1) throw InvalidArgument("build_representation_path: Z1 is required for I2");
    if (z1 && z1->size() != n) throw InvalidArgument("build_representation_path: Z1 dimension does not match");

    Trajectory tr;
    tr.dim = n;
    TrajectoryComponents c;
    const Vector zero = Vector::Zero(n);
    const Vector z1v = z1 ? *z1 : zero;
    const int T = static_cast<int>(innovations.size());
    Vector s1 = zero, s2 = zero;
    for (int t = 0; t <= T; ++t) {
        Terms terms{zero, zero, zero};
        if (t > 0) {
            s1 += innovations[static_cast<std::size_t>(t - 1)];
            s2 += s1;
            terms = terms_at(decomp, innovations, t, s1, s2);
        }
        const Vector z1t = z1v * static_cast<double>(t);
        tr.values.push_back(z0 + z1t + terms.trend2 + terms.trend1 + terms.stationary);
        c.trend2.push_back(std::move(terms.trend2));
        c.trend1.push_back(std::move(terms.trend1));
        c.stationary.push_back(std::move(terms.stationary));
        c.z0_term.push_back(z0);
        c.z1_term.push_back(z1t);
    }
    tr.components = std::move(c);

    if (decomp.kind == Kind::I1) {
        tr.support_flags.push_back({"Z0_in_ran_Psi1", member(range_of(decomp.psi1), z0)});
    } else {
        const Subspace r2 = range_of(decomp.upsilon2);
        const Subspace r21 = subspace_sum<double>(r2, range_of(decomp.upsilon1));
        tr.support_flags.push_back({"Z1_in_ran_U2", member(r2, z1v)});
        tr.support_flags.push_back({"Z0_in_ran_U2_plus_ran_U1", member(r21, z0)});
        tr.support_flags.push_back({"Z1_in_ran_U2_plus_ran_U1", member(r21, z1v)});
    }
    return tr;
}

StationarityVerdict stationarity_probe(const ARModel& model, const Decomposition& decomp, const Vector& direction,
                                       int T, int replications, std::uint64_t seed, double threshold,
                                       bool real_valued) {
    if (replications < 100) throw InvalidArgument("stationarity_probe: need at least 100 replications");
    if (T < 8) throw InvalidArgument("stationarity_probe: T must be >= 8");
    const Eigen::Index n = model.dim();
    if (direction.size() != n || decomp.dim() != n)
        throw InvalidArgument("stationarity_probe: dimension mismatch");

    // Z0 in ker Phi(1) for I1; Z1 in ran Υ_{-2}, Z0 in ran Υ_{-2} + ran Υ_{-1} for I2
    Subspace z0_space(n), z1_space(n);
    if (decomp.kind == Kind::I1) {
        z0_space = range_of(decomp.psi1);
    } else {
        z1_space = range_of(decomp.upsilon2);
        z0_space = subspace_sum<double>(z1_space, range_of(decomp.upsilon1));
    }

    StationarityVerdict v;
    v.direction = direction;
    v.replications = replications;
    v.threshold = threshold;
    v.times = {T / 4, T / 2, T};
    std::array<std::vector<Complex>, 3> samples;

    for (int r = 0; r < replications; ++r) {
        const std::uint64_t rs = replication_seed(seed, static_cast<std::uint64_t>(r));
        const auto eps = sample_innovations(model, T, rs, real_valued);
        std::mt19937_64 zrng(splitmix64(rs ^ 0x5a5a5a5a5a5a5a5aULL));
        auto draw = [&](const Subspace& s) -> Vector {
            if (s.empty()) return Vector::Zero(n);
            return s.basis() * gaussian_vector(zrng, s.dim(), real_valued);
        };
        const Vector z0 = draw(z0_space);
        const Vector z1 = decomp.kind == Kind::I2 ? draw(z1_space) : Vector::Zero(n);

        Vector s1 = Vector::Zero(n), s2 = Vector::Zero(n);
        std::size_t next = 0;
        for (int t = 1; t <= T && next < 3; ++t) {
            s1 += eps[static_cast<std::size_t>(t - 1)];
            s2 += s1;
            if (t != v.times[next]) continue;
            const auto terms = terms_at(decomp, eps, t, s1, s2);
            const Vector x = z0 + z1 * static_cast<double>(t) + terms.trend2 + terms.trend1 + terms.stationary;
            samples[next].push_back(direction.dot(x));  // dot conjugates the first argument
            ++next;
        }
    }

    std::array<double, 3> lx{}, ly{};
    for (std::size_t i = 0; i < 3; ++i) {
        Complex mean(0.0);
        for (const auto& s : samples[i]) mean += s;
        mean /= static_cast<double>(replications);
        double var = 0.0;
        for (const auto& s : samples[i]) var += std::norm(s - mean);
        var /= static_cast<double>(replications - 1);
        v.variances[i] = var;
        lx[i] = std::log(static_cast<double>(v.times[i]));
        ly[i] = std::log(std::max(var, 1e-300));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    v.growth_slope = sxy / sxx;
    v.stationary = v.growth_slope < threshold;
    return v;
}

}  // namespace polerep
