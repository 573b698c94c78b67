#pragma once

// Matrix polynomial pencils A(z) = sum_k z^k A_k: evaluation, exact
// derivatives, pointwise inverses and the finite spectrum via a companion
// linearization.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "polerep/linalg.hpp"
#include "polerep/types.hpp"

namespace polerep {

template <typename Real>
class MatrixPencil {
public:
    using Scalar = std::complex<Real>;
    using MatrixType = CMatrix<Real>;

    MatrixPencil() = default;

    explicit MatrixPencil(std::vector<MatrixType> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidArgument("pencil needs at least one coefficient");
        const Eigen::Index n = coeffs_[0].rows();
        for (const auto& c : coeffs_) {
            if (c.rows() != n || c.cols() != n)
                throw InvalidArgument("pencil coefficients must all be square of the same size");
            require_finite(c, "pencil coefficient");
        }
    }

    /// Phi(z) = I - sum_j z^j Phi_j.
    static MatrixPencil from_ar(const std::vector<MatrixType>& phis) {
        if (phis.empty()) throw InvalidArgument("from_ar: need at least one autoregressive operator");
        const Eigen::Index n = phis[0].rows();
        std::vector<MatrixType> c;
        c.reserve(phis.size() + 1);
        c.push_back(MatrixType::Identity(n, n));
        for (const auto& phi : phis) {
            if (phi.rows() != n || phi.cols() != n)
                throw InvalidArgument("from_ar: autoregressive operators must be square of equal size");
            c.push_back(-phi);
        }
        return MatrixPencil(std::move(c));
    }

    Eigen::Index dim() const { return coeffs_.empty() ? 0 : coeffs_[0].rows(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<MatrixType>& coeffs() const { return coeffs_; }
    bool is_linear() const { return degree() <= 1; }

    MatrixType eval(Scalar z) const {
        MatrixType acc = coeffs_.back();
        for (int k = degree() - 1; k >= 0; --k) acc = (acc * z + coeffs_[k]).eval();
        return acc;
    }

    /// k-th derivative at z; zero when k exceeds the degree.
    MatrixType derivative(int k, Scalar z) const {
        if (k < 0) throw InvalidArgument("derivative order must be nonnegative");
        const Eigen::Index n = dim();
        if (k > degree()) return MatrixType::Zero(n, n);
        // A^(k)(z) = sum_{j>=k} j!/(j-k)! z^(j-k) A_j, by Horner in z
        MatrixType acc = MatrixType::Zero(n, n);
        for (int j = degree(); j >= k; --j) {
            Real w(1);
            for (int i = 0; i < k; ++i) w *= static_cast<Real>(j - i);
            acc = (acc * z + coeffs_[j] * Scalar(w)).eval();
        }
        return acc;
    }

    /// Pencil s -> A(c + s).
    MatrixPencil shifted(Scalar c) const {
        std::vector<MatrixType> out;
        Real fact(1);
        for (int k = 0; k <= degree(); ++k) {
            if (k > 0) fact *= static_cast<Real>(k);
            out.push_back(derivative(k, c) / Scalar(fact));
        }
        return MatrixPencil(std::move(out));
    }

    /// A(z)^{-1}; raises SingularError when sigma_min(A(z)) <= tol
    /// (tol = 0: eps * n * sigma_max).
    MatrixType inverse_at(Scalar z, Real tol = Real(0)) const {
        const MatrixType a = eval(z);
        Eigen::JacobiSVD<MatrixType> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const Real smin = sv(sv.size() - 1);
        const Real t = tol > Real(0) ? tol : default_rank_tol<Real>(sv, a.rows(), a.cols());
        if (!(smin > t)) throw SingularError(Complex(z), static_cast<double>(smin));
        MatrixType vs = svd.matrixV();
        for (Eigen::Index k = 0; k < vs.cols(); ++k) vs.col(k) /= sv(k);
        return vs * svd.matrixU().adjoint();
    }

    Real smallest_singular_value(Scalar z) const {
        Eigen::JacobiSVD<MatrixType> svd(eval(z));
        const auto& sv = svd.singularValues();
        return sv(sv.size() - 1);
    }

private:
    std::vector<MatrixType> coeffs_;
};

template <typename Real>
struct SpectralPoint {
    std::complex<Real> z;
    int multiplicity{};  // eigenvalue count of the linearization in this cluster
};

namespace detail {

// Deterministic trial shifts for pencils whose constant term is singular.
inline constexpr std::array<std::complex<double>, 6> kTrialShifts = {
    std::complex<double>(0.3141592653589793, 0.2718281828459045),
    std::complex<double>(-0.5772156649015329, 0.6180339887498949),
    std::complex<double>(0.7071067811865476, -0.4142135623730950),
    std::complex<double>(1.6180339887498949, 0.1234567890123456),
    std::complex<double>(-1.2020569031595942, -0.9159655941772190),
    std::complex<double>(2.5029078750958928, 1.4142135623730951),
};

}  // namespace detail

/// All finite singular points of the pencil. Eigenvalues of the block
/// companion matrix of the reversed (shifted) polynomial are mapped back by
/// z = c + 1/w; eigenvalues within cluster_tol * max(1, |z|) of each other
/// are merged into one point at their mean, which is accurate even when the
/// individual eigenvalues of a defective cluster are not.
template <typename Real>
std::vector<SpectralPoint<Real>> finite_spectrum(const MatrixPencil<Real>& p, Real cluster_tol = Real(1e-4)) {
    using MatrixType = CMatrix<Real>;
    using Scalar = std::complex<Real>;
    const Eigen::Index n = p.dim();
    const int deg = p.degree();

    auto well_conditioned = [&](const MatrixType& m) {
        Eigen::JacobiSVD<MatrixType> svd(m);
        const auto& sv = svd.singularValues();
        return sv(sv.size() - 1) > Real(1e-10) * std::max(Real(1), sv(0));
    };

    Scalar shift(0);
    bool found = well_conditioned(p.coeffs()[0]);
    for (std::size_t i = 0; !found && i < detail::kTrialShifts.size(); ++i) {
        const Scalar c(static_cast<Real>(detail::kTrialShifts[i].real()),
                       static_cast<Real>(detail::kTrialShifts[i].imag()));
        if (well_conditioned(p.eval(c))) {
            shift = c;
            found = true;
        }
    }
    if (!found) throw InvalidArgument("pencil is singular at every probe point (identically singular?)");
    if (deg == 0) return {};

    const MatrixPencil<Real> q = shift == Scalar(0) ? p : p.shifted(shift);
    const auto lu = q.coeffs()[0].partialPivLu();
    MatrixType comp = MatrixType::Zero(n * deg, n * deg);
    for (int k = 1; k <= deg; ++k) comp.block(0, (k - 1) * n, n, n) = -lu.solve(q.coeffs()[k]);
    for (int k = 1; k < deg; ++k) comp.block(k * n, (k - 1) * n, n, n) = MatrixType::Identity(n, n);

    Eigen::ComplexEigenSolver<MatrixType> es(comp, false);
    const Real scale = std::max(Real(1), operator_norm<Real>(comp));
    std::vector<Scalar> zs;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const Scalar w = es.eigenvalues()(i);
        if (std::abs(w) <= Real(1e-14) * scale) continue;  // eigenvalue at infinity
        zs.push_back(shift + Scalar(1) / w);
    }

    // single-linkage clustering
    const std::size_t m = zs.size();
    std::vector<std::size_t> label(m);
    for (std::size_t i = 0; i < m; ++i) label[i] = i;
    auto find = [&](std::size_t i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Real d = std::abs(zs[i] - zs[j]);
            if (d <= cluster_tol * std::max({Real(1), std::abs(zs[i]), std::abs(zs[j])}))
                label[find(i)] = find(j);
        }
    std::vector<SpectralPoint<Real>> out;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            out.push_back({zs[i], 1});
        } else {
            auto& pt = out[static_cast<std::size_t>(it - roots.begin())];
            pt.z += zs[i];
            ++pt.multiplicity;
        }
    }
    for (auto& pt : out) pt.z /= static_cast<Real>(pt.multiplicity);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.z) != std::abs(b.z)) return std::abs(a.z) < std::abs(b.z);
        return std::arg(a.z) < std::arg(b.z);
    });
    return out;
}

template <typename Real>
struct SpectrumReport {
    std::vector<std::complex<Real>> points;  // singular points with |z| <= 1 + margin
    Real margin{};
    std::optional<std::complex<Real>> unit_disk_clean_except;  // set to 1 iff 1 is the only point
};

template <typename Real>
SpectrumReport<Real> unit_disk_spectrum(const MatrixPencil<Real>& p, Real margin = Real(1e-6)) {
    SpectrumReport<Real> rep;
    rep.margin = margin;
    for (const auto& pt : finite_spectrum(p))
        if (std::abs(pt.z) <= Real(1) + margin) rep.points.push_back(pt.z);
    if (rep.points.size() == 1 && std::abs(rep.points[0] - std::complex<Real>(1)) <= Real(1e-8))
        rep.unit_disk_clean_except = std::complex<Real>(1);
    return rep;
}

}  // namespace polerep
