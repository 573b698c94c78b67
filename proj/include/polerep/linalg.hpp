#pragma once

// Dense complex linear algebra: fundamental subspaces, projectors,
// Moore-Penrose inverses and direct-sum certificates. Everything is templated
// on the real scalar; the rest of the library instantiates it with double.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polerep/types.hpp"

namespace polerep {

template <typename Real>
bool all_finite(const CMatrix<Real>& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

template <typename Real>
void require_finite(const CMatrix<Real>& a, const char* what) {
    if (!all_finite(a)) throw InvalidArgument(std::string(what) + ": non-finite entries");
}

template <typename Real>
Real operator_norm(const CMatrix<Real>& a) {
    if (a.size() == 0) return Real(0);
    Eigen::JacobiSVD<CMatrix<Real>> svd(a);
    return svd.singularValues()(0);
}

/// Orthonormal basis of a subspace of C^n. Columns are orthonormal to 1e-10;
/// an empty basis (n x 0) is the zero subspace.
template <typename Real>
class SubspaceBasis {
public:
    SubspaceBasis() = default;

    /// The zero subspace of C^ambient.
    explicit SubspaceBasis(Eigen::Index ambient) : basis_(ambient, 0) {}

    explicit SubspaceBasis(CMatrix<Real> orthonormal) : basis_(std::move(orthonormal)) {
        if (basis_.cols() > basis_.rows())
            throw InvalidArgument("subspace basis has more columns than ambient dimension");
        require_finite(basis_, "subspace basis");
        const Eigen::Index r = basis_.cols();
        if (r > 0) {
            const Real err = (basis_.adjoint() * basis_ - CMatrix<Real>::Identity(r, r)).norm();
            if (err > Real(1e-10))
                throw InvalidArgument("subspace basis columns are not orthonormal (error " +
                                      std::to_string(static_cast<double>(err)) + ")");
        }
    }

    static SubspaceBasis full(Eigen::Index ambient) {
        return SubspaceBasis(CMatrix<Real>::Identity(ambient, ambient));
    }

    const CMatrix<Real>& basis() const { return basis_; }
    Eigen::Index ambient_dim() const { return basis_.rows(); }
    Eigen::Index dim() const { return basis_.cols(); }
    bool empty() const { return basis_.cols() == 0; }

private:
    CMatrix<Real> basis_;
};

template <typename Real>
struct FundamentalSubspaces {
    SubspaceBasis<Real> ker, coker, ran, coran;
    Real tol_used{};
    RVector<Real> singular_values;
    Eigen::Index rank() const { return ran.dim(); }
};

template <typename Real>
Real default_rank_tol(const RVector<Real>& sv, Eigen::Index rows, Eigen::Index cols) {
    const Real smax = sv.size() > 0 ? sv(0) : Real(0);
    return std::numeric_limits<Real>::epsilon() * static_cast<Real>(std::max(rows, cols)) * smax;
}

template <typename Real>
Eigen::Index numerical_rank(const RVector<Real>& sv, Real tol) {
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > tol) ++r;
    return r;
}

/// Kernel, cokernel, range and corange of a square matrix from one SVD.
/// tol = 0 selects eps * n * sigma_max.
template <typename Real>
FundamentalSubspaces<Real> fundamental_subspaces(const CMatrix<Real>& a, Real tol = Real(0)) {
    if (a.rows() != a.cols()) throw InvalidArgument("fundamental_subspaces: matrix must be square");
    if (tol < Real(0)) throw InvalidArgument("fundamental_subspaces: negative tolerance");
    require_finite(a, "fundamental_subspaces");
    const Eigen::Index n = a.rows();
    Eigen::JacobiSVD<CMatrix<Real>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    FundamentalSubspaces<Real> fs;
    fs.singular_values = svd.singularValues();
    fs.tol_used = tol > Real(0) ? tol : default_rank_tol<Real>(fs.singular_values, n, n);
    const Eigen::Index r = numerical_rank(fs.singular_values, fs.tol_used);
    const CMatrix<Real>& u = svd.matrixU();
    const CMatrix<Real>& v = svd.matrixV();
    fs.ran = SubspaceBasis<Real>(CMatrix<Real>(u.leftCols(r)));
    fs.coker = SubspaceBasis<Real>(CMatrix<Real>(u.rightCols(n - r)));
    fs.coran = SubspaceBasis<Real>(CMatrix<Real>(v.leftCols(r)));
    fs.ker = SubspaceBasis<Real>(CMatrix<Real>(v.rightCols(n - r)));
    return fs;
}

/// Moore-Penrose inverse via the SVD; singular values <= tol are treated as
/// zero (tol = 0: eps * max(rows, cols) * sigma_max).
template <typename Real>
CMatrix<Real> moore_penrose(const CMatrix<Real>& a, Real tol = Real(0)) {
    require_finite(a, "moore_penrose");
    if (a.size() == 0) return CMatrix<Real>::Zero(a.cols(), a.rows());
    Eigen::JacobiSVD<CMatrix<Real>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector<Real>& sv = svd.singularValues();
    const Real t = tol > Real(0) ? tol : default_rank_tol<Real>(sv, a.rows(), a.cols());
    const Eigen::Index r = numerical_rank(sv, t);
    CMatrix<Real> vs = svd.matrixV().leftCols(r);
    for (Eigen::Index k = 0; k < r; ++k) vs.col(k) /= sv(k);
    return vs * svd.matrixU().leftCols(r).adjoint();
}

template <typename Real>
CMatrix<Real> orthogonal_projector(const SubspaceBasis<Real>& v) {
    return v.basis() * v.basis().adjoint();
}

/// Orthonormal basis for the column space of m. Singular values <= tol are
/// dropped; tol = 0 selects eps * max(rows, cols) * sigma_max.
template <typename Real>
SubspaceBasis<Real> span_of(const CMatrix<Real>& m, Real tol = Real(0)) {
    require_finite(m, "span_of");
    if (m.cols() == 0) return SubspaceBasis<Real>(m.rows());
    Eigen::JacobiSVD<CMatrix<Real>> svd(m, Eigen::ComputeThinU);
    const RVector<Real>& sv = svd.singularValues();
    const Real t = tol > Real(0) ? tol : default_rank_tol<Real>(sv, m.rows(), m.cols());
    const Eigen::Index r = numerical_rank(sv, t);
    return SubspaceBasis<Real>(CMatrix<Real>(svd.matrixU().leftCols(r)));
}

/// Image a(V) of a subspace under an operator.
template <typename Real>
SubspaceBasis<Real> image(const CMatrix<Real>& a, const SubspaceBasis<Real>& v, Real tol) {
    if (a.cols() != v.ambient_dim()) throw InvalidArgument("image: dimension mismatch");
    return span_of<Real>(CMatrix<Real>(a * v.basis()), tol);
}

template <typename Real>
SubspaceBasis<Real> orthogonal_complement(const SubspaceBasis<Real>& v) {
    const Eigen::Index n = v.ambient_dim();
    if (v.dim() == 0) return SubspaceBasis<Real>::full(n);
    if (v.dim() == n) return SubspaceBasis<Real>(n);
    Eigen::JacobiSVD<CMatrix<Real>> svd(v.basis(), Eigen::ComputeFullU);
    return SubspaceBasis<Real>(CMatrix<Real>(svd.matrixU().rightCols(n - v.dim())));
}

namespace detail {

template <typename Real>
Eigen::Index common_ambient(std::span<const SubspaceBasis<Real>> parts) {
    if (parts.empty()) throw InvalidArgument("need at least one subspace");
    const Eigen::Index n = parts[0].ambient_dim();
    for (const auto& p : parts)
        if (p.ambient_dim() != n) throw InvalidArgument("subspaces live in different ambient spaces");
    return n;
}

template <typename Real>
CMatrix<Real> stack(std::span<const SubspaceBasis<Real>> parts) {
    const Eigen::Index n = common_ambient(parts);
    Eigen::Index m = 0;
    for (const auto& p : parts) m += p.dim();
    CMatrix<Real> s(n, m);
    Eigen::Index c = 0;
    for (const auto& p : parts) {
        s.middleCols(c, p.dim()) = p.basis();
        c += p.dim();
    }
    return s;
}

}  // namespace detail

/// V_1 + ... + V_k. tol is the singular value cutoff on the stacked bases.
template <typename Real>
SubspaceBasis<Real> subspace_sum(std::span<const SubspaceBasis<Real>> parts, Real tol = Real(1e-8)) {
    const Eigen::Index n = detail::common_ambient(parts);
    const CMatrix<Real> s = detail::stack(parts);
    if (s.cols() == 0) return SubspaceBasis<Real>(n);
    return span_of<Real>(s, tol);
}

template <typename Real>
SubspaceBasis<Real> subspace_sum(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v,
                                 Real tol = Real(1e-8)) {
    const SubspaceBasis<Real> parts[] = {u, v};
    return subspace_sum<Real>(std::span<const SubspaceBasis<Real>>(parts), tol);
}

/// U ∩ V as the kernel of the stacked complement projectors [I - P_U; I - P_V].
template <typename Real>
SubspaceBasis<Real> intersection(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v,
                                 Real tol = Real(1e-8)) {
    const Eigen::Index n = u.ambient_dim();
    if (v.ambient_dim() != n) throw InvalidArgument("intersection: ambient dimension mismatch");
    if (u.empty() || v.empty()) return SubspaceBasis<Real>(n);
    const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
    CMatrix<Real> m(2 * n, n);
    m.topRows(n) = id - orthogonal_projector(u);
    m.bottomRows(n) = id - orthogonal_projector(v);
    Eigen::JacobiSVD<CMatrix<Real>> svd(m, Eigen::ComputeFullV);
    const Eigen::Index r = numerical_rank<Real>(svd.singularValues(), tol);
    return SubspaceBasis<Real>(CMatrix<Real>(svd.matrixV().rightCols(n - r)));
}

template <typename Real>
struct DirectSumVerdict {
    bool spans_ambient{};
    bool trivial_intersections{};
    Real min_gap{};
    std::vector<Eigen::Index> dims;
    bool direct_and_spanning() const { return spans_ambient && trivial_intersections; }
};

/// Certificate for H = V_1 ⊕ ... ⊕ V_k. min_gap is the smallest singular
/// value of the stacked bases, padded with zeros when the total dimension
/// exceeds the ambient one.
template <typename Real>
DirectSumVerdict<Real> direct_sum_check(std::span<const SubspaceBasis<Real>> parts,
                                        Real tol = Real(1e-8)) {
    const Eigen::Index n = detail::common_ambient(parts);
    DirectSumVerdict<Real> out;
    for (const auto& p : parts) out.dims.push_back(p.dim());
    const CMatrix<Real> s = detail::stack(parts);
    const Eigen::Index m = s.cols();
    if (m == 0) {
        out.min_gap = Real(1);
        out.spans_ambient = (n == 0);
        out.trivial_intersections = true;
        return out;
    }
    Eigen::JacobiSVD<CMatrix<Real>> svd(s);
    const RVector<Real>& sv = svd.singularValues();
    out.min_gap = m > n ? Real(0) : sv(sv.size() - 1);
    out.trivial_intersections = (m <= n) && out.min_gap > tol;
    out.spans_ambient = numerical_rank<Real>(sv, tol) == n;
    return out;
}

template <typename Real>
DirectSumVerdict<Real> direct_sum_check(std::initializer_list<SubspaceBasis<Real>> parts,
                                        Real tol = Real(1e-8)) {
    return direct_sum_check<Real>(std::span<const SubspaceBasis<Real>>(parts.begin(), parts.size()), tol);
}

/// Projection on `onto` along `along`; requires onto ⊕ along = C^n. Solves
/// [onto along] X = I rather than inverting blocks.
template <typename Real>
CMatrix<Real> oblique_projector(const SubspaceBasis<Real>& onto, const SubspaceBasis<Real>& along,
                                Real tol = Real(1e-8)) {
    const auto verdict = direct_sum_check<Real>({onto, along}, tol);
    if (!verdict.direct_and_spanning())
        throw InvalidArgument("oblique_projector: subspaces do not form a direct sum of the ambient space "
                              "(min_gap " + std::to_string(static_cast<double>(verdict.min_gap)) + ")");
    const Eigen::Index n = onto.ambient_dim();
    const Eigen::Index a = onto.dim();
    CMatrix<Real> m(n, n);
    m.leftCols(a) = onto.basis();
    m.rightCols(n - a) = along.basis();
    const CMatrix<Real> coords = m.partialPivLu().solve(CMatrix<Real>::Identity(n, n));
    return onto.basis() * coords.topRows(a);
}

/// Principal angles between two subspaces, ascending. Small angles come from
/// the sines and large ones from the cosines, so both ends are accurate.
template <typename Real>
std::vector<Real> principal_angles(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw InvalidArgument("principal_angles: ambient dimension mismatch");
    const SubspaceBasis<Real>& big = u.dim() >= v.dim() ? u : v;
    const SubspaceBasis<Real>& small = u.dim() >= v.dim() ? v : u;
    const Eigen::Index k = small.dim();
    std::vector<Real> out;
    if (k == 0) return out;
    const CMatrix<Real> cross = big.basis().adjoint() * small.basis();
    Eigen::JacobiSVD<CMatrix<Real>> cs(cross);
    const CMatrix<Real> resid = small.basis() - big.basis() * cross;
    Eigen::JacobiSVD<CMatrix<Real>> ss(resid);
    // cosines descending pair with sines ascending
    for (Eigen::Index i = 0; i < k; ++i) {
        const Real c = std::clamp(cs.singularValues()(i), Real(0), Real(1));
        const Real s = std::clamp(ss.singularValues()(k - 1 - i), Real(0), Real(1));
        out.push_back(std::atan2(s, c));
    }
    return out;
}

/// Equal dimension and all principal angles <= tol.
template <typename Real>
bool same_subspace(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v, Real tol = Real(1e-8)) {
    if (u.ambient_dim() != v.ambient_dim() || u.dim() != v.dim()) return false;
    for (Real a : principal_angles(u, v))
        if (a > tol) return false;
    return true;
}

template <typename Real>
Real max_angle(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v) {
    Real m(0);
    for (Real a : principal_angles(u, v)) m = std::max(m, a);
    return m;
}

/// u ⊆ v up to tol, measured as the residual of projecting u onto v.
template <typename Real>
bool contained_in(const SubspaceBasis<Real>& u, const SubspaceBasis<Real>& v, Real tol = Real(1e-8)) {
    if (u.empty()) return true;
    const CMatrix<Real> resid = u.basis() - orthogonal_projector(v) * u.basis();
    return operator_norm<Real>(resid) <= tol;
}

}  // namespace polerep
