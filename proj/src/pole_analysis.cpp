#include "polerep/pole_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace polerep {

namespace {

constexpr double kSameSpectralPoint = 1e-6;

double resolved_rank_tol(const Matrix& a0, const PoleOptions& opts) {
    return opts.rank_tol > 0 ? opts.rank_tol : 1e-8 * std::max(1.0, operator_norm<double>(a0));
}

double resolved_bijectivity_tol(const Matrix& a1, const PoleOptions& opts) {
    return opts.bijectivity_tol > 0 ? opts.bijectivity_tol : 1e-8 * std::max(1.0, operator_norm<double>(a1));
}

double smallest_singular_value(const Matrix& m) {
    if (m.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

bool is_same_point(Complex a, Complex b) {
    return std::abs(a - b) <= kSameSpectralPoint * std::max(1.0, std::abs(b));
}

std::string describe(const PoleVerdict& v) {
    std::ostringstream os;
    os << "z0 = " << v.z0 << ", oracle order " << v.order.str() << "; flags:";
    for (const auto& f : v.flags) os << ' ' << f.name << '=' << (f.value ? "true" : "false");
    os << "; sigma_min(B1) = " << v.diagnostics.sigma_min_B1 << ", sigma_min(B2) = " << v.diagnostics.sigma_min_B2
       << ", direct-sum gap = " << v.diagnostics.direct_sum_gap;
    return os.str();
}

void require_agreement(const PoleVerdict& v, const char* what) {
    for (const auto& f : v.flags)
        if (f.value != v.holds)
            throw ConsistencyError(std::string(what) + ": equivalent conditions disagree (" + describe(v) + ")");
}

Subspace image_of_kernel(const Matrix& op, const Subspace& s, const PoleOptions& opts) {
    const double scale = std::max(operator_norm<double>(op), 1e-300);
    return image<double>(op, s, opts.gap_tol * scale);
}

}  // namespace

Matrix StructuredOperators::b1_pinv_ambient() const {
    const double tol = bijectivity_tol;
    return fs.ker.basis() * moore_penrose<double>(B1, tol) * fs.coker.basis().adjoint();
}

StructuredOperators structured_operators(const Pencil& p, Complex z0, const PoleOptions& opts) {
    StructuredOperators so;
    so.z0 = z0;
    so.A0 = p.eval(z0);
    so.A1 = p.derivative(1, z0);
    so.A2 = p.derivative(2, z0);
    so.A3 = p.derivative(3, z0);
    so.rank_tol = resolved_rank_tol(so.A0, opts);
    so.bijectivity_tol = resolved_bijectivity_tol(so.A1, opts);
    so.fs = fundamental_subspaces<double>(so.A0, so.rank_tol);
    if (so.fs.ker.dim() == 0) throw InvalidArgument("structured_operators: A(z0) is nonsingular");
    // index zero at finite truncation
    if (so.fs.ker.dim() != so.fs.coker.dim()) throw ConsistencyError("dim ker A(z0) != dim coker A(z0)");
    so.A0_pinv = moore_penrose<double>(so.A0, so.rank_tol);

    const Matrix& kb = so.fs.ker.basis();
    const Matrix& cb = so.fs.coker.basis();
    so.B1 = cb.adjoint() * so.A1 * kb;

    const Eigen::Index r = so.B1.rows();
    Eigen::JacobiSVD<Matrix> svd(so.B1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    so.sigma_min_B1 = sv(r - 1);
    const Eigen::Index rho = numerical_rank<double>(sv, so.bijectivity_tol);
    so.ran_B1 = Subspace(Matrix(cb * svd.matrixU().leftCols(rho)));
    so.coker_B1 = Subspace(Matrix(cb * svd.matrixU().rightCols(r - rho)));
    so.coran_B1 = Subspace(Matrix(kb * svd.matrixV().leftCols(rho)));
    so.ker_B1 = Subspace(Matrix(kb * svd.matrixV().rightCols(r - rho)));

    so.V = 0.5 * so.A2 - so.A1 * so.A0_pinv * so.A1;
    so.Vtilde = so.A3 / 6.0 - so.A1 * so.A0_pinv * so.A1 * so.A0_pinv * so.A1;
    so.B2 = so.coker_B1.basis().adjoint() * so.V * so.ker_B1.basis();
    so.sigma_min_B2 = smallest_singular_value(so.B2);
    return so;
}

const Matrix& LaurentExpansion::N(int k) const {
    if (k < k_min || k > k_max) throw InvalidArgument("Laurent coefficient index out of computed range");
    return coeffs[static_cast<std::size_t>(k - k_min)];
}

double default_radius(const Pencil& p, Complex z0) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& pt : finite_spectrum<double>(p))
        if (!is_same_point(pt.z, z0)) d = std::min(d, std::abs(pt.z - z0));
    return std::min(0.1, d / 2);
}

LaurentExpansion laurent_oracle(const Pencil& p, Complex z0, int k_min, int k_max, double radius, int nodes,
                                double order_threshold) {
    if (k_min > k_max) throw InvalidArgument("laurent_oracle: k_min > k_max");
    if (nodes < 8) throw InvalidArgument("laurent_oracle: need at least 8 nodes");
    if (radius <= 0) radius = default_radius(p, z0);
    for (const auto& pt : finite_spectrum<double>(p))
        if (!is_same_point(pt.z, z0) && std::abs(pt.z - z0) <= radius * (1 + 1e-3))
            throw InvalidArgument("laurent_oracle: contour of radius " + std::to_string(radius) +
                                  " encloses or touches another singular point");

    const int fine = 2 * nodes;
    const Eigen::Index n = p.dim();
    const int nk = k_max - k_min + 1;
    std::vector<Matrix> coarse(static_cast<std::size_t>(nk), Matrix::Zero(n, n));
    std::vector<Matrix> full(static_cast<std::size_t>(nk), Matrix::Zero(n, n));
    for (int j = 0; j < fine; ++j) {
        const double theta = 2 * std::numbers::pi * j / fine;
        const Complex z = z0 + std::polar(radius, theta);
        const auto lu = p.eval(z).partialPivLu();
        if (!(lu.rcond() > 1e-14))
            throw InvalidArgument("laurent_oracle: contour passes through the spectrum (rcond " +
                                  std::to_string(lu.rcond()) + ")");
        const Matrix inv = lu.inverse();
        for (int i = 0; i < nk; ++i) {
            const int k = k_min + i;
            const Matrix term = inv * std::polar(1.0, -k * theta);
            full[static_cast<std::size_t>(i)] += term;
            if (j % 2 == 0) coarse[static_cast<std::size_t>(i)] += term;
        }
    }

    // Fourier coefficients c_k = N_k radius^k
    double scale = 0, change = 0;
    for (int i = 0; i < nk; ++i) {
        full[static_cast<std::size_t>(i)] /= static_cast<double>(fine);
        coarse[static_cast<std::size_t>(i)] /= static_cast<double>(nodes);
        scale = std::max(scale, full[static_cast<std::size_t>(i)].norm());
        change = std::max(change, (full[static_cast<std::size_t>(i)] - coarse[static_cast<std::size_t>(i)]).norm());
    }
    LaurentExpansion out;
    out.z0 = z0;
    out.k_min = k_min;
    out.k_max = k_max;
    out.radius = radius;
    out.nodes_used = fine;
    out.doubling_change = scale > 0 ? change / scale : change;
    if (out.doubling_change > 1e-8)
        throw ConsistencyError("laurent_oracle: node doubling changed the coefficients by " +
                               std::to_string(out.doubling_change));
    out.coeffs.reserve(static_cast<std::size_t>(nk));
    for (int i = 0; i < nk; ++i) out.coeffs.push_back(full[static_cast<std::size_t>(i)] * std::pow(radius, -(k_min + i)));

    double ref = 0;
    for (int m = 1; -m >= k_min; ++m)
        if (-m <= k_max) ref = std::max(ref, operator_norm<double>(out.N(-m)));
    for (int m = 1; -m >= k_min; ++m) {
        if (-m > k_max) continue;
        const double nm = operator_norm<double>(out.N(-m));
        // relative to the largest principal coefficient, above the quadrature noise floor
        if (nm > order_threshold * ref && nm * std::pow(radius, -m) > 1e-10 * scale) out.min_order = m;
    }
    return out;
}

PoleOrder pole_order(const Pencil& p, Complex z0, const PoleOptions& opts) {
    const Matrix a0 = p.eval(z0);
    if (!(smallest_singular_value(a0) <= resolved_rank_tol(a0, opts)))
        throw InvalidArgument("pole_order: A(z0) is nonsingular");
    const auto lx = laurent_oracle(p, z0, -(opts.cap + 2), 0, opts.radius, opts.nodes, opts.order_threshold);
    PoleOrder out;
    out.cap = opts.cap;
    if (lx.min_order == 0) throw ConsistencyError("pole_order: A(z0) is singular but the oracle sees no pole");
    if (lx.min_order > opts.cap)
        out.exceeds_cap = true;
    else
        out.value = lx.min_order;
    return out;
}

namespace {

std::vector<double> principal_norms(const Pencil& p, Complex z0, const PoleOptions& opts, PoleOrder& order) {
    const auto lx = laurent_oracle(p, z0, -(opts.cap + 2), 0, opts.radius, opts.nodes, opts.order_threshold);
    order.cap = opts.cap;
    order.exceeds_cap = lx.min_order > opts.cap;
    order.value = order.exceeds_cap ? 0 : lx.min_order;
    if (lx.min_order == 0) throw ConsistencyError("A(z0) is singular but the oracle sees no pole");
    std::vector<double> out;
    for (int m = 1; m <= opts.cap + 2; ++m) out.push_back(operator_norm<double>(lx.N(-m)));
    return out;
}

}  // namespace

PoleVerdict classify_simple_pole(const Pencil& p, Complex z0, const PoleOptions& opts) {
    const auto so = structured_operators(p, z0, opts);
    PoleVerdict v;
    v.z0 = z0;
    v.diagnostics.sigma_min_B1 = so.sigma_min_B1;
    v.diagnostics.principal_norms = principal_norms(p, z0, opts, v.order);
    v.holds = v.order == 1;

    const Subspace a1_ker = image_of_kernel(so.A1, so.fs.ker, opts);
    const auto dsv = direct_sum_check<double>({so.fs.ran, a1_ker}, opts.gap_tol);
    v.diagnostics.direct_sum_gap = dsv.min_gap;
    v.flags.push_back({"(1) simple pole", v.holds});
    v.flags.push_back({"(2) B1 bijective", so.b1_bijective()});
    v.flags.push_back({"(3) ran A ⊕ A'ker A = H", dsv.direct_and_spanning()});
    v.flags.push_back({"(4) ran A + A'ker A = H", dsv.spans_ambient});
    if (p.is_linear()) {
        const auto lin = direct_sum_check<double>({so.fs.ran, so.fs.ker}, opts.gap_tol);
        v.flags.push_back({"linear (2) ran A ⊕ ker A = H", lin.direct_and_spanning()});
        v.flags.push_back({"linear (3) ran A + ker A = H", lin.spans_ambient});
        v.flags.push_back({"linear (4) ran A ∩ ker A = 0", intersection<double>(so.fs.ran, so.fs.ker, opts.gap_tol).empty()});
    }
    require_agreement(v, "classify_simple_pole");
    return v;
}

PoleVerdict classify_second_order(const Pencil& p, Complex z0, const PoleOptions& opts) {
    const auto so = structured_operators(p, z0, opts);
    if (so.b1_bijective())
        throw ClassificationError("classify_second_order: the pole is simple (B1 bijective)");
    PoleVerdict v;
    v.z0 = z0;
    v.diagnostics.sigma_min_B1 = so.sigma_min_B1;
    v.diagnostics.sigma_min_B2 = so.sigma_min_B2;
    v.diagnostics.principal_norms = principal_norms(p, z0, opts, v.order);
    v.holds = v.order == 2;

    const Subspace a1_ker = image_of_kernel(so.A1, so.fs.ker, opts);
    const Subspace lead = subspace_sum<double>(so.fs.ran, a1_ker, opts.gap_tol);
    const Subspace v_ker = image_of_kernel(so.V, so.ker_B1, opts);
    const auto dsv = direct_sum_check<double>({lead, v_ker}, opts.gap_tol);
    v.diagnostics.direct_sum_gap = dsv.min_gap;
    v.flags.push_back({"(1) second-order pole", v.holds});
    v.flags.push_back({"(2) B2 bijective", so.b2_bijective()});
    v.flags.push_back({"(3) (ran A + A'ker A) ⊕ V ker B1 = H", dsv.direct_and_spanning()});
    v.flags.push_back({"(4) ran A + A'ker A + V ker B1 = H", dsv.spans_ambient});
    if (p.is_linear()) {
        const Eigen::Index n = p.dim();
        const Subspace ran_plus_ker = subspace_sum<double>(so.fs.ran, so.fs.ker, opts.gap_tol);
        const Subspace meet = intersection<double>(so.fs.ran, so.fs.ker, opts.gap_tol);
        const Matrix shear = Matrix::Identity(n, n) - so.A0_pinv;
        const Subspace tilted = image_of_kernel(shear, meet, opts);
        const auto lin = direct_sum_check<double>({ran_plus_ker, tilted}, opts.gap_tol);
        v.flags.push_back({"linear (2) (ran A + ker A) ⊕ (I - A^†)(ran A ∩ ker A) = H", lin.direct_and_spanning()});
        v.flags.push_back({"linear (3) ran A + ker A + (I - A^†)(ran A ∩ ker A) = H", lin.spans_ambient});
    }
    require_agreement(v, "classify_second_order");
    return v;
}

Matrix residue_simple(const StructuredOperators& so) {
    if (!so.b1_bijective())
        throw ClassificationError("residue_simple: not a simple pole (B1 is not bijective, sigma_min " +
                                  std::to_string(so.sigma_min_B1) + ")");
    const Matrix b1_inv = so.B1.partialPivLu().inverse();
    return so.fs.ker.basis() * b1_inv * so.fs.coker.basis().adjoint();
}

Matrix residue_simple(const Pencil& p, Complex z0, const PoleOptions& opts) {
    return residue_simple(structured_operators(p, z0, opts));
}

std::pair<Matrix, Matrix> laurent_principal_second(const StructuredOperators& so) {
    if (so.b1_bijective()) throw ClassificationError("laurent_principal_second: the pole is simple");
    if (!so.b2_bijective())
        throw ClassificationError("laurent_principal_second: not a second-order pole (B2 is not bijective, sigma_min " +
                                  std::to_string(so.sigma_min_B2) + ")");
    const Eigen::Index n = so.A0.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix& ap = so.A0_pinv;
    const Matrix n2 = so.ker_B1.basis() * so.B2.partialPivLu().inverse() * so.coker_B1.basis().adjoint();
    const Matrix b1p = so.b1_pinv_ambient();
    const Matrix on_ran_a = -n2 * so.A1 * ap;
    const Matrix on_ran_b1 = (id - n2 * so.V) * b1p;
    const Matrix on_coker_b1 = n2 * (so.A1 * ap * so.V + so.V * ap * so.A1 - so.Vtilde) * n2 -
                               (ap * so.A1 + (id - n2 * so.V) * b1p * so.V) * n2;
    return {n2, on_ran_a + on_ran_b1 + on_coker_b1};
}

std::pair<Matrix, Matrix> laurent_principal_second(const Pencil& p, Complex z0, const PoleOptions& opts) {
    return laurent_principal_second(structured_operators(p, z0, opts));
}

Matrix riesz_projection(const Matrix& k, Complex sigma, double radius, int nodes) {
    if (k.rows() != k.cols()) throw InvalidArgument("riesz_projection: operator must be square");
    if (nodes < 8) throw InvalidArgument("riesz_projection: need at least 8 nodes");
    const Eigen::Index n = k.rows();
    // eigenvalues of K are the singular points of z -> zI - K
    const Pencil resolvent_pencil(std::vector<Matrix>{-k, Matrix::Identity(n, n)});
    const auto spectrum = finite_spectrum<double>(resolvent_pencil);
    double d = std::abs(sigma);
    for (const auto& pt : spectrum)
        if (!is_same_point(pt.z, sigma)) d = std::min(d, std::abs(pt.z - sigma));
    if (radius <= 0) radius = std::min(0.1, d / 2);
    if (!(radius * (1 + 1e-3) < d))
        throw InvalidArgument("riesz_projection: contour does not separate sigma from 0 and the other eigenvalues");

    Matrix acc = Matrix::Zero(n, n);
    for (int j = 0; j < nodes; ++j) {
        const Complex dz = std::polar(radius, 2 * std::numbers::pi * j / nodes);
        const auto lu = resolvent_pencil.eval(sigma + dz).partialPivLu();
        if (!(lu.rcond() > 1e-14)) throw InvalidArgument("riesz_projection: contour passes through the spectrum");
        acc += lu.inverse() * dz;
    }
    return acc / static_cast<double>(nodes);
}

}  // namespace polerep
