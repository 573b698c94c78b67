#include "polerep/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace polerep {

namespace {

constexpr double kTaylorTail = 1e-12;
constexpr int kTaylorCap = 512;
constexpr int kTaylorWindow = 8;  // consecutive coefficients below the tail bound
constexpr int kTaylorNodes = 2048;

const Complex kOne(1.0, 0.0);

double relative_error(const Matrix& a, const Matrix& b) {
    return (a - b).norm() / std::max(1e-300, b.norm());
}

FundamentalSubspaces<double> subspaces_of(const Matrix& a, double rel_tol = 1e-8) {
    return fundamental_subspaces<double>(a, rel_tol * std::max(1.0, operator_norm<double>(a)));
}

// Taylor coefficients about 0 of H(z) = Phi(z)^{-1} - sum_m N_{-m} (z - 1)^{-m}
// on a circle strictly inside the nearest other singular point.
void fill_taylor(Decomposition& d, const Pencil& pencil, const std::vector<Matrix>& principal) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& pt : finite_spectrum<double>(pencil))
        if (std::abs(pt.z - kOne) > 1e-6) nearest = std::min(nearest, std::abs(pt.z));
    const double r = std::min(2.0, (1.0 + nearest) / 2.0);
    d.taylor_radius = r;

    const Eigen::Index n = pencil.dim();
    std::vector<Matrix> h;
    h.reserve(kTaylorNodes);
    for (int j = 0; j < kTaylorNodes; ++j) {
        const Complex z = std::polar(r, 2 * std::numbers::pi * j / kTaylorNodes);
        Matrix hz = pencil.eval(z).partialPivLu().inverse();
        Complex w = kOne;
        for (const auto& nm : principal) {
            w /= (z - kOne);
            hz -= nm * w;
        }
        h.push_back(std::move(hz));
    }

    d.psitilde.clear();
    int small_run = 0;
    for (int k = 0; k < kTaylorCap; ++k) {
        Matrix c = Matrix::Zero(n, n);
        for (int j = 0; j < kTaylorNodes; ++j)
            c += h[static_cast<std::size_t>(j)] * std::polar(1.0, -2 * std::numbers::pi * double(j) * k / kTaylorNodes);
        c *= std::pow(r, -k) / kTaylorNodes;
        small_run = operator_norm<double>(c) <= kTaylorTail ? small_run + 1 : 0;
        d.psitilde.push_back(std::move(c));
        if (small_run == kTaylorWindow) {
            d.truncation_K = k - kTaylorWindow + 1;
            d.psitilde.resize(static_cast<std::size_t>(d.truncation_K) + 1);
            d.tail_norm = operator_norm<double>(d.psitilde.back());
            return;
        }
    }
    throw ConsistencyError("holomorphic part: Taylor coefficients did not fall below 1e-12 within 512 terms");
}

void require_pole_order(const ARModel& model, const LaurentExpansion& lx, int want, const PoleOptions& opts) {
    if (lx.min_order == want) return;
    std::ostringstream os;
    os << (want == 1 ? "NotI1" : "NotI2") << ": pole of Phi(z)^{-1} at 1 has order ";
    if (lx.min_order > opts.cap)
        os << "> " << opts.cap;
    else
        os << lx.min_order;
    os << " (dim " << model.dim() << ")";
    throw ClassificationError(os.str());
}

}  // namespace

ARModel::ARModel(std::vector<Matrix> phis, Matrix sigma_factor)
    : phis_(std::move(phis)), sigma_factor_(std::move(sigma_factor)) {
    if (phis_.empty()) throw InvalidArgument("ARModel: need at least one autoregressive operator");
    const Eigen::Index n = sigma_factor_.rows();
    if (sigma_factor_.cols() != n) throw InvalidArgument("ARModel: covariance factor must be square");
    for (const auto& phi : phis_) {
        if (phi.rows() != n || phi.cols() != n)
            throw InvalidArgument("ARModel: autoregressive operators must match the covariance dimension");
        require_finite(phi, "ARModel operator");
    }
    require_finite(sigma_factor_, "ARModel covariance factor");
    Eigen::JacobiSVD<Matrix> svd(sigma_factor_);
    const auto& sv = svd.singularValues();
    if (!(sv(n - 1) > 1e-12 * std::max(1.0, sv(0))))
        throw InvalidArgument("ARModel: covariance factor is rank deficient (Σ not positive definite)");
}

Matrix ARModel::phi_at_one() const {
    Matrix out = Matrix::Identity(dim(), dim());
    for (const auto& phi : phis_) out -= phi;
    return out;
}

Assumption1Report check_assumption1(const ARModel& model, double margin) {
    Assumption1Report rep;
    Eigen::JacobiSVD<Matrix> svd(model.sigma_factor());
    rep.sigma_min_factor = svd.singularValues()(model.dim() - 1);
    if (!(rep.sigma_min_factor > 0)) throw AssumptionViolated("covariance is not positive definite", {});
    const auto spec = unit_disk_spectrum<double>(model.pencil(), margin);
    rep.disk_points = spec.points;
    std::vector<Complex> others;
    for (const auto& z : spec.points) {
        if (std::abs(z - kOne) <= 1e-8)
            rep.unit_root = true;
        else
            others.push_back(z);
    }
    rep.clean = spec.unit_disk_clean_except.has_value();
    rep.note = "compactness of the autoregressive operators is automatic at finite truncation";
    if (!rep.unit_root)
        throw AssumptionViolated("no singularity at 1: Phi(1) is invertible", others);
    if (!others.empty()) {
        std::ostringstream os;
        os << "Phi(z) is singular inside the closed unit disk at z != 1:";
        for (const auto& z : others) os << ' ' << z;
        throw AssumptionViolated(os.str(), others);
    }
    return rep;
}

Matrix Decomposition::psitilde_at(Complex z) const {
    Matrix acc = Matrix::Zero(dim(), dim());
    for (auto it = psitilde.rbegin(); it != psitilde.rend(); ++it) acc = (acc * z + *it).eval();
    return acc;
}

Matrix Decomposition::psi_at(Complex z) const {
    const Complex w = kOne - z;
    if (kind == Kind::I1) return psi1 + w * psitilde_at(z);
    return upsilon2 - w * upsilon1 + w * w * psitilde_at(z);
}

Decomposition i1_decomposition(const ARModel& model, const PoleOptions& opts) {
    check_assumption1(model);
    const Pencil pencil = model.pencil();
    const auto lx = laurent_oracle(pencil, kOne, -(opts.cap + 2), 0, opts.radius, opts.nodes, opts.order_threshold);
    require_pole_order(model, lx, 1, opts);
    const Matrix n1 = residue_simple(pencil, kOne, opts);
    Decomposition d;
    d.kind = Kind::I1;
    d.oracle_rel_error = relative_error(n1, lx.N(-1));
    if (d.oracle_rel_error > 1e-7)
        throw ConsistencyError("i1_decomposition: residue formula and contour oracle disagree (relative error " +
                               std::to_string(d.oracle_rel_error) + ")");
    d.psi1 = -n1;
    fill_taylor(d, pencil, {n1});
    return d;
}

Decomposition i2_decomposition(const ARModel& model, const PoleOptions& opts) {
    check_assumption1(model);
    const Pencil pencil = model.pencil();
    const auto lx = laurent_oracle(pencil, kOne, -(opts.cap + 2), 0, opts.radius, opts.nodes, opts.order_threshold);
    require_pole_order(model, lx, 2, opts);
    auto [n2, n1] = laurent_principal_second(pencil, kOne, opts);
    Decomposition d;
    d.kind = Kind::I2;
    const double scale = std::max(lx.N(-2).norm(), lx.N(-1).norm());
    d.oracle_rel_error = std::max((n2 - lx.N(-2)).norm(), (n1 - lx.N(-1)).norm()) / std::max(1e-300, scale);
    if (d.oracle_rel_error > 1e-7)
        throw ConsistencyError("i2_decomposition: closed-form principal part and contour oracle disagree "
                               "(relative error " + std::to_string(d.oracle_rel_error) + ")");
    d.upsilon2 = n2;
    d.upsilon1 = n1;
    fill_taylor(d, pencil, {n1, n2});
    return d;
}

Decomposition decompose(const ARModel& model, const PoleOptions& opts) {
    check_assumption1(model);
    const auto order = pole_order(model.pencil(), kOne, opts);
    if (order == 1) return i1_decomposition(model, opts);
    if (order == 2) return i2_decomposition(model, opts);
    throw ClassificationError("pole of Phi(z)^{-1} at 1 has order " + order.str() + "; only I(1) and I(2) are supported");
}

const Subspace& CointegrationReport::get(const std::string& name) const {
    for (const auto& s : spaces)
        if (s.name == name) return s.space;
    throw InvalidArgument("cointegration report has no space named " + name);
}

CointegrationReport cointegration_spaces(const ARModel& model, const Decomposition& decomp) {
    CointegrationReport rep;
    rep.kind = decomp.kind;
    if (decomp.dim() != model.dim()) throw InvalidArgument("cointegration_spaces: decomposition does not match model");
    if (decomp.kind == Kind::I1) {
        const auto fs = subspaces_of(model.phi_at_one());
        rep.spaces.push_back({"cointegrating", fs.coran});
        rep.spaces.push_back({"attractor", fs.ker});
        rep.spaces.push_back({"coker_psi1", subspaces_of(decomp.psi1).coker});
        return rep;
    }
    const auto u2 = subspaces_of(decomp.upsilon2);
    const auto u1 = subspaces_of(decomp.upsilon1);
    rep.spaces.push_back({"tier1_coker_U2", u2.coker});
    rep.spaces.push_back({"tier2_coker_U2_cap_coker_U1", intersection<double>(u2.coker, u1.coker)});
    rep.spaces.push_back({"trend2_ran_U2", u2.ran});
    rep.spaces.push_back({"trend1_ran_U1", u1.ran});
    rep.spaces.push_back({"coker_U1", u1.coker});
    return rep;
}

CointegrationReport p1_subspace_formulas(const Matrix& phi1, double tol) {
    const Eigen::Index n = phi1.rows();
    if (phi1.cols() != n) throw InvalidArgument("p1_subspace_formulas: operator must be square");
    const Matrix a = Matrix::Identity(n, n) - phi1;
    const auto fs = subspaces_of(a, tol);
    const Matrix a_pinv = moore_penrose<double>(a, fs.tol_used);
    const Subspace meet = intersection<double>(fs.ran, fs.ker, tol);
    if (fs.ker.empty()) throw ClassificationError("p1_subspace_formulas: Phi(1) is invertible");
    if (meet.empty()) throw ClassificationError("p1_subspace_formulas: not second order (the pole at 1 is simple)");
    const Subspace tilted_meet = image<double>(a_pinv, meet, tol * std::max(1.0, operator_norm<double>(a_pinv)));
    // second-order condition for I - zPhi_1: (ran + ker) ⊕ (I - Phi(1)^†)(ran ∩ ker) = H
    const Subspace sheared = image<double>(Matrix(Matrix::Identity(n, n) - a_pinv), meet, tol);
    const auto verdict = direct_sum_check<double>({subspace_sum<double>(fs.ran, fs.ker, tol), sheared}, tol);
    if (!verdict.direct_and_spanning())
        throw ClassificationError("p1_subspace_formulas: not second order (pole order exceeds 2)");

    CointegrationReport rep;
    rep.kind = Kind::I2;
    const Subspace tier1 = subspace_sum<double>(fs.coker, fs.coran, tol);
    const Subspace coker_u1 = intersection<double>(fs.coran, orthogonal_complement(tilted_meet), tol);
    rep.spaces.push_back({"tier1_coker_U2", tier1});
    rep.spaces.push_back({"tier2_coker_U2_cap_coker_U1", intersection<double>(tier1, coker_u1, tol)});
    rep.spaces.push_back({"trend2_ran_U2", meet});
    rep.spaces.push_back({"trend1_ran_U1", subspace_sum<double>(fs.ker, tilted_meet, tol)});
    rep.spaces.push_back({"coker_U1", coker_u1});
    return rep;
}

Multiplicity algebraic_geometric_multiplicity(const Matrix& phi1) {
    const Eigen::Index n = phi1.rows();
    if (phi1.cols() != n) throw InvalidArgument("algebraic_geometric_multiplicity: operator must be square");
    const Matrix a = Matrix::Identity(n, n) - phi1;
    const auto fs = subspaces_of(a);
    if (fs.ker.empty()) throw InvalidArgument("algebraic_geometric_multiplicity: 1 is not an eigenvalue");
    Multiplicity m;
    m.geometric = static_cast<int>(fs.ker.dim());
    const Matrix proj = riesz_projection(phi1, kOne);
    Eigen::JacobiSVD<Matrix> svd(proj);
    m.algebraic = static_cast<int>(numerical_rank<double>(svd.singularValues(), 1e-6 * std::max(1.0, svd.singularValues()(0))));
    m.order = pole_order(Pencil::from_ar({phi1}), kOne);
    const bool higher = !(m.order == 1);
    if (higher != (m.algebraic > m.geometric))
        throw ConsistencyError("multiplicities (" + std::to_string(m.algebraic) + ", " + std::to_string(m.geometric) +
                               ") inconsistent with pole order " + m.order.str());
    return m;
}

}  // namespace polerep
