#include "polerep/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace polerep::io {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidArgument("complex number must be [re, im] or a real number");
    return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InvalidArgument("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidArgument("matrix rows must have equal length");
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw InvalidArgument("vector must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json pencil_to_json(const Pencil& p) {
    json c = json::array();
    for (const auto& a : p.coeffs()) c.push_back(to_json(a));
    return json{{"coeffs", c}};
}

Pencil pencil_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs")) throw InvalidArgument("pencil JSON needs a \"coeffs\" array");
    std::vector<Matrix> c;
    for (const auto& a : j.at("coeffs")) c.push_back(matrix_from_json(a));
    return Pencil(std::move(c));
}

json model_to_json(const ARModel& m) {
    json phis = json::array();
    for (const auto& phi : m.phis()) phis.push_back(to_json(phi));
    return json{{"phis", phis}, {"sigma_factor", to_json(m.sigma_factor())}};
}

ARModel model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("phis")) throw InvalidArgument("model JSON needs a \"phis\" array");
    std::vector<Matrix> phis;
    for (const auto& a : j.at("phis")) phis.push_back(matrix_from_json(a));
    if (phis.empty()) throw InvalidArgument("model JSON: \"phis\" is empty");
    Matrix l = j.contains("sigma_factor") ? matrix_from_json(j.at("sigma_factor"))
                                          : Matrix::Identity(phis[0].rows(), phis[0].rows());
    return ARModel(std::move(phis), std::move(l));
}

json to_json(const PoleOrder& o) {
    if (o.exceeds_cap) return json{{"order", o.str()}, {"exceeds_cap", true}, {"cap", o.cap}};
    return json{{"order", o.value}, {"exceeds_cap", false}, {"cap", o.cap}};
}

json to_json(const PoleVerdict& v) {
    json flags = json::object();
    for (const auto& f : v.flags) flags[f.name] = f.value;
    auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
    return json{{"z0", to_json(v.z0)},
                {"order", to_json(v.order)},
                {"holds", v.holds},
                {"flags", flags},
                {"diagnostics",
                 {{"sigma_min_B1", num(v.diagnostics.sigma_min_B1)},
                  {"sigma_min_B2", num(v.diagnostics.sigma_min_B2)},
                  {"direct_sum_gap", num(v.diagnostics.direct_sum_gap)},
                  {"principal_norms", v.diagnostics.principal_norms}}}};
}

json to_json(const LaurentExpansion& lx) {
    json coeffs = json::object();
    for (int k = lx.k_min; k <= lx.k_max; ++k) coeffs[std::to_string(k)] = to_json(lx.N(k));
    return json{{"z0", to_json(lx.z0)},         {"min_order", lx.min_order},
                {"k_min", lx.k_min},            {"k_max", lx.k_max},
                {"radius", lx.radius},          {"nodes_used", lx.nodes_used},
                {"doubling_change", lx.doubling_change}, {"coeffs", coeffs}};
}

json to_json(const Subspace& s) {
    return json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", to_json(s.basis())}};
}

json to_json(const Decomposition& d) {
    json out{{"kind", to_string(d.kind)},
             {"truncation_K", d.truncation_K},
             {"tail_norm", d.tail_norm},
             {"taylor_radius", d.taylor_radius},
             {"oracle_rel_error", d.oracle_rel_error}};
    if (d.kind == Kind::I1) {
        out["psi1"] = to_json(d.psi1);
    } else {
        out["upsilon_minus2"] = to_json(d.upsilon2);
        out["upsilon_minus1"] = to_json(d.upsilon1);
    }
    json pt = json::array();
    for (const auto& m : d.psitilde) pt.push_back(to_json(m));
    out["psitilde"] = pt;
    return out;
}

json to_json(const CointegrationReport& r) {
    json spaces = json::object();
    for (const auto& s : r.spaces) spaces[s.name] = to_json(s.space);
    return json{{"kind", to_string(r.kind)}, {"spaces", spaces}};
}

json to_json(const StationarityVerdict& v) {
    return json{{"direction", to_json(v.direction)},
                {"growth_slope", v.growth_slope},
                {"verdict", v.stationary ? "stationary" : "trending"},
                {"threshold", v.threshold},
                {"replications", v.replications},
                {"times", v.times},
                {"variances", v.variances}};
}

json to_json(const CorpusReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases) {
        json jc{{"name", c.name},
                {"id", c.spec.id},
                {"N", c.spec.N},
                {"lambdas", c.lambdas},
                {"expected_order", to_json(c.expected)},
                {"pass", c.pass}};
        if (!c.error.empty()) {
            jc["error"] = c.error;
        } else {
            jc["simple_pole"] = to_json(c.simple);
            if (!c.second.flags.empty()) jc["second_order"] = to_json(c.second);
            jc["formula_rel_error"] = c.formula_rel_error;
            jc["doubling_change"] = c.doubling_change;
        }
        cases.push_back(std::move(jc));
    }
    return json{{"N", r.N}, {"z0", to_json(Complex(1, 0))}, {"all_pass", r.all_pass()}, {"cases", cases}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("cannot parse " + path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t";
    for (Eigen::Index i = 1; i <= tr.dim; ++i) os << ",re" << i << ",im" << i;
    os << '\n';
    std::ostringstream line;
    line << std::setprecision(17);
    for (std::size_t t = 0; t < tr.values.size(); ++t) {
        line.str("");
        line << t;
        for (Eigen::Index i = 0; i < tr.dim; ++i) line << ',' << tr.values[t](i).real() << ',' << tr.values[t](i).imag();
        os << line.str() << '\n';
    }
}

}  // namespace polerep::io
