#pragma once

// JSON (complex numbers as [re, im], matrices row-major) and CSV export.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "polerep/corpus.hpp"
#include "polerep/simulation.hpp"

namespace polerep::io {

using nlohmann::json;

json to_json(Complex z);
json to_json(const Matrix& m);
json to_json(const Vector& v);
Complex complex_from_json(const json& j);
Matrix matrix_from_json(const json& j);
Vector vector_from_json(const json& j);

/// {"coeffs": [A_0, A_1, ...]}
json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const json& j);
/// {"phis": [Phi_1, ...], "sigma_factor": L}
json model_to_json(const ARModel& m);
ARModel model_from_json(const json& j);

json to_json(const PoleOrder& o);
json to_json(const PoleVerdict& v);
json to_json(const LaurentExpansion& lx);
json to_json(const Subspace& s);
json to_json(const Decomposition& d);
json to_json(const CointegrationReport& r);
json to_json(const StationarityVerdict& v);
json to_json(const CorpusReport& r);

/// Stable text form: dump(2) plus a trailing newline.
std::string dump(const json& j);
json parse_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Columns t, then re/im pairs per coordinate.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

}  // namespace polerep::io
