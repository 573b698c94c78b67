#pragma once

// Batch commands behind the command-line tool.

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "polerep/corpus.hpp"

namespace polerep {

struct RunConfig {
    std::string command;        // analyze | decompose | simulate | corpus
    std::string pencil;         // analyze: file, example:<id>[:N], jordan
    std::string model;          // decompose/simulate: file, example:<id>[:N], jordan, jordan3
    Complex z0{1.0, 0.0};
    PoleOptions opts;
    std::string kind = "auto";  // auto | i1 | i2
    int T = 2000;
    int replications = 200;
    std::uint64_t seed = 1;
    std::string direction = "space:coint";  // comma-separated reals, space:coint, space:attractor
    bool real_valued = false;
    int N = 16;
    std::string out_dir;        // empty: $POLEREP_OUT_DIR, then "."
};

struct RunResult {
    std::vector<std::string> files;
    std::string summary;
    bool ok = true;             // corpus: every case matched
};

Pencil load_pencil(const std::string& source);
ARModel load_model(const std::string& source);

RunResult run(const RunConfig& config);

/// 0 success, 2 classification/assumption failure, 3 numerical consistency
/// failure, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace polerep
