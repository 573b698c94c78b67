#include "polerep/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polerep/io.hpp"

namespace polerep {

namespace {

// "example:<id>[:N]" -> spec; nullopt for anything else
std::optional<ExampleSpec> parse_example(const std::string& source) {
    const std::string prefix = "example:";
    if (source.rfind(prefix, 0) != 0) return std::nullopt;
    ExampleSpec spec;
    std::string rest = source.substr(prefix.size());
    const auto colon = rest.find(':');
    try {
        spec.id = std::stoi(rest.substr(0, colon));
        if (colon != std::string::npos) spec.N = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
        throw InvalidArgument("bad example source '" + source + "' (expected example:<id>[:N])");
    }
    return spec;
}

std::string output_dir(const RunConfig& cfg) {
    std::string dir = cfg.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("POLEREP_OUT_DIR");
        dir = env && *env ? env : ".";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

Vector pick_direction(const RunConfig& cfg, const CointegrationReport& rep, Eigen::Index n) {
    auto first = [&](const std::string& name) -> Vector {
        const Subspace& s = rep.get(name);
        if (s.empty()) throw InvalidArgument("direction space " + name + " is {0}");
        return s.basis().col(0);
    };
    const bool i1 = rep.kind == Kind::I1;
    if (cfg.direction == "space:coint") {
        if (i1) return first("cointegrating");
        if (!rep.get("tier2_coker_U2_cap_coker_U1").empty()) return first("tier2_coker_U2_cap_coker_U1");
        return first("tier1_coker_U2");
    }
    if (cfg.direction == "space:attractor") return first(i1 ? "attractor" : "trend2_ran_U2");
    Vector v(n);
    std::stringstream ss(cfg.direction);
    std::string tok;
    Eigen::Index i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= n) throw InvalidArgument("direction has more than " + std::to_string(n) + " entries");
        try {
            v(i++) = Complex(std::stod(tok), 0.0);
        } catch (const std::exception&) {
            throw InvalidArgument("bad direction entry '" + tok + "'");
        }
    }
    if (i != n) throw InvalidArgument("direction needs " + std::to_string(n) + " entries");
    if (v.norm() == 0) throw InvalidArgument("direction must be nonzero");
    return v / v.norm();
}

Decomposition decompose_as(const ARModel& model, const RunConfig& cfg) {
    if (cfg.kind == "auto") return decompose(model, cfg.opts);
    if (cfg.kind == "i1") return i1_decomposition(model, cfg.opts);
    if (cfg.kind == "i2") return i2_decomposition(model, cfg.opts);
    throw InvalidArgument("kind must be auto, i1 or i2");
}

RunResult run_analyze(const RunConfig& cfg) {
    const Pencil p = load_pencil(cfg.pencil);
    const PoleOrder order = pole_order(p, cfg.z0, cfg.opts);
    io::json out;
    out["pencil"] = cfg.pencil;
    out["simple_pole"] = io::to_json(classify_simple_pole(p, cfg.z0, cfg.opts));
    if (!(order == 1)) out["second_order"] = io::to_json(classify_second_order(p, cfg.z0, cfg.opts));
    out["laurent_oracle"] =
        io::to_json(laurent_oracle(p, cfg.z0, -(cfg.opts.cap + 2), 0, cfg.opts.radius, cfg.opts.nodes, cfg.opts.order_threshold));
    if (order == 1) {
        out["closed_form"] = {{"N_-1", io::to_json(residue_simple(p, cfg.z0, cfg.opts))}};
    } else if (order == 2) {
        const auto [n2, n1] = laurent_principal_second(p, cfg.z0, cfg.opts);
        out["closed_form"] = {{"N_-2", io::to_json(n2)}, {"N_-1", io::to_json(n1)}};
    }
    RunResult res;
    res.files.push_back(join(output_dir(cfg), "analyze.json"));
    io::write_file(res.files.back(), io::dump(out));
    res.summary = "pole order at z0: " + order.str();
    return res;
}

RunResult run_decompose(const RunConfig& cfg) {
    const ARModel model = load_model(cfg.model);
    const Decomposition d = decompose_as(model, cfg);
    const io::json out{{"model", cfg.model},
                       {"decomposition", io::to_json(d)},
                       {"cointegration", io::to_json(cointegration_spaces(model, d))}};
    RunResult res;
    res.files.push_back(join(output_dir(cfg), "decompose.json"));
    io::write_file(res.files.back(), io::dump(out));
    res.summary = std::string("kind ") + to_string(d.kind) + ", K = " + std::to_string(d.truncation_K);
    return res;
}

RunResult run_simulate(const RunConfig& cfg) {
    const ARModel model = load_model(cfg.model);
    const Decomposition d = decompose_as(model, cfg);
    const Vector x = pick_direction(cfg, cointegration_spaces(model, d), model.dim());
    const StationarityVerdict v =
        stationarity_probe(model, d, x, cfg.T, cfg.replications, cfg.seed, 0.3, cfg.real_valued);
    const std::vector<Vector> zero_start(static_cast<std::size_t>(model.order()), Vector::Zero(model.dim()));
    const Trajectory tr = simulate_ar(model, cfg.T, cfg.seed, zero_start, cfg.real_valued);

    RunResult res;
    const std::string dir = output_dir(cfg);
    res.files.push_back(join(dir, "trajectory.csv"));
    {
        std::ofstream os(res.files.back());
        if (!os) throw InvalidArgument("cannot write " + res.files.back());
        io::write_trajectory_csv(os, tr);
    }
    res.files.push_back(join(dir, "stationarity.json"));
    const io::json out{{"model", cfg.model}, {"T", cfg.T}, {"seed", cfg.seed}, {"verdict", io::to_json(v)}};
    io::write_file(res.files.back(), io::dump(out));
    std::ostringstream os;
    os << (v.stationary ? "stationary" : "trending") << " (slope " << v.growth_slope << ")";
    res.summary = os.str();
    return res;
}

RunResult run_corpus_command(const RunConfig& cfg) {
    const CorpusReport rep = run_corpus(cfg.N);
    RunResult res;
    res.files.push_back(join(output_dir(cfg), "corpus.json"));
    io::write_file(res.files.back(), io::dump(io::to_json(rep)));
    std::ostringstream os;
    for (const auto& c : rep.cases)
        os << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (order " << c.simple.order.str() << ", expected "
           << c.expected.str() << ")\n";
    res.summary = os.str();
    res.ok = rep.all_pass();
    return res;
}

}  // namespace

Pencil load_pencil(const std::string& source) {
    if (source == "jordan") return jordan_pencil();
    if (auto spec = parse_example(source)) return Pencil::from_ar({example_operator(*spec)});
    return io::pencil_from_json(io::parse_file(source));
}

ARModel load_model(const std::string& source) {
    if (source == "jordan") return jordan_model();
    if (source == "jordan3") return jordan_model(true);
    if (auto spec = parse_example(source)) return example_model(*spec);
    return io::model_from_json(io::parse_file(source));
}

RunResult run(const RunConfig& cfg) {
    if (cfg.command == "analyze") {
        if (cfg.pencil.empty()) throw InvalidArgument("analyze needs --pencil");
        return run_analyze(cfg);
    }
    if (cfg.command == "decompose" || cfg.command == "simulate") {
        if (cfg.model.empty()) throw InvalidArgument(cfg.command + " needs --model");
        return cfg.command == "decompose" ? run_decompose(cfg) : run_simulate(cfg);
    }
    if (cfg.command == "corpus") return run_corpus_command(cfg);
    throw InvalidArgument("unknown command '" + cfg.command + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConsistencyError*>(&e)) return 3;
    if (dynamic_cast<const ClassificationError*>(&e)) return 2;
    return 1;
}

}  // namespace polerep
