// polerep: pole classification, representation and simulation reports.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polerep/run.hpp"

namespace {

polerep::Complex parse_z0(const std::string& s) {
    std::stringstream ss(s);
    double re = 0, im = 0;
    char comma = 0;
    ss >> re;
    if (ss >> comma && comma == ',') ss >> im;
    if (ss.fail()) throw polerep::InvalidArgument("z0 must be re,im");
    return {re, im};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pole analysis and integrated-process representations for matrix AR laws of motion"};
    app.require_subcommand(1);
    polerep::RunConfig cfg;
    std::string z0 = "1,0";
    double tol = 0;

    auto* analyze = app.add_subcommand("analyze", "classify the pole of A(z)^{-1} at z0");
    analyze->add_option("--pencil", cfg.pencil, "pencil JSON file, example:<id>[:N] or jordan")->required();
    analyze->add_option("--z0", z0, "spectral point as re,im")->capture_default_str();
    analyze->add_option("--tol", tol, "rank and bijectivity tolerance (0 = relative default)");
    analyze->add_option("--cap", cfg.opts.cap, "largest pole order resolved")->capture_default_str();

    auto* decompose = app.add_subcommand("decompose", "I(1)/I(2) representation and cointegration spaces");
    decompose->add_option("--model", cfg.model, "model JSON file, example:<id>[:N], jordan or jordan3")->required();
    decompose->add_option("--kind", cfg.kind, "auto, i1 or i2")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "simulate a trajectory and probe stationarity of <X_t, x>");
    simulate->add_option("--model", cfg.model, "model JSON file, example:<id>[:N], jordan or jordan3")->required();
    simulate->add_option("--kind", cfg.kind, "auto, i1 or i2")->capture_default_str();
    simulate->add_option("--T", cfg.T, "sample length")->capture_default_str();
    simulate->add_option("--reps", cfg.replications, "replications (>= 100)")->capture_default_str();
    simulate->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    simulate->add_option("--direction", cfg.direction, "comma-separated reals, space:coint or space:attractor")
        ->capture_default_str();
    simulate->add_flag("--real", cfg.real_valued, "real Gaussian innovations");

    auto* corpus = app.add_subcommand("corpus", "classify the example operators at z0 = 1");
    corpus->add_option("--N", cfg.N, "truncation dimension")->capture_default_str();

    for (auto* sub : {analyze, decompose, simulate, corpus})
        sub->add_option("--out", cfg.out_dir, "output directory (default $POLEREP_OUT_DIR or .)");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        cfg.z0 = parse_z0(z0);
        if (tol > 0) cfg.opts.rank_tol = cfg.opts.bijectivity_tol = tol;
        const auto res = polerep::run(cfg);
        std::cout << res.summary << (res.summary.empty() || res.summary.back() == '\n' ? "" : "\n");
        for (const auto& f : res.files) std::cout << "wrote " << f << '\n';
        return res.ok ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return polerep::exit_code_for(e);
    }
}
