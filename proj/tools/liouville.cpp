// liouville: run the named experiments, list them, validate descriptors.
//
//   liouville list
//   liouville run <experiment> [--config FILE] [--out DIR] [--workers N] [--tol X]
//   liouville validate <descriptor.json>
//
// Exit status: 0 all verdicts pass, 1 some verdict fails, 2 usage or config error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "liouville/descriptor.hpp"
#include "liouville/errors.hpp"
#include "liouville/experiments.hpp"
#include "liouville/format.hpp"
#include "liouville/parallel.hpp"

using namespace liouville;

namespace {

int cmd_list() {
    for (const ExperimentInfo& e : experiment_registry()) {
        std::printf("%-20s %s\n", e.name.c_str(), e.description.c_str());
    }
    return 0;
}

int cmd_run(const std::string& name, const std::string& config, const std::string& out, int workers, double tol,
            bool tol_set) {
    if (find_experiment(name) == nullptr) {
        std::fprintf(stderr, "error: unknown experiment \"%s\" (see `liouville list`)\n", name.c_str());
        return 2;
    }
    ExperimentConfig cfg;
    try {
        cfg = make_experiment_config(name, config.empty() ? Json() : read_json_file(config));
        if (tol_set) {
            cfg.quad.rel_tol = tol;
            cfg.quad.validate();
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    if (workers > 0) set_worker_count(unsigned(workers));
    cfg.out_dir = out.empty() ? std::filesystem::path("results") / name : std::filesystem::path(out);

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    try {
        res = run_experiment(cfg);
    } catch (const InvalidConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "failed: %s\n", e.what());
        return 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const Verdict& v : res.verdicts) {
        std::printf("%s  %-40s %s\n", v.pass ? "pass" : "FAIL", v.name.c_str(), v.detail.c_str());
    }
    std::printf("%s: %s in %.2f s, output in %s\n", name.c_str(), res.pass() ? "pass" : "FAIL", secs,
                cfg.out_dir.string().c_str());
    return res.pass() ? 0 : 1;
}

int cmd_validate(const std::string& path) {
    try {
        const DescriptorSummary s = validate_descriptor(read_json_file(path));
        std::printf("ok  %s %s\n    %s\n", s.type.c_str(), s.label.c_str(), s.detail.c_str());
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "invalid: %s\n", e.what());
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for conformal metrics of curvature one"};
    app.require_subcommand(1);

    app.add_subcommand("list", "print the registered experiments");

    auto* run = app.add_subcommand("run", "run an experiment");
    std::string name, config, out;
    int workers = 0;
    double tol = 0.0;
    run->add_option("experiment", name, "experiment name")->required();
    run->add_option("--config", config, "JSON config file");
    run->add_option("--out", out, "output directory (default results/<experiment>)");
    run->add_option("--workers", workers, "worker threads (default LIOUVILLE_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
    auto* tol_opt = run->add_option("--tol", tol, "relative quadrature tolerance");

    auto* val = app.add_subcommand("validate", "parse and check a descriptor");
    std::string descriptor;
    val->add_option("descriptor", descriptor, "descriptor JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand("run")) return cmd_run(name, config, out, workers, tol, tol_opt->count() > 0);
    return cmd_validate(descriptor);
}
