#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "rslax/harness.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

} // namespace

int main(int argc, char** argv)
{
    using namespace rslax;
    using namespace rslax::harness;

    CLI::App app{"rslax: elliptic Ruijsenaars-Schneider Lax matrices, flows, limits and reductions"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<double> tol_scale;

    for (const char* name : {"verify", "lax", "evolve", "limit", "reduce"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--tol-scale", tol_scale, "multiply every numeric tolerance")->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path, command);
    } catch (const Error& e) {
        std::cerr << "rslax: " << e.what() << "\n";
        return kExitUsage;
    }
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output_dir = *out_dir;
    if (tol_scale) cfg.tol_scale = *tol_scale;

    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    try {
        report = run_command(cfg);
        write_atomic((std::filesystem::path(cfg.output_dir) / "report.json").string(), report_json(report).dump(2) + "\n");
    } catch (const Error& e) {
        std::cerr << "rslax: " << e.what() << "\n";
        return e.kind() == ErrorKind::ConfigInvalid ? kExitUsage : kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "rslax: " << e.what() << "\n";
        return kExitFail;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& c : report.checks) {
        std::printf("%-4s  %-40s residual %-12.3e tolerance %-10.3e %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.residual, c.tolerance, c.detail.c_str());
    }
    std::printf("%s: %zu checks, %s, wall time %.2f s, outputs in %s\n", command.c_str(), report.checks.size(),
                report.all_pass() ? "all pass" : "FAILURES", wall, cfg.output_dir.c_str());
    return report.all_pass() ? 0 : kExitFail;
}
