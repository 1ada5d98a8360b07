#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prodcauchy/harness.hpp"

namespace fs = std::filesystem;
using namespace prodcauchy;

namespace {

harness::RunConfig load_config(const std::string& path, const std::string& out_override,
                               std::uint64_t seed_override, bool has_seed) {
    harness::RunConfig cfg;
    if (!path.empty()) cfg = harness::parse_config(path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (has_seed) cfg.mc.seed = seed_override;
    return cfg;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot open output file " + (dir / name).string());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral statistics of products of complex Cauchy-Lorentz matrices"};
    app.require_subcommand(1);

    std::string config_path, out_dir, method = "meijer", kind = "finite", mode = "finite";
    std::string points_path, suite_name = "all";
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 1;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--seed", seed, "Monte-Carlo seed override")->each([&](const std::string&) {
        has_seed = true;
    });
    app.add_option("--threads", threads, "worker threads (must not change results)")
        ->check(CLI::PositiveNumber);

    auto* w = app.add_subcommand("weight", "evaluate a weight route on the radial grid");
    w->add_option("--method", method, "closed|meijer|quad|saddle|origin");

    auto* d = app.add_subcommand("density", "evaluate the eigenvalue density on the grid");
    d->add_option("--kind", kind, "finite|macroscopic");

    auto* k = app.add_subcommand("kernel", "evaluate a kernel at point pairs");
    k->add_option("--mode", mode, "finite|bulk|origin|bessel");
    k->add_option("--points", points_path, "CSV of zi_re,zi_im,zj_re,zj_im rows")
        ->check(CLI::ExistingFile);

    app.add_subcommand("sample", "sample product eigenvalues (square ensembles)");

    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("--suite", suite_name, "weights|kernels|limits|mc|all");

    CLI11_PARSE(app, argc, argv);

    try {
        const harness::RunConfig cfg = load_config(config_path, out_dir, seed, has_seed);
        const fs::path dir(cfg.out_dir);

        if (w->parsed()) {
            auto csv = open_out(dir, "weight_" + method + ".csv");
            harness::cmd_weight(cfg, method, csv);
            std::cout << (dir / ("weight_" + method + ".csv")).string() << '\n';
        } else if (d->parsed()) {
            auto csv = open_out(dir, "density_" + kind + ".csv");
            auto meta = open_out(dir, "density_" + kind + "_meta.json");
            harness::cmd_density(cfg, kind, csv, meta);
            std::cout << (dir / ("density_" + kind + ".csv")).string() << '\n';
        } else if (k->parsed()) {
            if (points_path.empty()) throw std::domain_error("kernel: --points required");
            std::ifstream pts(points_path);
            auto csv = open_out(dir, "kernel_" + mode + ".csv");
            harness::cmd_kernel(cfg, mode, pts, csv);
            std::cout << (dir / ("kernel_" + mode + ".csv")).string() << '\n';
        } else if (app.get_subcommand("sample")->parsed()) {
            auto csv = open_out(dir, "samples.csv");
            auto meta = open_out(dir, "samples_meta.json");
            harness::cmd_sample(cfg, threads, csv, meta, std::cout);
            std::cout << (dir / "samples.csv").string() << '\n';
        } else if (v->parsed()) {
            const auto suite = harness::suite_from_string(suite_name);
            auto jsonl = open_out(dir, "verify_" + suite_name + ".jsonl");
            std::ostringstream buffer;
            const bool ok = harness::cmd_verify(cfg, suite, threads, buffer);
            jsonl << buffer.str();
            std::cout << buffer.str();
            if (!ok) {
                std::cerr << "verification FAILED\n";
                return 1;
            }
            std::cout << "verification passed\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
