// Command-line front end: run preset or custom sweeps, compute single-point
// metrics, inspect adjacency matrices.

#include "resmem/errors.hpp"
#include "resmem/netstats.hpp"
#include "resmem/report.hpp"
#include "resmem/reservoir.hpp"
#include "resmem/sweep.hpp"
#include "resmem/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;

namespace {

std::string preset_list()
{
    std::string out;
    for (const auto& p : resmem::preset_experiments()) {
        out += "  ";
        out += p.name;
        out += "\n";
    }
    return out;
}

int cmd_run(const std::string& target, const std::string& out_dir, const std::string& seeds,
            int workers, int smoke)
{
    resmem::SweepSpec spec;
    if (fs::exists(target) && fs::is_regular_file(target)) {
        spec = resmem::parse_sweep_config(target);
    } else {
        spec = resmem::preset_by_name(target);
    }
    if (!seeds.empty()) {
        spec.seeds.clear();
        std::stringstream ss(seeds);
        std::string item;
        while (std::getline(ss, item, ',')) spec.seeds.push_back(std::stoull(item));
    }
    if (smoke > 1) spec = resmem::apply_smoke(spec, smoke);

    fs::create_directories(out_dir);
    resmem::SweepResult result = resmem::run_sweep(spec, workers);

    std::string csv_path = (fs::path(out_dir) / (spec.name + ".csv")).string();
    std::string manifest_path = (fs::path(out_dir) / (spec.name + ".manifest.json")).string();
    resmem::write_csv(result.rows, csv_path);
    resmem::write_manifest(spec, result, csv_path, manifest_path);

    std::printf("%s: %zu rows in %.1fs -> %s\n", spec.name.c_str(), result.rows.size(),
                result.wall_seconds, csv_path.c_str());
    return 0;
}

int cmd_metrics(const std::string& config_path, const std::string& out_path, int workers)
{
    resmem::SweepSpec spec = resmem::parse_sweep_config(config_path);
    resmem::SweepResult result = resmem::run_sweep(spec, workers);
    std::string csv = resmem::to_csv(result.rows);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw resmem::invalid_input_error("cannot open " + out_path);
        out << csv;
    }
    return 0;
}

int cmd_netstats(const std::string& matrix_path, double calibrate_target, bool do_calibrate)
{
    resmem::AdjacencyMatrix a = resmem::load_adjacency_csv(matrix_path);
    resmem::PathLengthReport report = resmem::path_length_report(a);
    std::printf("nodes:             %d\n", a.size());
    std::printf("occupied_fraction: %.6g\n", a.eta_f);
    std::printf("spectral_radius:   %.10g\n", a.spectral_radius);
    std::printf("mean_unweighted:   %.10g\n", report.mean_unweighted);
    std::printf("mean_weighted:     %.10g\n", report.mean_weighted);
    std::printf("unreachable_pairs: %ld\n", report.unreachable_pairs);
    if (do_calibrate) {
        double rho = resmem::calibrate_spectral_radius(a, calibrate_target);
        std::printf("calibrated_rho:    %.10g  (target <L_W> = %g)\n", rho, calibrate_target);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string("resmem ") + resmem::kVersion
                 + " - reservoir memory experiments\n\npresets:\n" + preset_list()};
    app.require_subcommand(1);

    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    auto* run = app.add_subcommand("run", "run a preset or config-file sweep");
    std::string target, out_dir = "results", seeds;
    int smoke = 1;
    run->add_option("target", target, "preset name or config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seeds", seeds, "comma-separated seed list");
    run->add_option("--workers", workers, "worker threads");
    run->add_option("--smoke", smoke, "smoke factor: decimate grids and shorten runs");

    auto* metrics = app.add_subcommand("metrics", "compute metrics for a config file");
    std::string config_path, metrics_out;
    metrics->add_option("--config", config_path, "sweep config file")->required();
    metrics->add_option("--out", metrics_out, "output CSV (stdout when omitted)");
    metrics->add_option("--workers", workers, "worker threads");

    auto* netstats = app.add_subcommand("netstats", "path statistics of an adjacency CSV");
    std::string matrix_path;
    double calibrate_target = 2.0;
    netstats->add_option("--matrix", matrix_path, "adjacency matrix CSV")->required();
    auto* cal = netstats->add_option("--calibrate", calibrate_target,
                                     "also calibrate rho to this <L_W>");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(target, out_dir, seeds, workers, smoke);
        if (metrics->parsed()) return cmd_metrics(config_path, metrics_out, workers);
        if (netstats->parsed()) return cmd_netstats(matrix_path, calibrate_target, cal->count() > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
