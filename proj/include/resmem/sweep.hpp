#pragma once

// Experiment orchestration: named parameter sweeps over the library metrics
// with seeded, reproducible CSV output.

#include "resmem/report.hpp"
#include "resmem/reservoir.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace resmem {

enum class Driver { lorenz, rossler, narma, noise };

std::string driver_name(Driver d);
Driver driver_from_name(const std::string& name);

struct SweepSpec {
    std::string name;
    Driver driver = Driver::lorenz;
    NodeKind kind = NodeKind::tanh_node;
    /// Metric names: mc, mc_curve, theta_d, theta_curve, d_var, var_curve,
    /// train_error, test_error, lyapunov_max, gamma, path_unweighted,
    /// path_weighted, rho_calibrated, delay_coeffs, autocorr.
    std::vector<std::string> metrics;

    std::vector<double> g_values{1.0};
    std::vector<double> epsilon_values{1.0};
    std::vector<double> eta_f_values{1.0};
    std::vector<int> d_e_values{1};
    std::vector<int> narma_orders{10};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4};

    int M = 100;
    double spectral_radius = 1.0;
    long washout = 1000;
    long n_fit = 10000;
    int tau_max = 100;
    int var_samples = 100;
    long lyapunov_steps = 100000;
    int autocorr_max_lag = 1500;
    bool calibrate_lw = false;  ///< calibrate rho so <L_W> = lw_target
    double lw_target = 2.0;
    bool fit_first_components = false; ///< also emit first-component fits
};

struct SweepResult {
    std::vector<MetricRow> rows;
    double wall_seconds = 0.0;
};

/// Evaluate the Cartesian parameter grid. Grid points run on `workers`
/// threads; rows are merged in grid order so the output does not depend on
/// scheduling. Per-point failures become metric="error" rows.
///
/// Seed streams per grid point, derived with derive_seed(seed, stream):
/// stream 0xa0 builds the adjacency matrix, 1 the training drive, 2 the
/// testing drive, 0x3c the memory-capacity noise, 4 the variation-norm
/// perturbations, 5 the Lyapunov initialization.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/// The named experiments reproducing the paper-style figures.
std::vector<SweepSpec> preset_experiments();
SweepSpec preset_by_name(const std::string& name);

/// Reduce a spec for smoke runs: every grid axis is decimated by `factor`,
/// seeds capped at two and run lengths shortened. Same code path, small.
SweepSpec apply_smoke(const SweepSpec& spec, int factor);

/// Key-value config file (key = value, lists comma-separated, # comments).
SweepSpec parse_sweep_config(const std::string& path);

/// JSON manifest describing a finished sweep (spec echo, version, seeds,
/// row count, wall time).
void write_manifest(const SweepSpec& spec, const SweepResult& result,
                    const std::string& csv_path, const std::string& manifest_path);

}  // namespace resmem
