#include "resmem/sweep.hpp"

#include "resmem/errors.hpp"
#include "resmem/lyapunov.hpp"
#include "resmem/memory.hpp"
#include "resmem/netstats.hpp"
#include "resmem/readout.hpp"
#include "resmem/rng.hpp"
#include "resmem/signals.hpp"
#include "resmem/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

namespace resmem {

std::string driver_name(Driver d)
{
    switch (d) {
        case Driver::lorenz: return "lorenz";
        case Driver::rossler: return "rossler";
        case Driver::narma: return "narma";
        case Driver::noise: return "noise";
    }
    return "unknown";
}

Driver driver_from_name(const std::string& name)
{
    if (name == "lorenz") return Driver::lorenz;
    if (name == "rossler") return Driver::rossler;
    if (name == "narma") return Driver::narma;
    if (name == "noise") return Driver::noise;
    throw invalid_input_error("unknown driver: " + name);
}

namespace {

struct GridPoint {
    double eta_f = 1.0;
    double g = 1.0;
    double epsilon = 1.0;
    int d_e = 1;
};

bool wants(const SweepSpec& spec, const std::string& metric)
{
    return std::find(spec.metrics.begin(), spec.metrics.end(), metric) != spec.metrics.end();
}

struct DrivePair {
    TimeSeries input;
    TimeSeries target; ///< empty for the noise driver
};

DrivePair make_drive(const SweepSpec& spec, int n_narma, long length, std::uint64_t seed)
{
    DrivePair out;
    switch (spec.driver) {
        case Driver::lorenz: {
            Trajectory3 t = integrate_lorenz(OdeParams::lorenz_defaults(), length, seed);
            out.input = std::move(t.x);
            out.target = std::move(t.z);
            break;
        }
        case Driver::rossler: {
            Trajectory3 t = integrate_rossler(OdeParams::rossler_defaults(), length, seed);
            out.input = std::move(t.x);
            out.target = std::move(t.z);
            break;
        }
        case Driver::narma: {
            NarmaParams p;
            p.order = n_narma;
            auto [u, y] = narma_generate(p, length, seed);
            out.input = std::move(u);
            out.target = std::move(y);
            break;
        }
        case Driver::noise: {
            out.input = gaussian_noise(length, seed);
            break;
        }
    }
    return out;
}

void push_curve(std::vector<MetricRow>& rows, const MetricRow& base, const std::string& metric,
                const MemoryCurve& curve)
{
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        MetricRow r = base;
        r.metric = metric;
        r.tau = curve.tau_start + static_cast<long>(i);
        r.value = curve.values[i];
        rows.push_back(std::move(r));
    }
}

/// All rows for one grid point: per-seed rows followed by per-metric mean
/// rows. Failures of a (seed, metric) evaluation become error rows.
std::vector<MetricRow> evaluate_point(const SweepSpec& spec, const GridPoint& p)
{
    std::vector<MetricRow> rows;

    ReservoirConfig config;
    config.M = spec.M;
    config.g = p.g;
    config.epsilon = p.epsilon;
    config.d_e = p.d_e;
    config.washout = spec.washout;
    config.n_fit = spec.n_fit;
    config.kind = spec.kind;

    long drive_len = spec.washout + spec.n_fit;
    if (wants(spec, "d_var") || wants(spec, "var_curve"))
        drive_len = std::max(drive_len,
                             spec.washout + static_cast<long>(spec.var_samples) * spec.tau_max + 1);
    if (wants(spec, "lyapunov_max"))
        drive_len = std::max(drive_len, spec.washout + spec.lyapunov_steps + 1);

    for (std::uint64_t seed : spec.seeds) {
        MetricRow base;
        base.experiment = spec.name;
        base.driver = driver_name(spec.driver);
        base.g = p.g;
        base.epsilon = p.epsilon;
        base.eta_f = p.eta_f;
        base.d_e = p.d_e;
        base.seed = static_cast<long>(seed);

        auto emit_error = [&rows, &base](const std::string& what) {
            MetricRow r = base;
            r.metric = "error";
            rows.push_back(std::move(r));
            std::cerr << "[sweep] grid point failed: " << what << "\n";
        };

        try {
            AdjacencyMatrix a = make_adjacency(spec.M, p.eta_f, spec.spectral_radius,
                                               derive_seed(seed, 0xa0));
            double rho = spec.spectral_radius;
            if (spec.calibrate_lw) {
                rho = calibrate_spectral_radius(a, spec.lw_target);
                a = rescale_spectral_radius(a, rho);
            }
            base.rho = rho;

            if (wants(spec, "rho_calibrated")) {
                MetricRow r = base;
                r.metric = "rho_calibrated";
                r.value = rho;
                rows.push_back(std::move(r));
            }
            if (wants(spec, "path_unweighted") || wants(spec, "path_weighted")) {
                PathLengthReport report = path_length_report(a);
                if (wants(spec, "path_unweighted")) {
                    MetricRow r = base;
                    r.metric = "path_unweighted";
                    r.value = report.mean_unweighted;
                    rows.push_back(std::move(r));
                }
                if (wants(spec, "path_weighted")) {
                    MetricRow r = base;
                    r.metric = "path_weighted";
                    r.value = report.mean_weighted;
                    rows.push_back(std::move(r));
                }
            }
            if (wants(spec, "delay_coeffs")) {
                // The linear model keeps A at unit radius; rho is the
                // explicit multiplier.
                AdjacencyMatrix unit = rescale_spectral_radius(a, 1.0);
                DelayCoefficients dc = linear_delay_coefficients(unit, rho);
                for (int j = 0; j < 4; ++j) {
                    MetricRow r = base;
                    r.metric = "delay_coeff";
                    r.tau = j + 1;
                    r.value = dc.b_mean[j];
                    rows.push_back(std::move(r));
                }
            }

            if (wants(spec, "mc") || wants(spec, "mc_curve")) {
                MemoryCapacityOptions opts;
                opts.tau_max = spec.tau_max;
                MemoryCurve curve = memory_capacity_curve(config, a, derive_seed(seed, 0x3c), opts);
                if (wants(spec, "mc")) {
                    MetricRow r = base;
                    r.metric = "mc";
                    r.value = total_memory_capacity(curve);
                    rows.push_back(std::move(r));
                }
                if (wants(spec, "mc_curve")) push_curve(rows, base, "mc_tau", curve);
            }

            const bool is_narma = spec.driver == Driver::narma;
            const std::vector<int> orders = is_narma ? spec.narma_orders : std::vector<int>{-1};

            bool drive_needed = wants(spec, "theta_d") || wants(spec, "theta_curve")
                                || wants(spec, "d_var") || wants(spec, "var_curve")
                                || wants(spec, "lyapunov_max") || wants(spec, "autocorr");
            bool fit_needed = (wants(spec, "train_error") || wants(spec, "test_error"))
                              && spec.driver != Driver::noise;

            std::vector<DrivePair> trains;
            if (drive_needed || fit_needed)
                for (int n_narma : orders)
                    trains.push_back(make_drive(spec, n_narma, drive_len, derive_seed(seed, 1)));

            if (drive_needed) {
                for (std::size_t oi = 0; oi < orders.size(); ++oi) {
                    // NARMA orders share the input draw, so the drive-dependent
                    // metrics are computed once per distinct input.
                    if (oi > 0 && trains[oi].input.values == trains[0].input.values) continue;
                    MetricRow obase = base;
                    obase.n_narma = orders[oi];
                    const TimeSeries& input = trains[oi].input;

                    if (wants(spec, "autocorr")) {
                        auto c = autocorrelation(input, spec.autocorr_max_lag);
                        for (std::size_t tau = 0; tau < c.size(); ++tau) {
                            MetricRow r = obase;
                            r.metric = "autocorr";
                            r.tau = static_cast<long>(tau);
                            r.value = c[tau];
                            rows.push_back(std::move(r));
                        }
                    }
                    if (wants(spec, "theta_d") || wants(spec, "theta_curve")) {
                        StateTrajectory traj = drive_states(config, a, input);
                        DelayCapacityResult dc = delay_capacity(traj, spec.tau_max);
                        if (wants(spec, "theta_d")) {
                            MetricRow r = obase;
                            r.metric = "theta_d";
                            r.value = dc.theta_d;
                            rows.push_back(std::move(r));
                        }
                        if (wants(spec, "theta_curve")) push_curve(rows, obase, "trace_c", dc.curve);
                    }
                    if (wants(spec, "d_var") || wants(spec, "var_curve")) {
                        VariationResult nv = norm_of_variation(config, a, input, spec.tau_max,
                                                               spec.var_samples,
                                                               derive_seed(seed, 4));
                        if (wants(spec, "d_var")) {
                            MetricRow r = obase;
                            r.metric = "d_var";
                            r.value = nv.d_var;
                            rows.push_back(std::move(r));
                        }
                        if (wants(spec, "var_curve")) {
                            MemoryCurve curve;
                            curve.tau_start = 0;
                            curve.values = nv.mean_norms;
                            push_curve(rows, obase, "delta_norm", curve);
                        }
                    }
                    if (wants(spec, "lyapunov_max")) {
                        LyapunovSpec ls;
                        ls.n_steps = spec.lyapunov_steps;
                        LyapunovResult lr = lyapunov_spectrum(config, a, input, ls,
                                                              derive_seed(seed, 5));
                        MetricRow r = obase;
                        r.metric = "lyapunov_max";
                        r.value = lr.exponents[0];
                        rows.push_back(std::move(r));
                    }
                }
            }

            if (fit_needed) {
                std::vector<DrivePair> tests;
                for (int n_narma : orders)
                    tests.push_back(make_drive(spec, n_narma, spec.washout + spec.n_fit,
                                               derive_seed(seed, 2)));

                // Batch the orders that share both input draws through one
                // factorization; oddballs (regenerated NARMA draws) fall back
                // to their own fit.
                std::vector<std::vector<std::size_t>> groups;
                for (std::size_t oi = 0; oi < orders.size(); ++oi) {
                    bool placed = false;
                    for (auto& grp : groups) {
                        if (trains[oi].input.values == trains[grp[0]].input.values
                            && tests[oi].input.values == tests[grp[0]].input.values) {
                            grp.push_back(oi);
                            placed = true;
                            break;
                        }
                    }
                    if (!placed) groups.push_back({oi});
                }

                auto emit_fit = [&](FitScope scope, const std::string& suffix) {
                    for (const auto& grp : groups) {
                        std::vector<TimeSeries> train_targets, test_targets;
                        for (std::size_t oi : grp) {
                            train_targets.push_back(trains[oi].target);
                            test_targets.push_back(tests[oi].target);
                        }
                        TrainTestOptions opts;
                        opts.scope = scope;
                        auto fits = train_test_multi(config, a, trains[grp[0]].input,
                                                     train_targets, tests[grp[0]].input,
                                                     test_targets, opts);
                        for (std::size_t k = 0; k < grp.size(); ++k) {
                            MetricRow obase = base;
                            obase.n_narma = orders[grp[k]];
                            if (wants(spec, "train_error")) {
                                MetricRow r = obase;
                                r.metric = "train_error" + suffix;
                                r.value = fits[k].train_error;
                                rows.push_back(std::move(r));
                            }
                            if (wants(spec, "test_error")) {
                                MetricRow r = obase;
                                r.metric = "test_error" + suffix;
                                r.value = fits[k].test_error;
                                rows.push_back(std::move(r));
                            }
                        }
                    }
                };
                emit_fit(FitScope::all_signals, "");
                if (spec.fit_first_components && spec.kind == NodeKind::multidim)
                    emit_fit(FitScope::first_components, "_first");
            }

            if (wants(spec, "gamma")) {
                MetricRow r = base;
                r.metric = "gamma";
                r.value = nonlinear_index(config, a);
                rows.push_back(std::move(r));
            }
        } catch (const error& e) {
            emit_error(e.what());
        }
    }

    // Mean rows over seeds, per (metric, tau, n_narma) group, in first-seen
    // order.
    if (spec.seeds.size() > 1) {
        std::vector<std::tuple<std::string, long, int>> order;
        std::map<std::tuple<std::string, long, int>, std::pair<double, long>> acc;
        for (const MetricRow& r : rows) {
            if (r.metric == "error" || std::isnan(r.value)) continue;
            auto key = std::make_tuple(r.metric, r.tau, r.n_narma);
            auto [it, inserted] = acc.emplace(key, std::make_pair(0.0, 0L));
            if (inserted) order.push_back(key);
            it->second.first += r.value;
            it->second.second += 1;
        }
        for (const auto& key : order) {
            const auto& [sum, count] = acc[key];
            MetricRow r;
            r.experiment = spec.name;
            r.driver = driver_name(spec.driver);
            r.metric = std::get<0>(key);
            r.tau = std::get<1>(key);
            r.n_narma = std::get<2>(key);
            r.g = p.g;
            r.epsilon = p.epsilon;
            r.eta_f = p.eta_f;
            r.d_e = p.d_e;
            r.is_mean = true;
            r.value = sum / static_cast<double>(count);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers)
{
    auto t0 = std::chrono::steady_clock::now();

    std::vector<GridPoint> points;
    for (double eta : spec.eta_f_values)
        for (double g : spec.g_values)
            for (double eps : spec.epsilon_values)
                for (int d_e : spec.d_e_values) points.push_back({eta, g, eps, d_e});
    if (points.empty()) throw invalid_input_error("empty parameter grid");
    if (spec.seeds.empty()) throw invalid_input_error("no seeds given");

    std::vector<std::vector<MetricRow>> per_point(points.size());
    std::atomic<std::size_t> next{0};
    int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));

    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) break;
            per_point[i] = evaluate_point(spec, points[i]);
        }
    };
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepResult result;
    for (auto& rows : per_point)
        result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                           std::make_move_iterator(rows.end()));
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

SweepSpec apply_smoke(const SweepSpec& spec, int factor)
{
    if (factor < 1) throw invalid_input_error("smoke factor must be >= 1");
    SweepSpec s = spec;
    auto decimate = [factor](auto& v) {
        std::decay_t<decltype(v)> kept;
        for (std::size_t i = 0; i < v.size(); i += factor) kept.push_back(v[i]);
        v = std::move(kept);
    };
    decimate(s.g_values);
    decimate(s.epsilon_values);
    decimate(s.eta_f_values);
    decimate(s.d_e_values);
    decimate(s.narma_orders);
    if (s.seeds.size() > 2) s.seeds.resize(2);
    s.washout = std::min<long>(s.washout, 500);
    s.n_fit = std::min<long>(s.n_fit, 2500);
    s.var_samples = std::min(s.var_samples, 20);
    s.lyapunov_steps = std::min<long>(s.lyapunov_steps, 20000);
    s.autocorr_max_lag = std::min(s.autocorr_max_lag, 500);
    s.tau_max = std::min(s.tau_max, 100);
    return s;
}

void write_manifest(const SweepSpec& spec, const SweepResult& result,
                    const std::string& csv_path, const std::string& manifest_path)
{
    nlohmann::json j;
    j["experiment"] = spec.name;
    j["version"] = kVersion;
    j["driver"] = driver_name(spec.driver);
    j["node_kind"] = spec.kind == NodeKind::multidim ? "multidim" : "tanh";
    j["metrics"] = spec.metrics;
    j["grid"]["g"] = spec.g_values;
    j["grid"]["epsilon"] = spec.epsilon_values;
    j["grid"]["eta_f"] = spec.eta_f_values;
    j["grid"]["d_e"] = spec.d_e_values;
    j["grid"]["narma_orders"] = spec.narma_orders;
    j["seeds"] = spec.seeds;
    j["M"] = spec.M;
    j["spectral_radius"] = spec.spectral_radius;
    j["washout"] = spec.washout;
    j["n_fit"] = spec.n_fit;
    j["tau_max"] = spec.tau_max;
    j["var_samples"] = spec.var_samples;
    j["lyapunov_steps"] = spec.lyapunov_steps;
    j["calibrate_lw"] = spec.calibrate_lw;
    j["lw_target"] = spec.lw_target;
    j["fit_first_components"] = spec.fit_first_components;
    j["csv"] = csv_path;
    j["rows"] = result.rows.size();
    j["wall_seconds"] = result.wall_seconds;

    std::ofstream out(manifest_path);
    if (!out) throw invalid_input_error("cannot open " + manifest_path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace resmem
