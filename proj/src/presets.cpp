#include "resmem/errors.hpp"
#include "resmem/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace resmem {

namespace {

std::vector<double> logspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

std::vector<int> int_range(int lo, int hi)
{
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

const std::vector<double> kEtaGrid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3,
                                      0.35, 0.4, 0.5,  0.6, 0.8,  1.0};

}  // namespace

std::vector<SweepSpec> preset_experiments()
{
    std::vector<SweepSpec> presets;

    {
        SweepSpec s;
        s.name = "memory-curve";
        s.driver = Driver::noise;
        s.metrics = {"mc", "mc_curve"};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "perturbation-decay";
        s.driver = Driver::lorenz;
        s.metrics = {"d_var", "var_curve"};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "correlation-trace";
        s.driver = Driver::lorenz;
        s.metrics = {"theta_d", "theta_curve"};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "autocorrelation";
        s.driver = Driver::lorenz;
        s.metrics = {"autocorr"};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "autocorrelation-rossler";
        s.driver = Driver::rossler;
        s.metrics = {"autocorr"};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "lorenz-grid";
        s.driver = Driver::lorenz;
        s.metrics = {"mc", "theta_d", "d_var", "train_error", "test_error"};
        s.g_values = logspace(0.05, 2.0, 20);
        s.epsilon_values = logspace(0.05, 2.0, 20);
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "nonlin-lyap";
        s.driver = Driver::lorenz;
        s.metrics = {"gamma", "lyapunov_max"};
        s.g_values = logspace(0.05, 2.0, 20);
        s.epsilon_values = logspace(0.05, 2.0, 20);
        s.seeds = {1}; // the probe/exponent surface is expensive
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "sparsity";
        s.driver = Driver::lorenz;
        s.metrics = {"mc", "theta_d", "d_var", "test_error", "rho_calibrated", "path_unweighted"};
        s.eta_f_values = kEtaGrid;
        s.epsilon_values = logspace(0.05, 2.0, 8);
        s.calibrate_lw = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "sparsity-rossler";
        s.driver = Driver::rossler;
        s.metrics = {"mc", "theta_d", "d_var", "test_error", "rho_calibrated", "path_unweighted"};
        s.eta_f_values = kEtaGrid;
        s.epsilon_values = logspace(0.05, 2.0, 8);
        s.calibrate_lw = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "unweighted-path";
        s.driver = Driver::noise;
        s.metrics = {"path_unweighted", "path_weighted"};
        s.eta_f_values = {0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4,
                          0.5,  0.6,  0.7, 0.8,  0.9, 1.0};
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "spectral-radius";
        s.driver = Driver::noise;
        s.metrics = {"rho_calibrated"};
        s.eta_f_values = kEtaGrid;
        s.calibrate_lw = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "delay-coefficients";
        s.driver = Driver::noise;
        s.metrics = {"delay_coeffs", "rho_calibrated"};
        s.eta_f_values = kEtaGrid;
        s.calibrate_lw = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "multidim-memory";
        s.driver = Driver::lorenz;
        s.kind = NodeKind::multidim;
        s.metrics = {"mc", "theta_d", "d_var"};
        s.g_values = {0.35};
        s.epsilon_values = {0.5};
        s.d_e_values = int_range(1, 10);
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "multidim-fits";
        s.driver = Driver::lorenz;
        s.kind = NodeKind::multidim;
        s.metrics = {"train_error", "test_error"};
        s.g_values = {0.35};
        s.epsilon_values = {0.5};
        s.d_e_values = int_range(1, 10);
        s.fit_first_components = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "multidim-fits-rossler";
        s.driver = Driver::rossler;
        s.kind = NodeKind::multidim;
        s.metrics = {"train_error", "test_error"};
        s.g_values = {0.35};
        s.epsilon_values = {0.5};
        s.d_e_values = int_range(1, 10);
        s.fit_first_components = true;
        presets.push_back(s);
    }
    {
        SweepSpec s;
        s.name = "narma-grid";
        s.driver = Driver::narma;
        s.kind = NodeKind::multidim;
        s.metrics = {"train_error", "test_error"};
        s.g_values = {0.35};
        s.epsilon_values = {0.35};
        s.d_e_values = int_range(1, 12);
        s.narma_orders = int_range(1, 10);
        presets.push_back(s);
    }
    return presets;
}

SweepSpec preset_by_name(const std::string& name)
{
    for (const SweepSpec& s : preset_experiments())
        if (s.name == name) return s;
    throw invalid_input_error("unknown preset: " + name);
}

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& value, Parse parse)
{
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse(item));
    }
    if (out.empty()) throw invalid_input_error("empty list value in config");
    return out;
}

bool parse_bool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw invalid_input_error("invalid boolean: " + v);
}

}  // namespace

SweepSpec parse_sweep_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open config file " + path);

    SweepSpec spec;
    spec.name = "custom";
    auto to_d = [](const std::string& s) { return std::stod(s); };
    auto to_i = [](const std::string& s) { return std::stoi(s); };
    auto to_u64 = [](const std::string& s) { return std::stoull(s); };
    auto to_s = [](const std::string& s) { return s; };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_input_error("config line " + std::to_string(line_no) + " lacks '='");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "name") spec.name = value;
        else if (key == "driver") spec.driver = driver_from_name(value);
        else if (key == "kind") {
            if (value == "tanh") spec.kind = NodeKind::tanh_node;
            else if (value == "multidim") spec.kind = NodeKind::multidim;
            else throw invalid_input_error("unknown node kind: " + value);
        }
        else if (key == "metrics") spec.metrics = parse_list<std::string>(value, to_s);
        else if (key == "g") spec.g_values = parse_list<double>(value, to_d);
        else if (key == "epsilon") spec.epsilon_values = parse_list<double>(value, to_d);
        else if (key == "eta_f") spec.eta_f_values = parse_list<double>(value, to_d);
        else if (key == "d_e") spec.d_e_values = parse_list<int>(value, to_i);
        else if (key == "narma_order") spec.narma_orders = parse_list<int>(value, to_i);
        else if (key == "seeds") spec.seeds = parse_list<std::uint64_t>(value, to_u64);
        else if (key == "M") spec.M = std::stoi(value);
        else if (key == "spectral_radius") spec.spectral_radius = std::stod(value);
        else if (key == "washout") spec.washout = std::stol(value);
        else if (key == "n_fit") spec.n_fit = std::stol(value);
        else if (key == "tau_max") spec.tau_max = std::stoi(value);
        else if (key == "var_samples") spec.var_samples = std::stoi(value);
        else if (key == "lyapunov_steps") spec.lyapunov_steps = std::stol(value);
        else if (key == "autocorr_max_lag") spec.autocorr_max_lag = std::stoi(value);
        else if (key == "calibrate_lw") spec.calibrate_lw = parse_bool(value);
        else if (key == "lw_target") spec.lw_target = std::stod(value);
        else if (key == "fit_first_components") spec.fit_first_components = parse_bool(value);
        else throw invalid_input_error("unknown config key: " + key);
    }
    if (spec.metrics.empty()) throw invalid_input_error("config selects no metrics");
    return spec;
}

}  // namespace resmem
