#include "resmem/signals.hpp"

#include "resmem/errors.hpp"
#include "resmem/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace resmem {

namespace {

using State3 = std::array<double, 3>;

State3 lorenz_rhs(const OdeParams& p, const State3& s)
{
    return {p.p1 * (s[1] - s[0]),
            s[0] * (p.p2 - s[2]) - s[1],
            s[0] * s[1] - p.p3 * s[2]};
}

State3 rossler_rhs(const OdeParams& p, const State3& s)
{
    return {-s[1] - p.p1 * s[2],
            s[0] + p.p2 * s[1],
            p.p3 + s[2] * (s[0] - p.p4)};
}

template <typename Rhs>
State3 rk4_step(const Rhs& rhs, const State3& s, double dt)
{
    State3 k1 = rhs(s);
    State3 s2, s3, s4;
    for (int i = 0; i < 3; ++i) s2[i] = s[i] + 0.5 * dt * k1[i];
    State3 k2 = rhs(s2);
    for (int i = 0; i < 3; ++i) s3[i] = s[i] + 0.5 * dt * k2[i];
    State3 k3 = rhs(s3);
    for (int i = 0; i < 3; ++i) s4[i] = s[i] + dt * k3[i];
    State3 k4 = rhs(s4);
    State3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

bool diverged(const State3& s)
{
    for (double v : s)
        if (!std::isfinite(v) || std::abs(v) > 1e6) return true;
    return false;
}

template <typename Rhs>
Trajectory3 integrate(const Rhs& rhs, const OdeParams& params, long n_steps, std::uint64_t seed,
                      const char* name)
{
    if (n_steps < 1) throw invalid_input_error("n_steps must be >= 1");
    if (params.dt <= 0) throw invalid_input_error("dt must be positive");
    if (params.substeps < 1) throw invalid_input_error("substeps must be >= 1");
    if (params.n_transient < 0) throw invalid_input_error("n_transient must be >= 0");

    rng_t rng = make_rng(derive_seed(seed, 0x0de));
    State3 s = params.initial_state;
    if (params.perturbation_scale > 0.0) {
        std::uniform_real_distribution<double> perturb(-params.perturbation_scale,
                                                       params.perturbation_scale);
        for (int i = 0; i < 3; ++i) s[i] += perturb(rng);
    }

    const double h = params.dt / params.substeps;
    auto advance_sample = [&](State3 state) {
        for (int i = 0; i < params.substeps; ++i) state = rk4_step(rhs, state, h);
        return state;
    };

    for (long k = 0; k < params.n_transient; ++k) {
        s = advance_sample(s);
        if (diverged(s))
            throw integration_diverged_error(std::string(name) + " integration diverged during transient");
    }

    Trajectory3 out;
    out.x.dt = out.y.dt = out.z.dt = params.dt;
    out.x.values.reserve(n_steps);
    out.y.values.reserve(n_steps);
    out.z.values.reserve(n_steps);
    for (long k = 0; k < n_steps; ++k) {
        out.x.values.push_back(s[0]);
        out.y.values.push_back(s[1]);
        out.z.values.push_back(s[2]);
        s = advance_sample(s);
        if (diverged(s))
            throw integration_diverged_error(std::string(name) + " integration diverged");
    }
    return out;
}

}  // namespace

OdeParams OdeParams::lorenz_defaults()
{
    OdeParams p;
    p.p1 = 10.0;
    p.p2 = 28.0;
    p.p3 = 8.0 / 3.0;
    p.dt = 0.02;
    return p;
}

OdeParams OdeParams::rossler_defaults()
{
    OdeParams p;
    p.p1 = 1.0;
    p.p2 = 0.2;
    p.p3 = 0.2;
    p.p4 = 5.7;
    p.dt = 0.3;
    p.substeps = 6; // RK4 at h = 0.3 is unstable for these parameters
    return p;
}

Trajectory3 integrate_lorenz(const OdeParams& params, long n_steps, std::uint64_t seed)
{
    auto rhs = [&](const State3& s) { return lorenz_rhs(params, s); };
    return integrate(rhs, params, n_steps, seed, "Lorenz");
}

Trajectory3 integrate_rossler(const OdeParams& params, long n_steps, std::uint64_t seed)
{
    auto rhs = [&](const State3& s) { return rossler_rhs(params, s); };
    return integrate(rhs, params, n_steps, seed, "Roessler");
}

std::vector<double> narma_recurrence(const NarmaParams& params, const std::vector<double>& u,
                                     bool* diverged)
{
    if (params.order < 1) throw invalid_input_error("NARMA order must be >= 1");
    if (diverged) *diverged = false;

    const long n = static_cast<long>(u.size());
    const int order = params.order;
    std::vector<double> y(n, 0.0);
    // y(k) = 0 for k < order, and for k < 0 inside the sum.
    auto y_at = [&](long k) { return k < 0 ? 0.0 : y[k]; };
    for (long k = order - 1; k + 1 < n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= order; ++j) acc += y_at(k - j);
        double next = params.a0 * y[k] + params.a1 * y[k] * acc
                    + params.a2 * u[k - order + 1] * u[k] + params.a3;
        y[k + 1] = next;
        if (!std::isfinite(next) || std::abs(next) > 1.0) {
            if (diverged) *diverged = true;
            return y;
        }
    }
    return y;
}

std::pair<TimeSeries, TimeSeries> narma_generate(const NarmaParams& params, long n_steps,
                                                 std::uint64_t seed)
{
    if (n_steps <= params.order) throw invalid_input_error("n_steps must exceed the NARMA order");
    if (!(params.u_low < params.u_high)) throw invalid_input_error("invalid NARMA input range");

    for (int attempt = 0; attempt < 10; ++attempt) {
        std::uint64_t sub_seed = seed + 1000000ULL * static_cast<std::uint64_t>(attempt);
        rng_t rng = make_rng(derive_seed(sub_seed, 0x4a6));
        std::uniform_real_distribution<double> dist(params.u_low, params.u_high);
        std::vector<double> u(n_steps);
        for (double& v : u) v = dist(rng);

        bool bad = false;
        std::vector<double> y = narma_recurrence(params, u, &bad);
        if (!bad) return {TimeSeries(std::move(u)), TimeSeries(std::move(y))};
    }
    throw numerical_error("NARMA sequence diverged for 10 consecutive sub-seeds");
}

TimeSeries gaussian_noise(long n, std::uint64_t seed)
{
    if (n < 1) throw invalid_input_error("noise length must be >= 1");
    rng_t rng = make_rng(derive_seed(seed, 0x90155));
    std::normal_distribution<double> dist(0.0, 1.0);
    TimeSeries out;
    out.values.resize(n);
    for (double& v : out.values) v = dist(rng);
    return out;
}

TimeSeries sine_probe(double period, long n)
{
    if (period <= 0) throw invalid_input_error("sine period must be positive");
    TimeSeries out;
    out.values.resize(n);
    for (long k = 0; k < n; ++k)
        out.values[k] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period);
    return out;
}

std::vector<double> autocorrelation(const TimeSeries& x, long max_lag)
{
    const long n = static_cast<long>(x.size());
    if (n <= max_lag) throw invalid_input_error("series shorter than max_lag");

    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= static_cast<double>(n);

    double var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    if (var <= 0.0 || !std::isfinite(var))
        throw degenerate_signal_error("zero-variance signal has no autocorrelation");

    std::vector<double> c(max_lag + 1, 0.0);
    for (long tau = 0; tau <= max_lag; ++tau) {
        double acc = 0.0;
        for (long k = tau; k < n; ++k) acc += (x.values[k] - mean) * (x.values[k - tau] - mean);
        c[tau] = acc / var;
    }
    return c;
}

}  // namespace resmem
