#pragma once

// Driving and training signals: Lorenz / Roessler trajectories, NARMA
// sequences, noise, sine probes and autocorrelation analysis.

#include "resmem/time_series.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace resmem {

/// Parameters of a three-variable ODE benchmark system (p4 unused for Lorenz).
struct OdeParams {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    double dt = 0.02;
    /// Internal RK4 steps per output sample. dt is the sample spacing; the
    /// integrator step is dt / substeps. Roessler needs substeps at dt = 0.3,
    /// where a single RK4 step is unstable.
    int substeps = 1;
    long n_transient = 5000;
    std::array<double, 3> initial_state{1.0, 1.0, 1.0};
    /// Half-width of the seeded uniform perturbation added to initial_state;
    /// 0 integrates from initial_state exactly.
    double perturbation_scale = 0.1;

    static OdeParams lorenz_defaults();
    static OdeParams rossler_defaults();
};

/// NARMA recurrence constants. The defaults are the standard benchmark values.
struct NarmaParams {
    int order = 10;
    double a0 = 0.3;
    double a1 = 0.05;
    double a2 = 1.5;
    double a3 = 0.1;
    double u_low = 0.0;
    double u_high = 0.5;
};

struct Trajectory3 {
    TimeSeries x;
    TimeSeries y;
    TimeSeries z;
};

/// Integrate the Lorenz system with fixed-step RK4.
///
/// The seed perturbs the initial condition by a uniform draw in [-0.1, 0.1]^3
/// so that train/test runs differ; n_transient steps are discarded first.
/// Throws integration_diverged_error if the state norm exceeds 1e6.
Trajectory3 integrate_lorenz(const OdeParams& params, long n_steps, std::uint64_t seed);

/// Integrate the Roessler system with fixed-step RK4 (dt = 0.3 by default).
Trajectory3 integrate_rossler(const OdeParams& params, long n_steps, std::uint64_t seed);

/// Run the NARMA recurrence over a given input sequence.
///
/// y(k) = 0 for k < order; the recurrence is iterated from there. Returns the
/// output sequence; sets *diverged if |y| ever exceeds 1.
std::vector<double> narma_recurrence(const NarmaParams& params, const std::vector<double>& u,
                                     bool* diverged = nullptr);

/// Generate a NARMA input/output pair of length n_steps.
///
/// u is i.i.d. uniform in [u_low, u_high]. If the recurrence diverges the
/// pair is regenerated with a derived sub-seed (seed + 1e6 * attempt), at
/// most 10 times, before giving up with numerical_error.
std::pair<TimeSeries, TimeSeries> narma_generate(const NarmaParams& params, long n_steps,
                                                 std::uint64_t seed);

/// Standard normal i.i.d. noise, deterministic for a fixed seed.
TimeSeries gaussian_noise(long n, std::uint64_t seed);

/// sin(2*pi*n/period) for n = 0..n-1.
TimeSeries sine_probe(double period, long n);

/// Normalized autocorrelation with the mean removed; C(0) = 1.
///
/// Throws degenerate_signal_error for (near-)constant input.
std::vector<double> autocorrelation(const TimeSeries& x, long max_lag);

}  // namespace resmem
