#pragma once

// Lyapunov exponent estimation by Gram-Schmidt reorthonormalization of the
// variational flow along a driven trajectory.

#include "resmem/reservoir.hpp"
#include "resmem/time_series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace resmem {

struct LyapunovSpec {
    int n_lambda = 1;
    long n_steps = 100000;
    int renorm_every = 1;
    double norm_reset_threshold = 1e12;
};

struct LyapunovResult {
    /// Exponents in nats per step, in Gram-Schmidt order (non-increasing).
    std::vector<double> exponents;
    /// Set when a norm left [1/threshold, threshold] and the variational
    /// matrix was reset; the estimate is then a clamped bound.
    bool saturated = false;
    /// Running estimates every 1000 steps, for plateau checks.
    std::vector<std::pair<long, std::vector<double>>> history;
};

/// Jacobian of the tanh map at state r with input sample s:
/// diag(g (1 - tanh^2(A r + eps s))) A.
Eigen::MatrixXd jacobian_tanh(const ReservoirConfig& config, const AdjacencyMatrix& a,
                              const Eigen::VectorXd& r, double s);

/// Left-multiply m by the Jacobian of the step from trajectory row k to row
/// k+1. Uses tanh(u) = r(k+1)/g, so only the stored states are needed.
/// Supports both node kinds; m must have traj.cols() rows.
void apply_step_jacobian(const StateTrajectory& traj, const AdjacencyMatrix& a, long k,
                         Eigen::MatrixXd& m);

/// Estimate the largest spec.n_lambda exponents of the reservoir driven by
/// `drive`. Requires drive length >= washout + n_steps + 1.
LyapunovResult lyapunov_spectrum(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                 const TimeSeries& drive, const LyapunovSpec& spec,
                                 std::uint64_t seed);

}  // namespace resmem
