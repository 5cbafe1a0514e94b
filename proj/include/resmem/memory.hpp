#pragma once

// The three memory statistics: memory capacity, norm of the variation and
// delay capacity, plus the nonlinear index.

#include "resmem/reservoir.hpp"
#include "resmem/time_series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace resmem {

/// Per-delay values, either MC_tau (tau_start = 1) or Trace|C(tau)|
/// (tau_start = 0).
struct MemoryCurve {
    std::vector<double> values;
    int tau_start = 1;

    int tau_max() const { return tau_start + static_cast<int>(values.size()) - 1; }
};

struct MemoryCapacityOptions {
    int tau_max = 100;
    std::optional<double> ridge_lambda; ///< default rule when unset
};

/// Variation-norm statistic. mean_norms[n] is the mean Frobenius norm of the
/// propagated perturbation after n steps (index 0 holds the initial norm,
/// sqrt(D) for an orthonormal D x D start).
struct VariationResult {
    std::vector<double> mean_norms;
    double d_var = 0.0;
    int n_samples = 0;
};

/// Whitened signal ensemble: whitened = transform * r0 where transform is
/// S^{-1/2} V^T from the SVD of the regularized covariance.
struct WhitenedEnsemble {
    Eigen::MatrixXd whitened;
    Eigen::MatrixXd transform;
    double l_reg = 1e-10;
};

struct DelayCapacityResult {
    MemoryCurve curve; ///< Trace|C(tau)| for tau = 0..tau_max
    double theta_d = 0.0;
};

/// Squared correlation coefficient between a fit and the delayed input; the
/// per-delay memory capacity. 0 for a degenerate pair.
double mc_correlation(const Eigen::VectorXd& fit, const Eigen::VectorXd& delayed_input);

/// Drive the reservoir with unit-variance Gaussian noise and fit the delayed
/// input s(n - tau) for tau = 1..tau_max using linear features only.
/// MC_tau is the squared correlation between the fit and the delayed input.
MemoryCurve memory_capacity_curve(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                  std::uint64_t seed, const MemoryCapacityOptions& options = {});

/// MC = sum of MC_tau over the curve.
double total_memory_capacity(const MemoryCurve& curve);

/// Propagate orthonormal D x D perturbations along the driven trajectory from
/// n_samples uniformly spaced starting points and average the summed norms.
/// Requires drive length >= washout + n_samples * tau_max + 1.
VariationResult norm_of_variation(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                  const TimeSeries& drive, int tau_max = 100,
                                  int n_samples = 100, std::uint64_t seed = 0);

/// Whiten a row-centered M x N signal matrix: C = R0 R0^T / N + L_reg I,
/// C = U S V^T, whitened = S^{-1/2} V^T R0. Requires N > M.
WhitenedEnsemble whiten(const Eigen::MatrixXd& r0, double l_reg = 1e-10);

/// Trace|C(tau)| between the whitened trajectory and its tau-delayed copy,
/// for tau = 0..tau_max; theta_d = sum / tau_max. The whitening transform is
/// computed once from the tau = 0 window and reused for all delays.
DelayCapacityResult delay_capacity(const StateTrajectory& traj, int tau_max = 100,
                                   double l_reg = 1e-10);

/// Response matrix (rows = time) of a node system to a sine probe of the
/// given period, steady state only.
using ProbeResponseFn = std::function<Eigen::MatrixXd(double period, long n_keep)>;

/// Nonlinear index over 100 sine probes with periods from 10 to 50: for each
/// probe, the node-averaged ratio of spectral content above the fundamental
/// to the fundamental amplitude, averaged over probes.
double nonlinear_index(const ReservoirConfig& config, const AdjacencyMatrix& a);

/// Same statistic for an arbitrary node response (used to cross-check
/// against the linear reservoir).
double nonlinear_index_with(const ProbeResponseFn& response);

}  // namespace resmem
