#pragma once

// Adjacency matrix construction and the reservoir dynamics: the tanh map,
// the delay-augmented multidimensional variant and the linear model.

#include "resmem/time_series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace resmem {

/// Which node dynamics drive_states() runs.
enum class NodeKind { tanh_node, multidim };

/// M x M coupling matrix with its sparsity and spectral-radius metadata.
struct AdjacencyMatrix {
    Eigen::MatrixXd entries;
    double eta_f = 1.0;           ///< occupied fraction of the M^2 connections
    double spectral_radius = 1.0; ///< |largest eigenvalue| after rescaling
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(entries.rows()); }
};

struct ReservoirConfig {
    int M = 100;                 ///< node count
    double g = 1.0;              ///< feedback gain
    double epsilon = 1.0;        ///< input multiplier
    int d_e = 1;                 ///< node dimension (delay-line length)
    double delay_feedback = 0.5; ///< weight of the delayed coordinate fed back into the tanh
    long washout = 1000;         ///< discarded initial states
    long n_fit = 10000;          ///< states kept after washout
    NodeKind kind = NodeKind::tanh_node;
};

/// Node time series after washout. Rows are time steps; columns are signals.
///
/// For multidimensional nodes the layout is component-major: columns
/// [0, M) hold component 1 of every node, columns [M, 2M) component 2, and
/// so on, so the first M columns are always the tanh outputs.
struct StateTrajectory {
    Eigen::MatrixXd states;
    ReservoirConfig config;
    std::vector<double> input; ///< full driving signal
    long offset = 0;           ///< input index aligned with states row 0

    long rows() const { return states.rows(); }
    long cols() const { return states.cols(); }
    /// The input sample that produced state row `row`.
    double input_at(long row) const { return input[offset + row]; }
};

/// |largest eigenvalue| of a square matrix.
double spectral_radius_of(const Eigen::MatrixXd& m);

/// Build a random adjacency matrix.
///
/// Entries are drawn from N(0, 1) on round(eta_f * M^2) positions chosen so
/// that every row and every column keeps at least one entry, then the matrix
/// is rescaled to the requested spectral radius.
AdjacencyMatrix make_adjacency(int M, double eta_f, double spectral_radius, std::uint64_t seed);

/// Rescale all entries so the spectral radius becomes rho. Pattern unchanged.
AdjacencyMatrix rescale_spectral_radius(const AdjacencyMatrix& a, double rho);

/// Iterate R(n+1) = g * tanh(A R(n) + eps * s(n)) from R(0) = 0 and return
/// the n_fit states after washout.
StateTrajectory drive_tanh(const ReservoirConfig& config, const AdjacencyMatrix& a,
                           const TimeSeries& s);

/// Multidimensional nodes: component 1 is the tanh map with an extra
/// delay_feedback * r_{i,d_e}(n) term inside the tanh; components 2..d_e are
/// a delay line.
StateTrajectory drive_multidim(const ReservoirConfig& config, const AdjacencyMatrix& a,
                               const TimeSeries& s);

/// Dispatch on config.kind.
StateTrajectory drive_states(const ReservoirConfig& config, const AdjacencyMatrix& a,
                             const TimeSeries& s);

/// Linear model R(n+1) = rho * A R(n) + W s(n) with W = 1. No washout is
/// applied; the caller slices. Reports divergence when |R| exceeds 1e12.
StateTrajectory drive_linear(const AdjacencyMatrix& a, double rho, const TimeSeries& s,
                             long n_steps);

/// Dense row-major CSV with full precision, for cross-implementation checks.
void save_adjacency_csv(const AdjacencyMatrix& a, const std::string& path);
AdjacencyMatrix load_adjacency_csv(const std::string& path);

}  // namespace resmem
