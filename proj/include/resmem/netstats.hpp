#pragma once

// Graph statistics of the adjacency matrix: BFS path lengths, the weighted
// variant, spectral-radius calibration and the linear delay-coefficient model.

#include "resmem/reservoir.hpp"

#include <array>
#include <limits>
#include <vector>

namespace resmem {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct PathLengthReport {
    double mean_unweighted = 0.0; ///< <L_U>
    double mean_weighted = 0.0;   ///< <L_W>
    long unreachable_pairs = 0;
};

/// Node-averaged |b_j| for the delayed inputs s(n-1)..s(n-4) of the linear
/// model truncated after five iterations.
struct DelayCoefficients {
    std::array<double, 4> b_mean{};
};

/// Hop distances from i0. Nodes i and j are adjacent when A_ij != 0 or
/// A_ji != 0; unreachable nodes get kUnreachable; distance to self is 0.
/// Ties in visit order are broken by ascending node index.
std::vector<double> bfs_distances(const AdjacencyMatrix& a, int i0);

/// ln(1 / (|A_ij| + |A_ji|)); negative values are legitimate.
double weighted_distance(const AdjacencyMatrix& a, int i, int j);

/// Weighted distances accumulated along the same BFS traversal, assigned on
/// first visit.
std::vector<double> bfs_weighted_distances(const AdjacencyMatrix& a, int i0);

/// Mean over all source nodes of the finite, nonzero hop distances.
double mean_unweighted_path_length(const AdjacencyMatrix& a);

/// Mean over all source nodes of the finite, non-self weighted distances.
double mean_weighted_path_length(const AdjacencyMatrix& a);

PathLengthReport path_length_report(const AdjacencyMatrix& a);

/// Spectral radius rho such that rescaling A to rho gives <L_W> = target,
/// found by bisection on ln(rho) over rho in [1e-4, 1e4].
double calibrate_spectral_radius(const AdjacencyMatrix& a, double target_lw);

/// b_1 = rho A W, b_j = rho^{j-1} A^{j-1} b_1 with W = 1; node-averaged
/// magnitudes.
DelayCoefficients linear_delay_coefficients(const AdjacencyMatrix& a, double rho);

}  // namespace resmem
