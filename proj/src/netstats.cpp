#include "resmem/netstats.hpp"

#include "resmem/errors.hpp"

#include <cmath>
#include <vector>

namespace resmem {

namespace {

std::vector<std::vector<int>> neighbor_lists(const AdjacencyMatrix& a)
{
    const int M = a.size();
    std::vector<std::vector<int>> nbrs(M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            if (j != i && (a.entries(i, j) != 0.0 || a.entries(j, i) != 0.0))
                nbrs[i].push_back(j);
    return nbrs;
}

// BFS from i0 over the symmetrized pattern. Hop counts always; weighted
// distances too when `weighted` is non-null.
void bfs(const AdjacencyMatrix& a, int i0, std::vector<double>& hops,
         std::vector<double>* weighted)
{
    const int M = a.size();
    if (i0 < 0 || i0 >= M) throw invalid_input_error("source node out of range");

    auto nbrs = neighbor_lists(a);
    hops.assign(M, kUnreachable);
    hops[i0] = 0.0;
    if (weighted) {
        weighted->assign(M, kUnreachable);
        (*weighted)[i0] = 0.0;
    }

    std::vector<int> queue{i0};
    while (!queue.empty()) {
        std::vector<int> next;
        for (int ik : queue) {
            for (int im : nbrs[ik]) {
                if (hops[im] != kUnreachable) continue;
                hops[im] = hops[ik] + 1.0;
                if (weighted) (*weighted)[im] = (*weighted)[ik] + weighted_distance(a, ik, im);
                next.push_back(im);
            }
        }
        queue = std::move(next);
    }
}

double mean_over_sources(const AdjacencyMatrix& a, bool weighted_mean)
{
    const int M = a.size();
    double sum = 0.0;
    long count = 0;
    std::vector<double> hops, weighted;
    for (int i0 = 0; i0 < M; ++i0) {
        bfs(a, i0, hops, weighted_mean ? &weighted : nullptr);
        const std::vector<double>& d = weighted_mean ? weighted : hops;
        for (int i = 0; i < M; ++i) {
            if (i == i0 || hops[i] == kUnreachable) continue;
            sum += d[i];
            ++count;
        }
    }
    if (count == 0) throw empty_graph_error("no finite off-diagonal path length");
    return sum / static_cast<double>(count);
}

}  // namespace

std::vector<double> bfs_distances(const AdjacencyMatrix& a, int i0)
{
    std::vector<double> hops;
    bfs(a, i0, hops, nullptr);
    return hops;
}

std::vector<double> bfs_weighted_distances(const AdjacencyMatrix& a, int i0)
{
    std::vector<double> hops, weighted;
    bfs(a, i0, hops, &weighted);
    return weighted;
}

double weighted_distance(const AdjacencyMatrix& a, int i, int j)
{
    double strength = std::abs(a.entries(i, j)) + std::abs(a.entries(j, i));
    if (strength == 0.0) throw not_adjacent_error("nodes are not adjacent");
    return std::log(1.0 / strength);
}

double mean_unweighted_path_length(const AdjacencyMatrix& a)
{
    return mean_over_sources(a, false);
}

double mean_weighted_path_length(const AdjacencyMatrix& a)
{
    return mean_over_sources(a, true);
}

PathLengthReport path_length_report(const AdjacencyMatrix& a)
{
    const int M = a.size();
    PathLengthReport report;
    double sum_hops = 0.0, sum_weighted = 0.0;
    long count = 0;
    std::vector<double> hops, weighted;
    for (int i0 = 0; i0 < M; ++i0) {
        bfs(a, i0, hops, &weighted);
        for (int i = 0; i < M; ++i) {
            if (i == i0) continue;
            if (hops[i] == kUnreachable) {
                ++report.unreachable_pairs;
                continue;
            }
            sum_hops += hops[i];
            sum_weighted += weighted[i];
            ++count;
        }
    }
    if (count == 0) throw empty_graph_error("no finite off-diagonal path length");
    report.mean_unweighted = sum_hops / static_cast<double>(count);
    report.mean_weighted = sum_weighted / static_cast<double>(count);
    return report;
}

double calibrate_spectral_radius(const AdjacencyMatrix& a, double target_lw)
{
    // Rescaling every entry by c shifts each hop's weighted distance by
    // -ln(c), so <L_W> is monotone decreasing in ln(rho); bisection on
    // ln(rho) is exact.
    auto lw_at = [&](double log_rho) {
        return mean_weighted_path_length(rescale_spectral_radius(a, std::exp(log_rho)));
    };

    double lo = std::log(1e-4), hi = std::log(1e4);
    double f_lo = lw_at(lo) - target_lw;
    double f_hi = lw_at(hi) - target_lw;
    if (f_lo == 0.0) return std::exp(lo);
    if (f_hi == 0.0) return std::exp(hi);
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw calibration_failed_error("target weighted path length not bracketed in rho = [1e-4, 1e4]");

    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double f_mid = lw_at(mid) - target_lw;
        if (f_mid == 0.0) return std::exp(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

DelayCoefficients linear_delay_coefficients(const AdjacencyMatrix& a, double rho)
{
    const int M = a.size();
    Eigen::VectorXd w = Eigen::VectorXd::Ones(M);
    DelayCoefficients out;
    Eigen::VectorXd b = rho * (a.entries * w);
    out.b_mean[0] = b.cwiseAbs().mean();
    for (int j = 1; j < 4; ++j) {
        b = rho * (a.entries * b);
        out.b_mean[j] = b.cwiseAbs().mean();
    }
    return out;
}

}  // namespace resmem
