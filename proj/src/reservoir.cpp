#include "resmem/reservoir.hpp"

#include "resmem/errors.hpp"
#include "resmem/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace resmem {

double spectral_radius_of(const Eigen::MatrixXd& m)
{
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

AdjacencyMatrix make_adjacency(int M, double eta_f, double spectral_radius, std::uint64_t seed)
{
    if (M < 2) throw invalid_input_error("adjacency matrix needs M >= 2");
    if (!(eta_f > 0.0 && eta_f <= 1.0)) throw invalid_sparsity_error("eta_f must be in (0, 1]");
    if (spectral_radius <= 0.0) throw invalid_input_error("spectral radius must be positive");

    const long total = static_cast<long>(M) * M;
    const long n_entries = std::lround(eta_f * static_cast<double>(total));
    // One entry per row and per column is the minimum that satisfies the
    // row/column occupancy constraint.
    if (n_entries < M)
        throw invalid_sparsity_error("eta_f too small: cannot occupy every row and column");

    rng_t rng = make_rng(derive_seed(seed, 0xad7));
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(M, M);
    if (n_entries == total) {
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) entries(i, j) = gauss(rng);
    } else {
        // A random permutation pattern guarantees every row and column is hit;
        // the remaining entries are drawn uniformly from the free cells.
        std::vector<int> perm(M);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = M - 1; i > 0; --i) {
            std::uniform_int_distribution<int> pick(0, i);
            std::swap(perm[i], perm[pick(rng)]);
        }
        for (int i = 0; i < M; ++i) entries(i, perm[i]) = gauss(rng);

        std::vector<long> free_cells;
        free_cells.reserve(total - M);
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (j != perm[i]) free_cells.push_back(static_cast<long>(i) * M + j);

        long extra = n_entries - M;
        // Partial Fisher-Yates: the first `extra` slots end up a uniform draw.
        for (long k = 0; k < extra; ++k) {
            std::uniform_int_distribution<long> pick(k, static_cast<long>(free_cells.size()) - 1);
            std::swap(free_cells[k], free_cells[pick(rng)]);
            long cell = free_cells[k];
            entries(cell / M, cell % M) = gauss(rng);
        }
    }

    double radius = spectral_radius_of(entries);
    if (radius <= 0.0) throw invalid_matrix_error("drawn matrix has zero spectral radius");
    entries *= spectral_radius / radius;

    AdjacencyMatrix a;
    a.entries = std::move(entries);
    a.eta_f = eta_f;
    a.spectral_radius = spectral_radius;
    a.seed = seed;
    return a;
}

AdjacencyMatrix rescale_spectral_radius(const AdjacencyMatrix& a, double rho)
{
    if (rho <= 0.0) throw invalid_input_error("target spectral radius must be positive");
    double radius = spectral_radius_of(a.entries);
    if (radius <= 0.0) throw invalid_matrix_error("cannot rescale a matrix with zero spectral radius");

    AdjacencyMatrix out = a;
    out.entries *= rho / radius;
    out.spectral_radius = rho;
    return out;
}

namespace {

void check_drive_input(const ReservoirConfig& config, const AdjacencyMatrix& a,
                       const TimeSeries& s)
{
    if (config.M != a.size()) throw invalid_input_error("config.M does not match adjacency size");
    if (config.washout < 0) throw invalid_input_error("washout must be >= 0");
    if (static_cast<long>(s.size()) < config.washout + config.n_fit)
        throw invalid_input_error("input shorter than washout + n_fit");
    if (!s.all_finite()) throw invalid_input_error("non-finite values in drive signal");
}

}  // namespace

StateTrajectory drive_tanh(const ReservoirConfig& config, const AdjacencyMatrix& a,
                           const TimeSeries& s)
{
    check_drive_input(config, a, s);
    const int M = config.M;
    const long total = config.washout + config.n_fit;

    StateTrajectory traj;
    traj.states.resize(config.n_fit, M);
    traj.config = config;
    traj.input = s.values;
    traj.offset = config.washout;

    Eigen::VectorXd r = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd pre(M);
    for (long n = 0; n < total; ++n) {
        pre.noalias() = a.entries * r;
        pre.array() += config.epsilon * s.values[n];
        r = config.g * pre.array().tanh();
        if (n >= config.washout) traj.states.row(n - config.washout) = r.transpose();
    }
    return traj;
}

StateTrajectory drive_multidim(const ReservoirConfig& config, const AdjacencyMatrix& a,
                               const TimeSeries& s)
{
    check_drive_input(config, a, s);
    if (config.d_e < 1) throw invalid_input_error("d_e must be >= 1");
    const int M = config.M;
    const int d_e = config.d_e;
    const long total = config.washout + config.n_fit;

    StateTrajectory traj;
    traj.states.resize(config.n_fit, static_cast<long>(M) * d_e);
    traj.config = config;
    traj.input = s.values;
    traj.offset = config.washout;

    // Component-major state: block j holds component j+1 of every node.
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(M, d_e);
    Eigen::VectorXd pre(M);
    for (long n = 0; n < total; ++n) {
        pre.noalias() = a.entries * r.col(0);
        pre.array() += config.epsilon * s.values[n];
        pre += config.delay_feedback * r.col(d_e - 1);
        // Shift the delay line before overwriting component 1.
        for (int j = d_e - 1; j >= 1; --j) r.col(j) = r.col(j - 1);
        r.col(0) = config.g * pre.array().tanh();
        if (n >= config.washout) {
            long row = n - config.washout;
            for (int j = 0; j < d_e; ++j)
                traj.states.row(row).segment(static_cast<long>(j) * M, M) = r.col(j).transpose();
        }
    }
    return traj;
}

StateTrajectory drive_states(const ReservoirConfig& config, const AdjacencyMatrix& a,
                             const TimeSeries& s)
{
    return config.kind == NodeKind::multidim ? drive_multidim(config, a, s)
                                             : drive_tanh(config, a, s);
}

StateTrajectory drive_linear(const AdjacencyMatrix& a, double rho, const TimeSeries& s,
                             long n_steps)
{
    const int M = a.size();
    if (n_steps < 1) throw invalid_input_error("n_steps must be >= 1");
    if (static_cast<long>(s.size()) < n_steps) throw invalid_input_error("input shorter than n_steps");
    if (!s.all_finite()) throw invalid_input_error("non-finite values in drive signal");

    StateTrajectory traj;
    traj.states.resize(n_steps, M);
    traj.config.M = M;
    traj.config.washout = 0;
    traj.config.n_fit = n_steps;
    traj.input = s.values;
    traj.offset = 0;

    Eigen::VectorXd r = Eigen::VectorXd::Zero(M);
    for (long n = 0; n < n_steps; ++n) {
        r = rho * (a.entries * r);
        r.array() += s.values[n];
        if (r.cwiseAbs().maxCoeff() > 1e12)
            throw integration_diverged_error("linear reservoir diverged");
        traj.states.row(n) = r.transpose();
    }
    return traj;
}

void save_adjacency_csv(const AdjacencyMatrix& a, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw invalid_input_error("cannot open " + path + " for writing");
    char buf[32];
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", a.entries(i, j));
            out << buf << (j + 1 < a.size() ? "," : "");
        }
        out << "\n";
    }
}

AdjacencyMatrix load_adjacency_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw invalid_matrix_error("empty adjacency file");
    const std::size_t M = rows.size();
    AdjacencyMatrix a;
    a.entries.resize(M, M);
    for (std::size_t i = 0; i < M; ++i) {
        if (rows[i].size() != M) throw invalid_matrix_error("adjacency file is not square");
        for (std::size_t j = 0; j < M; ++j) a.entries(i, j) = rows[i][j];
    }
    long nonzeros = (a.entries.array() != 0.0).count();
    a.eta_f = static_cast<double>(nonzeros) / static_cast<double>(M * M);
    a.spectral_radius = spectral_radius_of(a.entries);
    return a;
}

}  // namespace resmem
