#include "resmem/lyapunov.hpp"

#include "resmem/errors.hpp"
#include "resmem/rng.hpp"

#include <algorithm>
#include <cmath>

namespace resmem {

namespace {

/// Modified Gram-Schmidt on the columns of m. Returns the residual norms and
/// leaves the columns orthonormal where the norm allows it.
std::vector<double> orthonormalize_columns(Eigen::MatrixXd& m)
{
    std::vector<double> norms(m.cols());
    for (long i = 0; i < m.cols(); ++i) {
        for (long j = 0; j < i; ++j) m.col(i) -= m.col(j).dot(m.col(i)) * m.col(j);
        double n = m.col(i).norm();
        norms[i] = n;
        if (n > 0.0) m.col(i) /= n;
    }
    return norms;
}

Eigen::MatrixXd random_orthonormal(long rows, long cols, rng_t& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) m(i, j) = gauss(rng);
    orthonormalize_columns(m);
    return m;
}

void tanh_derivative_diag(const ReservoirConfig& config, const Eigen::VectorXd& r_next,
                          Eigen::VectorXd& diag)
{
    // r(k+1) = g tanh(u), so g tanh'(u) = g - r(k+1)^2 / g.
    diag = Eigen::VectorXd::Constant(r_next.size(), config.g)
           - r_next.cwiseProduct(r_next) / config.g;
}

}  // namespace

Eigen::MatrixXd jacobian_tanh(const ReservoirConfig& config, const AdjacencyMatrix& a,
                              const Eigen::VectorXd& r, double s)
{
    if (!r.allFinite()) throw invalid_input_error("non-finite state in jacobian_tanh");
    Eigen::VectorXd pre = a.entries * r;
    pre.array() += config.epsilon * s;
    Eigen::VectorXd diag = config.g * (1.0 - pre.array().tanh().square());
    return diag.asDiagonal() * a.entries;
}

void apply_step_jacobian(const StateTrajectory& traj, const AdjacencyMatrix& a, long k,
                         Eigen::MatrixXd& m)
{
    const ReservoirConfig& config = traj.config;
    const int M = config.M;
    if (k + 1 >= traj.rows()) throw invalid_input_error("step index past end of trajectory");
    if (m.rows() != traj.cols()) throw invalid_input_error("perturbation row count mismatch");

    if (config.g == 0.0) {
        m.setZero();
        return;
    }

    Eigen::VectorXd diag(M);
    if (config.kind == NodeKind::multidim) {
        const int d_e = config.d_e;
        tanh_derivative_diag(config, traj.states.row(k + 1).head(M).transpose(), diag);
        // Block row 1 of the Jacobian is [D A, 0, .., 0, feedback*D]; the
        // remaining block rows shift component j-1 into component j. For
        // d_e = 1 the top and bottom blocks coincide and this reduces to
        // D (A + feedback I).
        Eigen::MatrixXd top = a.entries * m.topRows(M);
        top += config.delay_feedback * m.bottomRows(M);
        top.array().colwise() *= diag.array();
        for (int j = d_e - 1; j >= 1; --j)
            m.middleRows(static_cast<long>(j) * M, M) = m.middleRows(static_cast<long>(j - 1) * M, M);
        m.topRows(M) = top;
    } else {
        tanh_derivative_diag(config, traj.states.row(k + 1).transpose(), diag);
        m = diag.asDiagonal() * (a.entries * m).eval();
    }
}

LyapunovResult lyapunov_spectrum(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                 const TimeSeries& drive, const LyapunovSpec& spec,
                                 std::uint64_t seed)
{
    if (spec.n_lambda < 1) throw invalid_input_error("n_lambda must be >= 1");
    if (spec.n_steps < 1) throw invalid_input_error("n_steps must be >= 1");
    if (spec.renorm_every < 1) throw invalid_input_error("renorm_every must be >= 1");

    ReservoirConfig run = config;
    run.n_fit = spec.n_steps + 1;
    if (static_cast<long>(drive.size()) < run.washout + run.n_fit)
        throw invalid_input_error("drive shorter than washout + n_steps + 1");

    StateTrajectory traj = drive_states(run, a, drive);
    const long dim = traj.cols();
    if (spec.n_lambda > dim) throw invalid_input_error("n_lambda exceeds state dimension");

    const double hi = spec.norm_reset_threshold;
    const double lo = 1.0 / spec.norm_reset_threshold;

    rng_t rng = make_rng(derive_seed(seed, 0x17a));
    Eigen::MatrixXd delta = random_orthonormal(dim, spec.n_lambda, rng);

    LyapunovResult result;
    std::vector<double> log_acc(spec.n_lambda, 0.0);

    long since_renorm = 0;
    for (long k = 0; k < spec.n_steps; ++k) {
        apply_step_jacobian(traj, a, k, delta);
        ++since_renorm;
        if (since_renorm == spec.renorm_every || k + 1 == spec.n_steps) {
            since_renorm = 0;
            std::vector<double> norms = orthonormalize_columns(delta);
            bool out_of_range = false;
            for (int i = 0; i < spec.n_lambda; ++i) {
                double n = norms[i];
                if (!std::isfinite(n) || n > hi || n < lo) {
                    out_of_range = true;
                    n = std::clamp(std::isfinite(n) ? n : hi, lo, hi);
                }
                log_acc[i] += std::log(n);
            }
            if (out_of_range) {
                result.saturated = true;
                delta = random_orthonormal(dim, spec.n_lambda, rng);
            }
        }
        if ((k + 1) % 1000 == 0) {
            std::vector<double> running(spec.n_lambda);
            for (int i = 0; i < spec.n_lambda; ++i)
                running[i] = log_acc[i] / static_cast<double>(k + 1);
            result.history.emplace_back(k + 1, std::move(running));
        }
    }

    result.exponents.resize(spec.n_lambda);
    for (int i = 0; i < spec.n_lambda; ++i)
        result.exponents[i] = log_acc[i] / static_cast<double>(spec.n_steps);
    return result;
}

}  // namespace resmem
