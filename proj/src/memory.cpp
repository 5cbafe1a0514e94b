#include "resmem/memory.hpp"

#include "resmem/errors.hpp"
#include "resmem/lyapunov.hpp"
#include "resmem/readout.hpp"
#include "resmem/rng.hpp"
#include "resmem/signals.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace resmem {

double mc_correlation(const Eigen::VectorXd& fit, const Eigen::VectorXd& delayed_input)
{
    Eigen::ArrayXd fc = fit.array() - fit.mean();
    Eigen::ArrayXd dc = delayed_input.array() - delayed_input.mean();
    double var_f = (fc * fc).sum();
    double var_d = (dc * dc).sum();
    if (var_f <= 0.0 || var_d <= 0.0) return 0.0;
    double cov = (fc * dc).sum();
    return std::min(1.0, cov * cov / (var_f * var_d));
}

namespace {

Eigen::MatrixXd random_row_orthonormal(long dim, rng_t& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(dim, dim);
    for (long j = 0; j < dim; ++j)
        for (long i = 0; i < dim; ++i) m(i, j) = gauss(rng);
    // Orthonormal rows via a QR of the transpose.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
    return q.transpose();
}

}  // namespace

MemoryCurve memory_capacity_curve(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                  std::uint64_t seed, const MemoryCapacityOptions& options)
{
    if (options.tau_max < 1) throw invalid_input_error("tau_max must be >= 1");
    if (options.tau_max > config.washout)
        throw invalid_input_error("tau_max must not exceed the washout length");

    TimeSeries noise = gaussian_noise(config.washout + config.n_fit, seed);
    StateTrajectory traj = drive_states(config, a, noise);
    if (traj.states.cwiseAbs().maxCoeff() == 0.0)
        throw degenerate_state_error("reservoir states are all zero");

    // Squared terms do not add memory; the MC fit uses the raw signals only.
    RidgeSolver solver(traj.states);
    double lambda = options.ridge_lambda.value_or(solver.default_lambda());

    const long n = traj.rows();
    MemoryCurve curve;
    curve.tau_start = 1;
    curve.values.resize(options.tau_max);
    Eigen::VectorXd target(n);
    for (int tau = 1; tau <= options.tau_max; ++tau) {
        for (long k = 0; k < n; ++k) target(k) = noise.values[traj.offset + k - tau];
        Eigen::VectorXd coeffs = solver.solve(target, lambda);
        Eigen::VectorXd fit = traj.states * coeffs;
        curve.values[tau - 1] = mc_correlation(fit, target);
    }
    return curve;
}

double total_memory_capacity(const MemoryCurve& curve)
{
    return std::accumulate(curve.values.begin(), curve.values.end(), 0.0);
}

VariationResult norm_of_variation(const ReservoirConfig& config, const AdjacencyMatrix& a,
                                  const TimeSeries& drive, int tau_max, int n_samples,
                                  std::uint64_t seed)
{
    if (tau_max < 1 || n_samples < 1) throw invalid_input_error("tau_max and n_samples must be >= 1");

    // Disjoint windows of tau_max propagation steps, spaced tau_max apart.
    ReservoirConfig run = config;
    run.n_fit = static_cast<long>(n_samples) * tau_max + 1;
    if (static_cast<long>(drive.size()) < run.washout + run.n_fit)
        throw insufficient_data_error("drive too short for the requested perturbation windows");

    StateTrajectory traj = drive_states(run, a, drive);
    const long dim = traj.cols();

    VariationResult result;
    result.n_samples = n_samples;
    result.mean_norms.assign(tau_max + 1, 0.0);
    result.d_var = 0.0;

    for (int j = 0; j < n_samples; ++j) {
        rng_t rng = make_rng(derive_seed(seed, 0xd0a + j));
        Eigen::MatrixXd delta = random_row_orthonormal(dim, rng);
        result.mean_norms[0] += delta.norm();
        const long start = static_cast<long>(j) * tau_max;
        double sum = 0.0;
        for (int n = 1; n <= tau_max; ++n) {
            apply_step_jacobian(traj, a, start + n - 1, delta);
            double norm = delta.norm();
            if (!std::isfinite(norm)) throw numerical_error("non-finite perturbation norm");
            result.mean_norms[n] += norm;
            sum += norm;
        }
        result.d_var += sum;
    }

    for (double& v : result.mean_norms) v /= static_cast<double>(n_samples);
    result.d_var /= static_cast<double>(n_samples);
    return result;
}

WhitenedEnsemble whiten(const Eigen::MatrixXd& r0, double l_reg)
{
    const long m = r0.rows();
    const long n = r0.cols();
    if (n <= m) throw insufficient_data_error("whitening needs more samples than signals");
    if (!r0.allFinite()) throw numerical_error("non-finite entries in signal matrix");

    Eigen::MatrixXd cov = (r0 * r0.transpose()) / static_cast<double>(n);
    cov += l_reg * Eigen::MatrixXd::Identity(m, m);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(cov, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::ArrayXd inv_sqrt = svd.singularValues().array().sqrt().inverse();
    if (!inv_sqrt.isFinite().all()) throw numerical_error("singular covariance in whitening");

    WhitenedEnsemble out;
    out.l_reg = l_reg;
    out.transform = inv_sqrt.matrix().asDiagonal() * svd.matrixV().transpose();
    out.whitened = out.transform * r0;
    return out;
}

DelayCapacityResult delay_capacity(const StateTrajectory& traj, int tau_max, double l_reg)
{
    const long total = traj.rows();
    const long dim = traj.cols();
    if (tau_max < 1) throw invalid_input_error("tau_max must be >= 1");
    if (total < tau_max + 2) throw insufficient_data_error("trajectory shorter than tau_max + N");
    const long n = total - tau_max;
    if (n <= dim) throw insufficient_data_error("trajectory window too short to whiten");

    // Center the full run once so R_tau(t) = R_0(t - tau) holds exactly as
    // shifted slices; the whitener comes from the tau = 0 window.
    Eigen::MatrixXd centered = traj.states;
    centered.rowwise() -= centered.colwise().mean();

    WhitenedEnsemble wh = whiten(centered.middleRows(tau_max, n).transpose(), l_reg);
    // Whitened full run, time along rows so the per-signal slices below are
    // contiguous.
    Eigen::MatrixXd g = centered * wh.transform.transpose();

    DelayCapacityResult result;
    result.curve.tau_start = 0;
    result.curve.values.resize(tau_max + 1);
    for (int tau = 0; tau <= tau_max; ++tau) {
        double trace = 0.0;
        for (long i = 0; i < dim; ++i)
            trace += std::abs(g.col(i).segment(tau_max, n).dot(g.col(i).segment(tau_max - tau, n)));
        result.curve.values[tau] = trace / static_cast<double>(n);
    }
    result.theta_d = std::accumulate(result.curve.values.begin(), result.curve.values.end(), 0.0)
                     / static_cast<double>(tau_max);
    return result;
}

namespace {

// 100 probe periods from 10 to 50. 99 T_j is an integer, so a window of
// k * 99 * T_j samples holds an integer number of drive periods and the
// response spectrum falls exactly on DFT bins; the window length stays near
// 4096 samples.
struct ProbePlan {
    double period;
    long window;
    long fundamental_bin;
};

std::vector<ProbePlan> probe_plans()
{
    std::vector<ProbePlan> plans;
    plans.reserve(100);
    for (int j = 1; j <= 100; ++j) {
        long b = 990 + 40 * (j - 1); // = 99 * T_j
        long k = std::max(1L, std::lround(4096.0 / static_cast<double>(b)));
        plans.push_back({static_cast<double>(b) / 99.0, k * b, 99 * k});
    }
    return plans;
}

}  // namespace

double nonlinear_index_with(const ProbeResponseFn& response)
{
    Eigen::FFT<double> fft;
    double gamma_sum = 0.0;
    for (const ProbePlan& plan : probe_plans()) {
        Eigen::MatrixXd states = response(plan.period, plan.window);
        if (states.rows() != plan.window)
            throw invalid_input_error("probe response has wrong length");

        const long half = plan.window / 2;
        double probe_sum = 0.0;
        std::vector<double> signal(plan.window);
        std::vector<std::complex<double>> spectrum;
        for (long i = 0; i < states.cols(); ++i) {
            Eigen::VectorXd::Map(signal.data(), plan.window) = states.col(i);
            fft.fwd(spectrum, signal);

            double fundamental = std::abs(spectrum[plan.fundamental_bin]);
            if (!std::isfinite(fundamental)) throw numerical_error("non-finite spectrum");
            if (fundamental == 0.0)
                throw degenerate_response_error("zero fundamental amplitude in probe response");
            double above = 0.0;
            for (long b = plan.fundamental_bin + 1; b <= half; ++b) above += std::abs(spectrum[b]);
            probe_sum += above / fundamental;
        }
        gamma_sum += probe_sum / static_cast<double>(states.cols());
    }
    return gamma_sum / 100.0;
}

double nonlinear_index(const ReservoirConfig& config, const AdjacencyMatrix& a)
{
    return nonlinear_index_with([&](double period, long n_keep) {
        ReservoirConfig run = config;
        run.n_fit = n_keep;
        TimeSeries probe = sine_probe(period, run.washout + n_keep);
        return drive_states(run, a, probe).states;
    });
}

}  // namespace resmem
