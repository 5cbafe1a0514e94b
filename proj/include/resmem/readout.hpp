#pragma once

// Quadratic-augmented feature matrix, ridge readout and normalized errors.

#include "resmem/reservoir.hpp"
#include "resmem/time_series.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace resmem {

/// Feature columns are [r_1..r_D] followed, iff include_squares, by
/// [r_1^2..r_D^2].
struct FeatureMatrix {
    Eigen::MatrixXd m;
    bool include_squares = true;

    long rows() const { return m.rows(); }
    long cols() const { return m.cols(); }
};

struct ReadoutModel {
    Eigen::VectorXd coefficients;
    double ridge_lambda = 0.0;
    bool include_squares = true;

    std::string to_json() const;
    static ReadoutModel from_json(const std::string& text);
};

/// Which state columns enter the features (multidimensional nodes only).
enum class FitScope { all_signals, first_components };

FeatureMatrix build_features(const StateTrajectory& traj, bool include_squares,
                             FitScope scope = FitScope::all_signals);

/// The default relative regularization: 1e-8 * trace(Omega^T Omega) / cols.
double default_ridge_lambda(const FeatureMatrix& features);

/// Thin-SVD ridge solver; the factorization is reused across targets.
class RidgeSolver {
public:
    explicit RidgeSolver(const Eigen::MatrixXd& features);

    /// argmin ||Omega c - y||^2 + lambda ||c||^2. Throws singular_system_error
    /// when lambda = 0 and Omega is rank deficient.
    Eigen::VectorXd solve(const Eigen::VectorXd& target, double lambda) const;

    double default_lambda() const;

private:
    Eigen::MatrixXd u_;
    Eigen::MatrixXd v_;
    Eigen::VectorXd sigma_;
    long rows_ = 0;
};

ReadoutModel ridge_fit(const FeatureMatrix& features, const TimeSeries& target, double lambda);

Eigen::VectorXd predict(const FeatureMatrix& features, const ReadoutModel& model);

/// std(target - predicted) / std(target). Throws degenerate_target_error for
/// a constant target.
double nrmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& target);
double nrmse(const TimeSeries& predicted, const TimeSeries& target);

struct TrainTestOptions {
    bool include_squares = true;
    FitScope scope = FitScope::all_signals;
    std::optional<double> lambda; ///< default rule when unset
};

struct TrainTestResult {
    double train_error = 0.0; ///< Delta_RC
    double test_error = 0.0;  ///< Delta_tx
    ReadoutModel model;
};

/// Drive the reservoir on the training input, fit the target, then evaluate
/// the frozen coefficients on a trajectory driven by the test input.
///
/// Targets are aligned with the post-washout states, i.e. target[k] pairs
/// with the state produced by input sample washout + k.
TrainTestResult train_test(const ReservoirConfig& config, const AdjacencyMatrix& a,
                           const TimeSeries& train_input, const TimeSeries& train_target,
                           const TimeSeries& test_input, const TimeSeries& test_target,
                           const TrainTestOptions& options = {});

/// Same as train_test for several targets sharing one input signal; the
/// trajectory and the ridge factorization are computed once.
std::vector<TrainTestResult> train_test_multi(const ReservoirConfig& config,
                                              const AdjacencyMatrix& a,
                                              const TimeSeries& train_input,
                                              const std::vector<TimeSeries>& train_targets,
                                              const TimeSeries& test_input,
                                              const std::vector<TimeSeries>& test_targets,
                                              const TrainTestOptions& options = {});

}  // namespace resmem
