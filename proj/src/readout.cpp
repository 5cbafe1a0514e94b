#include "resmem/readout.hpp"

#include "resmem/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace resmem {

namespace {

Eigen::VectorXd to_vector(const TimeSeries& s)
{
    return Eigen::Map<const Eigen::VectorXd>(s.values.data(), s.values.size());
}

double stddev(const Eigen::VectorXd& v)
{
    double mean = v.mean();
    return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(v.size()));
}

}  // namespace

FeatureMatrix build_features(const StateTrajectory& traj, bool include_squares, FitScope scope)
{
    if (traj.rows() == 0) throw invalid_input_error("empty trajectory");
    long d = traj.cols();
    if (scope == FitScope::first_components) d = traj.config.M;

    FeatureMatrix f;
    f.include_squares = include_squares;
    f.m.resize(traj.rows(), include_squares ? 2 * d : d);
    f.m.leftCols(d) = traj.states.leftCols(d);
    if (include_squares) f.m.rightCols(d) = traj.states.leftCols(d).array().square();
    return f;
}

double default_ridge_lambda(const FeatureMatrix& features)
{
    return 1e-8 * features.m.squaredNorm() / static_cast<double>(features.cols());
}

RidgeSolver::RidgeSolver(const Eigen::MatrixXd& features) : rows_(features.rows())
{
    Eigen::BDCSVD<Eigen::MatrixXd> svd(features, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u_ = svd.matrixU();
    v_ = svd.matrixV();
    sigma_ = svd.singularValues();
}

Eigen::VectorXd RidgeSolver::solve(const Eigen::VectorXd& target, double lambda) const
{
    if (target.size() != rows_) throw invalid_input_error("target length does not match features");
    if (lambda < 0.0) throw invalid_input_error("ridge lambda must be >= 0");

    if (lambda == 0.0) {
        double tol = sigma_.size() > 0
                         ? sigma_(0) * static_cast<double>(std::max<long>(rows_, sigma_.size()))
                               * std::numeric_limits<double>::epsilon()
                         : 0.0;
        if (sigma_.size() == 0 || sigma_.minCoeff() <= tol)
            throw singular_system_error("rank-deficient features with lambda = 0");
    }

    Eigen::VectorXd uty = u_.transpose() * target;
    Eigen::ArrayXd gain = sigma_.array() / (sigma_.array().square() + lambda);
    return v_ * (gain * uty.array()).matrix();
}

double RidgeSolver::default_lambda() const
{
    // trace(Omega^T Omega) equals the sum of squared singular values.
    return 1e-8 * sigma_.squaredNorm() / static_cast<double>(sigma_.size());
}

ReadoutModel ridge_fit(const FeatureMatrix& features, const TimeSeries& target, double lambda)
{
    if (features.rows() != static_cast<long>(target.size()))
        throw invalid_input_error("feature rows do not match target length");

    RidgeSolver solver(features.m);
    ReadoutModel model;
    model.coefficients = solver.solve(to_vector(target), lambda);
    model.ridge_lambda = lambda;
    model.include_squares = features.include_squares;
    return model;
}

Eigen::VectorXd predict(const FeatureMatrix& features, const ReadoutModel& model)
{
    if (features.cols() != model.coefficients.size())
        throw invalid_input_error("feature columns do not match coefficient count");
    return features.m * model.coefficients;
}

double nrmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& target)
{
    if (predicted.size() != target.size()) throw invalid_input_error("length mismatch in nrmse");
    if (target.size() < 2) throw invalid_input_error("nrmse needs at least 2 samples");
    double target_std = stddev(target);
    if (target_std <= 0.0) throw degenerate_target_error("constant target in nrmse");
    return stddev(target - predicted) / target_std;
}

double nrmse(const TimeSeries& predicted, const TimeSeries& target)
{
    return nrmse(to_vector(predicted), to_vector(target));
}

namespace {

Eigen::VectorXd aligned_target(const TimeSeries& target, const StateTrajectory& traj)
{
    if (static_cast<long>(target.size()) < traj.offset + traj.rows())
        throw invalid_input_error("target shorter than washout + n_fit");
    return Eigen::Map<const Eigen::VectorXd>(target.values.data() + traj.offset, traj.rows());
}

}  // namespace

std::vector<TrainTestResult> train_test_multi(const ReservoirConfig& config,
                                              const AdjacencyMatrix& a,
                                              const TimeSeries& train_input,
                                              const std::vector<TimeSeries>& train_targets,
                                              const TimeSeries& test_input,
                                              const std::vector<TimeSeries>& test_targets,
                                              const TrainTestOptions& options)
{
    if (train_targets.size() != test_targets.size())
        throw invalid_input_error("train/test target counts differ");

    StateTrajectory train_traj = drive_states(config, a, train_input);
    StateTrajectory test_traj = drive_states(config, a, test_input);
    FeatureMatrix train_f = build_features(train_traj, options.include_squares, options.scope);
    FeatureMatrix test_f = build_features(test_traj, options.include_squares, options.scope);

    RidgeSolver solver(train_f.m);
    double lambda = options.lambda.value_or(solver.default_lambda());

    std::vector<TrainTestResult> results;
    results.reserve(train_targets.size());
    for (std::size_t k = 0; k < train_targets.size(); ++k) {
        Eigen::VectorXd y_train = aligned_target(train_targets[k], train_traj);
        Eigen::VectorXd y_test = aligned_target(test_targets[k], test_traj);

        TrainTestResult r;
        r.model.coefficients = solver.solve(y_train, lambda);
        r.model.ridge_lambda = lambda;
        r.model.include_squares = options.include_squares;
        r.train_error = nrmse(Eigen::VectorXd(train_f.m * r.model.coefficients), y_train);
        r.test_error = nrmse(Eigen::VectorXd(test_f.m * r.model.coefficients), y_test);
        results.push_back(std::move(r));
    }
    return results;
}

TrainTestResult train_test(const ReservoirConfig& config, const AdjacencyMatrix& a,
                           const TimeSeries& train_input, const TimeSeries& train_target,
                           const TimeSeries& test_input, const TimeSeries& test_target,
                           const TrainTestOptions& options)
{
    auto results = train_test_multi(config, a, train_input, {train_target}, test_input,
                                    {test_target}, options);
    return results.front();
}

std::string ReadoutModel::to_json() const
{
    nlohmann::json j;
    j["coefficients"] = std::vector<double>(coefficients.data(),
                                            coefficients.data() + coefficients.size());
    j["ridge_lambda"] = ridge_lambda;
    j["include_squares"] = include_squares;
    return j.dump(2);
}

ReadoutModel ReadoutModel::from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    ReadoutModel m;
    auto coeffs = j.at("coefficients").get<std::vector<double>>();
    m.coefficients = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
    m.ridge_lambda = j.at("ridge_lambda").get<double>();
    m.include_squares = j.at("include_squares").get<bool>();
    return m;
}

}  // namespace resmem
