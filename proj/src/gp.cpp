#include "egp/gp.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace egp::gp {

namespace {

constexpr double kVarianceFloor = -1e-10;

void check_training(const TrainingSet& data, double noise_variance) {
  if (data.inputs.count() == 0) throw EmptyInput("fit: no training points");
  if (data.inputs.count() != data.targets.size())
    throw DimensionMismatch("fit: inputs and targets have different lengths");
  for (double v : data.targets)
    if (!std::isfinite(v)) throw NonFiniteInput("fit: non-finite target");
  for (double v : data.inputs.data)
    if (!std::isfinite(v)) throw NonFiniteInput("fit: non-finite input coordinate");
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
    throw Error("fit: noise variance must be finite and non-negative");
}

void check_test_inputs(const GPModel& model, const Points& xs) {
  if (xs.count() > 0 && xs.dim != model.train_inputs.dim)
    throw DimensionMismatch("predict: test dimension differs from training dimension");
  for (double v : xs.data)
    if (!std::isfinite(v)) throw NonFiniteInput("predict: non-finite test coordinate");
}

double sqdist(std::span<const double> x, std::span<const double> y) {
  double sq = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double diff = x[d] - y[d];
    sq += diff * diff;
  }
  return sq;
}

// Mean and variance at one test point against the stored factor.
Prediction predict_one(const GPModel& m, std::span<const double> x, std::vector<double>& kvec,
                       bool& numerical_error) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    kvec[i] = kernels::eval_sqdist(m.kernel, sqdist(x, m.train_inputs.row(i)));

  const double mean = linalg::dot(kvec, m.alpha);
  const std::vector<double> v = linalg::forward_solve(m.chol, kvec);
  double var = kernels::eval_sqdist(m.kernel, 0.0) - linalg::dot(v, v);
  if (var < 0.0) {
    if (var < kVarianceFloor) numerical_error = true;
    var = 0.0;
  }
  return Prediction{mean, var};
}

}  // namespace

GPModel fit(const kernels::KernelSpec& kernel, const TrainingSet& data, double noise_variance,
            const linalg::JitterPolicy& policy) {
  kernels::validate(kernel);
  check_training(data, noise_variance);
  linalg::SymMatrix k = kernels::gram_sym(kernel, data.inputs);
  k.add_to_diagonal(noise_variance);
  linalg::CholeskyFactor chol = linalg::cholesky(k, policy);
  std::vector<double> alpha = linalg::solve_cholesky(chol, data.targets);
  return GPModel{kernel, noise_variance, data.inputs, std::move(chol), std::move(alpha)};
}

GPModel serial::fit(const kernels::KernelSpec& kernel, const TrainingSet& data,
                    double noise_variance, const linalg::JitterPolicy& policy) {
  kernels::validate(kernel);
  check_training(data, noise_variance);
  linalg::SymMatrix k = kernels::serial::gram_sym(kernel, data.inputs);
  k.add_to_diagonal(noise_variance);
  linalg::CholeskyFactor chol = linalg::serial::cholesky(k, policy);
  std::vector<double> alpha = linalg::solve_cholesky(chol, data.targets);
  return GPModel{kernel, noise_variance, data.inputs, std::move(chol), std::move(alpha)};
}

std::vector<Prediction> predict(const GPModel& model, const Points& test_inputs) {
  check_test_inputs(model, test_inputs);
  const std::size_t count = test_inputs.count();
  std::vector<Prediction> out(count);
  std::atomic<bool> numerical_error{false};
  const std::int64_t sn = static_cast<std::int64_t>(count);
#pragma omp parallel if (sn > 4)
  {
    std::vector<double> kvec(model.size());
    bool bad = false;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < sn; ++i)
      out[static_cast<std::size_t>(i)] =
          predict_one(model, test_inputs.row(static_cast<std::size_t>(i)), kvec, bad);
    if (bad) numerical_error.store(true, std::memory_order_relaxed);
  }
  if (numerical_error.load())
    throw NumericalError("predict: posterior variance below -1e-10; factorization looks broken");
  return out;
}

std::vector<Prediction> serial::predict(const GPModel& model, const Points& test_inputs) {
  check_test_inputs(model, test_inputs);
  const std::size_t count = test_inputs.count();
  std::vector<Prediction> out(count);
  std::vector<double> kvec(model.size());
  bool bad = false;
  for (std::size_t i = 0; i < count; ++i) out[i] = predict_one(model, test_inputs.row(i), kvec, bad);
  if (bad)
    throw NumericalError("predict: posterior variance below -1e-10; factorization looks broken");
  return out;
}

double log_marginal_likelihood(const GPModel& model, std::span<const double> targets) {
  if (targets.size() != model.size())
    throw DimensionMismatch("log_marginal_likelihood: target length differs from training size");
  const double fit_term = -0.5 * linalg::dot(targets, model.alpha);
  const double n = static_cast<double>(model.size());
  return fit_term - 0.5 * linalg::log_det(model.chol) - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

}  // namespace egp::gp
