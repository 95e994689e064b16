#pragma once

#include <span>
#include <vector>

#include "egp/kernels.hpp"
#include "egp/linalg.hpp"
#include "egp/points.hpp"

namespace egp::gp {

struct TrainingSet {
  Points inputs;
  std::vector<double> targets;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

// Zero-mean GP conditioned on training data. Immutable after fit; predict is
// read-only and safe to call from many threads.
struct GPModel {
  kernels::KernelSpec kernel;
  double noise_variance = 0.0;
  Points train_inputs;
  linalg::CholeskyFactor chol;   // factor of K(X,X) + noise*I (+ jitter)
  std::vector<double> alpha;     // (K + noise*I)^{-1} y

  std::size_t size() const { return train_inputs.count(); }
};

GPModel fit(const kernels::KernelSpec& kernel, const TrainingSet& data, double noise_variance,
            const linalg::JitterPolicy& policy = {});

// Posterior mean and variance per test point. Variances in [-1e-10, 0) clamp
// to zero; anything below that raises NumericalError.
std::vector<Prediction> predict(const GPModel& model, const Points& test_inputs);

// -1/2 y^T alpha - 1/2 log det - n/2 log(2 pi), with the model's stored alpha.
double log_marginal_likelihood(const GPModel& model, std::span<const double> targets);

namespace serial {
GPModel fit(const kernels::KernelSpec& kernel, const TrainingSet& data, double noise_variance,
            const linalg::JitterPolicy& policy = {});
std::vector<Prediction> predict(const GPModel& model, const Points& test_inputs);
}  // namespace serial

}  // namespace egp::gp
