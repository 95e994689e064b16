#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "egp/data.hpp"
#include "egp/kernels.hpp"
#include "egp/linalg.hpp"

namespace egp::bayesopt {

struct Bound {
  double lo = 0.0;
  double hi = 1.0;
};

// Weight space searched by the optimizer. With simplex_constrained the
// candidates are drawn uniformly from the probability simplex instead of the
// bounding box.
struct SearchSpace {
  std::vector<Bound> bounds;
  bool simplex_constrained = true;

  std::size_t dim() const { return bounds.size(); }

  static SearchSpace simplex(std::size_t d) {
    return SearchSpace{std::vector<Bound>(d, Bound{0.0, 1.0}), true};
  }
  static SearchSpace box(std::size_t d, double lo = 0.0, double hi = 1.0) {
    return SearchSpace{std::vector<Bound>(d, Bound{lo, hi}), false};
  }
};

struct Trial {
  std::vector<double> weights;
  double score = 0.0;  // higher is better; -inf marks a failed fit
};

struct AcquisitionConfig {
  double xi = 0.01;                   // exploration margin, on standardized scores
  std::size_t candidate_count = 2048;
};

struct BOState {
  std::vector<Trial> trials;  // append-only
  // When unset, acquisition builds an ES surrogate with lengthscale
  // surrogate_lengthscale_factor * mean bound width and variance equal to the
  // sample variance of the standardized scores.
  std::optional<kernels::KernelSpec> surrogate_kernel;
  double surrogate_lengthscale_factor = 0.2;
  AcquisitionConfig acquisition;
  std::uint64_t rng_seed = 0;
};

enum class ScoreKind {
  NegRmse,                // -RMSE on the validation segment (default)
  LogMarginalLikelihood,  // training-data marginal likelihood
};

// Closed-form expected improvement for a maximization problem.
double expected_improvement(double mean, double sd, double best, double xi);

// Fits a surrogate to the trial history (scores standardized first), samples
// candidates uniformly from the space and returns the EI-argmax candidate.
// Ties break toward the lowest candidate index.
std::vector<double> acquire_threshold(const BOState& state, const SearchSpace& space);

// Score of one weight vector: build the weighted ensemble, fit on the train
// segment, score per `kind`. NotPositiveDefinite (and the all-zero-weight
// corner, which cannot form a kernel) map to -inf rather than an exception so
// the optimization loop stays total.
double evaluate_model(const data::PreparedSplit& split,
                      const std::vector<kernels::BaseKernel>& base_kernels,
                      std::span<const double> omega, double noise_variance,
                      ScoreKind kind = ScoreKind::NegRmse,
                      const linalg::JitterPolicy& policy = {});

struct OptimizeResult {
  std::vector<double> best_weights;
  double best_score = 0.0;
  BOState state;
};

// Seeds the history with d+1 deterministic points (simplex vertices plus the
// uniform center, or seeded box corners), then runs exactly `iterations`
// acquire/evaluate passes, keeping the strictly best trial.
OptimizeResult optimize_kernel_weights(const data::PreparedSplit& split,
                                       const std::vector<kernels::BaseKernel>& base_kernels,
                                       const SearchSpace& space, std::size_t iterations,
                                       std::uint64_t seed, double noise_variance = 1e-6,
                                       const AcquisitionConfig& acquisition = {},
                                       ScoreKind kind = ScoreKind::NegRmse,
                                       const linalg::JitterPolicy& policy = {});

const Trial& best_trial(const BOState& state);

// iteration,w_1..w_d,score,best_so_far — one row per trial, seeds included.
void write_history_csv(const BOState& state, std::ostream& out);

namespace detail {
// First index holding the strict maximum; invariant under positive scaling.
std::size_t argmax(std::span<const double> values);
// Uniform draw from the probability simplex via sorted-uniform spacings.
std::vector<double> sample_simplex(std::mt19937_64& rng, std::size_t d);
}  // namespace detail

}  // namespace egp::bayesopt
