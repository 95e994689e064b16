#include "egp/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "egp/csv.hpp"
#include "egp/gp.hpp"
#include "egp/metrics.hpp"
#include "egp/random.hpp"

namespace egp::bayesopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSurrogateNoise = 1e-6;

void check_space(const SearchSpace& space) {
  if (space.dim() == 0) throw Error("search space must have at least one dimension");
  for (const Bound& b : space.bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi)) throw Error("search space bounds must be finite");
    if (!(b.lo >= 0.0) || !(b.lo < b.hi)) throw Error("search space bounds need 0 <= lo < hi");
  }
}

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Scores shifted/scaled to zero mean and unit variance. Non-finite (failed)
// scores are parked one unit below the worst finite score so the surrogate
// stays well defined without ever making them attractive.
std::vector<double> standardize_scores(const std::vector<Trial>& trials) {
  double mean = 0.0;
  std::size_t finite = 0;
  for (const Trial& t : trials)
    if (std::isfinite(t.score)) {
      mean += t.score;
      ++finite;
    }
  if (finite == 0) return std::vector<double>(trials.size(), 0.0);
  mean /= static_cast<double>(finite);

  double var = 0.0;
  for (const Trial& t : trials)
    if (std::isfinite(t.score)) {
      const double d = t.score - mean;
      var += d * d;
    }
  var /= static_cast<double>(finite);
  double sd = std::sqrt(var);
  if (sd < 1e-12) sd = 1.0;

  std::vector<double> z(trials.size());
  double z_min = kInf;
  for (std::size_t i = 0; i < trials.size(); ++i)
    if (std::isfinite(trials[i].score)) {
      z[i] = (trials[i].score - mean) / sd;
      z_min = std::min(z_min, z[i]);
    }
  for (std::size_t i = 0; i < trials.size(); ++i)
    if (!std::isfinite(trials[i].score)) z[i] = z_min - 1.0;
  return z;
}

Points sample_candidates(std::mt19937_64& rng, const SearchSpace& space, std::size_t count) {
  const std::size_t d = space.dim();
  Points out;
  out.dim = d;
  out.data.reserve(count * d);
  for (std::size_t c = 0; c < count; ++c) {
    if (space.simplex_constrained) {
      const std::vector<double> w = detail::sample_simplex(rng, d);
      out.data.insert(out.data.end(), w.begin(), w.end());
    } else {
      for (const Bound& b : space.bounds) out.data.push_back(uniform_in(rng, b.lo, b.hi));
    }
  }
  return out;
}

std::vector<std::vector<double>> seed_points(const SearchSpace& space, std::uint64_t seed) {
  const std::size_t d = space.dim();
  std::vector<std::vector<double>> seeds;
  if (space.simplex_constrained) {
    // Vertices try each base kernel alone; the center tries them all equally.
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> v(d, 0.0);
      v[i] = 1.0;
      seeds.push_back(std::move(v));
    }
    seeds.emplace_back(d, 1.0 / static_cast<double>(d));
    return seeds;
  }
  // Box mode: d+1 distinct corners chosen by the seed.
  std::mt19937_64 rng = seeded_rng(seed, /*stream=*/2);
  std::vector<std::uint64_t> masks;
  const std::uint64_t corner_count = d < 63 ? (std::uint64_t{1} << d) : 0;
  while (masks.size() < d + 1) {
    std::uint64_t m;
    if (corner_count != 0) {
      m = uniform_below(rng, corner_count);
      if (std::find(masks.begin(), masks.end(), m) != masks.end()) continue;
    } else {
      m = rng();
    }
    masks.push_back(m);
  }
  for (std::uint64_t m : masks) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i)
      v[i] = (m >> (i % 63)) & 1 ? space.bounds[i].hi : space.bounds[i].lo;
    seeds.push_back(std::move(v));
  }
  return seeds;
}

kernels::Ensemble make_ensemble(const std::vector<kernels::BaseKernel>& base_kernels,
                                std::span<const double> omega) {
  kernels::Ensemble ens;
  ens.components.reserve(base_kernels.size());
  for (std::size_t i = 0; i < base_kernels.size(); ++i)
    ens.components.push_back({omega[i], base_kernels[i]});
  return ens;
}

}  // namespace

double expected_improvement(double mean, double sd, double best, double xi) {
  if (!(sd >= 0.0)) throw Error("expected_improvement: sd must be non-negative");
  if (!(xi >= 0.0)) throw Error("expected_improvement: xi must be non-negative");
  const double gap = mean - best - xi;
  if (sd == 0.0) return gap > 0.0 ? gap : 0.0;
  const double z = gap / sd;
  const double ei = gap * norm_cdf(z) + sd * norm_pdf(z);
  return ei > 0.0 ? ei : 0.0;
}

std::size_t detail::argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::vector<double> detail::sample_simplex(std::mt19937_64& rng, std::size_t d) {
  std::vector<double> w(d);
  if (d == 1) {
    w[0] = 1.0;
    return w;
  }
  std::vector<double> cuts(d - 1);
  for (double& c : cuts) c = uniform01(rng);
  std::sort(cuts.begin(), cuts.end());
  double prev = 0.0, sum = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    w[i] = cuts[i] - prev;
    prev = cuts[i];
    sum += w[i];
  }
  w[d - 1] = 1.0 - prev;
  sum += w[d - 1];
  for (double& v : w) v /= sum;  // exact unit sum despite rounding
  return w;
}

std::vector<double> acquire_threshold(const BOState& state, const SearchSpace& space) {
  if (state.trials.empty()) throw EmptyHistory("acquire_threshold: no trials recorded");
  if (state.acquisition.candidate_count < 1)
    throw Error("acquire_threshold: candidate_count must be >= 1");
  check_space(space);
  const std::size_t d = space.dim();
  for (const Trial& t : state.trials)
    if (t.weights.size() != d)
      throw DimensionMismatch("acquire_threshold: trial dimension differs from space");

  const std::vector<double> z = standardize_scores(state.trials);
  const double best = *std::max_element(z.begin(), z.end());

  kernels::KernelSpec surrogate_kernel;
  if (state.surrogate_kernel) {
    surrogate_kernel = *state.surrogate_kernel;
  } else {
    double width = 0.0;
    for (const Bound& b : space.bounds) width += b.hi - b.lo;
    width /= static_cast<double>(d);
    double mean_z = 0.0;
    for (double v : z) mean_z += v;
    mean_z /= static_cast<double>(z.size());
    double var_z = 0.0;
    for (double v : z) var_z += (v - mean_z) * (v - mean_z);
    var_z /= static_cast<double>(z.size());
    if (var_z < 1e-12) var_z = 1.0;  // all-equal scores still need a valid kernel
    surrogate_kernel =
        kernels::SquaredExponential{var_z, state.surrogate_lengthscale_factor * width};
  }

  Points train;
  train.dim = d;
  for (const Trial& t : state.trials)
    train.data.insert(train.data.end(), t.weights.begin(), t.weights.end());
  const gp::GPModel surrogate = gp::fit(surrogate_kernel, {train, z}, kSurrogateNoise);

  std::mt19937_64 rng = seeded_rng(state.rng_seed, /*stream=*/100 + state.trials.size());
  const Points candidates = sample_candidates(rng, space, state.acquisition.candidate_count);
  const std::vector<gp::Prediction> preds = gp::predict(surrogate, candidates);

  std::vector<double> ei(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i)
    ei[i] = expected_improvement(preds[i].mean, std::sqrt(preds[i].variance), best,
                                 state.acquisition.xi);
  const std::size_t pick = detail::argmax(ei);
  const auto row = candidates.row(pick);
  return std::vector<double>(row.begin(), row.end());
}

double evaluate_model(const data::PreparedSplit& split,
                      const std::vector<kernels::BaseKernel>& base_kernels,
                      std::span<const double> omega, double noise_variance, ScoreKind kind,
                      const linalg::JitterPolicy& policy) {
  if (omega.size() != base_kernels.size())
    throw DimensionMismatch("evaluate_model: weight count differs from kernel count");
  const kernels::KernelSpec ensemble{make_ensemble(base_kernels, omega)};
  try {
    const gp::GPModel model =
        gp::fit(ensemble, {split.train_inputs, split.train_targets}, noise_variance, policy);
    if (kind == ScoreKind::LogMarginalLikelihood)
      return gp::log_marginal_likelihood(model, split.train_targets);
    const std::vector<gp::Prediction> preds = gp::predict(model, split.validation_inputs);
    std::vector<double> means(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) means[i] = preds[i].mean;
    return -metrics::compute_metrics(split.validation_targets, means).rmse;
  } catch (const NotPositiveDefinite&) {
    return -kInf;
  } catch (const ZeroWeightSum&) {
    return -kInf;
  }
}

OptimizeResult optimize_kernel_weights(const data::PreparedSplit& split,
                                       const std::vector<kernels::BaseKernel>& base_kernels,
                                       const SearchSpace& space, std::size_t iterations,
                                       std::uint64_t seed, double noise_variance,
                                       const AcquisitionConfig& acquisition, ScoreKind kind,
                                       const linalg::JitterPolicy& policy) {
  check_space(space);
  if (space.dim() != base_kernels.size())
    throw DimensionMismatch("optimize_kernel_weights: space dimension differs from kernel count");
  if (iterations < 1) throw Error("optimize_kernel_weights: iterations must be >= 1");

  BOState state;
  state.rng_seed = seed;
  state.acquisition = acquisition;

  double best_score = -kInf;
  std::vector<double> best_weights;
  const auto record = [&](std::vector<double> w, double score) {
    if (score > best_score) {
      best_score = score;
      best_weights = w;
    }
    state.trials.push_back(Trial{std::move(w), score});
  };

  for (auto& w : seed_points(space, seed)) {
    const double score = evaluate_model(split, base_kernels, w, noise_variance, kind, policy);
    record(std::move(w), score);
  }
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<double> w = acquire_threshold(state, space);
    const double score = evaluate_model(split, base_kernels, w, noise_variance, kind, policy);
    record(std::move(w), score);
  }

  if (best_weights.empty())
    throw Error("optimize_kernel_weights: every trial failed to fit");
  return OptimizeResult{std::move(best_weights), best_score, std::move(state)};
}

const Trial& best_trial(const BOState& state) {
  if (state.trials.empty()) throw EmptyHistory("best_trial: no trials recorded");
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.trials.size(); ++i)
    if (state.trials[i].score > state.trials[best].score) best = i;
  return state.trials[best];
}

void write_history_csv(const BOState& state, std::ostream& out) {
  const std::size_t d = state.trials.empty() ? 0 : state.trials[0].weights.size();
  out << "iteration";
  for (std::size_t i = 1; i <= d; ++i) out << ",w_" << i;
  out << ",score,best_so_far\n";
  double best = -kInf;
  for (std::size_t i = 0; i < state.trials.size(); ++i) {
    const Trial& t = state.trials[i];
    if (t.score > best) best = t.score;
    out << (i + 1);
    for (double w : t.weights) out << ',' << csv::format_double(w);
    out << ',' << csv::format_double(t.score) << ',' << csv::format_double(best) << '\n';
  }
}

}  // namespace egp::bayesopt
