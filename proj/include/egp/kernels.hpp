#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "egp/linalg.hpp"
#include "egp/points.hpp"

namespace egp::kernels {

// k(x, x') = variance * exp(-||x - x'||^2 / (2 lengthscale^2))
struct SquaredExponential {
  double variance = 1.0;
  double lengthscale = 1.0;
};

// Half-integer Matern family; nu must be one of 0.5, 1.5, 2.5.
struct Matern {
  double variance = 1.0;
  double lengthscale = 1.0;
  double nu = 1.5;
};

// k(x, x') = variance * (1 + ||x - x'||^2 / (2 beta lengthscale^2))^(-beta)
struct RationalQuadratic {
  double variance = 1.0;
  double lengthscale = 1.0;
  double scale_mixture = 1.0;  // beta
};

using BaseKernel = std::variant<SquaredExponential, Matern, RationalQuadratic>;

struct WeightedKernel {
  double weight = 1.0;
  BaseKernel base;
};

// Non-negative weighted sum of base kernels. Nesting depth is fixed at one by
// construction: components hold BaseKernel, never another Ensemble.
struct Ensemble {
  std::vector<WeightedKernel> components;
};

using KernelSpec = std::variant<SquaredExponential, Matern, RationalQuadratic, Ensemble>;

// Throws Error / ZeroWeightSum when hyperparameters are out of range, nu is
// not a supported half-integer, or an ensemble is empty or all-zero weighted.
void validate(const KernelSpec& k);

// Short CSV-safe label: ES, Matern0.5, RQ, Ensemble.
std::string name(const KernelSpec& k);
std::string name(const BaseKernel& k);

KernelSpec to_spec(const BaseKernel& k);

// Pointwise evaluation. Checks input dimensions and finiteness; assumes the
// kernel itself satisfies its invariants.
double eval(const KernelSpec& k, std::span<const double> x, std::span<const double> x_prime);

// Evaluation on a squared distance, for callers that already validated points.
double eval_sqdist(const KernelSpec& k, double squared_distance);

// Returns a copy with weights scaled to sum to one.
Ensemble normalize_weights(const Ensemble& k);

// Kernel evaluations over all point pairs; square and exactly symmetric when
// both point sets hold the same points.
struct GramMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  KernelSpec kernel;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

GramMatrix gram(const KernelSpec& k, const Points& xs, const Points& xs_prime);

// Symmetric Gram over one point set, in the form the factorization consumes.
linalg::SymMatrix gram_sym(const KernelSpec& k, const Points& xs);

namespace serial {
// Entry-by-entry reference versions, kept for testing the OpenMP path against.
GramMatrix gram(const KernelSpec& k, const Points& xs, const Points& xs_prime);
linalg::SymMatrix gram_sym(const KernelSpec& k, const Points& xs);
}  // namespace serial

}  // namespace egp::kernels
