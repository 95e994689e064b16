#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egp/errors.hpp"

namespace egp::linalg {

// Dense symmetric matrix, row-major. set() writes both halves, so the stored
// content is symmetric by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  void add_to_diagonal(double v) {
    for (std::size_t i = 0; i < n_; ++i) a_[i * n_ + i] += v;
  }

  std::span<const double> values() const { return a_; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Diagonal shifts attempted when a factorization hits a non-positive pivot:
// 0 first, then initial, initial*growth_factor, ... for max_attempts shifts.
struct JitterPolicy {
  double initial = 1e-10;
  double growth_factor = 10.0;
  int max_attempts = 8;
};

// Lower-triangular factor L with L*L^T == input + applied_jitter*I.
struct CholeskyFactor {
  std::size_t n = 0;
  std::vector<double> l;  // n*n row-major, zero above the diagonal
  double applied_jitter = 0.0;

  double operator()(std::size_t i, std::size_t j) const { return l[i * n + j]; }
};

CholeskyFactor cholesky(const SymMatrix& a, const JitterPolicy& policy = {});

// Solves (L*L^T) x = b by forward then backward substitution.
std::vector<double> solve_cholesky(const CholeskyFactor& f, std::span<const double> b);

// Solves L y = b only; the building block for predictive variances.
std::vector<double> forward_solve(const CholeskyFactor& f, std::span<const double> b);

// log det of the factored (jitter-shifted) matrix: 2 * sum(log diag(L)).
double log_det(const CholeskyFactor& f);

double dot(std::span<const double> a, std::span<const double> b);

namespace serial {
// Plain-loop reference factorization, kept for testing the OpenMP path against.
CholeskyFactor cholesky(const SymMatrix& a, const JitterPolicy& policy = {});
}  // namespace serial

}  // namespace egp::linalg
