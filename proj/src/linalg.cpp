#include "egp/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace egp::linalg {

namespace {

void check_policy(const JitterPolicy& p) {
  if (!(p.initial >= 0.0)) throw Error("jitter policy: initial must be >= 0");
  if (!(p.growth_factor > 1.0)) throw Error("jitter policy: growth_factor must be > 1");
  if (p.max_attempts < 1) throw Error("jitter policy: max_attempts must be >= 1");
}

// Blocked right-looking factorization at one diagonal shift. Panels factor
// serially; the O(n^3) trailing updates run in parallel with one barrier per
// panel. Every entry receives the same subtraction chain as the left-looking
// reference below, so the two produce bit-identical factors. Returns false on
// a pivot that is not strictly positive (or not finite).
bool factor_attempt(const SymMatrix& a, double shift, std::vector<double>& l) {
  const std::size_t n = a.dim();
  constexpr std::size_t kPanel = 32;
  std::fill(l.begin(), l.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) l[i * n + j] = a(i, j);
    l[i * n + i] = a(i, i) + shift;
  }

  for (std::size_t jb = 0; jb < n; jb += kPanel) {
    const std::size_t jend = std::min(jb + kPanel, n);
    for (std::size_t j = jb; j < jend; ++j) {
      const double* rj = l.data() + j * n;
      double d = rj[j];
      for (std::size_t k = jb; k < j; ++k) d -= rj[k] * rj[k];
      if (!(d > 0.0) || !std::isfinite(d)) return false;
      const double ljj = std::sqrt(d);
      l[j * n + j] = ljj;
      for (std::size_t i = j + 1; i < n; ++i) {
        const double* ri = l.data() + i * n;
        double s = ri[j];
        for (std::size_t k = jb; k < j; ++k) s -= ri[k] * rj[k];
        l[i * n + j] = s / ljj;
      }
    }
    const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (n - jend > 64)
    for (std::int64_t i = static_cast<std::int64_t>(jend); i < sn; ++i) {
      double* ri = l.data() + static_cast<std::size_t>(i) * n;
      for (std::size_t c = jend; c <= static_cast<std::size_t>(i); ++c) {
        const double* rc = l.data() + c * n;
        double s = ri[c];
        for (std::size_t k = jb; k < jend; ++k) s -= ri[k] * rc[k];
        ri[c] = s;
      }
    }
  }
  return true;
}

bool factor_attempt_serial(const SymMatrix& a, double shift, std::vector<double>& l) {
  const std::size_t n = a.dim();
  std::fill(l.begin(), l.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double* rj = l.data() + j * n;
    double d = a(j, j) + shift;
    for (std::size_t k = 0; k < j; ++k) d -= rj[k] * rj[k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double* ri = l.data() + i * n;
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
      l[i * n + j] = s / ljj;
    }
  }
  return true;
}

template <typename Attempt>
CholeskyFactor cholesky_with(const SymMatrix& a, const JitterPolicy& policy, Attempt attempt) {
  check_policy(policy);
  const std::size_t n = a.dim();
  if (n == 0) throw EmptyInput("cholesky: empty matrix");

  std::vector<double> l(n * n, 0.0);
  // One free attempt at zero shift, then max_attempts jittered attempts.
  if (attempt(a, 0.0, l)) return CholeskyFactor{n, std::move(l), 0.0};
  double shift = policy.initial;
  double largest_tried = 0.0;
  for (int k = 0; k < policy.max_attempts && shift > 0.0; ++k) {
    if (attempt(a, shift, l)) return CholeskyFactor{n, std::move(l), shift};
    largest_tried = shift;
    shift *= policy.growth_factor;
  }
  throw NotPositiveDefinite("cholesky: matrix is not positive definite up to jitter " +
                            std::to_string(largest_tried));
}

}  // namespace

CholeskyFactor cholesky(const SymMatrix& a, const JitterPolicy& policy) {
  return cholesky_with(a, policy, factor_attempt);
}

CholeskyFactor serial::cholesky(const SymMatrix& a, const JitterPolicy& policy) {
  return cholesky_with(a, policy, factor_attempt_serial);
}

std::vector<double> forward_solve(const CholeskyFactor& f, std::span<const double> b) {
  const std::size_t n = f.n;
  if (b.size() != n) throw DimensionMismatch("forward_solve: vector length != factor dimension");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = f.l.data() + i * n;
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= ri[k] * y[k];
    y[i] = s / ri[i];
  }
  return y;
}

std::vector<double> solve_cholesky(const CholeskyFactor& f, std::span<const double> b) {
  const std::size_t n = f.n;
  if (b.size() != n) throw DimensionMismatch("solve_cholesky: vector length != factor dimension");
  std::vector<double> x = forward_solve(f, b);
  // Backward pass against L^T: column i of L is row i of L^T.
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= f.l[k * n + ii] * x[k];
    x[ii] = s / f.l[ii * n + ii];
  }
  return x;
}

double log_det(const CholeskyFactor& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) s += std::log(f.l[i * f.n + i]);
  return 2.0 * s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace egp::linalg
