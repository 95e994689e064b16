#include "egp/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <type_traits>

namespace egp::kernels {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.2360679774997896;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(std::string("kernel: ") + what + " must be positive and finite");
}

void validate_one(const SquaredExponential& k) {
  check_positive(k.variance, "variance");
  check_positive(k.lengthscale, "lengthscale");
}

void validate_one(const Matern& k) {
  check_positive(k.variance, "variance");
  check_positive(k.lengthscale, "lengthscale");
  if (k.nu != 0.5 && k.nu != 1.5 && k.nu != 2.5) throw Error("Matern: nu must be 0.5, 1.5 or 2.5");
}

void validate_one(const RationalQuadratic& k) {
  check_positive(k.variance, "variance");
  check_positive(k.lengthscale, "lengthscale");
  check_positive(k.scale_mixture, "scale mixture beta");
}

void validate_one(const Ensemble& k) {
  if (k.components.empty()) throw EmptyInput("Ensemble: no components");
  double sum = 0.0;
  for (const auto& c : k.components) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight))
      throw Error("Ensemble: weights must be non-negative and finite");
    sum += c.weight;
    std::visit([](const auto& b) { validate_one(b); }, c.base);
  }
  if (!(sum > 0.0)) throw ZeroWeightSum("Ensemble: at least one weight must be positive");
}

double eval_sq_one(const SquaredExponential& k, double sq) {
  const double l = k.lengthscale;
  return k.variance * std::exp(-0.5 * sq / (l * l));
}

double eval_sq_one(const Matern& k, double sq) {
  const double r = std::sqrt(sq);
  const double l = k.lengthscale;
  if (k.nu == 0.5) return k.variance * std::exp(-r / l);
  if (k.nu == 1.5) {
    const double t = kSqrt3 * r / l;
    return k.variance * (1.0 + t) * std::exp(-t);
  }
  const double t = kSqrt5 * r / l;
  return k.variance * (1.0 + t + 5.0 * sq / (3.0 * l * l)) * std::exp(-t);
}

double eval_sq_one(const RationalQuadratic& k, double sq) {
  const double l = k.lengthscale;
  return k.variance * std::pow(1.0 + sq / (2.0 * k.scale_mixture * l * l), -k.scale_mixture);
}

double eval_base_sqdist(const BaseKernel& k, double sq) {
  return std::visit([sq](const auto& b) { return eval_sq_one(b, sq); }, k);
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double sq = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double diff = x[d] - y[d];
    sq += diff * diff;
  }
  return sq;
}

void check_points_finite(const Points& xs, const char* what) {
  for (double v : xs.data)
    if (!std::isfinite(v)) throw NonFiniteInput(std::string(what) + ": non-finite coordinate");
}

bool same_points(const Points& a, const Points& b) {
  return &a == &b || (a.dim == b.dim && a.data == b.data);
}

}  // namespace

void validate(const KernelSpec& k) {
  std::visit([](const auto& v) { validate_one(v); }, k);
}

std::string name(const BaseKernel& k) {
  if (std::holds_alternative<SquaredExponential>(k)) return "ES";
  if (const auto* ma = std::get_if<Matern>(&k)) {
    if (ma->nu == 0.5) return "Matern0.5";
    if (ma->nu == 2.5) return "Matern2.5";
    return "Matern1.5";
  }
  return "RQ";
}

std::string name(const KernelSpec& k) {
  return std::visit(
      [](const auto& v) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Ensemble>)
          return "Ensemble";
        else
          return name(BaseKernel{v});
      },
      k);
}

KernelSpec to_spec(const BaseKernel& k) {
  return std::visit([](const auto& b) { return KernelSpec{b}; }, k);
}

double eval_sqdist(const KernelSpec& k, double sq) {
  return std::visit(
      [sq](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Ensemble>) {
          double s = 0.0;
          for (const auto& c : v.components) s += c.weight * eval_base_sqdist(c.base, sq);
          return s;
        } else {
          return eval_sq_one(v, sq);
        }
      },
      k);
}

double eval(const KernelSpec& k, std::span<const double> x, std::span<const double> x_prime) {
  if (x.size() != x_prime.size())
    throw DimensionMismatch("kernel eval: input points have different dimensions");
  for (std::size_t d = 0; d < x.size(); ++d)
    if (!std::isfinite(x[d]) || !std::isfinite(x_prime[d]))
      throw NonFiniteInput("kernel eval: non-finite input coordinate");
  return eval_sqdist(k, squared_distance(x, x_prime));
}

Ensemble normalize_weights(const Ensemble& k) {
  double sum = 0.0;
  for (const auto& c : k.components) sum += c.weight;
  if (!(sum > 0.0)) throw ZeroWeightSum("normalize_weights: weight sum must be positive");
  Ensemble out = k;
  for (auto& c : out.components) c.weight /= sum;
  return out;
}

GramMatrix gram(const KernelSpec& k, const Points& xs, const Points& xs_prime) {
  validate(k);
  if (xs.count() == 0 || xs_prime.count() == 0) throw EmptyInput("gram: empty point set");
  if (xs.dim != xs_prime.dim) throw DimensionMismatch("gram: point sets have different dimensions");
  check_points_finite(xs, "gram");

  const std::size_t rows = xs.count();
  GramMatrix g{rows, xs_prime.count(), {}, k};

  if (same_points(xs, xs_prime)) {
    g.cols = rows;
    g.values.assign(rows * rows, 0.0);
    const std::int64_t sn = static_cast<std::int64_t>(rows);
    // One evaluation per unordered pair, mirrored for exact symmetry.
#pragma omp parallel for schedule(dynamic, 8) if (sn > 32)
    for (std::int64_t si = 0; si < sn; ++si) {
      const std::size_t i = static_cast<std::size_t>(si);
      const auto xi = xs.row(i);
      for (std::size_t j = i; j < rows; ++j) {
        const double v = eval_sqdist(k, squared_distance(xi, xs.row(j)));
        g.values[i * rows + j] = v;
        g.values[j * rows + i] = v;
      }
    }
    return g;
  }

  check_points_finite(xs_prime, "gram");
  const std::size_t cols = xs_prime.count();
  g.values.assign(rows * cols, 0.0);
  const std::int64_t sn = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (sn * static_cast<std::int64_t>(cols) > 1024)
  for (std::int64_t si = 0; si < sn; ++si) {
    const std::size_t i = static_cast<std::size_t>(si);
    const auto xi = xs.row(i);
    for (std::size_t j = 0; j < cols; ++j)
      g.values[i * cols + j] = eval_sqdist(k, squared_distance(xi, xs_prime.row(j)));
  }
  return g;
}

linalg::SymMatrix gram_sym(const KernelSpec& k, const Points& xs) {
  GramMatrix g = gram(k, xs, xs);
  linalg::SymMatrix m(g.rows);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = i; j < g.rows; ++j) m.set(i, j, g.values[i * g.rows + j]);
  return m;
}

GramMatrix serial::gram(const KernelSpec& k, const Points& xs, const Points& xs_prime) {
  validate(k);
  if (xs.count() == 0 || xs_prime.count() == 0) throw EmptyInput("gram: empty point set");
  const std::size_t rows = xs.count();
  const std::size_t cols = xs_prime.count();
  GramMatrix g{rows, cols, std::vector<double>(rows * cols, 0.0), k};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      g.values[i * cols + j] = eval(k, xs.row(i), xs_prime.row(j));
  return g;
}

linalg::SymMatrix serial::gram_sym(const KernelSpec& k, const Points& xs) {
  GramMatrix g = serial::gram(k, xs, xs);
  linalg::SymMatrix m(g.rows);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = i; j < g.rows; ++j) m.set(i, j, g.values[i * g.rows + j]);
  return m;
}

}  // namespace egp::kernels
