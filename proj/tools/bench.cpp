// Timing comparison between the OpenMP kernels and their serial references.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "egp/gp.hpp"
#include "egp/kernels.hpp"
#include "egp/linalg.hpp"
#include "egp/random.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

egp::Points random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng = egp::seeded_rng(seed);
  egp::Points p;
  p.dim = 1;
  for (std::size_t i = 0; i < n; ++i) p.data.push_back(egp::uniform01(rng) * 10.0);
  return p;
}

egp::kernels::KernelSpec bench_kernel() {
  egp::kernels::Ensemble ens;
  ens.components.push_back({0.6, egp::kernels::SquaredExponential{1.0, 1.0}});
  ens.components.push_back({0.25, egp::kernels::Matern{1.0, 1.0, 1.5}});
  ens.components.push_back({0.15, egp::kernels::RationalQuadratic{1.0, 1.0, 1.0}});
  return egp::kernels::KernelSpec{ens};
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void report(const char* what, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", what,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t gram_n = 1500, chol_n = 900, train_n = 500, test_n = 4000;
  if (argc > 1) {
    // Single scale knob keeps the tool simple: ./gp-bench 0.5
    const double s = std::atof(argv[1]);
    if (s > 0) {
      gram_n = static_cast<std::size_t>(gram_n * s);
      chol_n = static_cast<std::size_t>(chol_n * s);
      train_n = static_cast<std::size_t>(train_n * s);
      test_n = static_cast<std::size_t>(test_n * s);
    }
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n\n");
#endif

  const auto kernel = bench_kernel();

  {
    const auto xs = random_points(gram_n, 11);
    const double ts = time_best_of(3, [&] { (void)egp::kernels::serial::gram_sym(kernel, xs); });
    const double tp = time_best_of(3, [&] { (void)egp::kernels::gram_sym(kernel, xs); });
    char label[64];
    std::snprintf(label, sizeof label, "gram %zux%zu", gram_n, gram_n);
    report(label, ts, tp);
  }

  {
    const auto xs = random_points(chol_n, 12);
    auto k = egp::kernels::gram_sym(kernel, xs);
    k.add_to_diagonal(1e-4);
    const double ts = time_best_of(3, [&] { (void)egp::linalg::serial::cholesky(k); });
    const double tp = time_best_of(3, [&] { (void)egp::linalg::cholesky(k); });
    char label[64];
    std::snprintf(label, sizeof label, "cholesky %zux%zu", chol_n, chol_n);
    report(label, ts, tp);
  }

  {
    const auto xs = random_points(train_n, 13);
    std::mt19937_64 rng = egp::seeded_rng(14);
    std::vector<double> y(train_n);
    for (double& v : y) v = egp::uniform01(rng) * 2.0 - 1.0;
    const auto model = egp::gp::fit(kernel, {xs, y}, 1e-4);
    const auto test = random_points(test_n, 15);
    const double ts = time_best_of(3, [&] { (void)egp::gp::serial::predict(model, test); });
    const double tp = time_best_of(3, [&] { (void)egp::gp::predict(model, test); });
    char label[64];
    std::snprintf(label, sizeof label, "predict %zu pts (n=%zu)", test_n, train_n);
    report(label, ts, tp);
  }

  return 0;
}
