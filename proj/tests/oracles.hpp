// Independent brute-force reference implementations used only by tests.
// Nothing here shares code with the library paths it checks.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

using Matrix = std::vector<std::vector<double>>;

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

// Gauss-Jordan inverse with partial pivoting.
inline Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) throw std::runtime_error("oracle invert: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

inline std::vector<double> mat_vec(const Matrix& a, std::span<const double> x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

// Cofactor-expansion determinant; fine for the tiny matrices tests use.
inline double determinant(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, std::vector<double>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t mc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor[i - 1][mc++] = a[i][j];
      }
    }
    det += (c % 2 == 0 ? 1.0 : -1.0) * a[0][c] * determinant(minor);
  }
  return det;
}

// Cyclic Jacobi rotations; returns the eigenvalues of a symmetric matrix.
inline std::vector<double> symmetric_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  return eig;
}

// Monte-Carlo estimate of E[max(f - best - xi, 0)] with f ~ N(mean, sd^2).
struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

inline McEstimate mc_expected_improvement(double mean, double sd, double best, double xi,
                                          std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, sd);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double imp = std::max(normal(rng) - best - xi, 0.0);
    sum += imp;
    sum_sq += imp * imp;
  }
  const double n = static_cast<double>(draws);
  const double avg = sum / n;
  const double var = std::max(sum_sq / n - avg * avg, 0.0);
  return {avg, std::sqrt(var / n)};
}

// Trapezoid quadrature of E[max(f - best - xi, 0)] under N(mean, sd^2).
inline double quad_expected_improvement(double mean, double sd, double best, double xi) {
  const double lo = mean - 10.0 * sd, hi = mean + 10.0 * sd;
  const std::size_t steps = 200000;
  const double h = (hi - lo) / static_cast<double>(steps);
  double sum = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double f = lo + h * static_cast<double>(i);
    const double z = (f - mean) / sd;
    const double density = std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * 3.14159265358979323846));
    const double weight = (i == 0 || i == steps) ? 0.5 : 1.0;
    sum += weight * std::max(f - best - xi, 0.0) * density;
  }
  return sum * h;
}

// All weight vectors on the d-simplex with the given resolution.
inline std::vector<std::vector<double>> simplex_grid(std::size_t d, double step) {
  const int ticks = static_cast<int>(std::lround(1.0 / step));
  std::vector<std::vector<double>> grid;
  std::vector<int> counts(d, 0);
  const auto emit = [&] {
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<double>(counts[i]) / ticks;
    grid.push_back(std::move(w));
  };
  // Enumerate compositions of `ticks` into d parts.
  const std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i + 1 == d) {
      counts[i] = remaining;
      emit();
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[i] = c;
      rec(i + 1, remaining - c);
    }
  };
  rec(0, ticks);
  return grid;
}

}  // namespace oracles
