#include "egp/metrics.hpp"

#include <cmath>
#include <limits>

#include "egp/csv.hpp"
#include "egp/errors.hpp"

namespace egp::metrics {

MetricsReport compute_metrics(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size())
    throw LengthMismatch("compute_metrics: series lengths differ");
  if (actual.empty()) throw EmptyInput("compute_metrics: empty series");

  const std::size_t n = actual.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(actual[i]) || !std::isfinite(predicted[i]))
      throw NonFiniteInput("compute_metrics: non-finite value");

  double sse = 0.0, sae = 0.0, mean_actual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = actual[i] - predicted[i];
    sse += e * e;
    sae += std::abs(e);
    mean_actual += actual[i];
  }
  mean_actual /= static_cast<double>(n);

  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = actual[i] - mean_actual;
    ss_tot += d * d;
  }

  MetricsReport r;
  r.n = n;
  r.mse = sse / static_cast<double>(n);
  r.mae = sae / static_cast<double>(n);
  r.rmse = std::sqrt(r.mse);
  if (ss_tot == 0.0) {
    r.r2_defined = false;
    r.r2 = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.r2 = 1.0 - sse / ss_tot;
  }
  return r;
}

std::string to_csv_row(std::string_view kernel_name, const MetricsReport& report) {
  std::string row(kernel_name);
  row += ',';
  row += csv::format_double(report.mse);
  row += ',';
  row += csv::format_double(report.mae);
  row += ',';
  row += csv::format_double(report.rmse);
  row += ',';
  row += report.r2_defined ? csv::format_double(report.r2) : "nan";
  row += ',';
  row += std::to_string(report.n);
  return row;
}

}  // namespace egp::metrics
