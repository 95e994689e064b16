#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace egp::metrics {

// MSE/MAE/RMSE use population (1/n) normalization. r2_defined is false when
// the actuals are constant (SS_tot == 0); r2 is then not meaningful.
struct MetricsReport {
  double mse = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  bool r2_defined = true;
  std::size_t n = 0;
};

MetricsReport compute_metrics(std::span<const double> actual, std::span<const double> predicted);

inline constexpr std::string_view kCsvHeader = "kernel_name,mse,mae,rmse,r2,n";

// One row in kCsvHeader order; undefined r2 is written as nan.
std::string to_csv_row(std::string_view kernel_name, const MetricsReport& report);

}  // namespace egp::metrics
