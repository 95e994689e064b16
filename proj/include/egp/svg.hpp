#pragma once

#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace egp::svg {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

// Actuals as dots, posterior mean as a line, [lower, upper] as a shaded band.
// Self-contained SVG, no external renderer needed.
void write_forecast_plot(std::ostream& out, std::string_view title, const Series& actual,
                         const Series& mean, const Series& lower, const Series& upper);

// Best-so-far score per iteration as a step-like line.
void write_convergence_plot(std::ostream& out, std::string_view title,
                            std::span<const double> best_so_far);

}  // namespace egp::svg
