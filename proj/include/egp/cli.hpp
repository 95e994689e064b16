#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "egp/bayesopt.hpp"
#include "egp/data.hpp"
#include "egp/kernels.hpp"

namespace egp::cli {

enum class InputFormat { Series, Wide, Transactions };

InputFormat parse_input_format(std::string_view s);

// Everything a command needs, assembled from defaults, the config file and
// command-line flags (flags win).
struct RunConfig {
  std::string input_path;
  std::string mapping_path;
  std::string atc_code;
  std::string out_dir = "out";
  InputFormat format = InputFormat::Series;
  data::ColumnMap columns;  // transaction CSV column names
  data::Frequency frequency = data::Frequency::Weekly;
  std::size_t sample_count = data::kSampleAll;
  double train_fraction = 0.6;
  double validation_fraction = 0.2;
  double noise_variance = 1e-6;
  std::uint64_t seed = 1;

  std::size_t iterations = 25;
  double xi = 0.01;
  std::size_t candidate_count = 2048;
  bool simplex = true;
  bayesopt::ScoreKind score = bayesopt::ScoreKind::NegRmse;
  bool optimize_weights = false;

  std::size_t horizon = 0;

  // Base kernels with their ensemble weights; defaults to ES, Matern(1.5), RQ
  // with unit hyperparameters and equal weights when the config names none.
  std::vector<kernels::BaseKernel> base_kernels;
  std::vector<double> weights;
};

// Flat `key = value` file, # comments. Kernels use dotted keys:
// kernel.<i>.kind|variance|lengthscale|nu|beta|weight.
void apply_config_file(RunConfig& config, std::istream& in);
void apply_config_file(RunConfig& config, const std::string& path);

// Fills in the default kernel trio when the config named none.
void finalize_kernels(RunConfig& config);

std::string sanitize_filename(std::string_view name);

// Subcommand bodies. They throw egp::Error subclasses on fatal problems; the
// binary maps those to exit status 2.
int cmd_ingest(const RunConfig& config);
int cmd_evaluate(const RunConfig& config);
int cmd_optimize(const RunConfig& config);
int cmd_forecast(const RunConfig& config);

// Shared source resolution: transactions + mapping -> pipeline, otherwise a
// series file in the configured layout.
data::CategorySeries resolve_series(const RunConfig& config);

}  // namespace egp::cli
