#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "egp/cli.hpp"
#include "egp/errors.hpp"

namespace {

struct FlagValues {
  std::string config, input, mapping, atc, freq, samples, format, out;
  double train_frac = 0, val_frac = 0, noise = 0, xi = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0, candidates = 0, horizon = 0;
  std::string simplex;
  bool optimize_weights = false;
};

// Shared flags on one subcommand. Values land in `v`; only flags the user
// actually passed are applied on top of the config file.
void add_shared_flags(CLI::App* cmd, FlagValues& v) {
  cmd->add_option("--config", v.config, "flat key=value config file");
  cmd->add_option("--input", v.input, "transactions or series CSV");
  cmd->add_option("--mapping", v.mapping, "brand,atc_code CSV");
  cmd->add_option("--atc", v.atc, "ATC category code (e.g. M01AB)");
  cmd->add_option("--freq", v.freq, "daily|weekly|monthly")
      ->check(CLI::IsMember({"daily", "weekly", "monthly"}));
  cmd->add_option("--samples", v.samples, "subsample size or 'all'");
  cmd->add_option("--train-frac", v.train_frac, "train fraction in (0,1)");
  cmd->add_option("--val-frac", v.val_frac, "validation fraction in (0,1)");
  cmd->add_option("--noise", v.noise, "observation noise variance");
  cmd->add_option("--seed", v.seed, "random seed");
  cmd->add_option("--out", v.out, "output directory");
  cmd->add_option("--format", v.format, "series|wide|transactions input layout")
      ->check(CLI::IsMember({"series", "wide", "transactions"}));
}

void add_bo_flags(CLI::App* cmd, FlagValues& v) {
  cmd->add_option("--iterations", v.iterations, "optimization iterations");
  cmd->add_option("--xi", v.xi, "EI exploration parameter");
  cmd->add_option("--candidates", v.candidates, "acquisition candidate count");
  cmd->add_option("--simplex", v.simplex, "constrain weights to the simplex (true|false)")
      ->check(CLI::IsMember({"true", "false"}));
}

egp::cli::RunConfig build_config(const CLI::App* cmd, const FlagValues& v) {
  // True only when the option exists on this subcommand and was passed.
  const auto passed = [&](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  egp::cli::RunConfig cfg;
  if (passed("--config")) egp::cli::apply_config_file(cfg, v.config);

  if (passed("--input")) cfg.input_path = v.input;
  if (passed("--mapping")) cfg.mapping_path = v.mapping;
  if (passed("--atc")) cfg.atc_code = v.atc;
  if (passed("--freq")) cfg.frequency = egp::data::parse_frequency(v.freq);
  if (passed("--samples")) {
    if (v.samples == "all") {
      cfg.sample_count = egp::data::kSampleAll;
    } else {
      try {
        std::size_t pos = 0;
        cfg.sample_count = std::stoull(v.samples, &pos);
        if (pos != v.samples.size()) throw std::invalid_argument(v.samples);
      } catch (const std::exception&) {
        throw egp::ConfigError("--samples expects a count or 'all', got '" + v.samples + "'");
      }
    }
  }
  if (passed("--train-frac")) cfg.train_fraction = v.train_frac;
  if (passed("--val-frac")) cfg.validation_fraction = v.val_frac;
  if (passed("--noise")) cfg.noise_variance = v.noise;
  if (passed("--seed")) cfg.seed = v.seed;
  if (passed("--out")) cfg.out_dir = v.out;
  if (passed("--format")) cfg.format = egp::cli::parse_input_format(v.format);
  if (passed("--iterations")) cfg.iterations = v.iterations;
  if (passed("--xi")) cfg.xi = v.xi;
  if (passed("--candidates")) cfg.candidate_count = v.candidates;
  if (passed("--simplex")) cfg.simplex = v.simplex == "true";
  if (passed("--horizon")) cfg.horizon = v.horizon;
  if (passed("--optimize-weights")) cfg.optimize_weights = true;
  egp::cli::finalize_kernels(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian process regression with an ensemble kernel for sales time series"};
  app.require_subcommand(1);

  FlagValues ingest_v, evaluate_v, optimize_v, forecast_v;

  CLI::App* ingest = app.add_subcommand(
      "ingest", "aggregate transactions into per-category series files");
  add_shared_flags(ingest, ingest_v);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "fit each kernel plus the ensemble and write the metrics table");
  add_shared_flags(evaluate, evaluate_v);
  add_bo_flags(evaluate, evaluate_v);
  evaluate->add_flag("--optimize-weights", evaluate_v.optimize_weights,
                     "tune ensemble weights before evaluating");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "learn ensemble kernel weights by Bayesian optimization");
  add_shared_flags(optimize, optimize_v);
  add_bo_flags(optimize, optimize_v);

  CLI::App* forecast = app.add_subcommand("forecast", "predict future periods with a 2-sigma band");
  add_shared_flags(forecast, forecast_v);
  add_bo_flags(forecast, forecast_v);
  forecast->add_option("--horizon", forecast_v.horizon, "periods to forecast")->required();
  forecast->add_flag("--optimize-weights", forecast_v.optimize_weights,
                     "tune ensemble weights before forecasting");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return egp::cli::cmd_ingest(build_config(ingest, ingest_v));
    if (evaluate->parsed()) return egp::cli::cmd_evaluate(build_config(evaluate, evaluate_v));
    if (optimize->parsed()) return egp::cli::cmd_optimize(build_config(optimize, optimize_v));
    if (forecast->parsed()) return egp::cli::cmd_forecast(build_config(forecast, forecast_v));
  } catch (const egp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
