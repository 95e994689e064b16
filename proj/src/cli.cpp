#include "egp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "egp/csv.hpp"
#include "egp/dates.hpp"
#include "egp/gp.hpp"
#include "egp/metrics.hpp"
#include "egp/svg.hpp"

namespace egp::cli {

namespace fs = std::filesystem;

namespace {

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
  return v;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + value + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: '" + key + "' expects true|false, got '" + value + "'");
}

struct KernelEntry {
  std::string kind;
  double variance = 1.0;
  double lengthscale = 1.0;
  double nu = 1.5;
  double beta = 1.0;
  double weight = 1.0;
};

kernels::BaseKernel build_kernel(const KernelEntry& e) {
  if (e.kind == "es") return kernels::SquaredExponential{e.variance, e.lengthscale};
  if (e.kind == "matern") return kernels::Matern{e.variance, e.lengthscale, e.nu};
  if (e.kind == "rq") return kernels::RationalQuadratic{e.variance, e.lengthscale, e.beta};
  throw ConfigError("config: kernel kind must be es|matern|rq, got '" + e.kind + "'");
}

std::ifstream open_input(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string(what) + " file not found or unreadable: " + path);
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write output file: " + path.string());
  return out;
}

// Test-segment metrics for a train-fitted model, in original units.
metrics::MetricsReport test_metrics(const gp::GPModel& model, const data::PreparedSplit& split) {
  const auto preds = gp::predict(model, split.test_inputs);
  std::vector<double> actual(split.test_targets.size());
  std::vector<double> predicted(preds.size());
  const auto& st = split.standardization;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    actual[i] = st.unstandardize_mean(split.test_targets[i]);
    predicted[i] = st.unstandardize_mean(preds[i].mean);
  }
  return metrics::compute_metrics(actual, predicted);
}

// Fit plot over the whole observed range, in original units.
void write_fit_plot(const fs::path& path, const std::string& title, const gp::GPModel& model,
                    const data::CategorySeries& series, const data::PreparedSplit& split) {
  const auto& st = split.standardization;
  Points all_inputs;
  all_inputs.dim = 1;
  svg::Series actual;
  for (const auto& p : series.points) {
    all_inputs.data.push_back(st.scale_input(static_cast<double>(p.day)));
    actual.x.push_back(static_cast<double>(p.day));
    actual.y.push_back(p.quantity);
  }
  const auto preds = gp::predict(model, all_inputs);

  svg::Series mean, lower, upper;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double x = static_cast<double>(series.points[i].day);
    const double mu = st.unstandardize_mean(preds[i].mean);
    const double sd = st.unstandardize_sd(std::sqrt(preds[i].variance));
    mean.x.push_back(x);
    mean.y.push_back(mu);
    lower.x.push_back(x);
    lower.y.push_back(mu - 2.0 * sd);
    upper.x.push_back(x);
    upper.y.push_back(mu + 2.0 * sd);
  }
  auto out = open_output(path);
  svg::write_forecast_plot(out, title, actual, mean, lower, upper);
}

std::vector<double> resolve_weights(const RunConfig& cfg, const data::PreparedSplit& split) {
  if (!cfg.optimize_weights) {
    if (!cfg.simplex) return cfg.weights;
    kernels::Ensemble ens;
    for (std::size_t i = 0; i < cfg.base_kernels.size(); ++i)
      ens.components.push_back({cfg.weights[i], cfg.base_kernels[i]});
    const kernels::Ensemble normalized = kernels::normalize_weights(ens);
    std::vector<double> w(normalized.components.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = normalized.components[i].weight;
    return w;
  }
  const auto space = cfg.simplex ? bayesopt::SearchSpace::simplex(cfg.base_kernels.size())
                                 : bayesopt::SearchSpace::box(cfg.base_kernels.size());
  const auto result = bayesopt::optimize_kernel_weights(
      split, cfg.base_kernels, space, cfg.iterations, cfg.seed, cfg.noise_variance,
      bayesopt::AcquisitionConfig{cfg.xi, cfg.candidate_count}, cfg.score);
  return result.best_weights;
}

}  // namespace

InputFormat parse_input_format(std::string_view s) {
  if (s == "series") return InputFormat::Series;
  if (s == "wide") return InputFormat::Wide;
  if (s == "transactions") return InputFormat::Transactions;
  throw ConfigError("unknown input format '" + std::string(s) +
                    "' (expected series|wide|transactions)");
}

void apply_config_file(RunConfig& config, std::istream& in) {
  std::map<int, KernelEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string trimmed = csv::trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = csv::trim(trimmed.substr(0, eq));
    const std::string value = csv::trim(trimmed.substr(eq + 1));

    if (key.starts_with("kernel.")) {
      const auto second = key.find('.', 7);
      if (second == std::string::npos)
        throw ConfigError("config: kernel keys look like kernel.<i>.<field>: " + key);
      int index = 0;
      const std::string num = key.substr(7, second - 7);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), index);
      if (ec != std::errc{} || ptr != num.data() + num.size())
        throw ConfigError("config: bad kernel index in '" + key + "'");
      const std::string field = key.substr(second + 1);
      KernelEntry& e = entries[index];
      if (field == "kind") e.kind = value;
      else if (field == "variance") e.variance = to_double(key, value);
      else if (field == "lengthscale") e.lengthscale = to_double(key, value);
      else if (field == "nu") e.nu = to_double(key, value);
      else if (field == "beta") e.beta = to_double(key, value);
      else if (field == "weight") e.weight = to_double(key, value);
      else throw ConfigError("config: unknown kernel field '" + field + "'");
      continue;
    }

    if (key == "input") config.input_path = value;
    else if (key == "mapping") config.mapping_path = value;
    else if (key == "atc") config.atc_code = value;
    else if (key == "out") config.out_dir = value;
    else if (key == "col_date") config.columns.date = value;
    else if (key == "col_time") config.columns.time = value;
    else if (key == "col_brand") config.columns.brand = value;
    else if (key == "col_quantity") config.columns.quantity = value;
    else if (key == "format") config.format = parse_input_format(value);
    else if (key == "freq") config.frequency = data::parse_frequency(value);
    else if (key == "samples")
      config.sample_count = value == "all" ? data::kSampleAll
                                           : static_cast<std::size_t>(to_count(key, value));
    else if (key == "train_frac") config.train_fraction = to_double(key, value);
    else if (key == "val_frac") config.validation_fraction = to_double(key, value);
    else if (key == "noise") config.noise_variance = to_double(key, value);
    else if (key == "seed") config.seed = to_count(key, value);
    else if (key == "iterations") config.iterations = static_cast<std::size_t>(to_count(key, value));
    else if (key == "xi") config.xi = to_double(key, value);
    else if (key == "candidates") config.candidate_count = static_cast<std::size_t>(to_count(key, value));
    else if (key == "simplex") config.simplex = to_bool(key, value);
    else if (key == "optimize_weights") config.optimize_weights = to_bool(key, value);
    else if (key == "horizon") config.horizon = static_cast<std::size_t>(to_count(key, value));
    else if (key == "score") {
      if (value == "rmse") config.score = bayesopt::ScoreKind::NegRmse;
      else if (value == "lml") config.score = bayesopt::ScoreKind::LogMarginalLikelihood;
      else throw ConfigError("config: score must be rmse|lml, got '" + value + "'");
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  if (!entries.empty()) {
    config.base_kernels.clear();
    config.weights.clear();
    for (const auto& [index, entry] : entries) {
      if (entry.kind.empty())
        throw ConfigError("config: kernel." + std::to_string(index) + " has no kind");
      config.base_kernels.push_back(build_kernel(entry));
      config.weights.push_back(entry.weight);
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  auto in = open_input(path, "config");
  apply_config_file(config, in);
}

void finalize_kernels(RunConfig& config) {
  if (config.base_kernels.empty()) {
    config.base_kernels = {kernels::SquaredExponential{}, kernels::Matern{},
                           kernels::RationalQuadratic{}};
    config.weights = {1.0, 1.0, 1.0};
  }
  for (const auto& k : config.base_kernels) kernels::validate(kernels::to_spec(k));
  for (double w : config.weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("config: kernel weights must be non-negative");
}

std::string sanitize_filename(std::string_view name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
               ? c
               : '-';
  return out;
}

data::CategorySeries resolve_series(const RunConfig& config) {
  if (config.input_path.empty()) throw ConfigError("no input file configured (--input)");
  if (!config.mapping_path.empty() && config.mapping_path == config.input_path)
    throw ConfigError("input and mapping must be distinct files");
  auto in = open_input(config.input_path, "input");

  if (!config.mapping_path.empty() || config.format == InputFormat::Transactions) {
    if (config.mapping_path.empty())
      throw ConfigError("transactions input needs an atc mapping (--mapping)");
    if (config.atc_code.empty()) throw ConfigError("transactions input needs a category (--atc)");
    auto map_in = open_input(config.mapping_path, "mapping");
    const data::AtcMapping mapping = data::AtcMapping::from_csv(map_in);
    const data::IngestResult ingested = data::ingest_transactions(in, config.columns);
    const data::MappedResult mapped = data::map_to_categories(ingested.records, mapping);
    return data::aggregate(mapped.records, config.atc_code, config.frequency);
  }
  if (config.format == InputFormat::Wide) {
    if (config.atc_code.empty()) throw ConfigError("wide series input needs a category (--atc)");
    return data::read_wide_series_csv(in, config.atc_code, config.frequency);
  }
  return data::read_series_csv(in, config.atc_code.empty() ? "series" : config.atc_code,
                               config.frequency);
}

int cmd_ingest(const RunConfig& config) {
  if (config.input_path.empty()) throw ConfigError("ingest needs --input");
  if (config.mapping_path.empty()) throw ConfigError("ingest needs --mapping");
  if (config.mapping_path == config.input_path)
    throw ConfigError("input and mapping must be distinct files");

  auto map_in = open_input(config.mapping_path, "mapping");
  const data::AtcMapping mapping = data::AtcMapping::from_csv(map_in);
  auto in = open_input(config.input_path, "input");
  const data::IngestResult ingested = data::ingest_transactions(in, config.columns);
  const data::MappedResult mapped = data::map_to_categories(ingested.records, mapping);

  fs::create_directories(config.out_dir);

  std::vector<std::string> codes;
  for (const auto& r : mapped.records)
    if (std::find(codes.begin(), codes.end(), r.atc_code) == codes.end())
      codes.push_back(r.atc_code);
  std::sort(codes.begin(), codes.end());

  for (const auto& code : codes) {
    const data::CategorySeries series = data::aggregate(mapped.records, code, config.frequency);
    const fs::path path = fs::path(config.out_dir) / ("series_" + sanitize_filename(code) + ".csv");
    auto out = open_output(path);
    data::write_series_csv(series, out);
    double total = 0.0;
    for (const auto& p : series.points) total += p.quantity;
    std::cout << code << ": " << series.points.size() << " " << data::to_string(config.frequency)
              << " points, total quantity " << csv::format_double(total) << " -> " << path.string()
              << "\n";
  }

  {
    auto out = open_output(fs::path(config.out_dir) / "rejects.csv");
    out << "line,reason\n";
    for (const auto& r : ingested.rejects) out << r.line << ",\"" << r.reason << "\"\n";
  }
  {
    auto out = open_output(fs::path(config.out_dir) / "unmapped.csv");
    out << "brand,count\n";
    for (const auto& [brand, count] : mapped.unmapped) out << brand << ',' << count << '\n';
  }
  std::cout << "ingested " << ingested.records.size() << " records ("
            << ingested.rejects.size() << " rejected, " << mapped.unmapped.size()
            << " unmapped brands)\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config) {
  const data::CategorySeries series = resolve_series(config);
  const data::PreparedSplit split =
      data::prepare_split(series, config.sample_count, config.train_fraction,
                          config.validation_fraction, config.seed);
  fs::create_directories(config.out_dir);

  const std::vector<double> ensemble_weights = resolve_weights(config, split);

  struct Row {
    std::string name;
    bool ok = false;
    metrics::MetricsReport report;
  };
  std::vector<Row> rows;

  std::vector<kernels::KernelSpec> specs;
  for (const auto& k : config.base_kernels) specs.push_back(kernels::to_spec(k));
  {
    kernels::Ensemble ens;
    for (std::size_t i = 0; i < config.base_kernels.size(); ++i)
      ens.components.push_back({ensemble_weights[i], config.base_kernels[i]});
    specs.push_back(kernels::KernelSpec{std::move(ens)});
  }

  // Two kernels of the same kind get #2, #3 suffixes so rows and plot files
  // stay distinguishable.
  std::vector<std::string> names;
  std::map<std::string, std::size_t> seen;
  for (const auto& spec : specs) {
    std::string n = kernels::name(spec);
    if (const auto count = ++seen[n]; count > 1) n += "#" + std::to_string(count);
    names.push_back(std::move(n));
  }

  for (std::size_t si = 0; si < specs.size(); ++si) {
    Row row;
    row.name = names[si];
    try {
      const gp::GPModel model =
          gp::fit(specs[si], {split.train_inputs, split.train_targets}, config.noise_variance);
      row.report = test_metrics(model, split);
      row.ok = true;
      write_fit_plot(fs::path(config.out_dir) / ("fit_" + sanitize_filename(row.name) + ".svg"),
                     row.name + " fit (" + series.atc_code + ")", model, series, split);
    } catch (const Error& e) {
      // A kernel that cannot be fit becomes a failed row; the run continues.
      std::cerr << "kernel " << row.name << " failed: " << e.what() << "\n";
    }
    rows.push_back(std::move(row));
  }

  const fs::path table_path = fs::path(config.out_dir) / "metrics.csv";
  auto table = open_output(table_path);
  table << metrics::kCsvHeader << '\n';
  for (const auto& row : rows) {
    if (row.ok) {
      table << metrics::to_csv_row(row.name, row.report) << '\n';
    } else {
      table << row.name << ",nan,nan,nan,nan,0\n";
    }
  }

  std::cout << "weights:";
  for (double w : ensemble_weights) std::cout << ' ' << csv::format_double(w);
  std::cout << "\n" << metrics::kCsvHeader << "\n";
  for (const auto& row : rows)
    std::cout << (row.ok ? metrics::to_csv_row(row.name, row.report)
                         : row.name + ",nan,nan,nan,nan,0")
              << "\n";
  std::cout << "metrics table -> " << table_path.string() << "\n";
  return 0;
}

int cmd_optimize(const RunConfig& config) {
  if (config.base_kernels.size() < 2)
    throw ConfigError("optimize needs at least 2 base kernels");
  const data::CategorySeries series = resolve_series(config);
  const data::PreparedSplit split =
      data::prepare_split(series, config.sample_count, config.train_fraction,
                          config.validation_fraction, config.seed);
  fs::create_directories(config.out_dir);

  const auto space = config.simplex ? bayesopt::SearchSpace::simplex(config.base_kernels.size())
                                    : bayesopt::SearchSpace::box(config.base_kernels.size());
  const auto result = bayesopt::optimize_kernel_weights(
      split, config.base_kernels, space, config.iterations, config.seed, config.noise_variance,
      bayesopt::AcquisitionConfig{config.xi, config.candidate_count}, config.score);

  const fs::path history_path = fs::path(config.out_dir) / "bo_history.csv";
  {
    auto out = open_output(history_path);
    bayesopt::write_history_csv(result.state, out);
  }
  {
    std::vector<double> best_so_far;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : result.state.trials) {
      if (t.score > best) best = t.score;
      best_so_far.push_back(best);
    }
    auto out = open_output(fs::path(config.out_dir) / "bo_convergence.svg");
    svg::write_convergence_plot(out, "weight optimization convergence (" + series.atc_code + ")",
                                best_so_far);
  }

  std::cout << "best weights:";
  for (std::size_t i = 0; i < result.best_weights.size(); ++i)
    std::cout << ' ' << kernels::name(config.base_kernels[i]) << '='
              << csv::format_double(result.best_weights[i]);
  std::cout << "\nbest score: " << csv::format_double(result.best_score) << " ("
            << result.state.trials.size() << " trials)\n";
  std::cout << "history -> " << history_path.string() << "\n";
  return 0;
}

int cmd_forecast(const RunConfig& config) {
  if (config.horizon < 1) throw ConfigError("forecast needs --horizon >= 1");
  const data::CategorySeries series = resolve_series(config);
  fs::create_directories(config.out_dir);

  std::vector<double> weights = config.weights;
  if (config.optimize_weights) {
    const data::PreparedSplit split =
        data::prepare_split(series, config.sample_count, config.train_fraction,
                            config.validation_fraction, config.seed);
    weights = resolve_weights(config, split);
  } else if (config.simplex) {
    kernels::Ensemble ens;
    for (std::size_t i = 0; i < config.base_kernels.size(); ++i)
      ens.components.push_back({weights[i], config.base_kernels[i]});
    const auto normalized = kernels::normalize_weights(ens);
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = normalized.components[i].weight;
  }

  kernels::Ensemble ens;
  for (std::size_t i = 0; i < config.base_kernels.size(); ++i)
    ens.components.push_back({weights[i], config.base_kernels[i]});

  const data::PreparedSeries prepared = data::prepare_series(series);
  const gp::GPModel model = gp::fit(kernels::KernelSpec{ens}, {prepared.inputs, prepared.targets},
                                    config.noise_variance);

  Points future;
  future.dim = 1;
  std::vector<std::int64_t> future_days;
  std::int64_t day = series.points.back().day;
  for (std::size_t h = 0; h < config.horizon; ++h) {
    day = data::next_period_start(day, series.frequency);
    future_days.push_back(day);
    future.data.push_back(prepared.standardization.scale_input(static_cast<double>(day)));
  }
  const auto preds = gp::predict(model, future);

  const fs::path path = fs::path(config.out_dir) / "forecast.csv";
  auto out = open_output(path);
  out << "timestamp,mean,lower,upper\n";
  const auto& st = prepared.standardization;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double mu = st.unstandardize_mean(preds[i].mean);
    const double sd = st.unstandardize_sd(std::sqrt(preds[i].variance));
    out << dates::format_iso(future_days[i]) << ',' << csv::format_double(mu) << ','
        << csv::format_double(mu - 2.0 * sd) << ',' << csv::format_double(mu + 2.0 * sd) << '\n';
  }
  std::cout << "forecast (" << config.horizon << " " << data::to_string(series.frequency)
            << " periods) -> " << path.string() << "\n";
  return 0;
}

}  // namespace egp::cli
