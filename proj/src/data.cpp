#include "egp/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include "egp/csv.hpp"
#include "egp/dates.hpp"
#include "egp/random.hpp"

namespace egp::data {

namespace {

constexpr std::array<std::string_view, 8> kAtcCodes = {
    "M01AB", "M01AE", "N02BA", "N02BE/B", "N05B", "N05C", "R03", "R06"};

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

// Column index by exact (trimmed) name.
std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (csv::trim(header[i]) == name) return i;
  return std::nullopt;
}

// Reads the next nonblank line, tracking 1-based line numbers.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) return true;
  }
  return false;
}

CategorySeries series_from_bucket_sums(std::string atc_code, Frequency f,
                                       const std::map<std::int64_t, double>& sums) {
  CategorySeries s;
  s.atc_code = std::move(atc_code);
  s.frequency = f;
  const std::int64_t first = sums.begin()->first;
  const std::int64_t last = sums.rbegin()->first;
  for (std::int64_t p = first; p <= last; p = next_period_start(p, f)) {
    const auto it = sums.find(p);
    s.points.push_back({p, it == sums.end() ? 0.0 : it->second});
  }
  return s;
}

CategorySeries read_two_column_series(std::istream& in, std::string atc_code, Frequency f,
                                      std::size_t date_col, std::size_t value_col,
                                      std::size_t line_no) {
  std::map<std::int64_t, double> sums;
  std::string line;
  while (next_line(in, line, line_no)) {
    const auto fields = csv::split_record(line);
    if (fields.size() <= std::max(date_col, value_col))
      throw UnparseableStream("series csv line " + std::to_string(line_no) + ": too few columns");
    const auto day = dates::parse_date(csv::trim(fields[date_col]));
    if (!day)
      throw UnparseableStream("series csv line " + std::to_string(line_no) + ": bad date '" +
                              csv::trim(fields[date_col]) + "'");
    const auto value = parse_double(csv::trim(fields[value_col]));
    if (!value)
      throw UnparseableStream("series csv line " + std::to_string(line_no) + ": bad quantity '" +
                              csv::trim(fields[value_col]) + "'");
    sums[period_start(*day, f)] += *value;
  }
  if (sums.empty()) throw EmptyInput("series csv has no data rows");
  return series_from_bucket_sums(std::move(atc_code), f, sums);
}

}  // namespace

Frequency parse_frequency(std::string_view s) {
  if (s == "daily") return Frequency::Daily;
  if (s == "weekly") return Frequency::Weekly;
  if (s == "monthly") return Frequency::Monthly;
  throw ConfigError("unknown frequency '" + std::string(s) + "' (expected daily|weekly|monthly)");
}

std::string_view to_string(Frequency f) {
  switch (f) {
    case Frequency::Daily: return "daily";
    case Frequency::Weekly: return "weekly";
    case Frequency::Monthly: return "monthly";
  }
  return "weekly";
}

std::int64_t period_start(std::int64_t day, Frequency f) {
  switch (f) {
    case Frequency::Daily:
      return day;
    case Frequency::Weekly:
      return day - dates::weekday_monday0(day);
    case Frequency::Monthly: {
      const dates::CivilDate c = dates::civil_from_days(day);
      return dates::days_from_civil(c.year, c.month, 1);
    }
  }
  return day;
}

std::int64_t next_period_start(std::int64_t start, Frequency f) {
  switch (f) {
    case Frequency::Daily:
      return start + 1;
    case Frequency::Weekly:
      return start + 7;
    case Frequency::Monthly: {
      const dates::CivilDate c = dates::civil_from_days(start);
      return c.month == 12 ? dates::days_from_civil(c.year + 1, 1, 1)
                           : dates::days_from_civil(c.year, c.month + 1, 1);
    }
  }
  return start + 1;
}

IngestResult ingest_transactions(std::istream& in, const ColumnMap& columns) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw EmptyInput("transactions stream is empty");
  const auto header = csv::split_record(line);

  const auto date_col = find_column(header, columns.date);
  const auto brand_col = find_column(header, columns.brand);
  const auto qty_col = find_column(header, columns.quantity);
  const auto time_col = find_column(header, columns.time);
  if (!date_col) throw MissingColumn("transactions csv has no column '" + columns.date + "'");
  if (!brand_col) throw MissingColumn("transactions csv has no column '" + columns.brand + "'");
  if (!qty_col) throw MissingColumn("transactions csv has no column '" + columns.quantity + "'");

  IngestResult out;
  while (next_line(in, line, line_no)) {
    const auto fields = csv::split_record(line);
    if (fields.size() != header.size()) {
      out.rejects.push_back({line_no, "expected " + std::to_string(header.size()) +
                                          " columns, got " + std::to_string(fields.size())});
      continue;
    }
    const auto day = dates::parse_date(csv::trim(fields[*date_col]));
    if (!day) {
      out.rejects.push_back({line_no, "unparseable date '" + csv::trim(fields[*date_col]) + "'"});
      continue;
    }
    const std::string brand = csv::trim(fields[*brand_col]);
    if (brand.empty()) {
      out.rejects.push_back({line_no, "empty brand"});
      continue;
    }
    const auto qty = parse_double(csv::trim(fields[*qty_col]));
    if (!qty) {
      out.rejects.push_back(
          {line_no, "unparseable quantity '" + csv::trim(fields[*qty_col]) + "'"});
      continue;
    }
    if (*qty < 0.0) {
      out.rejects.push_back({line_no, "negative quantity"});
      continue;
    }
    TransactionRecord rec;
    rec.day = *day;
    rec.brand = brand;
    rec.quantity = *qty;
    if (time_col && *time_col < fields.size()) rec.time = csv::trim(fields[*time_col]);
    out.records.push_back(std::move(rec));
  }
  if (in.bad()) throw UnparseableStream("transactions stream failed mid-read");
  return out;
}

bool AtcMapping::is_known_code(std::string_view code) {
  return std::find(kAtcCodes.begin(), kAtcCodes.end(), code) != kAtcCodes.end();
}

void AtcMapping::insert(std::string brand, std::string code) {
  if (!is_known_code(code))
    throw ConfigError("atc mapping: unknown category code '" + code + "'");
  map_[std::move(brand)] = std::move(code);
}

AtcMapping AtcMapping::from_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw EmptyInput("atc mapping stream is empty");
  const auto header = csv::split_record(line);
  const auto brand_col = find_column(header, "brand");
  const auto code_col = find_column(header, "atc_code");
  if (!brand_col || !code_col)
    throw MissingColumn("atc mapping csv must have columns brand,atc_code");

  AtcMapping m;
  while (next_line(in, line, line_no)) {
    const auto fields = csv::split_record(line);
    if (fields.size() <= std::max(*brand_col, *code_col))
      throw UnparseableStream("atc mapping line " + std::to_string(line_no) + ": too few columns");
    m.insert(csv::trim(fields[*brand_col]), csv::trim(fields[*code_col]));
  }
  return m;
}

const std::string* AtcMapping::lookup(const std::string& brand) const {
  const auto it = map_.find(brand);
  return it == map_.end() ? nullptr : &it->second;
}

MappedResult map_to_categories(const std::vector<TransactionRecord>& records,
                               const AtcMapping& mapping) {
  MappedResult out;
  out.records.reserve(records.size());
  for (const auto& r : records) {
    if (const std::string* code = mapping.lookup(r.brand))
      out.records.push_back({r, *code});
    else
      ++out.unmapped[r.brand];
  }
  return out;
}

CategorySeries aggregate(const std::vector<AnnotatedRecord>& records, std::string_view atc_code,
                         Frequency frequency) {
  std::map<std::int64_t, double> sums;
  for (const auto& r : records)
    if (r.atc_code == atc_code) sums[period_start(r.record.day, frequency)] += r.record.quantity;
  if (sums.empty())
    throw NoRecordsForCategory("no records for category '" + std::string(atc_code) + "'");
  return series_from_bucket_sums(std::string(atc_code), frequency, sums);
}

PreparedSplit prepare_split(const CategorySeries& series, std::size_t sample_count,
                            double train_fraction, double validation_fraction,
                            std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0) ||
      !(validation_fraction > 0.0 && validation_fraction < 1.0) ||
      !(train_fraction + validation_fraction < 1.0))
    throw Error("prepare_split: fractions must lie in (0,1) and sum below 1");

  const std::size_t n = series.points.size();
  const std::size_t k = sample_count == kSampleAll ? n : sample_count;
  if (k < 1 || k > n)
    throw Error("prepare_split: sample_count must be in [1, series length]");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (k < n) {
    // Partial Fisher-Yates: the first k entries are a uniform subset.
    std::mt19937_64 rng = seeded_rng(seed, /*stream=*/1);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
  }
  if (k < 3) throw SeriesTooShort("prepare_split: fewer than 3 points after sampling");

  const std::size_t n_train = static_cast<std::size_t>(std::floor(static_cast<double>(k) * train_fraction));
  const std::size_t n_val = static_cast<std::size_t>(std::floor(static_cast<double>(k) * validation_fraction));
  const std::size_t n_test = k - n_train - n_val;
  if (n_train < 1 || n_val < 1 || n_test < 1)
    throw SeriesTooShort("prepare_split: a split segment would be empty");

  // Standardization parameters come from the train segment only.
  double mean = 0.0;
  for (std::size_t i = 0; i < n_train; ++i) mean += series.points[idx[i]].quantity;
  mean /= static_cast<double>(n_train);
  double var = 0.0;
  for (std::size_t i = 0; i < n_train; ++i) {
    const double d = series.points[idx[i]].quantity - mean;
    var += d * d;
  }
  var /= static_cast<double>(n_train);
  double sd = std::sqrt(var);
  if (sd < 1e-12) sd = 1.0;  // constant train targets: shift only

  const double origin = static_cast<double>(series.points[idx[0]].day);
  double span = static_cast<double>(series.points[idx[n_train - 1]].day) - origin;
  if (span <= 0.0) span = 1.0;

  PreparedSplit out;
  out.standardization = Standardization{mean, sd, origin, span};

  const auto emit = [&](std::size_t from, std::size_t to, Points& inputs,
                        std::vector<double>& targets) {
    inputs.dim = 1;
    for (std::size_t i = from; i < to; ++i) {
      const SeriesPoint& p = series.points[idx[i]];
      inputs.data.push_back(out.standardization.scale_input(static_cast<double>(p.day)));
      targets.push_back(out.standardization.standardize_target(p.quantity));
    }
  };
  emit(0, n_train, out.train_inputs, out.train_targets);
  emit(n_train, n_train + n_val, out.validation_inputs, out.validation_targets);
  emit(n_train + n_val, k, out.test_inputs, out.test_targets);
  return out;
}

PreparedSeries prepare_series(const CategorySeries& series) {
  const std::size_t n = series.points.size();
  if (n == 0) throw EmptyInput("prepare_series: empty series");

  double mean = 0.0;
  for (const auto& p : series.points) mean += p.quantity;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const auto& p : series.points) {
    const double d = p.quantity - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  double sd = std::sqrt(var);
  if (sd < 1e-12) sd = 1.0;

  const double origin = static_cast<double>(series.points.front().day);
  double span = static_cast<double>(series.points.back().day) - origin;
  if (span <= 0.0) span = 1.0;

  PreparedSeries out;
  out.standardization = Standardization{mean, sd, origin, span};
  out.inputs.dim = 1;
  for (const auto& p : series.points) {
    out.inputs.data.push_back(out.standardization.scale_input(static_cast<double>(p.day)));
    out.targets.push_back(out.standardization.standardize_target(p.quantity));
  }
  return out;
}

void write_series_csv(const CategorySeries& series, std::ostream& out) {
  out << "timestamp,quantity\n";
  for (const auto& p : series.points)
    out << dates::format_iso(p.day) << ',' << csv::format_double(p.quantity) << '\n';
}

CategorySeries read_series_csv(std::istream& in, std::string atc_code, Frequency frequency) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw EmptyInput("series csv is empty");
  const auto header = csv::split_record(line);
  const auto date_col = find_column(header, "timestamp");
  const auto value_col = find_column(header, "quantity");
  if (!date_col || !value_col)
    throw MissingColumn("series csv must have columns timestamp,quantity");
  return read_two_column_series(in, std::move(atc_code), frequency, *date_col, *value_col,
                                line_no);
}

CategorySeries read_wide_series_csv(std::istream& in, const std::string& atc_code,
                                    Frequency frequency) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw EmptyInput("series csv is empty");
  const auto header = csv::split_record(line);
  if (header.empty()) throw UnparseableStream("wide series csv: empty header");
  const auto value_col = find_column(header, atc_code);
  if (!value_col)
    throw MissingColumn("wide series csv has no column '" + atc_code + "'");
  return read_two_column_series(in, atc_code, frequency, 0, *value_col, line_no);
}

}  // namespace egp::data
