#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "egp/errors.hpp"
#include "egp/points.hpp"

namespace egp::data {

enum class Frequency { Daily, Weekly, Monthly };

Frequency parse_frequency(std::string_view s);
std::string_view to_string(Frequency f);

// Start day of the period containing `day`, and the start of the next period.
std::int64_t period_start(std::int64_t day, Frequency f);
std::int64_t next_period_start(std::int64_t start, Frequency f);

struct TransactionRecord {
  std::int64_t day = 0;  // civil day number of the sale date
  std::string time;      // optional, kept verbatim
  std::string brand;
  double quantity = 0.0;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based line number in the source stream
  std::string reason;
};

struct ColumnMap {
  std::string date = "date";
  std::string time = "time";  // looked up but not required
  std::string brand = "brand";
  std::string quantity = "quantity";
};

struct IngestResult {
  std::vector<TransactionRecord> records;
  std::vector<RejectedRow> rejects;
};

// Parses a transactions CSV with a header row. Malformed rows land in the
// rejects report with their line number; they are never silently dropped.
IngestResult ingest_transactions(std::istream& in, const ColumnMap& columns = {});

// Brand -> ATC category code lookup, loaded from a two-column CSV.
class AtcMapping {
 public:
  static AtcMapping from_csv(std::istream& in);
  static bool is_known_code(std::string_view code);

  const std::string* lookup(const std::string& brand) const;
  std::size_t size() const { return map_.size(); }
  void insert(std::string brand, std::string code);

 private:
  std::map<std::string, std::string> map_;
};

struct AnnotatedRecord {
  TransactionRecord record;
  std::string atc_code;
};

struct MappedResult {
  std::vector<AnnotatedRecord> records;
  std::map<std::string, std::size_t> unmapped;  // brand -> occurrence count
};

MappedResult map_to_categories(const std::vector<TransactionRecord>& records,
                               const AtcMapping& mapping);

struct SeriesPoint {
  std::int64_t day = 0;  // period start
  double quantity = 0.0;
};

// Gap-free aggregated series for one category: strictly increasing period
// starts, missing periods filled with zero.
struct CategorySeries {
  std::string atc_code;
  Frequency frequency = Frequency::Weekly;
  std::vector<SeriesPoint> points;
};

CategorySeries aggregate(const std::vector<AnnotatedRecord>& records, std::string_view atc_code,
                         Frequency frequency);

// Affine transforms tying model space (standardized targets, [0,1]-scaled
// inputs) back to original units. Computed from the train segment only.
struct Standardization {
  double target_mean = 0.0;
  double target_sd = 1.0;
  double input_origin = 0.0;
  double input_span = 1.0;

  double standardize_target(double y) const { return (y - target_mean) / target_sd; }
  double unstandardize_mean(double m) const { return m * target_sd + target_mean; }
  double unstandardize_sd(double sd) const { return sd * target_sd; }
  double scale_input(double day) const { return (day - input_origin) / input_span; }
};

struct PreparedSplit {
  Points train_inputs;
  std::vector<double> train_targets;
  Points validation_inputs;
  std::vector<double> validation_targets;
  Points test_inputs;
  std::vector<double> test_targets;
  Standardization standardization;
};

inline constexpr std::size_t kSampleAll = std::numeric_limits<std::size_t>::max();

// Optional seeded subsample (re-sorted chronologically), then a chronological
// train/validation/test split by fractions. Standardization uses train only.
PreparedSplit prepare_split(const CategorySeries& series, std::size_t sample_count,
                            double train_fraction, double validation_fraction,
                            std::uint64_t seed);

// Whole series standardized as one training segment; used for forecasting.
struct PreparedSeries {
  Points inputs;
  std::vector<double> targets;
  Standardization standardization;
};

PreparedSeries prepare_series(const CategorySeries& series);

// Long layout: timestamp,quantity with ISO dates.
void write_series_csv(const CategorySeries& series, std::ostream& out);
CategorySeries read_series_csv(std::istream& in, std::string atc_code, Frequency frequency);

// Wide layout: first column is the date, one column per ATC code.
CategorySeries read_wide_series_csv(std::istream& in, const std::string& atc_code,
                                    Frequency frequency);

}  // namespace egp::data
