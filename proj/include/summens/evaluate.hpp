#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "summens/data.hpp"
#include "summens/ensemble_spec.hpp"
#include "summens/oracle.hpp"
#include "summens/rouge.hpp"

namespace summens {

// The nine reported metrics: {R1, R2, RL} x {F1, Precision, Recall}.
inline constexpr int kNumMetrics = 9;
const std::array<std::string, kNumMetrics>& metric_names();
RougeVariant metric_variant(int metric);
RougeField metric_field(int metric);

// Anything that turns a record into a summary text. The callable must be
// pure so records can be processed in parallel.
struct SystemUnderTest {
  std::string name;
  std::function<std::string(const NoteRecord&)> run;
};

SystemUnderTest spec_system(std::string name, EnsembleSpec spec, const ModelRegistry& registry,
                            FieldSpec fields, DecodeParams params, std::uint64_t seed);

enum class OracleMode { kAllOverlap, kGreedyBest };
SystemUnderTest oracle_system(std::string name, OracleMode mode);

// One table row: per-metric mean and population standard deviation over
// records, scores scaled x100. Per-record scores are retained for
// significance-style comparisons.
struct SystemReport {
  std::string name;
  std::array<double, kNumMetrics> mean{};
  std::array<double, kNumMetrics> stddev{};
  std::vector<std::array<double, kNumMetrics>> per_record;
  std::vector<std::string> outputs;  // one summary per record, record order

  nlohmann::json to_json() const;
  static SystemReport from_json(const nlohmann::json& j);
};

// Scores every record's output against its reference with all nine
// metrics. Requires every record to carry a summary. Worker count only
// distributes records; the report is identical at any worker count.
SystemReport evaluate_system(const SystemUnderTest& system, std::span<const NoteRecord> records,
                             int workers = 1);

// Builds a report from precomputed per-record score rows (already x100),
// e.g. when pooling held-out folds.
SystemReport report_from_rows(std::string name,
                              std::vector<std::array<double, kNumMetrics>> per_record,
                              std::vector<std::string> outputs);

// Mean and population std across member means, the aggregation used for
// "Individual" rows (per-record vectors are not carried over).
SystemReport aggregate_individual(std::string name, std::span<const SystemReport> members);

// Aligned plain-text table, one row per system, mean+-std cells.
std::string render_table(std::span<const SystemReport> reports);

// Machine-readable form: one object per system x metric.
nlohmann::json report_json(std::span<const SystemReport> reports);

}  // namespace summens
