#include "summens/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "summens/parallel.hpp"

namespace summens {

const std::array<std::string, kNumMetrics>& metric_names() {
  static const std::array<std::string, kNumMetrics> names = {
      "R1-F1", "R1-P", "R1-R", "R2-F1", "R2-P", "R2-R", "RL-F1", "RL-P", "RL-R"};
  return names;
}

RougeVariant metric_variant(int metric) {
  switch (metric / 3) {
    case 0:
      return RougeVariant::n(1);
    case 1:
      return RougeVariant::n(2);
    default:
      return RougeVariant::l();
  }
}

RougeField metric_field(int metric) {
  switch (metric % 3) {
    case 0:
      return RougeField::kF1;
    case 1:
      return RougeField::kPrecision;
    default:
      return RougeField::kRecall;
  }
}

SystemUnderTest spec_system(std::string name, EnsembleSpec spec, const ModelRegistry& registry,
                            FieldSpec fields, DecodeParams params, std::uint64_t seed) {
  params.validate();
  return SystemUnderTest{
      std::move(name),
      [spec = std::move(spec), &registry, fields = std::move(fields), params,
       seed](const NoteRecord& record) {
        const auto violations = validate_spec(spec, registry);
        if (!violations.empty()) {
          throw std::runtime_error("invalid ensemble spec: " + violations.front());
        }
        // Every leaf model shares the registry vocabulary contract, so
        // the first referenced model's vocab encodes the input.
        const auto ids = spec.referenced_models();
        const auto model = registry.find(ids.front());
        const TokenIds input = model->vocab().encode(assemble_input(record, fields));
        return evaluate_spec(spec, registry, input, params, seed);
      }};
}

SystemUnderTest oracle_system(std::string name, OracleMode mode) {
  return SystemUnderTest{std::move(name), [mode](const NoteRecord& record) {
                           if (!record.summary) {
                             throw std::runtime_error("oracle system: record '" + record.id +
                                                      "' has no reference summary");
                           }
                           const SentencePool pool = sentence_pool(record);
                           return mode == OracleMode::kAllOverlap
                                      ? all_overlap(pool, *record.summary)
                                      : greedy_best(pool, *record.summary);
                         }};
}

SystemReport evaluate_system(const SystemUnderTest& system, std::span<const NoteRecord> records,
                             int workers) {
  for (const auto& r : records) {
    if (!r.summary) {
      throw std::invalid_argument("evaluate_system: record '" + r.id + "' has no reference");
    }
  }
  SystemReport report;
  report.name = system.name;
  report.per_record.resize(records.size());
  report.outputs.resize(records.size());

  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const NoteRecord& record = records[i];
    try {
      const std::string output = system.run(record);
      report.outputs[i] = output;
      for (int m = 0; m < kNumMetrics; ++m) {
        const RougeScore s = rouge_score(output, *record.summary, metric_variant(m));
        report.per_record[i][static_cast<std::size_t>(m)] =
            100.0 * reward_value(s, metric_field(m));
      }
    } catch (const std::exception& e) {
      errors[i] = "record '" + record.id + "': " + e.what();
    }
  });
  for (const auto& err : errors) {
    if (!err.empty()) throw std::runtime_error(err);
  }
  return report_from_rows(std::move(report.name), std::move(report.per_record),
                          std::move(report.outputs));
}

SystemReport report_from_rows(std::string name,
                              std::vector<std::array<double, kNumMetrics>> per_record,
                              std::vector<std::string> outputs) {
  SystemReport report;
  report.name = std::move(name);
  report.per_record = std::move(per_record);
  report.outputs = std::move(outputs);
  const double n = static_cast<double>(report.per_record.size());
  for (int m = 0; m < kNumMetrics; ++m) {
    const auto mi = static_cast<std::size_t>(m);
    double sum = 0.0;
    for (const auto& row : report.per_record) sum += row[mi];
    const double mean = report.per_record.empty() ? 0.0 : sum / n;
    double var = 0.0;
    for (const auto& row : report.per_record) {
      const double d = row[mi] - mean;
      var += d * d;
    }
    report.mean[mi] = mean;
    report.stddev[mi] = report.per_record.empty() ? 0.0 : std::sqrt(var / n);
  }
  return report;
}

SystemReport aggregate_individual(std::string name, std::span<const SystemReport> members) {
  if (members.empty()) throw std::invalid_argument("aggregate_individual: no members");
  SystemReport report;
  report.name = std::move(name);
  const double n = static_cast<double>(members.size());
  for (int m = 0; m < kNumMetrics; ++m) {
    const auto mi = static_cast<std::size_t>(m);
    double sum = 0.0;
    for (const auto& member : members) sum += member.mean[mi];
    const double mean = sum / n;
    double var = 0.0;
    for (const auto& member : members) {
      const double d = member.mean[mi] - mean;
      var += d * d;
    }
    report.mean[mi] = mean;
    report.stddev[mi] = std::sqrt(var / n);  // population std across members
  }
  return report;
}

nlohmann::json SystemReport::to_json() const {
  nlohmann::json metrics = nlohmann::json::object();
  for (int m = 0; m < kNumMetrics; ++m) {
    const auto mi = static_cast<std::size_t>(m);
    metrics[metric_names()[mi]] = {{"mean", mean[mi]}, {"stddev", stddev[mi]}};
  }
  nlohmann::json per = nlohmann::json::array();
  for (const auto& row : per_record) {
    nlohmann::json obj = nlohmann::json::object();
    for (int m = 0; m < kNumMetrics; ++m) {
      obj[metric_names()[static_cast<std::size_t>(m)]] = row[static_cast<std::size_t>(m)];
    }
    per.push_back(obj);
  }
  return {{"system", name}, {"metrics", metrics}, {"per_record", per}, {"outputs", outputs}};
}

SystemReport SystemReport::from_json(const nlohmann::json& j) {
  SystemReport report;
  report.name = j.at("system").get<std::string>();
  for (int m = 0; m < kNumMetrics; ++m) {
    const auto mi = static_cast<std::size_t>(m);
    const auto& cell = j.at("metrics").at(metric_names()[mi]);
    report.mean[mi] = cell.at("mean").get<double>();
    report.stddev[mi] = cell.at("stddev").get<double>();
  }
  if (j.contains("per_record")) {
    for (const auto& row : j["per_record"]) {
      std::array<double, kNumMetrics> scores{};
      for (int m = 0; m < kNumMetrics; ++m) {
        scores[static_cast<std::size_t>(m)] =
            row.at(metric_names()[static_cast<std::size_t>(m)]).get<double>();
      }
      report.per_record.push_back(scores);
    }
  }
  if (j.contains("outputs")) report.outputs = j["outputs"].get<std::vector<std::string>>();
  return report;
}

std::string render_table(std::span<const SystemReport> reports) {
  std::size_t name_width = 6;
  for (const auto& r : reports) name_width = std::max(name_width, r.name.size());

  auto cell = [](double mean, double stddev) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f±%.2f", mean, stddev);
    return std::string(buf);
  };

  constexpr int kCellWidth = 13;
  std::string out;
  out += std::string(name_width, ' ');
  for (const auto& metric : metric_names()) {
    out += " | ";
    out += metric;
    out += std::string(kCellWidth - metric.size(), ' ');
  }
  out += "\n";
  out += std::string(out.size() - 1, '-');
  out += "\n";
  for (const auto& r : reports) {
    out += r.name;
    out += std::string(name_width - r.name.size(), ' ');
    for (int m = 0; m < kNumMetrics; ++m) {
      const auto mi = static_cast<std::size_t>(m);
      const std::string c = cell(r.mean[mi], r.stddev[mi]);
      out += " | ";
      out += c;
      // The ± sign is two bytes in UTF-8; pad on display width.
      const std::size_t display = c.size() - 1;
      if (display < kCellWidth) out += std::string(kCellWidth - display, ' ');
    }
    out += "\n";
  }
  return out;
}

nlohmann::json report_json(std::span<const SystemReport> reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    for (int m = 0; m < kNumMetrics; ++m) {
      const auto mi = static_cast<std::size_t>(m);
      rows.push_back({{"system", r.name},
                      {"metric", metric_names()[mi]},
                      {"mean", r.mean[mi]},
                      {"stddev", r.stddev[mi]}});
    }
  }
  return rows;
}

}  // namespace summens
