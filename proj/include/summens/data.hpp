#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace summens {

// One clinical progress note. summary is absent for unlabeled test
// records.
struct NoteRecord {
  std::string id;
  std::string assessment;
  std::string subjective;
  std::string objective;
  std::optional<std::string> summary;
};

// One record per line with keys id / assessment / subjective / objective
// and optional summary; order preserved. Throws std::runtime_error
// naming the line on the first malformed line.
std::vector<NoteRecord> load_jsonl(const std::filesystem::path& path);
void save_jsonl(const std::filesystem::path& path, std::span<const NoteRecord> records);

enum class Field { kAssessment, kSubjective, kObjective };

// Ordered subset of {A, S, O}; the empty spec is the empty-input
// baseline.
using FieldSpec = std::vector<Field>;

// "A", "A+S", "A+S+O" (case-insensitive, '+' or ',' separated); "" and
// "none" give the empty spec. Throws std::invalid_argument on unknown
// fields or repeats.
FieldSpec parse_field_spec(std::string_view s);
std::string to_string(const FieldSpec& spec);

// For each field in spec order: its separator literal followed by the
// field text. The empty spec yields the empty string. Throws on repeated
// fields.
std::string assemble_input(const NoteRecord& record, const FieldSpec& spec);

struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, int> assignment;  // record id -> fold in [0, k)

  std::vector<int> fold_sizes() const;
};

// Seeded shuffle then round-robin assignment; fold sizes differ by at
// most one. Requires 2 <= k <= #records and unique ids.
FoldPlan kfold_split(std::span<const NoteRecord> records, int k, std::uint64_t seed);

}  // namespace summens
