#include "summens/data.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "summens/rng.hpp"
#include "summens/vocab.hpp"

namespace summens {

namespace {

std::string require_string(const nlohmann::json& j, const char* key, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw std::runtime_error("jsonl line " + std::to_string(line) + ": missing string field '" +
                             key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<NoteRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_jsonl: cannot open " + path.string());
  std::vector<NoteRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
    NoteRecord r;
    r.id = require_string(j, "id", line_no);
    r.assessment = require_string(j, "assessment", line_no);
    r.subjective = require_string(j, "subjective", line_no);
    r.objective = require_string(j, "objective", line_no);
    if (j.contains("summary")) {
      if (!j["summary"].is_string()) {
        throw std::runtime_error("jsonl line " + std::to_string(line_no) +
                                 ": field 'summary' must be a string");
      }
      r.summary = j["summary"].get<std::string>();
    }
    records.push_back(std::move(r));
  }
  return records;
}

void save_jsonl(const std::filesystem::path& path, std::span<const NoteRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_jsonl: cannot open " + path.string());
  for (const auto& r : records) {
    nlohmann::json j{{"id", r.id},
                     {"assessment", r.assessment},
                     {"subjective", r.subjective},
                     {"objective", r.objective}};
    if (r.summary) j["summary"] = *r.summary;
    out << j.dump() << "\n";
  }
  if (!out) throw std::runtime_error("save_jsonl: write failed for " + path.string());
}

FieldSpec parse_field_spec(std::string_view s) {
  if (s.empty() || s == "none" || s == "NONE") return {};
  FieldSpec spec;
  std::set<Field> seen;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find_first_of("+,", pos);
    if (end == std::string_view::npos) end = s.size();
    const std::string_view piece = s.substr(pos, end - pos);
    Field f;
    if (piece == "A" || piece == "a") {
      f = Field::kAssessment;
    } else if (piece == "S" || piece == "s") {
      f = Field::kSubjective;
    } else if (piece == "O" || piece == "o") {
      f = Field::kObjective;
    } else {
      throw std::invalid_argument("field spec: unknown field '" + std::string(piece) + "'");
    }
    if (!seen.insert(f).second) {
      throw std::invalid_argument("field spec: repeated field '" + std::string(piece) + "'");
    }
    spec.push_back(f);
    if (end == s.size()) break;
    pos = end + 1;
  }
  return spec;
}

std::string to_string(const FieldSpec& spec) {
  if (spec.empty()) return "none";
  std::string out;
  for (const Field f : spec) {
    if (!out.empty()) out.push_back('+');
    switch (f) {
      case Field::kAssessment:
        out.push_back('A');
        break;
      case Field::kSubjective:
        out.push_back('S');
        break;
      case Field::kObjective:
        out.push_back('O');
        break;
    }
  }
  return out;
}

std::string assemble_input(const NoteRecord& record, const FieldSpec& spec) {
  std::set<Field> seen;
  std::string out;
  for (const Field f : spec) {
    if (!seen.insert(f).second) {
      throw std::invalid_argument("assemble_input: repeated field in spec");
    }
    const char* sep = nullptr;
    const std::string* text = nullptr;
    switch (f) {
      case Field::kAssessment:
        sep = Vocab::kSepALiteral;
        text = &record.assessment;
        break;
      case Field::kSubjective:
        sep = Vocab::kSepSLiteral;
        text = &record.subjective;
        break;
      case Field::kObjective:
        sep = Vocab::kSepOLiteral;
        text = &record.objective;
        break;
    }
    if (!out.empty()) out.push_back(' ');
    out += sep;
    if (!text->empty()) {
      out.push_back(' ');
      out += *text;
    }
  }
  return out;
}

std::vector<int> FoldPlan::fold_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (const auto& [id, fold] : assignment) ++sizes[static_cast<std::size_t>(fold)];
  return sizes;
}

FoldPlan kfold_split(std::span<const NoteRecord> records, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > records.size()) {
    throw std::invalid_argument("kfold_split: need 2 <= k <= #records");
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& id = records[order[i]].id;
    if (!plan.assignment.emplace(id, static_cast<int>(i % static_cast<std::size_t>(k))).second) {
      throw std::invalid_argument("kfold_split: duplicate record id '" + id + "'");
    }
  }
  return plan;
}

}  // namespace summens
