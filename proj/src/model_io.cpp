#include "summens/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace summens {

namespace {

nlohmann::json model_json(const SequenceModel& model) {
  if (const auto* cm = dynamic_cast<const CopyMixModel*>(&model)) return cm->to_json();
  if (const auto* tm = dynamic_cast<const TableModel*>(&model)) return tm->to_json();
  throw std::runtime_error("serialize_model: unsupported model kind");
}

}  // namespace

std::string serialize_model(const SequenceModel& model) {
  // Two-space indent with sorted object keys (nlohmann's default map
  // ordering), so identical models serialize to identical bytes.
  return model_json(model).dump(2) + "\n";
}

std::shared_ptr<const SequenceModel> deserialize_model(const std::string& bytes) {
  const nlohmann::json j = nlohmann::json::parse(bytes);
  const std::string format = j.value("format", "");
  if (format == "copymix") {
    return std::make_shared<const CopyMixModel>(CopyMixModel::from_json(j));
  }
  if (format == "table-model") {
    return std::make_shared<const TableModel>(TableModel::from_json(j));
  }
  throw std::runtime_error("deserialize_model: unknown format '" + format + "'");
}

void save_model(const std::filesystem::path& path, const SequenceModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path.string());
  out << serialize_model(model);
  if (!out) throw std::runtime_error("save_model: write failed for " + path.string());
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::shared_ptr<const SequenceModel> load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file(path));
}

CopyMixModel load_copymix(const std::filesystem::path& path) {
  const nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (j.value("format", "") != "copymix") {
    throw std::runtime_error("load_copymix: " + path.string() + " is not a copymix model");
  }
  return CopyMixModel::from_json(j);
}

}  // namespace summens
