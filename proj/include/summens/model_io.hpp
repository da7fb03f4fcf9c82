#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "summens/copymix.hpp"
#include "summens/model.hpp"

namespace summens {

// Versioned, self-describing JSON serialization. Objects serialize with
// sorted keys, so save -> load -> save is byte-identical.
std::string serialize_model(const SequenceModel& model);
std::shared_ptr<const SequenceModel> deserialize_model(const std::string& bytes);

void save_model(const std::filesystem::path& path, const SequenceModel& model);
std::shared_ptr<const SequenceModel> load_model(const std::filesystem::path& path);

// Typed loader for operations that need the concrete type (e.g. weight
// averaging). Throws std::runtime_error when the file holds another kind.
CopyMixModel load_copymix(const std::filesystem::path& path);

}  // namespace summens
