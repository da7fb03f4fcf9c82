#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "summens/copymix.hpp"
#include "summens/data.hpp"
#include "summens/ensemble_spec.hpp"
#include "summens/synth.hpp"

namespace summens {

// Trains num_a copy-mixture models on {A}-assembled inputs and num_as on
// {A}+{S}-assembled inputs over a shared corpus vocabulary, each with its
// own shard seed. Registry keys are theta_A-1..num_a and
// theta_AS-1..num_as. Requires a non-empty corpus with references.
ModelRegistry build_roster(std::span<const NoteRecord> corpus,
                           std::span<const std::uint64_t> seeds_a,
                           std::span<const std::uint64_t> seeds_as,
                           const TrainOptions& options = {});

// Everything the checked-in ensemble fixtures reference:
//   theta_A-1..15, theta_AS-1..9            trained members
//   theta_A-v2-1..3, theta_AS-v2-1..3       variants with different
//                                           hyperparameters (diversity)
//   theta_A-rl-1..3                         lambda re-selected to maximize
//                                           greedy-decode ROUGE-L on the
//                                           corpus (stand-in for
//                                           reward-tuned members)
//   theta_A-wavg3, theta_A-wavg9,
//   theta_AS-wavg9                          weight-averaged models
ModelRegistry build_full_roster(std::span<const NoteRecord> corpus, std::uint64_t base_seed,
                                const TrainOptions& options = {});

// Trains only the ids a spec references, deriving shard seeds and field
// specs from the id scheme above. Used by cross-validation, where models
// must be re-trained per fold.
ModelRegistry build_models_for(std::span<const std::string> ids,
                               std::span<const NoteRecord> corpus, std::uint64_t base_seed,
                               const TrainOptions& options = {});

struct Fixture {
  std::string name;
  std::filesystem::path file;
  std::vector<std::string> required_models;
  FieldSpec eval_fields;  // input view used when executing the fixture
};

// The checked-in ensemble shapes, loaded from the fixtures directory:
// per-member baselines, weight-averaged and token-ensemble and MBR
// combinations of both member families, the hierarchical shapes, the
// final stacked selection, and the 18- and 34-member unpacked MBR pools.
std::vector<Fixture> list_fixtures(const std::filesystem::path& fixtures_dir);

}  // namespace summens
