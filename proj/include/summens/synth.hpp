#pragma once

#include <cstdint>
#include <vector>

#include "summens/data.hpp"

namespace summens {

// Word-count targets per field, drawn from clipped normals. Defaults
// follow the corpus statistics the generator imitates.
struct LengthProfile {
  double objective_mean = 304.7;
  double objective_sd = 83.4;
  double subjective_mean = 85.5;
  double subjective_sd = 54.8;
  double assessment_mean = 33.7;
  double assessment_sd = 17.1;
  double summary_mean = 10.5;
  double summary_sd = 7.5;
};

// Seeded generator over a small diagnosis/symptom phrase vocabulary.
// Assessments are diagnosis phrases rendered as sentences; each summary
// is a noisy subset of its record's assessment phrases, so copy-based
// models can learn the mapping and every summary shares at least one
// token with its assessment. Deterministic given (seed, size, profile).
std::vector<NoteRecord> synth_corpus(std::uint64_t seed, std::size_t size,
                                     const LengthProfile& profile = {});

}  // namespace summens
