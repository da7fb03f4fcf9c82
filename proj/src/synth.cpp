#include "summens/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "summens/rng.hpp"
#include "summens/text.hpp"

namespace summens {

namespace {

// Diagnosis phrases feeding assessments and summaries. Single-word
// entries keep exact word-count targeting possible.
constexpr std::array<std::string_view, 40> kDiagnoses = {
    "acute renal failure",
    "chronic kidney disease",
    "congestive heart failure exacerbation",
    "community acquired pneumonia",
    "septic shock",
    "acute respiratory distress",
    "atrial fibrillation with rapid ventricular response",
    "type 2 diabetes mellitus",
    "diabetic ketoacidosis",
    "urinary tract infection",
    "acute pancreatitis",
    "gastrointestinal bleed",
    "deep vein thrombosis",
    "pulmonary embolism",
    "chronic obstructive pulmonary disease exacerbation",
    "hypertensive emergency",
    "acute myocardial infarction",
    "unstable angina",
    "cellulitis of lower extremity",
    "altered mental status",
    "hyponatremia",
    "hyperkalemia",
    "anemia of chronic disease",
    "acute liver injury",
    "alcohol withdrawal",
    "bacterial meningitis",
    "seizure disorder",
    "ischemic stroke",
    "transient ischemic attack",
    "acute cholecystitis",
    "small bowel obstruction",
    "chronic hepatitis c",
    "end stage renal disease",
    "hospital acquired pneumonia",
    "respiratory failure",
    "hypoxia",
    "malnutrition",
    "pressure ulcer stage 2",
    "acute gout flare",
    "osteomyelitis of the foot",
};

constexpr std::array<std::string_view, 44> kSubjectiveWords = {
    "patient", "reports",  "denies",    "mild",      "severe",   "worsening", "improving",
    "chest",   "pain",     "shortness", "of",        "breath",   "nausea",    "vomiting",
    "fever",   "chills",   "cough",     "productive", "dizzy",   "fatigue",   "weakness",
    "since",   "yesterday", "overnight", "this",     "morning",  "appetite",  "poor",
    "sleeping", "well",    "abdominal", "cramping",  "headache", "swelling",  "legs",
    "tolerating", "diet",  "states",    "feels",     "better",   "no",        "new",
    "complaints", "today",
};

constexpr std::array<std::string_view, 52> kObjectiveWords = {
    "vitals",  "stable",    "temp",     "pulse",    "bp",       "resp",     "rate",
    "oxygen",  "saturation", "on",      "room",     "air",      "exam",     "alert",
    "oriented", "lungs",    "clear",    "to",       "auscultation", "bilaterally", "heart",
    "regular", "rhythm",    "murmur",   "abdomen",  "soft",     "nontender", "bowel",
    "sounds",  "present",   "extremities", "edema", "labs",     "wbc",      "hemoglobin",
    "platelets", "sodium",  "potassium", "creatinine", "glucose", "lactate", "urine",
    "output",  "adequate",  "chest",    "xray",     "unchanged", "ekg",     "sinus",
    "cultures", "pending",  "trace",
};

constexpr std::array<std::string_view, 12> kNumbers = {
    "98", "99", "101", "72", "88", "110", "120", "80", "18", "22", "95", "135",
};

std::size_t word_count(std::string_view phrase) {
  std::size_t count = phrase.empty() ? 0 : 1;
  for (const char c : phrase) {
    if (c == ' ') ++count;
  }
  return count;
}

std::size_t clipped_normal(Rng& rng, double mean, double sd, std::size_t min_value) {
  const double v = rng.next_normal(mean, sd);
  const double hi = mean + 4.0 * sd;
  const double clipped = std::min(std::max(v, static_cast<double>(min_value)), hi);
  return static_cast<std::size_t>(std::llround(clipped));
}

// Random diagnosis phrases totalling exactly `target` words (duplicates
// allowed). Single-word phrases top up the tail.
std::vector<std::string> draw_phrases(Rng& rng, std::size_t target) {
  std::vector<std::size_t> one_word;
  for (std::size_t i = 0; i < kDiagnoses.size(); ++i) {
    if (word_count(kDiagnoses[i]) == 1) one_word.push_back(i);
  }
  std::vector<std::string> phrases;
  std::size_t total = 0;
  while (total < target) {
    const std::size_t remaining = target - total;
    std::size_t pick = static_cast<std::size_t>(rng.next_below(kDiagnoses.size()));
    if (word_count(kDiagnoses[pick]) > remaining) {
      pick = one_word[static_cast<std::size_t>(rng.next_below(one_word.size()))];
    }
    phrases.emplace_back(kDiagnoses[pick]);
    total += word_count(kDiagnoses[pick]);
  }
  return phrases;
}

template <std::size_t N>
std::string draw_prose(Rng& rng, const std::array<std::string_view, N>& pool,
                       std::size_t target_words, double number_share) {
  std::string out;
  std::size_t remaining = target_words;
  while (remaining > 0) {
    std::size_t sentence_len = 6 + static_cast<std::size_t>(rng.next_below(7));
    sentence_len = std::min(sentence_len, remaining);
    for (std::size_t w = 0; w < sentence_len; ++w) {
      if (!out.empty()) out.push_back(' ');
      std::string_view word;
      if (number_share > 0.0 && rng.next_unit() < number_share) {
        word = kNumbers[static_cast<std::size_t>(rng.next_below(kNumbers.size()))];
      } else {
        word = pool[static_cast<std::size_t>(rng.next_below(pool.size()))];
      }
      out += word;
    }
    out.push_back('.');
    remaining -= sentence_len;
  }
  return out;
}

}  // namespace

std::vector<NoteRecord> synth_corpus(std::uint64_t seed, std::size_t size,
                                     const LengthProfile& profile) {
  std::vector<NoteRecord> records;
  records.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    Rng rng(mix_seed(seed, i));
    NoteRecord r;
    {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "note-%05zu", i + 1);
      r.id = buf;
    }

    const std::size_t assess_words =
        clipped_normal(rng, profile.assessment_mean, profile.assessment_sd, 3);
    const std::vector<std::string> phrases = draw_phrases(rng, assess_words);
    for (std::size_t p = 0; p < phrases.size(); ++p) {
      if (p) r.assessment.push_back(' ');
      r.assessment += phrases[p];
      r.assessment.push_back('.');
    }

    r.subjective = draw_prose(rng, kSubjectiveWords,
                              clipped_normal(rng, profile.subjective_mean, profile.subjective_sd, 1),
                              0.0);
    r.objective = draw_prose(rng, kObjectiveWords,
                             clipped_normal(rng, profile.objective_mean, profile.objective_sd, 1),
                             0.15);

    // Summary: a noisy subset of the assessment phrases, kept in
    // assessment order. At least one phrase always survives, so summary
    // and assessment share tokens by construction.
    const std::size_t summary_words =
        clipped_normal(rng, profile.summary_mean, profile.summary_sd, 1);
    std::vector<std::size_t> order(phrases.size());
    for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
    rng.shuffle(order);
    std::vector<char> keep(phrases.size(), 0);
    std::size_t kept_words = 0;
    for (const std::size_t p : order) {
      if (kept_words >= summary_words && kept_words > 0) break;
      keep[p] = 1;
      kept_words += word_count(phrases[p]);
    }
    std::string summary;
    for (std::size_t p = 0; p < phrases.size(); ++p) {
      if (!keep[p]) continue;
      std::string piece = phrases[p];
      if (rng.next_unit() < 0.2) {
        const std::size_t space = piece.find(' ');
        if (space != std::string::npos) piece = piece.substr(space + 1);  // drop leading word
      }
      if (!summary.empty()) summary += "; ";
      summary += piece;
    }
    if (rng.next_unit() < 0.2) {
      summary.push_back(' ');
      summary += kSubjectiveWords[static_cast<std::size_t>(rng.next_below(kSubjectiveWords.size()))];
    }
    r.summary = std::move(summary);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace summens
