// Acceptance suite: one pass/fail line per criterion, every tolerance
// pinned in code. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "summens/combine.hpp"
#include "summens/copymix.hpp"
#include "summens/data.hpp"
#include "summens/decode.hpp"
#include "summens/ensemble_spec.hpp"
#include "summens/evaluate.hpp"
#include "summens/losses.hpp"
#include "summens/mbr.hpp"
#include "summens/model_io.hpp"
#include "summens/oracle.hpp"
#include "summens/rouge.hpp"
#include "summens/synth.hpp"
#include "summens/zoo.hpp"

using namespace summens;
namespace fs = std::filesystem;

namespace {

const fs::path kFixturesDir = SUMMENS_FIXTURES_DIR;
const std::string kCliPath = SUMMENS_CLI_PATH;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable:" + path.string() + ">";
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int hw_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 2 : static_cast<int>(n);
}

// ------------------------------------------------------------------ C1

void criterion_rouge_fixtures(Check& check) {
  struct Row {
    const char* hyp;
    const char* ref;
    RougeVariant variant;
    double p, r, f1;
  };
  const auto L = RougeVariant::l();
  const auto N1 = RougeVariant::n(1);
  const auto N2 = RougeVariant::n(2);
  const auto N3 = RougeVariant::n(3);
  const std::vector<Row> rows = {
      // R1
      {"the cat", "the cat sat", N1, 1.0, 2.0 / 3.0, 0.8},
      {"a b c", "a b c", N1, 1.0, 1.0, 1.0},
      {"x", "y", N1, 0.0, 0.0, 0.0},
      {"", "x", N1, 0.0, 0.0, 0.0},
      {"a b a", "a b a b", N1, 1.0, 3.0 / 4.0, 6.0 / 7.0},
      {"a a a", "a", N1, 1.0 / 3.0, 1.0, 0.5},
      {"b a b", "b b", N1, 2.0 / 3.0, 1.0, 0.8},
      {"Acute CHF, exacerbation.", "acute chf exacerbation", N1, 1.0, 1.0, 1.0},
      {"T5-Large rocks", "t5 large", N1, 2.0 / 3.0, 1.0, 0.8},
      {"a b", "b a", N1, 1.0, 1.0, 1.0},
      // R2
      {"the cat", "the cat sat", N2, 1.0, 0.5, 2.0 / 3.0},
      {"a b", "b a", N2, 0.0, 0.0, 0.0},
      {"a b a", "a b a b", N2, 1.0, 2.0 / 3.0, 0.8},
      {"the dog barks loud", "the dog barks", N2, 2.0 / 3.0, 1.0, 0.8},
      {"b a b", "b b", N2, 0.0, 0.0, 0.0},
      {"c d e", "a b c d e", N2, 1.0, 0.5, 2.0 / 3.0},
      {"a b c", "a b c", N2, 1.0, 1.0, 1.0},
      // R3
      {"a b c d", "b c d e", N3, 0.5, 0.5, 0.5},
      // RL
      {"the cat", "the cat sat", L, 1.0, 2.0 / 3.0, 0.8},
      {"a b c", "a x c", L, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0},
      {"Sepsis.", "sepsis", L, 1.0, 1.0, 1.0},
      {"", "", L, 0.0, 0.0, 0.0},
      {"a b a", "a b a b", L, 1.0, 3.0 / 4.0, 6.0 / 7.0},
      {"a c b d", "a b c d", L, 3.0 / 4.0, 3.0 / 4.0, 3.0 / 4.0},
      {"x y z", "z y x", L, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {"a a a", "a", L, 1.0 / 3.0, 1.0, 0.5},
      {"a b c d e", "a c e", L, 3.0 / 5.0, 1.0, 0.75},
      {"b a b", "b b", L, 2.0 / 3.0, 1.0, 0.8},
  };
  check.require(rows.size() >= 20, "need at least 20 fixture rows");
  constexpr double kTol = 1e-9;
  for (const auto& row : rows) {
    const RougeScore s = rouge_score(row.hyp, row.ref, row.variant);
    const std::string where = std::string("pair '") + row.hyp + "' vs '" + row.ref + "' R" +
                              row.variant.to_string();
    check.require(std::abs(s.precision - row.p) <= kTol, where + ": precision");
    check.require(std::abs(s.recall - row.r) <= kTol, where + ": recall");
    check.require(std::abs(s.f1 - row.f1) <= kTol, where + ": f1");
  }
}

// ------------------------------------------------------------------ C2

void criterion_lcs_oracle(Check& check) {
  Rng rng(92);
  for (int trial = 0; trial < 1000; ++trial) {
    TokenSeq a, b;
    const std::size_t la = rng.next_below(9);
    const std::size_t lb = rng.next_below(9);
    for (std::size_t i = 0; i < la; ++i) {
      a.push_back(std::string(1, static_cast<char>('a' + rng.next_below(3))));
    }
    for (std::size_t i = 0; i < lb; ++i) {
      b.push_back(std::string(1, static_cast<char>('a' + rng.next_below(3))));
    }
    if (lcs_length(a, b) != testutil::lcs_brute(a, b)) {
      check.require(false, "lcs mismatch at trial " + std::to_string(trial));
      return;
    }
  }
}

// ------------------------------------------------------------------ C3

void criterion_beam_oracle(Check& check) {
  Rng rng(93);
  for (int trial = 0; trial < 500; ++trial) {
    const int content = 1 + static_cast<int>(rng.next_below(4));  // content + EOS alphabet <= 5
    const TableModel model = testutil::random_table_model(rng, content, 3);
    DecodeParams p;
    p.max_length = 2 + static_cast<int>(rng.next_below(3));
    p.min_length = static_cast<int>(rng.next_below(3));
    if (p.min_length > p.max_length) p.min_length = p.max_length;
    p.no_repeat_ngram_size = static_cast<int>(rng.next_below(4));
    p.num_beams = 1000;  // at least the path count at these sizes
    const double alphas[] = {0.0, 0.6, 1.0};
    const double alpha = alphas[trial % 3];
    p.length_penalty = alpha;

    const auto all = testutil::all_terminating(model, {}, p);
    if (all.empty()) {
      check.require(false, "no terminating sequences at trial " + std::to_string(trial));
      return;
    }
    const Hypothesis& expected = testutil::best_by_penalized(all, alpha);
    const auto beams = beam_search(model, {}, p);
    if (beams.empty() || beams.front().ids != expected.ids ||
        beams.front().logprob != expected.logprob) {
      check.require(false, "beam/exhaustive divergence at trial " + std::to_string(trial));
      return;
    }
  }
}

// ------------------------------------------------------------------ C4

void criterion_token_ensemble(Check& check) {
  Rng rng(94);
  std::vector<std::string> tokens{"a", "b", "c", "d"};
  const Vocab vocab(tokens);
  const auto vocab_size = static_cast<std::size_t>(vocab.size());
  std::vector<std::size_t> support{static_cast<std::size_t>(Vocab::kEos)};
  for (int i = 0; i < 4; ++i) {
    support.push_back(static_cast<std::size_t>(Vocab::kNumReserved + i));
  }

  // Mean equality within 1e-12 over 1000 random member sets.
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t member_count = 1 + rng.next_below(8);
    std::vector<std::shared_ptr<const SequenceModel>> members;
    for (std::size_t m = 0; m < member_count; ++m) {
      members.push_back(std::make_shared<const TableModel>(
          vocab, testutil::dyadic_distribution(rng, vocab_size, support)));
    }
    const TokenEnsembleModel ensemble{members};
    const Distribution got = ensemble.next_distribution({}, {});
    for (std::size_t t = 0; t < vocab_size; ++t) {
      double mean = 0.0;
      for (const auto& member : members) mean += member->next_distribution({}, {}).probs[t];
      mean /= static_cast<double>(member_count);
      if (std::abs(got.probs[t] - mean) > 1e-12) {
        check.require(false, "ensemble mean off by more than 1e-12 at trial " +
                                 std::to_string(trial));
        return;
      }
    }
  }

  // Identical members reproduce the single model's beam output exactly.
  for (int trial = 0; trial < 50; ++trial) {
    const TableModel base = testutil::random_table_model(rng, 3, 3);
    const auto shared = std::make_shared<const TableModel>(base);
    DecodeParams p;
    p.max_length = 4;
    p.min_length = 0;
    p.no_repeat_ngram_size = 0;
    const auto solo = beam_search(base, {}, p);
    for (const std::size_t copies : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
      std::vector<std::shared_ptr<const SequenceModel>> members(copies, shared);
      const TokenEnsembleModel ensemble{members};
      const auto merged = beam_search(ensemble, {}, p);
      check.require(!solo.empty() && !merged.empty() && solo.front().ids == merged.front().ids,
                    "identical-member ensemble changed the beam output");
    }
  }

  // Nesting identity, bit-exact: mean of two pair-means == flat mean of
  // four members.
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::shared_ptr<const SequenceModel>> members;
    for (int m = 0; m < 4; ++m) {
      members.push_back(std::make_shared<const TableModel>(
          vocab, testutil::dyadic_distribution(rng, vocab_size, support)));
    }
    const auto inner1 = std::make_shared<const TokenEnsembleModel>(
        std::vector<std::shared_ptr<const SequenceModel>>{members[0], members[1]});
    const auto inner2 = std::make_shared<const TokenEnsembleModel>(
        std::vector<std::shared_ptr<const SequenceModel>>{members[2], members[3]});
    const TokenEnsembleModel nested{{inner1, inner2}};
    const TokenEnsembleModel flat{members};
    if (nested.next_distribution({}, {}).probs != flat.next_distribution({}, {}).probs) {
      check.require(false, "nested means diverge from the flat mean at trial " +
                               std::to_string(trial));
      return;
    }
  }
}

// ------------------------------------------------------------------ C5

void criterion_mbr(Check& check) {
  const RewardSpec reward{RougeVariant::l(), RougeField::kF1};
  const auto select = [&](const std::vector<std::string>& texts) {
    CandidatePool pool;
    pool.texts = texts;
    return mbr_select(pool, reward);
  };

  // Exhaustive: every pool of size 1..6 over the 3-token vocabulary.
  const std::vector<std::string> words{"a", "b", "c"};
  std::vector<std::vector<std::string>> pools{{}};
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<std::string>> next;
    for (const auto& pool : pools) {
      if (pool.size() + 1 != static_cast<std::size_t>(n)) continue;
      for (const auto& w : words) {
        auto extended = pool;
        extended.push_back(w);
        next.push_back(std::move(extended));
      }
    }
    for (const auto& pool : next) {
      if (select(pool).selected_index != testutil::mbr_brute(pool)) {
        check.require(false, "exhaustive pool mismatch at n=" + std::to_string(n));
        return;
      }
    }
    pools.insert(pools.end(), next.begin(), next.end());
  }

  // Richer candidates for the randomized property checks.
  std::vector<std::string> universe{"a", "b", "c", "a b", "b c", "a c", "c a", "a b c", "b a"};
  Rng rng(95);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.next_below(6);
    std::vector<std::string> texts;
    for (std::size_t i = 0; i < n; ++i) {
      texts.push_back(universe[static_cast<std::size_t>(rng.next_below(universe.size()))]);
    }
    const MbrResult result = select(texts);
    if (result.selected_index != testutil::mbr_brute(texts)) {
      check.require(false, "random pool brute-force mismatch at trial " + std::to_string(trial));
      return;
    }
    if (n == 1 && result.selected_index != 0) {
      check.require(false, "singleton pool must select index 0");
      return;
    }

    // Self-term invariance (all candidates non-empty here): dropping the
    // diagonal shifts every row sum by the constant 1, so the selected
    // candidate must remain a maximizer of the diagonal-free scores, up
    // to floating-point summation noise on exact ties.
    std::vector<double> without(n, 0.0);
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) without[i] += result.reward_matrix[i][j];
      }
      best = std::max(best, without[i]);
    }
    if (without[result.selected_index] < best - 1e-9) {
      check.require(false, "diagonal changed the winner at trial " + std::to_string(trial));
      return;
    }

    // Duplicate boost.
    const std::size_t target = static_cast<std::size_t>(rng.next_below(n));
    auto boosted = texts;
    boosted.push_back(texts[target]);
    const MbrResult after = select(boosted);
    const auto rank = [&](const std::vector<double>& scores, std::size_t index) {
      std::size_t above = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (scores[j] > scores[index] + 1e-12) ++above;
      }
      return above;
    };
    if (rank(after.consensus_scores, target) > rank(result.consensus_scores, target)) {
      check.require(false, "duplicate lowered its candidate's rank at trial " +
                               std::to_string(trial));
      return;
    }
  }

  // Anomaly rejection.
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t outlier_at = 0; outlier_at < n; ++outlier_at) {
      std::vector<std::string> texts(n - 1, "a b c");
      texts.insert(texts.begin() + static_cast<std::ptrdiff_t>(outlier_at), "z z");
      const MbrResult result = select(texts);
      check.require(result.selected_index != outlier_at, "anomalous candidate selected");
    }
  }
}

// ------------------------------------------------------------------ C6

void criterion_hesm_identities(Check& check) {
  const auto corpus = synth_corpus(501, 80);
  std::vector<std::uint64_t> seeds_a, seeds_as;
  for (std::uint64_t i = 1; i <= 5; ++i) seeds_a.push_back(mix_seed(3, i));
  for (std::uint64_t i = 1; i <= 2; ++i) seeds_as.push_back(mix_seed(3, 100 + i));
  const ModelRegistry registry = build_roster(corpus, seeds_a, seeds_as);
  const auto records = synth_corpus(502, 50);
  DecodeParams params;
  params.max_length = 48;

  const EnsembleSpec plain = EnsembleSpec::leaf("theta_A-1");
  const EnsembleSpec wrapped = EnsembleSpec::token_ensemble({EnsembleSpec::leaf("theta_A-1")});
  const EnsembleSpec inner = EnsembleSpec::token_ensemble(
      {EnsembleSpec::leaf("theta_A-2"), EnsembleSpec::leaf("theta_AS-1")});
  const EnsembleSpec mbr_wrapped = EnsembleSpec::mbr({inner});
  std::vector<EnsembleSpec> pool_children;
  for (int i = 1; i <= 5; ++i) pool_children.push_back(EnsembleSpec::leaf("theta_A-" + std::to_string(i)));
  const EnsembleSpec pool_spec = EnsembleSpec::mbr(pool_children);

  const auto vocab_of = registry.find("theta_A-1");
  for (const auto& record : records) {
    const TokenIds x = vocab_of->vocab().encode(
        assemble_input(record, {Field::kAssessment, Field::kSubjective}));

    const std::string base = evaluate_spec(plain, registry, x, params, 1);
    if (evaluate_spec(wrapped, registry, x, params, 1) != base) {
      check.require(false, "TokenEnsemble([m]) diverged from Leaf(m) on " + record.id);
      return;
    }
    const std::string inner_text = evaluate_spec(inner, registry, x, params, 1);
    if (evaluate_spec(mbr_wrapped, registry, x, params, 1) != inner_text) {
      check.require(false, "MbrSelect([s]) diverged from s on " + record.id);
      return;
    }

    // The MBR pick is always one of its children's outputs.
    const std::string picked = evaluate_spec(pool_spec, registry, x, params, 1);
    bool member = false;
    for (const auto& child : pool_children) {
      if (evaluate_spec(child, registry, x, params, 1) == picked) member = true;
    }
    if (!member) {
      check.require(false, "MBR synthesized a non-member output on " + record.id);
      return;
    }
  }
}

// ------------------------------------------------------------------ C7

void criterion_extractive_oracles(Check& check) {
  // Crafted pool 1: the planted reference sentence is selected, alone.
  {
    const SentencePool pool{{"the cat sat", "dogs bark", "the cat"}};
    const GreedyTrace trace = greedy_best_trace(pool, "the cat sat");
    check.require(trace.summary == "the cat sat" && trace.steps.size() == 1 &&
                      trace.steps[0].sentence_index == 0,
                  "planted-reference pool");
  }
  // Crafted pool 2: a tying addition does not continue.
  {
    const SentencePool pool{{"chronic renal disease", "acute failure noted", "patient stable"}};
    const GreedyTrace trace = greedy_best_trace(pool, "acute renal failure");
    check.require(trace.summary == "acute failure noted" && trace.steps.size() == 1 &&
                      trace.steps[0].sentence_index == 1 &&
                      std::abs(trace.steps[0].f1 - 2.0 / 3.0) <= 1e-12,
                  "tie-stop pool");
  }
  // Crafted pool 3: zero overlap anywhere stops before the first pick.
  {
    const SentencePool pool{{"a b", "c"}};
    check.require(greedy_best(pool, "x") == "", "zero-gain pool");
  }
  // Crafted pool 4: one long sentence beats accumulation.
  {
    const SentencePool pool{{"a b", "c d", "a b c d e e e"}};
    const GreedyTrace trace = greedy_best_trace(pool, "a b c d");
    check.require(trace.summary == "a b c d e e e" && trace.steps.size() == 1 &&
                      trace.steps[0].sentence_index == 2 &&
                      std::abs(trace.steps[0].f1 - 8.0 / 11.0) <= 1e-12,
                  "single-long-sentence pool");
  }
  // Crafted pool 5: complementary sentences accumulate, ties break low.
  {
    const SentencePool pool{{"a b", "c d"}};
    const GreedyTrace trace = greedy_best_trace(pool, "a b c d");
    check.require(trace.summary == "a b c d" && trace.steps.size() == 2 &&
                      trace.steps[0].sentence_index == 0 && trace.steps[1].sentence_index == 1 &&
                      std::abs(trace.steps[1].f1 - 1.0) <= 1e-12,
                  "accumulation pool");
  }

  // 200 random pools: strictly increasing rounds, bounded by the
  // exhaustive best subset.
  Rng rng(96);
  for (int trial = 0; trial < 200; ++trial) {
    SentencePool pool;
    const std::size_t n = rng.next_below(7);
    for (std::size_t i = 0; i < n; ++i) {
      std::string sentence;
      const std::size_t len = 1 + rng.next_below(4);
      for (std::size_t w = 0; w < len; ++w) {
        if (!sentence.empty()) sentence.push_back(' ');
        sentence.push_back(static_cast<char>('a' + rng.next_below(4)));
      }
      pool.sentences.push_back(sentence);
    }
    std::string ref;
    const std::size_t ref_len = 1 + rng.next_below(5);
    for (std::size_t w = 0; w < ref_len; ++w) {
      if (!ref.empty()) ref.push_back(' ');
      ref.push_back(static_cast<char>('a' + rng.next_below(4)));
    }

    const GreedyTrace trace = greedy_best_trace(pool, ref);
    double prev = 0.0;
    for (const auto& step : trace.steps) {
      if (step.f1 <= prev) {
        check.require(false, "non-increasing greedy round at trial " + std::to_string(trial));
        return;
      }
      prev = step.f1;
    }

    const TokenSeq ref_tokens = tokenize(ref);
    double exhaustive = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << pool.sentences.size()); ++mask) {
      TokenSeq joined;
      for (std::size_t i = 0; i < pool.sentences.size(); ++i) {
        if (!(mask & (1ULL << i))) continue;
        for (auto& tok : tokenize(pool.sentences[i])) joined.push_back(std::move(tok));
      }
      exhaustive = std::max(exhaustive, rouge_n(joined, ref_tokens, 1).f1);
    }
    const double greedy_f1 = rouge_score(trace.summary, ref, RougeVariant::n(1)).f1;
    if (greedy_f1 > exhaustive + 1e-12) {
      check.require(false, "greedy beat the exhaustive subset bound at trial " +
                               std::to_string(trial));
      return;
    }
  }
}

// ------------------------------------------------------------------ C8

void criterion_losses(Check& check) {
  const RewardSpec reward{RougeVariant::l(), RougeField::kF1};
  const std::string ref = "t1 t2 t3 t4 t5 t6 t7 t8 t9 t10";
  const std::string greedy = "t1 t2 t3 t4 t5 u1 u2 u3 u4 u5";    // F1 = 0.5
  const std::string sampled = "t1 t2 t3 t4 t5 t6 t7 u1 u2 u3";   // F1 = 0.7
  check.require(std::abs(reward_value(rouge_score(greedy, ref, RougeVariant::l()),
                                      RougeField::kF1) -
                         0.5) <= 1e-12,
                "constructed greedy reward is not 0.5");
  check.require(std::abs(reward_value(rouge_score(sampled, ref, RougeVariant::l()),
                                      RougeField::kF1) -
                         0.7) <= 1e-12,
                "constructed sampled reward is not 0.7");
  const double rl = rl_loss(greedy, sampled, ref, -2.0, reward);
  check.require(std::abs(rl - 0.4) <= 1e-12, "rl_loss worked example (0.4)");

  check.require(rl_loss("same text", "same text", ref, -5.0, reward) == 0.0,
                "identical sequences must give zero loss");

  check.require(std::abs(combined_loss(0.4, 1.0, 0.9) - 0.46) <= 1e-12,
                "combined_loss worked example (0.46)");

  Rng rng(97);
  const auto random_text = [&rng] {
    std::string text;
    const std::size_t len = 1 + rng.next_below(6);
    for (std::size_t w = 0; w < len; ++w) {
      if (!text.empty()) text.push_back(' ');
      text.push_back(static_cast<char>('a' + rng.next_below(3)));
    }
    return text;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string g = random_text();
    const std::string s = random_text();
    const std::string r = random_text();
    const double lp = -rng.next_unit() * 4.0;
    const double forward = rl_loss(g, s, r, lp, reward);
    const double swapped = rl_loss(s, g, r, lp, reward);
    if (std::abs(forward + swapped) > 1e-12) {
      check.require(false, "antisymmetry violated at trial " + std::to_string(trial));
      return;
    }
  }
}

// ------------------------------------------------------------------ C9

struct ZooRun {
  std::string report_text;
  double seconds = 0.0;
};

ZooRun run_zoo_pipeline() {
  const auto started = std::chrono::steady_clock::now();

  const auto corpus = synth_corpus(2024, 1002);
  const std::vector<NoteRecord> train(corpus.begin(), corpus.begin() + 765);
  const std::vector<NoteRecord> eval(corpus.begin() + 765, corpus.end());

  const ModelRegistry registry = build_full_roster(train, 11);
  const int workers = hw_workers();
  const DecodeParams params;  // standard inference defaults

  std::vector<SystemReport> reports;

  // "Individual" rows aggregate the nine members of each family.
  for (const std::string family : {std::string("theta_A-"), std::string("theta_AS-")}) {
    std::vector<SystemReport> members;
    for (int i = 1; i <= 9; ++i) {
      const std::string id = family + std::to_string(i);
      const FieldSpec fields = family == "theta_A-"
                                   ? FieldSpec{Field::kAssessment}
                                   : FieldSpec{Field::kAssessment, Field::kSubjective};
      members.push_back(evaluate_system(
          spec_system(id, EnsembleSpec::leaf(id), registry, fields, params, 1), eval, workers));
    }
    reports.push_back(aggregate_individual(family == "theta_A-" ? "individual (9 theta_A)"
                                                                : "individual (9 theta_AS)",
                                           members));
  }

  for (const auto& fixture : list_fixtures(kFixturesDir)) {
    const EnsembleSpec spec = EnsembleSpec::load(fixture.file);
    const auto violations = validate_spec(spec, registry);
    if (!violations.empty()) {
      throw std::runtime_error("fixture " + fixture.name + ": " + violations.front());
    }
    reports.push_back(evaluate_system(
        spec_system(fixture.name, spec, registry, fixture.eval_fields, params, 1), eval,
        workers));
  }

  std::ostringstream out;
  out << render_table(reports);

  // Ensemble-vs-individual deltas are reported, never asserted.
  const auto find_report = [&](const std::string& name) -> const SystemReport& {
    for (const auto& r : reports) {
      if (r.name == name) return r;
    }
    throw std::runtime_error("missing report row " + name);
  };
  const int rl_f1 = 6;  // RL-F1 column
  char line[160];
  std::snprintf(line, sizeof(line),
                "ensemble-vs-individual RL-F1 delta: tok-ens-theta-a %+0.2f, mbr-theta-a %+0.2f\n",
                find_report("tok-ens-theta-a").mean[rl_f1] -
                    find_report("individual (9 theta_A)").mean[rl_f1],
                find_report("mbr-theta-a").mean[rl_f1] -
                    find_report("individual (9 theta_A)").mean[rl_f1]);
  out << line;

  ZooRun run;
  run.report_text = out.str();
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return run;
}

void criterion_zoo(Check& check) {
  const ZooRun first = run_zoo_pipeline();
  check.require(first.seconds < 120.0,
                "zoo pipeline took " + std::to_string(first.seconds) + "s (budget 120s)");
  check.require(first.report_text.find("±") != std::string::npos,
                "report must contain mean±std cells");
  check.require(first.report_text.find("individual (9 theta_A)") != std::string::npos,
                "report must contain the individual row");
  check.require(first.report_text.find("ensemble-vs-individual") != std::string::npos,
                "report must state the ensemble-vs-individual deltas");

  const ZooRun second = run_zoo_pipeline();
  check.require(first.report_text == second.report_text,
                "pipeline reruns must be byte-identical");
}

// ----------------------------------------------------------------- C10

int run_cli(const std::string& args) {
  const std::string cmd = kCliPath + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

void criterion_cli_determinism(Check& check) {
  const fs::path tmp = fs::temp_directory_path() / "summens-acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const std::string dir = tmp.string();

  // synth: same seed, byte-identical artifacts and manifests.
  check.require(run_cli("synth --seed 41 --size 60 --out " + dir + "/s1.jsonl") == 0,
                "synth run 1 failed");
  check.require(run_cli("synth --seed 41 --size 60 --out " + dir + "/s2.jsonl") == 0,
                "synth run 2 failed");
  check.require(read_bytes(tmp / "s1.jsonl") == read_bytes(tmp / "s2.jsonl"),
                "synth outputs differ across identical runs");
  const std::string manifest = read_bytes(tmp / "s1.jsonl.manifest.json");
  check.require(manifest.find("\"command\"") != std::string::npos, "missing synth manifest");

  // cv: identical outputs at different worker counts.
  {
    const EnsembleSpec spec = EnsembleSpec::mbr(
        {EnsembleSpec::token_ensemble(
             {EnsembleSpec::leaf("theta_A-1"), EnsembleSpec::leaf("theta_A-2")}),
         EnsembleSpec::leaf("theta_A-3")});
    spec.save(tmp / "spec.json");
  }
  const std::string cv_common = "cv --data " + dir + "/s1.jsonl --spec " + dir +
                                "/spec.json --k 3 --seed 9 --fields A --max_length 48";
  check.require(run_cli(cv_common + " --workers 1 --out-dir " + dir + "/cv1") == 0,
                "cv run (1 worker) failed");
  check.require(run_cli(cv_common + " --workers 4 --out-dir " + dir + "/cv2") == 0,
                "cv run (4 workers) failed");
  for (const char* artifact : {"cv.txt", "cv.report.json", "cv.cells.json"}) {
    check.require(read_bytes(tmp / "cv1" / artifact) == read_bytes(tmp / "cv2" / artifact),
                  std::string("cv artifact differs across worker counts: ") + artifact);
  }

  // repeating the exact run reproduces the artifacts byte-for-byte.
  const std::string snapshot = read_bytes(tmp / "cv1" / "cv.report.json");
  check.require(run_cli(cv_common + " --workers 2 --out-dir " + dir + "/cv1") == 0,
                "cv rerun failed");
  check.require(read_bytes(tmp / "cv1" / "cv.report.json") == snapshot,
                "cv rerun changed the report");

  // mbr: byte-identical result files.
  {
    std::ofstream cand(tmp / "cands.txt");
    cand << "acute renal failure\nacute renal failure\nrenal failure\nsomething else\n";
  }
  check.require(run_cli("mbr --candidates " + dir + "/cands.txt --out " + dir + "/m1.json") == 0,
                "mbr run 1 failed");
  check.require(run_cli("mbr --candidates " + dir + "/cands.txt --out " + dir + "/m2.json") == 0,
                "mbr run 2 failed");
  check.require(read_bytes(tmp / "m1.json") == read_bytes(tmp / "m2.json"),
                "mbr outputs differ across identical runs");

  fs::remove_all(tmp);
}

struct Criterion {
  int number;
  std::string name;
  std::function<void(Check&)> run;
  double budget_seconds;  // 0 = unbudgeted
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ROUGE fixture suite (hand-derived pairs, 1e-9)", criterion_rouge_fixtures, 1.0},
      {2, "LCS equals brute-force enumeration (1000 pairs)", criterion_lcs_oracle, 5.0},
      {3, "beam search equals exhaustive search (500 models)", criterion_beam_oracle, 30.0},
      {4, "token-ensemble arithmetic (mean 1e-12, nesting exact)", criterion_token_ensemble, 0.0},
      {5, "MBR equals brute force + consensus properties", criterion_mbr, 30.0},
      {6, "hierarchical identity reductions and membership", criterion_hesm_identities, 0.0},
      {7, "extractive oracles (hand sims + subset bounds)", criterion_extractive_oracles, 0.0},
      {8, "loss formulas (0.4 / 0.46, antisymmetry)", criterion_losses, 0.0},
      {9, "structural reproduction of all ensemble shapes", criterion_zoo, 0.0},
      {10, "CLI byte-determinism at any worker count", criterion_cli_determinism, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto started = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
      check.require(false, "exceeded the " + std::to_string(criterion.budget_seconds) +
                               "s runtime budget");
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%7.2fs", elapsed);
    std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << criterion.number << " ["
              << timing << "]  " << criterion.name;
    if (!check.ok) std::cout << " — " << check.detail;
    std::cout << "\n";
    if (!check.ok) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 acceptance criteria passed\n";
  return 0;
}
