#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "summens/evaluate.hpp"
#include "summens/model_io.hpp"
#include "summens/rng.hpp"
#include "summens/synth.hpp"
#include "summens/zoo.hpp"

using namespace summens;

namespace {
const std::filesystem::path kFixturesDir = SUMMENS_FIXTURES_DIR;
}

TEST_CASE("build_roster trains distinct deterministic members") {
  const auto corpus = synth_corpus(19, 40);
  std::vector<std::uint64_t> seeds_a, seeds_as;
  for (std::uint64_t i = 1; i <= 3; ++i) seeds_a.push_back(mix_seed(2, i));
  for (std::uint64_t i = 1; i <= 2; ++i) seeds_as.push_back(mix_seed(2, 100 + i));

  const ModelRegistry registry = build_roster(corpus, seeds_a, seeds_as);
  CHECK(registry.ids() == std::vector<std::string>{"theta_A-1", "theta_A-2", "theta_A-3",
                                                   "theta_AS-1", "theta_AS-2"});

  // Re-building with the same seeds gives byte-identical models.
  const ModelRegistry again = build_roster(corpus, seeds_a, seeds_as);
  std::set<std::string> serialized;
  for (const auto& id : registry.ids()) {
    CHECK(serialize_model(*registry.find(id)) == serialize_model(*again.find(id)));
    serialized.insert(serialize_model(*registry.find(id)));
  }
  // Distinct shard seeds give pairwise-distinct members.
  CHECK(serialized.size() == registry.size());

  CHECK_THROWS_AS(build_roster({}, seeds_a, seeds_as), std::invalid_argument);
}

TEST_CASE("build_models_for trains exactly the requested ids") {
  const auto corpus = synth_corpus(23, 40);
  const std::vector<std::string> ids{"theta_A-2", "theta_AS-1", "theta_A-wavg3",
                                     "theta_A-rl-1", "theta_A-v2-1"};
  const ModelRegistry registry = build_models_for(ids, corpus, 5);
  CHECK(registry.size() == ids.size());
  for (const auto& id : ids) CHECK(registry.contains(id));

  // Consistency with the full roster: same id, same bytes.
  const ModelRegistry full = build_full_roster(corpus, 5);
  for (const auto& id : ids) {
    CHECK(serialize_model(*registry.find(id)) == serialize_model(*full.find(id)));
  }

  const std::vector<std::string> unknown{"theta_Q-1"};
  CHECK_THROWS_AS(build_models_for(unknown, corpus, 5), std::invalid_argument);
}

TEST_CASE("full roster covers every fixture") {
  const auto corpus = synth_corpus(29, 50);
  const ModelRegistry registry = build_full_roster(corpus, 3);
  CHECK(registry.size() == 36);

  const auto fixtures = list_fixtures(kFixturesDir);
  CHECK(fixtures.size() == 15);
  std::set<std::string> names;
  for (const auto& fixture : fixtures) {
    names.insert(fixture.name);
    const EnsembleSpec spec = EnsembleSpec::load(fixture.file);
    const auto violations = validate_spec(spec, registry);
    CHECK_MESSAGE(violations.empty(), fixture.name, ": ",
                  violations.empty() ? "" : violations.front());
    for (const auto& id : fixture.required_models) CHECK(registry.contains(id));
  }
  CHECK(names.count("final-hesm") == 1);
  CHECK(names.count("hesm-unpack-1") == 1);
  CHECK(names.count("hesm-unpack-2") == 1);
}

TEST_CASE("unpacked pools have the documented member counts") {
  const auto fixtures = list_fixtures(kFixturesDir);
  for (const auto& fixture : fixtures) {
    const EnsembleSpec spec = EnsembleSpec::load(fixture.file);
    if (fixture.name == "hesm-unpack-1") {
      CHECK(spec.kind == SpecKind::kMbrSelect);
      CHECK(spec.children.size() == 18);
    }
    if (fixture.name == "hesm-unpack-2") {
      CHECK(spec.kind == SpecKind::kMbrSelect);
      CHECK(spec.children.size() == 34);
      // All 34 children are distinct individual systems.
      std::set<std::string> ids;
      for (const auto& child : spec.children) {
        CHECK(child.kind == SpecKind::kLeaf);
        ids.insert(child.model_id);
      }
      CHECK(ids.size() == 34);
    }
  }
}

TEST_CASE("the mbr=3 hierarchical shape partitions the roster") {
  const auto fixtures = list_fixtures(kFixturesDir);
  for (const auto& fixture : fixtures) {
    if (fixture.name != "hesm-3-3-mbr3") continue;
    const EnsembleSpec spec = EnsembleSpec::load(fixture.file);
    REQUIRE(spec.children.size() == 3);
    std::set<std::string> seen;
    for (const auto& group : spec.children) {
      REQUIRE(group.kind == SpecKind::kTokenEnsemble);
      CHECK(group.children.size() == 6);
      for (const auto& member : group.children) {
        // Non-overlap: every member appears in exactly one group.
        CHECK(seen.insert(member.model_id).second);
      }
    }
    CHECK(seen.size() == 18);
  }
}

TEST_CASE("fixtures execute end-to-end and return non-empty summaries") {
  const auto corpus = synth_corpus(31, 40);
  const ModelRegistry registry = build_full_roster(corpus, 7);
  const auto eval_records = synth_corpus(32, 3);
  DecodeParams params;
  params.max_length = 32;

  for (const auto& fixture : list_fixtures(kFixturesDir)) {
    const EnsembleSpec spec = EnsembleSpec::load(fixture.file);
    for (const auto& record : eval_records) {
      const auto model = registry.find(fixture.required_models.front());
      const TokenIds input = model->vocab().encode(assemble_input(record, fixture.eval_fields));
      const std::string output = evaluate_spec(spec, registry, input, params, 1, 2);
      CHECK(!output.empty());
    }
  }
}
