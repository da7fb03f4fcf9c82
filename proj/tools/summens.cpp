// summens: command-line workbench for ensemble summarization decoding.
//
// Subcommands: rouge, oracle, train, decode, mbr, hesm, cv, synth,
// report. Every run writes a manifest (resolved configuration plus input
// digests) next to its primary output. All randomness flows from --seed.
//
// Exit codes: 0 success; 2 unreadable/unwritable files; 3 invalid
// inputs, parameters, or ensemble specs; 4 internal errors. Flag parse
// errors use CLI11's own distinct codes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "summens/combine.hpp"
#include "summens/copymix.hpp"
#include "summens/data.hpp"
#include "summens/decode.hpp"
#include "summens/ensemble_spec.hpp"
#include "summens/evaluate.hpp"
#include "summens/losses.hpp"
#include "summens/mbr.hpp"
#include "summens/model_io.hpp"
#include "summens/parallel.hpp"
#include "summens/rng.hpp"
#include "summens/rouge.hpp"
#include "summens/synth.hpp"
#include "summens/zoo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitInternal = 4;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Resolved config + input digests; enough to reproduce the run exactly.
// The worker count is deliberately omitted: outputs are identical at any
// worker count.
void write_manifest(const fs::path& primary_output, const std::string& command, json config,
                    const std::vector<fs::path>& inputs) {
  json inputs_json = json::object();
  for (const auto& path : inputs) inputs_json[path.string()] = fnv1a_hex(read_file(path));
  const json manifest{{"command", command}, {"config", std::move(config)}, {"inputs", inputs_json}};
  write_file(primary_output.string() + ".manifest.json", manifest.dump(2) + "\n");
}

struct DecodeFlags {
  summens::DecodeParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--num_beams", params.num_beams, "Beam width");
    cmd->add_option("--length_penalty", params.length_penalty, "Length penalty exponent");
    cmd->add_option("--min_length", params.min_length, "Minimum generated length");
    cmd->add_option("--max_length", params.max_length, "Maximum generated length");
    cmd->add_option("--no_repeat_ngram_size", params.no_repeat_ngram_size,
                    "Ban n-gram repetitions of this size (0 disables)");
  }
};

summens::ModelRegistry load_model_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a model directory: " + dir.string());
  std::map<std::string, fs::path> files;  // sorted for deterministic registration
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files[entry.path().stem().string()] = entry.path();
  }
  summens::ModelRegistry registry;
  for (const auto& [id, path] : files) registry.add(id, summens::load_model(path));
  return registry;
}

void write_reports(const fs::path& base, std::span<const summens::SystemReport> reports) {
  write_file(fs::path(base.string() + ".txt"), summens::render_table(reports));
  write_file(fs::path(base.string() + ".cells.json"),
             summens::report_json(reports).dump(2) + "\n");
  json full = json::array();
  for (const auto& r : reports) full.push_back(r.to_json());
  write_file(fs::path(base.string() + ".report.json"), full.dump(2) + "\n");
}

// ---------------------------------------------------------------- rouge

struct RougeArgs {
  std::string hyp_file, ref_file, variant = "L", out;
};

int run_rouge(const RougeArgs& args) {
  const std::string hyp = read_file(args.hyp_file);
  const std::string ref = read_file(args.ref_file);
  const auto variant = summens::RougeVariant::parse(args.variant);
  const summens::RougeScore score = summens::rouge_score(hyp, ref, variant);
  char line[128];
  std::snprintf(line, sizeof(line), "precision %.6f recall %.6f f1 %.6f\n", score.precision,
                score.recall, score.f1);
  std::cout << line;
  if (!args.out.empty()) {
    const json j{{"variant", variant.to_string()},
                 {"precision", score.precision},
                 {"recall", score.recall},
                 {"f1", score.f1}};
    write_file(args.out, j.dump(2) + "\n");
    write_manifest(args.out, "rouge",
                   {{"hyp", args.hyp_file}, {"ref", args.ref_file}, {"variant", args.variant}},
                   {args.hyp_file, args.ref_file});
  }
  return kExitOk;
}

// --------------------------------------------------------------- oracle

struct OracleArgs {
  std::string mode = "greedy-best", data, out;
  int workers = 1;
};

int run_oracle(const OracleArgs& args) {
  const auto records = summens::load_jsonl(args.data);
  const auto mode = args.mode == "all-overlap" ? summens::OracleMode::kAllOverlap
                                               : summens::OracleMode::kGreedyBest;
  if (args.mode != "all-overlap" && args.mode != "greedy-best") {
    throw std::invalid_argument("oracle: --mode must be all-overlap or greedy-best");
  }
  const auto system = summens::oracle_system("oracle-" + args.mode, mode);
  const auto report = summens::evaluate_system(system, records, args.workers);

  std::string lines;
  for (std::size_t i = 0; i < records.size(); ++i) {
    lines += json{{"id", records[i].id}, {"output", report.outputs[i]}}.dump() + "\n";
  }
  write_file(args.out, lines);
  const summens::SystemReport table[] = {report};
  std::cout << summens::render_table(table);
  write_reports(args.out, table);
  write_manifest(args.out, "oracle", {{"mode", args.mode}, {"data", args.data}}, {args.data});
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data, fields = "A", out, out_dir, roster;
  int order = 3;
  double alpha = 0.1;
  double eos_share = 0.1;
  std::vector<double> lambda_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::uint64_t seed = 1;
  int num_a = 9, num_as = 9;
};

summens::TrainOptions train_options(const TrainArgs& args) {
  summens::TrainOptions opts;
  opts.config.order = args.order;
  opts.config.alpha = args.alpha;
  opts.config.eos_share = args.eos_share;
  opts.lambda_grid = args.lambda_grid;
  return opts;
}

int run_train(const TrainArgs& args) {
  const auto records = summens::load_jsonl(args.data);
  const auto options = train_options(args);
  const json config{{"data", args.data},         {"fields", args.fields},
                    {"order", args.order},       {"alpha", args.alpha},
                    {"eos_share", args.eos_share}, {"lambda_grid", args.lambda_grid},
                    {"seed", args.seed},         {"roster", args.roster}};

  if (!args.roster.empty()) {
    if (args.out_dir.empty()) throw std::invalid_argument("train --roster needs --out-dir");
    summens::ModelRegistry registry;
    if (args.roster == "full") {
      registry = summens::build_full_roster(records, args.seed, options);
    } else if (args.roster == "basic") {
      std::vector<std::uint64_t> seeds_a, seeds_as;
      for (int i = 1; i <= args.num_a; ++i) {
        seeds_a.push_back(summens::mix_seed(args.seed, static_cast<std::uint64_t>(i)));
      }
      for (int i = 1; i <= args.num_as; ++i) {
        seeds_as.push_back(summens::mix_seed(args.seed, 100 + static_cast<std::uint64_t>(i)));
      }
      registry = summens::build_roster(records, seeds_a, seeds_as, options);
    } else {
      throw std::invalid_argument("train: --roster must be 'full' or 'basic'");
    }
    fs::create_directories(args.out_dir);
    for (const auto& id : registry.ids()) {
      summens::save_model(fs::path(args.out_dir) / (id + ".json"), *registry.find(id));
    }
    std::cout << "trained " << registry.size() << " models into " << args.out_dir << "\n";
    write_manifest(fs::path(args.out_dir) / "roster", "train", config, {args.data});
    return kExitOk;
  }

  if (args.out.empty()) throw std::invalid_argument("train needs --out (or --roster/--out-dir)");
  std::vector<summens::TrainPair> pairs;
  const auto fields = summens::parse_field_spec(args.fields);
  for (const auto& r : records) {
    if (!r.summary) throw std::invalid_argument("record '" + r.id + "' has no summary");
    pairs.emplace_back(summens::assemble_input(r, fields), *r.summary);
  }
  const auto model = summens::train_copymix(pairs, options, args.seed);
  summens::save_model(args.out, model);
  std::cout << "trained model (lambda " << model.lambda() << ") -> " << args.out << "\n";
  write_manifest(args.out, "train", config, {args.data});
  return kExitOk;
}

// --------------------------------------------------------------- decode

struct DecodeArgs {
  std::string model, algo = "beam", text, data, fields = "A", out;
  std::uint64_t seed = 1;
  int workers = 1;
  DecodeFlags decode;
};

int run_decode(const DecodeArgs& args) {
  const auto model = summens::load_model(args.model);
  args.decode.params.validate();

  const auto decode_one = [&](const std::string& input_text) {
    const summens::TokenIds input = model->vocab().encode(input_text);
    summens::Hypothesis hyp;
    if (args.algo == "beam") {
      hyp = summens::beam_search(*model, input, args.decode.params).front();
    } else if (args.algo == "greedy") {
      hyp = summens::greedy_search(*model, input, args.decode.params);
    } else if (args.algo == "sample") {
      hyp = summens::sample_sequence(*model, input, args.decode.params, args.seed);
    } else {
      throw std::invalid_argument("decode: --algo must be beam, greedy, or sample");
    }
    return std::pair<std::string, double>(model->vocab().decode(hyp.ids), hyp.logprob);
  };

  if (!args.text.empty() || args.data.empty()) {
    const auto [output, logprob] = decode_one(args.text);
    std::cout << output << "\n";
    return kExitOk;
  }

  const auto records = summens::load_jsonl(args.data);
  const auto fields = summens::parse_field_spec(args.fields);
  std::vector<std::string> outputs(records.size());
  summens::parallel_for(records.size(), args.workers, [&](std::size_t i) {
    outputs[i] = decode_one(summens::assemble_input(records[i], fields)).first;
  });
  std::string lines;
  for (std::size_t i = 0; i < records.size(); ++i) {
    lines += json{{"id", records[i].id}, {"output", outputs[i]}}.dump() + "\n";
  }
  write_file(args.out, lines);
  write_manifest(args.out, "decode",
                 {{"model", args.model},
                  {"algo", args.algo},
                  {"data", args.data},
                  {"fields", args.fields},
                  {"seed", args.seed},
                  {"decode", args.decode.params.to_json()}},
                 {args.model, args.data});
  return kExitOk;
}

// ------------------------------------------------------------------ mbr

struct MbrArgs {
  std::string candidates, format = "lines", variant = "L", field = "f1", out;
};

int run_mbr(const MbrArgs& args) {
  summens::CandidatePool pool;
  const std::string bytes = read_file(args.candidates);
  std::istringstream in(bytes);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (args.format == "jsonl") {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument("candidates line " + std::to_string(line_no) + ": " + e.what());
      }
      pool.texts.push_back(j.at("text").get<std::string>());
      pool.provenance.push_back(j.value("system", ""));
    } else {
      pool.texts.push_back(line);
      pool.provenance.push_back("");
    }
  }
  if (pool.texts.empty()) throw std::invalid_argument("mbr: no candidates");

  summens::RewardSpec reward;
  reward.variant = summens::RougeVariant::parse(args.variant);
  reward.field = summens::parse_rouge_field(args.field);
  const summens::MbrResult result = summens::mbr_select(pool, reward);

  const json out_json{{"selected_index", result.selected_index},
                      {"selected", pool.texts[result.selected_index]},
                      {"consensus_scores", result.consensus_scores},
                      {"reward_matrix", result.reward_matrix}};
  std::cout << pool.texts[result.selected_index] << "\n";
  if (!args.out.empty()) {
    write_file(args.out, out_json.dump(2) + "\n");
    write_manifest(args.out, "mbr",
                   {{"candidates", args.candidates},
                    {"format", args.format},
                    {"variant", args.variant},
                    {"field", args.field}},
                   {args.candidates});
  }
  return kExitOk;
}

// ----------------------------------------------------------------- hesm

struct HesmArgs {
  std::string spec, fixture, fixtures_dir = "fixtures", data, models, train_data;
  std::string fields = "A+S", out;
  std::uint64_t seed = 1;
  int workers = 1;
  DecodeFlags decode;
};

summens::EnsembleSpec resolve_spec(const HesmArgs& args, summens::FieldSpec* fixture_fields) {
  if (!args.fixture.empty()) {
    for (const auto& f : summens::list_fixtures(args.fixtures_dir)) {
      if (f.name == args.fixture) {
        if (fixture_fields) *fixture_fields = f.eval_fields;
        return summens::EnsembleSpec::load(f.file);
      }
    }
    throw std::invalid_argument("unknown fixture '" + args.fixture + "'");
  }
  if (args.spec.empty()) throw std::invalid_argument("hesm: need --spec or --fixture");
  return summens::EnsembleSpec::load(args.spec);
}

summens::ModelRegistry resolve_registry(const HesmArgs& args, const summens::EnsembleSpec& spec) {
  if (!args.models.empty()) return load_model_dir(args.models);
  if (!args.train_data.empty()) {
    const auto corpus = summens::load_jsonl(args.train_data);
    const auto ids = spec.referenced_models();
    return summens::build_models_for(ids, corpus, args.seed);
  }
  throw std::invalid_argument("hesm: need --models or --train-data");
}

int run_hesm_validate(const HesmArgs& args) {
  const auto spec = resolve_spec(args, nullptr);
  const auto registry = resolve_registry(args, spec);
  const auto violations = summens::validate_spec(spec, registry);
  if (violations.empty()) {
    std::cout << "ok: " << summens::describe_spec(spec) << "\n";
    return kExitOk;
  }
  for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
  return kExitInvalid;
}

int run_hesm_run(const HesmArgs& args) {
  summens::FieldSpec fields = summens::parse_field_spec(args.fields);
  const auto spec = resolve_spec(args, &fields);
  const auto registry = resolve_registry(args, spec);
  const auto violations = summens::validate_spec(spec, registry);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return kExitInvalid;
  }
  const auto records = summens::load_jsonl(args.data);

  const auto system = summens::spec_system(summens::describe_spec(spec), spec, registry, fields,
                                           args.decode.params, args.seed);
  const bool has_refs =
      std::all_of(records.begin(), records.end(), [](const auto& r) { return r.summary.has_value(); });

  std::vector<std::string> outputs(records.size());
  if (has_refs) {
    const auto report = summens::evaluate_system(system, records, args.workers);
    outputs = report.outputs;
    const summens::SystemReport table[] = {report};
    std::cout << summens::render_table(table);
    write_reports(args.out, table);
  } else {
    summens::parallel_for(records.size(), args.workers,
                          [&](std::size_t i) { outputs[i] = system.run(records[i]); });
  }

  std::string lines;
  for (std::size_t i = 0; i < records.size(); ++i) {
    lines += json{{"id", records[i].id}, {"output", outputs[i]}}.dump() + "\n";
  }
  write_file(args.out, lines);

  std::vector<fs::path> inputs{args.data};
  json config{{"spec", args.spec},         {"fixture", args.fixture}, {"data", args.data},
              {"fields", summens::to_string(fields)}, {"seed", args.seed},
              {"decode", args.decode.params.to_json()}};
  if (!args.spec.empty()) inputs.push_back(args.spec);
  write_manifest(args.out, "hesm-run", config, inputs);
  return kExitOk;
}

// ------------------------------------------------------------------- cv

struct CvArgs {
  std::string data, spec, fields = "A", out_dir = "cv-out";
  int k = 5;
  std::uint64_t seed = 1;
  int workers = 1;
  TrainArgs train;  // reuses order/alpha/eos/lambda-grid defaults
  DecodeFlags decode;
};

int run_cv(const CvArgs& args) {
  const auto records = summens::load_jsonl(args.data);
  const auto spec = summens::EnsembleSpec::load(args.spec);
  const auto fields = summens::parse_field_spec(args.fields);
  const auto plan = summens::kfold_split(records, args.k, args.seed);
  const auto options = train_options(args.train);

  std::vector<summens::SystemReport> fold_reports;
  std::vector<std::array<double, summens::kNumMetrics>> pooled_rows;
  std::vector<std::string> pooled_outputs;
  for (int fold = 0; fold < args.k; ++fold) {
    std::vector<summens::NoteRecord> train_split, eval_split;
    for (const auto& r : records) {
      (plan.assignment.at(r.id) == fold ? eval_split : train_split).push_back(r);
    }
    const auto registry = summens::build_models_for(spec.referenced_models(), train_split,
                                                    args.seed, options);
    const auto violations = summens::validate_spec(spec, registry);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
      return kExitInvalid;
    }
    const auto system = summens::spec_system("fold-" + std::to_string(fold), spec, registry,
                                             fields, args.decode.params, args.seed);
    auto report = summens::evaluate_system(system, eval_split, args.workers);
    for (const auto& row : report.per_record) pooled_rows.push_back(row);
    for (const auto& text : report.outputs) pooled_outputs.push_back(text);
    fold_reports.push_back(std::move(report));
  }
  fold_reports.push_back(summens::report_from_rows("cv-aggregate", std::move(pooled_rows),
                                                   std::move(pooled_outputs)));

  fs::create_directories(args.out_dir);
  write_reports(fs::path(args.out_dir) / "cv", fold_reports);
  std::cout << summens::render_table(fold_reports);
  write_manifest(fs::path(args.out_dir) / "cv", "cv",
                 {{"data", args.data},
                  {"spec", args.spec},
                  {"fields", args.fields},
                  {"k", args.k},
                  {"seed", args.seed},
                  {"decode", args.decode.params.to_json()},
                  {"order", args.train.order},
                  {"alpha", args.train.alpha},
                  {"eos_share", args.train.eos_share},
                  {"lambda_grid", args.train.lambda_grid}},
                 {args.data, args.spec});
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::uint64_t seed = 1;
  std::size_t size = 100;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  const auto records = summens::synth_corpus(args.seed, args.size);
  summens::save_jsonl(args.out, records);
  std::cout << "wrote " << records.size() << " records -> " << args.out << "\n";
  write_manifest(args.out, "synth", {{"seed", args.seed}, {"size", args.size}}, {});
  return kExitOk;
}

// --------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out;
};

int run_report(const ReportArgs& args) {
  std::vector<summens::SystemReport> reports;
  for (const auto& file : args.inputs) {
    const json j = json::parse(read_file(file));
    if (j.is_array()) {
      for (const auto& item : j) reports.push_back(summens::SystemReport::from_json(item));
    } else {
      reports.push_back(summens::SystemReport::from_json(j));
    }
  }
  const std::string table = summens::render_table(reports);
  std::cout << table;
  if (!args.out.empty()) {
    write_file(args.out, table);
    std::vector<fs::path> inputs(args.inputs.begin(), args.inputs.end());
    write_manifest(args.out, "report", {{"inputs", args.inputs}}, inputs);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summens: ensemble summarization decoding workbench"};
  app.require_subcommand(1);

  RougeArgs rouge_args;
  auto* rouge_cmd = app.add_subcommand("rouge", "Score a hypothesis file against a reference file");
  rouge_cmd->add_option("--hyp", rouge_args.hyp_file, "Hypothesis text file")->required();
  rouge_cmd->add_option("--ref", rouge_args.ref_file, "Reference text file")->required();
  rouge_cmd->add_option("--variant", rouge_args.variant, "ROUGE variant: L or an order (1, 2, ...)");
  rouge_cmd->add_option("--out", rouge_args.out, "Optional JSON output path");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Extractive oracle baselines");
  oracle_cmd->add_option("--mode", oracle_args.mode, "all-overlap or greedy-best");
  oracle_cmd->add_option("--data", oracle_args.data, "JSONL notes with references")->required();
  oracle_cmd->add_option("--out", oracle_args.out, "JSONL output path")->required();
  oracle_cmd->add_option("--workers", oracle_args.workers, "Worker threads");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train copy-mixture models");
  train_cmd->add_option("--data", train_args.data, "JSONL training corpus")->required();
  train_cmd->add_option("--fields", train_args.fields, "Input fields, e.g. A or A+S");
  train_cmd->add_option("--out", train_args.out, "Model output path (single model)");
  train_cmd->add_option("--out-dir", train_args.out_dir, "Roster output directory");
  train_cmd->add_option("--roster", train_args.roster, "Train a roster: 'basic' or 'full'");
  train_cmd->add_option("--num-a", train_args.num_a, "Basic roster: number of {A} members");
  train_cmd->add_option("--num-as", train_args.num_as, "Basic roster: number of {A}+{S} members");
  train_cmd->add_option("--order", train_args.order, "Backoff n-gram order");
  train_cmd->add_option("--alpha", train_args.alpha, "Unigram smoothing");
  train_cmd->add_option("--eos-share", train_args.eos_share, "Copy-distribution EOS share");
  train_cmd->add_option("--lambda-grid", train_args.lambda_grid, "Copy-weight grid");
  train_cmd->add_option("--seed", train_args.seed, "Base seed");

  DecodeArgs decode_args;
  auto* decode_cmd = app.add_subcommand("decode", "Decode with a trained model");
  decode_cmd->add_option("--model", decode_args.model, "Model file")->required();
  decode_cmd->add_option("--algo", decode_args.algo, "beam, greedy, or sample");
  decode_cmd->add_option("--text", decode_args.text, "Raw input text (single decode)");
  decode_cmd->add_option("--data", decode_args.data, "JSONL notes to decode");
  decode_cmd->add_option("--fields", decode_args.fields, "Input fields for --data");
  decode_cmd->add_option("--out", decode_args.out, "JSONL output path for --data");
  decode_cmd->add_option("--seed", decode_args.seed, "Sampling seed");
  decode_cmd->add_option("--workers", decode_args.workers, "Worker threads");
  decode_args.decode.attach(decode_cmd);

  MbrArgs mbr_args;
  auto* mbr_cmd = app.add_subcommand("mbr", "Consensus-select from a candidate pool");
  mbr_cmd->add_option("--candidates", mbr_args.candidates, "Candidates file")->required();
  mbr_cmd->add_option("--format", mbr_args.format, "lines (default) or jsonl");
  mbr_cmd->add_option("--variant", mbr_args.variant, "Reward ROUGE variant");
  mbr_cmd->add_option("--field", mbr_args.field, "Reward field: f1, precision, recall");
  mbr_cmd->add_option("--out", mbr_args.out, "Result JSON path");

  HesmArgs hesm_args;
  auto* hesm_cmd = app.add_subcommand("hesm", "Hierarchical ensemble evaluation");
  hesm_cmd->require_subcommand(1);
  auto* hesm_run = hesm_cmd->add_subcommand("run", "Execute a spec over a dataset");
  auto* hesm_validate = hesm_cmd->add_subcommand("validate", "Validate a spec against models");
  for (CLI::App* sub : {hesm_run, hesm_validate}) {
    sub->add_option("--spec", hesm_args.spec, "Ensemble spec file");
    sub->add_option("--fixture", hesm_args.fixture, "Named fixture instead of --spec");
    sub->add_option("--fixtures-dir", hesm_args.fixtures_dir, "Fixtures directory");
    sub->add_option("--models", hesm_args.models, "Directory of trained model files");
    sub->add_option("--train-data", hesm_args.train_data, "Train required models from this JSONL");
    sub->add_option("--seed", hesm_args.seed, "Seed");
  }
  hesm_run->add_option("--data", hesm_args.data, "JSONL notes to summarize")->required();
  hesm_run->add_option("--fields", hesm_args.fields, "Input fields");
  hesm_run->add_option("--out", hesm_args.out, "JSONL output path")->required();
  hesm_run->add_option("--workers", hesm_args.workers, "Worker threads");
  hesm_args.decode.attach(hesm_run);

  CvArgs cv_args;
  auto* cv_cmd = app.add_subcommand("cv", "K-fold cross-validation of a spec");
  cv_cmd->add_option("--data", cv_args.data, "JSONL corpus with references")->required();
  cv_cmd->add_option("--spec", cv_args.spec, "Ensemble spec file")->required();
  cv_cmd->add_option("--fields", cv_args.fields, "Input fields");
  cv_cmd->add_option("--k", cv_args.k, "Fold count");
  cv_cmd->add_option("--seed", cv_args.seed, "Seed");
  cv_cmd->add_option("--out-dir", cv_args.out_dir, "Output directory");
  cv_cmd->add_option("--workers", cv_args.workers, "Worker threads");
  cv_cmd->add_option("--order", cv_args.train.order, "Backoff n-gram order");
  cv_cmd->add_option("--alpha", cv_args.train.alpha, "Unigram smoothing");
  cv_cmd->add_option("--eos-share", cv_args.train.eos_share, "Copy-distribution EOS share");
  cv_cmd->add_option("--lambda-grid", cv_args.train.lambda_grid, "Copy-weight grid");
  cv_args.decode.attach(cv_cmd);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--seed", synth_args.seed, "Seed");
  synth_cmd->add_option("--size", synth_args.size, "Record count");
  synth_cmd->add_option("--out", synth_args.out, "JSONL output path")->required();

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Merge saved reports into one table");
  report_cmd->add_option("--inputs", report_args.inputs, "Report JSON files")->required();
  report_cmd->add_option("--out", report_args.out, "Table output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rouge_cmd->parsed()) return run_rouge(rouge_args);
    if (oracle_cmd->parsed()) return run_oracle(oracle_args);
    if (train_cmd->parsed()) return run_train(train_args);
    if (decode_cmd->parsed()) return run_decode(decode_args);
    if (mbr_cmd->parsed()) return run_mbr(mbr_args);
    if (hesm_cmd->parsed()) {
      return hesm_run->parsed() ? run_hesm_run(hesm_args) : run_hesm_validate(hesm_args);
    }
    if (cv_cmd->parsed()) return run_cv(cv_args);
    if (synth_cmd->parsed()) return run_synth(synth_args);
    if (report_cmd->parsed()) return run_report(report_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
