#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

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
#include "summens/text.hpp"
#include "summens/zoo.hpp"

namespace py = pybind11;
using namespace summens;

namespace {

RewardSpec make_reward(const std::string& variant, const std::string& field) {
  RewardSpec spec;
  spec.variant = RougeVariant::parse(variant);
  spec.field = parse_rouge_field(field);
  return spec;
}

// Python-side handle over any sequence model.
struct PyModel {
  std::shared_ptr<const SequenceModel> model;

  const Vocab& vocab() const { return model->vocab(); }
};

DecodeParams params_from_kwargs(int num_beams, double length_penalty, int min_length,
                                int max_length, int no_repeat_ngram_size) {
  DecodeParams p;
  p.num_beams = num_beams;
  p.length_penalty = length_penalty;
  p.min_length = min_length;
  p.max_length = max_length;
  p.no_repeat_ngram_size = no_repeat_ngram_size;
  p.validate();
  return p;
}

NoteRecord record_from_dict(const py::dict& d) {
  NoteRecord r;
  r.id = d["id"].cast<std::string>();
  r.assessment = d["assessment"].cast<std::string>();
  r.subjective = d["subjective"].cast<std::string>();
  r.objective = d["objective"].cast<std::string>();
  if (d.contains("summary")) r.summary = d["summary"].cast<std::string>();
  return r;
}

py::dict record_to_dict(const NoteRecord& r) {
  py::dict d;
  d["id"] = r.id;
  d["assessment"] = r.assessment;
  d["subjective"] = r.subjective;
  d["objective"] = r.objective;
  if (r.summary) d["summary"] = *r.summary;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ensemble summarization decoding workbench";

  // text
  m.def("tokenize", [](const std::string& s) { return tokenize(s); });
  m.def("split_sentences", [](const std::string& s) { return split_sentences(s); });
  m.def("ngrams", [](const std::vector<std::string>& tokens, int n) {
    py::dict out;
    for (const auto& [gram, count] : ngrams(tokens, n).counts) {
      out[py::tuple(py::cast(gram))] = count;
    }
    return out;
  });

  // rouge
  py::class_<RougeScore>(m, "RougeScore")
      .def_readonly("precision", &RougeScore::precision)
      .def_readonly("recall", &RougeScore::recall)
      .def_readonly("f1", &RougeScore::f1)
      .def("__repr__", [](const RougeScore& s) {
        return "RougeScore(precision=" + std::to_string(s.precision) +
               ", recall=" + std::to_string(s.recall) + ", f1=" + std::to_string(s.f1) + ")";
      });
  m.def(
      "rouge_score",
      [](const std::string& hyp, const std::string& ref, const std::string& variant) {
        return rouge_score(hyp, ref, RougeVariant::parse(variant));
      },
      py::arg("hyp"), py::arg("ref"), py::arg("variant") = "L");
  m.def("lcs_length", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return lcs_length(a, b);
  });

  // losses
  m.def(
      "rl_loss",
      [](const std::string& greedy, const std::string& sampled, const std::string& reference,
         double sampled_logprob, const std::string& variant, const std::string& field) {
        return rl_loss(greedy, sampled, reference, sampled_logprob, make_reward(variant, field));
      },
      py::arg("greedy"), py::arg("sampled"), py::arg("reference"), py::arg("sampled_logprob"),
      py::arg("variant") = "L", py::arg("field") = "f1");
  m.def("combined_loss", &combined_loss, py::arg("l_rl"), py::arg("l_ml"), py::arg("gamma") = 0.9);

  // mbr
  m.def(
      "mbr_select",
      [](const std::vector<std::string>& candidates, const std::string& variant,
         const std::string& field) {
        CandidatePool pool;
        pool.texts = candidates;
        const MbrResult r = mbr_select(pool, make_reward(variant, field));
        py::dict out;
        out["selected_index"] = r.selected_index;
        out["selected"] = candidates[r.selected_index];
        out["consensus_scores"] = r.consensus_scores;
        out["reward_matrix"] = r.reward_matrix;
        return out;
      },
      py::arg("candidates"), py::arg("variant") = "L", py::arg("field") = "f1");

  // extractive oracles
  m.def("all_overlap", [](const std::vector<std::string>& sentences, const std::string& ref) {
    return all_overlap(SentencePool{sentences}, ref);
  });
  m.def("greedy_best", [](const std::vector<std::string>& sentences, const std::string& ref) {
    return greedy_best(SentencePool{sentences}, ref);
  });

  // models
  py::class_<PyModel>(m, "Model")
      .def_property_readonly("vocab_size",
                             [](const PyModel& self) { return self.vocab().size(); })
      .def("encode", [](const PyModel& self, const std::string& text) {
        return self.vocab().encode(text);
      })
      .def("decode",
           [](const PyModel& self, const TokenIds& ids) { return self.vocab().decode(ids); })
      .def("next_distribution",
           [](const PyModel& self, const TokenIds& input, const TokenIds& prefix) {
             return self.model->next_distribution(input, prefix).probs;
           })
      .def("sequence_logprob", [](const PyModel& self, const TokenIds& input, const TokenIds& y) {
        return sequence_logprob(*self.model, input, y);
      });

  m.def(
      "train_copymix",
      [](const std::vector<std::pair<std::string, std::string>>& corpus, int order, double alpha,
         double eos_share, const std::vector<double>& lambda_grid, std::uint64_t seed) {
        TrainOptions opts;
        opts.config.order = order;
        opts.config.alpha = alpha;
        opts.config.eos_share = eos_share;
        if (!lambda_grid.empty()) opts.lambda_grid = lambda_grid;
        return PyModel{std::make_shared<const CopyMixModel>(train_copymix(corpus, opts, seed))};
      },
      py::arg("corpus"), py::arg("order") = 3, py::arg("alpha") = 0.1, py::arg("eos_share") = 0.1,
      py::arg("lambda_grid") = std::vector<double>{}, py::arg("seed") = 0);
  m.def("token_ensemble", [](const std::vector<PyModel>& members) {
    std::vector<std::shared_ptr<const SequenceModel>> models;
    for (const auto& member : members) models.push_back(member.model);
    return PyModel{std::make_shared<const TokenEnsembleModel>(std::move(models))};
  });
  m.def("weight_average", [](const std::vector<PyModel>& members) {
    std::vector<const CopyMixModel*> models;
    for (const auto& member : members) {
      const auto* cm = dynamic_cast<const CopyMixModel*>(member.model.get());
      if (!cm) throw std::invalid_argument("weight_average: members must be copymix models");
      models.push_back(cm);
    }
    return PyModel{std::make_shared<const CopyMixModel>(weight_average(models))};
  });
  m.def("save_model", [](const PyModel& model, const std::filesystem::path& path) {
    save_model(path, *model.model);
  });
  m.def("load_model",
        [](const std::filesystem::path& path) { return PyModel{load_model(path)}; });

  // decoding
  const auto decode_args = [](py::module_& mod, const char* name, auto fn) {
    mod.def(name, fn, py::arg("model"), py::arg("text"), py::arg("num_beams") = 4,
            py::arg("length_penalty") = 0.6, py::arg("min_length") = 5, py::arg("max_length") = 256,
            py::arg("no_repeat_ngram_size") = 4, py::arg("seed") = 0);
  };
  decode_args(m, "beam_decode",
              [](const PyModel& model, const std::string& text, int num_beams,
                 double length_penalty, int min_length, int max_length, int no_repeat_ngram_size,
                 std::uint64_t) {
                const auto params = params_from_kwargs(num_beams, length_penalty, min_length,
                                                       max_length, no_repeat_ngram_size);
                const TokenIds input = model.vocab().encode(text);
                const auto hyps = beam_search(*model.model, input, params);
                py::list out;
                for (const auto& hyp : hyps) {
                  out.append(py::make_tuple(model.vocab().decode(hyp.ids),
                                            length_penalized_score(hyp.logprob, hyp.ids.size(),
                                                                   params.length_penalty)));
                }
                return out;
              });
  decode_args(m, "greedy_decode",
              [](const PyModel& model, const std::string& text, int num_beams,
                 double length_penalty, int min_length, int max_length, int no_repeat_ngram_size,
                 std::uint64_t) {
                const auto params = params_from_kwargs(num_beams, length_penalty, min_length,
                                                       max_length, no_repeat_ngram_size);
                const auto hyp = greedy_search(*model.model, model.vocab().encode(text), params);
                return model.vocab().decode(hyp.ids);
              });
  decode_args(m, "sample_decode",
              [](const PyModel& model, const std::string& text, int num_beams,
                 double length_penalty, int min_length, int max_length, int no_repeat_ngram_size,
                 std::uint64_t seed) {
                const auto params = params_from_kwargs(num_beams, length_penalty, min_length,
                                                       max_length, no_repeat_ngram_size);
                const auto hyp =
                    sample_sequence(*model.model, model.vocab().encode(text), params, seed);
                return model.vocab().decode(hyp.ids);
              });

  // hierarchical ensembles
  m.def("validate_spec", [](const std::string& spec_json,
                            const std::map<std::string, PyModel>& models) {
    const auto spec = EnsembleSpec::from_json(nlohmann::json::parse(spec_json));
    ModelRegistry registry;
    for (const auto& [id, model] : models) registry.add(id, model.model);
    return validate_spec(spec, registry);
  });
  m.def(
      "evaluate_spec",
      [](const std::string& spec_json, const std::map<std::string, PyModel>& models,
         const std::string& text, std::uint64_t seed) {
        const auto spec = EnsembleSpec::from_json(nlohmann::json::parse(spec_json));
        ModelRegistry registry;
        for (const auto& [id, model] : models) registry.add(id, model.model);
        const auto violations = validate_spec(spec, registry);
        if (!violations.empty()) throw std::invalid_argument(violations.front());
        const auto ids = spec.referenced_models();
        const TokenIds input = registry.find(ids.front())->vocab().encode(text);
        return evaluate_spec(spec, registry, input, DecodeParams{}, seed);
      },
      py::arg("spec_json"), py::arg("models"), py::arg("text"), py::arg("seed") = 0);
  m.def("describe_spec", [](const std::string& spec_json) {
    return describe_spec(EnsembleSpec::from_json(nlohmann::json::parse(spec_json)));
  });

  // harness
  m.def(
      "synth_corpus",
      [](std::uint64_t seed, std::size_t size) {
        py::list out;
        for (const auto& r : synth_corpus(seed, size)) out.append(record_to_dict(r));
        return out;
      },
      py::arg("seed"), py::arg("size"));
  m.def(
      "kfold_assignment",
      [](const std::vector<py::dict>& records, int k, std::uint64_t seed) {
        std::vector<NoteRecord> rs;
        for (const auto& d : records) rs.push_back(record_from_dict(d));
        return kfold_split(rs, k, seed).assignment;
      },
      py::arg("records"), py::arg("k"), py::arg("seed") = 0);
  m.def(
      "assemble_input",
      [](const py::dict& record, const std::string& fields) {
        return assemble_input(record_from_dict(record), parse_field_spec(fields));
      },
      py::arg("record"), py::arg("fields"));
}
