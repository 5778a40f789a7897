//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "cli/eval.h"
#include "molrl/common/error.h"
#include "molrl/common/rng.h"
#include "molrl/fingerprint/butina.h"
#include "molrl/qsar/grid_search.h"
#include "molrl/qsar/metrics.h"
#include "molrl/qsar/model_io.h"
#include "molrl/scoring/scoring.h"
#include "molrl/smiles/corpus.h"
#include "molrl/smiles/parser.h"
#include "molrl/synth/generator.h"

namespace molrl::cli {
namespace {

std::map<std::string, std::string> with_common(std::map<std::string, std::string> keys) {
  keys.emplace("seed", "1");
  keys.emplace("threads", "1");
  keys.emplace("out", "");
  return keys;
}

struct LabeledMolecules {
  std::vector<std::string> smiles;
  std::vector<int> labels;
  std::vector<fp::Fingerprint> fps;
  nlohmann::json unparseable = nlohmann::json::array();
};

// Reads a labeled SMILES file; lines that fail to parse are collected, not
// fatal. A missing label is an error.
LabeledMolecules read_labeled(const std::string& path) {
  const smiles::Corpus corpus = smiles::read_corpus(path);
  LabeledMolecules out;
  for (const auto& e : corpus.entries) {
    if (!e.label) throw DataError(path + ":" + std::to_string(e.line) + ": missing tab-separated 0/1 label");
    const auto parsed = smiles::parse_molecule(e.smiles);
    if (!parsed.ok()) {
      out.unparseable.push_back({{"line", e.line}, {"smiles", e.smiles}, {"reason", parsed.issue().message}});
      continue;
    }
    out.smiles.push_back(e.smiles);
    out.labels.push_back(*e.label);
    out.fps.push_back(scoring::activity_fingerprint(parsed.graph()));
  }
  return out;
}

double mean_nearest_similarity(const std::vector<fp::Fingerprint>& from, const std::vector<fp::Fingerprint>& to) {
  if (from.empty() || to.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& a : from) {
    double best = 0.0;
    for (const auto& b : to) best = std::max(best, fp::jaccard(a, b));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

std::vector<double> parse_exponent_grid(const std::string& text, const std::string& key) {
  try {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      return qsar::power_grid(std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1)));
    }
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string::npos) end = text.size();
      out.push_back(std::ldexp(1.0, std::stoi(text.substr(pos, end - pos))));
      pos = end + 1;
    }
    return out;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects 'lo:hi' or a comma list of exponents, got '" + text + "'");
  }
}

nlohmann::json metrics_json(const qsar::MetricsReport& m) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"count", m.count},
          {"accuracy", m.accuracy},
          {"roc_auc", opt(m.roc_auc)},
          {"precision", opt(m.precision)},
          {"recall", opt(m.recall)}};
}

}  // namespace

const CommandDef& eval_def() {
  static const CommandDef s{"eval",
                             with_common({{"samples", ""},
                                          {"task", ""},
                                          {"query_smiles", ""},
                                          {"k", "1"},
                                          {"model_path", ""},
                                          {"train_actives", ""},
                                          {"test_actives", ""}}),
                             {"samples", "out"},
                             {"samples", "model_path", "train_actives", "test_actives"}};
  return s;
}

void cmd_eval(Run& run, std::ostream& log) {
  const std::vector<std::string> samples = read_sample_column(run.get("samples"));
  std::unique_ptr<scoring::ScoringFunction> scorer;
  if (run.has_value("task")) scorer = scoring::make_scorer(run.config());
  std::optional<std::vector<std::string>> train, test;
  if (run.has_value("train_actives")) train = read_actives(run.get("train_actives"));
  if (run.has_value("test_actives")) test = read_actives(run.get("test_actives"));
  const EvalReport r = evaluate_samples(samples, scorer.get(), train ? &*train : nullptr, test ? &*test : nullptr);
  run.write("eval.json", eval_to_json(r));
  run.write("eval.csv", eval_to_csv(r));
  log << "evaluated " << r.num_samples << " samples, fraction valid " << r.fraction_valid << "\n";
}

const CommandDef& split_def() {
  static const CommandDef s{"split", with_common({{"dataset", ""}, {"cutoff", "0.4"}}), {"dataset", "out"}, {"dataset"}};
  return s;
}

void cmd_split(Run& run, std::ostream& log) {
  const LabeledMolecules data = read_labeled(run.get("dataset"));
  for (const auto& u : data.unparseable) {
    log << "skipping line " << u["line"].get<std::size_t>() << ": " << u["reason"].get<std::string>() << "\n";
  }
  std::vector<int> actives, inactives;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    (data.labels[i] == 1 ? actives : inactives).push_back(static_cast<int>(i));
  }
  if (actives.empty()) throw DataError(run.get("dataset") + ": no actives to cluster");
  const double cutoff = run.get_double("cutoff");

  std::vector<fp::Fingerprint> afps;
  for (const int i : actives) afps.push_back(data.fps[static_cast<std::size_t>(i)]);
  const fp::ClusterAssignment clusters = fp::butina_cluster(afps, cutoff);
  const fp::SplitIndices split = fp::cluster_split(clusters, run.seed());

  // Inactives: random split at the same 1/6 : 1/6 : 4/6 ratios.
  std::vector<int> shuffled = inactives;
  Rng rng(run.seed());
  rng.shuffle(shuffled.begin(), shuffled.end());
  const std::size_t sixth = shuffled.size() / 6;

  std::string files[3];  // test, validation, train
  auto add = [&](int split_idx, int row) {
    const auto r = static_cast<std::size_t>(row);
    files[split_idx] += data.smiles[r] + "\t" + std::to_string(data.labels[r]) + "\n";
  };
  std::vector<fp::Fingerprint> test_fps, val_fps, train_fps;
  for (const int a : split.test) { add(0, actives[static_cast<std::size_t>(a)]); test_fps.push_back(afps[static_cast<std::size_t>(a)]); }
  for (const int a : split.validation) { add(1, actives[static_cast<std::size_t>(a)]); val_fps.push_back(afps[static_cast<std::size_t>(a)]); }
  for (const int a : split.train) { add(2, actives[static_cast<std::size_t>(a)]); train_fps.push_back(afps[static_cast<std::size_t>(a)]); }
  for (std::size_t k = 0; k < shuffled.size(); ++k) add(k < sixth ? 0 : (k < 2 * sixth ? 1 : 2), shuffled[k]);

  // Random split of the actives at the same sizes, for the nearest-neighbour
  // comparison.
  std::vector<int> perm(afps.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rrng(run.seed() + 1);
  rrng.shuffle(perm.begin(), perm.end());
  std::vector<fp::Fingerprint> rtest, rtrain;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (k < split.test.size()) rtest.push_back(afps[static_cast<std::size_t>(perm[k])]);
    else if (k >= split.test.size() + split.validation.size()) rtrain.push_back(afps[static_cast<std::size_t>(perm[k])]);
  }

  std::size_t near_centroid = 0;
  std::vector<fp::Fingerprint> train_centroids;
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    if (split.cluster_tags[c] == fp::SplitTag::kTrain) train_centroids.push_back(afps[static_cast<std::size_t>(clusters.clusters[c].centroid)]);
  }
  for (const auto& t : test_fps) {
    for (const auto& c : train_centroids) {
      if (fp::jaccard(t, c) >= cutoff) {
        ++near_centroid;
        break;
      }
    }
  }

  std::vector<std::size_t> sizes;
  for (const auto& c : clusters.clusters) sizes.push_back(c.members.size());
  nlohmann::json report = {
      {"num_actives", actives.size()},
      {"num_inactives", inactives.size()},
      {"cutoff", cutoff},
      {"num_clusters", clusters.clusters.size()},
      {"cluster_sizes", sizes},
      {"actives", {{"test", split.test.size()}, {"validation", split.validation.size()}, {"train", split.train.size()}}},
      {"inactives", {{"test", sixth}, {"validation", sixth}, {"train", shuffled.size() - 2 * sixth}}},
      {"nn_similarity_test_to_train", mean_nearest_similarity(test_fps, train_fps)},
      {"nn_similarity_validation_to_train", mean_nearest_similarity(val_fps, train_fps)},
      {"nn_similarity_test_to_train_random_split", mean_nearest_similarity(rtest, rtrain)},
      {"test_actives_near_train_centroid", near_centroid},
      {"unparseable", data.unparseable}};
  run.write("test.tsv", files[0]);
  run.write("validation.tsv", files[1]);
  run.write("train.tsv", files[2]);
  run.write("split_report.json", report.dump(2) + "\n");
  log << clusters.clusters.size() << " clusters over " << actives.size() << " actives\n";
}

const CommandDef& train_qsar_def() {
  static const CommandDef s{"train-qsar",
                             with_common({{"train", ""},
                                          {"validation", ""},
                                          {"test", ""},
                                          {"c_exponents", "-2:9"},
                                          {"gamma_exponents", "-8:1"},
                                          {"tolerance", "0.001"},
                                          {"calibration_folds", "5"}}),
                             {"train", "validation", "test", "out"},
                             {"train", "validation", "test"}};
  return s;
}

void cmd_train_qsar(Run& run, std::ostream& log) {
  auto load = [&](const std::string& key) {
    const LabeledMolecules m = read_labeled(run.get(key));
    if (!m.unparseable.empty()) log << run.get(key) << ": skipped " << m.unparseable.size() << " unparseable lines\n";
    qsar::LabeledDataset d;
    d.fingerprints = m.fps;
    d.labels = m.labels;
    return d;
  };
  const qsar::LabeledDataset train = load("train");
  const qsar::LabeledDataset validation = load("validation");
  const qsar::LabeledDataset test = load("test");
  if (train.num_active() == 0 || train.num_active() == train.size()) {
    throw DataError(run.get("train") + ": training split must contain both actives and inactives");
  }

  qsar::SvmOptions base;
  base.tolerance = run.get_double("tolerance");
  base.calibration_folds = static_cast<int>(run.get_int("calibration_folds"));
  base.seed = run.seed();
  const auto cg = parse_exponent_grid(run.get("c_exponents"), "c_exponents");
  const auto gg = parse_exponent_grid(run.get("gamma_exponents"), "gamma_exponents");
  const qsar::GridResult grid = qsar::grid_search(train, validation, cg, gg, base);
  log << "best C=" << grid.best_c << " gamma=" << grid.best_gamma << " validation ROC-AUC " << grid.best_auc << "\n";

  qsar::SvmOptions final_opt = base;
  final_opt.c = grid.best_c;
  final_opt.gamma = grid.best_gamma;
  const qsar::SvmModel model = qsar::train_svm(train, final_opt);

  std::string csv = "C,gamma,validation_auc,error\n";
  for (const auto& c : grid.cells) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", c.c, c.gamma);
    csv += buf;
    if (c.validation_auc) {
      std::snprintf(buf, sizeof buf, "%.17g", *c.validation_auc);
      csv += buf;
    }
    std::string err = c.error;
    std::replace(err.begin(), err.end(), ',', ';');
    csv += "," + err + "\n";
  }
  nlohmann::json metrics = {{"best_C", grid.best_c},
                            {"best_gamma", grid.best_gamma},
                            {"best_validation_auc", grid.best_auc},
                            {"train", metrics_json(qsar::evaluate(model, train))},
                            {"validation", metrics_json(qsar::evaluate(model, validation))},
                            {"test", metrics_json(qsar::evaluate(model, test))}};
  run.write("qsar_model.json", qsar::svm_to_json(model));
  run.write("grid.csv", csv);
  run.write("metrics.json", metrics.dump(2) + "\n");
}

const CommandDef& fingerprint_def() {
  static const CommandDef s{
      "fingerprint", with_common({{"input", ""}, {"diameter", "6"}, {"kind", "ecfp"}}), {"input", "out"}, {"input"}};
  return s;
}

void cmd_fingerprint(Run& run, std::ostream& log) {
  const smiles::Corpus corpus = smiles::read_corpus(run.get("input"));
  const int diameter = static_cast<int>(run.get_int("diameter"));
  const fp::InvariantKind kind = fp::invariant_kind_from_string(run.get("kind"));
  std::string out;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const auto parsed = smiles::parse_molecule(corpus.entries[i].smiles);
    if (!parsed.ok()) {
      log << "line " << corpus.entries[i].line << ": " << parsed.issue().message << "\n";
      ++skipped;
      continue;
    }
    out += fp::format_fingerprint_line(i, fp::circular_fingerprint(parsed.graph(), diameter, kind)) + "\n";
  }
  run.write("fingerprints.txt", out);
  log << "fingerprinted " << corpus.entries.size() - skipped << " molecules, skipped " << skipped << "\n";
}

const CommandDef& synth_def() {
  static const CommandDef s{"synth",
                             with_common({{"kind", "corpus"},
                                          {"size", "10000"},
                                          {"motif_rate", "0.04"},
                                          {"actives", "300"},
                                          {"inactives", "300"},
                                          {"max_tokens", "60"}}),
                             {"out"},
                             {}};
  return s;
}

void cmd_synth(Run& run, std::ostream& log) {
  const std::string kind = run.get("kind");
  const auto max_tokens = static_cast<std::size_t>(run.get_int("max_tokens"));
  if (kind == "corpus") {
    synth::CorpusOptions o;
    o.size = static_cast<std::size_t>(run.get_int("size"));
    o.seed = run.seed();
    o.motif_rate = run.get_double("motif_rate");
    o.max_tokens = max_tokens;
    std::string text;
    for (const auto& s : synth::generate_corpus(o)) text += s + "\n";
    run.write("corpus.smi", text);
    log << "wrote " << o.size << " SMILES to " << run.path("corpus.smi") << "\n";
  } else if (kind == "activity") {
    const auto data = synth::generate_activity_dataset(static_cast<std::size_t>(run.get_int("actives")),
                                                       static_cast<std::size_t>(run.get_int("inactives")), run.seed(),
                                                       max_tokens);
    std::string text;
    for (const auto& d : data) text += d.smiles + "\t" + std::to_string(d.label) + "\n";
    run.write("activity.tsv", text);
    log << "wrote " << data.size() << " labeled SMILES to " << run.path("activity.tsv") << "\n";
  } else {
    throw ConfigError("synth kind must be 'corpus' or 'activity'");
  }
}

}  // namespace molrl::cli
