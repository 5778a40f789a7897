//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/eval.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "molrl/common/error.h"
#include "molrl/common/io.h"
#include "molrl/fingerprint/fingerprint.h"
#include "molrl/smiles/descriptors.h"
#include "molrl/smiles/parser.h"
#include "molrl/smiles/tokenizer.h"

namespace molrl::cli {
namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out += c;
  }
  return out;
}

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd m;
  if (v.empty()) return m;
  for (const double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / static_cast<double>(v.size()));
  return m;
}

std::vector<fp::Fingerprint> reference_fps(const std::vector<std::string>& smiles) {
  std::vector<fp::Fingerprint> out;
  for (const auto& s : smiles) {
    auto r = smiles::parse_molecule(s);
    if (r.ok()) out.push_back(scoring::activity_fingerprint(r.graph()));
  }
  return out;
}

double fraction_similar(const std::vector<std::optional<fp::Fingerprint>>& sample_fps,
                        const std::vector<fp::Fingerprint>& refs) {
  if (sample_fps.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& f : sample_fps) {
    if (!f) continue;
    for (const auto& r : refs) {
      if (fp::jaccard(*f, r) > kReferenceSimilarity) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(sample_fps.size());
}

double fraction_recovered(const std::unordered_set<std::string>& generated, const std::vector<std::string>& refs) {
  std::unordered_set<std::string> uniq;
  for (const auto& r : refs) uniq.insert(strip(r));
  if (uniq.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : uniq) hits += generated.count(r);
  return static_cast<double>(hits) / static_cast<double>(uniq.size());
}

}  // namespace

EvalReport evaluate_samples(const std::vector<std::string>& samples, const scoring::ScoringFunction* scorer,
                            const std::vector<std::string>* train_actives, const std::vector<std::string>* test_actives) {
  EvalReport r;
  r.num_samples = samples.size();
  const double n = static_cast<double>(samples.size());
  std::unordered_set<std::string> distinct;
  std::unordered_map<std::string, std::size_t> token_counts;
  std::size_t total_tokens = 0;
  std::size_t sulphur_free = 0;
  std::size_t task_hits = 0;
  double score_sum = 0.0;
  std::vector<double> mw, rot, arom, logp;
  std::vector<std::optional<fp::Fingerprint>> fps;
  const bool need_fps = train_actives || test_actives;

  const auto* sim = dynamic_cast<const scoring::SimilarityScorer*>(scorer);
  const auto* act = dynamic_cast<const scoring::ActivityScorer*>(scorer);

  for (const auto& raw : samples) {
    const std::string s = strip(raw);
    distinct.insert(s);
    try {
      for (const auto& tok : smiles::tokenize(s)) {
        ++token_counts[tok.text];
        ++total_tokens;
      }
    } catch (const smiles::TokenizeError&) {
      // Not tokenizable: contributes no tokens.
    }
    const auto parsed = smiles::parse_molecule(s);
    std::optional<fp::Fingerprint> f;
    if (parsed.ok()) {
      const auto& g = parsed.graph();
      ++r.num_valid;
      const bool has_s = smiles::contains_element(g, "S");
      if (!has_s) ++sulphur_free;
      const auto d = smiles::descriptors(g);
      mw.push_back(d.molecular_weight);
      rot.push_back(d.num_rotatable_bonds);
      arom.push_back(d.num_aromatic_rings);
      logp.push_back(d.clogp);
      if (need_fps) f = scoring::activity_fingerprint(g);
    }
    fps.push_back(std::move(f));
    if (scorer) {
      score_sum += scorer->score(s).value;
      bool hit = false;
      if (sim) hit = sim->similarity(s) > kReferenceSimilarity;
      else if (act) hit = act->probability(s) > 0.5;
      else hit = parsed.ok() && !smiles::contains_element(parsed.graph(), "S");
      task_hits += hit ? 1 : 0;
    }
  }

  if (n > 0) {
    r.fraction_valid = static_cast<double>(r.num_valid) / n;
    r.fraction_unique = static_cast<double>(distinct.size()) / n;
    r.fraction_sulphur_free = static_cast<double>(sulphur_free) / n;
  }
  if (total_tokens > 0) {
    std::size_t best = 0;
    for (const auto& [tok, count] : token_counts) {
      if (count > best || (count == best && tok < r.modal_token)) {
        best = count;
        r.modal_token = tok;
      }
    }
    r.modal_token_frequency = static_cast<double>(best) / static_cast<double>(total_tokens);
  }
  if (scorer) {
    r.fraction_task = n > 0 ? static_cast<double>(task_hits) / n : 0.0;
    r.mean_score = n > 0 ? score_sum / n : 0.0;
  }
  r.descriptors["molecular_weight"] = mean_std(mw);
  r.descriptors["num_rotatable_bonds"] = mean_std(rot);
  r.descriptors["num_aromatic_rings"] = mean_std(arom);
  r.descriptors["clogp"] = mean_std(logp);

  std::unordered_set<std::string> generated;
  for (const auto& s : samples) generated.insert(strip(s));
  if (train_actives) {
    r.fraction_similar_train_active = fraction_similar(fps, reference_fps(*train_actives));
    r.fraction_recovered_train_active = fraction_recovered(generated, *train_actives);
  }
  if (test_actives) {
    r.fraction_similar_test_active = fraction_similar(fps, reference_fps(*test_actives));
    r.fraction_recovered_test_active = fraction_recovered(generated, *test_actives);
    std::unordered_set<std::string> test_set;
    for (const auto& t : *test_actives) test_set.insert(strip(t));
    std::size_t hits = 0;
    for (const auto& s : samples) hits += test_set.count(strip(s));
    r.probability_test_active = n > 0 ? static_cast<double>(hits) / n : 0.0;
  }
  return r;
}

namespace {

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["num_samples"] = r.num_samples;
  j["num_valid"] = r.num_valid;
  j["fraction_valid"] = r.fraction_valid;
  j["fraction_unique"] = r.fraction_unique;
  j["fraction_sulphur_free"] = r.fraction_sulphur_free;
  j["modal_token"] = r.modal_token;
  j["modal_token_frequency"] = r.modal_token_frequency;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  opt("fraction_task", r.fraction_task);
  opt("mean_score", r.mean_score);
  opt("fraction_similar_train_active", r.fraction_similar_train_active);
  opt("fraction_similar_test_active", r.fraction_similar_test_active);
  opt("fraction_recovered_train_active", r.fraction_recovered_train_active);
  opt("fraction_recovered_test_active", r.fraction_recovered_test_active);
  opt("probability_test_active", r.probability_test_active);
  for (const auto& [name, ms] : r.descriptors) j["descriptors"][name] = {{"mean", ms.mean}, {"stddev", ms.stddev}};
  return j;
}

}  // namespace

std::string eval_to_json(const EvalReport& report) { return to_json(report).dump(2) + "\n"; }

std::string eval_to_csv(const EvalReport& report) {
  const nlohmann::json j = to_json(report);
  std::string out = "metric,value\n";
  for (const auto& [key, value] : j.items()) {
    if (key == "descriptors") {
      for (const auto& [name, ms] : value.items()) {
        out += name + "_mean," + ms["mean"].dump() + "\n";
        out += name + "_stddev," + ms["stddev"].dump() + "\n";
      }
    } else if (value.is_string()) {
      out += key + "," + value.get<std::string>() + "\n";
    } else {
      out += key + "," + value.dump() + "\n";
    }
  }
  return out;
}

std::vector<std::string> read_sample_column(const std::string& path) {
  const std::string text = io::read_file(path);
  std::vector<std::string> out;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string col = line.substr(0, line.find('\t'));
    if (first && col == "smiles") {
      first = false;
      continue;
    }
    first = false;
    out.push_back(col);
  }
  return out;
}

std::vector<std::string> read_actives(const std::string& path) {
  const std::string text = io::read_file(path);
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      out.push_back(line);
    } else if (line.substr(tab + 1) == "1") {
      out.push_back(line.substr(0, tab));
    }
  }
  return out;
}

}  // namespace molrl::cli
