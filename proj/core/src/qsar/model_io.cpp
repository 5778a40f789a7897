//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/qsar/model_io.h"

#include <nlohmann/json.hpp>

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl::qsar {

std::string svm_to_json(const SvmModel& m) {
  nlohmann::json j;
  j["format"] = "molrl-svm";
  j["version"] = kSvmModelVersion;
  j["C"] = m.c;
  j["gamma"] = m.gamma;
  j["bias"] = m.bias;
  j["platt_a"] = m.platt_a;
  j["platt_b"] = m.platt_b;
  j["num_support"] = m.support.size();
  j["objective"] = m.objective;
  j["max_violation"] = m.max_violation;
  j["iterations"] = m.iterations;
  if (!m.support.empty()) {
    j["fingerprint_kind"] = fp::to_string(m.support.front().kind);
    j["fingerprint_diameter"] = m.support.front().diameter;
  }
  nlohmann::json sv = nlohmann::json::array();
  for (std::size_t k = 0; k < m.support.size(); ++k) {
    sv.push_back({{"features", m.support[k].features}, {"coef", m.coef[k]}});
  }
  j["support"] = sv;
  return j.dump(1);
}

SvmModel svm_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "molrl-svm") throw DataError("not an SVM model file");
    const int version = j.at("version").get<int>();
    if (version != kSvmModelVersion) throw DataError("unsupported SVM model version " + std::to_string(version));
    SvmModel m;
    m.c = j.at("C").get<double>();
    m.gamma = j.at("gamma").get<double>();
    m.bias = j.at("bias").get<double>();
    m.platt_a = j.at("platt_a").get<double>();
    m.platt_b = j.at("platt_b").get<double>();
    m.objective = j.value("objective", 0.0);
    m.max_violation = j.value("max_violation", 0.0);
    m.iterations = j.value("iterations", std::int64_t{0});
    const auto& sv = j.at("support");
    if (sv.size() != j.at("num_support").get<std::size_t>()) throw DataError("support vector count mismatch");
    fp::InvariantKind kind = fp::InvariantKind::kElement;
    int diameter = 0;
    if (!sv.empty()) {
      kind = fp::invariant_kind_from_string(j.at("fingerprint_kind").get<std::string>());
      diameter = j.at("fingerprint_diameter").get<int>();
    }
    for (const auto& e : sv) {
      fp::Fingerprint f;
      f.features = e.at("features").get<std::vector<std::uint32_t>>();
      f.kind = kind;
      f.diameter = diameter;
      m.support.push_back(std::move(f));
      m.coef.push_back(e.at("coef").get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed SVM model: ") + e.what());
  }
}

void save_svm(const SvmModel& model, const std::string& path) { io::write_file_atomic(path, svm_to_json(model)); }

SvmModel load_svm(const std::string& path) {
  try {
    return svm_from_json(io::read_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace molrl::qsar
