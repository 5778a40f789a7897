//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/run.h"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl::cli {

const char* tool_version() { return MOLRL_VERSION; }

Run::Run(const CommandDef& def, const Invocation& inv) : def_(def) {
  RunConfig given;
  if (!inv.config_path.empty()) given = RunConfig::load(inv.config_path);
  for (const auto& a : inv.assignments) given.set_assignment(a);
  if (inv.seed) given.set("seed", std::to_string(*inv.seed));
  if (inv.threads) given.set("threads", std::to_string(*inv.threads));
  if (inv.out) given.set("out", *inv.out);

  std::set<std::string> allowed;
  for (const auto& [k, v] : def.defaults) allowed.insert(k);
  for (const auto& k : def.required) allowed.insert(k);
  given.reject_unknown(allowed);

  for (const auto& [k, v] : def.defaults) {
    if (!v.empty()) config_.set(k, v);
  }
  for (const auto& [k, v] : given.values()) config_.set(k, v);
  for (const auto& k : def.required) config_.require_string(k);
  if (threads() < 1) throw ConfigError("threads must be >= 1");
  if (config_.get_int("seed", 0) < 0) throw ConfigError("seed must be >= 0");

  out_dir_ = config_.require_string("out");
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir_ + ": " + ec.message());

  for (const auto& key : def.input_keys) {
    const std::string p = config_.get_string(key, "");
    if (!p.empty()) input_checksums_[p] = io::file_checksum(p);
  }
  io::write_file_atomic(path("run_config.txt"), config_.to_text());
  write_manifest();
}

std::string Run::path(const std::string& name) const { return (std::filesystem::path(out_dir_) / name).string(); }

void Run::write(const std::string& name, const std::string& contents) {
  const std::filesystem::path p = std::filesystem::path(out_dir_) / name;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  io::write_file_atomic(p.string(), contents);
  if (outputs_.insert(name).second) write_manifest();
}

void Run::resolve(const std::string& key, const std::string& value) {
  config_.set(key, value);
  io::write_file_atomic(path("run_config.txt"), config_.to_text());
}

void Run::write_manifest() {
  nlohmann::json m;
  m["tool"] = "molrl";
  m["version"] = tool_version();
  m["command"] = def_.name;
  m["config"] = "run_config.txt";
  m["inputs"] = input_checksums_;
  m["outputs"] = outputs_;
  io::write_file_atomic(path("manifest.json"), m.dump(2) + "\n");
}

}  // namespace molrl::cli
