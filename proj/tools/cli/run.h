//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_TOOLS_CLI_RUN_H_
#define MOLRL_TOOLS_CLI_RUN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "molrl/common/config.h"

namespace molrl::cli {

// Keys and defaults of one command. An empty default marks an optional key
// that stays unset unless given.
struct CommandDef {
  std::string name;
  std::map<std::string, std::string> defaults;
  std::set<std::string> required;
  std::set<std::string> input_keys;  // keys naming input files to checksum
};

// Values from the command line; flags win over --set, which wins over the
// config file.
struct Invocation {
  std::string config_path;
  std::vector<std::string> assignments;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
};

// Resolves the configuration, creates the output directory and records the
// resolved config and a manifest (tool version, command, input checksums).
class Run {
 public:
  Run(const CommandDef& def, const Invocation& inv);

  const RunConfig& config() const { return config_; }
  std::string path(const std::string& name) const;  // inside the output directory

  std::string get(const std::string& key) const { return config_.get_string(key, ""); }
  bool has_value(const std::string& key) const { return !get(key).empty(); }
  std::int64_t get_int(const std::string& key) const { return config_.get_int(key, 0); }
  double get_double(const std::string& key) const { return config_.get_double(key, 0.0); }
  bool get_bool(const std::string& key) const { return config_.get_bool(key, false); }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(config_.get_int("seed", 0)); }
  int threads() const { return static_cast<int>(config_.get_int("threads", 1)); }

  // Writes a file atomically in the output directory and lists it in the
  // manifest.
  void write(const std::string& name, const std::string& contents);

  // Overrides a resolved value (e.g. a default that depends on another key)
  // and rewrites run_config.txt.
  void resolve(const std::string& key, const std::string& value);

 private:
  void write_manifest();

  CommandDef def_;
  RunConfig config_;
  std::string out_dir_;
  std::map<std::string, std::string> input_checksums_;
  std::set<std::string> outputs_;
};

const char* tool_version();

}  // namespace molrl::cli

#endif  // MOLRL_TOOLS_CLI_RUN_H_
