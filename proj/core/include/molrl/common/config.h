//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_COMMON_CONFIG_H_
#define MOLRL_COMMON_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace molrl {

// Flat key=value run configuration. Lines starting with '#' and blank lines
// are ignored. Later assignments override earlier ones.
class RunConfig {
 public:
  RunConfig() = default;

  static RunConfig parse(std::string_view text, std::string_view origin = "<string>");
  static RunConfig load(const std::string& path);

  // Applies "key=value"; throws ConfigError on malformed input.
  void set_assignment(std::string_view assignment);
  void set(const std::string& key, std::string value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Throws ConfigError naming the first key not in `allowed`.
  void reject_unknown(const std::set<std::string>& allowed) const;

  std::string to_text() const;

 private:
  std::optional<std::string> lookup(const std::string& key) const;

  std::map<std::string, std::string> values_;
};

}  // namespace molrl

#endif  // MOLRL_COMMON_CONFIG_H_
