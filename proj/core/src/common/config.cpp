//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/common/config.h"

#include <charconv>
#include <sstream>

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text, std::string_view origin) {
  RunConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    try {
      config.set_assignment(line);
    } catch (const ConfigError& e) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": " << e.what();
      throw ConfigError(msg.str());
    }
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse(text, path);
}

void RunConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  const auto key = trim(assignment.substr(0, eq));
  const auto value = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError("empty key in '" + std::string(assignment) + "'");
  set(std::string(key), std::string(value));
}

void RunConfig::set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

std::optional<std::string> RunConfig::lookup(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  return lookup(key).value_or(fallback);
}

std::string RunConfig::require_string(const std::string& key) const {
  auto v = lookup(key);
  if (!v || v->empty()) throw ConfigError("missing required key '" + key + "'");
  return *v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto v = lookup(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects a number, got '" + *v + "'");
  }
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  const auto v = lookup(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  const auto* begin = v->data();
  const auto* end = v->data() + v->size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + *v + "'");
  }
  return out;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = lookup(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError("key '" + key + "' expects a boolean, got '" + *v + "'");
}

void RunConfig::reject_unknown(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (allowed.count(key) == 0) throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) out << key << "=" << value << "\n";
  return out.str();
}

}  // namespace molrl
