//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/corpus.h"

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl::smiles {

std::vector<std::string> Corpus::smiles() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.smiles);
  return out;
}

Corpus parse_corpus(std::string_view text, std::string_view origin, std::size_t max_tokens) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    CorpusEntry entry;
    entry.line = line_no;
    const auto tab = line.find('\t');
    entry.smiles = std::string(line.substr(0, tab));
    const auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    if (tab != std::string_view::npos) {
      const auto label = line.substr(tab + 1);
      if (label == "0" || label == "1") {
        entry.label = label == "1" ? 1 : 0;
      } else {
        throw DataError(where + "label must be 0 or 1, got '" + std::string(label) + "'");
      }
    }
    std::size_t n_tokens = 0;
    try {
      n_tokens = tokenize(entry.smiles).size();
    } catch (const TokenizeError& e) {
      throw DataError(where + e.what());
    }
    if (n_tokens > max_tokens) {
      ++corpus.rejected_too_long;
      continue;
    }
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

Corpus read_corpus(const std::string& path, std::size_t max_tokens) {
  return parse_corpus(io::read_file(path), path, max_tokens);
}

}  // namespace molrl::smiles
