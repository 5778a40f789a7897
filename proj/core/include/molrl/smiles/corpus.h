//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_CORPUS_H_
#define MOLRL_SMILES_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molrl/smiles/tokenizer.h"

namespace molrl::smiles {

struct CorpusEntry {
  std::string smiles;
  std::optional<int> label;  // second tab-separated column, 0 or 1
  std::size_t line = 0;      // 1-based
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  std::size_t rejected_too_long = 0;

  std::vector<std::string> smiles() const;
};

// Reads UTF-8 text with one SMILES per line, optional "\t<label>" column.
// Lines starting with '#' and blank lines are skipped. Lines that fail to
// tokenize raise DataError with their line number; lines longer than
// `max_tokens` tokens are dropped and counted.
Corpus parse_corpus(std::string_view text, std::string_view origin = "<corpus>",
                    std::size_t max_tokens = kMaxTokens);
Corpus read_corpus(const std::string& path, std::size_t max_tokens = kMaxTokens);

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_CORPUS_H_
