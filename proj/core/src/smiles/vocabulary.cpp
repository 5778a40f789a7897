//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/vocabulary.h"

#include <set>

#include "molrl/common/error.h"
#include "molrl/smiles/tokenizer.h"

namespace molrl::smiles {

Vocabulary Vocabulary::build(const std::vector<std::string>& corpus) {
  if (corpus.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  std::set<std::string> distinct;
  for (std::size_t line = 0; line < corpus.size(); ++line) {
    try {
      for (auto& t : tokenize_texts(corpus[line])) distinct.insert(std::move(t));
    } catch (const TokenizeError& e) {
      throw DataError("corpus line " + std::to_string(line + 1) + ": " + e.what());
    }
  }
  std::vector<std::string> tokens(distinct.begin(), distinct.end());
  tokens.emplace_back(kGoToken);
  tokens.emplace_back(kEosToken);
  return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2 || tokens[tokens.size() - 2] != kGoToken || tokens.back() != kEosToken) {
    throw DataError("vocabulary token list must end with GO and EOS");
  }
  Vocabulary v;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!v.index_.emplace(tokens[i], static_cast<int>(i)).second) {
      throw DataError("duplicate vocabulary token '" + tokens[i] + "'");
    }
  }
  v.tokens_ = std::move(tokens);
  return v;
}

const std::string& Vocabulary::text(int id) const {
  if (id < 0 || id >= size()) throw DataError("token id " + std::to_string(id) + " out of range");
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<int> Vocabulary::find(std::string_view text) const {
  const auto it = index_.find(std::string(text));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenSequence Vocabulary::encode(std::string_view smiles) const {
  TokenSequence seq;
  for (const auto& t : tokenize(smiles)) {
    const auto id = find(t.text);
    if (!id) throw DataError("token '" + t.text + "' is not in the vocabulary");
    seq.ids.push_back(*id);
  }
  return seq;
}

std::string Vocabulary::decode(const TokenSequence& seq) const {
  std::string out;
  for (const int id : seq.ids) {
    const auto& t = text(id);
    if (id == go_id() || id == eos_id()) continue;
    out += t;
  }
  return out;
}

}  // namespace molrl::smiles
