//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_VOCABULARY_H_
#define MOLRL_SMILES_VOCABULARY_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace molrl::smiles {

inline constexpr std::string_view kGoToken = "<GO>";
inline constexpr std::string_view kEosToken = "<EOS>";

// Token ids of one SMILES body; GO and EOS are never stored here.
struct TokenSequence {
  std::vector<int> ids;

  std::size_t length() const { return ids.size(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// Dense token inventory. Body tokens are sorted by text; GO and EOS are the
// last two ids.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Throws DataError naming the 1-based line of the first bad entry.
  static Vocabulary build(const std::vector<std::string>& corpus);

  // Restores a vocabulary from its ordered token list (as stored in
  // checkpoints). The list must end with GO, EOS.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  int go_id() const { return size() - 2; }
  int eos_id() const { return size() - 1; }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& text(int id) const;
  std::optional<int> find(std::string_view text) const;

  // Throws DataError if the string does not tokenize or uses a token outside
  // this vocabulary.
  TokenSequence encode(std::string_view smiles) const;

  // Concatenates token texts. GO/EOS ids are skipped; out-of-range ids throw.
  std::string decode(const TokenSequence& seq) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

inline std::string detokenize(const TokenSequence& seq, const Vocabulary& vocab) {
  return vocab.decode(seq);
}

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_VOCABULARY_H_
