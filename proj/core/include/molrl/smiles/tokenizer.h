//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_TOKENIZER_H_
#define MOLRL_SMILES_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "molrl/common/error.h"

namespace molrl::smiles {

enum class TokenKind {
  kAtom,
  kBond,
  kBranchOpen,
  kBranchClose,
  kRingDigit,
  kDot,
  kSpecial,  // GO / EOS, never produced by tokenize()
};

struct Token {
  std::string text;
  TokenKind kind;

  friend bool operator==(const Token&, const Token&) = default;
};

// Longest tokenized SMILES accepted at corpus ingestion.
inline constexpr std::size_t kMaxTokens = 200;

enum class TokenizeErrorKind { kEmptyInput, kUnknownCharacter, kUnterminatedBracket, kBadRingNumber };

class TokenizeError : public DataError {
 public:
  TokenizeError(TokenizeErrorKind kind, std::size_t position, const std::string& what)
      : DataError(what), kind_(kind), position_(position) {}

  TokenizeErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  TokenizeErrorKind kind_;
  std::size_t position_;
};

// Splits a SMILES string into modeling tokens. "Cl", "Br", "%nn" ring numbers
// and whole bracket atoms ("[nH]", "[C@@H]") are single tokens; every other
// character is its own token. GO/EOS are not added.
std::vector<Token> tokenize(std::string_view smiles);

// Token texts only; convenient for vocabulary work.
std::vector<std::string> tokenize_texts(std::string_view smiles);

TokenKind classify_token(std::string_view text);

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_TOKENIZER_H_
