//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/tokenizer.h"

#include <cctype>

namespace molrl::smiles {
namespace {

bool is_single_char_atom(char c) {
  switch (c) {
    case 'B': case 'C': case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
    case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
      return true;
    default:
      return false;
  }
}

bool is_bond_char(char c) {
  switch (c) {
    case '-': case '=': case '#': case '$': case ':': case '/': case '\\':
      return true;
    default:
      return false;
  }
}

std::string describe_char(char c) {
  if (std::isprint(static_cast<unsigned char>(c))) return std::string("'") + c + "'";
  return "byte " + std::to_string(static_cast<unsigned char>(c));
}

}  // namespace

TokenKind classify_token(std::string_view text) {
  if (text.empty()) return TokenKind::kSpecial;
  const char c = text.front();
  if (c == '[') return TokenKind::kAtom;
  if (c == '%' || std::isdigit(static_cast<unsigned char>(c))) return TokenKind::kRingDigit;
  if (c == '(') return TokenKind::kBranchOpen;
  if (c == ')') return TokenKind::kBranchClose;
  if (c == '.') return TokenKind::kDot;
  if (is_bond_char(c)) return TokenKind::kBond;
  if (is_single_char_atom(c)) return TokenKind::kAtom;
  return TokenKind::kSpecial;
}

std::vector<Token> tokenize(std::string_view smiles) {
  if (smiles.empty()) {
    throw TokenizeError(TokenizeErrorKind::kEmptyInput, 0, "empty SMILES");
  }
  std::vector<Token> out;
  out.reserve(smiles.size());
  std::size_t i = 0;
  while (i < smiles.size()) {
    const char c = smiles[i];
    if (c == '[') {
      const auto close = smiles.find(']', i + 1);
      const auto reopen = smiles.find('[', i + 1);
      if (close == std::string_view::npos || (reopen != std::string_view::npos && reopen < close)) {
        throw TokenizeError(TokenizeErrorKind::kUnterminatedBracket, i,
                            "unterminated bracket atom at position " + std::to_string(i));
      }
      out.push_back({std::string(smiles.substr(i, close - i + 1)), TokenKind::kAtom});
      i = close + 1;
      continue;
    }
    if ((c == 'C' || c == 'B') && i + 1 < smiles.size() &&
        smiles[i + 1] == (c == 'C' ? 'l' : 'r')) {
      out.push_back({std::string(smiles.substr(i, 2)), TokenKind::kAtom});
      i += 2;
      continue;
    }
    if (c == '%') {
      if (i + 2 >= smiles.size() || !std::isdigit(static_cast<unsigned char>(smiles[i + 1])) ||
          !std::isdigit(static_cast<unsigned char>(smiles[i + 2]))) {
        throw TokenizeError(TokenizeErrorKind::kBadRingNumber, i,
                            "'%' must be followed by two digits at position " + std::to_string(i));
      }
      out.push_back({std::string(smiles.substr(i, 3)), TokenKind::kRingDigit});
      i += 3;
      continue;
    }
    const TokenKind kind = classify_token(smiles.substr(i, 1));
    if (kind == TokenKind::kSpecial) {
      throw TokenizeError(TokenizeErrorKind::kUnknownCharacter, i,
                          "unknown character " + describe_char(c) + " at position " +
                              std::to_string(i));
    }
    out.push_back({std::string(1, c), kind});
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize_texts(std::string_view smiles) {
  auto tokens = tokenize(smiles);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& t : tokens) out.push_back(std::move(t.text));
  return out;
}

}  // namespace molrl::smiles
