//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_PARSER_H_
#define MOLRL_SMILES_PARSER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "molrl/common/error.h"
#include "molrl/smiles/molecule.h"

namespace molrl::smiles {

enum class ParseErrorKind {
  kEmptyInput,
  kUnknownCharacter,
  kUnterminatedBracket,
  kMalformedBracketAtom,
  kUnknownElement,
  kUnmatchedRingDigit,
  kUnmatchedBranch,
  kMisplacedBond,
  kInvalidRingBond,
  kValence,
  kAromaticOutsideRing,
};

const char* to_string(ParseErrorKind kind);

struct ParseIssue {
  ParseErrorKind kind;
  std::size_t position;  // character offset in the input
  std::string message;
};

class SmilesError : public DataError {
 public:
  explicit SmilesError(ParseIssue issue)
      : DataError(issue.message), issue_(std::move(issue)) {}
  const ParseIssue& issue() const noexcept { return issue_; }
  ParseErrorKind kind() const noexcept { return issue_.kind; }

 private:
  ParseIssue issue_;
};

// Either a valid graph or the first problem found.
class ParseResult {
 public:
  ParseResult(MoleculeGraph graph) : value_(std::move(graph)) {}  // NOLINT
  ParseResult(ParseIssue issue) : value_(std::move(issue)) {}     // NOLINT

  bool ok() const { return std::holds_alternative<MoleculeGraph>(value_); }
  explicit operator bool() const { return ok(); }

  const MoleculeGraph& graph() const& { return std::get<MoleculeGraph>(value_); }
  MoleculeGraph&& graph() && { return std::get<MoleculeGraph>(std::move(value_)); }
  const ParseIssue& issue() const { return std::get<ParseIssue>(value_); }

  // Returns the graph or throws SmilesError.
  MoleculeGraph value() &&;

 private:
  std::variant<MoleculeGraph, ParseIssue> value_;
};

// Parses and validates a SMILES string: syntax, ring closures, branches,
// element table and per-atom valence. Stereo marks are accepted and ignored.
//
// Valence model: organic-subset atoms take the smallest allowed valence that
// fits their bonds (remainder becomes implicit H). Charges shift the allowed
// valences by one unit per charge (up for groups 15-17, down for 13-14).
// Aromatic C and B need one extra aromatic-system unit; aromatic heteroatoms
// may use it (pyridine-type) or not (pyrrole-type). Aromatic atoms must sit
// on a ring.
ParseResult parse_molecule(std::string_view smiles);

inline bool is_valid_smiles(std::string_view smiles) { return parse_molecule(smiles).ok(); }

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_PARSER_H_
