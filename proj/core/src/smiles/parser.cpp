//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "molrl/smiles/elements.h"
#include "molrl/smiles/rings.h"
#include "molrl/smiles/tokenizer.h"

namespace molrl::smiles {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kEmptyInput: return "empty-input";
    case ParseErrorKind::kUnknownCharacter: return "unknown-character";
    case ParseErrorKind::kUnterminatedBracket: return "unterminated-bracket";
    case ParseErrorKind::kMalformedBracketAtom: return "malformed-bracket-atom";
    case ParseErrorKind::kUnknownElement: return "unknown-element";
    case ParseErrorKind::kUnmatchedRingDigit: return "unmatched-ring-digit";
    case ParseErrorKind::kUnmatchedBranch: return "unmatched-branch";
    case ParseErrorKind::kMisplacedBond: return "misplaced-bond";
    case ParseErrorKind::kInvalidRingBond: return "invalid-ring-bond";
    case ParseErrorKind::kValence: return "valence";
    case ParseErrorKind::kAromaticOutsideRing: return "aromatic-outside-ring";
  }
  return "unknown";
}

MoleculeGraph ParseResult::value() && {
  if (!ok()) throw SmilesError(issue());
  return std::get<MoleculeGraph>(std::move(value_));
}

namespace {

struct AtomSpec {
  Atom atom;
  std::size_t position;
};

ParseIssue issue(ParseErrorKind kind, std::size_t pos, std::string msg) {
  return ParseIssue{kind, pos, std::move(msg) + " at position " + std::to_string(pos)};
}

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

bool aromatic_capable(std::string_view capitalized) {
  return capitalized == "B" || capitalized == "C" || capitalized == "N" || capitalized == "O" ||
         capitalized == "P" || capitalized == "S" || capitalized == "Se";
}

// Organic-subset atom from a single token such as "C", "Cl" or "c".
std::optional<Atom> organic_atom(std::string_view text) {
  Atom a;
  a.aromatic = std::islower(static_cast<unsigned char>(text.front())) != 0;
  a.element = capitalize(text);
  const auto* info = find_element(a.element);
  if (info == nullptr) return std::nullopt;
  a.atomic_number = info->atomic_number;
  return a;
}

// Parses "[isotope? symbol chiral? hcount? charge? class?]".
std::variant<Atom, ParseIssue> bracket_atom(std::string_view token, std::size_t pos) {
  std::string_view body = token.substr(1, token.size() - 2);
  std::size_t i = 0;
  auto malformed = [&](const std::string& why) {
    return issue(ParseErrorKind::kMalformedBracketAtom, pos, "bracket atom " + std::string(token) + ": " + why);
  };
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;  // isotope
  if (i >= body.size() || !std::isalpha(static_cast<unsigned char>(body[i]))) {
    return malformed("missing element symbol");
  }
  Atom a;
  a.bracket = true;
  const bool lower = std::islower(static_cast<unsigned char>(body[i])) != 0;
  // An uppercase letter followed by a lowercase one is a two-letter symbol
  // ("Cl", "Se"); lowercase aromatic symbols may also be two letters ("se").
  std::string symbol;
  const bool two_letters = i + 1 < body.size() && std::islower(static_cast<unsigned char>(body[i + 1]));
  if (two_letters && (!lower || find_element(capitalize(body.substr(i, 2))) != nullptr)) {
    symbol = capitalize(body.substr(i, 2));
    i += 2;
  } else {
    symbol = capitalize(body.substr(i, 1));
    i += 1;
  }
  const auto* info = find_element(symbol);
  if (info == nullptr) {
    return issue(ParseErrorKind::kUnknownElement, pos, "unknown element '" + symbol + "'");
  }
  a.element = symbol;
  a.atomic_number = info->atomic_number;
  a.aromatic = lower;
  if (lower && !aromatic_capable(symbol)) {
    return issue(ParseErrorKind::kUnknownElement, pos, "element '" + symbol + "' cannot be aromatic");
  }
  // Chirality: '@', '@@', '@TH1', '@SP2', ...
  if (i < body.size() && body[i] == '@') {
    ++i;
    if (i < body.size() && body[i] == '@') ++i;
    while (i < body.size() && std::isupper(static_cast<unsigned char>(body[i])) && body[i] != 'H') ++i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
  }
  if (i < body.size() && body[i] == 'H') {
    ++i;
    a.explicit_h = 1;
    if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      a.explicit_h = body[i] - '0';
      ++i;
    }
  }
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    const char sign_char = body[i];
    const int sign = sign_char == '+' ? 1 : -1;
    ++i;
    int magnitude = 1;
    if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      magnitude = body[i] - '0';
      ++i;
    } else {
      while (i < body.size() && body[i] == sign_char) {
        ++magnitude;
        ++i;
      }
    }
    a.charge = sign * magnitude;
  }
  if (i < body.size() && body[i] == ':') {
    ++i;
    const std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (i == start) return malformed("empty atom class");
  }
  if (i != body.size()) return malformed("unexpected '" + std::string(body.substr(i)) + "'");
  return a;
}

std::optional<BondOrder> bond_from_char(char c) {
  switch (c) {
    case '-': case '/': case '\\': return BondOrder::kSingle;
    case '=': return BondOrder::kDouble;
    case '#': return BondOrder::kTriple;
    case '$': return BondOrder::kQuadruple;
    case ':': return BondOrder::kAromatic;
    default: return std::nullopt;
  }
}

// Valences allowed for an atom after the charge shift.
std::vector<int> allowed_valences(const ElementInfo& info, int charge) {
  std::vector<int> out;
  for (const int v : info.valences) {
    const int shifted = info.group >= 15 ? v + charge : v - std::abs(charge);
    if (shifted >= 0) out.push_back(shifted);
  }
  if (info.atomic_number == 1) out = {charge == 0 ? 1 : 0};
  return out;
}

std::optional<ParseIssue> check_valence(MoleculeGraph& g, const std::vector<std::size_t>& positions) {
  auto& atoms = g.mutable_atoms();
  for (int i = 0; i < g.num_atoms(); ++i) {
    Atom& a = atoms[static_cast<std::size_t>(i)];
    const auto* info = find_element(a.element);
    const auto allowed = allowed_valences(*info, a.charge);
    const int max_valence = allowed.empty() ? -1 : *std::max_element(allowed.begin(), allowed.end());
    const int used = g.bond_valence(i) + a.explicit_h;
    const bool needs_aromatic_unit = a.aromatic && (a.element == "C" || a.element == "B");
    const int required = used + (needs_aromatic_unit ? 1 : 0);
    if (required > max_valence) {
      return issue(ParseErrorKind::kValence, positions[static_cast<std::size_t>(i)],
                   a.element + " valence " + std::to_string(required) + " exceeds " +
                       std::to_string(std::max(max_valence, 0)));
    }
    if (a.bracket) continue;
    if (a.aromatic) {
      a.implicit_h = needs_aromatic_unit ? std::max(0, allowed.front() - required) : 0;
      continue;
    }
    int target = max_valence;
    for (const int v : allowed) {
      if (v >= used) {
        target = v;
        break;
      }
    }
    a.implicit_h = target - used;
  }
  return std::nullopt;
}

struct OpenRing {
  int atom;
  std::optional<BondOrder> order;
  std::size_t position;
};

}  // namespace

ParseResult parse_molecule(std::string_view smiles) {
  if (smiles.empty()) return issue(ParseErrorKind::kEmptyInput, 0, "empty SMILES");
  std::vector<Token> tokens;
  try {
    tokens = tokenize(smiles);
  } catch (const TokenizeError& e) {
    ParseErrorKind kind = ParseErrorKind::kUnknownCharacter;
    if (e.kind() == TokenizeErrorKind::kUnterminatedBracket) kind = ParseErrorKind::kUnterminatedBracket;
    if (e.kind() == TokenizeErrorKind::kEmptyInput) kind = ParseErrorKind::kEmptyInput;
    return ParseIssue{kind, e.position(), e.what()};
  }

  std::vector<Atom> atoms;
  std::vector<std::size_t> atom_pos;
  std::vector<Bond> bonds;
  std::vector<int> branch_stack;
  std::map<std::string, OpenRing> open_rings;
  int prev = -1;
  std::optional<BondOrder> pending;
  std::size_t pending_pos = 0;
  bool branch_opened = false;  // '(' seen, no atom or bond yet
  std::size_t pos = 0;

  auto default_order = [&](int a, int b) {
    return atoms[static_cast<std::size_t>(a)].aromatic && atoms[static_cast<std::size_t>(b)].aromatic
               ? BondOrder::kAromatic
               : BondOrder::kSingle;
  };
  auto bonded = [&](int a, int b) {
    return std::any_of(bonds.begin(), bonds.end(), [&](const Bond& bd) {
      return (bd.begin == a && bd.end == b) || (bd.begin == b && bd.end == a);
    });
  };

  for (const auto& tok : tokens) {
    const std::size_t here = pos;
    pos += tok.text.size();
    switch (tok.kind) {
      case TokenKind::kAtom: {
        Atom atom;
        if (tok.text.front() == '[') {
          auto parsed = bracket_atom(tok.text, here);
          if (auto* bad = std::get_if<ParseIssue>(&parsed)) return *bad;
          atom = std::get<Atom>(std::move(parsed));
        } else {
          auto parsed = organic_atom(tok.text);
          if (!parsed) return issue(ParseErrorKind::kUnknownElement, here, "unknown element '" + tok.text + "'");
          atom = *parsed;
        }
        atoms.push_back(atom);
        atom_pos.push_back(here);
        const int idx = static_cast<int>(atoms.size()) - 1;
        if (prev >= 0) {
          bonds.push_back({prev, idx, pending.value_or(default_order(prev, idx))});
        } else if (pending) {
          return issue(ParseErrorKind::kMisplacedBond, pending_pos, "bond without a preceding atom");
        }
        pending.reset();
        prev = idx;
        branch_opened = false;
        break;
      }
      case TokenKind::kBond: {
        if (prev < 0 || pending) {
          return issue(ParseErrorKind::kMisplacedBond, here, "unexpected bond '" + tok.text + "'");
        }
        pending = bond_from_char(tok.text.front());
        pending_pos = here;
        branch_opened = false;
        break;
      }
      case TokenKind::kBranchOpen: {
        if (prev < 0 || pending || branch_opened) {
          return issue(ParseErrorKind::kUnmatchedBranch, here, "branch without a preceding atom");
        }
        branch_stack.push_back(prev);
        branch_opened = true;
        break;
      }
      case TokenKind::kBranchClose: {
        if (branch_stack.empty()) return issue(ParseErrorKind::kUnmatchedBranch, here, "unmatched ')'");
        if (branch_opened) return issue(ParseErrorKind::kUnmatchedBranch, here, "empty branch");
        if (pending) return issue(ParseErrorKind::kMisplacedBond, pending_pos, "dangling bond");
        prev = branch_stack.back();
        branch_stack.pop_back();
        break;
      }
      case TokenKind::kRingDigit: {
        if (prev < 0 || branch_opened) {
          return issue(ParseErrorKind::kUnmatchedRingDigit, here, "ring number without an atom");
        }
        const std::string label = tok.text.front() == '%' ? tok.text.substr(1) : tok.text;
        const auto it = open_rings.find(label);
        if (it == open_rings.end()) {
          open_rings.emplace(label, OpenRing{prev, pending, here});
        } else {
          const OpenRing ring = it->second;
          open_rings.erase(it);
          if (ring.atom == prev || bonded(ring.atom, prev)) {
            return issue(ParseErrorKind::kInvalidRingBond, here, "ring closure duplicates a bond");
          }
          if (ring.order && pending && *ring.order != *pending) {
            return issue(ParseErrorKind::kInvalidRingBond, here, "conflicting ring-closure bond orders");
          }
          const BondOrder order = pending ? *pending : ring.order.value_or(default_order(ring.atom, prev));
          bonds.push_back({ring.atom, prev, order});
        }
        pending.reset();
        break;
      }
      case TokenKind::kDot: {
        if (prev < 0 || pending || branch_opened) {
          return issue(ParseErrorKind::kMisplacedBond, here, "misplaced '.'");
        }
        prev = -1;
        break;
      }
      case TokenKind::kSpecial:
        return issue(ParseErrorKind::kUnknownCharacter, here, "unexpected token '" + tok.text + "'");
    }
  }

  if (pending) return issue(ParseErrorKind::kMisplacedBond, pending_pos, "dangling bond");
  if (!branch_stack.empty()) {
    return issue(ParseErrorKind::kUnmatchedBranch, smiles.size(), "unclosed '('");
  }
  if (!open_rings.empty()) {
    const auto& [label, ring] = *open_rings.begin();
    return issue(ParseErrorKind::kUnmatchedRingDigit, ring.position,
                 "ring number " + label + " never closed");
  }
  if (atoms.empty() || prev < 0) {
    return issue(ParseErrorKind::kEmptyInput, smiles.size(), "no atoms after '.'");
  }

  MoleculeGraph graph(std::move(atoms), std::move(bonds));
  if (auto bad = check_valence(graph, atom_pos)) return *bad;

  const auto in_ring = ring_bond_flags(graph);
  for (int i = 0; i < graph.num_atoms(); ++i) {
    if (!graph.atoms()[static_cast<std::size_t>(i)].aromatic) continue;
    const auto& nbs = graph.neighbors(i);
    const bool on_ring = std::any_of(nbs.begin(), nbs.end(), [&](const Neighbor& n) {
      return in_ring[static_cast<std::size_t>(n.bond)];
    });
    if (!on_ring) {
      return issue(ParseErrorKind::kAromaticOutsideRing, atom_pos[static_cast<std::size_t>(i)],
                   "aromatic atom outside a ring");
    }
  }
  return graph;
}

}  // namespace molrl::smiles
