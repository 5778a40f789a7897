//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/elements.h"

#include <array>

namespace molrl::smiles {
namespace {

constexpr std::array<int, 1> kMonovalent{1};
constexpr std::array<int, 1> kBoron{3};
constexpr std::array<int, 1> kTetravalent{4};
constexpr std::array<int, 1> kNitrogen{3};
constexpr std::array<int, 2> kPhosphorus{3, 5};
constexpr std::array<int, 1> kOxygen{2};
constexpr std::array<int, 3> kSulfur{2, 4, 6};
constexpr std::array<int, 3> kSelenium{2, 4, 6};

const std::array<ElementInfo, 13> kElements{{
    {"H", 1, 1.008, 1, kMonovalent},
    {"B", 5, 10.81, 13, kBoron},
    {"C", 6, 12.011, 14, kTetravalent},
    {"N", 7, 14.007, 15, kNitrogen},
    {"O", 8, 15.999, 16, kOxygen},
    {"F", 9, 18.998, 17, kMonovalent},
    {"Si", 14, 28.085, 14, kTetravalent},
    {"P", 15, 30.974, 15, kPhosphorus},
    {"S", 16, 32.06, 16, kSulfur},
    {"Cl", 17, 35.45, 17, kMonovalent},
    {"Se", 34, 78.971, 16, kSelenium},
    {"Br", 35, 79.904, 17, kMonovalent},
    {"I", 53, 126.904, 17, kMonovalent},
}};

}  // namespace

const ElementInfo* find_element(std::string_view symbol) {
  for (const auto& e : kElements) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

const ElementInfo& hydrogen() { return kElements[0]; }

}  // namespace molrl::smiles
