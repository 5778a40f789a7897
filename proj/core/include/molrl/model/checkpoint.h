//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_CHECKPOINT_H_
#define MOLRL_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "molrl/model/optimizer.h"
#include "molrl/model/params.h"
#include "molrl/smiles/vocabulary.h"

namespace molrl::model {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// File layout: "MGRL", u32 version, u32 header length, JSON header, the
// f64 tensors (little endian) in ModelParams::tensors() order, optionally
// followed by Adam m and v in the same order, then a u32 CRC32 of every
// preceding byte.
struct Checkpoint {
  smiles::Vocabulary vocab;
  ModelParams params;
  std::optional<AdamState> adam;
  std::map<std::string, std::string> metadata;
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint deserialize_checkpoint(const std::string& bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

// Throws DataError on bad magic, unsupported version, truncation, checksum
// failure or inconsistent shapes. If `expected_vocab` is given, its size must
// match the stored model.
Checkpoint load_checkpoint(const std::string& path, const smiles::Vocabulary* expected_vocab = nullptr);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_CHECKPOINT_H_
