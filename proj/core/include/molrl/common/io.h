//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_COMMON_IO_H_
#define MOLRL_COMMON_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace molrl::io {

std::string read_file(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

std::uint32_t crc32(std::span<const std::uint8_t> bytes);
std::uint32_t crc32(std::string_view bytes);

// Hex CRC32 of a file's contents, used for run manifests.
std::string file_checksum(const std::string& path);

}  // namespace molrl::io

#endif  // MOLRL_COMMON_IO_H_
