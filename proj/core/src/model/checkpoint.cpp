//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/checkpoint.h"

#include <bit>
#include <cstring>
#include <utility>

#include <nlohmann/json.hpp>

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl::model {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[4] = {'M', 'G', 'R', 'L'};

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_tensors(std::string& out, const ModelParams& p) {
  for (const auto& t : p.tensors()) {
    out.append(reinterpret_cast<const char*>(t.data.data()), t.data.size() * sizeof(double));
  }
}

class Reader {
 public:
  explicit Reader(const std::string& bytes, std::size_t end) : bytes_(bytes), end_(end) {}

  void read(void* dst, std::size_t n, const char* what) {
    if (pos_ + n > end_) throw DataError(std::string("checkpoint truncated while reading ") + what);
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }
  std::uint32_t u32(const char* what) {
    std::uint32_t v;
    read(&v, 4, what);
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::string& bytes_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

void get_tensors(Reader& r, ModelParams& p, const char* what) {
  for (auto& t : p.tensors()) r.read(t.data.data(), t.data.size() * sizeof(double), what);
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  const auto& shape = ckpt.params.shape;
  if (ckpt.vocab.size() != shape.vocab_size) throw DataError("checkpoint vocabulary does not match model size");
  nlohmann::json h;
  h["vocab"] = ckpt.vocab.tokens();
  h["vocab_size"] = shape.vocab_size;
  h["num_layers"] = shape.num_layers;
  h["hidden_size"] = shape.hidden_size;
  h["one_hot_input"] = shape.one_hot_input;
  nlohmann::json shapes = nlohmann::json::array();
  for (const auto& t : ckpt.params.tensors()) shapes.push_back({{"name", t.name}, {"rows", t.rows}, {"cols", t.cols}});
  h["tensors"] = shapes;
  h["has_adam"] = ckpt.adam.has_value();
  if (ckpt.adam) h["adam_step"] = ckpt.adam->step;
  h["metadata"] = ckpt.metadata;
  const std::string header = h.dump();

  std::string out(kMagic, 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  put_tensors(out, ckpt.params);
  if (ckpt.adam) {
    put_tensors(out, ckpt.adam->m);
    put_tensors(out, ckpt.adam->v);
  }
  put_u32(out, io::crc32(std::string_view(out)));
  return out;
}

Checkpoint deserialize_checkpoint(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw DataError("not a checkpoint: bad magic bytes");
  if (bytes.size() < 16) throw DataError("checkpoint truncated");
  const std::size_t body = bytes.size() - 4;
  Reader r(bytes, body);
  char magic[4];
  r.read(magic, 4, "magic");
  const std::uint32_t version = r.u32("version");
  if (version != kCheckpointVersion) {
    throw DataError("checkpoint version " + std::to_string(version) + " unsupported (expected " +
                    std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint32_t header_len = r.u32("header length");
  std::string header(header_len, '\0');
  r.read(header.data(), header_len, "header");

  nlohmann::json h;
  Checkpoint ckpt;
  try {
    h = nlohmann::json::parse(header);
    ckpt.vocab = smiles::Vocabulary::from_tokens(h.at("vocab").get<std::vector<std::string>>());
    ModelShape shape;
    shape.vocab_size = h.at("vocab_size").get<int>();
    shape.num_layers = h.at("num_layers").get<int>();
    shape.hidden_size = h.at("hidden_size").get<int>();
    shape.one_hot_input = h.at("one_hot_input").get<bool>();
    if (shape.vocab_size != ckpt.vocab.size()) throw DataError("checkpoint vocab list disagrees with vocab_size");
    if (shape.num_layers < 1 || shape.hidden_size < 1) throw DataError("checkpoint has invalid dimensions");
    ckpt.params = ModelParams::zeros(shape);
    const auto& shapes = h.at("tensors");
    const auto expect = std::as_const(ckpt.params).tensors();
    if (shapes.size() != expect.size()) throw DataError("checkpoint tensor list does not match its dimensions");
    for (std::size_t k = 0; k < expect.size(); ++k) {
      if (shapes[k].at("name").get<std::string>() != expect[k].name || shapes[k].at("rows").get<long>() != expect[k].rows ||
          shapes[k].at("cols").get<long>() != expect[k].cols) {
        throw DataError("checkpoint tensor " + expect[k].name + " has an unexpected shape");
      }
    }
    ckpt.metadata = h.at("metadata").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint header: ") + e.what());
  }

  get_tensors(r, ckpt.params, "parameters");
  if (h.at("has_adam").get<bool>()) {
    AdamState s = AdamState::for_params(ckpt.params);
    s.step = h.at("adam_step").get<std::int64_t>();
    get_tensors(r, s.m, "optimizer moments");
    get_tensors(r, s.v, "optimizer moments");
    ckpt.adam = std::move(s);
  }
  if (r.pos() != body) throw DataError("checkpoint has trailing bytes or is truncated");
  std::uint32_t stored;
  std::memcpy(&stored, bytes.data() + body, 4);
  if (stored != io::crc32(std::string_view(bytes.data(), body))) throw DataError("checkpoint checksum mismatch");
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  io::write_file_atomic(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::string& path, const smiles::Vocabulary* expected_vocab) {
  Checkpoint ckpt;
  try {
    ckpt = deserialize_checkpoint(io::read_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
  if (expected_vocab && expected_vocab->size() != ckpt.params.shape.vocab_size) {
    throw DataError(path + ": shape mismatch, checkpoint vocab size " + std::to_string(ckpt.params.shape.vocab_size) +
                    " vs expected " + std::to_string(expected_vocab->size()));
  }
  return ckpt;
}

}  // namespace molrl::model
