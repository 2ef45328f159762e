// Copyright 2026 The msrcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msr/store.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>

#include "json.hpp"
#include "msr/error.hpp"
#include "msr/serialize.hpp"

namespace msr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIo, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::kIo, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::uint32_t crc_of_text(const std::string& text) {
  return crc32_of({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void put_element(std::uint8_t* dst, std::uint32_t v, std::size_t width) {
  for (std::size_t b = 0; b < width; ++b) dst[b] = static_cast<std::uint8_t>(v >> (8 * b));
}

std::uint32_t get_element(const std::uint8_t* src, std::size_t width) {
  std::uint32_t v = 0;
  for (std::size_t b = 0; b < width; ++b) v |= static_cast<std::uint32_t>(src[b]) << (8 * b);
  return v;
}

json manifest_to_json(const Manifest& m, std::size_t l) {
  return {{"schema", kStoreSchema},
          {"codespec", {{"file", m.codespec_file}, {"crc32", m.codespec_crc32}}},
          {"bits_per_element", m.bits_per_element},
          {"element_width", m.element_width},
          {"original_length", m.original_length},
          {"stripes", m.stripes},
          {"expansion", m.expansion(l)},
          {"node_crc32", m.node_crc32}};
}

Manifest manifest_from_json(const json& j) {
  try {
    if (j.at("schema") != kStoreSchema) throw Error(Errc::kFormat, "unsupported store schema");
    Manifest m;
    m.codespec_file = j.at("codespec").at("file").get<std::string>();
    m.codespec_crc32 = j.at("codespec").at("crc32").get<std::uint32_t>();
    m.bits_per_element = j.at("bits_per_element").get<unsigned>();
    m.element_width = j.at("element_width").get<std::size_t>();
    m.original_length = j.at("original_length").get<std::size_t>();
    m.stripes = j.at("stripes").get<std::size_t>();
    m.node_crc32 = j.at("node_crc32").get<std::vector<std::uint32_t>>();
    if (m.codespec_file.find('/') != std::string::npos) {
      throw Error(Errc::kFormat, "code spec must live inside the store");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::kFormat, std::string("bad manifest: ") + e.what());
  }
}

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
    crc = crc32(crc, bytes.data() + pos, chunk);
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

unsigned bits_per_element(const Field& field) {
  if (field.kind() == FieldKind::kBinary) return field.degree();
  unsigned bits = 0;
  while ((2u << bits) <= field.order()) ++bits;
  return bits;
}

std::vector<std::uint32_t> pack_bits(std::span<const std::uint8_t> bytes, unsigned bits) {
  if (bits == 0 || bits > 16) throw Error(Errc::kInvalidArgument, "bits per element out of range");
  std::vector<std::uint32_t> out((bytes.size() * 8 + bits - 1) / bits, 0);
  std::uint64_t acc = 0;
  unsigned have = 0;
  std::size_t idx = 0;
  for (auto b : bytes) {
    acc |= static_cast<std::uint64_t>(b) << have;
    have += 8;
    while (have >= bits) {
      out[idx++] = static_cast<std::uint32_t>(acc & ((1u << bits) - 1));
      acc >>= bits;
      have -= bits;
    }
  }
  if (have > 0) out[idx++] = static_cast<std::uint32_t>(acc);
  return out;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint32_t> elements, unsigned bits,
                                      std::size_t length) {
  if (bits == 0 || bits > 16) throw Error(Errc::kInvalidArgument, "bits per element out of range");
  if (elements.size() * bits < length * 8) {
    throw Error(Errc::kFormat, "not enough elements for the recorded length");
  }
  std::vector<std::uint8_t> out;
  out.reserve(length);
  std::uint64_t acc = 0;
  unsigned have = 0;
  for (auto e : elements) {
    if (out.size() == length) break;
    acc |= static_cast<std::uint64_t>(e & ((1u << bits) - 1)) << have;
    have += bits;
    while (have >= 8 && out.size() < length) {
      out.push_back(static_cast<std::uint8_t>(acc));
      acc >>= 8;
      have -= 8;
    }
  }
  return out;
}

double Manifest::expansion(std::size_t l) const noexcept {
  if (original_length == 0) return 0;
  return static_cast<double>(node_crc32.size() * l * stripes * element_width) /
         static_cast<double>(original_length);
}

const char* node_state_name(NodeState s) noexcept {
  switch (s) {
    case NodeState::kOk: return "ok";
    case NodeState::kMissing: return "missing";
    case NodeState::kChecksum: return "checksum mismatch";
  }
  return "?";
}

fs::path NodeStore::node_path(std::size_t node) const {
  char name[32];
  std::snprintf(name, sizeof name, "node_%03zu", node);
  return dir_ / name;
}

NodeStore NodeStore::create(const fs::path& dir, const CodeSpec& code,
                            std::span<const std::uint8_t> data) {
  code.validate();
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    throw Error(Errc::kIo, dir.string() + " is not empty");
  }
  fs::create_directories(dir);

  NodeStore store;
  store.dir_ = dir;
  store.code_ = code;
  Manifest& m = store.manifest_;
  m.bits_per_element = bits_per_element(code.field);
  m.element_width = code.field.element_width();
  m.original_length = data.size();

  const std::vector<std::uint32_t> elements = pack_bits(data, m.bits_per_element);
  const std::size_t per_stripe = code.k * code.l;
  m.stripes = std::max<std::size_t>(1, (elements.size() + per_stripe - 1) / per_stripe);

  const std::size_t w = m.element_width;
  std::vector<Block> blocks(code.k, Block(code.l * m.stripes * w, 0));
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const std::size_t s = e / per_stripe;
    const std::size_t j = (e % per_stripe) / code.l;
    const std::size_t p = e % code.l;
    put_element(blocks[j].data() + (p * m.stripes + s) * w, elements[e], w);
  }
  const BlockArray array = encode_blocks(code, blocks, m.stripes);

  const std::string spec_text = code_to_string(code);
  write_text(dir / m.codespec_file, spec_text);
  m.codespec_crc32 = crc_of_text(spec_text);
  for (std::size_t i = 0; i < code.n; ++i) {
    m.node_crc32.push_back(crc32_of(*array.nodes[i]));
    store.write_node(i, *array.nodes[i]);
  }
  store.write_manifest();
  return store;
}

NodeStore NodeStore::open(const fs::path& dir) {
  NodeStore store;
  store.dir_ = dir;
  const auto manifest_bytes = read_file(dir / "manifest.json");
  json j;
  try {
    j = json::parse(manifest_bytes.begin(), manifest_bytes.end());
  } catch (const json::exception& e) {
    throw Error(Errc::kFormat, std::string("manifest is not JSON: ") + e.what());
  }
  store.manifest_ = manifest_from_json(j);
  const auto spec_bytes = read_file(dir / store.manifest_.codespec_file);
  if (crc32_of(spec_bytes) != store.manifest_.codespec_crc32) {
    throw Error(Errc::kChecksum, "code spec does not match the manifest");
  }
  store.code_ = code_from_string(std::string(spec_bytes.begin(), spec_bytes.end()));
  const Manifest& m = store.manifest_;
  if (m.node_crc32.size() != store.code_.n ||
      m.element_width != store.code_.field.element_width() ||
      m.bits_per_element != bits_per_element(store.code_.field) || m.stripes == 0) {
    throw Error(Errc::kFormat, "manifest does not match the code spec");
  }
  return store;
}

void NodeStore::write_manifest() const {
  write_text(dir_ / "manifest.json", manifest_to_json(manifest_, code_.l).dump(2) + "\n");
}

Block NodeStore::read_node(std::size_t node) const {
  Block b = read_file(node_path(node));
  if (b.size() != code_.l * plane_bytes(code_, manifest_.stripes)) {
    throw Error(Errc::kFormat, node_path(node).string() + " has the wrong size");
  }
  return b;
}

void NodeStore::write_node(std::size_t node, const Block& block) const {
  write_file(node_path(node), block);
}

std::vector<std::size_t> NodeStore::missing() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (!fs::exists(node_path(i))) out.push_back(i);
  }
  return out;
}

std::vector<NodeState> NodeStore::verify() const {
  std::vector<NodeState> out;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (!fs::exists(node_path(i))) {
      out.push_back(NodeState::kMissing);
      continue;
    }
    const Block b = read_file(node_path(i));
    out.push_back(crc32_of(b) == manifest_.node_crc32[i] ? NodeState::kOk
                                                         : NodeState::kChecksum);
  }
  return out;
}

void NodeStore::corrupt(const std::vector<std::size_t>& nodes) {
  for (auto i : nodes) {
    if (i >= code_.n) throw Error(Errc::kInvalidArgument, "node index out of range");
    fs::remove(node_path(i));
  }
}

RepairTranscript NodeStore::repair(std::size_t node) {
  if (node >= code_.n) throw Error(Errc::kInvalidArgument, "node index out of range");
  for (auto i : missing()) {
    if (i != node) {
      throw Error(Errc::kInvalidArgument,
                  "node " + std::to_string(i) + " is also missing; use reconstruct");
    }
  }
  const RepairPlan plan = plan_repair(code_, node);
  const std::size_t bytes = plane_bytes(code_, manifest_.stripes);
  std::map<std::size_t, std::ifstream> files;
  RepairTranscript transcript;
  const Block out = repair_block(
      code_, plan, manifest_.stripes,
      [&](std::size_t n, std::size_t p, std::span<std::uint8_t> dst) {
        auto it = files.find(n);
        if (it == files.end()) {
          it = files.emplace(n, std::ifstream(node_path(n), std::ios::binary)).first;
          if (!it->second) throw Error(Errc::kIo, "cannot open " + node_path(n).string());
        }
        it->second.seekg(static_cast<std::streamoff>(p * bytes));
        it->second.read(reinterpret_cast<char*>(dst.data()), static_cast<std::streamsize>(bytes));
        if (!it->second) throw Error(Errc::kFormat, node_path(n).string() + " is truncated");
      },
      &transcript);
  if (crc32_of(out) != manifest_.node_crc32[node]) {
    throw Error(Errc::kChecksum,
                "rebuilt node " + std::to_string(node) + " does not match its checksum");
  }
  write_node(node, out);
  return transcript;
}

std::vector<std::size_t> NodeStore::reconstruct() {
  BlockArray array;
  array.stripes = manifest_.stripes;
  std::vector<std::size_t> lost;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (fs::exists(node_path(i))) {
      Block b = read_file(node_path(i));
      if (crc32_of(b) == manifest_.node_crc32[i]) {
        array.nodes.emplace_back(std::move(b));
        continue;
      }
    }
    array.nodes.emplace_back();
    lost.push_back(i);
  }
  reconstruct_blocks(code_, array);
  for (auto i : lost) {
    if (crc32_of(*array.nodes[i]) != manifest_.node_crc32[i]) {
      throw Error(Errc::kChecksum,
                  "rebuilt node " + std::to_string(i) + " does not match its checksum");
    }
    write_node(i, *array.nodes[i]);
  }
  return lost;
}

std::vector<std::uint8_t> NodeStore::decode() const {
  const std::size_t w = manifest_.element_width;
  const std::size_t stripes = manifest_.stripes;
  const std::size_t per_stripe = code_.k * code_.l;
  std::vector<std::uint32_t> elements(per_stripe * stripes);
  for (std::size_t j = 0; j < code_.k; ++j) {
    if (!fs::exists(node_path(j))) {
      throw Error(Errc::kUnrecoverable,
                  "systematic node " + std::to_string(j) + " is missing; reconstruct first");
    }
    const Block b = read_node(j);
    if (crc32_of(b) != manifest_.node_crc32[j]) {
      throw Error(Errc::kChecksum, "node " + std::to_string(j) + " fails its checksum");
    }
    for (std::size_t p = 0; p < code_.l; ++p) {
      for (std::size_t s = 0; s < stripes; ++s) {
        elements[s * per_stripe + j * code_.l + p] = get_element(b.data() + (p * stripes + s) * w, w);
      }
    }
  }
  return unpack_bits(elements, manifest_.bits_per_element, manifest_.original_length);
}

}  // namespace msr
