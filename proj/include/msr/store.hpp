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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "msr/codec.hpp"
#include "msr/code_spec.hpp"

namespace msr {

inline constexpr const char* kStoreSchema = "msr-store/1";

// Bits carried by one stored element: floor(log2 q) for prime fields, w for
// GF(2^w). Every packed value is therefore a valid field element.
unsigned bits_per_element(const Field& field);

// Little-endian bit packing, LSB first, zero padded to whole elements.
std::vector<std::uint32_t> pack_bits(std::span<const std::uint8_t> bytes, unsigned bits);
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint32_t> elements, unsigned bits,
                                      std::size_t length);

struct Manifest {
  std::string codespec_file = "codespec.json";
  std::uint32_t codespec_crc32 = 0;
  unsigned bits_per_element = 0;
  std::size_t element_width = 0;
  std::size_t original_length = 0;
  std::size_t stripes = 0;
  std::vector<std::uint32_t> node_crc32;

  // Stored bytes per input byte, n * l * stripes * width / length.
  double expansion(std::size_t l) const noexcept;
};

enum class NodeState { kOk, kMissing, kChecksum };
const char* node_state_name(NodeState s) noexcept;

// Directory of node files node_000 .. node_{n-1} plus manifest.json and a
// copy of the code spec. Node files are plane-major: l planes, each holding
// one element per stripe. A missing file is an erased node.
class NodeStore {
 public:
  // Encodes `data` into a fresh store; the directory must be empty or absent.
  static NodeStore create(const std::filesystem::path& dir, const CodeSpec& code,
                          std::span<const std::uint8_t> data);
  // Loads the manifest and code spec and checks the spec checksum.
  static NodeStore open(const std::filesystem::path& dir);

  const CodeSpec& code() const noexcept { return code_; }
  const Manifest& manifest() const noexcept { return manifest_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path node_path(std::size_t node) const;

  std::vector<std::size_t> missing() const;
  // Reads every present file fully.
  std::vector<NodeState> verify() const;

  void corrupt(const std::vector<std::size_t>& nodes);

  // Rebuilds one node (present or not) from the others, reading only the
  // planes the repair plan accesses. The result must match its recorded
  // checksum (Error(kChecksum) otherwise).
  RepairTranscript repair(std::size_t node);
  // Rebuilds every missing or checksum-failing node. Returns them.
  std::vector<std::size_t> reconstruct();
  // Original bytes; needs intact systematic nodes.
  std::vector<std::uint8_t> decode() const;

 private:
  NodeStore() = default;
  Block read_node(std::size_t node) const;
  void write_node(std::size_t node, const Block& block) const;
  void write_manifest() const;

  std::filesystem::path dir_;
  CodeSpec code_;
  Manifest manifest_;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

}  // namespace msr
