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

#include <filesystem>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "msr/construction.hpp"
#include "msr/error.hpp"
#include "msr/serialize.hpp"
#include "msr/store.hpp"
#include "msr/tradeoff.hpp"
#include "msr/transform.hpp"
#include "support.hpp"

using namespace msr;
using msr::testing::Gen;
namespace fs = std::filesystem;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("msr_test_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::uint8_t> random_bytes(Gen& gen, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(gen.next());
  return out;
}

void flip_byte(const fs::path& p, std::size_t at) {
  std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(static_cast<std::streamoff>(at));
  char c;
  f.read(&c, 1);
  c = static_cast<char>(c ^ 1);
  f.seekp(static_cast<std::streamoff>(at));
  f.write(&c, 1);
}

}  // namespace

TEST_CASE("code specs survive a JSON round trip") {
  const std::vector<CodeSpec> codes = {build_two_parity(2), build_general(3, 2),
                                       build_optimal_update(2), msr::testing::small_f4_code(),
                                       access_lowering(build_general(2, 2))};
  for (const CodeSpec& code : codes) {
    const std::string text = code_to_string(code);
    const CodeSpec back = code_from_string(text);
    CHECK(back.family == code.family);
    CHECK(back.field == code.field);
    CHECK(back.encoding == code.encoding);
    CHECK(back.repairing == code.repairing);
    CHECK(back.provenance.size() == code.provenance.size());
    for (std::size_t i = 0; i < code.provenance.size(); ++i) {
      CHECK(back.provenance[i].repair_label == code.provenance[i].repair_label);
      CHECK(back.provenance[i].eigenspaces.size() == code.provenance[i].eigenspaces.size());
    }
    CHECK(back.transform == code.transform);
    CHECK(back.construction == code.construction);
    CHECK(code_to_string(back) == text);
  }
}

TEST_CASE("identical builds serialize to identical bytes") {
  GeneralOptions opts;
  opts.seed = 7;
  CHECK(code_to_string(build_general(3, 2, opts)) == code_to_string(build_general(3, 2, opts)));
  CHECK(code_to_string(build_optimal_update(3)) == code_to_string(build_optimal_update(3)));
}

TEST_CASE("malformed specs are rejected") {
  const nlohmann::json good = code_to_json(build_two_parity(1));
  CHECK(code_of([] { code_from_string("{"); }) == Errc::kFormat);
  auto j = good;
  j["schema"] = "other/1";
  CHECK(code_of([&] { code_from_json(j); }) == Errc::kFormat);
  j = good;
  j["encoding"][1][0][0][0] = 99;
  CHECK(code_of([&] { code_from_json(j); }) == Errc::kFormat);
  j = good;
  j["encoding"][1].erase(0);
  CHECK(code_of([&] { code_from_json(j); }) == Errc::kFormat);
  j = good;
  j["field"] = {{"kind", "prime"}, {"q", 4}};
  CHECK(code_of([&] { code_from_json(j); }) == Errc::kFormat);
  j = good;
  j.erase("repairing");
  CHECK(code_of([&] { code_from_json(j); }) == Errc::kFormat);
}

TEST_CASE("field text parsing") {
  CHECK(parse_field("5") == Field::prime(5));
  CHECK(parse_field("F_7") == Field::prime(7));
  CHECK(parse_field("gf2^8") == Field::binary(8));
  CHECK(parse_field("2^2:0x7") == Field::binary(2, 7));
  CHECK_THROWS_AS(parse_field("seven"), Error);
  CHECK(field_from_json(field_to_json(Field::binary(16))) == Field::binary(16));
}

TEST_CASE("bit packing round-trips and stays inside the field") {
  Gen gen(91);
  for (const Field& f : {Field::prime(2), Field::prime(5), Field::prime(7), Field::prime(257),
                         Field::prime(65521), Field::binary(3), Field::binary(8)}) {
    const unsigned bits = bits_per_element(f);
    CHECK((1u << bits) <= f.order());
    for (std::size_t len : {0, 1, 2, 3, 17, 100}) {
      const auto bytes = random_bytes(gen, len);
      const auto elements = pack_bits(bytes, bits);
      CHECK(elements.size() == (len * 8 + bits - 1) / bits);
      for (auto e : elements) CHECK(f.contains(e));
      CHECK(unpack_bits(elements, bits, len) == bytes);
    }
  }
  CHECK(bits_per_element(Field::prime(5)) == 2);
  CHECK(bits_per_element(Field::prime(257)) == 8);
}

TEST_CASE("store round trip through every erasure pattern") {
  Gen gen(92);
  const CodeSpec code = build_two_parity(2);
  for (std::size_t len : {0, 1, 23, 24, 25, 1000}) {
    TempDir dir("rt" + std::to_string(len));
    const auto bytes = random_bytes(gen, len);
    NodeStore::create(dir.path, code, bytes);
    for (const auto& pattern : msr::testing::subsets_up_to(code.n, code.r)) {
      NodeStore store = NodeStore::open(dir.path);
      store.corrupt(pattern);
      CHECK(store.missing() == pattern);
      CHECK(store.reconstruct() == pattern);
      CHECK(store.decode() == bytes);
    }
    const auto states = NodeStore::open(dir.path).verify();
    for (auto s : states) CHECK(s == NodeState::kOk);
  }
}

TEST_CASE("store repair rebuilds each node and reports its transcript") {
  Gen gen(93);
  for (const CodeSpec& code : {build_two_parity(2), build_general(3, 2),
                               build_two_parity(2, {Field::prime(257), std::nullopt})}) {
    TempDir dir("repair");
    const auto bytes = random_bytes(gen, 5000);
    NodeStore::create(dir.path, code, bytes);
    for (std::size_t i = 0; i < code.n; ++i) {
      NodeStore store = NodeStore::open(dir.path);
      store.corrupt({i});
      const RepairTranscript t = store.repair(i);
      CHECK(t.stripes == store.manifest().stripes);
      CHECK(t.surviving_symbols == (code.n - 1) * code.l * t.stripes);
      if (code.is_systematic(i)) {
        CHECK(t.optimal);
        CHECK(t.bandwidth_fraction() == Rational(1, static_cast<std::int64_t>(code.r)));
      } else {
        CHECK_FALSE(t.optimal);
      }
      CHECK(store.decode() == bytes);
    }
  }
}

TEST_CASE("store damage detection") {
  Gen gen(94);
  const CodeSpec code = build_two_parity(2);
  TempDir dir("damage");
  const auto bytes = random_bytes(gen, 3000);
  NodeStore::create(dir.path, code, bytes);
  NodeStore store = NodeStore::open(dir.path);

  flip_byte(store.node_path(2), 5);
  CHECK(store.verify()[2] == NodeState::kChecksum);
  CHECK(code_of([&] { store.decode(); }) == Errc::kChecksum);
  CHECK(store.reconstruct() == std::vector<std::size_t>{2});
  CHECK(store.decode() == bytes);

  // A damaged helper shows up as a checksum failure of the rebuilt node.
  const RepairPlan plan = plan_repair(code, 0);
  flip_byte(store.node_path(1), plan.accessed[0].front() * store.manifest().stripes);
  store.corrupt({0});
  CHECK(code_of([&] { store.repair(0); }) == Errc::kChecksum);

  store.corrupt({3});
  CHECK(code_of([&] { store.repair(0); }) == Errc::kInvalidArgument);

  {
    std::ofstream spec(dir.path / "codespec.json", std::ios::app);
    spec << " ";
  }
  CHECK(code_of([&] { NodeStore::open(dir.path); }) == Errc::kChecksum);
  CHECK(code_of([&] { NodeStore::create(dir.path, code, bytes); }) == Errc::kIo);
}

TEST_CASE("transcript JSON carries the raw counts") {
  Gen gen(95);
  const CodeSpec code = build_two_parity(2);
  StorageArray a = encode(code, gen.data(code));
  a.erase(1);
  const RepairTranscript t = repair_systematic(code, a);
  const auto j = transcript_to_json(t);
  CHECK(j["symbols_transmitted"] == 14);
  CHECK(j["surviving_symbols"] == 28);
  CHECK(j["bandwidth_fraction"] == "1/2");
  CHECK(j["helpers"].size() == 7);
  CHECK(j["helpers"][0]["payload"].size() == 2);
}

TEST_CASE("tradeoff table") {
  const auto rows = tradeoff_table(10, 9);
  REQUIRE(rows.size() == 8);
  CHECK(rows.front().r == 2);
  CHECK(rows.back().r == 9);
  CHECK(rows.back().l_highrate == doctest::Approx(9.0));
  CHECK(rows.back().l_lowrate == 9.0);
  CHECK(rows[2].l_highrate == doctest::Approx(16.0));  // r = 4: 4^2
  CHECK_THROWS_AS(tradeoff_table(0, 5), Error);
}
