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

#include "msr/serialize.hpp"

#include <cstdlib>

#include "msr/error.hpp"

namespace msr {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::kFormat, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::uint64_t need_uint(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_unsigned()) bad(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Subspace subspace_from_json(const Field& field, const json& j, std::size_t l) {
  return Subspace::span(matrix_from_json(field, j, l));
}

}  // namespace

json field_to_json(const Field& field) {
  if (field.kind() == FieldKind::kPrime) return {{"kind", "prime"}, {"q", field.order()}};
  return {{"kind", "gf2"}, {"w", field.degree()}, {"poly", field.polynomial()}};
}

Field field_from_json(const json& j) {
  try {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "prime") return Field::prime(static_cast<std::uint32_t>(need_uint(j, "q")));
    if (kind == "gf2") {
      return Field::binary(static_cast<unsigned>(need_uint(j, "w")),
                           static_cast<std::uint32_t>(need_uint(j, "poly")));
    }
    bad("unknown field kind \"" + kind + "\"");
  } catch (const Error& e) {
    if (e.code() == Errc::kFormat) throw;
    bad(std::string("bad field: ") + e.what());
  } catch (const json::exception& e) {
    bad(std::string("bad field: ") + e.what());
  }
}

Field parse_field(const std::string& text) {
  auto number = [&](const std::string& s) -> std::uint32_t {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s.c_str(), &end, 0);
    if (s.empty() || *end != '\0' || v > 0xffffffffUL) {
      throw Error(Errc::kInvalidArgument, "cannot parse field \"" + text + "\"");
    }
    return static_cast<std::uint32_t>(v);
  };
  std::string t = text;
  if (t.rfind("F_", 0) == 0) t = t.substr(2);
  if (t.rfind("gf2^", 0) == 0 || t.rfind("2^", 0) == 0) {
    t = t.substr(t.find('^') + 1);
    const auto colon = t.find(':');
    if (colon == std::string::npos) return Field::binary(number(t));
    return Field::binary(number(t.substr(0, colon)), number(t.substr(colon + 1)));
  }
  return Field::prime(number(t));
}

json matrix_to_json(const Matrix& m) { return m.to_rows(); }

Matrix matrix_from_json(const Field& field, const json& j, std::size_t cols) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) bad("matrix row has wrong length");
    std::vector<std::uint32_t> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) bad("matrix entries must be non-negative integers");
      const auto x = v.get<std::uint64_t>();
      if (x >= field.order()) bad("matrix entry outside " + field.name());
      r.push_back(static_cast<std::uint32_t>(x));
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return Matrix(field, 0, cols);
  return Matrix::from_rows(field, rows);
}

json code_to_json(const CodeSpec& code) {
  json j;
  j["schema"] = kCodeSpecSchema;
  j["family"] = family_name(code.family);
  j["n"] = code.n;
  j["k"] = code.k;
  j["r"] = code.r;
  j["m"] = code.m;
  j["l"] = code.l;
  j["field"] = field_to_json(code.field);
  j["transform"] = code.transform;
  j["construction"] = code.construction;
  json enc = json::array();
  for (const auto& row : code.encoding) {
    json r = json::array();
    for (const auto& a : row) r.push_back(matrix_to_json(a));
    enc.push_back(std::move(r));
  }
  j["encoding"] = std::move(enc);
  json rep = json::array();
  for (const auto& row : code.repairing) {
    json r = json::array();
    for (const auto& s : row) r.push_back(s ? subspace_to_json(*s) : json(nullptr));
    rep.push_back(std::move(r));
  }
  j["repairing"] = std::move(rep);
  json prov = json::array();
  for (const auto& p : code.provenance) {
    json spaces = json::array();
    for (const auto& e : p.eigenspaces) {
      spaces.push_back({{"label", e.label},
                        {"eigenvalue", e.eigenvalue},
                        {"basis", subspace_to_json(e.space)}});
    }
    prov.push_back({{"repair", p.repair_label}, {"eigenspaces", std::move(spaces)}});
  }
  j["provenance"] = std::move(prov);
  return j;
}

CodeSpec code_from_json(const json& j) {
  try {
    if (need(j, "schema") != kCodeSpecSchema) bad("unsupported schema");
    CodeSpec code;
    code.family = family_from_name(need(j, "family").get<std::string>());
    code.n = need_uint(j, "n");
    code.k = need_uint(j, "k");
    code.r = need_uint(j, "r");
    code.m = need_uint(j, "m");
    code.l = need_uint(j, "l");
    if (code.l == 0 || code.l > kMaxColumnLength) bad("column length out of range");
    code.field = field_from_json(need(j, "field"));
    code.transform = need(j, "transform").get<std::string>();
    code.construction = need(j, "construction").get<std::map<std::string, std::int64_t>>();
    const json& enc = need(j, "encoding");
    if (!enc.is_array() || enc.size() != code.r) bad("encoding must have r rows");
    for (const auto& row : enc) {
      if (!row.is_array() || row.size() != code.k) bad("encoding row must have k blocks");
      std::vector<Matrix> r;
      for (const auto& a : row) r.push_back(matrix_from_json(code.field, a, code.l));
      code.encoding.push_back(std::move(r));
    }
    const json& rep = need(j, "repairing");
    if (!rep.is_array() || rep.size() != code.k) bad("repairing must have k rows");
    for (const auto& row : rep) {
      if (!row.is_array() || row.size() != code.n) bad("repairing row must have n entries");
      std::vector<std::optional<Subspace>> r;
      for (const auto& s : row) {
        if (s.is_null()) {
          r.emplace_back();
        } else {
          r.emplace_back(subspace_from_json(code.field, s, code.l));
        }
      }
      code.repairing.push_back(std::move(r));
    }
    for (const auto& p : need(j, "provenance")) {
      NodeProvenance np;
      np.repair_label = need(p, "repair").get<std::string>();
      for (const auto& e : need(p, "eigenspaces")) {
        np.eigenspaces.push_back({need(e, "label").get<std::string>(),
                                  static_cast<std::uint32_t>(need_uint(e, "eigenvalue")),
                                  subspace_from_json(code.field, need(e, "basis"), code.l)});
      }
      code.provenance.push_back(std::move(np));
    }
    if (!code.provenance.empty() && code.provenance.size() != code.k) {
      bad("provenance must cover every systematic node");
    }
    code.validate();
    return code;
  } catch (const json::exception& e) {
    bad(std::string("bad code spec: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::kFormat) throw;
    bad(std::string("bad code spec: ") + e.what());
  }
}

std::string code_to_string(const CodeSpec& code) { return code_to_json(code).dump(); }

CodeSpec code_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return code_from_json(j);
}

json transcript_to_json(const RepairTranscript& t) {
  json helpers = json::array();
  for (const auto& h : t.helpers) {
    json e = {{"node", h.node}, {"symbols_accessed", h.accessed},
              {"symbols_transmitted", h.transmitted}};
    if (!h.payload.empty()) e["payload"] = h.payload;
    helpers.push_back(std::move(e));
  }
  json j = {{"erased_node", t.erased_node},
            {"optimal", t.optimal},
            {"stripes", t.stripes},
            {"surviving_symbols", t.surviving_symbols},
            {"symbols_accessed", t.total_accessed()},
            {"symbols_transmitted", t.total_transmitted()},
            {"bandwidth_fraction", t.bandwidth_fraction().str()},
            {"access_fraction", t.access_fraction().str()},
            {"helpers", std::move(helpers)}};
  if (!t.recovered.empty()) j["recovered"] = t.recovered;
  return j;
}

json metrics_to_json(const MetricsReport& m) {
  json fractions = json::array();
  for (const auto& f : m.bandwidth_fraction) fractions.push_back(f.str());
  return {{"bandwidth_fraction", std::move(fractions)},
          {"access", m.access},
          {"access_ratio", m.access_ratio.str()},
          {"update_counts", m.update_counts},
          {"average_update", m.average_update.str()},
          {"optimal_access_nodes", m.optimal_access_nodes},
          {"optimal_update", m.optimal_update},
          {"mds", m.mds},
          {"subspace_property", m.subspace_property}};
}

}  // namespace msr
