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

// msrcode: build codes, inspect their metrics and manage node-file stores.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msr/construction.hpp"
#include "msr/error.hpp"
#include "msr/serialize.hpp"
#include "msr/store.hpp"
#include "msr/tradeoff.hpp"
#include "msr/transform.hpp"
#include "msr/verify.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitVerify = 3;

struct VerifyFailure {
  std::string what;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw msr::Error(msr::Errc::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw msr::Error(msr::Errc::kIo, "cannot write " + path);
}

msr::CodeSpec load_spec(const std::string& path) {
  return msr::code_from_string(slurp(path));
}

void require_verified(const msr::CodeSpec& code) {
  const auto mds = msr::check_mds(code);
  if (!mds.ok) throw VerifyFailure{"code is not MDS"};
  const auto sub = msr::check_subspace_property(code);
  if (!sub.ok) {
    throw VerifyFailure{"subspace property fails at node " +
                        std::to_string(sub.witness->node) + ": " + sub.witness->reason};
  }
}

std::string fractions(const std::vector<msr::Rational>& v) {
  std::string s;
  for (const auto& f : v) s += (s.empty() ? "" : " ") + f.str();
  return s;
}

void print_summary(std::ostream& os, const msr::CodeSpec& code,
                   const std::optional<msr::MetricsReport>& m) {
  os << "family " << msr::family_name(code.family) << "  (n, k, l) = (" << code.n << ", "
     << code.k << ", " << code.l << ")  r = " << code.r << "  field " << code.field.name()
     << "  q = " << code.field.order() << "\n";
  if (code.transform != "none") os << "transform " << code.transform << "\n";
  for (const auto& [key, value] : code.construction) os << "  " << key << " = " << value << "\n";
  if (!m) return;
  os << "mds " << (m->mds ? "yes" : "no") << "  subspace property "
     << (m->subspace_property ? "yes" : "no") << "\n";
  os << "bandwidth fraction " << fractions(m->bandwidth_fraction) << "\n";
  os << "access ratio R = " << m->access_ratio.str() << "\n";
  os << "optimal-access nodes " << m->optimal_access_nodes.size() << "/" << code.k << "\n";
  os << "average update " << m->average_update.str() << "  optimal update "
     << (m->optimal_update ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDS array codes with optimal repair bandwidth"};
  app.require_subcommand(1);
  bool skip_verify = false;
  app.add_flag("--skip-verify", skip_verify, "skip code verification (benchmarking only)");

  // construct
  auto* construct = app.add_subcommand("construct", "build a code and write its spec");
  std::string family = "general";
  std::size_t r = 2, m = 1;
  std::string field_text;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_tries;
  std::string out_path = "-";
  construct->add_option("--family", family, "general | two-parity | optimal-update")
      ->check(CLI::IsMember({"general", "two-parity", "optimal-update"}));
  construct->add_option("-r", r, "number of parities (general family)")->check(CLI::Range(2, 16));
  construct->add_option("-m", m, "digits; column length is r^m")->check(CLI::Range(1, 16));
  construct->add_option("--field", field_text, "field, e.g. 5, F_7, gf2^8");
  construct->add_option("--seed", seed, "search seed");
  construct->add_option("--max-tries", max_tries, "search attempts per field");
  construct->add_option("--out,-o", out_path, "output spec path, - for stdout");

  // transform
  auto* transform = app.add_subcommand("transform", "apply the access-lowering transform");
  std::string spec_path;
  transform->add_option("--spec", spec_path, "input spec")->required();
  transform->add_option("--out,-o", out_path, "output spec path, - for stdout");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "report bandwidth, access and update metrics");
  bool as_json = false;
  metrics->add_option("--spec", spec_path, "code spec")->required();
  metrics->add_flag("--json", as_json, "print JSON");

  // encode
  auto* encode = app.add_subcommand("encode", "encode a file into a new store");
  std::string input_path, store_dir;
  encode->add_option("--spec", spec_path, "code spec")->required();
  encode->add_option("--input,-i", input_path, "input file")->required()->check(CLI::ExistingFile);
  encode->add_option("--store,-s", store_dir, "store directory")->required();

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "delete node files");
  std::vector<std::size_t> nodes;
  corrupt->add_option("--store,-s", store_dir, "store directory")->required();
  corrupt->add_option("nodes", nodes, "0-based node indices")->required();

  // repair
  auto* repair = app.add_subcommand("repair", "rebuild one node from its repair subspaces");
  std::size_t node = 0;
  std::string report_path;
  repair->add_option("--store,-s", store_dir, "store directory")->required();
  repair->add_option("node", node, "0-based node index")->required();
  repair->add_option("--report", report_path, "write the repair transcript JSON here");

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild all missing nodes");
  reconstruct->add_option("--store,-s", store_dir, "store directory")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "write the original file back out");
  std::string output_path;
  decode->add_option("--store,-s", store_dir, "store directory")->required();
  decode->add_option("--output,-o", output_path, "output file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check node files against the manifest");
  verify->add_option("--store,-s", store_dir, "store directory")->required();

  // tradeoff
  auto* tradeoff = app.add_subcommand("tradeoff", "column length versus parities (CSV)");
  std::size_t k = 10, max_r = 9;
  tradeoff->add_option("-k", k, "systematic nodes")->check(CLI::PositiveNumber);
  tradeoff->add_option("--max-r", max_r, "largest r")->check(CLI::Range(2, 1000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      std::optional<msr::Field> field;
      if (!field_text.empty()) field = msr::parse_field(field_text);
      msr::CodeSpec code;
      if (family == "general") {
        msr::GeneralOptions opts;
        opts.field = field;
        opts.seed = seed;
        if (max_tries) opts.max_tries = *max_tries;
        code = msr::build_general(r, m, opts);
      } else if (family == "two-parity") {
        msr::TwoParityOptions opts;
        opts.field = field;
        code = msr::build_two_parity(m, opts);
      } else {
        msr::OptimalUpdateOptions opts;
        opts.field = field;
        opts.seed = seed;
        if (max_tries) opts.max_tries = *max_tries;
        code = msr::build_optimal_update(m, opts);
      }
      std::optional<msr::MetricsReport> report;
      if (!skip_verify) {
        report = msr::compute_metrics(code);
        if (!report->mds || !report->subspace_property) throw VerifyFailure{"built code failed verification"};
      }
      spill(out_path, msr::code_to_string(code) + (out_path == "-" ? "\n" : ""));
      print_summary(out_path == "-" ? std::cerr : std::cout, code, report);
    } else if (*transform) {
      const msr::CodeSpec out = msr::access_lowering(load_spec(spec_path));
      spill(out_path, msr::code_to_string(out) + (out_path == "-" ? "\n" : ""));
      print_summary(out_path == "-" ? std::cerr : std::cout, out, msr::compute_metrics(out));
    } else if (*metrics) {
      const msr::CodeSpec code = load_spec(spec_path);
      const msr::MetricsReport report = msr::compute_metrics(code);
      if (as_json) {
        std::cout << msr::metrics_to_json(report).dump(2) << "\n";
      } else {
        print_summary(std::cout, code, report);
      }
      if (!report.mds || !report.subspace_property) throw VerifyFailure{"code failed verification"};
    } else if (*encode) {
      const msr::CodeSpec code = load_spec(spec_path);
      if (!skip_verify) require_verified(code);
      const std::string data = slurp(input_path);
      const auto store = msr::NodeStore::create(
          store_dir, code,
          {reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
      std::cout << "encoded " << data.size() << " bytes into " << code.n << " nodes, "
                << store.manifest().stripes << " stripes, expansion "
                << store.manifest().expansion(code.l) << "\n";
    } else if (*corrupt) {
      auto store = msr::NodeStore::open(store_dir);
      store.corrupt(nodes);
      std::cout << "removed " << nodes.size() << " node file(s)\n";
    } else if (*repair) {
      auto store = msr::NodeStore::open(store_dir);
      const msr::RepairTranscript t = store.repair(node);
      if (!report_path.empty()) spill(report_path, msr::transcript_to_json(t).dump(2) + "\n");
      std::cout << "repaired node " << node << (t.optimal ? "" : " (parity fallback)")
                << ": transmitted " << t.total_transmitted() << " of " << t.surviving_symbols
                << " surviving symbols, fraction " << t.bandwidth_fraction().str()
                << ", accessed " << t.total_accessed() << "\n";
    } else if (*reconstruct) {
      auto store = msr::NodeStore::open(store_dir);
      const auto rebuilt = store.reconstruct();
      std::cout << "rebuilt " << rebuilt.size() << " node(s)";
      for (auto i : rebuilt) std::cout << " " << i;
      std::cout << "\n";
    } else if (*decode) {
      const auto store = msr::NodeStore::open(store_dir);
      const auto bytes = store.decode();
      spill(output_path, std::string(bytes.begin(), bytes.end()));
    } else if (*verify) {
      const auto store = msr::NodeStore::open(store_dir);
      const auto states = store.verify();
      bool ok = true;
      for (std::size_t i = 0; i < states.size(); ++i) {
        std::cout << store.node_path(i).filename().string() << " "
                  << msr::node_state_name(states[i]) << "\n";
        ok = ok && states[i] == msr::NodeState::kOk;
      }
      if (!ok) throw VerifyFailure{"store has damaged nodes"};
    } else if (*tradeoff) {
      std::cout << "r,l_highrate,l_lowrate\n";
      for (const auto& row : msr::tradeoff_table(k, max_r)) {
        char line[96];
        std::snprintf(line, sizeof line, "%zu,%.6g,%.6g\n", row.r, row.l_highrate, row.l_lowrate);
        std::cout << line;
      }
    }
  } catch (const VerifyFailure& e) {
    std::cerr << "msrcode: verification failed: " << e.what << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "msrcode: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
