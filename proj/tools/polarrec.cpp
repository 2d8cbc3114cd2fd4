// Copyright 2026 The polarrec authors
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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polar/limits.hpp"
#include "polar/reconstruct.hpp"
#include "polar/recognition.hpp"
#include "polar/selftest.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 invalid input data, 3 recognition
// failure, 4 selftest failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidData = 2;
constexpr int kExitRecognition = 3;
constexpr int kExitSelftest = 4;

int exit_code_for(const polar::Error& e) {
  switch (e.kind()) {
    case polar::ErrorKind::InvalidData: return kExitInvalidData;
    default: return kExitRecognition;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw polar::Error(polar::ErrorKind::InvalidData, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw polar::Error(polar::ErrorKind::InvalidData, "cannot write '" + out_path + "'");
  out << text << "\n";
}

polar::Catalog load_catalog(const std::string& path) {
  return path.empty() ? polar::Catalog::builtin() : polar::Catalog::load_file(path);
}

// Fault injection for round-trip --corrupt: make the lattice a 3-chain,
// which no Boolean validation can accept.
polar::HistoryLattice corrupt(const polar::HistoryLattice& l) {
  polar::HistoryLattice bad = l;
  if (bad.nodes.size() < 2) return bad;
  polar::HistoryNode extra;
  extra.id = "corrupt";
  if (bad.nodes[0].ref.kind == polar::GroupRef::Kind::Concrete)
    extra.ref = polar::GroupRef::concrete(polar::PermGroup::trivial(bad.domain_size));
  else
    extra.ref = polar::GroupRef::symbolic("corrupt");
  bad.nodes.push_back(extra);
  bad.edges.push_back({bad.min_id, "corrupt"});
  bad.edges.push_back({"corrupt", bad.max_id});
  return bad;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarrec - recognition of Coxeter polar representations from "
               "isotropy histories"};
  app.require_subcommand(1);

  std::string catalog_path;
  app.add_option("--catalog", catalog_path,
                 "catalog JSON file (default: the embedded catalog)");
  std::uint64_t max_order = 5000;
  app.add_option("--max-order", max_order,
                 "cap for exhaustive enumeration oracles (default 5000)");

  // extract-history
  auto* cmd_extract = app.add_subcommand(
      "extract-history", "history of a finite reflection representation");
  std::string type_expr;
  std::string out_path;
  cmd_extract->add_option("type", type_expr, "Coxeter type expression, e.g. B3 or A2xA1")
      ->required();
  cmd_extract->add_option("--out", out_path, "output file (default: stdout)");

  // recognize
  auto* cmd_recognize = app.add_subcommand(
      "recognize", "recognize the polar representation of a history + dimension");
  std::string history_path;
  int dim = -1;
  cmd_recognize->add_option("history", history_path, "history JSON file")->required();
  cmd_recognize->add_option("--dim", dim, "total representation dimension")->required();

  // round-trip
  auto* cmd_round = app.add_subcommand(
      "round-trip", "extract -> recognize -> compare against the source type");
  std::string rt_type;
  int extra_dim = 0;
  bool do_corrupt = false;
  cmd_round->add_option("type", rt_type, "Coxeter type expression")->required();
  cmd_round->add_option("--extra-dim", extra_dim, "trivial-summand padding");
  cmd_round->add_flag("--corrupt", do_corrupt, "inject a lattice fault (must fail)");

  // reconstruct-check
  auto* cmd_recon = app.add_subcommand(
      "reconstruct-check", "build the G x C/~ model of a chamber and verify it");
  std::string recon_type;
  int samples = 1;
  bool recon_json = false;
  cmd_recon->add_option("type", recon_type, "Coxeter type expression")->required();
  cmd_recon->add_option("--samples", samples, "sample points per face")
      ->check(CLI::PositiveNumber);
  cmd_recon->add_flag("--json", recon_json, "machine-readable report");

  // catalog
  auto* cmd_catalog = app.add_subcommand("catalog", "catalog operations");
  cmd_catalog->require_subcommand(1);
  auto* cmd_cat_list = cmd_catalog->add_subcommand("list", "list entries");
  bool cat_json = false;
  cmd_cat_list->add_flag("--json", cat_json, "machine-readable listing");
  auto* cmd_cat_check = cmd_catalog->add_subcommand("check", "integrity check");
  bool check_json = false;
  cmd_cat_check->add_flag("--json", check_json, "machine-readable report");

  // selftest
  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");
  bool st_json = false;
  bool st_core_only = false;
  std::uint64_t st_seed = 20260808;
  cmd_selftest->add_flag("--json", st_json, "machine-readable report");
  cmd_selftest->add_flag("--core-only", st_core_only,
                         "criteria 1-7 only (used internally by criterion 8)");
  cmd_selftest->add_option("--seed", st_seed, "seed for the randomized product cases");

  CLI11_PARSE(app, argc, argv);

  polar::limits().enum_cap = max_order;
  polar::limits().search_cap = std::max<std::uint64_t>(max_order, 10000);

  try {
    if (*cmd_extract) {
      const auto types = polar::parse_type_product(type_expr);
      const auto hist = polar::extract_history(polar::product_root_system(types));
      write_output(polar::serialize_history(hist), out_path);
      return kExitOk;
    }

    if (*cmd_recognize) {
      const polar::Catalog catalog = load_catalog(catalog_path);
      const auto hist = polar::parse_history(read_file(history_path));
      const auto desc = polar::recognize(hist, dim, catalog);
      std::cout << polar::descriptor_json(desc) << "\n";
      return kExitOk;
    }

    if (*cmd_round) {
      const polar::Catalog catalog = load_catalog(catalog_path);
      const auto types = polar::parse_type_product(rt_type);
      auto hist = polar::extract_history(polar::product_root_system(types));
      if (do_corrupt) hist = corrupt(hist);
      int total_rank = 0;
      for (const auto& t : types) total_rank += t.rank;
      const auto desc = polar::recognize(hist, total_rank + extra_dim, catalog);
      std::multiset<std::string> want, got;
      for (const auto& t : types) want.insert("coxeter/" + t.label() + "/reflection");
      for (const auto& f : desc.factors) got.insert(f.catalog_id);
      if (want == got && desc.trivial_dim == extra_dim) {
        std::cout << "PASS round-trip " << rt_type << " (+ " << extra_dim
                  << " trivial)\n";
        return kExitOk;
      }
      std::cout << "FAIL round-trip " << rt_type << ": factor multiset or padding "
                << "mismatch\n";
      return kExitRecognition;
    }

    if (*cmd_recon) {
      const auto types = polar::parse_type_product(recon_type);
      const auto rs = polar::product_root_system(types);
      const auto vh = polar::validate(polar::extract_history(rs));
      const auto& g = vh.group_at(vh.max_index());
      polar::ChamberComplex cc{vh.atom_count(), samples};
      const auto stabs = polar::stabilizers_from_history(vh);
      const auto model = polar::build_quotient(g, cc, stabs);
      const auto report =
          polar::verify_equivariance(model, g, cc, stabs, polar::limits().enum_cap);
      std::cout << (recon_json ? report.json() : report.text());
      return report.all_pass ? kExitOk : kExitRecognition;
    }

    if (*cmd_cat_list) {
      const polar::Catalog catalog = load_catalog(catalog_path);
      if (cat_json) {
        std::cout << catalog.to_json() << "\n";
      } else {
        for (const auto& e : catalog.entries())
          std::cout << e.id << "\t" << e.group_label << "\t"
                    << polar::product_label(e.types) << "\tdim " << e.dim_expr
                    << "\n";
      }
      return kExitOk;
    }

    if (*cmd_cat_check) {
      const polar::Catalog catalog = load_catalog(catalog_path);
      const auto issues = catalog.integrity_check();
      if (check_json) {
        std::string out = "[";
        for (size_t i = 0; i < issues.size(); ++i) {
          out += (i ? "," : "");
          out += "{\"entry\":\"" + issues[i].entry_id + "\",\"message\":\"" +
                 issues[i].message + "\"}";
        }
        out += "]";
        std::cout << out << "\n";
      } else {
        for (const auto& i : issues)
          std::cout << "ISSUE " << i.entry_id << ": " << i.message << "\n";
        std::cout << (issues.empty() ? "catalog OK" : "catalog has issues") << "\n";
      }
      return issues.empty() ? kExitOk : kExitInvalidData;
    }

    if (*cmd_selftest) {
      polar::SelftestOptions opt;
      opt.seed = st_seed;
      opt.core_only = st_core_only;
      if (!st_core_only) opt.self_exe = argv[0];
      const auto report = polar::run_selftest(opt);
      std::cout << (st_json ? report.to_json() : report.to_text());
      if (st_json) std::cout << "\n";
      return report.all_pass ? kExitOk : kExitSelftest;
    }
  } catch (const polar::RecognitionError& e) {
    std::cerr << "error " << e.what() << "\n";
    return kExitRecognition;
  } catch (const polar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRecognition;
  }
  return kExitUsage;
}
