// Copyright 2026 The sqrtfree Authors
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

// sqrtfree command-line driver: run, verify, fisher-dump.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqrtfree/config.hpp"
#include "sqrtfree/errors.hpp"
#include "sqrtfree/runner.hpp"
#include "sqrtfree/verify.hpp"

namespace {

struct Overrides {
  std::string output;
  std::optional<std::uint64_t> seed;
  std::string precision;
};

sqrtfree::RunConfig load_with(const std::string& path, const Overrides& o) {
  sqrtfree::RunConfig cfg = sqrtfree::load_config(path);
  if (!o.output.empty()) cfg.output = o.output;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.precision.empty()) {
    try {
      cfg.precision.format = sqrtfree::format_by_name(o.precision);
    } catch (const sqrtfree::Error& e) {
      throw sqrtfree::ConfigError(e.what());
    }
    if (!cfg.precision.format.is_reference() &&
        cfg.precision.scope == sqrtfree::PrecisionScope::none)
      cfg.precision.scope = sqrtfree::PrecisionScope::state_only;
  }
  return cfg;
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return sqrtfree::kExitOk;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw sqrtfree::IoError("cannot open output '" + path + "' for writing");
  f << text;
  if (!f) throw sqrtfree::IoError("failed writing output '" + path + "'");
  return sqrtfree::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-root-free adaptive gradient methods"};
  app.require_subcommand(1);

  Overrides o;
  std::uint64_t seed = 0;
  app.add_option("--output", o.output, "Write results here instead of standard output");
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--precision", o.precision, "Override the storage format")
      ->check(CLI::IsMember({"fp64", "fp32", "fp16", "bf16"}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an optimizer and write its trajectory CSV");
  run->add_option("config", config_path, "Config file")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print JSON reports");
  std::string names;
  for (auto s : sqrtfree::suite_names()) names += (names.empty() ? "" : ", ") + std::string(s);
  verify->add_option("suite", suite, "One of: " + names)->required();

  auto* dump = app.add_subcommand("fisher-dump", "Write a Fisher matrix as CSV");
  dump->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? sqrtfree::kExitOk : sqrtfree::kExitConfig;
  }
  if (*seed_opt) o.seed = seed;

  try {
    if (*run) return sqrtfree::run_and_emit(load_with(config_path, o), std::cout);
    if (*dump) return sqrtfree::fisher_dump(load_with(config_path, o), std::cout);
    if (*verify) {
      const auto reports = sqrtfree::run_suite(suite);
      return write_text(o.output, sqrtfree::reports_to_json(reports) + "\n");
    }
  } catch (const sqrtfree::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sqrtfree::kExitIo;
  } catch (const sqrtfree::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return sqrtfree::kExitConfig;
  } catch (const sqrtfree::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return sqrtfree::kExitConfig;
  } catch (const sqrtfree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sqrtfree::kExitConfig;
  }
  return sqrtfree::kExitOk;
}
