// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: `teleport`, `sweep` and `verify`.
//
// Exit codes: 0 success, 1 validation error, 2 invariant violation during
// computation, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtele/run_spec.hpp"
#include "qtele/runner.hpp"
#include "qtele/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path || *path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("error writing to stdout");
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + *path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing output file '" + *path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional teleportation and eavesdropping analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_path;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::size_t workers = 1;
  double tolerance = qtele::Tolerance::kDefault;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output_path, "Output CSV path (default stdout)");
    cmd->add_option("--seed", seed, "Seed overriding the configuration");
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* teleport = app.add_subcommand("teleport", "Analyze a single scenario");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep the eavesdropping strength");
  for (CLI::App* cmd : {teleport, sweep}) {
    cmd->add_option("--config", config_path, "Scenario configuration (JSON)")->required();
    cmd->add_flag("--strict", strict, "Reject unnormalized input amplitudes");
    add_common(cmd);
  }

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites");
  std::string depth = "quick";
  std::string corrupt = "none";
  verify->add_option("depth", depth, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--corrupt", corrupt, "Test hook: break a family on purpose")
      ->check(CLI::IsMember({"none", "bell", "measurement"}))
      ->group("");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    qtele::RunOptions options;
    options.workers = workers;
    options.tolerance = qtele::Tolerance(tolerance);

    if (verify->parsed()) {
      qtele::VerifyOptions vopts;
      vopts.depth = depth == "full" ? qtele::VerifyDepth::full : qtele::VerifyDepth::quick;
      vopts.workers = workers;
      vopts.seed = seed.value_or(0);
      vopts.corrupt = corrupt == "bell"          ? qtele::Corruption::bell
                      : corrupt == "measurement" ? qtele::Corruption::measurement
                                                 : qtele::Corruption::none;
      const qtele::VerifyReport report = qtele::run_verify(vopts);
      write_output(output_path, qtele::format_report(report));
      return report.passed() ? kExitOk : kExitInvariant;
    }

    qtele::ParseOptions popts;
    popts.strict = strict;
    popts.seed = seed;
    const std::string text = read_file(config_path);
    std::optional<qtele::RunSpec> parsed;
    try {
      parsed.emplace(qtele::parse_config(text, popts));
    } catch (const qtele::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitValidation;
    }
    const qtele::RunSpec& spec = *parsed;
    for (const std::string& w : spec.warnings) std::cerr << "warning: " << w << '\n';
    const std::optional<std::string> target = output_path ? output_path : spec.output_path;

    if (teleport->parsed()) {
      const qtele::TeleportResult result = qtele::run_teleport(spec, options);
      write_output(target, qtele::teleport_csv(result));
      std::cerr << qtele::teleport_summary(spec, result);
    } else {
      const auto rows = qtele::run_sweep(spec, options);
      write_output(target, qtele::sweep_csv(rows));
    }
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const qtele::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qtele::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qtele::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
