// Copyright 2026 The lipproj Authors.
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

// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lipproj/lipproj.h"

namespace {

constexpr int kExitUsage = 2;

struct Flags {
  std::string config;
  std::string n;
  int k = 0;
  std::string eps;
  std::string delta;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string out;
  std::string format;
  bool corrupt_tau = false;
  std::string resolutions;
  std::string scheme;
  int restarts = 0;
  bool timing = false;
};

void AddCommonOptions(CLI::App* cmd, Flags* f) {
  cmd->add_option("--config", f->config, "JSON config file; flags override its keys");
  cmd->add_option("--n", f->n, "dimension, range a..b, or list a,b,c");
  cmd->add_option("--k", f->k, "polynomial degree (table: largest degree)");
  cmd->add_option("--eps", f->eps, "epsilon or 'auto'");
  cmd->add_option("--delta", f->delta, "mollification width or 'auto'");
  cmd->add_option("--seed", f->seed, "random seed");
  cmd->add_option("--samples", f->samples, "sample count");
  cmd->add_option("--out", f->out, "output file (default stdout)");
  cmd->add_option("--format", f->format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

// Number or "auto"; anything else is a usage error.
nlohmann::json NumberOrAuto(const std::string& flag, const std::string& text) {
  if (text == "auto") return "auto";
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(flag, "expected a number or 'auto', got '" + text + "'");
}

nlohmann::json BuildConfig(const CLI::App& cmd, const Flags& f) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + f.config + "'");
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ValidationError("--config", e.what());
    }
    if (!j.is_object()) throw CLI::ValidationError("--config", "must hold a JSON object");
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--n")) j["n"] = f.n;
  if (given("--k")) j["k"] = f.k;
  if (given("--eps")) j["eps"] = NumberOrAuto("--eps", f.eps);
  if (given("--delta")) j["delta"] = NumberOrAuto("--delta", f.delta);
  if (given("--seed")) j["seed"] = f.seed;
  if (given("--samples")) j["samples"] = f.samples;
  if (given("--out")) j["out"] = f.out;
  if (given("--format")) j["format"] = f.format;
  if (cmd.get_option_no_throw("--corrupt-tau") && given("--corrupt-tau")) j["corrupt_tau"] = true;
  if (cmd.get_option_no_throw("--resolutions") && given("--resolutions")) {
    j["resolutions"] = f.resolutions;
  }
  if (cmd.get_option_no_throw("--scheme") && given("--scheme")) j["scheme"] = f.scheme;
  if (cmd.get_option_no_throw("--restarts") && given("--restarts")) j["restarts"] = f.restarts;
  if (cmd.get_option_no_throw("--timing") && given("--timing")) j["timing"] = true;
  return j;
}

int Execute(const std::string& command, const nlohmann::json& config) {
  lp_report* report = nullptr;
  const lp_status st = lp_run(command.c_str(), config.dump().c_str(), &report);
  if (st != LP_OK) {
    std::cerr << "lipproj " << command << ": " << lp_status_name(st) << " error: "
              << lp_last_error() << '\n';
    return lp_exit_code(st);
  }
  const std::string out_path = config.value("out", std::string());
  const std::string output = lp_report_output(report);
  if (out_path.empty()) {
    std::cout << output;
    std::cerr << lp_report_summary(report);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << output)) {
      std::cerr << "lipproj " << command << ": cannot write '" << out_path << "'\n";
      lp_report_free(report);
      return 3;
    }
    std::cout << lp_report_summary(report);
  }
  const bool passed = lp_report_passed(report) != 0;
  if (!passed) std::cerr << "lipproj " << command << ": FAILED: " << lp_report_failure(report) << '\n';
  lp_report_free(report);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification laboratory for lower bounds on projection constants onto "
               "2-homogeneous polynomials in Lipschitz spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lp_version());

  Flags flags;
  CLI::App* bound = app.add_subcommand("bound", "bound table and the constant C");
  CLI::App* table = app.add_subcommand("table", "degree-k bound table for k = 2..K");
  CLI::App* witness = app.add_subcommand("witness-check", "certify the witness functions");
  CLI::App* average = app.add_subcommand("average-check", "certify the rotation averages");
  CLI::App* oracle = app.add_subcommand("oracle", "discrete minimal-projection experiment");
  for (CLI::App* c : {bound, table, witness, average, oracle}) AddCommonOptions(c, &flags);
  witness->add_flag("--corrupt-tau", flags.corrupt_tau, "inject an asymmetric angle profile");
  oracle->add_option("--resolutions", flags.resolutions, "net resolutions, e.g. 4,8,16");
  oracle->add_option("--scheme", flags.scheme, "grid, shells or random");
  oracle->add_option("--restarts", flags.restarts, "restarts per resolution");
  oracle->add_flag("--timing", flags.timing, "add a wall-time column (not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  for (CLI::App* c : {bound, table, witness, average, oracle}) {
    if (!c->parsed()) continue;
    nlohmann::json config;
    try {
      config = BuildConfig(*c, flags);
    } catch (const CLI::ParseError& e) {
      std::cerr << "lipproj " << c->get_name() << ": " << e.what() << '\n';
      return kExitUsage;
    }
    return Execute(c->get_name(), config);
  }
  return kExitUsage;
}
