// hyperd1 command-line front end. Reads one JSON instance (or a JSON array
// of instances) and writes a JSON report to stdout.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperd1/hyperd1.h"

namespace {

constexpr const char* kCommands[][2] = {
    {"hausdorff", "Hausdorff distance between A and B"},
    {"d1-line", "exact d1 on the real line with a path certificate"},
    {"d1-exact", "exact d1 on a finite space, optionally through a Steiner pool"},
    {"d1-bounds", "Hausdorff lower bound, exact value and MST upper bound"},
    {"walk", "doubling walk of a tree"},
    {"dim-estimate", "covering numbers and box-dimension slope"},
    {"certify-zero-length", "zero-length certificate for an interval system"},
    {"d1-compact", "bracket d1 between two interval systems"},
    {"cauchy-demo", "d1 between consecutive level samples"},
    {"selftest", "randomized oracle-equivalence suites"},
};

int emitError(int exitCode, const std::string& code, const std::string& message) {
  const nlohmann::json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cout << err.dump(2) << '\n';
  return exitCode;
}

bool readInput(const std::string& path, std::string& out) {
  if (path.empty() || path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperd1: l1-hyperspace distances between finite sets"};
  app.set_version_flag("--version", std::string(hd1_version()));
  app.require_subcommand(1);
  app.fallthrough();

  hd1_run_options opt{};
  hd1_run_options_init(&opt);

  std::string inputPath;
  bool verify = false;
  bool diagnostic = false;
  bool noTiming = false;
  std::size_t depth = 0;
  double epsilon = 0.0;

  app.add_option("--input", inputPath, "JSON input file (default: stdin)");
  app.add_flag("--verify", verify, "validate input[\"certificate\"] against the instance");
  app.add_option("--jobs", opt.jobs, "worker threads for batch input")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for selftest instance generation");
  auto* depthOpt = app.add_option("--depth", depth, "level depth for fractal commands");
  auto* epsOpt = app.add_option("--epsilon", epsilon, "target epsilon")->check(CLI::PositiveNumber);
  app.add_option("--terminal-cap", opt.caps.terminal_cap, "max |A u B| for exact mode");
  app.add_option("--pool-cap", opt.caps.pool_cap, "max Steiner pool size");
  app.add_option("--oracle-cap", opt.caps.oracle_cap, "max points for the brute-force oracle");
  app.add_flag("--diagnostic", diagnostic, "cauchy-demo without a certified tail bound");
  app.add_flag("--no-timing", noTiming, "omit elapsedMs for byte-stable output");

  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emitError(2, "UsageError", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  opt.verify = verify ? 1 : 0;
  opt.diagnostic = diagnostic ? 1 : 0;
  opt.timing = noTiming ? 0 : 1;
  if (depthOpt->count() > 0) {
    opt.has_depth = 1;
    opt.depth = depth;
  }
  if (epsOpt->count() > 0) {
    opt.has_epsilon = 1;
    opt.epsilon = epsilon;
  }

  std::string input;
  const bool needsInput = command != "selftest" || !inputPath.empty();
  if (needsInput && !readInput(inputPath, input)) {
    return emitError(2, "IoError", "cannot read " + inputPath);
  }

  hd1_report* report = nullptr;
  const hd1_status status = hd1_run(command.c_str(), needsInput ? input.c_str() : nullptr, &opt, &report);
  if (status != HD1_OK && status != HD1_ERR_SELFTEST_FAILED) {
    return emitError(hd1_exit_code(status), hd1_status_name(status), hd1_last_error());
  }
  std::cout << hd1_report_json(report) << '\n';
  hd1_report_free(report);
  return hd1_exit_code(status);
}
