#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperd1/steiner_forest.hpp"

namespace hyperd1 {

struct RunOptions {
  bool verify = false;
  bool diagnostic = false;  ///< cauchy-demo on systems without a tail bound
  bool timing = true;       ///< include elapsedMs in the report
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::optional<std::size_t> depth;
  std::optional<double> epsilon;
  SolverCaps caps;
};

const std::vector<std::string>& knownCommands();
bool isKnownCommand(std::string_view command);

/// Runs one subcommand on a parsed JSON input and returns the report
/// {"command","version","inputDigest","result",["elapsedMs"]}. A top-level
/// array is a batch: "result" becomes an array in input order. Throws
/// hyperd1::Error; nothing is returned on failure.
nlohmann::json runCommand(std::string_view command, const nlohmann::json& input, const RunOptions& options);

/// Hex SHA-256 of the compact serialization of `input`.
std::string inputDigest(const nlohmann::json& input);

const char* libraryVersion() noexcept;

}  // namespace hyperd1
