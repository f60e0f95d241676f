#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace modent::jobs {

// Command-line overrides applied on top of the input document.  Fields left
// empty fall back to the input document and then to built-in defaults.
struct JobOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<int> cutoff;
  std::optional<std::size_t> samples;
};

// Dispatches one command on a parsed input document and returns the report
// document:
//   { "command": ..., "config": <fully resolved spec>, "results": {...},
//     "verdicts": [ {"name", "pass", "margin"}, ... ] }
// The config echo merges the input with the applied overrides, so running the
// same command on the echo reproduces the report byte for byte.  Reports carry
// no timings.  Throws SchemaError for malformed documents and surfaces module
// errors unchanged.
//
// Commands: entropy-profile | modular | one-particle | fock-verify |
// geometry-sweep | acceptance.
nlohmann::json run_command(const std::string& command,
                           const nlohmann::json& input,
                           const JobOptions& options = {});

// Renders an entropy-profile report as CSV (columns lambda, S, dS, d2S,
// convexity_margin); SchemaError when the report is not an entropy profile.
std::string profile_csv(const nlohmann::json& report);

bool report_passes(const nlohmann::json& report);

// Atomic file write: the content lands under a temporary name next to `path`
// and is renamed into place.  Throws IoError on filesystem failures.
void write_atomic(const std::string& path, const std::string& content);

// Batch front end behind the `modent` binary; args exclude the program name.
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 usage/schema/IO error.
int cli_main(const std::vector<std::string>& args);

}  // namespace modent::jobs
