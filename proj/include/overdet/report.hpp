#pragma once

// JSON and CSV reports for the command-line subcommands, with run manifests.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "overdet/parser.hpp"

namespace overdet {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  int puiseux_order = 4;
  std::optional<double> rmax;
  std::optional<std::string> s;  // pw-check: Gevrey index, weight exponent 1/s
  std::string mode = "probe";    // pl-probe: probe or uniqueness
  bool timing = false;
};

using CsvTable = std::vector<std::vector<std::string>>;

struct RunResult {
  nlohmann::json report;
  CsvTable csv;
  int exit_code = 0;
};

// 64-bit FNV-1a of the raw input bytes, as 16 hex digits.
std::string input_hash(std::string_view bytes);

// Round to 12 significant digits; non-finite values become strings.
nlohmann::json number(double x);

RunResult run_resolve(const Document& doc, const RunOptions& opt);
RunResult run_variety(const Document& doc, const RunOptions& opt);
RunResult run_weights(const Document& doc, const RunOptions& opt);
RunResult run_pw_check(const Document& doc, const RunOptions& opt);
RunResult run_pl_probe(const Document& doc, const RunOptions& opt);

// Parse, dispatch and attach the manifest. `input` may be empty for pw-check
// with an explicit s.
RunResult run_subcommand(const std::string& name, std::string_view input, const RunOptions& opt,
                         const ParseOptions& parse = {});

std::string render_json(const nlohmann::json& report);
std::string render_csv(const CsvTable& table);

}  // namespace overdet
