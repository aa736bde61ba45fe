#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "anosov/census_stats.hpp"

namespace anosov {

inline constexpr const char* kToolName = "anosov_lab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Json, Tsv, Dot };
Format parse_format(const std::string& text);

struct RunConfig {
  std::string matrix = "2,1;1,1";
  std::size_t max_period = 3;
  long max_slope = 3;
  long brute_height = 2;
  BigInt m0 = 0;
  Format format = Format::Json;
  PropBParams propb;
  std::vector<std::string> moves;  // "(pK-iJ,m)"
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Parses "(pK-iJ,m)"; parentheses optional, ':' accepted in place of ','.
std::pair<std::string, BigInt> parse_move(const std::string& text);

/// Each report is deterministic for a given config, independent of `threads`.
nlohmann::ordered_json orbits_report(const RunConfig& config);
nlohmann::ordered_json reversible_report(const RunConfig& config);
nlohmann::ordered_json surgery_report(const RunConfig& config);
nlohmann::ordered_json loop_candidates_report(const RunConfig& config);
nlohmann::ordered_json propb_report(const RunConfig& config);

std::string orbits_tsv(const nlohmann::ordered_json& report);
std::string reversible_tsv(const nlohmann::ordered_json& report);
std::string surgery_tsv(const nlohmann::ordered_json& report);
std::string loop_candidates_tsv(const nlohmann::ordered_json& report);
std::string propb_tsv(const nlohmann::ordered_json& report);

/// Nodes are H_1 fingerprints (the base always present), edges are labeled "(orbit-id, m)".
std::string loop_candidates_dot(const nlohmann::ordered_json& report);

/// Integers that fit in 64 bits become JSON numbers, others decimal strings.
nlohmann::ordered_json json_integer(const BigInt& v);
nlohmann::ordered_json json_matrix(const IntMat& m);

}  // namespace anosov
