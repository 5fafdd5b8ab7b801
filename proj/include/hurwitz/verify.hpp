#pragma once

// Seeded property suites over every module. Each suite reports one entry per
// invariant with a pass flag, the number of cases checked and up to five
// counterexamples. Output contains no timings, so equal seeds give equal
// reports.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

struct VerifyOptions {
  long samples = 0;   // 0: suite default
  int depth = 0;      // 0: suite default
  long points = 10000;  // sampling-oracle points per (shape, digit) pair
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

std::vector<std::string> suite_names();

// Runs one suite, or every suite for "all". Throws ParseError for unknown
// names. The result has "passed" at top level.
nlohmann::ordered_json run_suite(std::string_view name, const VerifyOptions& opt);

// Pieces reused by the acceptance tests.
struct OracleStats {
  long pairs = 0;
  long points = 0;
  long inside = 0;          // points in the claimed image
  long misclassified = 0;
  std::vector<std::string> counterexamples;
};
// Compares digit_transition against exact integer membership of odd dyadic
// sample points (denominator 2^20, never on any boundary curve).
OracleStats transition_sampling_oracle(long pairs, long points, std::uint64_t seed);

}  // namespace hurwitz
