#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ritz {

struct PropertyResult {
  std::string name;
  int pass = 0;
  int fail = 0;
  std::vector<std::string> messages;  // first few failure details
};

struct SelfcheckSummary {
  std::uint64_t seed = 0;
  int instances = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  int total_failures() const;
};

/// Runs every module's invariant suite on seeded random instances
/// (dimensions up to 12, subspaces up to 5). Deterministic for a fixed
/// seed and instance count.
SelfcheckSummary run_selfcheck(std::uint64_t seed, int instances);

/// Deterministic plain-text rendering with one line per property.
std::string render_selfcheck(const SelfcheckSummary& summary);

}  // namespace ritz
