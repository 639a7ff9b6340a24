#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "energy/semantics.hpp"

namespace energy {

enum class VerifyLevel { Smoke, Full };

VerifyLevel parse_level(std::string_view name);
const char* to_string(VerifyLevel level);

struct CheckRecord {
  std::string check_id;
  std::string property;
  std::size_t instances = 0;
  std::size_t violations = 0;
  /// First violating instance, or the instance closest to its bound.
  std::string witness;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds

  bool passed() const { return violations == 0 && instances > 0; }
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> checks;
  double wall_seconds = 0.0;

  std::size_t violations() const;
  bool passed() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Full;
  int cap = kDefaultSweepCap;
  bool parallel = true;
  std::vector<std::string> only;  // check ids; empty runs everything
};

/// Ids of the property checks in suite order.
const std::vector<std::string>& check_ids();

CheckRecord run_check(std::string_view id, const VerifyOptions& opts);
Report verify_all(const VerifyOptions& opts);

std::string report_json(const Report& report);

}  // namespace energy
