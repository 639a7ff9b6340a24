// Runs every property check at full scale, one after another so the timings
// are per check, and prints one line per criterion.

#include <algorithm>
#include <cstdio>
#include <string>

#include "energy/verify.hpp"

int main(int argc, char** argv) {
  energy::VerifyOptions opts;
  opts.level = energy::VerifyLevel::Full;
  opts.parallel = false;
  for (int k = 1; k < argc; ++k) opts.only.emplace_back(argv[k]);

  const energy::Report report = energy::verify_all(opts);
  int failures = 0;
  for (const auto& c : report.checks) {
    const auto& ids = energy::check_ids();
    const int number = static_cast<int>(std::find(ids.begin(), ids.end(), c.check_id) - ids.begin()) + 1;
    const bool in_time = c.seconds <= c.time_limit;
    const bool ok = c.passed() && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s criterion %2d %-16s instances=%zu violations=%zu time=%.1fs/%.0fs\n", ok ? "PASS" : "FAIL", number,
                c.check_id.c_str(), c.instances, c.violations, c.seconds, c.time_limit);
    std::printf("     %s\n", c.witness.c_str());
  }
  std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(report.checks.size()) - failures,
              report.checks.size(), report.wall_seconds);
  return failures == 0 ? 0 : 1;
}
