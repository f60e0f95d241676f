#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace modent::acceptance {

// Outcome of one verification criterion.  `margin` is a dimensionless slack:
// the worst observed error is normalised by its tolerance and margin is one
// minus that ratio, so margin >= 0 exactly when the numerical checks pass
// (count-based checks contribute 1 - count).  `detail` is a deterministic
// summary of the worst observed values; timings never appear in it.
struct Verdict {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 2026;
};

// Runs the ten verification criteria in order.  When `progress` is non-null,
// one "PASS/FAIL <name> margin=<m> (<t>s)" line is streamed per criterion as
// it completes; wall-clock times go to the stream only, never into the
// verdicts, so serialized verdict lists are byte-stable across runs.
// Criteria with runtime budgets fail when the budget is exceeded.
std::vector<Verdict> run_suite(const SuiteOptions& options = {},
                               std::ostream* progress = nullptr);

bool all_pass(const std::vector<Verdict>& verdicts);

}  // namespace modent::acceptance
