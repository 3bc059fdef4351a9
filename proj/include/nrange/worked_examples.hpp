#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nrange/batch.hpp"

namespace nrange {

/// One pinned number compared against its computed value.
struct PinnedCheck {
  std::string label;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 0.0; ///< absolute
  bool pass = false;
};

struct WorkedExample {
  std::string id;
  std::string description;
  std::vector<ReportedVerdict> verdicts;
  std::vector<PinnedCheck> checks;

  bool pass() const;
};

/// cor5-2x2, hermitian-sharpness, nilpotent-sharpness, remark-counterexamples.
const std::vector<std::string>& worked_example_ids();

/// Throws InvalidInput for an unknown id.
WorkedExample run_worked_example(std::string_view id);

} // namespace nrange
