#pragma once

#include <string>
#include <vector>

namespace nervelab {

struct SelftestRow {
  std::string property;
  int passed = 0;
  int failed = 0;
};

/// Runs the fixture corpus; one row per property, in a fixed order.
std::vector<SelftestRow> run_selftest();

}  // namespace nervelab
