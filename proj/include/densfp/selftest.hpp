#pragma once

#include <string>
#include <vector>

namespace densfp {

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Supercell invariance and zone tiling on bundled fixtures.
std::vector<SelfTestCheck> run_selftest();

}  // namespace densfp
