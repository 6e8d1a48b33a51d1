#pragma once

#include <string>
#include <vector>

#include "shuffle/element.hpp"

namespace qsh {

enum class WheelStatus { Pass, Fail, Vacuous, Unsupported };

const char* wheelStatusName(WheelStatus s);

struct WheelItem {
  std::string desc;
  WheelStatus status;
};

struct WheelReport {
  bool membershipOk = true;  // denominator divides the family's pole pattern
  std::vector<WheelItem> items;

  bool vacuous() const { return items.empty(); }
  bool pass() const {
    if (!membershipOk) return false;
    for (const auto& it : items)
      if (it.status != WheelStatus::Pass) return false;
    return true;
  }
};

// Clears the pole pattern off f and tests every applicable vanishing
// condition on the resulting Laurent polynomial.  An element whose grading is
// too small for any condition yields an empty (vacuously passing) report.
WheelReport checkWheel(const ShuffleElement& f);

}  // namespace qsh
